#pragma once

#include <string>

#include "dapc/channel.hpp"
#include "dapc/codebook.hpp"
#include "dapc/idcodec.hpp"

namespace dapc {

// JSON text round-trips with stable key order. Loading rejects missing or
// malformed fields, failed validation, and checksum mismatches with
// std::runtime_error.
std::string matrix_to_json(const AffinityMatrix& m);
AffinityMatrix matrix_from_json(const std::string& text);

std::string channel_to_json(const ChannelParams& ch);
ChannelParams channel_from_json(const std::string& text);

// Codebooks carry per-row norm checksums of the original codewords; loading
// recomputes and verifies them.
std::string codebook_to_json(const Codebook& cb);
Codebook codebook_from_json(const std::string& text);

std::string error_estimate_to_json(const ErrorEstimate& est);

// 12 significant digits, the number style shared by every CSV and report.
std::string format_number(double v);

// Flat record of one estimation run. Absent type-2 statistics print as nan.
std::string error_csv_header();
std::string error_csv_row(const ErrorEstimate& est);

void save_text(const std::string& path, const std::string& text);
std::string load_text(const std::string& path);

}  // namespace dapc
