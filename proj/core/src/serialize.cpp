#include "dapc/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace dapc {

using json = nlohmann::ordered_json;

namespace {

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string(what) + ": " + e.what());
  }
}

const json& need(const json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw std::runtime_error(std::string(what) + ": missing field '" + key +
                             "'");
  }
  return *it;
}

json rows_of(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_of(const json& rows, const char* what) {
  if (!rows.is_array() || rows.empty()) {
    throw std::runtime_error(std::string(what) + ": rows must be a non-empty array");
  }
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows[0].size());
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != c) {
      throw std::runtime_error(std::string(what) + ": ragged rows");
    }
    for (Eigen::Index j = 0; j < c; ++j) {
      m(i, j) = row[static_cast<std::size_t>(j)].get<double>();
    }
  }
  return m;
}

Eigen::VectorXd vector_of(const json& arr, const char* what) {
  if (!arr.is_array()) {
    throw std::runtime_error(std::string(what) + ": expected an array");
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v(i) = arr[static_cast<std::size_t>(i)].get<double>();
  }
  return v;
}

json vector_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

json matrix_json(const AffinityMatrix& m) {
  json j;
  j["k"] = m.k();
  j["n"] = m.n();
  j["a_min"] = m.a_min;
  j["a_max"] = m.a_max;
  j["rows"] = rows_of(m.entries);
  return j;
}

AffinityMatrix matrix_from(const json& j, const char* what) {
  AffinityMatrix m;
  m.a_min = need(j, "a_min", what).get<double>();
  m.a_max = need(j, "a_max", what).get<double>();
  m.entries = matrix_of(need(j, "rows", what), what);
  const auto k = need(j, "k", what).get<Eigen::Index>();
  const auto n = need(j, "n", what).get<Eigen::Index>();
  if (k != m.k() || n != m.n()) {
    throw std::runtime_error(std::string(what) +
                             ": declared shape does not match rows");
  }
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string(what) + ": " + e.what());
  }
  return m;
}

}  // namespace

std::string matrix_to_json(const AffinityMatrix& m) {
  return matrix_json(m).dump(2) + "\n";
}

AffinityMatrix matrix_from_json(const std::string& text) {
  return matrix_from(parse(text, "matrix"), "matrix");
}

std::string channel_to_json(const ChannelParams& ch) {
  json j;
  j["matrix"] = matrix_json(ch.affinity);
  j["v"] = vector_json(ch.v);
  j["lambda"] = vector_json(ch.lambda);
  j["v_min"] = ch.v_min;
  j["v_max"] = ch.v_max;
  j["lambda_min"] = ch.lambda_min;
  j["lambda_max"] = ch.lambda_max;
  return j.dump(2) + "\n";
}

ChannelParams channel_from_json(const std::string& text) {
  const json j = parse(text, "channel");
  const char* what = "channel";
  AffinityMatrix m = matrix_from(need(j, "matrix", what), what);
  Eigen::VectorXd v = vector_of(need(j, "v", what), what);
  Eigen::VectorXd lambda = vector_of(need(j, "lambda", what), what);
  try {
    return ChannelParams::make(std::move(m), std::move(v), std::move(lambda),
                               need(j, "v_min", what).get<double>(),
                               need(j, "v_max", what).get<double>(),
                               need(j, "lambda_min", what).get<double>(),
                               need(j, "lambda_max", what).get<double>());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string(what) + ": " + e.what());
  }
}

std::string codebook_to_json(const Codebook& cb) {
  json j;
  j["m"] = cb.m();
  j["n"] = cb.original.cols();
  j["k"] = cb.affine.cols();
  j["t"] = cb.reduced.cols();
  j["r0"] = cb.r0;
  j["c_avg"] = cb.c_avg;
  j["c_max"] = cb.c_max;
  j["seed"] = cb.seed;
  j["candidate_budget"] = cb.candidate_budget;
  j["saturated"] = cb.saturated;
  j["saturation_count"] = cb.saturation_count;
  j["original"] = rows_of(cb.original);
  j["affine"] = rows_of(cb.affine);
  j["reduced"] = rows_of(cb.reduced);
  json sums = json::array();
  for (Eigen::Index i = 0; i < cb.original.rows(); ++i) {
    sums.push_back(cb.original.row(i).norm());
  }
  j["row_checksums"] = std::move(sums);
  return j.dump(2) + "\n";
}

Codebook codebook_from_json(const std::string& text) {
  const json j = parse(text, "codebook");
  const char* what = "codebook";
  Codebook cb;
  cb.original = matrix_of(need(j, "original", what), what);
  cb.affine = matrix_of(need(j, "affine", what), what);
  cb.reduced = matrix_of(need(j, "reduced", what), what);
  cb.r0 = need(j, "r0", what).get<double>();
  cb.c_avg = need(j, "c_avg", what).get<double>();
  cb.c_max = need(j, "c_max", what).get<double>();
  cb.seed = need(j, "seed", what).get<std::uint64_t>();
  cb.candidate_budget = need(j, "candidate_budget", what).get<std::int64_t>();
  cb.saturated = need(j, "saturated", what).get<bool>();
  cb.saturation_count = need(j, "saturation_count", what).get<std::int64_t>();
  if (cb.affine.rows() != cb.m() || cb.reduced.rows() != cb.m()) {
    throw std::runtime_error("codebook: row counts disagree across views");
  }
  const json& sums = need(j, "row_checksums", what);
  if (static_cast<Eigen::Index>(sums.size()) != cb.m()) {
    throw std::runtime_error("codebook: checksum count does not match rows");
  }
  for (Eigen::Index i = 0; i < cb.m(); ++i) {
    const double stored = sums[static_cast<std::size_t>(i)].get<double>();
    const double actual = cb.original.row(i).norm();
    const double tol = 1e-9 * std::max(1.0, std::abs(stored));
    if (std::abs(stored - actual) > tol) {
      throw std::runtime_error("codebook: checksum mismatch at row " +
                               std::to_string(i));
    }
  }
  return cb;
}

std::string error_estimate_to_json(const ErrorEstimate& est) {
  json j;
  j["t"] = est.t;
  j["m"] = est.m;
  j["kappa"] = est.kappa;
  j["l"] = est.l;
  j["a"] = est.a;
  j["b"] = est.b;
  j["psi_t"] = est.psi_t;
  j["trials"] = est.trials;
  j["messages_evaluated"] = est.messages_evaluated;
  j["type1_max"] = est.type1_max;
  j["type1_mean"] = est.type1_mean;
  j["type1_ci_halfwidth"] = est.type1_ci_halfwidth;
  j["type1_ci_method"] = est.type1_ci_method;
  j["type2_present"] = est.type2_present;
  j["pairs_evaluated"] = est.pairs_evaluated;
  if (est.type2_present) {
    j["type2_max"] = est.type2_max;
    j["type2_mean"] = est.type2_mean;
    j["type2_ci_halfwidth"] = est.type2_ci_halfwidth;
    j["type2_ci_method"] = est.type2_ci_method;
  }
  return j.dump(2) + "\n";
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string error_csv_header() {
  return "t,m,kappa,l,a,b,psi_t,trials,type1_max,type1_mean,type2_max,"
         "type2_mean,type1_ci_halfwidth,type2_ci_halfwidth,pairs_evaluated";
}

std::string error_csv_row(const ErrorEstimate& est) {
  std::ostringstream os;
  os << est.t << ',' << est.m << ',' << format_number(est.kappa) << ','
     << format_number(est.l) << ',' << format_number(est.a) << ','
     << format_number(est.b) << ',' << format_number(est.psi_t) << ','
     << est.trials << ',' << format_number(est.type1_max) << ','
     << format_number(est.type1_mean) << ',' << format_number(est.type2_max)
     << ',' << format_number(est.type2_mean) << ','
     << format_number(est.type1_ci_halfwidth) << ','
     << format_number(est.type2_ci_halfwidth) << ',' << est.pairs_evaluated;
  return os.str();
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string load_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw std::runtime_error("read failed: " + path);
  return buf.str();
}

}  // namespace dapc
