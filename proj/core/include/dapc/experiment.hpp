#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dapc/idcodec.hpp"
#include "dapc/oracle.hpp"

namespace dapc {

// How the affinity matrix of each sweep point is produced. Parametric kinds
// are sized by the sweep value t (identity and toeplitz use n = t;
// random_sparse uses k = t and scales its base n/k aspect ratio); the file
// kind loads one fixed matrix whose rank must equal every sweep value.
struct ChannelSpec {
  enum class Kind { identity, toeplitz, random_sparse, file };
  Kind kind = Kind::identity;
  int k = 0;                 // random_sparse base rows
  int n = 0;                 // base columns (identity/toeplitz/random_sparse)
  double l = 0.0;            // random_sparse nonzeros-per-row exponent
  double a_min = 0.0;        // random_sparse entry bounds
  double a_max = 0.0;
  std::vector<double> taps;  // toeplitz
  std::string path;          // file
};

// Gain or interference profile: one constant replicated to the needed
// length, or an explicit per-index sequence. Declared bounds travel with it.
struct ValueSpec {
  bool constant = true;
  double value = 0.0;
  std::vector<double> values;
  double min = 0.0;
  double max = 0.0;

  // Length-dim vector; explicit sequences must match dim exactly.
  Eigen::VectorXd materialize(Eigen::Index dim, const char* what) const;
};

struct ExperimentConfig {
  ChannelSpec channel;
  ValueSpec v_spec;
  ValueSpec lambda_spec;
  double c_avg = 0.0;
  double c_max = 0.0;
  double a = 0.0;  // packing-radius scale
  double b = 0.0;  // packing-radius decay margin
  std::vector<int> t_sweep;
  std::int64_t trials = 0;
  std::int64_t pair_cap = 0;
  std::int64_t candidate_budget = 0;
  std::uint64_t root_seed = 0;
  std::string output_dir;  // optional here; the CLI --out flag overrides

  // Throws std::invalid_argument naming the violated invariant.
  void validate() const;
};

// Accepts either a bare config document or a manifest produced by
// run_simulate (the config is then read from its "config" field), so a
// manifest can be replayed directly. Malformed input throws
// std::invalid_argument.
ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg,
                           bool include_output_dir);

struct SweepPointResult {
  ErrorEstimate est;
  double achieved_rate = 0.0;
  double min_distance = 0.0;  // NaN when fewer than two codewords
  std::int64_t saturation_count = 0;
};

struct SimulateOutput {
  std::vector<SweepPointResult> points;
  std::string results_csv;    // header + one row per sweep point
  std::string manifest_json;  // config (without output_dir) + derived seeds
};

// Runs the full sweep: per point, build the matrix, reduce, pack a codebook,
// and estimate errors. Points are independent (each owns derived seeds
// matrix/construction/estimation = derive_seed(root_seed, 3*idx + {0,1,2}))
// and may run on `jobs` threads; rows always appear in sweep order.
SimulateOutput run_simulate(const ExperimentConfig& cfg, int jobs = 1);

// Cross product of the grids through the capacity band formulas.
// CSV columns: kappa,l,lower_raw,lower_clamped,upper.
std::string run_bounds(const std::vector<double>& kappa_grid,
                       const std::vector<double>& l_grid);

struct VerifyOutput {
  std::vector<OracleReport> reports;
  std::string json_text;   // all reports as a JSON array
  std::string table_text;  // aligned human-readable table
  bool all_pass = false;
};

// Full verification battery: sampler statistics, the fourth-moment closed
// form and its bound, exhaustive vs Monte Carlo volume on five fixed
// matrices, distance preservation under reduction, determinant and gain
// bounds on random cases, singular values of orthogonal submatrices, and
// the pairwise-ratio separation checks. `mutate` corrupts one closed form
// to let callers confirm the battery can fail.
VerifyOutput run_verify(std::uint64_t seed, bool mutate = false);

struct AnalyzeOutput {
  std::string json_text;
  std::string table_text;
};

// Structure report for a matrix file: rank, growth-condition metrics,
// unit-box image volume, and the strongest column subset. Modes that
// enumerate subsets are chosen only when binom(n, t) stays enumerable.
AnalyzeOutput run_analyze(const std::string& matrix_file,
                          std::optional<int> t_override);

}  // namespace dapc
