#pragma once

#include "ism/kernels.hpp"
#include "ism/tasks.hpp"
#include "ism/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ism {

struct LoadedData {
  DataMatrix x;
  std::vector<std::string> feature_names;
  std::vector<std::string> raw_labels;  // empty when no label column was requested

  bool has_labels() const { return !raw_labels.empty(); }
};

/// Parse a CSV file (RFC 4180: quoted fields, doubled-quote escapes, CRLF or
/// LF). Numeric columns become features; the named label column, if any, is
/// extracted as strings. Non-numeric feature columns are an error unless
/// one_hot is set, in which case they expand to lexicographically ordered
/// indicator columns.
LoadedData load_csv(const std::string& path, bool has_header,
                    const std::string& label_column = "", bool one_hot = false);

/// Indicator matrix of a categorical column, categories in lexicographic
/// order; every row has exactly one 1.
Matrix one_hot_encode(const std::vector<std::string>& column,
                      std::vector<std::string>* categories = nullptr);

/// Map raw label strings to dense ids in lexicographic category order.
std::vector<int> encode_labels(const std::vector<std::string>& raw,
                               std::vector<std::string>* categories = nullptr);

struct SplitIndices {
  std::vector<Index> train;
  std::vector<Index> test;
  bool stratified = false;
};

/// Deterministic shuffled split; stratified by label when labels are given
/// (falls back to unstratified, with a stderr warning, if any class has a
/// single member). Train and test are disjoint and cover [0, n).
SplitIndices train_test_split(Index n, double fraction, std::uint64_t seed,
                              const std::vector<int>* labels = nullptr);

struct RunConfig {
  Paradigm task = Paradigm::supervised;
  KernelKind kernel = KernelKind::gaussian;
  std::string data_path;
  std::string label_path;    // separate label / expert-score file
  std::string label_column;  // or a column inside the data file
  bool has_header = true;
  bool one_hot = false;
  bool standardize = false;  // z-score features before anything else
  Index q = 0;               // 0 = choose at the maximum eigengap
  double sigma = 0.0;        // 0 = median pairwise distance heuristic
  int degree = 3;
  double offset = 1.0;
  double mq_offset = 1.0;
  int rbf_neighbors = 7;     // k-th neighbour bandwidth for the relative kernel
  double mu = 1.0;
  int clusters = 0;          // 0 = number of distinct label values
  double split_fraction = 0.8;
  std::uint64_t seed = 0;
  std::string output_path;   // empty = stdout
};

struct PhaseTimes {
  double load_ms = 0.0;
  double solve_ms = 0.0;
  double evaluate_ms = 0.0;
  double total_ms = 0.0;
};

struct Report {
  RunConfig config;
  Index q_used = 0;
  double sigma_used = 0.0;
  Vector eigenvalues;  // full spectrum at the solution
  Matrix w;            // d x q
  std::vector<double> cost_trace;
  int iterations = 0;
  int outer_iterations = 0;  // clustering paradigms only
  bool converged = false;
  std::string reason;
  double stationarity_residual = 0.0;
  double eigengap = 0.0;
  std::optional<double> error_rate;  // supervised
  std::optional<double> nmi_score;   // clustering paradigms with reference labels
  PhaseTimes wall_time_ms;

  std::string to_json() const;           // stable field order, lossless doubles
  static Report from_json(const std::string& text);
};

/// Execute the configured pipeline and write the report to
/// config.output_path (or stdout when empty). Nothing is written on error.
Report run(const RunConfig& config);

}  // namespace ism
