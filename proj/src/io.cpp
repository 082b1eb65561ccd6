#include "ism/io.hpp"

#include "ism/hsic.hpp"
#include "ism/linalg.hpp"
#include "ism/rng.hpp"
#include "ism/solver.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace ism {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<std::vector<std::string>> parse_csv_text(const std::string& text,
                                                     const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool row_has_content = false;
  std::size_t line = 1;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
  };
  auto end_row = [&] {
    if (row_has_content || !row.empty()) {
      end_field();
      rows.push_back(std::move(row));
      row.clear();
    }
    row_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
        if (c == '\n') ++line;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty())
          throw parse_error(path + ":" + std::to_string(line) + ": stray quote inside field");
        in_quotes = true;
        row_has_content = true;
        break;
      case ',':
        end_field();
        row_has_content = true;
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        ++line;
        break;
      default:
        field.push_back(c);
        row_has_content = true;
    }
  }
  if (in_quotes) throw parse_error(path + ": unterminated quoted field");
  if (row_has_content || !row.empty()) end_row();
  return rows;
}

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t')) --end;
  if (begin == end) return false;
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

Matrix one_hot_encode(const std::vector<std::string>& column,
                      std::vector<std::string>* categories) {
  if (column.empty()) throw std::invalid_argument("one_hot_encode: empty column");
  std::map<std::string, Index> index;  // ordered: lexicographic categories
  for (const auto& v : column) index.emplace(v, 0);
  Index next = 0;
  for (auto& [key, id] : index) id = next++;

  Matrix out = Matrix::Zero(static_cast<Index>(column.size()), next);
  for (std::size_t i = 0; i < column.size(); ++i)
    out(static_cast<Index>(i), index.at(column[i])) = 1.0;
  if (categories) {
    categories->clear();
    for (const auto& [key, id] : index) categories->push_back(key);
  }
  return out;
}

std::vector<int> encode_labels(const std::vector<std::string>& raw,
                               std::vector<std::string>* categories) {
  std::map<std::string, int> index;
  for (const auto& v : raw) index.emplace(v, 0);
  int next = 0;
  for (auto& [key, id] : index) id = next++;
  std::vector<int> out;
  out.reserve(raw.size());
  for (const auto& v : raw) out.push_back(index.at(v));
  if (categories) {
    categories->clear();
    for (const auto& [key, id] : index) categories->push_back(key);
  }
  return out;
}

LoadedData load_csv(const std::string& path, bool has_header, const std::string& label_column,
                    bool one_hot) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error(path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto rows = parse_csv_text(buffer.str(), path);
  if (rows.empty()) throw parse_error(path + ": empty file");

  const std::size_t width = rows.front().size();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width)
      throw parse_error(path + ":" + std::to_string(r + 1) + ": expected " +
                        std::to_string(width) + " fields, got " + std::to_string(rows[r].size()));
  }

  std::vector<std::string> header;
  std::size_t first_data = 0;
  if (has_header) {
    header = rows.front();
    first_data = 1;
  } else {
    for (std::size_t c = 0; c < width; ++c) header.push_back("c" + std::to_string(c));
  }
  const std::size_t n = rows.size() - first_data;
  if (n == 0) throw parse_error(path + ": no data rows");

  Index label_idx = -1;
  if (!label_column.empty()) {
    const auto it = std::find(header.begin(), header.end(), label_column);
    if (it == header.end())
      throw parse_error(path + ": label column '" + label_column + "' not found");
    label_idx = static_cast<Index>(it - header.begin());
  }

  LoadedData out;
  std::vector<Matrix> feature_blocks;
  std::vector<std::vector<std::string>> block_names;

  for (std::size_t c = 0; c < width; ++c) {
    if (static_cast<Index>(c) == label_idx) {
      for (std::size_t r = first_data; r < rows.size(); ++r)
        out.raw_labels.push_back(rows[r][c]);
      continue;
    }
    // Numeric column unless some cell fails to parse.
    Vector numeric(static_cast<Index>(n));
    bool is_numeric = true;
    for (std::size_t r = first_data; r < rows.size(); ++r) {
      double v;
      if (!parse_double(rows[r][c], v)) {
        is_numeric = false;
        break;
      }
      numeric[static_cast<Index>(r - first_data)] = v;
    }
    if (is_numeric) {
      feature_blocks.push_back(numeric);
      block_names.push_back({header[c]});
      continue;
    }
    if (!one_hot)
      throw parse_error(path + ": non-numeric value in feature column '" + header[c] +
                        "' (pass --one-hot to encode categorical columns)");
    std::vector<std::string> column;
    column.reserve(n);
    for (std::size_t r = first_data; r < rows.size(); ++r) column.push_back(rows[r][c]);
    std::vector<std::string> categories;
    feature_blocks.push_back(one_hot_encode(column, &categories));
    std::vector<std::string> names;
    for (const auto& cat : categories) names.push_back(header[c] + "=" + cat);
    block_names.push_back(std::move(names));
  }

  Index total_cols = 0;
  for (const auto& b : feature_blocks) total_cols += b.cols();
  if (total_cols == 0) throw parse_error(path + ": no feature columns");

  Matrix x(static_cast<Index>(n), total_cols);
  Index at = 0;
  for (std::size_t b = 0; b < feature_blocks.size(); ++b) {
    x.middleCols(at, feature_blocks[b].cols()) = feature_blocks[b];
    at += feature_blocks[b].cols();
    for (const auto& name : block_names[b]) out.feature_names.push_back(name);
  }
  out.x = DataMatrix(std::move(x));
  return out;
}

SplitIndices train_test_split(Index n, double fraction, std::uint64_t seed,
                              const std::vector<int>* labels) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw std::invalid_argument("train_test_split: fraction must be in (0, 1]");
  if (labels && static_cast<Index>(labels->size()) != n)
    throw std::invalid_argument("train_test_split: label length mismatch");

  bool stratify = labels != nullptr;
  if (stratify) {
    std::map<int, Index> counts;
    for (const int l : *labels) ++counts[l];
    for (const auto& [label, count] : counts) {
      if (count < 2) {
        std::cerr << "train_test_split: class " << label
                  << " has a single member; falling back to unstratified split\n";
        stratify = false;
        break;
      }
    }
  }

  Rng rng(seed);
  auto shuffled = [&rng](std::vector<Index> v) {
    for (Index i = static_cast<Index>(v.size()) - 1; i > 0; --i)
      std::swap(v[static_cast<std::size_t>(i)],
                v[rng.uniform_below(static_cast<std::uint64_t>(i) + 1)]);
    return v;
  };

  SplitIndices out;
  out.stratified = stratify;
  if (!stratify) {
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    order = shuffled(std::move(order));
    const Index n_train = static_cast<Index>(std::llround(fraction * static_cast<double>(n)));
    out.train.assign(order.begin(), order.begin() + n_train);
    out.test.assign(order.begin() + n_train, order.end());
  } else {
    std::map<int, std::vector<Index>> by_class;
    for (Index i = 0; i < n; ++i) by_class[(*labels)[static_cast<std::size_t>(i)]].push_back(i);
    for (auto& [label, members] : by_class) {
      members = shuffled(std::move(members));
      const Index take =
          static_cast<Index>(std::llround(fraction * static_cast<double>(members.size())));
      for (std::size_t i = 0; i < members.size(); ++i)
        (static_cast<Index>(i) < take ? out.train : out.test).push_back(members[i]);
    }
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.test.begin(), out.test.end());
  }
  return out;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json config_to_json(const RunConfig& c) {
  return ordered_json{{"task", to_string(c.task)},
                      {"kernel", to_string(c.kernel)},
                      {"data_path", c.data_path},
                      {"label_path", c.label_path},
                      {"label_column", c.label_column},
                      {"has_header", c.has_header},
                      {"one_hot", c.one_hot},
                      {"standardize", c.standardize},
                      {"q", c.q},
                      {"sigma", c.sigma},
                      {"degree", c.degree},
                      {"offset", c.offset},
                      {"mq_offset", c.mq_offset},
                      {"rbf_neighbors", c.rbf_neighbors},
                      {"mu", c.mu},
                      {"clusters", c.clusters},
                      {"split_fraction", c.split_fraction},
                      {"seed", c.seed},
                      {"output_path", c.output_path}};
}

RunConfig config_from_json(const ordered_json& j) {
  RunConfig c;
  const std::string task = j.at("task");
  if (task == "supervised") c.task = Paradigm::supervised;
  else if (task == "unsupervised") c.task = Paradigm::unsupervised;
  else if (task == "semi_supervised") c.task = Paradigm::semi_supervised;
  else if (task == "alternative_clustering") c.task = Paradigm::alternative_clustering;
  else throw std::invalid_argument("unknown task: " + task);
  c.kernel = kernel_kind_from_string(j.at("kernel"));
  c.data_path = j.at("data_path");
  c.label_path = j.at("label_path");
  c.label_column = j.at("label_column");
  c.has_header = j.at("has_header");
  c.one_hot = j.at("one_hot");
  c.standardize = j.at("standardize");
  c.q = j.at("q");
  c.sigma = j.at("sigma");
  c.degree = j.at("degree");
  c.offset = j.at("offset");
  c.mq_offset = j.at("mq_offset");
  c.rbf_neighbors = j.at("rbf_neighbors");
  c.mu = j.at("mu");
  c.clusters = j.at("clusters");
  c.split_fraction = j.at("split_fraction");
  c.seed = j.at("seed");
  c.output_path = j.at("output_path");
  return c;
}

}  // namespace

std::string Report::to_json() const {
  ordered_json j;
  j["config"] = config_to_json(config);
  j["q_used"] = q_used;
  j["sigma_used"] = sigma_used;
  j["eigenvalues"] = std::vector<double>(eigenvalues.data(), eigenvalues.data() + eigenvalues.size());
  j["w"] = ordered_json{{"rows", w.rows()},
                        {"cols", w.cols()},
                        {"column_major", std::vector<double>(w.data(), w.data() + w.size())}};
  j["cost_trace"] = cost_trace;
  j["iterations"] = iterations;
  j["outer_iterations"] = outer_iterations;
  j["converged"] = converged;
  j["reason"] = reason;
  j["stationarity_residual"] = stationarity_residual;
  j["eigengap"] = eigengap;
  ordered_json metrics = ordered_json::object();
  if (error_rate) metrics["error_rate"] = *error_rate;
  if (nmi_score) metrics["nmi"] = *nmi_score;
  j["metrics"] = metrics;
  j["wall_time_ms"] = ordered_json{{"load", wall_time_ms.load_ms},
                                   {"solve", wall_time_ms.solve_ms},
                                   {"evaluate", wall_time_ms.evaluate_ms},
                                   {"total", wall_time_ms.total_ms}};
  return j.dump(2) + "\n";
}

Report Report::from_json(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  Report r;
  r.config = config_from_json(j.at("config"));
  r.q_used = j.at("q_used");
  r.sigma_used = j.at("sigma_used");
  const std::vector<double> evals = j.at("eigenvalues");
  r.eigenvalues = Eigen::Map<const Vector>(evals.data(), static_cast<Index>(evals.size()));
  const auto& wj = j.at("w");
  const std::vector<double> wdata = wj.at("column_major");
  r.w = Eigen::Map<const Matrix>(wdata.data(), wj.at("rows").get<Index>(),
                                 wj.at("cols").get<Index>());
  r.cost_trace = j.at("cost_trace").get<std::vector<double>>();
  r.iterations = j.at("iterations");
  r.outer_iterations = j.at("outer_iterations");
  r.converged = j.at("converged");
  r.reason = j.at("reason");
  r.stationarity_residual = j.at("stationarity_residual");
  r.eigengap = j.at("eigengap");
  const auto& metrics = j.at("metrics");
  if (metrics.contains("error_rate")) r.error_rate = metrics.at("error_rate").get<double>();
  if (metrics.contains("nmi")) r.nmi_score = metrics.at("nmi").get<double>();
  const auto& t = j.at("wall_time_ms");
  r.wall_time_ms = {t.at("load"), t.at("solve"), t.at("evaluate"), t.at("total")};
  return r;
}

namespace {

Matrix standardized(const Matrix& x) {
  Matrix out = x;
  for (Index c = 0; c < out.cols(); ++c) {
    const double mean = out.col(c).mean();
    out.col(c).array() -= mean;
    const double sd = std::sqrt(out.col(c).squaredNorm() / static_cast<double>(out.rows()));
    if (sd > 0.0) out.col(c) /= sd;
  }
  return out;
}

Matrix select_rows(const Matrix& x, const std::vector<Index>& rows) {
  Matrix out(static_cast<Index>(rows.size()), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = x.row(rows[i]);
  return out;
}

std::vector<int> select_labels(const std::vector<int>& labels, const std::vector<Index>& rows) {
  std::vector<int> out;
  out.reserve(rows.size());
  for (const Index r : rows) out.push_back(labels[static_cast<std::size_t>(r)]);
  return out;
}

KernelSpec make_kernel_spec(const RunConfig& config, const DataMatrix& x, double& sigma_used) {
  KernelSpec spec;
  spec.kind = config.kernel;
  spec.degree = config.degree;
  spec.offset = config.offset;
  spec.mq_offset = config.mq_offset;
  sigma_used = 0.0;
  if (config.kernel == KernelKind::gaussian) {
    spec.sigma = config.sigma > 0.0 ? config.sigma : median_sigma(x);
    sigma_used = spec.sigma;
  } else if (config.kernel == KernelKind::rbf_relative) {
    spec.per_sample_sigma = relative_sigmas(x, config.rbf_neighbors);
  }
  return spec;
}

struct LabelSource {
  std::vector<int> ids;          // categorical ids when available
  Matrix scores;                 // numeric score matrix when the label file is numeric
  bool categorical = false;
};

LabelSource load_labels(const RunConfig& config, const LoadedData& data) {
  LabelSource out;
  if (!config.label_path.empty()) {
    LoadedData lab = load_csv(config.label_path, config.has_header, "", true);
    // A single one-hot-expanded block means the file was one categorical
    // column; otherwise treat the numeric matrix as expert scores.
    bool numeric = true;
    for (const auto& name : lab.feature_names)
      if (name.find('=') != std::string::npos) numeric = false;
    if (numeric) {
      out.scores = lab.x.values;
      out.categorical = false;
      // single numeric column of small-cardinality values: treat as classes
      if (lab.x.d() == 1) {
        std::vector<std::string> raw;
        for (Index i = 0; i < lab.x.n(); ++i) {
          std::ostringstream ss;
          ss << lab.x.values(i, 0);
          raw.push_back(ss.str());
        }
        out.ids = encode_labels(raw);
        out.categorical = true;
      }
    } else {
      std::vector<std::string> raw;
      std::ifstream in(config.label_path);  // re-read as raw strings
      std::stringstream buffer;
      buffer << in.rdbuf();
      auto rows = parse_csv_text(buffer.str(), config.label_path);
      for (std::size_t r = config.has_header ? 1 : 0; r < rows.size(); ++r)
        raw.push_back(rows[r][0]);
      out.ids = encode_labels(raw);
      out.categorical = true;
    }
  } else if (data.has_labels()) {
    out.ids = encode_labels(data.raw_labels);
    out.categorical = true;
  }
  return out;
}

}  // namespace

Report run(const RunConfig& config) {
  const auto t_start = Clock::now();
  Report report;
  report.config = config;

  if (config.data_path.empty()) throw std::invalid_argument("run: data path is empty");

  LoadedData data = load_csv(config.data_path, config.has_header, config.label_column,
                             config.one_hot);
  if (config.standardize) data.x = DataMatrix(standardized(data.x.values));
  LabelSource labels = load_labels(config, data);
  if (!labels.ids.empty() && static_cast<Index>(labels.ids.size()) != data.x.n())
    throw std::invalid_argument("run: label count does not match sample count");
  report.wall_time_ms.load_ms = ms_since(t_start);

  SolveOptions solver_opts;
  solver_opts.q = config.q;

  const auto t_solve = Clock::now();
  switch (config.task) {
    case Paradigm::supervised: {
      if (labels.ids.empty())
        throw std::invalid_argument("run: supervised task needs labels");
      const SplitIndices split =
          train_test_split(data.x.n(), config.split_fraction, config.seed, &labels.ids);
      const DataMatrix x_train(select_rows(data.x.values, split.train));
      const std::vector<int> y_train = select_labels(labels.ids, split.train);

      const KernelSpec spec = make_kernel_spec(config, x_train, report.sigma_used);
      const SymmetricMatrix gamma = supervised_gamma(y_train);
      const SolveResult solve = ism_solve(spec, x_train, gamma, solver_opts);
      report.wall_time_ms.solve_ms = ms_since(t_solve);

      const auto t_eval = Clock::now();
      report.q_used = solve.projection.q();
      report.eigenvalues = solve.spectrum;
      report.w = solve.projection.basis;
      report.cost_trace = solve.cost_trace;
      report.iterations = solve.iterations;
      report.converged = solve.converged;
      report.reason = to_string(solve.reason);
      report.stationarity_residual = solve.stationarity_residual;
      report.eigengap = solve.eigengap;
      if (!split.test.empty()) {
        const Matrix train_proj = x_train.values * solve.projection.basis;
        const Matrix test_proj =
            select_rows(data.x.values, split.test) * solve.projection.basis;
        report.error_rate = knn_error(train_proj, y_train, test_proj,
                                      select_labels(labels.ids, split.test));
      }
      report.wall_time_ms.evaluate_ms = ms_since(t_eval);
      break;
    }
    case Paradigm::unsupervised:
    case Paradigm::semi_supervised:
    case Paradigm::alternative_clustering: {
      TaskSpec task;
      task.paradigm = config.task;
      task.mu = config.mu;
      task.seed = config.seed;
      if (config.clusters > 0) {
        task.k_clusters = config.clusters;
      } else if (labels.categorical) {
        task.k_clusters =
            1 + *std::max_element(labels.ids.begin(), labels.ids.end());
      } else {
        throw std::invalid_argument("run: --clusters required without categorical labels");
      }

      const KernelSpec spec = make_kernel_spec(config, data.x, report.sigma_used);
      AlternatingResult result;
      if (config.task == Paradigm::unsupervised) {
        result = unsupervised_solve(data.x, spec, task, solver_opts);
      } else {
        SymmetricMatrix k_yhat;
        if (labels.categorical)
          k_yhat = delta_kernel(labels.ids);
        else if (labels.scores.size() > 0)
          k_yhat = SymmetricMatrix(labels.scores * labels.scores.transpose());
        else
          throw std::invalid_argument("run: this task needs labels or expert scores");
        result = config.task == Paradigm::semi_supervised
                     ? semisupervised_solve(data.x, spec, k_yhat, task, solver_opts)
                     : alternative_solve(data.x, spec, k_yhat, task, solver_opts);
      }
      report.wall_time_ms.solve_ms = ms_since(t_solve);

      const auto t_eval = Clock::now();
      report.q_used = result.projection.q();
      report.eigenvalues = result.last_solve.spectrum;
      report.w = result.projection.basis;
      report.cost_trace = result.last_solve.cost_trace;
      report.iterations = result.last_solve.iterations;
      report.outer_iterations = result.outer_iterations;
      report.converged = result.last_solve.converged;
      report.reason = to_string(result.last_solve.reason);
      report.stationarity_residual = result.last_solve.stationarity_residual;
      report.eigengap = result.last_solve.eigengap;
      if (labels.categorical) {
        const int k_ref = 1 + *std::max_element(labels.ids.begin(), labels.ids.end());
        report.nmi_score = nmi(result.labels, Labeling(labels.ids, k_ref));
      }
      report.wall_time_ms.evaluate_ms = ms_since(t_eval);
      break;
    }
  }

  report.wall_time_ms.total_ms = ms_since(t_start);

  const std::string serialized = report.to_json();
  if (config.output_path.empty()) {
    std::cout << serialized;
  } else {
    std::ofstream out(config.output_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("run: cannot open output path " + config.output_path);
    out << serialized;
  }
  return report;
}

}  // namespace ism
