// Command-line front end: CSV in, JSON report out.
//
// Exit codes: 0 success, 2 input/config error, 3 numeric failure.

#include "ism/io.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"Orthogonality-constrained kernel dimension reduction"};

  ism::RunConfig config;
  std::string task = "supervised";
  std::string kernel = "gaussian";
  std::string sigma = "median";
  std::string q = "auto";

  app.add_option("--task", task, "supervised | unsupervised | semi | alt")
      ->check(CLI::IsMember({"supervised", "unsupervised", "semi", "alt"}));
  app.add_option("--kernel", kernel,
                 "linear | squared | poly | gaussian | multiquadratic | rbf-relative")
      ->check(CLI::IsMember(
          {"linear", "squared", "poly", "polynomial", "gaussian", "multiquadratic",
           "rbf-relative"}));
  app.add_option("--data", config.data_path, "feature CSV")->required();
  app.add_option("--labels", config.label_path, "label / expert-score CSV");
  app.add_option("--label-column", config.label_column, "label column inside the data CSV");
  app.add_flag("--no-header", "data CSV has no header row");
  app.add_flag("--one-hot", config.one_hot, "one-hot encode categorical feature columns");
  app.add_flag("--standardize", config.standardize, "z-score features before solving");
  app.add_option("--q", q, "subspace dimension, or 'auto' for the maximum eigengap");
  app.add_option("--sigma", sigma, "gaussian bandwidth, or 'median' for the median heuristic");
  app.add_option("--degree", config.degree, "polynomial order");
  app.add_option("--offset", config.offset, "polynomial constant");
  app.add_option("--mq-offset", config.mq_offset, "multiquadratic constant");
  app.add_option("--rbf-neighbors", config.rbf_neighbors,
                 "k-th neighbour for relative bandwidths");
  app.add_option("--mu", config.mu, "penalty balance for semi / alt tasks");
  app.add_option("--clusters", config.clusters, "cluster count for clustering tasks");
  app.add_option("--split", config.split_fraction, "train fraction in (0, 1]");
  app.add_option("--seed", config.seed, "random seed (splits and clustering)");
  app.add_option("--out", config.output_path, "report path (default: stdout)");

  try {
    app.parse(argc, argv);

    if (task == "supervised") config.task = ism::Paradigm::supervised;
    else if (task == "unsupervised") config.task = ism::Paradigm::unsupervised;
    else if (task == "semi") config.task = ism::Paradigm::semi_supervised;
    else config.task = ism::Paradigm::alternative_clustering;
    config.kernel = ism::kernel_kind_from_string(kernel);
    config.has_header = app.count("--no-header") == 0;
    if (q != "auto") config.q = std::stol(q);
    if (sigma != "median") config.sigma = std::stod(sigma);

    ism::run(config);
    return 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const ism::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const ism::degenerate_data_error& e) {
    std::cerr << "degenerate data: " << e.what() << "\n";
    return 3;
  } catch (const ism::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
