#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "skewkrr/csv.hpp"
#include "skewkrr/dac.hpp"
#include "skewkrr/harness.hpp"
#include "skewkrr/rng.hpp"
#include "skewkrr/synthdata.hpp"

using namespace skewkrr;

namespace {

constexpr std::int64_t kBandwidthProbe = 1000;
constexpr std::int64_t kLambdaProbe = 4000;

struct KernelOpts {
  std::string family = "gaussian";
  int degree = 2;
  std::optional<double> sigma;
  std::optional<double> lambda;
};

void add_kernel_options(CLI::App* cmd, KernelOpts& opts) {
  cmd->add_option("--kernel", opts.family, "kernel family")
      ->check(CLI::IsMember({"gaussian", "polynomial", "min"}))
      ->capture_default_str();
  cmd->add_option("--degree", opts.degree, "polynomial kernel degree")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--sigma", opts.sigma, "gaussian bandwidth; omit for the median heuristic");
  cmd->add_option("--lambda", opts.lambda, "ridge level; omit for seeded holdout selection");
}

KernelSpec resolve_kernel(const KernelOpts& opts, const Eigen::MatrixXd& X, std::uint64_t seed) {
  KernelSpec spec;
  spec.family = kernel_family_from_string(opts.family);
  spec.degree = opts.degree;
  if (opts.sigma)
    spec.sigma = *opts.sigma;
  else if (spec.family == KernelFamily::gaussian)
    spec.sigma = median_bandwidth(X, kBandwidthProbe, derive_seed(seed, {stream::bandwidth}));
  return spec;
}

double resolve_lambda(const KernelOpts& opts, const Dataset& data, const KernelSpec& spec,
                      std::uint64_t seed) {
  if (opts.lambda) return *opts.lambda;
  Dataset probe = data;
  if (data.n() > kLambdaProbe) {
    Rng rng(derive_seed(seed, {stream::lambda_search, 1}));
    probe = data.subset(rng.sample_without_replacement(data.n(), kLambdaProbe));
  }
  return select_lambda(probe, spec, default_lambda_grid(), data.n(), 0.2,
                       derive_seed(seed, {stream::lambda_search}));
}

// Feature columns for a table: the explicit list, or everything but the
// response.
std::vector<std::string> resolve_features(const std::string& path,
                                          const std::vector<std::string>& requested,
                                          const std::string& response) {
  if (!requested.empty()) return requested;
  std::vector<std::string> features;
  for (const auto& column : csv_columns(path))
    if (column != response) features.push_back(column);
  if (features.empty()) throw DataError("csv: no feature columns besides '" + response + "'");
  return features;
}

// --- simulate ---------------------------------------------------------

struct SimulateOpts {
  std::string shape = "uni_peak";
  std::int64_t n = 1000;
  int d = 1;
  double noise = 0.1;
  std::uint64_t seed = 0;
  std::string out;
};

void run_simulate(const SimulateOpts& opts) {
  SynthSpec spec;
  spec.shape = shape_from_string(opts.shape);
  spec.n = opts.n;
  spec.d = opts.d;
  spec.noise_sd = opts.noise;
  spec.seed = opts.seed;
  const SynthResult result = generate(spec);

  std::vector<std::string> features;
  for (int j = 1; j <= opts.d; ++j) features.push_back("x" + std::to_string(j));
  write_dataset_csv(result.data, features, "y", opts.out);
  std::cout << "wrote " << opts.n << " rows (d=" << opts.d << ", shape=" << opts.shape << ") to "
            << opts.out << "\n";
}

// --- fit --------------------------------------------------------------

struct FitOpts {
  std::string data;
  std::string response = "y";
  std::vector<std::string> features;
  std::string estimator = "odac";
  int nodes = 20;
  std::string slicing = "scott";
  double tau = 1.0;
  std::uint64_t seed = 0;
  int workers = 1;
  KernelOpts kernel;
  std::string out;
};

void run_fit(const FitOpts& opts) {
  const auto features = resolve_features(opts.data, opts.features, opts.response);
  const Dataset data = load_csv(opts.data, opts.response, features);

  const KernelSpec spec = resolve_kernel(opts.kernel, data.X, opts.seed);
  const double lambda = resolve_lambda(opts.kernel, data, spec, opts.seed);

  const auto estimator = estimator_from_string(opts.estimator);
  const auto plan_seed = derive_seed(opts.seed, {stream::partition});
  PartitionPlan plan;
  if (estimator == Estimator::full) {
    plan = classical_plan(data.n(), 1, plan_seed);
  } else if (estimator == Estimator::classical_dac) {
    plan = classical_plan(data.n(), opts.nodes, plan_seed);
  } else {
    const SliceSpec slices = make_slices(data.y, parse_slicing(opts.slicing));
    plan = oversample_plan(data.y, slices, opts.tau, opts.nodes, plan_seed);
  }

  DacModel model = fit_dac(data, plan, spec, lambda, opts.workers);
  model.feature_names = features;
  save_model(model, opts.out);
  std::cout << "fit " << opts.estimator << ": n=" << data.n() << " d=" << data.dim()
            << " k=" << plan.k << " sigma=" << spec.sigma << " lambda=" << lambda
            << " pre_dedup=" << plan.pre_dedup_total << " post_dedup=" << plan.post_dedup_total
            << " -> " << opts.out << "\n";
}

// --- predict ----------------------------------------------------------

struct PredictOpts {
  std::string model;
  std::string data;
  std::string out;
};

void run_predict(const PredictOpts& opts) {
  const DacModel model = load_model(opts.model);
  const Eigen::MatrixXd X = load_csv_features(opts.data, model.feature_names);
  if (!model.locals.empty() && X.cols() != model.locals.front().centers.cols())
    throw InputError("predict: data has " + std::to_string(X.cols()) +
                     " feature columns, model expects " +
                     std::to_string(model.locals.front().centers.cols()));
  const Eigen::VectorXd predictions = predict_dac(model, X);
  write_predictions_csv(predictions, opts.out);
  std::cout << "wrote " << predictions.size() << " predictions to " << opts.out << "\n";
}

// --- bench ------------------------------------------------------------

struct BenchOpts {
  std::vector<std::string> estimators{"full", "dac", "odac"};
  std::vector<std::int64_t> n_values{2000};
  std::vector<int> d_values{1};
  std::vector<int> k_values{20};
  std::vector<double> tau_values{1.0};
  std::string slicing = "scott";
  int replicates = 20;
  std::uint64_t seed = 0;
  std::int64_t test_grid = 2000;
  double noise = 0.1;
  std::string shape = "uni_peak";
  int workers = 1;
  KernelOpts kernel;
  std::string out = "report.json";
  // CSV mode
  std::string data;
  std::string response = "y";
  std::vector<std::string> features;
  double test_fraction = 0.1;
};

std::string sibling_csv_path(const std::string& json_path) {
  const auto dot = json_path.rfind('.');
  const auto slash = json_path.find_last_of('/');
  const auto stem = (dot == std::string::npos || (slash != std::string::npos && dot < slash))
                        ? json_path
                        : json_path.substr(0, dot);
  const auto candidate = stem + ".csv";
  return candidate == json_path ? json_path + ".csv" : candidate;
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path + " for writing");
  out << body;
  if (!out) throw DataError("write failed for " + path);
}

void run_bench(const BenchOpts& opts) {
  std::vector<Estimator> estimators;
  for (const auto& name : opts.estimators) estimators.push_back(estimator_from_string(name));

  ExperimentReport report;
  if (!opts.data.empty()) {
    const auto features = resolve_features(opts.data, opts.features, opts.response);
    const Dataset data = load_csv(opts.data, opts.response, features);
    CsvExperimentConfig config;
    config.estimators = estimators;
    config.k_values = opts.k_values;
    config.tau_values = opts.tau_values;
    config.slicing = parse_slicing(opts.slicing);
    config.replicates = opts.replicates;
    config.master_seed = opts.seed;
    config.test_fraction = opts.test_fraction;
    config.kernel.family = kernel_family_from_string(opts.kernel.family);
    config.kernel.degree = opts.kernel.degree;
    config.sigma = opts.kernel.sigma;
    config.lambda = opts.kernel.lambda;
    report = run_csv_experiment(data, config, opts.workers);
  } else {
    ExperimentConfig config;
    config.estimators = estimators;
    config.n_values = opts.n_values;
    config.d_values = opts.d_values;
    config.k_values = opts.k_values;
    config.tau_values = opts.tau_values;
    config.slicing = parse_slicing(opts.slicing);
    config.replicates = opts.replicates;
    config.master_seed = opts.seed;
    config.test_grid_size = opts.test_grid;
    config.noise_sd = opts.noise;
    config.shape = shape_from_string(opts.shape);
    config.kernel.family = kernel_family_from_string(opts.kernel.family);
    config.kernel.degree = opts.kernel.degree;
    config.sigma = opts.kernel.sigma;
    config.lambda = opts.kernel.lambda;
    report = run_experiment(config, opts.workers);
  }

  const auto csv_path = sibling_csv_path(opts.out);
  write_text(opts.out, report_to_json(report));
  write_text(csv_path, report_to_csv(report));

  int failed = 0;
  for (const auto& cell : report.cells)
    if (!cell.error.empty()) ++failed;
  std::cout << "wrote " << report.cells.size() << " cells x " << opts.replicates
            << " replicates to " << opts.out << " and " << csv_path << "\n";
  if (failed > 0) std::cout << failed << " cell(s) recorded errors; see the report\n";
}

// --- diagnose ---------------------------------------------------------

struct DiagnoseOpts {
  std::string data;
  std::string response = "y";
  std::vector<std::string> features;
  std::string slicing = "scott";
  std::int64_t probe = 2000;
  std::uint64_t seed = 0;
  KernelOpts kernel;
  std::string out;
};

void run_diagnose(const DiagnoseOpts& opts) {
  const auto features = resolve_features(opts.data, opts.features, opts.response);
  const Dataset data = load_csv(opts.data, opts.response, features);

  const SliceSpec slices = make_slices(data.y, parse_slicing(opts.slicing));
  std::int64_t largest = 0;
  for (const auto count : slices.counts) largest = std::max(largest, count);

  const KernelSpec spec = resolve_kernel(opts.kernel, data.X, opts.seed);
  const double lambda = resolve_lambda(opts.kernel, data, spec, opts.seed);

  // The spectrum costs O(n^3); diagnose it on a seeded probe when the data
  // is larger than --probe rows.
  Dataset probe = data;
  if (data.n() > opts.probe) {
    Rng rng(derive_seed(opts.seed, {stream::test_grid}));
    probe = data.subset(rng.sample_without_replacement(data.n(), opts.probe));
  }
  const SpectrumDiagnostic spectrum = spectrum_diagnostic(gram(spec, probe.X), lambda);

  nlohmann::json doc;
  doc["n"] = data.n();
  doc["d"] = data.dim();
  doc["kernel"] = {{"family", to_string(spec.family)}, {"sigma", spec.sigma}};
  if (spec.family == KernelFamily::polynomial) doc["kernel"]["degree"] = spec.degree;
  doc["lambda"] = lambda;
  doc["probe_rows"] = probe.n();
  doc["d_lambda"] = spectrum.d_lambda;
  const auto top = std::min<std::size_t>(spectrum.eigenvalues.size(), 50);
  doc["top_eigenvalues"] =
      std::vector<double>(spectrum.eigenvalues.begin(), spectrum.eigenvalues.begin() + top);
  doc["slices"] = {{"rule", to_string(slices.rule)},
                   {"boundaries", slices.boundaries},
                   {"counts", slices.counts},
                   {"largest_fraction", static_cast<double>(largest) / data.n()}};

  const auto body = doc.dump(2) + "\n";
  std::cout << body;
  if (!opts.out.empty()) write_text(opts.out, body);
}

// --- config file --------------------------------------------------------

std::string strip(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

// CLI11 only applies config files owned by the root parser, and root options
// may not follow the subcommand name, so `bench --config FILE` is expanded by
// hand: every `key=value` line becomes a `--key=value` token spliced in right
// after the subcommand.  Keys that were also passed on the command line are
// dropped, so explicit flags always win; within the file the last occurrence
// of a key wins.
std::vector<std::string> expand_config_file(const std::vector<std::string>& args,
                                            const CLI::App& sub) {
  const std::string name = sub.get_name();
  if (args.empty() || args.front() != name) return args;

  std::string path;
  std::vector<std::string> given;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& token = args[i];
    if (token == "--config" && i + 1 < args.size())
      path = args[i + 1];
    else if (token.rfind("--config=", 0) == 0)
      path = token.substr(9);
    else if (token.rfind("--", 0) == 0)
      given.push_back(token.substr(2, token.find('=') - 2));
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw InputError(name + ": cannot open config file '" + path + "'");

  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto where = path + ":" + std::to_string(lineno);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = strip(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError(name + ": expected key=value at " + where);
    std::string key = strip(line.substr(0, eq));
    std::string value = strip(line.substr(eq + 1));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    if (key == "config") throw InputError(name + ": config files cannot nest at " + where);
    if (key.empty() || sub.get_option_no_throw("--" + key) == nullptr)
      throw InputError(name + ": unknown config key '" + key + "' at " + where);
    auto seen = std::find_if(entries.begin(), entries.end(),
                             [&](const auto& entry) { return entry.first == key; });
    if (seen != entries.end())
      seen->second = value;
    else
      entries.emplace_back(key, value);
  }

  std::vector<std::string> expanded;
  expanded.push_back(args.front());
  for (const auto& [key, value] : entries)
    if (std::find(given.begin(), given.end(), key) == given.end())
      expanded.push_back("--" + key + "=" + value);
  expanded.insert(expanded.end(), args.begin() + 1, args.end());
  return expanded;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kernel ridge regression with response-oversampled divide and conquer"};
  app.require_subcommand(1);

  SimulateOpts simulate_opts;
  auto* simulate = app.add_subcommand("simulate", "generate a synthetic skewed-response CSV");
  simulate->add_option("--shape", simulate_opts.shape, "true surface")
      ->check(CLI::IsMember({"uni_peak", "double_peak"}))
      ->capture_default_str();
  simulate->add_option("--n", simulate_opts.n, "rows")->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--d", simulate_opts.d, "predictor dimension")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--noise", simulate_opts.noise, "noise standard deviation")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  simulate->add_option("--seed", simulate_opts.seed, "master seed")->capture_default_str();
  simulate->add_option("--out", simulate_opts.out, "output CSV path")->required();

  FitOpts fit_opts;
  auto* fit = app.add_subcommand("fit", "fit a model on a CSV and save it as JSON");
  fit->add_option("data", fit_opts.data, "training data CSV")
      ->required()
      ->check(CLI::ExistingFile);
  fit->add_option("--response", fit_opts.response, "response column")->capture_default_str();
  fit->add_option("--features", fit_opts.features,
                  "feature columns (default: all except the response)")
      ->delimiter(',');
  fit->add_option("--estimator", fit_opts.estimator, "full, dac, or odac")
      ->check(CLI::IsMember({"full", "dac", "odac"}))
      ->capture_default_str();
  fit->add_option("--nodes", fit_opts.nodes, "node count k")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fit->add_option("--slicing", fit_opts.slicing, "fixed:L, scott, sturges, or fd")
      ->capture_default_str();
  fit->add_option("--tau", fit_opts.tau, "oversampling scale in (0,1]")->capture_default_str();
  fit->add_option("--seed", fit_opts.seed, "master seed")->capture_default_str();
  fit->add_option("--workers", fit_opts.workers, "fit threads")
      ->envname("SKEWKRR_WORKERS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fit->add_option("--out", fit_opts.out, "model JSON path")->required();
  add_kernel_options(fit, fit_opts.kernel);

  PredictOpts predict_opts;
  auto* predict = app.add_subcommand("predict", "evaluate a saved model on new rows");
  predict->add_option("data", predict_opts.data, "input CSV")
      ->required()
      ->check(CLI::ExistingFile);
  predict->add_option("--model", predict_opts.model, "model JSON path")
      ->required()
      ->check(CLI::ExistingFile);
  predict->add_option("--out", predict_opts.out, "predictions CSV path")->required();

  BenchOpts bench_opts;
  std::string bench_config;
  auto* bench = app.add_subcommand("bench", "replicated estimator comparison");
  bench->add_option("--config", bench_config,
                    "flat key=value file mirroring these flags; explicit flags win");
  bench->add_option("--estimators", bench_opts.estimators, "estimators to compare")
      ->delimiter(',')
      ->check(CLI::IsMember({"full", "dac", "odac"}))
      ->capture_default_str();
  bench->add_option("--n-values", bench_opts.n_values, "sample sizes (synthetic mode)")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench->add_option("--d-values", bench_opts.d_values, "dimensions (synthetic mode)")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench->add_option("--k-values", bench_opts.k_values, "node counts")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench->add_option("--tau-values", bench_opts.tau_values, "oversampling scales")->delimiter(',');
  bench->add_option("--slicing", bench_opts.slicing, "fixed:L, scott, sturges, or fd")
      ->capture_default_str();
  bench->add_option("--replicates", bench_opts.replicates, "replicates per cell")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--seed", bench_opts.seed, "master seed")->capture_default_str();
  bench->add_option("--test-grid", bench_opts.test_grid, "evaluation points (synthetic mode)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--noise", bench_opts.noise, "noise sd (synthetic mode)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  bench->add_option("--shape", bench_opts.shape, "true surface (synthetic mode)")
      ->check(CLI::IsMember({"uni_peak", "double_peak"}))
      ->capture_default_str();
  bench->add_option("--workers", bench_opts.workers, "replicate threads")
      ->envname("SKEWKRR_WORKERS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--out", bench_opts.out, "report JSON path; a .csv sibling is also written")
      ->capture_default_str();
  bench->add_option("--data", bench_opts.data, "CSV mode: benchmark on this file")
      ->check(CLI::ExistingFile);
  bench->add_option("--response", bench_opts.response, "CSV mode: response column")
      ->capture_default_str();
  bench->add_option("--features", bench_opts.features,
                    "CSV mode: feature columns (default: all except the response)")
      ->delimiter(',');
  bench->add_option("--test-fraction", bench_opts.test_fraction,
                    "CSV mode: held-out fraction per stratum")
      ->capture_default_str();
  add_kernel_options(bench, bench_opts.kernel);

  DiagnoseOpts diagnose_opts;
  auto* diagnose = app.add_subcommand("diagnose", "slice histogram and spectrum for a dataset");
  diagnose->add_option("data", diagnose_opts.data, "input CSV")
      ->required()
      ->check(CLI::ExistingFile);
  diagnose->add_option("--response", diagnose_opts.response, "response column")
      ->capture_default_str();
  diagnose->add_option("--features", diagnose_opts.features,
                       "feature columns (default: all except the response)")
      ->delimiter(',');
  diagnose->add_option("--slicing", diagnose_opts.slicing, "fixed:L, scott, sturges, or fd")
      ->capture_default_str();
  diagnose->add_option("--probe", diagnose_opts.probe, "max rows for the spectrum")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  diagnose->add_option("--seed", diagnose_opts.seed, "master seed")->capture_default_str();
  diagnose->add_option("--out", diagnose_opts.out, "also write the JSON here");
  add_kernel_options(diagnose, diagnose_opts.kernel);

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = expand_config_file(args, *bench);
  } catch (const std::exception& failure) {
    std::cerr << "error: " << failure.what() << "\n";
    return 1;
  }
  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& parse_error) {
    return app.exit(parse_error);
  }

  try {
    if (simulate->parsed()) run_simulate(simulate_opts);
    if (fit->parsed()) run_fit(fit_opts);
    if (predict->parsed()) run_predict(predict_opts);
    if (bench->parsed()) run_bench(bench_opts);
    if (diagnose->parsed()) run_diagnose(diagnose_opts);
  } catch (const std::exception& failure) {
    std::cerr << "error: " << failure.what() << "\n";
    return 1;
  }
  return 0;
}
