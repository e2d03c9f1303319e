// spatialcorr: spatial correlation and spatial autoregression analysis.
//
//   spatialcorr report --attrs cities.csv --dist mileage.csv
//   spatialcorr fit --model sar --attrs cities.csv --dist pairs.csv --dist-format long
//
// Exit codes: 0 success, 1 input error, 2 numerical failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "spatialcorr/error.hpp"
#include "spatialcorr/pipeline.hpp"

namespace {

using namespace spatialcorr;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNumerical = 2;

struct Options {
  std::string attrs;
  std::string dist;
  std::string dist_format = "square";
  bool log = false;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  int permutations = 999;
  unsigned threads = 1;
  double collinearity_threshold = kDefaultCollinearityThreshold;
  std::string out;
  std::string format = "json";
  std::string model;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--attrs", o.attrs, "Attributes CSV (id,x,y)")->required();
  cmd->add_option("--dist", o.dist, "Distance CSV")->required();
  cmd->add_option("--dist-format", o.dist_format, "Distance layout")
      ->check(CLI::IsMember({"square", "long"}));
  cmd->add_flag("--log", o.log, "Natural-log transform x and y first");
  cmd->add_option("--alpha", o.alpha, "Significance level")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--seed", o.seed, "Permutation test seed");
  cmd->add_option("--permutations", o.permutations,
                  "Permutations per index (0 disables, otherwise >= 99)");
  cmd->add_option("--threads", o.threads,
                  "Threads for permutation tests (0 = all cores)");
  cmd->add_option("--collinearity-threshold", o.collinearity_threshold,
                  "|corr(nWx, nWy)| above which the terms count as collinear");
  cmd->add_option("--out", o.out, "Output file (default stdout)");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
}

AnalysisConfig to_config(const Options& o) {
  AnalysisConfig c;
  c.attrs_path = o.attrs;
  c.dist_path = o.dist;
  c.dist_format = *parse_distance_format(o.dist_format);
  c.log_transform = o.log;
  c.alpha = o.alpha;
  c.seed = o.seed;
  c.permutations = o.permutations;
  c.threads = o.threads;
  c.collinearity_threshold = o.collinearity_threshold;
  c.output = o.format == "text" ? OutputFormat::kText : OutputFormat::kJson;
  if (!o.model.empty()) {
    const auto v = parse_variant(o.model);
    if (!v) {
      throw Error(ErrorCode::kInvalidArgument, "unknown model '" + o.model + "'");
    }
    c.model = *v;
  }
  return c;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIoError, "cannot write '" + o.out + "'");
  file << text;
}

int run(const std::string& command, const Options& o) {
  const AnalysisConfig config = to_config(o);
  const AnalysisReport report = run_pipeline(config);

  if (command == "weights") {
    std::ostringstream csv;
    write_matrix_csv(csv, report.ids, report.weights);
    emit(o, csv.str());
    return kExitOk;
  }

  unsigned sections = kSectionAll;
  bool needs_decomposition = false;
  if (command == "corr") {
    sections = kSectionCorrelation;
  } else if (command == "fit") {
    sections = kSectionFits;
  } else if (command == "decompose") {
    sections = kSectionDecomposition;
    needs_decomposition = true;
  } else if (command == "check") {
    sections = kSectionChecks;
    needs_decomposition = true;
  } else if (command == "advise") {
    sections = kSectionAdvice;
  }
  emit(o, render(report, config.output, sections));

  if (needs_decomposition && !report.decomposition.result) {
    std::cerr << "spatialcorr: " << report.decomposition.error << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatial auto/cross-correlation and spatial autoregression analysis"};
  app.require_subcommand(1);

  Options options;
  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"weights", "Emit the globally normalized spatial weight matrix as CSV"},
      {"corr", "Correlation indexes with significance tests"},
      {"fit", "Fit ols_simple plus one model variant by OLS"},
      {"decompose", "Closed-form decomposition of the spatial coefficients"},
      {"check", "Identity checks on theoretical and empirical coefficients"},
      {"advise", "Model-selection advice"},
      {"report", "Full pipeline report"},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, options);
    if (std::string(c.name) == "fit") {
      sub->add_option("--model", options.model,
                      "ols_simple, general, sar, slx, pure_sar or pure_slx")
          ->required();
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, options);
  } catch (const Error& e) {
    std::cerr << "spatialcorr: " << e.what() << "\n";
    return is_input_error(e.code()) ? kExitInput : kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "spatialcorr: " << e.what() << "\n";
    return kExitInput;
  }
}
