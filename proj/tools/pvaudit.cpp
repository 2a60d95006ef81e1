// Command-line front end. All real work lives in the library's run_*
// functions so the test suite exercises the exact code paths this binary
// runs; main only parses flags and maps errors onto the three exit codes.
#include "CLI11.hpp"

#include "pvaudit/cli_runner.hpp"
#include "pvaudit/version.hpp"

#include <cstdio>
#include <string>

namespace {

int emit(const pvaudit::RunResult& result) {
  if (!result.out_text.empty()) std::fputs(result.out_text.c_str(), stdout);
  if (!result.err_text.empty()) std::fputs(result.err_text.c_str(), stderr);
  return result.exit_code;
}

pvaudit::PMethod method_from(const std::string& name) {
  return name == "altman-bland" ? pvaudit::PMethod::AltmanBland
                                : pvaudit::PMethod::ExactNormal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Audit tool for claimed treatment effects in observational"
               " meta-analyses: converts confidence intervals to p-values,"
               " draws and classifies p-value plots, and counts the"
               " multiple-testing search space behind each study."};
  app.set_version_flag("--version",
                       std::string(pvaudit::kToolName) + " " + pvaudit::kVersion);
  app.require_subcommand(1);

  auto* convert = app.add_subcommand(
      "convert", "Back-calculate two-sided p-values from risk ratios and"
                 " confidence intervals");
  std::string convert_input;
  std::string convert_output;
  std::string convert_method = "exact";
  convert->add_option("--input", convert_input, "estimates CSV to read")
      ->required();
  convert->add_option("--output", convert_output, "converted CSV to write")
      ->required();
  convert->add_option("--method", convert_method,
                      "p-value method (default exact)")
      ->check(CLI::IsMember({"exact", "altman-bland"}));

  auto* plot = app.add_subcommand(
      "plot", "Render p-value plots per outcome and write an audit report");
  std::string plot_input;
  std::string plot_out;
  std::string plot_group_by = "outcome";
  std::string plot_method = "exact";
  plot->add_option("--input", plot_input,
                   "converted records or raw estimates CSV")
      ->required();
  plot->add_option("--out", plot_out, "output directory")->required();
  plot->add_option("--group-by", plot_group_by,
                   "grouping key, one plot per group (default outcome)");
  plot->add_option("--method", plot_method,
                   "p-value method when the input is a raw estimates file")
      ->check(CLI::IsMember({"exact", "altman-bland"}));

  auto* count = app.add_subcommand(
      "count", "Tabulate per-study test counts, model counts, and search"
               " space, with summaries and the expected chance findings");
  std::string count_input;
  std::string count_output;
  double count_alpha = 0.05;
  count->add_option("--input", count_input, "counting CSV to read")
      ->required();
  count->add_option("--alpha", count_alpha,
                    "significance level (default 0.05)");
  count->add_option("--output", count_output, "optional JSON report path");

  auto* simulate = app.add_subcommand(
      "simulate", "Run the seeded classifier calibration experiment");
  pvaudit::SimulateOptions simulate_options;
  simulate->add_option("--n-null", simulate_options.config.n_null,
                       "null p-values per trial");
  simulate->add_option("--n-alt", simulate_options.config.n_alt,
                       "alternative p-values per trial");
  simulate->add_option("--alt-z", simulate_options.config.alt_mean_z,
                       "mean z of the alternative draws");
  simulate->add_option("--trials", simulate_options.config.trials,
                       "number of simulated series (default 1)");
  simulate->add_option("--seed", simulate_options.config.seed,
                       "generator seed (default 42)");
  simulate->add_option("--output", simulate_options.output,
                       "optional JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return pvaudit::kExitUsage;
  }

  pvaudit::RunResult result;
  if (*convert) {
    result = pvaudit::run_guarded([&] {
      pvaudit::ConvertOptions options;
      options.input = convert_input;
      options.output = convert_output;
      options.method = method_from(convert_method);
      return pvaudit::run_convert(options);
    });
  } else if (*plot) {
    result = pvaudit::run_guarded([&] {
      pvaudit::PlotOptions options;
      options.input = plot_input;
      options.out_dir = plot_out;
      options.group_by = plot_group_by;
      options.method = method_from(plot_method);
      return pvaudit::run_plot(options);
    });
  } else if (*count) {
    result = pvaudit::run_guarded([&] {
      pvaudit::CountOptions options;
      options.input = count_input;
      options.alpha = count_alpha;
      options.output = count_output;
      return pvaudit::run_count(options);
    });
  } else {
    result = pvaudit::run_guarded(
        [&] { return pvaudit::run_simulate(simulate_options); });
  }
  return emit(result);
}
