#include "pvaudit/cli_runner.hpp"

#include "pvaudit/report.hpp"
#include "pvaudit/svg.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <sstream>

namespace pvaudit {

namespace {

// Converted-records CSV, the contract columns plus outcome_label so plots
// can group by outcome downstream.
std::string serialize_converted(const std::vector<PValueRecord>& records) {
  std::ostringstream out;
  out << "study_id,z,p,method,outcome_label\n";
  for (const auto& rec : records) {
    out << csv_escape(rec.study_id) << ',' << format_sig6(rec.z) << ',' << format_sig6(rec.p)
        << ',' << method_name(rec.method) << ',' << csv_escape(rec.outcome_label) << '\n';
  }
  return out.str();
}

std::vector<PValueRecord> parse_converted(const CsvTable& table) {
  const int c_study = table.required_column("study_id");
  const int c_z = table.required_column("z");
  const int c_p = table.required_column("p");
  const int c_method = table.required_column("method");
  const int c_outcome = table.required_column("outcome_label");

  std::vector<PValueRecord> out;
  out.reserve(table.rows.size());
  int row_number = 0;
  for (const auto& row : table.rows) {
    ++row_number;
    PValueRecord rec;
    rec.study_id = row[static_cast<size_t>(c_study)];
    rec.outcome_label = row[static_cast<size_t>(c_outcome)];
    rec.z = parse_double_field(row[static_cast<size_t>(c_z)], row_number, "z");
    rec.p = parse_double_field(row[static_cast<size_t>(c_p)], row_number, "p");
    const std::string& m = row[static_cast<size_t>(c_method)];
    if (m == "exact") rec.method = PMethod::ExactNormal;
    else if (m == "altman-bland") rec.method = PMethod::AltmanBland;
    else
      throw DataError("row " + std::to_string(row_number) + ", column 'method': unknown value '" +
                      m + "'");
    if (!(rec.p >= 0.0 && rec.p <= 1.0))
      throw DataError(rec.study_id + ": p-value outside [0,1]");
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

RunResult run_convert(const ConvertOptions& options) {
  const std::string text = read_text_file(options.input);
  const std::vector<EffectEstimate> estimates = parse_estimates(text);
  if (estimates.empty()) throw DataError(options.input + ": no data rows");

  RunResult result;
  for (const auto& e : estimates) {
    const ValidationReport report = validate(e);
    if (!report.ok()) throw DataError(report.errors.front());
    for (const auto& warning : report.warnings)
      result.err_text += "warning: " + warning + "\n";
  }

  const std::vector<PValueRecord> records = convert_batch(estimates, options.method);
  write_text_file(options.output, serialize_converted(records));
  result.out_text = "converted " + std::to_string(records.size()) + " estimates (" +
                    method_name(options.method) + ") -> " + options.output + "\n";
  return result;
}

RunResult run_plot(const PlotOptions& options) {
  if (options.group_by != "outcome")
    throw std::invalid_argument("plot: unsupported --group-by '" + options.group_by + "'");

  const std::string text = read_text_file(options.input);
  const CsvTable table = parse_csv(text);

  RunResult result;
  std::vector<std::string> notes;
  std::vector<PValueRecord> records;
  if (table.column("rr") >= 0) {
    // Raw estimates: validate, note warnings in the report, convert here.
    const std::vector<EffectEstimate> estimates = parse_estimates(text);
    for (const auto& e : estimates) {
      const ValidationReport report = validate(e);
      if (!report.ok()) throw DataError(report.errors.front());
      for (const auto& warning : report.warnings) notes.push_back(warning);
    }
    records = convert_batch(estimates, options.method);
  } else {
    records = parse_converted(table);
  }
  if (records.empty()) throw DataError(options.input + ": no data rows");

  std::map<std::string, std::vector<PValueRecord>> by_outcome;
  for (const auto& rec : records) by_outcome[rec.outcome_label].push_back(rec);

  std::filesystem::create_directories(options.out_dir);

  std::vector<OutcomeAudit> audits;
  std::ostringstream lines;
  for (const auto& [label, group] : by_outcome) {
    OutcomeAudit audit;
    audit.series = build_series(group, label);
    audit.classification = classify(audit.series);
    audit.svg_file = slugify(label) + ".svg";
    write_text_file((std::filesystem::path(options.out_dir) / audit.svg_file).string(),
                    render_pvalue_plot_svg(audit.series));
    lines << label << ": n=" << audit.series.size() << " verdict="
          << verdict_name(audit.classification.verdict)
          << " min_p=" << format_sig6(audit.series.entries.front().p)
          << " max_p=" << format_sig6(audit.series.entries.back().p) << "\n";
    audits.push_back(std::move(audit));
  }

  const ordered_json report = plot_report_json(digest_label(text), audits, notes);
  write_text_file((std::filesystem::path(options.out_dir) / "report.json").string(),
                  report.dump(2) + "\n");

  result.out_text = lines.str();
  return result;
}

RunResult run_count(const CountOptions& options) {
  if (!(options.alpha > 0.0 && options.alpha < 1.0))
    throw std::invalid_argument("count: --alpha must lie in (0,1)");

  const std::string text = read_text_file(options.input);
  const std::vector<SearchSpaceInput> inputs = parse_search_space_inputs(text);
  if (inputs.empty()) throw DataError(options.input + ": no data rows");

  std::vector<SearchSpaceRecord> records;
  records.reserve(inputs.size());
  std::vector<double> tests;
  std::vector<double> models;
  std::vector<double> space;
  for (const auto& input : inputs) {
    try {
      records.push_back(search_space(input));
    } catch (const std::overflow_error& e) {
      throw DataError(input.paper_id + ": " + e.what());
    }
    tests.push_back(static_cast<double>(records.back().tests));
    models.push_back(static_cast<double>(records.back().models));
    space.push_back(static_cast<double>(records.back().space));
  }

  std::ostringstream out;
  out << "paper_id            year  foods  outcomes  causes  covariates       tests      models"
         "            space\n";
  for (const auto& rec : records) {
    char line[160];
    std::snprintf(line, sizeof line, "%-18s %5d %6lld %9lld %7lld %11lld %11s %11s %16s\n",
                  rec.input.paper_id.c_str(), rec.input.year,
                  static_cast<long long>(rec.input.foods),
                  static_cast<long long>(rec.input.outcomes),
                  static_cast<long long>(rec.input.causes),
                  static_cast<long long>(rec.input.covariates),
                  format_thousands(static_cast<long long>(rec.tests)).c_str(),
                  format_thousands(static_cast<long long>(rec.models)).c_str(),
                  format_thousands(static_cast<long long>(rec.space)).c_str());
    out << line;
  }

  const auto print_summary = [&out](const char* name, const FiveNumberSummary& raw) {
    const FiveNumberSummary r = rounded(raw);
    char line[200];
    std::snprintf(line, sizeof line, "%-8s min %s | lower quartile %s | median %s | "
                  "upper quartile %s | maximum %s | mean %s\n",
                  name, format_thousands(static_cast<long long>(r.minimum)).c_str(),
                  format_thousands(static_cast<long long>(r.lower_quartile)).c_str(),
                  format_thousands(static_cast<long long>(r.median)).c_str(),
                  format_thousands(static_cast<long long>(r.upper_quartile)).c_str(),
                  format_thousands(static_cast<long long>(r.maximum)).c_str(),
                  format_thousands(static_cast<long long>(r.mean)).c_str());
    out << line;
  };

  out << "\nsummary statistics (half-up rounded)\n";
  const FiveNumberSummary space_summary = summarize(space);
  print_summary("tests", summarize(tests));
  print_summary("models", summarize(models));
  print_summary("space", space_summary);

  const double expected = options.alpha * space_summary.median;
  out << "\nexpected chance findings at alpha " << format_sig6(options.alpha) << " and median space "
      << format_thousands(static_cast<long long>(space_summary.median)) << ": "
      << present_integer(expected) << " (" << format_sig6(expected) << ")\n";

  if (!options.output.empty()) {
    const ordered_json report = count_report_json(digest_label(text), records, options.alpha);
    write_text_file(options.output, report.dump(2) + "\n");
  }

  RunResult result;
  result.out_text = out.str();
  return result;
}

RunResult run_simulate(const SimulateOptions& options) {
  const SimulationConfig& config = options.config;
  if (config.trials < 1) throw std::invalid_argument("simulate: --trials must be >= 1");
  if (config.n_null < 0 || config.n_alt < 0)
    throw std::invalid_argument("simulate: counts must be >= 0");
  if (config.n_null + config.n_alt < 1)
    throw std::invalid_argument("simulate: need --n-null + --n-alt >= 1");
  if (!(config.alt_mean_z >= 0.0))
    throw std::invalid_argument("simulate: --alt-z must be >= 0");

  const ClassifyThresholds thresholds;
  const SimulationReport report = calibrate_classifier(config, thresholds);

  std::ostringstream out;
  out << "rng: " << kRngAlgorithm << "\n";
  out << "config: n_null=" << config.n_null << " n_alt=" << config.n_alt
      << " alt_mean_z=" << format_sig6(config.alt_mean_z) << " trials=" << config.trials
      << " seed=" << config.seed << "\n";
  out << "fraction_below_05: " << format_sig6(report.fraction_below_05) << "\n";
  out << "verdicts:\n";
  for (const auto& [name, count] : report.verdict_frequencies) {
    out << "  " << name << ": " << count << " (" << format_sig6(static_cast<double>(count) / config.trials)
        << ")\n";
  }

  if (!options.output.empty()) {
    const ordered_json j = simulate_report_json(report, thresholds);
    write_text_file(options.output, j.dump(2) + "\n");
  }

  RunResult result;
  result.out_text = out.str();
  return result;
}

}  // namespace pvaudit
