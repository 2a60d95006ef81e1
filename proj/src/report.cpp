#include "pvaudit/report.hpp"

#include "pvaudit/csv.hpp"
#include "pvaudit/version.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace pvaudit {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (const char ch : bytes) {
    hash ^= static_cast<unsigned char>(ch);
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string digest_label(std::string_view bytes) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  out << content;
  if (!out) throw DataError("write failed: " + path);
}

ordered_json classification_json(const PlotClassification& c) {
  ordered_json j;
  j["verdict"] = verdict_name(c.verdict);
  j["slope"] = c.slope;
  j["intercept"] = c.intercept;
  j["sse_single"] = c.sse_single;
  j["sse_bilinear"] = c.sse_bilinear;
  if (c.breakpoint) j["breakpoint"] = *c.breakpoint;
  else j["breakpoint"] = nullptr;
  j["n_below_05"] = c.n_below_05;
  j["n_below_001"] = c.n_below_001;
  j["ks"] = ordered_json{{"d_statistic", c.ks.d_statistic},
                         {"n", c.ks.n},
                         {"rejected_at_05", c.ks.rejected_at_05}};
  return j;
}

namespace {

ordered_json report_head(const std::string& inputs_digest) {
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  j["inputs_digest"] = inputs_digest;
  return j;
}

}  // namespace

ordered_json plot_report_json(const std::string& inputs_digest,
                              const std::vector<OutcomeAudit>& outcomes,
                              const std::vector<std::string>& notes) {
  ordered_json j = report_head(inputs_digest);
  j["outcomes"] = ordered_json::array();
  for (const auto& audit : outcomes) {
    const auto& entries = audit.series.entries;
    ordered_json o;
    o["outcome_label"] = audit.series.outcome_label;
    o["n"] = audit.series.size();
    o["min_p"] = entries.front().p;
    o["max_p"] = entries.back().p;
    o["classification"] = classification_json(audit.classification);
    o["svg"] = audit.svg_file;
    j["outcomes"].push_back(std::move(o));
  }
  j["notes"] = notes;
  return j;
}

ordered_json count_report_json(const std::string& inputs_digest,
                               const std::vector<SearchSpaceRecord>& records,
                               double alpha) {
  ordered_json j = report_head(inputs_digest);

  j["papers"] = ordered_json::array();
  std::vector<double> tests;
  std::vector<double> models;
  std::vector<double> space;
  for (const auto& rec : records) {
    ordered_json row;
    row["paper_id"] = rec.input.paper_id;
    row["year"] = rec.input.year;
    row["foods"] = rec.input.foods;
    row["outcomes"] = rec.input.outcomes;
    row["causes"] = rec.input.causes;
    row["covariates"] = rec.input.covariates;
    row["tests"] = rec.tests;
    row["models"] = rec.models;
    row["space"] = rec.space;
    j["papers"].push_back(std::move(row));
    tests.push_back(static_cast<double>(rec.tests));
    models.push_back(static_cast<double>(rec.models));
    space.push_back(static_cast<double>(rec.space));
  }

  const auto summary_json = [](const FiveNumberSummary& s) {
    const FiveNumberSummary r = rounded(s);
    ordered_json out;
    out["minimum"] = r.minimum;
    out["lower_quartile"] = r.lower_quartile;
    out["median"] = r.median;
    out["upper_quartile"] = r.upper_quartile;
    out["maximum"] = r.maximum;
    out["mean"] = r.mean;
    out["rounding_applied"] = r.rounding_applied;
    return out;
  };

  const FiveNumberSummary space_summary = summarize(space);
  j["summaries"] = ordered_json{{"tests", summary_json(summarize(tests))},
                                {"models", summary_json(summarize(models))},
                                {"space", summary_json(space_summary)}};

  // Same arithmetic as expected_chance_findings, but the median of spaces
  // can be a half-integer for an even paper count.
  const double expected = alpha * space_summary.median;
  j["chance_findings"] = ordered_json{{"alpha", alpha},
                                      {"median_space", space_summary.median},
                                      {"expected", expected},
                                      {"presented", present_integer(expected)}};
  return j;
}

ordered_json simulate_report_json(const SimulationReport& report,
                                  const ClassifyThresholds& thresholds) {
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  j["rng"] = kRngAlgorithm;
  j["config"] = ordered_json{{"n_null", report.config.n_null},
                             {"n_alt", report.config.n_alt},
                             {"alt_mean_z", report.config.alt_mean_z},
                             {"trials", report.config.trials},
                             {"seed", report.config.seed}};
  j["thresholds"] = ordered_json{{"majority", thresholds.majority},
                                 {"slope_band", thresholds.slope_band},
                                 {"intercept_band", thresholds.intercept_band},
                                 {"tiny_p", thresholds.tiny_p},
                                 {"sse_ratio", thresholds.sse_ratio},
                                 {"alpha", thresholds.alpha}};
  j["verdict_frequencies"] = report.verdict_frequencies;
  j["fraction_below_05"] = report.fraction_below_05;
  return j;
}

}  // namespace pvaudit
