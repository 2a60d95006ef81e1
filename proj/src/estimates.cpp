#include "pvaudit/estimates.hpp"

#include <charconv>
#include <sstream>

namespace pvaudit {

namespace {

// Shortest round-trip formatting, so serialize(parse(x)) preserves every
// numeric field exactly.
std::string format_shortest(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

ValidationReport validate(const EffectEstimate& e) {
  ValidationReport report;
  const std::string who = e.study_id.empty() ? "<unnamed>" : e.study_id;

  if (!(e.point_estimate > 0.0))
    report.errors.push_back(who + ": non-positive estimate (log scale undefined)");
  if (!(e.ci_lower > 0.0) || !(e.ci_upper > 0.0))
    report.errors.push_back(who + ": non-positive confidence limit (log scale undefined)");
  if (!(e.confidence_level > 0.0 && e.confidence_level < 1.0))
    report.errors.push_back(who + ": confidence level outside (0,1)");

  if (e.ci_lower > 0.0 && e.ci_upper > 0.0) {
    if (e.ci_lower > e.ci_upper) {
      report.errors.push_back(who + ": inverted confidence limits");
    } else if (e.ci_lower == e.ci_upper) {
      report.errors.push_back(who + ": degenerate interval (zero-width CI gives undefined SE)");
    } else if (e.point_estimate > 0.0) {
      if (e.point_estimate < e.ci_lower || e.point_estimate > e.ci_upper)
        report.warnings.push_back(who + ": point estimate outside confidence interval");
      else if (e.point_estimate == e.ci_lower || e.point_estimate == e.ci_upper)
        report.warnings.push_back(who + ": point on CI boundary");
    }
  }
  return report;
}

std::vector<EffectEstimate> parse_estimates(const std::string& text) {
  const CsvTable table = parse_csv(text);
  const int c_study = table.required_column("study_id");
  const int c_cohort = table.required_column("cohort_name");
  const int c_outcome = table.required_column("outcome_label");
  const int c_rr = table.required_column("rr");
  const int c_lo = table.required_column("cl_low");
  const int c_hi = table.required_column("cl_high");
  const int c_level = table.column("confidence_level");

  std::vector<EffectEstimate> out;
  out.reserve(table.rows.size());
  int row_number = 0;
  for (const auto& row : table.rows) {
    ++row_number;
    EffectEstimate e;
    e.study_id = row[static_cast<size_t>(c_study)];
    e.cohort_name = row[static_cast<size_t>(c_cohort)];
    e.outcome_label = row[static_cast<size_t>(c_outcome)];
    e.point_estimate = parse_double_field(row[static_cast<size_t>(c_rr)], row_number, "rr");
    e.ci_lower = parse_double_field(row[static_cast<size_t>(c_lo)], row_number, "cl_low");
    e.ci_upper = parse_double_field(row[static_cast<size_t>(c_hi)], row_number, "cl_high");
    if (c_level >= 0)
      e.confidence_level =
          parse_double_field(row[static_cast<size_t>(c_level)], row_number, "confidence_level");
    out.push_back(std::move(e));
  }
  return out;
}

std::string serialize_estimates(const std::vector<EffectEstimate>& estimates) {
  std::ostringstream out;
  out << "study_id,cohort_name,outcome_label,rr,cl_low,cl_high,confidence_level\n";
  for (const auto& e : estimates) {
    out << csv_escape(e.study_id) << ',' << csv_escape(e.cohort_name) << ','
        << csv_escape(e.outcome_label) << ',' << format_shortest(e.point_estimate) << ','
        << format_shortest(e.ci_lower) << ',' << format_shortest(e.ci_upper) << ','
        << format_shortest(e.confidence_level) << '\n';
  }
  return out.str();
}

std::vector<SearchSpaceInput> parse_search_space_inputs(const std::string& text) {
  const CsvTable table = parse_csv(text);
  const int c_paper = table.required_column("paper_id");
  const int c_year = table.required_column("year");
  const int c_foods = table.required_column("foods");
  const int c_outcomes = table.required_column("outcomes");
  const int c_causes = table.required_column("causes");
  const int c_cov = table.required_column("covariates");

  std::vector<SearchSpaceInput> out;
  out.reserve(table.rows.size());
  int row_number = 0;
  for (const auto& row : table.rows) {
    ++row_number;
    SearchSpaceInput in;
    in.paper_id = row[static_cast<size_t>(c_paper)];
    in.year = static_cast<int>(parse_int_field(row[static_cast<size_t>(c_year)], row_number, "year"));
    in.foods = parse_int_field(row[static_cast<size_t>(c_foods)], row_number, "foods");
    in.outcomes = parse_int_field(row[static_cast<size_t>(c_outcomes)], row_number, "outcomes");
    in.causes = parse_int_field(row[static_cast<size_t>(c_causes)], row_number, "causes");
    in.covariates = parse_int_field(row[static_cast<size_t>(c_cov)], row_number, "covariates");

    const std::string who = in.paper_id.empty() ? ("row " + std::to_string(row_number)) : in.paper_id;
    if (in.foods < 0) throw DataError(who + ": foods must be >= 0");
    if (in.outcomes < 1) throw DataError(who + ": outcomes must be >= 1");
    if (in.causes < 1) throw DataError(who + ": causes must be >= 1");
    if (in.covariates < 0) throw DataError(who + ": covariates must be >= 0");
    out.push_back(std::move(in));
  }
  return out;
}

std::vector<CitationCount> parse_citation_counts(const std::string& text) {
  const CsvTable table = parse_csv(text);
  const int c_name = table.required_column("cohort_name");
  const int c_total = table.required_column("papers_total");
  const int c_ffq = table.required_column("papers_cohort_ffq");

  std::vector<CitationCount> out;
  out.reserve(table.rows.size());
  int row_number = 0;
  for (const auto& row : table.rows) {
    ++row_number;
    CitationCount c;
    c.cohort_name = row[static_cast<size_t>(c_name)];
    c.papers_total = parse_int_field(row[static_cast<size_t>(c_total)], row_number, "papers_total");
    c.papers_cohort_ffq =
        parse_int_field(row[static_cast<size_t>(c_ffq)], row_number, "papers_cohort_ffq");
    const std::string who = c.cohort_name.empty() ? ("row " + std::to_string(row_number)) : c.cohort_name;
    if (c.papers_total < 0 || c.papers_cohort_ffq < 0)
      throw DataError(who + ": citation counts must be >= 0");
    if (c.papers_cohort_ffq > c.papers_total)
      throw DataError(who + ": papers_cohort_ffq exceeds papers_total");
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<PValueRecord> convert_batch(const std::vector<EffectEstimate>& estimates,
                                        PMethod method) {
  std::vector<PValueRecord> out;
  out.reserve(estimates.size());
  for (const auto& e : estimates) {
    const ValidationReport report = validate(e);
    if (!report.ok()) throw DataError(report.errors.front());
    PValueRecord rec;
    rec.study_id = e.study_id;
    rec.outcome_label = e.outcome_label;
    const double se = log_se(e.ci_lower, e.ci_upper, e.confidence_level);
    rec.z = z_score(e.point_estimate, se);
    rec.p = p_two_sided(rec.z, method);
    rec.method = method;
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace pvaudit
