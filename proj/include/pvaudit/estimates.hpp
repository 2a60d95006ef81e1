// Data model, parsing, and validation for effect estimates and the counting
// inputs. Estimates are ratio effect measures (relative risks here) with
// confidence limits; everything downstream works on the natural-log scale,
// so all three values must be strictly positive.
#pragma once

#include "pvaudit/csv.hpp"
#include "pvaudit/stats.hpp"

#include <string>
#include <vector>

namespace pvaudit {

struct EffectEstimate {
  std::string study_id;
  std::string cohort_name;
  std::string outcome_label;
  double point_estimate = 0.0;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  double confidence_level = 0.95;
};

struct SearchSpaceInput {
  std::string paper_id;
  int year = 0;
  long long foods = 0;       // informational FFQ food count
  long long outcomes = 1;    // O
  long long causes = 1;      // C
  long long covariates = 0;  // A
};

struct CitationCount {
  std::string cohort_name;
  long long papers_total = 0;
  long long papers_cohort_ffq = 0;
};

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

// Errors for values that break the log-scale arithmetic (non-positive,
// inverted, or zero-width intervals); a warning when the point estimate sits
// outside or exactly on a confidence limit, which published rounded tables
// legitimately produce.
ValidationReport validate(const EffectEstimate& estimate);

// File columns: study_id, cohort_name, outcome_label, rr, cl_low, cl_high,
// and optionally confidence_level (defaults to 0.95). Rows keep file order.
std::vector<EffectEstimate> parse_estimates(const std::string& text);

std::string serialize_estimates(const std::vector<EffectEstimate>& estimates);

// Counting file columns: paper_id, year, foods, outcomes, causes, covariates.
std::vector<SearchSpaceInput> parse_search_space_inputs(const std::string& text);

// Citation file columns: cohort_name, papers_total, papers_cohort_ffq.
std::vector<CitationCount> parse_citation_counts(const std::string& text);

// z and two-sided p for every estimate, in input order. Validation errors
// (and the degenerate-interval case) surface as DataError with the study_id
// attached.
std::vector<PValueRecord> convert_batch(const std::vector<EffectEstimate>& estimates,
                                        PMethod method);

}  // namespace pvaudit
