// Analysis-search-space arithmetic for multiple testing / multiple modelling
// audits: Tests = outcomes x causes, Models = 2^covariates, Space = Tests x
// Models, all in exact integer arithmetic with explicit overflow errors, plus
// the five-number summaries used to describe a sample of base papers.
#pragma once

#include "pvaudit/estimates.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pvaudit {

struct SearchSpaceRecord {
  SearchSpaceInput input;
  std::uint64_t tests = 0;
  std::uint64_t models = 0;
  std::uint64_t space = 0;
};

struct FiveNumberSummary {
  double minimum = 0.0;
  double lower_quartile = 0.0;
  double median = 0.0;
  double upper_quartile = 0.0;
  double maximum = 0.0;
  double mean = 0.0;
  bool rounding_applied = false;
};

// Exact derived counts; throws std::overflow_error for covariates > 63 or a
// product outside 64-bit range (never silent wraparound).
SearchSpaceRecord search_space(const SearchSpaceInput& input);

// alpha x space, the expected number of chance findings when every test in
// the space runs at level alpha; presentation rounds half-up.
double expected_chance_findings(std::uint64_t space, double alpha);

// Five-number summary with Tukey hinges, where the lower and upper halves
// INCLUDE the overall median element when the count is odd. That convention
// is what reproduces the audited tables exactly.
FiveNumberSummary summarize(std::vector<double> values);

// Half-up rounds all six fields for presentation and flags it.
FiveNumberSummary rounded(const FiveNumberSummary& summary);

struct CitationSummary {
  FiveNumberSummary papers_total;
  FiveNumberSummary papers_cohort_ffq;
};

CitationSummary summarize_citations(const std::vector<CitationCount>& counts);

}  // namespace pvaudit
