#include "pvaudit/searchspace.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace pvaudit {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    throw std::overflow_error(std::string(what) + " overflows exact 64-bit arithmetic");
  return a * b;
}

// Median of values[lo..hi] (inclusive), values sorted.
double median_of(const std::vector<double>& values, size_t lo, size_t hi) {
  const size_t n = hi - lo + 1;
  const size_t mid = lo + n / 2;
  if (n % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace

SearchSpaceRecord search_space(const SearchSpaceInput& input) {
  if (input.outcomes < 1) throw std::invalid_argument("search_space: outcomes must be >= 1");
  if (input.causes < 1) throw std::invalid_argument("search_space: causes must be >= 1");
  if (input.covariates < 0) throw std::invalid_argument("search_space: covariates must be >= 0");
  if (input.covariates > 63)
    throw std::overflow_error("search_space: covariates " + std::to_string(input.covariates) +
                              " exceed the exact 64-bit range (max 63)");

  SearchSpaceRecord rec;
  rec.input = input;
  rec.tests = checked_mul(static_cast<std::uint64_t>(input.outcomes),
                          static_cast<std::uint64_t>(input.causes), "tests = outcomes x causes");
  rec.models = std::uint64_t{1} << input.covariates;
  rec.space = checked_mul(rec.tests, rec.models, "space = tests x models");
  return rec;
}

double expected_chance_findings(std::uint64_t space, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("expected_chance_findings: alpha must lie in (0,1)");
  return alpha * static_cast<double>(space);
}

FiveNumberSummary summarize(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("summarize: empty input");
  std::sort(values.begin(), values.end());
  const size_t n = values.size();

  FiveNumberSummary s;
  s.minimum = values.front();
  s.maximum = values.back();
  s.median = median_of(values, 0, n - 1);

  // Tukey hinges, inclusive rule: for odd n both halves contain the middle
  // element; for even n they are the plain halves.
  const size_t half = n / 2;
  const size_t lower_hi = (n % 2 == 1) ? half : half - 1;
  s.lower_quartile = median_of(values, 0, lower_hi);
  s.upper_quartile = median_of(values, (n % 2 == 1) ? half : half, n - 1);

  double sum = 0.0;
  for (const double v : values) sum += v;
  s.mean = sum / static_cast<double>(n);
  s.rounding_applied = false;
  return s;
}

FiveNumberSummary rounded(const FiveNumberSummary& summary) {
  FiveNumberSummary r = summary;
  r.minimum = round_half_up(summary.minimum);
  r.lower_quartile = round_half_up(summary.lower_quartile);
  r.median = round_half_up(summary.median);
  r.upper_quartile = round_half_up(summary.upper_quartile);
  r.maximum = round_half_up(summary.maximum);
  r.mean = round_half_up(summary.mean);
  r.rounding_applied = true;
  return r;
}

CitationSummary summarize_citations(const std::vector<CitationCount>& counts) {
  if (counts.empty()) throw std::invalid_argument("summarize_citations: empty input");
  std::vector<double> total;
  std::vector<double> ffq;
  total.reserve(counts.size());
  ffq.reserve(counts.size());
  for (const auto& c : counts) {
    total.push_back(static_cast<double>(c.papers_total));
    ffq.push_back(static_cast<double>(c.papers_cohort_ffq));
  }
  return CitationSummary{summarize(std::move(total)), summarize(std::move(ffq))};
}

}  // namespace pvaudit
