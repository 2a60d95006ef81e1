#include "pvaudit/pplot.hpp"

#include "pvaudit/csv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pvaudit {

Eigen::ArrayXd PValueSeries::pvalues() const {
  Eigen::ArrayXd p(entries.size());
  for (size_t i = 0; i < entries.size(); ++i) p[static_cast<Eigen::Index>(i)] = entries[i].p;
  return p;
}

Eigen::ArrayXd PValueSeries::normalized_ranks() const {
  const auto n = static_cast<Eigen::Index>(entries.size());
  return Eigen::ArrayXd::LinSpaced(n, 1.0, static_cast<double>(n)) / (static_cast<double>(n) + 1.0);
}

PValueSeries build_series(const std::vector<PValueRecord>& records,
                          const std::string& outcome_label) {
  if (records.empty()) throw DataError("build_series: empty input for '" + outcome_label + "'");
  PValueSeries series;
  series.outcome_label = outcome_label;
  series.entries.reserve(records.size());
  for (const auto& rec : records) {
    if (!(rec.p >= 0.0 && rec.p <= 1.0))
      throw DataError(rec.study_id + ": p-value outside [0,1]");
    series.entries.push_back(SeriesEntry{0, rec.p, rec.study_id});
  }
  std::sort(series.entries.begin(), series.entries.end(),
            [](const SeriesEntry& a, const SeriesEntry& b) {
              if (a.p != b.p) return a.p < b.p;
              return a.study_id < b.study_id;
            });
  for (size_t i = 0; i < series.entries.size(); ++i)
    series.entries[i].rank = static_cast<int>(i) + 1;
  return series;
}

LineFit fit_single_line(const PValueSeries& series) {
  if (series.size() < 2)
    throw std::invalid_argument("fit_single_line: need at least 2 points");
  return fit_line(series.normalized_ranks(), series.pvalues());
}

namespace {

struct SplitResult {
  int k = 0;
  LineFit first;
  LineFit second;
  double sse = std::numeric_limits<double>::infinity();
};

// Best two-segment OLS split with the first segment 1..k, k in [k_lo, k_hi].
// Iterating ascending with a strict comparison makes the smallest k win ties.
SplitResult best_split(const Eigen::ArrayXd& u, const Eigen::ArrayXd& p, int k_lo, int k_hi) {
  SplitResult best;
  const auto n = static_cast<int>(u.size());
  for (int k = k_lo; k <= k_hi; ++k) {
    const LineFit head = fit_line(u.head(k), p.head(k));
    const LineFit tail = fit_line(u.tail(n - k), p.tail(n - k));
    const double sse = head.sse + tail.sse;
    if (sse < best.sse) best = SplitResult{k, head, tail, sse};
  }
  return best;
}

}  // namespace

BilinearFit fit_bilinear(const PValueSeries& series) {
  const int n = series.size();
  if (n < 5) throw std::invalid_argument("fit_bilinear: series too short for bilinear fit");
  const Eigen::ArrayXd u = series.normalized_ranks();
  const Eigen::ArrayXd p = series.pvalues();
  const SplitResult best = best_split(u, p, 2, n - 2);
  return BilinearFit{best.k, best.first, best.second, best.sse};
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Random45: return "random";
    case Verdict::RealEffect: return "real-effect";
    case Verdict::Bilinear: return "bilinear";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

PlotClassification classify(const PValueSeries& series, const ClassifyThresholds& thr) {
  const int n = series.size();
  if (n < 1) throw std::invalid_argument("classify: empty series");

  const Eigen::ArrayXd p = series.pvalues();
  const Eigen::ArrayXd u = series.normalized_ranks();

  PlotClassification out;
  out.n_below_05 = static_cast<int>((p < thr.alpha).count());
  out.n_below_001 = static_cast<int>((p < thr.tiny_p).count());
  out.ks = ks_uniformity(p);

  if (n < 2) {
    // A single point fixes no line; report degenerate diagnostics.
    out.slope = 0.0;
    out.intercept = p[0];
    out.sse_single = 0.0;
    out.sse_bilinear = 0.0;
    out.verdict = Verdict::Indeterminate;
    return out;
  }

  const LineFit single = fit_single_line(series);
  out.slope = single.slope;
  out.intercept = single.intercept;
  out.sse_single = single.sse;

  if (n >= 5) {
    const BilinearFit two = fit_bilinear(series);
    out.sse_bilinear = two.sse;
    out.breakpoint = two.breakpoint;
  } else {
    out.sse_bilinear = single.sse;
  }

  const double small_fraction = static_cast<double>(out.n_below_05) / n;

  // Rule 1: most p-values small, under a line flatter than 45 degrees.
  if (small_fraction > thr.majority && single.slope < 1.0) {
    out.verdict = Verdict::RealEffect;
    return out;
  }

  // Rule 2: indistinguishable from uniform, near the 45-degree reference,
  // and free of ultra-small p-values.
  if (!out.ks.rejected_at_05 && std::fabs(single.slope - 1.0) <= thr.slope_band &&
      std::fabs(single.intercept) <= thr.intercept_band && out.n_below_001 == 0) {
    out.verdict = Verdict::Random45;
    return out;
  }

  // Rule 3: a two-component split, first segment entirely significant,
  // second segment reaching above alpha, fitting materially better than one
  // line. The search is limited to k <= n_below_05 so the first-segment
  // condition holds by construction.
  if (n >= 5) {
    const int k_hi = std::min(out.n_below_05, n - 2);
    if (k_hi >= 2) {
      const SplitResult split = best_split(u, p, 2, k_hi);
      const bool tail_reaches_past_alpha = p[n - 1] > thr.alpha;
      double ratio;
      if (split.sse > 0.0) ratio = single.sse / split.sse;
      else ratio = single.sse > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
      if (tail_reaches_past_alpha && ratio >= thr.sse_ratio) {
        out.verdict = Verdict::Bilinear;
        return out;
      }
    }
  }

  out.verdict = Verdict::Indeterminate;
  return out;
}

}  // namespace pvaudit
