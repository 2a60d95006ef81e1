#include "doctest.h"

#include "pvaudit/estimates.hpp"
#include "pvaudit/pplot.hpp"
#include "pvaudit/report.hpp"
#include "pvaudit/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

using namespace pvaudit;

namespace {

std::vector<PValueRecord> records_from(const std::vector<double>& ps) {
  std::vector<PValueRecord> out;
  char id[8];
  for (size_t i = 0; i < ps.size(); ++i) {
    std::snprintf(id, sizeof id, "s%02zu", i + 1);
    PValueRecord rec;
    rec.study_id = id;
    rec.p = ps[i];
    out.push_back(rec);
  }
  return out;
}

PValueSeries series_from(const std::vector<double>& ps, const std::string& label = "test") {
  return build_series(records_from(ps), label);
}

std::vector<double> uniform_quantiles(int n) {
  std::vector<double> ps(n);
  for (int i = 1; i <= n; ++i) ps[i - 1] = static_cast<double>(i) / (n + 1);
  return ps;
}

// Independent least squares reference: closed-form normal equations in long
// double, no Eigen involved.
struct RefFit {
  long double slope, intercept, sse;
};

RefFit ref_ols(const std::vector<double>& x, const std::vector<double>& y, size_t lo, size_t hi) {
  const auto n = static_cast<long double>(hi - lo);
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = lo; i < hi; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  RefFit f{};
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  f.sse = 0;
  for (size_t i = lo; i < hi; ++i) {
    const long double r = y[i] - f.intercept - f.slope * x[i];
    f.sse += r * r;
  }
  return f;
}

// Brute-force two-segment minimum over all k, smallest k on ties.
std::pair<int, long double> ref_best_split(const std::vector<double>& u,
                                           const std::vector<double>& p) {
  const size_t n = u.size();
  int best_k = 0;
  long double best_sse = std::numeric_limits<long double>::infinity();
  for (size_t k = 2; k + 2 <= n; ++k) {
    const long double sse = ref_ols(u, p, 0, k).sse + ref_ols(u, p, k, n).sse;
    if (sse < best_sse) {
      best_sse = sse;
      best_k = static_cast<int>(k);
    }
  }
  return {best_k, best_sse};
}

std::string data_path(const char* name) {
  return std::string(PVAUDIT_SOURCE_DIR) + "/data/" + name;
}

PValueSeries allcause_series() {
  const auto estimates = parse_estimates(read_text_file(data_path("allcause_estimates.csv")));
  const auto records = convert_batch(estimates, PMethod::ExactNormal);
  return build_series(records, "all-cause mortality");
}

}  // namespace

TEST_CASE("build_series sorts, ranks, and breaks ties deterministically") {
  std::vector<PValueRecord> recs(3);
  recs[0] = {"b", "o", 0.0, 0.3, PMethod::ExactNormal};
  recs[1] = {"a", "o", 0.0, 0.3, PMethod::ExactNormal};
  recs[2] = {"c", "o", 0.0, 0.1, PMethod::ExactNormal};
  const PValueSeries s = build_series(recs, "o");
  REQUIRE(s.size() == 3);
  CHECK(s.entries[0].study_id == "c");
  CHECK(s.entries[1].study_id == "a");  // tie with "b" broken lexicographically
  CHECK(s.entries[2].study_id == "b");
  CHECK(s.entries[0].rank == 1);
  CHECK(s.entries[2].rank == 3);

  const PValueSeries single = series_from({0.3});
  CHECK(single.size() == 1);
  CHECK(single.entries[0].rank == 1);
}

TEST_CASE("build_series rejects empty input and out-of-range p") {
  CHECK_THROWS_AS(static_cast<void>(build_series({}, "o")), DataError);
  CHECK_THROWS_AS(static_cast<void>(series_from({0.5, 1.5})), DataError);
  CHECK_THROWS_AS(static_cast<void>(series_from({-0.1})), DataError);
  CHECK_THROWS_AS(static_cast<void>(series_from({std::numeric_limits<double>::quiet_NaN()})),
                  DataError);
}

TEST_CASE("the audited all-cause series is anchored by its extremes") {
  const PValueSeries s = allcause_series();
  REQUIRE(s.size() == 24);
  CHECK(s.entries.front().study_id == "smhs");
  CHECK(s.entries.back().study_id == "oxford-veg");
  CHECK(s.entries.back().p == 1.0);
  CHECK(s.entries.front().p < 1e-7);
}

TEST_CASE("fit_single_line on exact quantiles and a constant series") {
  const PValueSeries exact = series_from(uniform_quantiles(20));
  const LineFit fit = fit_single_line(exact);
  CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(fit.intercept) < 1e-12);
  CHECK(fit.sse < 1e-24);

  const PValueSeries flat = series_from(std::vector<double>(6, 0.5));
  const LineFit flat_fit = fit_single_line(flat);
  CHECK(std::fabs(flat_fit.slope) < 1e-12);
  CHECK(flat_fit.intercept == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(static_cast<void>(fit_single_line(series_from({0.4}))), std::invalid_argument);
}

TEST_CASE("fit_bilinear finds a constructed mixture's break exactly") {
  std::vector<double> ps;
  for (int i = 1; i <= 10; ++i) ps.push_back(1e-8 * i);
  for (int i = 1; i <= 10; ++i) ps.push_back(i / 11.0);
  const PValueSeries s = series_from(ps);
  const BilinearFit two = fit_bilinear(s);
  CHECK(two.breakpoint == 10);
  CHECK(two.sse < fit_single_line(s).sse);

  // brute-force agreement on breakpoint and sse
  std::vector<double> u(s.entries.size()), p(s.entries.size());
  for (size_t i = 0; i < s.entries.size(); ++i) {
    u[i] = (i + 1.0) / (s.entries.size() + 1.0);
    p[i] = s.entries[i].p;
  }
  const auto [ref_k, ref_sse] = ref_best_split(u, p);
  CHECK(two.breakpoint == ref_k);
  CHECK(two.sse == doctest::Approx(static_cast<double>(ref_sse)).epsilon(1e-9));
}

TEST_CASE("fit_bilinear matches a brute-force reference on random series") {
  std::mt19937_64 engine(99);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int n : {5, 6, 7, 11, 18, 25, 30}) {
    std::vector<double> ps(n);
    for (auto& v : ps) v = unif(engine);
    const PValueSeries s = series_from(ps);
    const BilinearFit two = fit_bilinear(s);
    std::vector<double> u(ps.size()), p(ps.size());
    for (size_t i = 0; i < ps.size(); ++i) {
      u[i] = (i + 1.0) / (ps.size() + 1.0);
      p[i] = s.entries[i].p;
    }
    const auto [ref_k, ref_sse] = ref_best_split(u, p);
    CHECK(two.breakpoint == ref_k);
    CHECK(two.sse == doctest::Approx(static_cast<double>(ref_sse)).epsilon(1e-9));
  }
}

TEST_CASE("fit_bilinear on exact quantiles shows no bilinear signal") {
  const PValueSeries s = series_from(uniform_quantiles(20));
  const BilinearFit two = fit_bilinear(s);
  CHECK(two.sse < 1e-24);
  CHECK(fit_single_line(s).sse < 1e-24);
}

TEST_CASE("fit_bilinear requires at least five points") {
  CHECK_THROWS_WITH_AS(static_cast<void>(fit_bilinear(series_from({0.1, 0.2, 0.3, 0.4}))),
                       "fit_bilinear: series too short for bilinear fit", std::invalid_argument);
}

TEST_CASE("classify calls the audited all-cause series bilinear") {
  const PlotClassification c = classify(allcause_series());
  CHECK(c.verdict == Verdict::Bilinear);
  CHECK(std::string(verdict_name(c.verdict)) == "bilinear");
  // diagnostics pinned against an independently computed reference
  CHECK(c.sse_single == doctest::Approx(0.622645).epsilon(1e-4));
  CHECK(c.sse_bilinear == doctest::Approx(0.0337057).epsilon(1e-4));
  REQUIRE(c.breakpoint.has_value());
  CHECK(*c.breakpoint == 16);
  CHECK(c.sse_single / c.sse_bilinear > 10.0);
  CHECK(c.n_below_05 == 16);
  CHECK(c.n_below_001 == 7);
  CHECK(c.ks.rejected_at_05);
  CHECK(c.slope == doctest::Approx(0.845).epsilon(2e-3));
  CHECK(c.intercept == doctest::Approx(-0.2368).epsilon(2e-3));
}

TEST_CASE("classify reads exact uniform quantiles as random") {
  for (int n : {5, 10, 19, 25}) {
    const PlotClassification c = classify(series_from(uniform_quantiles(n)));
    CHECK(c.verdict == Verdict::Random45);
    CHECK(c.sse_single < 1e-20);
  }
}

TEST_CASE("classify reads an all-tiny series as a real effect") {
  std::vector<double> ps;
  for (int i = 1; i <= 25; ++i) ps.push_back(static_cast<double>(i) * 1e-5);  // all < 0.001
  const PlotClassification c = classify(series_from(ps));
  CHECK(c.verdict == Verdict::RealEffect);
  CHECK(c.n_below_001 == 25);
  CHECK(c.slope < 1.0);
}

TEST_CASE("classify is invariant under input permutation") {
  const auto estimates = parse_estimates(read_text_file(data_path("allcause_estimates.csv")));
  auto records = convert_batch(estimates, PMethod::ExactNormal);
  const PlotClassification before = classify(build_series(records, "o"));
  std::mt19937_64 shuffler(3);
  for (int round = 0; round < 5; ++round) {
    std::shuffle(records.begin(), records.end(), shuffler);
    const PlotClassification after = classify(build_series(records, "o"));
    CHECK(after.verdict == before.verdict);
    CHECK(after.sse_single == before.sse_single);
    CHECK(after.sse_bilinear == before.sse_bilinear);
    CHECK(after.n_below_05 == before.n_below_05);
  }
}

TEST_CASE("appending a duplicate never flips uniform quantiles to a real effect") {
  for (int n : {8, 12, 20}) {
    std::vector<double> ps = uniform_quantiles(n);
    ps.push_back(ps[static_cast<size_t>(n) / 2]);
    const PlotClassification c = classify(series_from(ps));
    CHECK(c.verdict != Verdict::RealEffect);
  }
}

TEST_CASE("two-segment sse never exceeds single-line sse") {
  std::mt19937_64 engine(17);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 5 + static_cast<int>(engine() % 36);
    std::vector<double> ps(n);
    for (auto& v : ps) v = unif(engine);
    const PlotClassification c = classify(series_from(ps));
    CHECK(c.sse_bilinear <= c.sse_single + 1e-15);
    CHECK(c.n_below_001 <= c.n_below_05);
    CHECK(c.n_below_05 <= n);
  }
}

TEST_CASE("single-point and short series are indeterminate, with diagnostics intact") {
  const PlotClassification one = classify(series_from({0.3}));
  CHECK(one.verdict == Verdict::Indeterminate);
  CHECK(one.ks.n == 1);
  CHECK_FALSE(one.breakpoint.has_value());
  CHECK(one.sse_single == 0.0);
  CHECK(one.sse_bilinear == 0.0);

  // N = 3: no bilinear fit exists, sse_bilinear mirrors sse_single
  const PlotClassification three = classify(series_from({0.2, 0.5, 0.9}));
  CHECK_FALSE(three.breakpoint.has_value());
  CHECK(three.sse_bilinear == three.sse_single);
}

TEST_CASE("verdict vocabulary is exactly the four documented strings") {
  CHECK(std::string(verdict_name(Verdict::Random45)) == "random");
  CHECK(std::string(verdict_name(Verdict::RealEffect)) == "real-effect");
  CHECK(std::string(verdict_name(Verdict::Bilinear)) == "bilinear");
  CHECK(std::string(verdict_name(Verdict::Indeterminate)) == "indeterminate");
}
