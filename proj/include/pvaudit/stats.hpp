// Numerical core: normal CDF/quantile, confidence-interval back-calculation
// of z-scores and two-sided p-values, a one-sample KS uniformity test, least
// squares line fits, rank correlation, and the numeric output formats shared
// by the reporting layer.
//
// All effect arithmetic is on the natural-log scale, where a ratio estimate's
// confidence interval is symmetric about the point estimate.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pvaudit {

inline constexpr double kInvSqrt2 = 0.70710678118654752440;
inline constexpr double kSqrt2Pi = 2.50662827463100050242;

// ---------------------------------------------------------------------------
// normal distribution kernels
// ---------------------------------------------------------------------------

// Phi(x) through the complementary error function; erfc keeps full relative
// accuracy in the lower tail, which the extreme p-values here (1e-8 and
// below) depend on. Absolute error stays comfortably under 1e-12 on [-8, 8].
template <class Scalar = double>
Scalar normal_cdf(Scalar x) {
  return Scalar(0.5) * std::erfc(-x * Scalar(kInvSqrt2));
}

// Inverse of normal_cdf: rational initial guess (the widely used Acklam
// approximation, |rel err| < 1.2e-9) followed by one Halley refinement
// against normal_cdf, which lands near machine precision and keeps the
// round-trip error below 1e-10 across q in [1e-6, 1 - 1e-6].
template <class Scalar = double>
Scalar normal_quantile(Scalar q) {
  if (!(q > Scalar(0) && q < Scalar(1)))
    throw std::invalid_argument("normal_quantile: q must lie in (0,1)");

  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};

  const double p = static_cast<double>(q);
  const double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double u = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double u = p - 0.5;
    const double r = u * u;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * u /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double u = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  }

  // Halley step: e is the CDF residual, u its normalized form.
  const double e = normal_cdf<double>(x) - p;
  const double un = e * kSqrt2Pi * std::exp(0.5 * x * x);
  x = x - un / (1.0 + 0.5 * x * un);
  return static_cast<Scalar>(x);
}

// ---------------------------------------------------------------------------
// CI -> z -> p back-calculation
// ---------------------------------------------------------------------------

// Log-scale standard error recovered from a ratio estimate's confidence
// interval: (ln upper - ln lower) / (2 * z_level).
inline double log_se(double ci_lower, double ci_upper, double confidence_level) {
  if (!(ci_lower > 0.0) || !(ci_upper > 0.0))
    throw std::invalid_argument("log_se: confidence limits must be positive");
  if (!(confidence_level > 0.0 && confidence_level < 1.0))
    throw std::invalid_argument("log_se: confidence level must lie in (0,1)");
  if (ci_lower > ci_upper)
    throw std::invalid_argument("log_se: inverted confidence limits");
  if (ci_lower == ci_upper)
    throw std::invalid_argument("log_se: degenerate interval, standard error undefined");
  const double z_level = normal_quantile(1.0 - (1.0 - confidence_level) / 2.0);
  return (std::log(ci_upper) - std::log(ci_lower)) / (2.0 * z_level);
}

inline double z_score(double point_estimate, double se) {
  if (!(point_estimate > 0.0)) throw std::invalid_argument("z_score: estimate must be positive");
  if (!(se > 0.0)) throw std::invalid_argument("z_score: standard error must be positive");
  return std::log(point_estimate) / se;
}

// Two-sided p from the exact normal tail: 2*(1 - Phi(|z|)) = erfc(|z|/sqrt(2)).
inline double p_two_sided_exact(double z) {
  return std::erfc(std::fabs(z) * kInvSqrt2);
}

// The Altman-Bland shortcut, p = exp(-0.717*|z| - 0.416*z^2). Kept as a
// compatibility mode: published tables converted with it are best reproduced
// by it. The exponent is nonpositive, the clamp only guards rounding.
inline double p_two_sided_altman_bland(double z) {
  const double az = std::fabs(z);
  const double p = std::exp(-0.717 * az - 0.416 * z * z);
  return p < 1.0 ? p : 1.0;
}

enum class PMethod { ExactNormal, AltmanBland };

inline const char* method_name(PMethod m) {
  return m == PMethod::ExactNormal ? "exact" : "altman-bland";
}

inline double p_two_sided(double z, PMethod m) {
  return m == PMethod::ExactNormal ? p_two_sided_exact(z) : p_two_sided_altman_bland(z);
}

struct PValueRecord {
  std::string study_id;
  std::string outcome_label;
  double z = 0.0;
  double p = 1.0;
  PMethod method = PMethod::ExactNormal;
};

// ---------------------------------------------------------------------------
// uniformity test
// ---------------------------------------------------------------------------

struct UniformityResult {
  double d_statistic = 0.0;
  int n = 0;
  bool rejected_at_05 = false;
};

// One-sample Kolmogorov-Smirnov test of the values against Uniform(0,1),
// rejected at 5% when D exceeds the asymptotic critical value 1.36/sqrt(n).
UniformityResult ks_uniformity(const Eigen::Ref<const Eigen::ArrayXd>& pvalues);

// ---------------------------------------------------------------------------
// least squares
// ---------------------------------------------------------------------------

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double sse = 0.0;
};

// Ordinary least squares of y on x (with intercept), any Eigen expressions of
// matching length. Requires at least 2 points.
template <class DX, class DY>
LineFit fit_line(const Eigen::DenseBase<DX>& x_expr, const Eigen::DenseBase<DY>& y_expr) {
  const Eigen::VectorXd x = x_expr.derived().template cast<double>();
  const Eigen::VectorXd y = y_expr.derived().template cast<double>();
  const Eigen::Index n = x.size();
  if (n != y.size()) throw std::invalid_argument("fit_line: length mismatch");
  if (n < 2) throw std::invalid_argument("fit_line: need at least 2 points");

  Eigen::MatrixX2d design(n, 2);
  design.col(0) = x;
  design.col(1).setOnes();
  const Eigen::Vector2d beta = design.colPivHouseholderQr().solve(y);
  LineFit fit;
  fit.slope = beta[0];
  fit.intercept = beta[1];
  fit.sse = (y - design * beta).squaredNorm();
  return fit;
}

// Spearman rank correlation with average ranks on ties.
double spearman(const Eigen::Ref<const Eigen::ArrayXd>& a,
                const Eigen::Ref<const Eigen::ArrayXd>& b);

// ---------------------------------------------------------------------------
// presentation helpers
// ---------------------------------------------------------------------------

// Half-up rounding used for presented integers (17.5 rounds to 18).
inline double round_half_up(double x) { return std::floor(x + 0.5); }

// 12,345,678-style grouping for presented integers.
std::string format_thousands(long long value);

// Half-up round then thousands grouping: 1036.8 presents as "1,037".
std::string present_integer(double value);

// Six significant digits; scientific notation below 1e-4.
std::string format_sig6(double x);

}  // namespace pvaudit
