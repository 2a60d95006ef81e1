#include "pvaudit/stats.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

namespace pvaudit {

UniformityResult ks_uniformity(const Eigen::Ref<const Eigen::ArrayXd>& pvalues) {
  const Eigen::Index n = pvalues.size();
  if (n < 1) throw std::invalid_argument("ks_uniformity: empty input");

  std::vector<double> x(pvalues.data(), pvalues.data() + n);
  std::sort(x.begin(), x.end());

  // D = sup |F_n - F|; for Uniform(0,1) the supremum over each step is the
  // larger of the gaps to the step's lower and upper empirical levels.
  double d = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lo = x[i] - static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n - x[i];
    d = std::max(d, std::max(lo, hi));
  }

  UniformityResult result;
  result.d_statistic = d;
  result.n = static_cast<int>(n);
  result.rejected_at_05 = d > 1.36 / std::sqrt(static_cast<double>(n));
  return result;
}

namespace {

// Average-rank vector (1-based ranks, ties share the mean rank).
Eigen::ArrayXd average_ranks(const Eigen::Ref<const Eigen::ArrayXd>& v) {
  const Eigen::Index n = v.size();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index i, Eigen::Index j) { return v[i] < v[j]; });

  Eigen::ArrayXd ranks(n);
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
    for (Eigen::Index k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(const Eigen::Ref<const Eigen::ArrayXd>& a,
                const Eigen::Ref<const Eigen::ArrayXd>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("spearman: length mismatch");
  if (a.size() < 2) throw std::invalid_argument("spearman: need at least 2 points");
  const Eigen::ArrayXd ra = average_ranks(a);
  const Eigen::ArrayXd rb = average_ranks(b);
  const Eigen::ArrayXd da = ra - ra.mean();
  const Eigen::ArrayXd db = rb - rb.mean();
  const double denom = std::sqrt(da.square().sum() * db.square().sum());
  if (denom == 0.0) throw std::invalid_argument("spearman: zero rank variance");
  return (da * db).sum() / denom;
}

std::string format_thousands(long long value) {
  const bool negative = value < 0;
  std::string digits = std::to_string(negative ? -value : value);
  std::string out;
  out.reserve(digits.size() + digits.size() / 3 + 1);
  const int lead = static_cast<int>(digits.size()) % 3;
  for (int i = 0; i < static_cast<int>(digits.size()); ++i) {
    if (i != 0 && (i - lead) % 3 == 0) out.push_back(',');
    out.push_back(digits[static_cast<size_t>(i)]);
  }
  if (negative) out.insert(out.begin(), '-');
  return out;
}

std::string present_integer(double value) {
  return format_thousands(static_cast<long long>(round_half_up(value)));
}

std::string format_sig6(double x) {
  char buf[48];
  if (x != 0.0 && std::fabs(x) < 1e-4) {
    std::snprintf(buf, sizeof buf, "%.5e", x);
    return buf;
  }
  // Alternate form keeps trailing zeros, so every value carries exactly six
  // significant digits ("1.00000", "0.0411000").
  std::snprintf(buf, sizeof buf, "%#.6g", x);
  std::string s = buf;
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace pvaudit
