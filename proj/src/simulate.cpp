#include "pvaudit/simulate.hpp"

#include <stdexcept>

namespace pvaudit {

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  // SplitMix64 finalizer on seed + (trial+1) * golden-ratio increment.
  std::uint64_t z = seed + (trial + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::vector<double> draw_null_pvalues(int n, RandomStream& rng) {
  if (n < 0) throw std::invalid_argument("draw_null_pvalues: n must be >= 0");
  std::vector<double> out(static_cast<size_t>(n));
  for (auto& p : out) p = rng.uniform01();
  return out;
}

std::vector<double> draw_alt_pvalues(int n, double alt_mean_z, RandomStream& rng) {
  if (n < 0) throw std::invalid_argument("draw_alt_pvalues: n must be >= 0");
  std::vector<double> out(static_cast<size_t>(n));
  for (auto& p : out) p = p_two_sided_exact(rng.normal(alt_mean_z));
  return out;
}

int mtmm_false_positive_run(int outcomes, int causes, double alpha, RandomStream& rng) {
  if (outcomes < 1 || causes < 1)
    throw std::invalid_argument("mtmm_false_positive_run: outcomes and causes must be >= 1");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("mtmm_false_positive_run: alpha must lie in [0,1]");
  int significant = 0;
  const long tests = static_cast<long>(outcomes) * causes;
  for (long i = 0; i < tests; ++i)
    if (rng.uniform01() < alpha) ++significant;
  return significant;
}

SimulationReport calibrate_classifier(const SimulationConfig& config,
                                      const ClassifyThresholds& thresholds) {
  if (config.trials < 1)
    throw std::invalid_argument("calibrate_classifier: trials must be >= 1");
  if (config.n_null < 0 || config.n_alt < 0 || config.n_null + config.n_alt < 1)
    throw std::invalid_argument("calibrate_classifier: need n_null + n_alt >= 1");
  if (!(config.alt_mean_z >= 0.0))
    throw std::invalid_argument("calibrate_classifier: alt_mean_z must be >= 0");

  SimulationReport report;
  report.config = config;
  report.per_trial.reserve(static_cast<size_t>(config.trials));

  long long below_05 = 0;
  const long long total =
      static_cast<long long>(config.trials) * (config.n_null + config.n_alt);

  for (int t = 0; t < config.trials; ++t) {
    RandomStream rng(trial_seed(config.seed, static_cast<std::uint64_t>(t)));
    std::vector<PValueRecord> records;
    records.reserve(static_cast<size_t>(config.n_null + config.n_alt));
    int id = 0;
    for (const double p : draw_null_pvalues(config.n_null, rng)) {
      records.push_back(PValueRecord{"s" + std::to_string(++id), "simulated", 0.0, p,
                                     PMethod::ExactNormal});
    }
    for (const double p : draw_alt_pvalues(config.n_alt, config.alt_mean_z, rng)) {
      records.push_back(PValueRecord{"s" + std::to_string(++id), "simulated", 0.0, p,
                                     PMethod::ExactNormal});
    }
    for (const auto& rec : records)
      if (rec.p < 0.05) ++below_05;

    const PValueSeries series = build_series(records, "simulated");
    const Verdict verdict = classify(series, thresholds).verdict;
    report.per_trial.push_back(verdict);
    ++report.verdict_frequencies[verdict_name(verdict)];
  }

  report.fraction_below_05 = static_cast<double>(below_05) / static_cast<double>(total);
  return report;
}

}  // namespace pvaudit
