// Seeded Monte Carlo: null and shifted-alternative p-value draws, the
// multiple-testing false-positive count experiment, and the calibration
// harness that tallies classifier verdicts over many simulated series.
//
// Reproducibility contract: the generator is a named, widely documented
// algorithm (mt19937_64), uniforms take the top 53 bits so they lie strictly
// inside (0,1), and normal deviates go through the library's own inverse CDF
// rather than std::normal_distribution, whose output is not pinned down by
// the standard. Identical (config, seed, thresholds) therefore give
// bit-identical results across platforms for the same build.
#pragma once

#include "pvaudit/pplot.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace pvaudit {

inline constexpr const char* kRngAlgorithm = "mt19937_64 (53-bit uniforms, inverse-CDF normals)";

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0,1): (top53 + 0.5) * 2^-53.
  double uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal(double mean) { return mean + normal_quantile(uniform01()); }

 private:
  std::mt19937_64 engine_;
};

// Per-trial generator seed: a SplitMix64-style finalizer over the base seed
// and trial index, so trials are independent of execution order.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

// n i.i.d. Uniform(0,1) p-values.
std::vector<double> draw_null_pvalues(int n, RandomStream& rng);

// n two-sided p-values for z ~ Normal(alt_mean_z, 1).
std::vector<double> draw_alt_pvalues(int n, double alt_mean_z, RandomStream& rng);

// One run of an outcomes x causes search under the global null: the count of
// tests with p < alpha.
int mtmm_false_positive_run(int outcomes, int causes, double alpha, RandomStream& rng);

struct SimulationConfig {
  int n_null = 0;
  int n_alt = 0;
  double alt_mean_z = 0.0;
  int trials = 1;
  std::uint64_t seed = 42;
};

struct SimulationReport {
  SimulationConfig config;
  std::vector<Verdict> per_trial;
  std::map<std::string, int> verdict_frequencies;  // keyed by verdict name
  double fraction_below_05 = 0.0;
};

// Classifies one simulated series per trial (n_null uniform draws, then
// n_alt shifted draws) and tallies verdicts. Used once to select the shipped
// ClassifyThresholds defaults and re-run in acceptance to re-verify them.
SimulationReport calibrate_classifier(const SimulationConfig& config,
                                      const ClassifyThresholds& thresholds = {});

}  // namespace pvaudit
