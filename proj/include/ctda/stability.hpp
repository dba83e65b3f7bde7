#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ctda/core.hpp"

namespace ctda {

// sup over pairs |d(x, x') - d(f(x), f(x'))|, where x_i maps to y[f[i]].
double distortion(const PointList& x, const PointList& y, const std::vector<int>& f);

struct MatchingResult {
  std::vector<std::pair<int, int>> pairs;  // (index in X, index in Y)
  double sup_displacement = 0.0;
  double distortion = 0.0;
};

inline constexpr std::size_t kMatchingClassLimit = 64;

// Colour-preserving bijection minimising the largest displacement; empty
// pairs and infinite displacement when class sizes differ. Throws
// SizeLimitExceeded above kMatchingClassLimit points in a class.
MatchingResult chromatic_matching(const ChromaticPointCloud& x, const ChromaticPointCloud& y);
double chromatic_distance(const ChromaticPointCloud& x, const ChromaticPointCloud& y);

// Each point moved by a vector drawn uniformly from the ball of radius eta.
ChromaticPointCloud perturb(const ChromaticPointCloud& cloud, double eta, std::uint64_t seed);

struct PerturbationReport {
  double eta = 0.0;
  std::uint64_t seed = 0;
  bool complex_isomorphic = false;
  double distortion = 0.0;     // of the identity matching
  double sup_value_gap = 0.0;  // largest Rips value change (when isomorphic)
  double bottleneck = 0.0;     // between the DelRips diagrams
  bool gap_within_half_distortion = false;
  bool gap_within_eta = false;
  bool bottleneck_within_eta = false;

  std::string to_json() const;
};

PerturbationReport perturbation_experiment(const ChromaticPointCloud& cloud, double eta,
                                           std::uint64_t seed, int threads = 1);

}  // namespace ctda
