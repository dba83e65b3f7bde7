#pragma once

#include <cstdint>

#include "ctda/core.hpp"
#include "ctda/rng.hpp"

namespace ctda::test {

// Uniform points in [0,1]^d with a surjective uniform colouring.
inline ChromaticPointCloud random_cloud(SplitMix64& rng, std::size_t n, int d, int colours) {
  PointList pts(n, Point(d));
  for (auto& p : pts)
    for (int k = 0; k < d; ++k) p[k] = rng.uniform();
  Colouring c(n);
  for (std::size_t i = 0; i < n; ++i)
    c[i] = i < static_cast<std::size_t>(colours) ? static_cast<int>(i)
                                                 : static_cast<int>(rng.below(colours));
  return validate_chromatic_set(pts, c);
}

// Redraws until the cloud passes the general position check and no two
// points are closer than min_gap.
inline ChromaticPointCloud random_gp_cloud(SplitMix64& rng, std::size_t n, int d, int colours,
                                           double min_gap = 0.0) {
  for (;;) {
    auto c = random_cloud(rng, n, d, colours);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n && ok; ++j)
        if ((c.points[i] - c.points[j]).norm() < min_gap) ok = false;
    if (ok && check_general_position(c).ok) return c;
  }
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace ctda::test
