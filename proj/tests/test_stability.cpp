#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "ctda/errors.hpp"
#include "ctda/stability.hpp"
#include "support.hpp"

using namespace ctda;

namespace {

Point p2(double a, double b) { return (Point(2) << a, b).finished(); }

}  // namespace

TEST_CASE("distortion") {
  const PointList x{p2(0, 0), p2(1, 0), p2(0, 1)};
  CHECK(distortion(x, x, {0, 1, 2}) == 0.0);
  const PointList y{p2(0, 0), p2(2, 0), p2(0, 1)};
  CHECK(distortion(x, y, {0, 1, 2}) == doctest::Approx(1.0));
  PointList moved = x;
  for (auto& p : moved) p += p2(3, -1);
  CHECK(distortion(x, moved, {0, 1, 2}) == doctest::Approx(0).epsilon(1e-12));
}

TEST_CASE("chromatic matching") {
  auto x = validate_chromatic_set(PointList{p2(0, 0), p2(1, 0), p2(5, 5)}, {0, 0, 1});
  auto y = validate_chromatic_set(PointList{p2(1.1, 0), p2(0.1, 0), p2(5, 5.3)}, {0, 0, 1});
  auto m = chromatic_matching(x, y);
  CHECK(m.sup_displacement == doctest::Approx(0.3));
  CHECK(chromatic_distance(x, y) == doctest::Approx(0.3));
  CHECK(chromatic_distance(x, x) == 0.0);
  auto z = validate_chromatic_set(PointList{p2(0, 0), p2(1, 0), p2(5, 5)}, {0, 1, 1});
  CHECK(chromatic_distance(x, z) == std::numeric_limits<double>::infinity());
  // Colour-blind matching would pair (5,5) with itself and cost 0.
  auto w = validate_chromatic_set(PointList{p2(0, 0), p2(5, 5), p2(1, 0)}, {0, 0, 1});
  CHECK(chromatic_distance(x, w) == doctest::Approx(std::hypot(4.0, 5.0)));
}

TEST_CASE("perturbation moves points by at most eta") {
  SplitMix64 rng(41);
  auto c = test::random_cloud(rng, 20, 3, 2);
  auto p = perturb(c, 1e-3, 7);
  CHECK(p.colours == c.colours);
  double worst = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) worst = std::max(worst, (p.points[i] - c.points[i]).norm());
  CHECK(worst <= 1e-3);
  CHECK(worst > 0.0);
  auto q = perturb(c, 1e-3, 7);
  CHECK(q.points == p.points);
  CHECK(chromatic_distance(c, p) <= 1e-3);
}

TEST_CASE("small perturbations keep the chromatic Delaunay complex") {
  SplitMix64 rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    auto c = test::random_gp_cloud(rng, 10, 2, 2, 0.05);
    auto rep = perturbation_experiment(c, 1e-6, 100 + trial);
    CHECK(rep.complex_isomorphic);
    CHECK(rep.gap_within_half_distortion);
    CHECK(rep.gap_within_eta);
    CHECK(rep.bottleneck_within_eta);
    CHECK(rep.distortion <= 2e-6);
    CHECK(nlohmann::json::parse(rep.to_json())["complex_isomorphic"] == true);
  }
}
