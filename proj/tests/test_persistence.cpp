#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ctda/errors.hpp"
#include "ctda/persistence.hpp"
#include "oracles/oracles.hpp"
#include "support.hpp"

using namespace ctda;

namespace {

Point p2(double a, double b) { return (Point(2) << a, b).finished(); }

PersistenceDiagram diag(std::vector<PersistencePair> p) {
  PersistenceDiagram d{std::move(p)};
  d.sort();
  return d;
}

// Bars of the given degree alive at r (birth <= r < death).
int alive(const PersistenceDiagram& d, int degree, double r) {
  int n = 0;
  for (const auto& p : d.pairs)
    if (p.degree == degree && p.birth <= r && r < p.death) ++n;
  return n;
}

}  // namespace

TEST_CASE("square Cech bar") {
  auto sq = validate_chromatic_set(PointList{p2(0, 0), p2(1, 0), p2(1, 1), p2(0, 1)}, {0, 0, 0, 0});
  auto d = compute_persistence(cech_filtration(sq));
  auto h1 = d.degree(1);
  REQUIRE(h1.size() == 1);
  CHECK(h1.pairs[0].birth == doctest::Approx(0.5));
  CHECK(h1.pairs[0].death == doctest::Approx(std::sqrt(0.5)));
  auto h0 = d.degree(0);
  CHECK(h0.size() == 4);
  CHECK(h0.pairs.back().essential());
}

TEST_CASE("non-monotone input is rejected") {
  FilteredComplex f;
  f.complex = SimplicialComplex::from_maximal({Simplex{0, 1}});
  f.values = {0.0, 2.0, 1.0};
  try {
    compute_persistence(f);
    FAIL("expected NonMonotoneFiltration");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonMonotoneFiltration);
  }
}

TEST_CASE("bottleneck distance") {
  auto a = diag({{0, 0.0, 1.0}});
  CHECK(bottleneck_distance(a, a) == 0.0);
  CHECK(bottleneck_distance(a, diag({{0, 0.0, 1.2}})) == doctest::Approx(0.2));
  CHECK(bottleneck_distance(a, diag({})) == doctest::Approx(0.5));
  CHECK(bottleneck_distance(diag({{0, 0.0, kInfinity}}), diag({})) == kInfinity);
  CHECK(bottleneck_distance(diag({{0, 0.0, kInfinity}}), diag({{0, 0.25, kInfinity}})) ==
        doctest::Approx(0.25));
  CHECK(bottleneck_distance(diag({{1, 0.0, 1.0}}), diag({{0, 0.0, 1.0}})) == doctest::Approx(0.5));
  auto two = diag({{0, 0.0, 1.0}, {0, 0.0, 3.0}});
  CHECK(bottleneck_distance(two, diag({{0, 0.1, 3.0}, {0, 0.0, 1.05}})) == doctest::Approx(0.1));
  CHECK(diagrams_equal(two, diag({{0, 0.0, 3.0}, {0, 1e-10, 1.0}})));

  SplitMix64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<PersistencePair> p, q;
    for (int i = 0; i < 6; ++i) {
      double b = rng.uniform();
      p.push_back({0, b, b + rng.uniform()});
      b = rng.uniform();
      q.push_back({0, b, b + rng.uniform()});
    }
    const double dpq = bottleneck_distance(diag(p), diag(q));
    CHECK(dpq == bottleneck_distance(diag(q), diag(p)));
    // Identity matching and the all-diagonal matching bound the distance.
    double id = 0.0, diagonal = 0.0;
    auto dp = diag(p), dq = diag(q);
    for (std::size_t i = 0; i < p.size(); ++i) {
      id = std::max({id, std::abs(dp.pairs[i].birth - dq.pairs[i].birth),
                     std::abs(dp.pairs[i].death - dq.pairs[i].death)});
      diagonal = std::max({diagonal, (p[i].death - p[i].birth) / 2, (q[i].death - q[i].birth) / 2});
    }
    CHECK(dpq <= id + 1e-15);
    CHECK(dpq <= diagonal + 1e-15);
  }
}

TEST_CASE("persistence agrees with Betti numbers of sublevel sets") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    auto c = test::random_gp_cloud(rng, 8, 2, 1 + trial % 2);
    for (const auto& f : {chromatic_alpha_filtration(c), del_rips_filtration(c), cech_filtration(c)}) {
      const int top = f.complex.dimension();
      auto d = compute_persistence(f);
      std::vector<double> probes = f.values;
      std::sort(probes.begin(), probes.end());
      probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
      for (double r : probes) {
        auto sub = f.sublevel(r);
        std::vector<Simplex> list(sub.begin(), sub.end());
        auto betti = oracle::betti_numbers(list, top - 1);
        for (int k = 0; k < top; ++k) CHECK(alive(d, k, r) == betti[k]);
      }
    }
  }
}

TEST_CASE("diagram csv round trip") {
  auto d = diag({{0, 0.0, kInfinity}, {0, 0.0, 0.1}, {1, 0.30000000000000004, 1.0 / 3.0}});
  std::stringstream ss;
  write_diagram_csv(ss, d);
  CHECK(ss.str().rfind("degree,birth,death\n0,", 0) == 0);
  auto back = read_diagram_csv(ss);
  CHECK(back.pairs == d.pairs);
  std::stringstream bad("degree,birth\n");
  CHECK_THROWS_AS(read_diagram_csv(bad), Error);
}
