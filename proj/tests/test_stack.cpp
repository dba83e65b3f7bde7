#include <doctest.h>

#include <cmath>

#include "ctda/errors.hpp"
#include "ctda/stack.hpp"
#include "oracles/oracles.hpp"
#include "support.hpp"

using namespace ctda;

namespace {

ChromaticPointCloud line(std::vector<double> xs, Colouring c) {
  std::vector<std::vector<double>> rows;
  for (double x : xs) rows.push_back({x});
  return validate_chromatic_set(rows, c);
}

Point p2(double a, double b) { return (Point(2) << a, b).finished(); }

}  // namespace

TEST_CASE("min_stack examples") {
  auto pair = validate_chromatic_set(PointList{p2(-1, 0), p2(1, 0)}, {0, 1});
  auto s = min_stack(pair, Simplex{0, 1}, {});
  REQUIRE(s);
  CHECK(s->stack.centre.norm() == doctest::Approx(0).epsilon(1e-12));
  CHECK(s->stack.radii.at(0) == doctest::Approx(1));
  CHECK(s->stack.radii.at(1) == doctest::Approx(1));

  auto pinched = line({0, 2, 1}, {0, 0, 0});
  CHECK_FALSE(min_stack(pinched, Simplex{0, 1}, {2}));
  CHECK_FALSE(oracle::brute_force_min_stack(pinched, Simplex{0, 1}, {2}));

  auto two = line({0, 2}, {0, 0});
  auto t = min_stack(two, Simplex{0, 1}, {});
  REQUIRE(t);
  CHECK(t->stack.centre[0] == doctest::Approx(1));
  CHECK(t->stack.rad() == doctest::Approx(1));
  CHECK(t->cert.lambda.at(0) == doctest::Approx(0.5));
  CHECK(t->cert.lambda.at(1) == doctest::Approx(0.5));
  auto o = oracle::brute_force_min_stack(two, Simplex{0, 1}, {});
  REQUIRE(o);
  CHECK(o->radius == doctest::Approx(1));
}

TEST_CASE("radii of colours in sigma are pinned") {
  // sigma = {0, 2} of colour 0 plus 1.2 of colour 1, x = 1.5 of colour 1.
  auto c = line({0, 2, 1.2, 1.5}, {0, 0, 1, 1});
  auto s = min_stack(c, Simplex{0, 1, 2}, {0, 1, 2, 3});
  REQUIRE(s);
  CHECK(s->stack.rad() == doctest::Approx(1));
  CHECK(s->stack.radii.at(1) == doctest::Approx(0.2));
  auto incl = included_points(extend_stack(s->stack, c, {0, 1, 2, 3}), c);
  CHECK(incl == VertexSet{0, 1, 2});
}

TEST_CASE("min_enclosing_ball") {
  auto b = min_enclosing_ball({p2(0, 0), p2(2, 0)});
  CHECK(b.radius == doctest::Approx(1));
  auto e = min_enclosing_ball({p2(0, 0), p2(1, 0), p2(0.5, std::sqrt(3.0) / 2)});
  CHECK(e.radius == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-12));
  auto o = min_enclosing_ball({p2(0, 0), p2(4, 0), p2(1, 1)});
  CHECK(o.radius == doctest::Approx(2));
  CHECK(o.centre[0] == doctest::Approx(2));
  CHECK(o.centre[1] == doctest::Approx(0).epsilon(1e-12));

  SplitMix64 rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 1 + trial % 3;
    const int n = 1 + static_cast<int>(rng.below(9));
    PointList p(n, Point(d));
    for (auto& q : p)
      for (int k = 0; k < d; ++k) q[k] = rng.uniform();
    auto a = min_enclosing_ball(p);
    auto r = oracle::brute_force_meb(p);
    CHECK(std::abs(a.radius - r.radius) <= 1e-9);
    double sum = 0.0;
    for (double l : a.lambda) sum += l;
    CHECK(sum == doctest::Approx(1));
  }
}

TEST_CASE("verify_kkt rejects broken certificates") {
  SplitMix64 rng(7);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto c = test::random_gp_cloud(rng, 7, 2, 2);
    const int k = 1 + static_cast<int>(rng.below(3));
    std::vector<int> verts;
    while (static_cast<int>(verts.size()) < k) {
      int v = static_cast<int>(rng.below(c.size()));
      if (std::find(verts.begin(), verts.end(), v) == verts.end()) verts.push_back(v);
    }
    Simplex sigma(verts);
    VertexSet E;
    for (std::size_t v = 0; v < c.size(); ++v)
      if (rng.uniform() < 0.5) E.push_back(static_cast<int>(v));
    auto s = min_stack(c, sigma, E);
    if (!s) continue;
    ++checked;
    CHECK(verify_kkt(s->stack, s->cert, c, sigma, E));
    KKTCertificate zero = s->cert;
    for (auto& [v, l] : zero.lambda) l = 0.0;
    auto z = verify_kkt_detail(s->stack, zero, c, sigma, E);
    CHECK_FALSE(z.ok);
    if (s->stack.rad() > 1e-6) {
      Stack moved = s->stack;
      moved.centre[0] += 1e-3;
      auto m = verify_kkt_detail(moved, s->cert, c, sigma, E);
      CHECK_FALSE(m.ok);
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("extend_stack") {
  auto c = line({0, 2, 1.5}, {0, 0, 1});
  Stack s;
  s.centre = Point::Constant(1, 1.0);
  s.radii[0] = 1.0;
  auto ext = extend_stack(s, c, {0, 1, 2});
  CHECK(ext.radii.at(1) == doctest::Approx(0.5));
  CHECK(ext.rad() == doctest::Approx(1));
  auto incl = included_points(ext, c);
  CHECK(std::find(incl.begin(), incl.end(), 2) != incl.end());
  auto free = extend_stack(s, c, {});
  CHECK(free.radii.at(1) == doctest::Approx(1));
  Stack full = ext;
  CHECK(extend_stack(full, c, {}).radii == full.radii);
}

TEST_CASE("stack and sphere correspondence") {
  Stack s;
  s.centre = p2(0.3, -0.2);
  s.radii = {{0, 1.0}};
  auto sp = lift_correspondence(s, 2, 0);
  CHECK(sp.radius == doctest::Approx(1));
  CHECK(sp.centre.size() == 2);

  Stack eq;
  eq.centre = p2(0, 0);
  eq.radii = {{0, 0.7}, {1, 0.7}};
  CHECK(lift_correspondence(eq, 2, 1).centre[2] == doctest::Approx(0.5));

  SplitMix64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Stack t;
    t.centre = p2(rng.uniform(), rng.uniform());
    const int s_count = 1 + trial % 3;
    for (int m = 0; m <= s_count; ++m) t.radii[m] = 0.1 + rng.uniform();
    auto sp2 = lift_correspondence(t, 2, s_count);
    if (s_count == 1) {
      const double h = sp2.centre[2];
      CHECK(t.radii[1] * t.radii[1] - t.radii[0] * t.radii[0] == doctest::Approx(2 * h - 1));
    }
    auto back = inverse_correspondence(sp2, 2, s_count);
    for (int m = 0; m <= s_count; ++m) CHECK(back.radii[m] == doctest::Approx(t.radii[m]));
  }
  LiftedSphere far;
  far.centre = (Point(3) << 0, 0, 5).finished();
  far.radius = 1.0;
  try {
    inverse_correspondence(far, 2, 1);
    FAIL("expected NoIntersection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoIntersection);
  }
}

TEST_CASE("min_stack agrees with the polyhedral oracle") {
  SplitMix64 rng(2024);
  int solved = 0, infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + trial % 3;
    const int colours = 1 + trial % 3;
    auto c = test::random_gp_cloud(rng, 8, d, colours);
    const int k = 1 + static_cast<int>(rng.below(std::min(4, d + colours)));
    std::vector<int> verts;
    while (static_cast<int>(verts.size()) < k) {
      int v = static_cast<int>(rng.below(c.size()));
      if (std::find(verts.begin(), verts.end(), v) == verts.end()) verts.push_back(v);
    }
    Simplex sigma(verts);
    VertexSet E;
    for (std::size_t v = 0; v < c.size(); ++v)
      if (rng.uniform() < 0.6) E.push_back(static_cast<int>(v));
    auto s = min_stack(c, sigma, E);
    auto o = oracle::brute_force_min_stack(c, sigma, E);
    REQUIRE(s.has_value() == o.has_value());
    if (!s) {
      ++infeasible;
      continue;
    }
    ++solved;
    CHECK(std::abs(s->stack.rad() - o->radius) <= 1e-6);
    CHECK(verify_kkt(s->stack, s->cert, c, sigma, E));
  }
  CHECK(solved > 100);
  MESSAGE("solved " << solved << ", infeasible " << infeasible);
}

TEST_CASE("same stacks") {
  SplitMix64 rng(77);
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    auto c = test::random_gp_cloud(rng, 7, 2, 2);
    VertexSet E;
    for (std::size_t v = 0; v < c.size(); ++v)
      if (rng.uniform() < 0.5) E.push_back(static_cast<int>(v));
    const int k = 1 + static_cast<int>(rng.below(3));
    std::vector<int> verts;
    while (static_cast<int>(verts.size()) < k) {
      int v = static_cast<int>(rng.below(c.size()));
      if (std::find(verts.begin(), verts.end(), v) == verts.end()) verts.push_back(v);
    }
    Simplex sigma(verts);
    auto s = min_stack(c, sigma, E);
    if (!s) continue;
    const Simplex front(s->cert.front());
    for (int x : included_points(extend_stack(s->stack, c, E), c)) {
      if (front.contains(x) || sigma.contains(x)) continue;
      auto t = min_stack(c, sigma.with(x), E);
      REQUIRE(t);
      ++checked;
      CHECK((t->stack.centre - s->stack.centre).norm() <= 1e-9);
      for (const auto& [m, r] : s->stack.radii) CHECK(std::abs(t->stack.radii.at(m) - r) <= 1e-9);
    }
  }
  CHECK(checked > 20);
}
