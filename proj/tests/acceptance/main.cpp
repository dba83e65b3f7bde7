// One line per acceptance criterion; exit status 1 when any fails.
// Usage: ctda_acceptance [output directory for CSV/JSON artifacts]

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ctda/bench.hpp"
#include "ctda/delaunay.hpp"
#include "ctda/errors.hpp"
#include "ctda/filtration.hpp"
#include "ctda/io.hpp"
#include "ctda/morse.hpp"
#include "ctda/persistence.hpp"
#include "ctda/stability.hpp"
#include "ctda/stack.hpp"
#include "oracles/oracles.hpp"
#include "support.hpp"

using namespace ctda;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

fs::path out_dir;

Point p2(double a, double b) { return (Point(2) << a, b).finished(); }

VertexSet everything(std::size_t n) {
  VertexSet e(n);
  std::iota(e.begin(), e.end(), 0);
  return e;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string short_secs(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

// Random surjective colouring refinement of mu with at least one class split.
Colouring random_refinement(SplitMix64& rng, const Colouring& mu) {
  for (;;) {
    Colouring nu(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) nu[i] = 2 * mu[i] + (rng.uniform() < 0.4 ? 1 : 0);
    nu = canonicalize_colouring(nu);
    if (is_refinement(nu, mu) && nu != canonicalize_colouring(mu)) return nu;
  }
}

Outcome kite() {
  const auto t0 = std::chrono::steady_clock::now();
  PointList x{p2(0.6, 0.8), p2(0.4, 0.15), p2(0.75, -0.05), p2(0.95, 0.15)};
  const Simplex bd{1, 3};
  const bool with = delaunay_triangulation(x).complex.contains(bd);
  x.push_back(p2(0.6, 0.45));
  const bool without = !delaunay_triangulation(x).complex.contains(bd);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {with && without && secs < 1.0,
          "bd in Del(abcd): " + std::string(with ? "yes" : "no") + ", bd in Del(abcde): " +
              (without ? "no" : "yes") + ", " + short_secs(secs) + " s"};
}

Outcome trapezium() {
  auto c = validate_chromatic_set(PointList{p2(0, 0), p2(0, 1), p2(1, 0), p2(1, 2)}, {0, 0, 1, 1});
  auto t = chromatic_delaunay(c);
  const int ambient = static_cast<int>(t.coordinates[0].size());
  return {t.top_dimension == 2 && ambient == 3,
          "top dimension " + std::to_string(t.top_dimension) + " in R^" + std::to_string(ambient)};
}

Outcome refined_quad() {
  const auto t0 = std::chrono::steady_clock::now();
  auto x = validate_chromatic_set(PointList{p2(3, 1), p2(2, -2), p2(2, 3), p2(1, 4)}, {0, 0, 0, 0});
  const Colouring nu{0, 0, 0, 1};
  auto alpha = chromatic_alpha_filtration(recolour(x, nu));
  const bool full = alpha.size() == 15 && alpha.complex.contains(Simplex{0, 1, 2, 3});

  // Del(X) from the membership oracle.
  std::vector<Simplex> oracle_del;
  for (const Simplex& s : SimplicialComplex::full_simplex(4, 2))
    if (delaunay_membership_oracle(x.points, s)) oracle_del.push_back(s);
  const auto del = chromatic_delaunay(x).complex;
  const bool del_ok = std::set<Simplex>(del.begin(), del.end()) ==
                      std::set<Simplex>(oracle_del.begin(), oracle_del.end());
  const bool bd = del.contains(Simplex{1, 3});

  CollapseOptions opt;
  opt.radii = std::vector<double>{kInfinity};
  opt.chain = false;
  auto rep = verify_collapse_theorems(x, nu, opt);
  bool collapsed = false;
  std::size_t steps = 0;
  for (const auto& c : rep.checks)
    if (c.step == "refinement" && c.source_size == 15 && c.target_size == del.size()) {
      collapsed = true;
      steps = c.steps;
    }
  std::ofstream(out_dir / "refined_quad_collapse.json") << collapse_report_json(rep) << '\n';
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {full && del_ok && bd && collapsed && secs < 1.0,
          "Alpha_inf(X,nu) has " + std::to_string(alpha.size()) + " simplices, bd in Del(X): " +
              (bd ? "yes" : "no") + ", collapse 15 -> " + std::to_string(del.size()) + " in " +
              std::to_string(steps) + " steps, " + short_secs(secs) + " s"};
}

Outcome lift_dimension() {
  SplitMix64 rng(1001);
  int clouds = 0, bad = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int d = 1 + trial % 3;
    const int colours = 1 + (trial / 3) % 3;
    const std::size_t n = std::max<std::size_t>(colours, 2 + rng.below(11));
    auto c = test::random_gp_cloud(rng, n, d, colours);
    const int expect = std::min<int>(static_cast<int>(n) - 1, d + c.s);
    if (chromatic_delaunay(c).top_dimension != expect) ++bad;
    ++clouds;
  }
  return {bad == 0 && clouds >= 100, std::to_string(clouds) + " clouds, " + std::to_string(bad) + " mismatches"};
}

Outcome extremal() {
  SplitMix64 rng(1002);
  double worst_mono = 0.0, worst_max = 0.0;
  int clouds = 0;
  bool missing = false;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 3;
    auto mono = test::random_gp_cloud(rng, 5 + rng.below(5), d, 1);
    auto a = chromatic_alpha_filtration(mono);
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto o = oracle::min_empty_circumsphere(mono.points, a.complex[i]);
      if (!o) {
        missing = true;
        continue;
      }
      worst_mono = std::max(worst_mono, test::rel_diff(a.values[i], *o));
    }
    const std::size_t n = 3 + rng.below(4);
    auto maximal = recolour(test::random_gp_cloud(rng, n, d, 1), maximal_colouring(n));
    auto m = chromatic_alpha_filtration(maximal);
    if (m.size() != (std::size_t{1} << n) - 1) missing = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      PointList pts;
      for (int v : m.complex[i]) pts.push_back(maximal.points[v]);
      worst_max = std::max(worst_max, test::rel_diff(m.values[i], oracle::brute_force_meb(pts).radius));
    }
    ++clouds;
  }
  return {!missing && worst_mono <= 1e-9 && worst_max <= 1e-9,
          std::to_string(clouds) + " clouds per case, max rel. error mono vs alpha " + num(worst_mono) +
              ", maximal vs Cech " + num(worst_max)};
}

Outcome persistence_equality() {
  SplitMix64 rng(1003);
  int clouds = 0, bad = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 6 + rng.below(7);
    auto c = test::random_gp_cloud(rng, n, 2, 1 + trial % 3);
    auto dc = compute_persistence(cech_filtration(c));
    auto dd = compute_persistence(del_cech_filtration(c));
    auto da = compute_persistence(chromatic_alpha_filtration(c));
    const double e1 = bottleneck_distance(dc, dd);
    const double e2 = bottleneck_distance(dc, da);
    worst = std::max({worst, e1, e2});
    if (e1 > 1e-8 || e2 > 1e-8) ++bad;
    if (trial == 0) {
      std::ofstream cloud_os(out_dir / "persistence_equality_cloud.csv");
      write_cloud_csv(cloud_os, c);
      for (const auto& [name, d] : {std::pair{"cech", dc}, {"del-cech", dd}, {"alpha", da}}) {
        std::ofstream os(out_dir / ("persistence_equality_" + std::string(name) + ".csv"));
        write_diagram_csv(os, d);
      }
    }
    ++clouds;
  }
  return {bad == 0, std::to_string(clouds) + " clouds, largest bottleneck distance " + num(worst)};
}

Outcome collapses() {
  SplitMix64 rng(1004);
  int clouds = 0;
  std::size_t checks = 0, radii = 0;
  std::string failure;
  for (int trial = 0; trial < 20 && failure.empty(); ++trial) {
    const std::size_t n = 5 + rng.below(4);
    auto c = test::random_gp_cloud(rng, n, 2, 1 + trial % 2);
    const Colouring nu = random_refinement(rng, c.colours);
    try {
      auto rep = verify_collapse_theorems(c, nu);
      checks += rep.checks.size();
      radii += rep.radii.size();
      if (trial == 0) std::ofstream(out_dir / "collapse_report.json") << collapse_report_json(rep) << '\n';
    } catch (const Error& e) {
      failure = e.what();
    }
    ++clouds;
  }
  return {failure.empty(), std::to_string(clouds) + " clouds, " + std::to_string(radii) + " radii, " +
                               std::to_string(checks) + " collapses executed" +
                               (failure.empty() ? "" : ", failed: " + failure)};
}

Outcome morse_structure() {
  SplitMix64 rng(1005);
  int clouds = 0, bad = 0;
  std::size_t critical = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const bool mono = trial < 50;
    auto c = test::random_gp_cloud(rng, 6 + rng.below(5), 2, mono ? 1 : 2);
    auto f = selective_alpha_filtration(c, everything(c.size()));
    auto v = filtration_gradient(c, f);
    // Slivers near the hull have huge radii, so the tolerance follows the values.
    double scale = c.diameter();
    for (double x : f.filtration.values) scale = std::max(scale, x);
    bool ok = is_partition(f.filtration.complex, v) && check_acyclicity(f.filtration.complex, v) &&
              is_morse_function(f.filtration.complex, v, f.filtration.values, 1e-9 * scale);
    if (mono) {
      std::set<Simplex> expected;
      for (const Simplex& s : f.filtration.complex)
        if (oracle::centred_empty_simplex(c.points, s)) expected.insert(s);
      const auto crit = v.critical();
      ok = ok && std::set<Simplex>(crit.begin(), crit.end()) == expected;
      critical += crit.size();
    }
    if (!ok) ++bad;
    ++clouds;
  }
  return {bad == 0, std::to_string(clouds) + " clouds (50 monochromatic with oracle check, " +
                        std::to_string(critical) + " critical simplices), " + std::to_string(bad) +
                        " failures"};
}

Outcome kkt() {
  SplitMix64 rng(1006);
  int instances = 0, solved = 0, bad = 0;
  double worst = 0.0;
  while (instances < 500) {
    const int d = 1 + instances % 3;
    const int colours = 1 + (instances / 3) % 3;
    auto c = test::random_gp_cloud(rng, 5 + rng.below(4), d, colours);
    const int k = 1 + static_cast<int>(rng.below(std::min(4, d + colours)));
    std::vector<int> verts;
    while (static_cast<int>(verts.size()) < k) {
      const int v = static_cast<int>(rng.below(c.size()));
      if (std::find(verts.begin(), verts.end(), v) == verts.end()) verts.push_back(v);
    }
    const Simplex sigma(verts);
    VertexSet E;
    for (std::size_t v = 0; v < c.size(); ++v)
      if (rng.uniform() < 0.6) E.push_back(static_cast<int>(v));
    ++instances;
    auto s = min_stack(c, sigma, E);
    auto o = oracle::brute_force_min_stack(c, sigma, E);
    if (s.has_value() != o.has_value()) {
      ++bad;
      continue;
    }
    if (!s) continue;
    ++solved;
    const double diff = std::abs(s->stack.rad() - o->radius);
    worst = std::max(worst, diff);
    if (diff > 1e-6 || !verify_kkt(s->stack, s->cert, c, sigma, E)) ++bad;
  }
  return {bad == 0 && solved > 0, std::to_string(instances) + " instances (" + std::to_string(solved) +
                                      " feasible), max radius difference " + num(worst) + ", " +
                                      std::to_string(bad) + " failures"};
}

Outcome nesting() {
  auto tri = validate_chromatic_set(PointList{p2(0, 0), p2(1, 0), p2(0.5, std::sqrt(3.0) / 2)}, {0, 0, 0});
  const double ratio = verify_nesting(tri).max_ratio;
  const bool equilateral = std::abs(ratio - 2 / std::sqrt(3.0)) <= 1e-12;
  SplitMix64 rng(1007);
  std::size_t checked = 0;
  bool ok = true;
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 1 + trial % 3;
    auto c = test::random_gp_cloud(rng, 5 + rng.below(5), d, 1 + trial % 3);
    auto rep = verify_nesting(c);
    ok = ok && rep.ok;
    checked += rep.checked;
    // Full complexes as well.
    auto cech = cech_filtration(c);
    auto rips = rips_filtration(c);
    const double delta = nesting_delta(d);
    for (std::size_t i = 0; i < cech.size(); ++i) {
      const double tol = 1e-12 * std::max(1.0, cech.values[i]);
      ok = ok && rips.values[i] <= cech.values[i] + tol && cech.values[i] <= delta * rips.values[i] + tol;
      ++checked;
    }
  }
  return {ok && equilateral, "equilateral ratio minus 2/sqrt(3) " +
                                 num(ratio - 2 / std::sqrt(3.0)) + ", " + std::to_string(checked) +
                                 " simplices checked on Delaunay and full complexes"};
}

Outcome stability() {
  SplitMix64 rng(1008);
  int clouds = 0, bad = 0;
  double worst_gap = 0.0, worst_bn = 0.0;
  std::ofstream json(out_dir / "stability.jsonl");
  for (int trial = 0; trial < 20; ++trial) {
    auto c = test::random_gp_cloud(rng, 10 + rng.below(6), 2, 2, 0.05);
    auto rep = perturbation_experiment(c, 1e-6, 5000 + trial);
    json << rep.to_json() << '\n';
    worst_gap = std::max(worst_gap, rep.sup_value_gap);
    worst_bn = std::max(worst_bn, rep.bottleneck);
    if (!rep.complex_isomorphic || !rep.gap_within_eta || !rep.bottleneck_within_eta ||
        !rep.gap_within_half_distortion)
      ++bad;
    ++clouds;
  }
  return {bad == 0, std::to_string(clouds) + " clouds at eta 1e-6, largest value gap " + num(worst_gap) +
                        ", largest bottleneck " + num(worst_bn)};
}

Outcome gamma_subfiltrations() {
  SplitMix64 rng(1009);
  int cases = 0, bad = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    auto c = test::random_gp_cloud(rng, 7 + rng.below(4), 2, 3);
    auto a = chromatic_alpha_filtration(c);
    auto dc = del_cech_filtration(c);
    auto ce = cech_filtration(c);
    for (int k = 1; k <= 2; ++k) {
      const auto g = k_chromatic_gamma(c.colour_count(), k);
      auto pa = compute_persistence(gamma_subfiltration(a, c.colours, g));
      auto pd = compute_persistence(gamma_subfiltration(dc, c.colours, g));
      auto pc = compute_persistence(gamma_subfiltration(ce, c.colours, g));
      const double e = std::max(bottleneck_distance(pa, pc), bottleneck_distance(pd, pc));
      worst = std::max(worst, e);
      if (e > 1e-8) ++bad;
      ++cases;
    }
  }
  return {bad == 0, std::to_string(cases) + " (cloud, k) cases with 3 colours, largest bottleneck " +
                        num(worst)};
}

// Checked at two and three colours, since s counts colours in benchmark
// records but colours minus one elsewhere.
Outcome bench_order() {
  BenchOptions opt;
  std::vector<BenchmarkRecord> all;
  bool ok = true;
  std::string detail;
  for (int colours : {2, 3}) {
    auto rows = bench_cloud(sample_square(1000, colours, 2024), "points", 2024, opt);
    double alpha = 0, cech = 0, rips = 0;
    for (const auto& r : rows) {
      if (r.kind == kKindAlpha) alpha = r.median_seconds;
      if (r.kind == kKindDelCech) cech = r.median_seconds;
      if (r.kind == kKindDelRips) rips = r.median_seconds;
    }
    ok = ok && rips <= cech && cech <= alpha;
    detail += (detail.empty() ? "" : "; ") + std::to_string(colours) + " colours: del-rips " + num(rips) +
              " s, del-cech " + num(cech) + " s, alpha " + num(alpha) + " s";
    all.insert(all.end(), rows.begin(), rows.end());
  }
  std::ofstream os(out_dir / "bench_order.csv");
  write_benchmark_csv(os, all);
  return {ok, "n=1000 medians, " + detail};
}

}  // namespace

int main(int argc, char** argv) {
  out_dir = argc > 1 ? fs::path(argv[1]) : fs::path("acceptance_out");
  fs::create_directories(out_dir);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"kite-golden", kite},
      {"trapezium-golden", trapezium},
      {"refined-quad-golden", refined_quad},
      {"lift-dimension", lift_dimension},
      {"extremal-colourings", extremal},
      {"persistence-equality", persistence_equality},
      {"constructive-collapses", collapses},
      {"morse-structure", morse_structure},
      {"kkt-vs-oracle", kkt},
      {"delta-nesting", nesting},
      {"stability", stability},
      {"gamma-subfiltrations", gamma_subfiltrations},
      {"benchmark-ordering", bench_order},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    char t[32];
    std::snprintf(t, sizeof t, "%.2f", secs);  // wall time of the whole criterion
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " | " << o.detail << " | " << t << " s"
              << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
