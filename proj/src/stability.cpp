#include "ctda/stability.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "ctda/delaunay.hpp"
#include "ctda/errors.hpp"
#include "ctda/filtration.hpp"
#include "ctda/persistence.hpp"
#include "ctda/rng.hpp"

namespace ctda {

double distortion(const PointList& x, const PointList& y, const std::vector<int>& f) {
  if (x.size() != f.size()) throw Error(ErrorKind::LengthMismatch, "map has the wrong length");
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      worst = std::max(worst, std::abs((x[i] - x[j]).norm() - (y[f[i]] - y[f[j]]).norm()));
  return worst;
}

namespace {

bool augment(const std::vector<std::vector<int>>& adj, int u, int stamp, std::vector<int>& seen,
             std::vector<int>& match) {
  for (int r : adj[u]) {
    if (seen[r] == stamp) continue;
    seen[r] = stamp;
    if (match[r] < 0 || augment(adj, match[r], stamp, seen, match)) {
      match[r] = u;
      return true;
    }
  }
  return false;
}

// Bottleneck assignment between equally sized point sets; returns match[j]
// = index in a matched to b[j].
std::vector<int> bottleneck_assignment(const PointList& a, const PointList& b, double& value) {
  const int n = static_cast<int>(a.size());
  std::vector<double> cand;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cand.push_back((a[i] - b[j]).norm());
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  auto attempt = [&](double eps, std::vector<int>& match) {
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if ((a[i] - b[j]).norm() <= eps) adj[i].push_back(j);
    match.assign(n, -1);
    std::vector<int> seen(n, -1);
    for (int i = 0; i < n; ++i)
      if (!augment(adj, i, i, seen, match)) return false;
    return true;
  };
  std::size_t lo = 0, hi = cand.size() - 1;
  std::vector<int> match;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (attempt(cand[mid], match))
      hi = mid;
    else
      lo = mid + 1;
  }
  attempt(cand[lo], match);
  value = cand[lo];
  return match;
}

}  // namespace

MatchingResult chromatic_matching(const ChromaticPointCloud& x, const ChromaticPointCloud& y) {
  MatchingResult res;
  if (x.d != y.d) throw Error(ErrorKind::DimensionMismatch, "clouds live in different dimensions");
  std::map<int, std::vector<int>> cx, cy;
  for (std::size_t i = 0; i < x.size(); ++i) cx[x.colours[i]].push_back(static_cast<int>(i));
  for (std::size_t i = 0; i < y.size(); ++i) cy[y.colours[i]].push_back(static_cast<int>(i));
  bool sizes_match = cx.size() == cy.size();
  for (const auto& [m, idx] : cx)
    if (!cy.count(m) || cy[m].size() != idx.size()) sizes_match = false;
  if (!sizes_match) {
    res.sup_displacement = res.distortion = std::numeric_limits<double>::infinity();
    return res;
  }
  std::vector<int> f(x.size(), -1);
  for (const auto& [m, idx] : cx) {
    if (idx.size() > kMatchingClassLimit)
      throw Error(ErrorKind::SizeLimitExceeded, "colour class too large for exact matching");
    PointList a, b;
    for (int i : idx) a.push_back(x.points[i]);
    for (int j : cy[m]) b.push_back(y.points[j]);
    double value = 0.0;
    const std::vector<int> match = bottleneck_assignment(a, b, value);
    res.sup_displacement = std::max(res.sup_displacement, value);
    for (std::size_t j = 0; j < match.size(); ++j) f[idx[match[j]]] = cy[m][j];
  }
  for (std::size_t i = 0; i < f.size(); ++i) res.pairs.emplace_back(static_cast<int>(i), f[i]);
  res.distortion = distortion(x.points, y.points, f);
  return res;
}

double chromatic_distance(const ChromaticPointCloud& x, const ChromaticPointCloud& y) {
  return chromatic_matching(x, y).sup_displacement;
}

ChromaticPointCloud perturb(const ChromaticPointCloud& cloud, double eta, std::uint64_t seed) {
  SplitMix64 rng(seed);
  ChromaticPointCloud out = cloud;
  const int d = cloud.d;
  for (Point& p : out.points) {
    Point g(d);
    double norm = 0.0;
    while (norm == 0.0) {
      for (int k = 0; k < d; ++k) g[k] = rng.normal();
      norm = g.norm();
    }
    const double radius = eta * std::pow(rng.uniform(), 1.0 / d);
    p += (radius / norm) * g;
  }
  return out;
}

PerturbationReport perturbation_experiment(const ChromaticPointCloud& cloud, double eta,
                                           std::uint64_t seed, int threads) {
  PerturbationReport rep;
  rep.eta = eta;
  rep.seed = seed;
  const ChromaticPointCloud moved = perturb(cloud, eta, seed);
  const FiltrationOptions opt{-1, threads};
  const Triangulation t0 = chromatic_delaunay(cloud);
  const Triangulation t1 = chromatic_delaunay(moved);
  rep.complex_isomorphic = t0.complex == t1.complex;
  std::vector<int> identity(cloud.size());
  for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = static_cast<int>(i);
  rep.distortion = distortion(cloud.points, moved.points, identity);

  const FilteredComplex f0 = del_rips_filtration(cloud, opt, &t0);
  const FilteredComplex f1 = del_rips_filtration(moved, opt, &t1);
  if (rep.complex_isomorphic) {
    for (std::size_t i = 0; i < f0.size(); ++i)
      rep.sup_value_gap = std::max(rep.sup_value_gap, std::abs(f0.values[i] - f1.values[i]));
    rep.gap_within_half_distortion = rep.sup_value_gap <= 0.5 * rep.distortion;
    rep.gap_within_eta = rep.sup_value_gap <= eta;
  }
  rep.bottleneck = bottleneck_distance(compute_persistence(f0), compute_persistence(f1));
  rep.bottleneck_within_eta = rep.bottleneck <= eta;
  return rep;
}

std::string PerturbationReport::to_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\"eta\": " << eta << ", \"seed\": " << seed
     << ", \"complex_isomorphic\": " << (complex_isomorphic ? "true" : "false")
     << ", \"distortion\": " << distortion << ", \"sup_value_gap\": " << sup_value_gap
     << ", \"bottleneck\": ";
  if (std::isinf(bottleneck))
    os << "\"inf\"";
  else
    os << bottleneck;
  auto flag = [](bool b) { return b ? "true" : "false"; };
  os << ", \"gap_within_half_distortion\": " << flag(gap_within_half_distortion)
     << ", \"gap_within_eta\": " << flag(gap_within_eta)
     << ", \"bottleneck_within_eta\": " << flag(bottleneck_within_eta) << "}";
  return os.str();
}

}  // namespace ctda
