#include "ctda/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "ctda/errors.hpp"
#include "ctda/parallel.hpp"

namespace ctda {

double FilteredComplex::value(const Simplex& sigma) const {
  auto idx = complex.index_of(sigma);
  if (!idx) throw Error(ErrorKind::MissingSimplex, "simplex " + sigma.str() + " not in complex");
  return values[*idx];
}

std::vector<std::size_t> FilteredComplex::filtration_order() const {
  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), 0);
  // The complex is stored in (dimension, lexicographic) order already.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return order;
}

std::optional<std::pair<Simplex, Simplex>> FilteredComplex::monotonicity_violation(
    double tol) const {
  for (std::size_t i = 0; i < size(); ++i) {
    const Simplex& sigma = complex[i];
    if (sigma.size() < 2) continue;
    for (const Simplex& f : sigma.facets()) {
      auto j = complex.index_of(f);
      if (!j) return std::make_pair(f, sigma);
      if (values[*j] > values[i] + tol) return std::make_pair(f, sigma);
    }
  }
  return std::nullopt;
}

SimplicialComplex FilteredComplex::sublevel(double r) const {
  std::vector<Simplex> keep;
  for (std::size_t i = 0; i < size(); ++i)
    if (values[i] <= r) keep.push_back(complex[i]);
  return SimplicialComplex::from_simplices(std::move(keep));
}

namespace {

void require_small(const ChromaticPointCloud& cloud, const FiltrationOptions& opt) {
  if (opt.dim_cap < 0 && cloud.size() > kFullComplexLimit)
    throw Error(ErrorKind::SizeLimitExceeded,
                "complete complex on " + std::to_string(cloud.size()) +
                    " points needs a dimension cap");
}

double meb_radius(const ChromaticPointCloud& cloud, const Simplex& sigma) {
  PointList pts;
  pts.reserve(sigma.size());
  for (int v : sigma) pts.push_back(cloud.points[v]);
  return min_enclosing_ball(pts).radius;
}

std::vector<double> meb_values(const ChromaticPointCloud& cloud, const SimplicialComplex& k,
                               int threads) {
  std::vector<double> values(k.size());
  parallel_for(k.size(), threads, [&](std::size_t i) { values[i] = meb_radius(cloud, k[i]); });
  return values;
}

// Half the longest edge, accumulated over facets in dimension order.
std::vector<double> rips_values(const ChromaticPointCloud& cloud, const SimplicialComplex& k) {
  std::vector<double> values(k.size(), 0.0);
  for (std::size_t i = 0; i < k.size(); ++i) {
    const Simplex& sigma = k[i];
    if (sigma.size() == 2) {
      values[i] = 0.5 * (cloud.points[sigma[0]] - cloud.points[sigma[1]]).norm();
    } else if (sigma.size() > 2) {
      double v = 0.0;
      for (const Simplex& f : sigma.facets()) v = std::max(v, values[*k.index_of(f)]);
      values[i] = v;
    }
  }
  return values;
}

// Faces and cofaces with the same exact value (e.g. a shared enclosing ball)
// can come out an ulp apart. Lower such faces to their cofaces; anything
// beyond rounding is an error.
void settle_rounding(const SimplicialComplex& k, std::vector<double>& values, double scale) {
  const HasseDiagram h = hasse_diagram(k);
  const double tol = kRelTol * std::max(scale, 1e-300);
  for (std::size_t i = k.size(); i-- > 0;) {
    for (std::size_t c : h.cofacets[i]) {
      if (values[i] <= values[c]) continue;
      if (values[i] - values[c] > tol)
        throw Error(ErrorKind::NumericalFailure,
                    "face " + k[i].str() + " above coface " + k[c].str(), k[c].to_vector());
      values[i] = values[c];
    }
  }
}

FilteredComplex make(SimplicialComplex k, std::vector<double> values, const char* kind,
                     const ChromaticPointCloud& cloud) {
  settle_rounding(k, values, cloud.diameter());
  FilteredComplex f;
  f.complex = std::move(k);
  f.values = std::move(values);
  f.kind = kind;
  f.d = cloud.d;
  f.s = cloud.s;
  return f;
}

Triangulation triangulate_or_use(const ChromaticPointCloud& cloud, const Triangulation* tri) {
  return tri ? *tri : chromatic_delaunay(cloud);
}

SimplicialComplex capped(const SimplicialComplex& k, int dim_cap) {
  if (dim_cap < 0 || k.dimension() <= dim_cap) return k;
  std::vector<Simplex> keep;
  for (const Simplex& s : k)
    if (s.dim() <= dim_cap) keep.push_back(s);
  return SimplicialComplex::from_simplices(std::move(keep));
}

}  // namespace

FilteredComplex cech_filtration(const ChromaticPointCloud& cloud, const FiltrationOptions& opt) {
  require_small(cloud, opt);
  auto k = SimplicialComplex::full_simplex(static_cast<int>(cloud.size()), opt.dim_cap);
  auto values = meb_values(cloud, k, opt.threads);
  return make(std::move(k), std::move(values), kKindCech, cloud);
}

FilteredComplex rips_filtration(const ChromaticPointCloud& cloud, const FiltrationOptions& opt) {
  require_small(cloud, opt);
  auto k = SimplicialComplex::full_simplex(static_cast<int>(cloud.size()), opt.dim_cap);
  auto values = rips_values(cloud, k);
  return make(std::move(k), std::move(values), kKindRips, cloud);
}

FilteredComplex chromatic_alpha_filtration(const ChromaticPointCloud& cloud,
                                           const FiltrationOptions& opt, const Triangulation* tri) {
  const Triangulation t = triangulate_or_use(cloud, tri);
  const SimplicialComplex& k = t.complex;
  const HasseDiagram h = hasse_diagram(k);
  std::vector<double> values(k.size(), std::numeric_limits<double>::quiet_NaN());
  const double tol = kRelTol * std::max(cloud.diameter(), 1e-300);

  std::vector<std::vector<std::size_t>> by_dim(std::max(0, k.dimension()) + 1);
  for (std::size_t i = 0; i < k.size(); ++i) by_dim[k[i].dim()].push_back(i);

  for (int dim = k.dimension(); dim >= 0; --dim) {
    const auto& idx = by_dim[dim];
    parallel_for(idx.size(), opt.threads, [&](std::size_t j) {
      const std::size_t i = idx[j];
      const Simplex& sigma = k[i];
      const StackSolution sol = min_passing_stack(cloud, sigma);
      bool empty = true;
      for (std::size_t x = 0; x < cloud.size() && empty; ++x) {
        auto it = sol.stack.radii.find(cloud.colours[x]);
        if (it == sol.stack.radii.end()) continue;
        if ((cloud.points[x] - sol.stack.centre).norm() < it->second - tol) empty = false;
      }
      if (empty) {
        values[i] = sol.stack.rad();
        return;
      }
      if (h.cofacets[i].empty())
        throw Error(ErrorKind::NumericalFailure,
                    "maximal simplex " + sigma.str() + " has no empty stack", sigma.to_vector());
      double v = std::numeric_limits<double>::infinity();
      for (std::size_t c : h.cofacets[i]) v = std::min(v, values[c]);
      values[i] = v;
    });
  }
  auto f = make(k, std::move(values), kKindAlpha, cloud);
  if (opt.dim_cap >= 0) {
    FilteredComplex g = f;
    g.complex = capped(k, opt.dim_cap);
    g.values.clear();
    for (const Simplex& s : g.complex) g.values.push_back(f.value(s));
    return g;
  }
  return f;
}

FilteredComplex del_cech_filtration(const ChromaticPointCloud& cloud, const FiltrationOptions& opt,
                                    const Triangulation* tri) {
  const Triangulation t = triangulate_or_use(cloud, tri);
  auto k = capped(t.complex, opt.dim_cap);
  auto values = meb_values(cloud, k, opt.threads);
  return make(std::move(k), std::move(values), kKindDelCech, cloud);
}

FilteredComplex del_rips_filtration(const ChromaticPointCloud& cloud, const FiltrationOptions& opt,
                                    const Triangulation* tri) {
  const Triangulation t = triangulate_or_use(cloud, tri);
  auto k = capped(t.complex, opt.dim_cap);
  auto values = rips_values(cloud, k);
  return make(std::move(k), std::move(values), kKindDelRips, cloud);
}

SelectiveFiltration selective_alpha_filtration(const ChromaticPointCloud& cloud,
                                               const VertexSet& E_in,
                                               const FiltrationOptions& opt) {
  require_small(cloud, opt);
  VertexSet E = E_in;
  std::sort(E.begin(), E.end());
  E.erase(std::unique(E.begin(), E.end()), E.end());

  std::vector<Simplex> all;
  std::vector<StackSolution> stacks;
  std::unordered_set<Simplex, SimplexHash> present;

  std::vector<Simplex> level;
  for (std::size_t v = 0; v < cloud.size(); ++v) level.push_back(Simplex{static_cast<int>(v)});
  const int n = static_cast<int>(cloud.size());

  while (!level.empty()) {
    std::vector<std::optional<StackSolution>> sols(level.size());
    parallel_for(level.size(), opt.threads,
                 [&](std::size_t i) { sols[i] = min_stack(cloud, level[i], E); });
    std::vector<Simplex> kept;
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (!sols[i]) continue;
      kept.push_back(level[i]);
      present.insert(level[i]);
      all.push_back(level[i]);
      stacks.push_back(std::move(*sols[i]));
    }
    if (!kept.empty() && opt.dim_cap >= 0 && kept.front().dim() >= opt.dim_cap) break;
    std::vector<Simplex> next;
    for (const Simplex& sigma : kept) {
      for (int v = sigma[sigma.size() - 1] + 1; v < n; ++v) {
        Simplex tau = sigma.with(v);
        bool ok = true;
        for (const Simplex& f : tau.facets())
          if (!present.count(f)) {
            ok = false;
            break;
          }
        if (ok) next.push_back(tau);
      }
    }
    level = std::move(next);
  }

  // Reorder to the complex's (dimension, lexicographic) storage order.
  SimplicialComplex k = SimplicialComplex::from_simplices(all);
  SelectiveFiltration out;
  out.E = E;
  out.stacks.resize(k.size());
  std::vector<double> values(k.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    const std::size_t j = *k.index_of(all[i]);
    values[j] = stacks[i].stack.rad();
    out.stacks[j] = std::move(stacks[i]);
  }
  out.filtration = make(std::move(k), std::move(values), kKindSelective, cloud);
  return out;
}

SelectiveFiltration selective_on_complex(const ChromaticPointCloud& cloud,
                                         const SimplicialComplex& complex, const VertexSet& E_in,
                                         const FiltrationOptions& opt) {
  VertexSet E = E_in;
  std::sort(E.begin(), E.end());
  E.erase(std::unique(E.begin(), E.end()), E.end());
  SelectiveFiltration out;
  out.E = E;
  out.stacks.resize(complex.size());
  std::vector<double> values(complex.size());
  parallel_for(complex.size(), opt.threads, [&](std::size_t i) {
    auto sol = min_stack(cloud, complex[i], E);
    if (!sol)
      throw Error(ErrorKind::MissingSimplex, "no stack for " + complex[i].str(),
                  complex[i].to_vector());
    values[i] = sol->stack.rad();
    out.stacks[i] = std::move(*sol);
  });
  out.filtration = make(complex, std::move(values), kKindSelective, cloud);
  return out;
}

FilteredComplex gamma_subfiltration(const FilteredComplex& f, const Colouring& colours,
                                    const std::vector<Simplex>& gamma) {
  std::unordered_set<Simplex, SimplexHash> g(gamma.begin(), gamma.end());
  for (const Simplex& c : gamma)
    for (const Simplex& face : c.faces())
      if (!g.count(face))
        throw Error(ErrorKind::InvalidGamma,
                    "colour complex misses face " + face.str() + " of " + c.str());
  FilteredComplex out;
  out.kind = f.kind;
  out.d = f.d;
  out.s = f.s;
  std::vector<Simplex> keep;
  std::vector<double> values;
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::vector<int> cs;
    for (int v : f.complex[i]) cs.push_back(colours.at(v));
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    if (g.count(Simplex(cs))) {
      keep.push_back(f.complex[i]);
      values.push_back(f.values[i]);
    }
  }
  // keep is a subsequence of a (dimension, lexicographic) list, so values
  // stay aligned with the new complex.
  out.complex = SimplicialComplex::from_simplices(std::move(keep));
  out.values = std::move(values);
  return out;
}

std::vector<Simplex> k_chromatic_gamma(int colour_count, int k) {
  return SimplicialComplex::full_simplex(colour_count, k - 1).simplices();
}

double nesting_delta(int d) { return std::sqrt(2.0 * d / (d + 1.0)); }

NestingReport verify_nesting(const ChromaticPointCloud& cloud, const FiltrationOptions& opt,
                             const Triangulation* tri) {
  const Triangulation t = triangulate_or_use(cloud, tri);
  const SimplicialComplex k = capped(t.complex, opt.dim_cap);
  const auto cech = meb_values(cloud, k, opt.threads);
  const auto rips = rips_values(cloud, k);
  NestingReport rep;
  rep.delta = nesting_delta(cloud.d);
  for (std::size_t i = 0; i < k.size(); ++i) {
    ++rep.checked;
    const double tol = 1e-12 * std::max(1.0, cech[i]);
    if (rips[i] > cech[i] + tol || cech[i] > rep.delta * rips[i] + tol) {
      rep.ok = false;
      if (!rep.violation) rep.violation = k[i];
    }
    if (rips[i] > 0.0) rep.max_ratio = std::max(rep.max_ratio, cech[i] / rips[i]);
  }
  return rep;
}

}  // namespace ctda
