#include "ctda/morse.hpp"

#include <cmath>
#include <array>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "ctda/errors.hpp"
#include "ctda/parallel.hpp"
#include "ctda/persistence.hpp"

namespace ctda {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::vector<int> extra_vertices(const Interval& iv) {
  return iv.top.set_difference(iv.bottom).to_vector();
}

}  // namespace

std::vector<Simplex> Interval::members() const {
  const std::vector<int> extra = extra_vertices(*this);
  std::vector<Simplex> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << extra.size()); ++mask) {
    std::vector<int> vs = bottom.to_vector();
    for (std::size_t i = 0; i < extra.size(); ++i)
      if (mask & (std::size_t{1} << i)) vs.push_back(extra[i]);
    out.emplace_back(vs);
  }
  return out;
}

std::vector<Simplex> VectorField::critical() const {
  std::vector<Simplex> out;
  for (const auto& iv : intervals)
    if (iv.singleton()) out.push_back(iv.bottom);
  std::sort(out.begin(), out.end(), DimLexLess{});
  return out;
}

bool VectorField::is_pairing() const {
  for (const auto& iv : intervals)
    if (iv.top.size() > iv.bottom.size() + 1) return false;
  return true;
}

std::vector<std::size_t> locate_intervals(const SimplicialComplex& k, const VectorField& v) {
  std::unordered_map<Simplex, std::size_t, SimplexHash> by_bottom;
  for (std::size_t i = 0; i < v.intervals.size(); ++i) {
    const Interval& iv = v.intervals[i];
    if (!iv.bottom.is_face_of(iv.top))
      throw Error(ErrorKind::NotInterval, "bottom " + iv.bottom.str() + " not below top " + iv.top.str());
    if (!by_bottom.emplace(iv.bottom, i).second)
      throw Error(ErrorKind::PartitionFailure, "two intervals start at " + iv.bottom.str(),
                  iv.bottom.to_vector());
  }
  std::vector<std::size_t> loc(k.size(), kNone);
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (const Simplex& f : k[i].faces()) {
      auto it = by_bottom.find(f);
      if (it == by_bottom.end() || !v.intervals[it->second].contains(k[i])) continue;
      if (loc[i] != kNone)
        throw Error(ErrorKind::PartitionFailure, "simplex " + k[i].str() + " in two intervals",
                    k[i].to_vector());
      loc[i] = it->second;
    }
    if (loc[i] == kNone)
      throw Error(ErrorKind::PartitionFailure, "simplex " + k[i].str() + " in no interval",
                  k[i].to_vector());
  }
  return loc;
}

bool is_partition(const SimplicialComplex& k, const VectorField& v) {
  try {
    locate_intervals(k, v);
  } catch (const Error&) {
    return false;
  }
  for (const auto& iv : v.intervals)
    if (!k.contains(iv.top)) return false;
  return true;
}

namespace {

bool quotient_is_acyclic(const SimplicialComplex& k, const HasseDiagram& h,
                         const std::vector<std::size_t>& loc, std::size_t node_count) {
  std::vector<std::vector<std::size_t>> out(node_count);
  std::vector<std::size_t> indeg(node_count, 0);
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j : h.facets[i])
      if (loc[i] != loc[j]) {
        out[loc[i]].push_back(loc[j]);
        ++indeg[loc[j]];
      }
  std::vector<std::size_t> ready;
  for (std::size_t n = 0; n < node_count; ++n)
    if (indeg[n] == 0) ready.push_back(n);
  std::size_t seen = 0;
  while (!ready.empty()) {
    const std::size_t n = ready.back();
    ready.pop_back();
    ++seen;
    for (std::size_t m : out[n])
      if (--indeg[m] == 0) ready.push_back(m);
  }
  return seen == node_count;
}

}  // namespace

bool check_acyclicity(const SimplicialComplex& k, const VectorField& v) {
  const auto loc = locate_intervals(k, v);
  return quotient_is_acyclic(k, hasse_diagram(k), loc, v.intervals.size());
}

VectorField sum_refine(const SimplicialComplex& k, const VectorField& v, const VectorField& w) {
  const auto lv = locate_intervals(k, v);
  const auto lw = locate_intervals(k, w);
  std::map<std::pair<std::size_t, std::size_t>, Interval> parts;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const auto key = std::make_pair(lv[i], lw[i]);
    if (parts.count(key)) continue;
    const Interval& a = v.intervals[lv[i]];
    const Interval& b = w.intervals[lw[i]];
    Interval iv{a.bottom.set_union(b.bottom), a.top.set_intersection(b.top)};
    if (!iv.contains(k[i]))
      throw Error(ErrorKind::NotInterval, "intersection at " + k[i].str() + " is not an interval",
                  k[i].to_vector());
    parts.emplace(key, iv);
  }
  VectorField out;
  for (auto& [key, iv] : parts) out.intervals.push_back(iv);
  out.sort();
  locate_intervals(k, out);
  return out;
}

VectorField restrict_gradient(const VectorField& v, const SimplicialComplex& l) {
  VectorField out;
  for (const auto& iv : v.intervals) {
    if (l.contains(iv.top)) {
      out.intervals.push_back(iv);
    } else if (l.contains(iv.bottom)) {
      throw Error(ErrorKind::NotUnionOfIntervals,
                  "interval [" + iv.bottom.str() + ", " + iv.top.str() + "] crosses the subcomplex",
                  iv.top.to_vector());
    }
  }
  return out;
}

VectorField refine_to_pairs(const VectorField& v) {
  VectorField out;
  for (const auto& iv : v.intervals) {
    if (iv.top.size() <= iv.bottom.size() + 1) {
      out.intervals.push_back(iv);
      continue;
    }
    const std::vector<int> extra = extra_vertices(iv);
    const int apex = extra.front();
    const Interval rest{iv.bottom, iv.top.without(apex)};
    for (const Simplex& eta : rest.members()) out.intervals.push_back({eta, eta.with(apex)});
  }
  out.sort();
  return out;
}

std::string CollapseTrace::str() const {
  std::ostringstream os;
  for (const auto& st : steps)
    os << st.free_face.dim() << " | " << st.free_face.str() << " | " << st.coface.str() << '\n';
  return os.str();
}

CollapseTrace execute_collapse(const SimplicialComplex& k, const VectorField& v,
                               const SimplicialComplex& l,
                               const std::function<double(const Simplex&)>& priority) {
  const auto loc = locate_intervals(k, v);
  if (!l.is_subcomplex_of(k))
    throw Error(ErrorKind::NotCollapsible, "target is not a subcomplex of the source");
  VectorField outside;
  std::vector<bool> used(v.intervals.size(), false);
  for (std::size_t i = 0; i < k.size(); ++i) used[loc[i]] = true;
  for (std::size_t i = 0; i < v.intervals.size(); ++i) {
    if (!used[i]) continue;
    const Interval& iv = v.intervals[i];
    if (l.contains(iv.top)) continue;
    if (l.contains(iv.bottom))
      throw Error(ErrorKind::NotCollapsible,
                  "interval [" + iv.bottom.str() + ", " + iv.top.str() + "] crosses the target",
                  iv.top.to_vector());
    if (iv.singleton())
      throw Error(ErrorKind::NotCollapsible, "critical simplex " + iv.top.str() + " outside target",
                  iv.top.to_vector());
    if (!k.contains(iv.top))
      throw Error(ErrorKind::NotCollapsible, "interval leaves the source at " + iv.top.str(),
                  iv.top.to_vector());
    outside.intervals.push_back(iv);
  }
  const HasseDiagram h = hasse_diagram(k);
  if (!quotient_is_acyclic(k, h, loc, v.intervals.size()))
    throw Error(ErrorKind::NotCollapsible, "vector field is not acyclic");

  const VectorField pairs = refine_to_pairs(outside);
  const std::size_t np = pairs.intervals.size();
  std::vector<std::size_t> pair_of(k.size(), kNone);
  std::vector<std::array<std::size_t, 2>> idx(np);
  for (std::size_t p = 0; p < np; ++p) {
    idx[p] = {*k.index_of(pairs.intervals[p].bottom), *k.index_of(pairs.intervals[p].top)};
    pair_of[idx[p][0]] = p;
    pair_of[idx[p][1]] = p;
  }
  // A pair waits for every pair holding a coface of its simplices.
  std::vector<std::vector<std::size_t>> succ(np);
  std::vector<std::size_t> indeg(np, 0);
  for (std::size_t q = 0; q < np; ++q)
    for (std::size_t s : idx[q])
      for (std::size_t c : h.cofacets[s]) {
        const std::size_t p = pair_of[c];
        if (p == kNone || p == q) continue;
        succ[p].push_back(q);
        ++indeg[q];
      }

  std::vector<double> prio(np, 0.0);
  if (priority)
    for (std::size_t p = 0; p < np; ++p) prio[p] = priority(pairs.intervals[p].top);
  auto later = [&](std::size_t a, std::size_t b) {
    if (prio[a] != prio[b]) return prio[a] < prio[b];
    const Simplex& sa = pairs.intervals[a].top;
    const Simplex& sb = pairs.intervals[b].top;
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    return sb < sa;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(later)> ready(later);
  for (std::size_t p = 0; p < np; ++p)
    if (indeg[p] == 0) ready.push(p);

  std::vector<bool> present(k.size(), true);
  CollapseTrace trace;
  while (!ready.empty()) {
    const std::size_t p = ready.top();
    ready.pop();
    const auto [tau, sigma] = idx[p];
    for (std::size_t c : h.cofacets[sigma])
      if (present[c])
        throw Error(ErrorKind::StuckCollapse, k[sigma].str() + " still has coface " + k[c].str(),
                    k[sigma].to_vector());
    for (std::size_t c : h.cofacets[tau])
      if (present[c] && c != sigma)
        throw Error(ErrorKind::StuckCollapse,
                    k[tau].str() + " is not free: coface " + k[c].str() + " remains",
                    k[tau].to_vector());
    present[tau] = present[sigma] = false;
    trace.steps.push_back({k[tau], k[sigma]});
    for (std::size_t q : succ[p])
      if (--indeg[q] == 0) ready.push(q);
  }
  if (trace.steps.size() != np)
    throw Error(ErrorKind::NotCollapsible, "pairs form a cycle");
  for (std::size_t i = 0; i < k.size(); ++i)
    if (present[i] != l.contains(k[i]))
      throw Error(ErrorKind::StuckCollapse, "collapse did not end at the target", k[i].to_vector());
  return trace;
}

// ---------------------------------------------------------------------------

bool FaceClassification::is_upper(const Simplex& face) const {
  return face != sigma && !upper_min.empty() && upper_min.is_face_of(face) && face.is_face_of(sigma);
}

bool FaceClassification::is_lower(const Simplex& face) const {
  return face != sigma && !lower_min.empty() && lower_min.is_face_of(face) && face.is_face_of(sigma);
}

FaceClassification upper_lower_faces(const Simplex& sigma, const PointList& coords, const Point& z,
                                     bool allow_side) {
  const int n = sigma.size();
  if (static_cast<int>(coords.size()) != n)
    throw Error(ErrorKind::LengthMismatch, "one coordinate vector per vertex expected");
  FaceClassification out;
  out.sigma = sigma;
  std::vector<int> upper, lower;
  for (int i = 0; i < n && n >= 2; ++i) {
    PointList others;
    for (int j = 0; j < n; ++j)
      if (j != i) others.push_back(coords[j]);
    Point foot = others[0];
    if (others.size() > 1) {
      Eigen::MatrixXd a(others[0].size(), others.size() - 1);
      for (std::size_t j = 1; j < others.size(); ++j) a.col(j - 1) = others[j] - others[0];
      const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(coords[i] - others[0]);
      foot = others[0] + a * coef;
    }
    // Outward: from the opposite vertex towards the facet.
    const Point normal = foot - coords[i];
    const double dot = normal.dot(z);
    if (std::abs(dot) <= 1e-12 * normal.norm() * z.norm()) {
      if (!allow_side)
        throw Error(ErrorKind::NotTransverse,
                    "facet opposite " + std::to_string(sigma[i]) + " of " + sigma.str() +
                        " is parallel to the direction",
                    sigma.without(sigma[i]).to_vector());
      out.facet_side.push_back(0);
      upper.push_back(sigma[i]);
      lower.push_back(sigma[i]);
      continue;
    }
    out.facet_side.push_back(dot > 0 ? 1 : -1);
    (dot > 0 ? upper : lower).push_back(sigma[i]);
  }
  out.upper_min = upper.empty() ? Simplex{} : sigma.set_difference(Simplex(upper));
  out.lower_min = lower.empty() ? Simplex{} : sigma.set_difference(Simplex(lower));
  return out;
}

VerticalGradient vertical_gradient(const ChromaticPointCloud& cloud, const Colouring& nu_in) {
  const Colouring& mu = cloud.colours;
  if (nu_in.size() != mu.size())
    throw Error(ErrorKind::LengthMismatch, "colourings have different lengths");
  if (!is_elementary_refinement(nu_in, mu))
    throw Error(ErrorKind::NotRefinement, "not an elementary refinement");
  const Colouring nu = canonicalize_colouring(nu_in);

  // The nu class that splits off a mu class: the larger label of the two.
  std::map<int, std::set<int>> parts;
  for (std::size_t i = 0; i < mu.size(); ++i) parts[mu[i]].insert(nu[i]);
  VerticalGradient g;
  for (const auto& [m, cs] : parts)
    if (cs.size() == 2) g.split_class = *cs.rbegin();

  const PointList lift = chromatic_lift(cloud);
  const int dim = cloud.d + cloud.s;
  PointList z(lift.size(), Point::Zero(dim + 1));
  for (std::size_t i = 0; i < lift.size(); ++i) {
    z[i].head(dim) = lift[i];
    z[i][dim] = nu[i] == g.split_class ? 1.0 : 0.0;
  }
  g.fine = delaunay_triangulation(z);
  g.membrane = chromatic_delaunay(cloud).complex;
  g.morse_offset = dim;
  if (!g.membrane.is_subcomplex_of(g.fine.complex))
    throw Error(ErrorKind::MissingSimplex, "coarse complex does not embed");

  if (g.fine.top_dimension == dim + 1) {
    Point up = Point::Zero(dim + 1);
    up[dim] = 1.0;
    for (const Simplex& top : g.fine.tops) {
      PointList coords;
      for (int v : top) coords.push_back(z[v]);
      const double h = circumsphere_through(coords).centre[dim];
      const FaceClassification fc = upper_lower_faces(top, coords, up, true);
      g.height[top] = h;
      g.field.intervals.push_back({h > 0.5 ? fc.upper_min : fc.lower_min, top});
    }
  }
  for (const Simplex& s : g.membrane) g.field.intervals.push_back({s, s});
  g.field.sort();
  const auto loc = locate_intervals(g.fine.complex, g.field);
  for (std::size_t i = 0; i < loc.size(); ++i) g.class_of[g.fine.complex[i]] = loc[i];
  return g;
}

double quotient_height(const VerticalGradient& g, const Simplex& sigma) {
  const Interval& iv = g.field.intervals[g.class_of.at(sigma)];
  if (iv.singleton()) return sigma.dim();
  const double h = g.height.at(iv.top) - 0.5;
  return h * h + g.morse_offset;
}

bool height_is_morse(const VerticalGradient& g) {
  const SimplicialComplex& k = g.fine.complex;
  for (const Simplex& s : k) {
    if (s.size() < 2) continue;
    const std::size_t cs = g.class_of.at(s);
    for (const Simplex& f : s.facets())
      if (g.class_of.at(f) != cs && !(quotient_height(g, s) > quotient_height(g, f))) return false;
  }
  return true;
}

VectorField gradient_from_stacks(const ChromaticPointCloud& cloud, const SimplicialComplex& k,
                                 const std::vector<StackSolution>& stacks, const VertexSet& E,
                                 bool inside_only) {
  std::set<Interval> seen;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const StackSolution& sol = stacks[i];
    const Simplex front(sol.cert.front());
    const Simplex incl(included_points(extend_stack(sol.stack, cloud, E), cloud));
    if (!front.is_face_of(k[i]) || !k[i].is_face_of(incl))
      throw Error(ErrorKind::PartitionFailure,
                  "simplex " + k[i].str() + " outside [" + front.str() + ", " + incl.str() + "]",
                  k[i].to_vector());
    if (inside_only && !k.contains(incl))
      throw Error(ErrorKind::PartitionFailure, "interval top " + incl.str() + " not in complex",
                  incl.to_vector());
    seen.insert({front, incl});
  }
  VectorField v;
  v.intervals.assign(seen.begin(), seen.end());
  locate_intervals(k, v);
  return v;
}

VectorField filtration_gradient(const ChromaticPointCloud& cloud, const SelectiveFiltration& f) {
  return gradient_from_stacks(cloud, f.filtration.complex, f.stacks, f.E, true);
}

VectorField cech_gradient(const ChromaticPointCloud& cloud, const SimplicialComplex& k,
                          int threads) {
  std::vector<StackSolution> stacks(k.size());
  parallel_for(k.size(), threads, [&](std::size_t i) { stacks[i] = *min_stack(cloud, k[i], {}); });
  return gradient_from_stacks(cloud, k, stacks, {}, false);
}

bool is_morse_function(const SimplicialComplex& k, const VectorField& v,
                       const std::vector<double>& values, double tol) {
  const auto loc = locate_intervals(k, v);
  std::vector<double> first(v.intervals.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < k.size(); ++i) {
    double& f = first[loc[i]];
    if (std::isnan(f))
      f = values[i];
    else if (std::abs(f - values[i]) > tol)
      return false;
  }
  const HasseDiagram h = hasse_diagram(k);
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j : h.facets[i])
      if (loc[i] != loc[j] && !(values[i] > values[j] + tol)) return false;
  return true;
}

// ---------------------------------------------------------------------------

std::vector<Colouring> refinement_chain(const Colouring& nu, const Colouring& mu) {
  if (!is_refinement(nu, mu)) throw Error(ErrorKind::NotRefinement, "nu does not refine mu");
  std::vector<Colouring> chain{canonicalize_colouring(nu)};
  const Colouring target = canonicalize_colouring(mu);
  auto classes = [](const Colouring& c) { return *std::max_element(c.begin(), c.end()) + 1; };
  while (classes(chain.back()) > classes(target)) {
    const Colouring& cur = chain.back();
    // Smallest pair of labels inside one class of mu.
    std::map<int, int> owner;  // mu label -> smallest cur label seen
    int a = -1, b = -1;
    for (int lab = 0; lab < classes(cur) && a < 0; ++lab) {
      int m = -1;
      for (std::size_t i = 0; i < cur.size(); ++i)
        if (cur[i] == lab) m = target[i];
      auto [it, fresh] = owner.emplace(m, lab);
      if (!fresh) {
        a = it->second;
        b = lab;
      }
    }
    Colouring next = cur;
    for (int& c : next)
      if (c == b) c = a;
    chain.push_back(canonicalize_colouring(next));
  }
  return chain;
}

namespace {

struct Level {
  SimplicialComplex source;
  SimplicialComplex target;
  VectorField field;
};

// Values of a function that is constant on the intervals of v, read off
// each interval's bottom simplex; returns the largest correction.
double snap_to_bottoms(const SimplicialComplex& k, const VectorField& v, std::vector<double>& values,
                       const std::function<double(const Simplex&)>& raw) {
  const auto loc = locate_intervals(k, v);
  double worst = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const Simplex& b = v.intervals[loc[i]].bottom;
    const double snapped = raw(b);
    worst = std::max(worst, std::abs(snapped - values[i]));
    values[i] = snapped;
  }
  return worst;
}

// Values that agree up to tol (e.g. the alpha and Cech radius of one ball,
// computed along different routes) are replaced by a common representative so
// that sublevel sets nest exactly.
void unify_values(const std::vector<std::vector<double>*>& lists, double tol) {
  std::vector<double> all;
  for (const auto* l : lists) all.insert(all.end(), l->begin(), l->end());
  std::sort(all.begin(), all.end());
  std::vector<double> rep(all.size());
  for (std::size_t i = 0; i < all.size(); ++i)
    rep[i] = i > 0 && all[i] - all[i - 1] <= tol ? rep[i - 1] : all[i];
  for (auto* l : lists)
    for (double& x : *l) x = rep[std::lower_bound(all.begin(), all.end(), x) - all.begin()];
}

SimplicialComplex sublevel(const SimplicialComplex& k, const std::vector<double>& values, double r) {
  std::vector<Simplex> keep;
  for (std::size_t i = 0; i < k.size(); ++i)
    if (values[i] <= r) keep.push_back(k[i]);
  return SimplicialComplex::from_simplices(std::move(keep));
}

double meb_of(const ChromaticPointCloud& cloud, const Simplex& s) {
  PointList pts;
  for (int v : s) pts.push_back(cloud.points[v]);
  return min_enclosing_ball(pts).radius;
}

}  // namespace

CollapseReport verify_collapse_theorems(const ChromaticPointCloud& cloud, const Colouring& nu,
                                        const CollapseOptions& opt) {
  const Colouring mu = cloud.colours;
  if (!is_refinement(nu, mu)) throw Error(ErrorKind::NotRefinement, "nu does not refine mu");
  CollapseReport rep;
  const double scale = std::max(cloud.diameter(), 1e-300);
  auto cech_raw = [&](const Simplex& s) { return meb_of(cloud, s); };

  // One collapse problem per elementary refinement: the fine DelCech
  // complex, the coarse one inside it, and the sum of the Cech gradient with
  // the vertical gradient.
  struct Link {
    SimplicialComplex fine, coarse;
    VectorField field;
    std::vector<double> fine_values, coarse_values;
  };
  auto links_for = [&](const Colouring& from) {
    std::vector<Link> links;
    const auto chain = refinement_chain(from, mu);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      const VerticalGradient g = vertical_gradient(recolour(cloud, chain[i + 1]), chain[i]);
      Link ln;
      ln.fine = g.fine.complex;
      ln.coarse = g.membrane;
      const VectorField cech = cech_gradient(cloud, ln.fine, opt.threads);
      ln.field = sum_refine(ln.fine, cech, g.field);
      ln.fine_values.resize(ln.fine.size());
      for (std::size_t j = 0; j < ln.fine.size(); ++j) ln.fine_values[j] = cech_raw(ln.fine[j]);
      rep.max_snap = std::max(rep.max_snap, snap_to_bottoms(ln.fine, cech, ln.fine_values, cech_raw));
      for (const Simplex& s : ln.coarse) ln.coarse_values.push_back(ln.fine_values[*ln.fine.index_of(s)]);
      links.push_back(std::move(ln));
    }
    return links;
  };

  std::vector<Link> refine_links, cech_links;
  if (opt.refinement) refine_links = links_for(nu);
  if (opt.chain) cech_links = links_for(maximal_colouring(cloud.size()));

  // DelCech onto Alpha.
  SimplicialComplex del;
  VectorField omega;
  std::vector<double> del_cech, del_alpha;
  if (opt.chain) {
    del = chromatic_delaunay(cloud).complex;
    VertexSet all(cloud.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    const SelectiveFiltration alpha = selective_on_complex(cloud, del, all, {-1, opt.threads});
    const VectorField wa = gradient_from_stacks(cloud, del, alpha.stacks, all, true);
    const VectorField wc = cech_gradient(cloud, del, opt.threads);
    omega = sum_refine(del, wc, wa);
    del_cech.resize(del.size());
    for (std::size_t j = 0; j < del.size(); ++j) del_cech[j] = cech_raw(del[j]);
    rep.max_snap = std::max(rep.max_snap, snap_to_bottoms(del, wc, del_cech, cech_raw));
    del_alpha = alpha.filtration.values;
    auto alpha_raw = [&](const Simplex& s) { return alpha.filtration.value(s); };
    rep.max_snap = std::max(rep.max_snap, snap_to_bottoms(del, wa, del_alpha, alpha_raw));
  }
  if (rep.max_snap > 1e-9 * scale)
    throw Error(ErrorKind::NumericalFailure, "filtration values vary inside an interval");
  {
    std::vector<std::vector<double>*> lists{&del_cech, &del_alpha};
    for (auto* links : {&refine_links, &cech_links})
      for (Link& ln : *links) lists.push_back(&ln.fine_values);
    unify_values(lists, 1e-11 * scale);
    for (auto* links : {&refine_links, &cech_links})
      for (Link& ln : *links)
        for (std::size_t j = 0; j < ln.coarse.size(); ++j)
          ln.coarse_values[j] = ln.fine_values[*ln.fine.index_of(ln.coarse[j])];
  }

  if (opt.radii) {
    rep.radii = *opt.radii;
  } else {
    std::vector<double> crit;
    for (const auto* links : {&refine_links, &cech_links})
      for (const Link& ln : *links) crit.insert(crit.end(), ln.fine_values.begin(), ln.fine_values.end());
    crit.insert(crit.end(), del_cech.begin(), del_cech.end());
    crit.insert(crit.end(), del_alpha.begin(), del_alpha.end());
    std::sort(crit.begin(), crit.end());
    crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
    for (std::size_t i = 0; i < crit.size(); ++i) {
      rep.radii.push_back(crit[i]);
      if (i + 1 < crit.size()) rep.radii.push_back(0.5 * (crit[i] + crit[i + 1]));
    }
    rep.radii.push_back(kInfinity);
  }

  auto run = [&](const char* step, double r, const SimplicialComplex& k, const std::vector<double>& kv,
                 const SimplicialComplex& l, const std::vector<double>& lv, const VectorField& v,
                 const std::vector<double>& prio) {
    const SimplicialComplex kr = sublevel(k, kv, r);
    const SimplicialComplex lr = sublevel(l, lv, r);
    const VectorField vr = restrict_gradient(v, kr);
    auto priority = [&](const Simplex& s) { return prio[*k.index_of(s)]; };
    const CollapseTrace t = execute_collapse(kr, vr, lr, priority);
    rep.checks.push_back({step, r, kr.size(), lr.size(), t.steps.size()});
  };

  FilteredComplex same;
  if (opt.refinement && refine_links.empty()) same = del_cech_filtration(cloud, {-1, opt.threads});

  for (double r : rep.radii) {
    for (const Link& ln : refine_links)
      run("refinement", r, ln.fine, ln.fine_values, ln.coarse, ln.coarse_values, ln.field, ln.fine_values);
    if (opt.refinement && refine_links.empty()) {
      // nu = mu: nothing to collapse.
      const std::size_t n = sublevel(same.complex, same.values, r).size();
      rep.checks.push_back({"refinement", r, n, n, 0});
    }
    for (const Link& ln : cech_links)
      run("cech", r, ln.fine, ln.fine_values, ln.coarse, ln.coarse_values, ln.field, ln.fine_values);
    if (opt.chain) run("alpha", r, del, del_cech, del, del_alpha, omega, del_cech);
  }
  return rep;
}

}  // namespace ctda
