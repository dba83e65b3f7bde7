#include "ctda/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <unordered_map>

#include <gmpxx.h>

#include "ctda/errors.hpp"
#include "ctda/rng.hpp"

namespace ctda {

namespace {

// Distances to lower hull facets below this (in normalized lifted
// coordinates) are treated as co-spherical input.
constexpr double kHullTol = 1e-10;
// Floating-point side tests are trusted beyond this distance on facets
// whose QR factor is well conditioned; everything else is decided exactly.
constexpr double kFilter = 1e-9;
constexpr double kWellConditioned = 1e-6;

struct Facet {
  std::vector<int> v;   // D vertex ids
  std::vector<int> nb;  // nb[i]: facet across the ridge opposite v[i]
  Eigen::VectorXd normal;
  double offset = 0.0;
  bool well = true;  // normal accurate enough for the filter
  int lower = 0;     // cached: 1 lower, -1 not lower, 0 unknown
  bool alive = true;
  std::uint32_t stamp = 0;
  bool visible = false;
  std::vector<int> outside;  // pending points that see this facet
};

// Sign of the determinant of the square matrix with the given columns, in
// exact rational arithmetic (every double is a dyadic rational).
int det_sign(std::vector<std::vector<mpq_class>> a) {
  const std::size_t n = a.size();
  int sign = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && sgn(a[piv][c]) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      sign = -sign;
    }
    if (sgn(a[c][c]) < 0) sign = -sign;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (sgn(a[r][c]) == 0) continue;
      const mpq_class f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return sign;
}

struct RidgeKeyHash {
  std::size_t operator()(const std::vector<int>& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (int x : k) {
      h ^= static_cast<std::uint64_t>(x);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// Incremental convex hull in R^D of points known to be in convex position
// (every point is a vertex), e.g. paraboloid lifts.
class ConvexHull {
 public:
  ConvexHull(const std::vector<Eigen::VectorXd>& pts, std::uint64_t seed)
      : p_(pts), dim_(static_cast<int>(pts[0].size())) {
    std::vector<int> simplex = initial_simplex();
    interior_ = Eigen::VectorXd::Zero(dim_);
    for (int i : simplex) interior_ += p_[i];
    interior_ /= static_cast<double>(simplex.size());

    for (int j = 0; j <= dim_; ++j) {
      Facet f;
      for (int k = 0; k <= dim_; ++k)
        if (k != j) {
          f.v.push_back(simplex[k]);
          f.nb.push_back(k);  // facet k is opposite simplex[k]
        }
      facets_.push_back(std::move(f));
    }
    for (auto& f : facets_) set_plane(f);

    std::vector<char> used(p_.size(), 0);
    for (int i : simplex) used[i] = 1;
    std::vector<int> order;
    for (std::size_t i = 0; i < p_.size(); ++i)
      if (!used[i]) order.push_back(static_cast<int>(i));
    SplitMix64 rng(seed);
    rng.shuffle(order);
    owner_.assign(p_.size(), -1);
    std::vector<int> all(facets_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    for (int i : order) assign(i, all);
    for (int i : order) insert(i);
  }

  // Facets whose outward normal points down in the last coordinate.
  std::vector<std::vector<int>> lower_facets() {
    std::vector<std::vector<int>> out;
    for (Facet& f : facets_)
      if (f.alive && is_lower(f)) out.push_back(f.v);
    return out;
  }

 private:
  const std::vector<Eigen::VectorXd>& p_;
  int dim_;
  Eigen::VectorXd interior_;
  std::vector<Facet> facets_;
  std::vector<int> free_;
  std::vector<int> owner_;  // facet holding each pending point, -1 otherwise
  std::uint32_t stamp_ = 0;

  [[noreturn]] static void degenerate(std::vector<int> witness) {
    std::sort(witness.begin(), witness.end());
    throw Error(ErrorKind::NotSimplicial,
                "near-cospherical input: lifted points on a common hyperplane", witness);
  }

  // Exact orientation of the facet's vertices followed by q (a point, or a
  // direction when is_direction).
  int orient(const Facet& f, const Eigen::VectorXd& q, bool is_direction) const {
    const Eigen::VectorXd& o = p_[f.v[0]];
    // Shared coordinates (flat faces of a chromatic lift) give a zero row.
    for (int r = 0; r < dim_; ++r) {
      bool zero = is_direction ? q[r] == 0.0 : q[r] == o[r];
      for (int c = 1; c < dim_ && zero; ++c) zero = p_[f.v[c]][r] == o[r];
      if (zero) return 0;
    }
    std::vector<std::vector<mpq_class>> rows(dim_, std::vector<mpq_class>(dim_));
    for (int r = 0; r < dim_; ++r) {
      const mpq_class base(o[r]);
      for (int c = 1; c < dim_; ++c) rows[r][c - 1] = mpq_class(p_[f.v[c]][r]) - base;
      rows[r][dim_ - 1] = is_direction ? mpq_class(q[r]) : mpq_class(q[r]) - base;
    }
    return det_sign(std::move(rows));
  }

  // +1 when q is strictly outside the facet's hyperplane, 0 on it, -1 inside.
  int side(const Facet& f, const Eigen::VectorXd& q, bool is_direction = false) const {
    const double dist = is_direction ? f.normal.dot(q) : f.normal.dot(q) - f.offset;
    if (f.well && std::abs(dist) > kFilter) return dist > 0 ? 1 : -1;
    const int inner = orient(f, interior_, false);
    return -inner * orient(f, q, is_direction);
  }

  // Lower facets have the upward direction pointing into the hull. Vertical
  // faces (e.g. the colour classes of a chromatic lift) are not lower.
  bool is_lower(Facet& f) const {
    if (f.lower == 0) {
      Eigen::VectorXd up = Eigen::VectorXd::Zero(dim_);
      up[dim_ - 1] = 1.0;
      f.lower = side(f, up, true) < 0 ? 1 : -1;
    }
    return f.lower > 0;
  }

  // Visibility of point pi. Points on the plane of a lower facet form a
  // co-spherical configuration; on flat vertical or upper faces they are
  // simply not visible and the face gets triangulated.
  bool visible_from(Facet& f, int pi) {
    const double dist = f.normal.dot(p_[pi]) - f.offset;
    if (std::abs(dist) <= kHullTol && is_lower(f)) {
      std::vector<int> w = f.v;
      w.push_back(pi);
      degenerate(w);
    }
    const int sd = side(f, p_[pi]);
    if (sd == 0 && is_lower(f)) {
      std::vector<int> w = f.v;
      w.push_back(pi);
      degenerate(w);
    }
    return sd > 0;
  }

  std::vector<int> initial_simplex() const {
    std::vector<int> chosen{0};
    std::vector<Eigen::VectorXd> basis;
    for (int step = 0; step < dim_; ++step) {
      double best = -1.0;
      int arg = -1;
      for (std::size_t i = 0; i < p_.size(); ++i) {
        Eigen::VectorXd r = p_[i] - p_[chosen[0]];
        for (const auto& b : basis) r -= r.dot(b) * b;
        const double len = r.norm();
        if (len > best) {
          best = len;
          arg = static_cast<int>(i);
        }
      }
      if (best <= kHullTol) degenerate(chosen);
      Eigen::VectorXd r = p_[arg] - p_[chosen[0]];
      for (const auto& b : basis) r -= r.dot(b) * b;
      basis.push_back(r / r.norm());
      chosen.push_back(arg);
    }
    return chosen;
  }

  void set_plane(Facet& f) const {
    Eigen::MatrixXd a(dim_, dim_ - 1);
    for (int i = 1; i < dim_; ++i) a.col(i - 1) = p_[f.v[i]] - p_[f.v[0]];
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::VectorXd diag = qr.matrixQR().diagonal().cwiseAbs();
    f.well = diag.minCoeff() > kWellConditioned * diag.maxCoeff();
    Eigen::VectorXd n = q.col(dim_ - 1);
    double off = n.dot(p_[f.v[0]]);
    if (n.dot(interior_) - off > 0) {
      n = -n;
      off = -off;
    }
    f.normal = std::move(n);
    f.offset = off;
  }

  int new_facet() {
    if (!free_.empty()) {
      int id = free_.back();
      free_.pop_back();
      facets_[id] = Facet{};
      return id;
    }
    facets_.emplace_back();
    return static_cast<int>(facets_.size()) - 1;
  }

  // Every pending point is outside the current hull (convex position), so
  // it sees one of the candidate facets.
  void assign(int pi, const std::vector<int>& candidates) {
    for (int fid : candidates)
      if (visible_from(facets_[fid], pi)) {
        owner_[pi] = fid;
        facets_[fid].outside.push_back(pi);
        return;
      }
    throw Error(ErrorKind::NumericalFailure, "point not outside the current hull");
  }

  void insert(int pi) {
    ++stamp_;
    const int start = owner_[pi];
    owner_[pi] = -1;

    // The visible region is connected: walk it from the start facet.
    std::vector<int> visible{start};
    facets_[start].stamp = stamp_;
    facets_[start].visible = true;
    for (std::size_t q = 0; q < visible.size(); ++q) {
      const int fid = visible[q];
      for (int g : facets_[fid].nb) {
        Facet& nf = facets_[g];
        if (nf.stamp == stamp_) continue;
        nf.stamp = stamp_;
        nf.visible = visible_from(nf, pi);
        if (nf.visible) visible.push_back(g);
      }
    }

    // One new facet per horizon ridge.
    std::vector<int> created;
    for (int fid : visible) {
      for (int i = 0; i < dim_; ++i) {
        const int g = facets_[fid].nb[i];
        if (facets_[g].visible && facets_[g].stamp == stamp_) continue;
        const int nid = new_facet();
        Facet& nf = facets_[nid];
        const Facet& old = facets_[fid];
        nf.v = old.v;
        nf.v[i] = pi;
        nf.nb.assign(dim_, -1);
        nf.nb[i] = g;
        for (int& slot : facets_[g].nb)
          if (slot == fid) slot = nid;
        created.push_back(nid);
      }
    }

    // Link new facets to each other across ridges containing pi.
    std::unordered_map<std::vector<int>, std::pair<int, int>, RidgeKeyHash> open;
    for (int nid : created) {
      for (int j = 0; j < dim_; ++j) {
        if (facets_[nid].v[j] == pi) continue;
        std::vector<int> key;
        key.reserve(dim_ - 1);
        for (int k = 0; k < dim_; ++k)
          if (k != j) key.push_back(facets_[nid].v[k]);
        std::sort(key.begin(), key.end());
        auto it = open.find(key);
        if (it == open.end()) {
          open.emplace(std::move(key), std::make_pair(nid, j));
        } else {
          facets_[nid].nb[j] = it->second.first;
          facets_[it->second.first].nb[it->second.second] = nid;
          open.erase(it);
        }
      }
    }
    if (!open.empty()) throw Error(ErrorKind::NumericalFailure, "hull horizon is not closed");

    for (int nid : created) set_plane(facets_[nid]);
    // Points that saw a removed facet see one of the new ones.
    for (int fid : visible)
      for (int q : facets_[fid].outside)
        if (owner_[q] == fid) assign(q, created);
    for (int fid : visible) {
      facets_[fid].alive = false;
      facets_[fid].visible = false;
      facets_[fid].outside.clear();
      free_.push_back(fid);
    }
  }
};

}  // namespace

Triangulation delaunay_triangulation(const PointList& points, const DelaunayOptions& opt) {
  const std::size_t n = points.size();
  if (n == 0) throw Error(ErrorKind::DegenerateInput, "no points");
  const long m = points[0].size();
  for (const Point& p : points)
    if (p.size() != m) throw Error(ErrorKind::DimensionMismatch, "ragged point list");

  Triangulation tri;
  tri.coordinates = points;

  Point centre = Point::Zero(m);
  for (const Point& p : points) centre += p;
  centre /= static_cast<double>(n);
  double scale = 0.0;
  for (const Point& p : points) scale = std::max(scale, (p - centre).norm());

  // Work inside the affine hull of the input.
  int k = 0;
  Eigen::MatrixXd basis;
  if (n > 1 && scale > 0) {
    Eigen::MatrixXd c(n, m);
    for (std::size_t i = 0; i < n; ++i) c.row(i) = ((points[i] - centre) / scale).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    for (long i = 0; i < sv.size(); ++i)
      if (sv[i] > kRelTol * sv[0]) ++k;
    // A full-dimensional input keeps its own axes, so that points sharing a
    // coordinate (a colour class of a chromatic lift) still share it exactly.
    basis = k == m ? Eigen::MatrixXd::Identity(m, m) : Eigen::MatrixXd(svd.matrixV().leftCols(k));
  }
  if (k > opt.dim_cap)
    throw Error(ErrorKind::DimensionTooLarge,
                "affine dimension " + std::to_string(k) + " exceeds cap " + std::to_string(opt.dim_cap));

  if (static_cast<std::size_t>(k) + 1 >= n) {
    if (static_cast<std::size_t>(k) + 1 != n && n > 1)
      throw Error(ErrorKind::DegenerateInput, "points are affinely dependent");
    std::vector<int> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);
    if (n > static_cast<std::size_t>(Simplex::kMaxVertices))
      throw Error(ErrorKind::SizeLimitExceeded, "simplex too large");
    tri.tops = {Simplex(all)};
  } else {
    std::vector<Eigen::VectorXd> lifted(n);
    for (std::size_t i = 0; i < n; ++i) {
      Eigen::VectorXd y = basis.transpose() * ((points[i] - centre) / scale);
      lifted[i].resize(k + 1);
      lifted[i].head(k) = y;
      lifted[i][k] = y.squaredNorm();
    }
    ConvexHull hull(lifted, opt.shuffle_seed);
    for (auto& f : hull.lower_facets()) tri.tops.push_back(Simplex(f));
    if (tri.tops.empty()) throw Error(ErrorKind::NumericalFailure, "empty lower hull");
  }
  std::sort(tri.tops.begin(), tri.tops.end());
  tri.top_dimension = tri.tops.front().dim();
  tri.complex = SimplicialComplex::from_maximal(tri.tops);
  return tri;
}

Triangulation chromatic_delaunay(const ChromaticPointCloud& cloud, const DelaunayOptions& opt) {
  return delaunay_triangulation(chromatic_lift(cloud), opt);
}

bool delaunay_membership_oracle(const PointList& points, const Simplex& sigma) {
  const int n = static_cast<int>(points.size());
  const int m = static_cast<int>(points[0].size());
  PointList base;
  for (int v : sigma) base.push_back(points[v]);
  if (affine_dimension(base) != sigma.dim())
    throw Error(ErrorKind::DegenerateInput, "simplex is affinely dependent", sigma.to_vector());

  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, (points[i] - points[0]).norm());
  const double tol = kRelTol * std::max(scale, 1e-300);

  std::vector<int> others;
  for (int i = 0; i < n; ++i)
    if (!sigma.contains(i)) others.push_back(i);

  // Try sigma plus every extra set T with |sigma| + |T| <= m + 1.
  std::vector<int> extra;
  std::function<bool(std::size_t)> rec = [&](std::size_t from) -> bool {
    PointList support = base;
    for (int e : extra) support.push_back(points[e]);
    if (affine_dimension(support) == static_cast<int>(support.size()) - 1) {
      Sphere s = circumsphere_through(support);
      bool empty = true;
      for (int o : others)
        if ((points[o] - s.centre).norm() < s.radius - tol) {
          empty = false;
          break;
        }
      if (empty) return true;
    } else {
      return false;  // supersets stay dependent
    }
    if (static_cast<int>(support.size()) == m + 1) return false;
    for (std::size_t i = from; i < others.size(); ++i) {
      extra.push_back(others[i]);
      if (rec(i + 1)) return true;
      extra.pop_back();
    }
    return false;
  };
  return rec(0);
}

namespace {

// Local validity of a triangulation in R^D: full-dimensional tops, every
// ridge shared by at most two tops which lie on opposite sides of it.
bool locally_valid(const PointList& coords, const std::vector<Simplex>& tops) {
  if (tops.empty()) return true;
  const int dim = static_cast<int>(coords[0].size());
  if (tops.front().size() != dim + 1) return true;
  std::map<Simplex, std::vector<int>> ridges;  // ridge -> opposite vertices
  for (const Simplex& t : tops) {
    PointList pts;
    for (int v : t) pts.push_back(coords[v]);
    if (affine_dimension(pts) != dim) return false;
    for (int v : t) ridges[t.without(v)].push_back(v);
  }
  for (const auto& [ridge, opp] : ridges) {
    if (opp.size() > 2) return false;
    if (opp.size() < 2) continue;
    Eigen::MatrixXd a(dim, dim - 1);
    for (int i = 1; i < ridge.size(); ++i) a.col(i - 1) = coords[ridge[i]] - coords[ridge[0]];
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::VectorXd nrm = q.col(dim - 1);
    const double s0 = nrm.dot(coords[opp[0]] - coords[ridge[0]]);
    const double s1 = nrm.dot(coords[opp[1]] - coords[ridge[0]]);
    if (s0 * s1 >= 0) return false;
  }
  return true;
}

}  // namespace

EmbeddingReport embed_subcomplex(const ChromaticPointCloud& cloud, const Colouring& mu,
                                 const Colouring& nu) {
  if (!is_refinement(nu, mu))
    throw Error(ErrorKind::NotRefinement, "nu does not refine mu");
  ChromaticPointCloud cm = recolour(cloud, mu), cn = recolour(cloud, nu);
  Triangulation coarse = chromatic_delaunay(cm);
  Triangulation fine = chromatic_delaunay(cn);
  EmbeddingReport rep;
  for (const Simplex& s : coarse.complex) {
    ++rep.checked;
    if (!fine.complex.contains(s)) {
      rep.all_present = false;
      rep.missing = s;
      throw Error(ErrorKind::MissingSimplex, "simplex " + s.str() + " of the coarse complex is missing",
                  s.to_vector());
    }
  }
  // The membrane projects vertically onto the coarse lift, so it is a graph
  // exactly when the coarse triangulation is a proper one.
  if (is_elementary_refinement(cn.colours, cm.colours))
    rep.membrane_is_graph = locally_valid(coarse.coordinates, coarse.tops);
  return rep;
}

}  // namespace ctda
