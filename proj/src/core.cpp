#include "ctda/core.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "ctda/errors.hpp"

namespace ctda {

std::vector<int> ChromaticPointCloud::colour_class(int m) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < colours.size(); ++i)
    if (colours[i] == m) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> ChromaticPointCloud::colours_of(const Simplex& sigma) const {
  std::vector<int> out;
  for (int v : sigma) out.push_back(colours[v]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double ChromaticPointCloud::diameter() const {
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      best = std::max(best, (points[i] - points[j]).norm());
  return best;
}

Colouring canonicalize_colouring(const Colouring& colours) {
  std::map<int, int> relabel;
  Colouring out;
  out.reserve(colours.size());
  for (int c : colours) {
    auto it = relabel.find(c);
    if (it == relabel.end()) it = relabel.emplace(c, static_cast<int>(relabel.size())).first;
    out.push_back(it->second);
  }
  return out;
}

ChromaticPointCloud validate_chromatic_set(const PointList& points, const Colouring& colours) {
  if (points.size() != colours.size())
    throw Error(ErrorKind::LengthMismatch, "points and colours differ in length");
  if (colours.empty())
    throw Error(ErrorKind::NonSurjectiveColouring, "empty colour list");
  const long d = points.front().size();
  if (d < 1) throw Error(ErrorKind::DimensionMismatch, "points must have dimension >= 1");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != d)
      throw Error(ErrorKind::DimensionMismatch,
                  "row " + std::to_string(i) + " has dimension " +
                      std::to_string(points[i].size()) + ", expected " + std::to_string(d));
    for (long k = 0; k < d; ++k)
      if (!std::isfinite(points[i][k]))
        throw Error(ErrorKind::InvalidArgument, "non-finite coordinate in row " + std::to_string(i));
  }
  // Exact duplicate detection via lexicographic sort.
  std::vector<int> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  auto lex = [&](int a, int b) {
    return std::lexicographical_compare(points[a].data(), points[a].data() + d, points[b].data(),
                                        points[b].data() + d);
  };
  std::sort(order.begin(), order.end(), lex);
  for (std::size_t i = 1; i < order.size(); ++i)
    if (points[order[i - 1]] == points[order[i]])
      throw Error(ErrorKind::DuplicatePoint, "duplicate point", {order[i - 1], order[i]});

  ChromaticPointCloud cloud;
  cloud.points = points;
  cloud.colours = canonicalize_colouring(colours);
  cloud.d = static_cast<int>(d);
  cloud.s = *std::max_element(cloud.colours.begin(), cloud.colours.end());
  return cloud;
}

ChromaticPointCloud validate_chromatic_set(const std::vector<std::vector<double>>& rows,
                                           const Colouring& colours) {
  PointList pts;
  pts.reserve(rows.size());
  for (const auto& r : rows) pts.push_back(Eigen::Map<const Eigen::VectorXd>(r.data(), r.size()));
  return validate_chromatic_set(pts, colours);
}

ChromaticPointCloud recolour(const ChromaticPointCloud& cloud, const Colouring& colours) {
  if (colours.size() != cloud.size())
    throw Error(ErrorKind::LengthMismatch, "colouring length differs from cloud size");
  ChromaticPointCloud out = cloud;
  out.colours = canonicalize_colouring(colours);
  out.s = out.colours.empty() ? 0 : *std::max_element(out.colours.begin(), out.colours.end());
  return out;
}

Colouring monochromatic(std::size_t n) { return Colouring(n, 0); }

Colouring maximal_colouring(std::size_t n) {
  Colouring c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<int>(i);
  return c;
}

PointList chromatic_lift(const ChromaticPointCloud& cloud) {
  PointList out;
  out.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    Point p = Point::Zero(cloud.d + cloud.s);
    p.head(cloud.d) = cloud.points[i];
    if (cloud.colours[i] > 0) p[cloud.d + cloud.colours[i] - 1] = 1.0;
    out.push_back(std::move(p));
  }
  return out;
}

bool is_refinement(const Colouring& nu, const Colouring& mu) {
  if (nu.size() != mu.size())
    throw Error(ErrorKind::LengthMismatch, "colourings over different vertex sets");
  // Each nu-class must sit inside a single mu-class.
  std::map<int, int> target;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    auto [it, inserted] = target.emplace(nu[i], mu[i]);
    if (!inserted && it->second != mu[i]) return false;
  }
  return true;
}

bool is_elementary_refinement(const Colouring& nu, const Colouring& mu) {
  if (!is_refinement(nu, mu)) return false;
  std::set<int> a(nu.begin(), nu.end()), b(mu.begin(), mu.end());
  return a.size() == b.size() + 1;
}

namespace {

double spread(const PointList& points) {
  double s = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i)
    s = std::max(s, (points[i] - points[0]).norm());
  return s;
}

int numeric_rank(const Eigen::MatrixXd& m, double threshold) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  int r = 0;
  for (long i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > threshold) ++r;
  return r;
}

}  // namespace

int affine_dimension(const PointList& points, double rel_tol) {
  if (points.size() <= 1) return 0;
  const double scale = spread(points);
  if (scale == 0.0) return 0;
  Eigen::MatrixXd diff(points[0].size(), points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) diff.col(i - 1) = (points[i] - points[0]) / scale;
  return numeric_rank(diff, rel_tol);
}

Sphere circumsphere_through(const PointList& points) {
  if (points.empty()) throw Error(ErrorKind::DegenerateInput, "no points");
  const std::size_t k = points.size() - 1;
  if (k == 0) return {points[0], 0.0};
  if (affine_dimension(points) != static_cast<int>(k))
    throw Error(ErrorKind::DegenerateInput, "points are affinely dependent");
  // Centre p0 + A a with A = [p_i - p0]; solve (A^T A) a = |p_i - p0|^2 / 2.
  Eigen::MatrixXd a(points[0].size(), k);
  for (std::size_t i = 0; i < k; ++i) a.col(i) = points[i + 1] - points[0];
  Eigen::MatrixXd g = a.transpose() * a;
  Eigen::VectorXd rhs = 0.5 * g.diagonal();
  Eigen::VectorXd coef = g.fullPivLu().solve(rhs);
  Sphere s;
  s.centre = points[0] + a * coef;
  s.radius = (s.centre - points[0]).norm();
  return s;
}

// ---------------------------------------------------------------------------
// General position.

namespace {

using QMatrix = std::vector<std::vector<mpq_class>>;

int exact_rank(QMatrix m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  int rank = 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      mpq_class f = m[r][c] / m[rank][c];
      for (std::size_t cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
    }
    ++rank;
  }
  return rank;
}

// Rank oracle over a fixed list of points, optionally lifted to the
// paraboloid (x, |x|^2). Exact mode works over the rationals; doubles are
// dyadic so the conversion is exact.
class RankEngine {
 public:
  RankEngine(const PointList& pts, bool exact, bool paraboloid) : exact_(exact) {
    if (exact_) {
      q_.resize(pts.size());
      for (std::size_t i = 0; i < pts.size(); ++i) {
        mpq_class sq = 0;
        for (long k = 0; k < pts[i].size(); ++k) {
          q_[i].push_back(mpq_class(pts[i][k]));
          sq += q_[i].back() * q_[i].back();
        }
        if (paraboloid) q_[i].push_back(sq);
      }
    } else {
      for (const Point& p : pts) {
        Point q(p.size() + (paraboloid ? 1 : 0));
        q.head(p.size()) = p;
        if (paraboloid) q[p.size()] = p.squaredNorm();
        pts_.push_back(std::move(q));
      }
    }
  }

  // Rank of {pts[b] - pts[a] : (a, b) in pairs}.
  int rank(const std::vector<std::pair<int, int>>& pairs) const {
    if (pairs.empty()) return 0;
    if (exact_) {
      QMatrix m;
      for (auto [a, b] : pairs) {
        std::vector<mpq_class> row;
        for (std::size_t k = 0; k < q_[a].size(); ++k) row.push_back(q_[b][k] - q_[a][k]);
        m.push_back(std::move(row));
      }
      return exact_rank(std::move(m));
    }
    Eigen::MatrixXd m(pts_[0].size(), pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
      m.col(i) = pts_[pairs[i].second] - pts_[pairs[i].first];
    return numeric_rank(m, kRelTol);
  }

 private:
  bool exact_;
  PointList pts_;
  std::vector<std::vector<mpq_class>> q_;
};

double choose(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Points centred and scaled so the tolerance is relative to the diameter.
PointList normalized(const PointList& pts) {
  Point c = Point::Zero(pts[0].size());
  for (const Point& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  double scale = 0.0;
  for (const Point& p : pts) scale = std::max(scale, (p - c).norm());
  if (scale == 0.0) scale = 1.0;
  PointList out;
  for (const Point& p : pts) out.push_back((p - c) / scale);
  return out;
}

}  // namespace

GpReport check_general_position(const ChromaticPointCloud& cloud, const GpOptions& opt) {
  GpReport rep;
  const int n = static_cast<int>(cloud.size());

  // GP1 on the lift: a subset P of size j whose affine hull has dimension
  // j - 2 must not be co-spherical, i.e. its paraboloid lift has dimension
  // j - 1.
  PointList lift = chromatic_lift(cloud);
  const int big_d = cloud.d + cloud.s;
  PointList base = opt.exact ? lift : normalized(lift);
  RankEngine base_rank(base, opt.exact, false), para_rank(base, opt.exact, true);

  double gp1_count = 0.0;
  for (int j = 3; j <= std::min(n, big_d + 2); ++j) gp1_count += choose(n, j);
  if (gp1_count > opt.budget)
    throw Error(ErrorKind::SizeLimitExceeded, "GP1 enumeration exceeds budget");

  std::vector<int> subset;
  std::function<bool(int, int)> gp1_rec = [&](int start, int want) -> bool {
    if (static_cast<int>(subset.size()) == want) {
      std::vector<std::pair<int, int>> pairs;
      for (std::size_t i = 1; i < subset.size(); ++i) pairs.emplace_back(subset[0], subset[i]);
      if (base_rank.rank(pairs) != want - 2) return false;
      return para_rank.rank(pairs) == want - 2;
    }
    for (int v = start; v < n; ++v) {
      subset.push_back(v);
      if (gp1_rec(v + 1, want)) return true;
      subset.pop_back();
    }
    return false;
  };
  for (int j = 3; j <= std::min(n, big_d + 2) && rep.gp1; ++j) {
    subset.clear();
    if (gp1_rec(0, j)) {
      rep.gp1 = false;
      rep.witness_kind = "cospherical";
      rep.witness = subset;
    }
  }

  // GP3: disjoint groups of size >= 2 whose difference vectors number at
  // most d must be linearly independent. Singleton parts contribute nothing.
  {
    PointList pts = opt.exact ? cloud.points : normalized(cloud.points);
    RankEngine rank3(pts, opt.exact, false);
    double examined = 0.0;
    std::vector<char> used(n, 0);
    std::vector<std::vector<int>> groups;
    bool found = false;

    auto check = [&]() {
      examined += 1.0;
      if (examined > opt.budget)
        throw Error(ErrorKind::SizeLimitExceeded, "GP3 enumeration exceeds budget");
      std::vector<std::pair<int, int>> pairs;
      for (const auto& g : groups)
        for (std::size_t i = 1; i < g.size(); ++i) pairs.emplace_back(g[0], g[i]);
      if (rank3.rank(pairs) != static_cast<int>(pairs.size())) {
        found = true;
        rep.gp3 = false;
        rep.witness_parts = groups;
        if (rep.gp1) {
          rep.witness.clear();
          for (const auto& g : groups) rep.witness.insert(rep.witness.end(), g.begin(), g.end());
          rep.witness_kind = groups.size() == 1 ? "affinely-dependent" : "parallel";
        }
      }
    };

    // Groups are generated with increasing minimum element.
    std::function<void(int, int)> rec = [&](int min_start, int remaining) {
      if (found || remaining == 0) return;
      for (int a = min_start; a < n && !found; ++a) {
        if (used[a]) continue;
        used[a] = 1;
        std::vector<int> group{a};
        // Extend the group with members above a.
        std::function<void(int)> extend = [&](int from) {
          if (found) return;
          for (int b = from; b < n && !found; ++b) {
            if (used[b]) continue;
            if (static_cast<int>(group.size()) > remaining) break;
            used[b] = 1;
            group.push_back(b);
            groups.push_back(group);
            check();
            if (!found) rec(a + 1, remaining - static_cast<int>(group.size() - 1));
            groups.pop_back();
            if (!found && static_cast<int>(group.size()) <= remaining) extend(b + 1);
            group.pop_back();
            used[b] = 0;
          }
        };
        extend(a + 1);
        used[a] = 0;
      }
    };
    rec(0, cloud.d);
  }
  rep.ok = rep.gp1 && rep.gp3;
  return rep;
}

}  // namespace ctda
