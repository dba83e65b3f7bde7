#include "ctda/stack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>

#include "ctda/errors.hpp"

namespace ctda {

double Stack::rad() const {
  double r = 0.0;
  for (const auto& [m, v] : radii) r = std::max(r, v);
  return r;
}

std::vector<int> Stack::out(double rel_tol) const {
  const double r = rad();
  std::vector<int> o;
  for (const auto& [m, v] : radii)
    if (v >= r - rel_tol * r) o.push_back(m);
  return o;
}

std::vector<int> KKTCertificate::front(double tol) const {
  std::vector<int> f;
  for (const auto& [v, l] : lambda)
    if (l > tol) f.push_back(v);
  return f;
}

std::vector<int> KKTCertificate::back(double tol) const {
  std::vector<int> b;
  for (const auto& [v, l] : lambda)
    if (l < -tol) b.push_back(v);
  return b;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool in_set(const VertexSet& s, int v) { return std::binary_search(s.begin(), s.end(), v); }

VertexSet sorted_set(VertexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

// Points of E whose colour occurs in sigma.
VertexSet e_gamma(const ChromaticPointCloud& cloud, const std::vector<int>& gamma,
                  const VertexSet& E) {
  VertexSet out;
  for (int v : E)
    if (std::binary_search(gamma.begin(), gamma.end(), cloud.colours[v])) out.push_back(v);
  return out;
}

KktCheck fail(const char* what) { return {false, what}; }

KktCheck check_impl(const Stack& stack, const KKTCertificate& cert,
                    const ChromaticPointCloud& cloud, const Simplex& sigma, const VertexSet& E,
                    double tol_rel) {
  const std::vector<int> gamma = cloud.colours_of(sigma);
  if (stack.radii.size() != gamma.size()) return fail("stack colours");
  for (int m : gamma)
    if (!stack.radii.count(m)) return fail("stack colours");
  for (const auto& [m, r] : stack.radii)
    if (!(r >= 0.0)) return fail("non-negative radii");

  const VertexSet eg = e_gamma(cloud, gamma, E);
  VertexSet pts = sorted_set([&] {
    VertexSet p(sigma.begin(), sigma.end());
    p.insert(p.end(), eg.begin(), eg.end());
    return p;
  }());
  const Point& y = stack.centre;
  double scale = 0.0;
  for (int v : pts) scale = std::max(scale, (cloud.points[v] - y).norm());
  if (scale == 0.0) scale = 1.0;
  const double tol = tol_rel * scale;

  auto radius_of = [&](int v) { return stack.radii.at(cloud.colours[v]); };
  for (int v : sigma)
    if ((cloud.points[v] - y).norm() > radius_of(v) + tol) return fail("includes sigma");
  for (int v : eg)
    if ((cloud.points[v] - y).norm() < radius_of(v) - tol) return fail("excludes E");

  double lam_scale = 1.0;
  for (const auto& [v, l] : cert.lambda) lam_scale = std::max(lam_scale, std::abs(l));
  const double tl = tol_rel * lam_scale;

  std::map<int, double> colour_sum;
  Point stationarity = Point::Zero(y.size());
  for (const auto& [v, l] : cert.lambda) {
    if (v < 0 || static_cast<std::size_t>(v) >= cloud.size()) return fail("certificate index");
    const int m = cloud.colours[v];
    if (!stack.radii.count(m)) {
      if (std::abs(l) > tl) return fail("support on spheres");
      continue;
    }
    const double dist = (cloud.points[v] - y).norm();
    if (std::abs(l) > tl && std::abs(dist - stack.radii.at(m)) > tol)
      return fail("support on spheres");
    if (l > tl && !sigma.contains(v)) return fail("(2) positive coefficients on sigma");
    if (l < -tl && !in_set(E, v)) return fail("(3) negative coefficients on E");
    colour_sum[m] += l;
    stationarity += l * (cloud.points[v] - y);
  }

  const std::vector<int> out = stack.out();
  double total = 0.0;
  for (int m : gamma) {
    const double sm = colour_sum.count(m) ? colour_sum[m] : 0.0;
    const bool is_out = std::find(out.begin(), out.end(), m) != out.end();
    if (is_out) {
      if (sm < -tl) return fail("(5) outer colour sums non-negative");
      total += sm;
    } else if (std::abs(sm) > tl) {
      return fail("(4) inner colour sums vanish");
    }
  }
  if (std::abs(total - 1.0) > tl) return fail("(6) outer total is one");
  if (stationarity.norm() > tol * lam_scale) return fail("(1) stationarity");
  return {};
}

// Points of the instance in normalized coordinates.
struct Frame {
  Point shift;
  double scale = 1.0;
};

struct Instance {
  const ChromaticPointCloud& cloud;
  const Simplex& sigma;
  const VertexSet& E;
  std::vector<int> gamma;
  VertexSet eg;
};

// All subsets of `pool` of size k, in lexicographic order.
template <class F>
bool for_each_combination(const std::vector<int>& pool, int k, F&& f) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  const int n = static_cast<int>(pool.size());
  if (k > n) return false;
  while (true) {
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = pool[idx[i]];
    if (f(pick)) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Enumerates boundary sets B and outer colour sets; returns the first
// candidate whose certificate passes at tolerance tol_rel.
std::optional<StackSolution> enumerate_candidates(const Instance& in, double tol_rel) {
  const ChromaticPointCloud& cloud = in.cloud;
  const int d = cloud.d;

  VertexSet pts(in.sigma.begin(), in.sigma.end());
  pts.insert(pts.end(), in.eg.begin(), in.eg.end());
  pts = sorted_set(pts);

  Frame fr;
  fr.shift = Point::Zero(d);
  for (int v : in.sigma) fr.shift += cloud.points[v];
  fr.shift /= static_cast<double>(in.sigma.size());
  fr.scale = 0.0;
  for (int v : pts) fr.scale = std::max(fr.scale, (cloud.points[v] - fr.shift).norm());
  if (fr.scale == 0.0) fr.scale = 1.0;
  auto w = [&](int v) -> Point { return (cloud.points[v] - fr.shift) / fr.scale; };

  VertexSet forced, optional_pts;
  for (int v : pts) {
    if (in.sigma.contains(v) && in_set(in.eg, v))
      forced.push_back(v);
    else
      optional_pts.push_back(v);
  }
  const int max_b = d + static_cast<int>(in.gamma.size());

  std::optional<StackSolution> found;
  auto try_b = [&](const std::vector<int>& extra) -> bool {
    VertexSet b = forced;
    b.insert(b.end(), extra.begin(), extra.end());
    if (b.empty()) return false;
    std::vector<int> cols;
    for (int v : b) cols.push_back(cloud.colours[v]);
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    const int nb = static_cast<int>(b.size());
    const int nc = static_cast<int>(cols.size());

    for (unsigned mask = 1; mask < (1u << nc); ++mask) {
      const int n_out = __builtin_popcount(mask);
      const int n_cls = nc - n_out + 1;  // merged outer class plus the rest
      if (nb > d + n_cls) continue;      // lifted support would be dependent
      // Class index of each colour: 0 for outer colours, 1.. for the others.
      std::map<int, int> cls;
      int next = 1;
      for (int i = 0; i < nc; ++i) cls[cols[i]] = (mask & (1u << i)) ? 0 : next++;

      const int nu = d + n_cls + nb;
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nu, nu);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nu);
      int row = 0;
      for (int i = 0; i < nb; ++i, ++row) {
        const Point p = w(b[i]);
        a.block(row, 0, 1, d) = -2.0 * p.transpose();
        a(row, d + cls[cloud.colours[b[i]]]) = 1.0;
        rhs[row] = -p.squaredNorm();
      }
      for (int k = 0; k < d; ++k, ++row) {
        for (int i = 0; i < nb; ++i) a(row, d + n_cls + i) = w(b[i])[k];
        a(row, k) = -1.0;
      }
      for (int c = 1; c < n_cls; ++c, ++row)
        for (int i = 0; i < nb; ++i)
          if (cls[cloud.colours[b[i]]] == c) a(row, d + n_cls + i) = 1.0;
      for (int i = 0; i < nb; ++i)
        if (cls[cloud.colours[b[i]]] == 0) a(row, d + n_cls + i) = 1.0;
      rhs[row] = 1.0;

      Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
      lu.setThreshold(1e-11);
      if (lu.rank() < nu) continue;
      const Eigen::VectorXd x = lu.solve(rhs);
      if (!x.allFinite()) continue;

      const Point y = x.head(d);
      const double r2 = y.squaredNorm() - x[d];
      if (r2 < -tol_rel) continue;
      const double big_r = std::sqrt(std::max(0.0, r2));

      // Maximal radii: every colour as large as E allows, capped at Rad.
      Stack st;
      st.centre = fr.shift + fr.scale * y;
      for (int m : in.gamma) {
        double de = kInf;
        for (int v : in.eg)
          if (cloud.colours[v] == m) de = std::min(de, (w(v) - y).norm());
        st.radii[m] = fr.scale * std::min(big_r, de);
      }
      KKTCertificate cert;
      for (int i = 0; i < nb; ++i) cert.lambda[b[i]] = x[d + n_cls + i];
      if (!check_impl(st, cert, cloud, in.sigma, in.E, tol_rel).ok) continue;

      // Index the certificate by On(S) within the instance.
      KKTCertificate full;
      const double on_tol = std::max(tol_rel, 1e-9) * fr.scale;
      for (int v : pts) {
        const double dist = (cloud.points[v] - st.centre).norm();
        if (std::abs(dist - st.radii.at(cloud.colours[v])) <= on_tol)
          full.lambda[v] = cert.lambda.count(v) ? cert.lambda[v] : 0.0;
      }
      for (const auto& [v, l] : cert.lambda)
        if (!full.lambda.count(v)) full.lambda[v] = l;
      found = StackSolution{std::move(st), std::move(full)};
      return true;
    }
    return false;
  };

  for (int k = 0; k + static_cast<int>(forced.size()) <= max_b; ++k)
    if (for_each_combination(optional_pts, k, try_b)) break;
  return found;
}

}  // namespace

KktCheck verify_kkt_detail(const Stack& stack, const KKTCertificate& cert,
                           const ChromaticPointCloud& cloud, const Simplex& sigma,
                           const VertexSet& E, double tol_rel) {
  return check_impl(stack, cert, cloud, sigma, sorted_set(E), tol_rel);
}

bool verify_kkt(const Stack& stack, const KKTCertificate& cert, const ChromaticPointCloud& cloud,
                const Simplex& sigma, const VertexSet& E, double tol_rel) {
  return verify_kkt_detail(stack, cert, cloud, sigma, E, tol_rel).ok;
}

std::optional<StackSolution> min_stack(const ChromaticPointCloud& cloud, const Simplex& sigma,
                                       const VertexSet& E_in) {
  if (sigma.empty()) throw Error(ErrorKind::InvalidArgument, "empty simplex");
  for (int v : sigma)
    if (static_cast<std::size_t>(v) >= cloud.size())
      throw Error(ErrorKind::InvalidArgument, "vertex index out of range");
  const VertexSet E = sorted_set(E_in);
  Instance in{cloud, sigma, E, cloud.colours_of(sigma), {}};
  in.eg = e_gamma(cloud, in.gamma, E);

  if (in.eg.empty()) {
    // Nothing to exclude: every sphere is the minimum enclosing ball.
    PointList pts;
    for (int v : sigma) pts.push_back(cloud.points[v]);
    Ball b = min_enclosing_ball(pts);
    StackSolution sol;
    sol.stack.centre = b.centre;
    for (int m : in.gamma) sol.stack.radii[m] = b.radius;
    for (std::size_t i = 0; i < b.support.size(); ++i)
      sol.cert.lambda[sigma[b.support[i]]] = b.lambda[i];
    if (!check_impl(sol.stack, sol.cert, cloud, sigma, E, 1e-7).ok)
      throw Error(ErrorKind::NumericalFailure,
                  "enclosing ball certificate failed for " + sigma.str(), sigma.to_vector());
    return sol;
  }

  if (auto sol = enumerate_candidates(in, 1e-9)) return sol;
  if (enumerate_candidates(in, 1e-6))
    throw Error(ErrorKind::NumericalFailure,
                "stack for " + sigma.str() + " only verifies at a loose tolerance",
                sigma.to_vector());
  return std::nullopt;
}

StackSolution min_passing_stack(const ChromaticPointCloud& cloud, const Simplex& sigma) {
  auto sol = min_stack(cloud, sigma, sigma.to_vector());
  if (!sol)
    throw Error(ErrorKind::NumericalFailure, "no stack passes through " + sigma.str(),
                sigma.to_vector());
  return *sol;
}

// ---------------------------------------------------------------------------
// Minimum enclosing ball.

namespace {

class MoveToFrontBall {
 public:
  explicit MoveToFrontBall(const PointList& pts) : p_(pts), dim_(static_cast<int>(pts[0].size())) {
    for (std::size_t i = 0; i < pts.size(); ++i) list_.push_back(static_cast<int>(i));
    scale_ = 0.0;
    for (const Point& q : pts) scale_ = std::max(scale_, (q - pts[0]).norm());
    centre_ = pts[0];
    radius_ = -1.0;
    mtf(list_.end());
  }

  const Point& centre() const { return centre_; }
  double radius() const { return std::max(0.0, radius_); }

 private:
  const PointList& p_;
  int dim_;
  std::list<int> list_;
  std::vector<int> boundary_;
  Point centre_;
  double radius_;
  double scale_;

  bool inside(int i) const {
    return radius_ >= 0.0 && (p_[i] - centre_).norm() <= radius_ + 1e-13 * scale_;
  }

  void ball_from_boundary() {
    if (boundary_.empty()) {
      radius_ = -1.0;
      return;
    }
    const Point& p0 = p_[boundary_[0]];
    const std::size_t k = boundary_.size() - 1;
    if (k == 0) {
      centre_ = p0;
      radius_ = 0.0;
      return;
    }
    Eigen::MatrixXd a(dim_, k);
    for (std::size_t i = 0; i < k; ++i) a.col(i) = p_[boundary_[i + 1]] - p0;
    Eigen::MatrixXd g = a.transpose() * a;
    Eigen::VectorXd rhs = 0.5 * g.diagonal();
    Eigen::VectorXd coef = g.completeOrthogonalDecomposition().solve(rhs);
    centre_ = p0 + a * coef;
    radius_ = 0.0;
    for (int b : boundary_) radius_ = std::max(radius_, (p_[b] - centre_).norm());
  }

  void mtf(std::list<int>::iterator end) {
    ball_from_boundary();
    if (static_cast<int>(boundary_.size()) == dim_ + 1) return;
    for (auto it = list_.begin(); it != end;) {
      auto cur = it++;
      if (!inside(*cur)) {
        boundary_.push_back(*cur);
        mtf(cur);
        boundary_.pop_back();
        list_.splice(list_.begin(), list_, cur);
      }
    }
  }
};

}  // namespace

Ball min_enclosing_ball(const PointList& points) {
  if (points.empty()) throw Error(ErrorKind::InvalidArgument, "no points");
  MoveToFrontBall mb(points);
  Ball b;
  b.centre = mb.centre();
  b.radius = mb.radius();
  double scale = 0.0;
  for (const Point& q : points) scale = std::max(scale, (q - points[0]).norm());
  const double tol = 1e-9 * std::max(scale, 1e-300);
  for (std::size_t i = 0; i < points.size(); ++i)
    if (std::abs((points[i] - b.centre).norm() - b.radius) <= tol)
      b.support.push_back(static_cast<int>(i));
  if (b.support.empty()) b.support.push_back(0);
  // Barycentric weights of the centre over the boundary points.
  const int k = static_cast<int>(b.support.size());
  const int dim = static_cast<int>(points[0].size());
  Eigen::MatrixXd a(dim + 1, k);
  Eigen::VectorXd rhs(dim + 1);
  for (int i = 0; i < k; ++i) {
    a.block(0, i, dim, 1) = points[b.support[i]] - points[b.support[0]];
    a(dim, i) = 1.0;
  }
  rhs.head(dim) = b.centre - points[b.support[0]];
  rhs[dim] = 1.0;
  Eigen::VectorXd lam = a.completeOrthogonalDecomposition().solve(rhs);
  b.lambda.assign(lam.data(), lam.data() + k);
  return b;
}

// ---------------------------------------------------------------------------

Stack extend_stack(const Stack& stack, const ChromaticPointCloud& cloud, const VertexSet& E) {
  Stack out = stack;
  const double big_r = stack.rad();
  for (int m = 0; m <= cloud.s; ++m) {
    if (out.radii.count(m)) continue;
    double r = big_r;
    for (int v : E)
      if (cloud.colours[v] == m) r = std::min(r, (cloud.points[v] - stack.centre).norm());
    out.radii[m] = r;
  }
  return out;
}

VertexSet included_points(const Stack& stack, const ChromaticPointCloud& cloud, double tol_rel) {
  const double tol = tol_rel * std::max(stack.rad(), 1e-300);
  VertexSet out;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto it = stack.radii.find(cloud.colours[i]);
    if (it == stack.radii.end()) continue;
    if ((cloud.points[i] - stack.centre).norm() <= it->second + tol) out.push_back(static_cast<int>(i));
  }
  return out;
}

VertexSet on_points(const Stack& stack, const ChromaticPointCloud& cloud, double tol_rel) {
  const double tol = tol_rel * std::max(stack.rad(), 1e-300);
  VertexSet out;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto it = stack.radii.find(cloud.colours[i]);
    if (it == stack.radii.end()) continue;
    if (std::abs((cloud.points[i] - stack.centre).norm() - it->second) <= tol)
      out.push_back(static_cast<int>(i));
  }
  return out;
}

LiftedSphere lift_correspondence(const Stack& stack, int d, int s) {
  for (int m = 0; m <= s; ++m)
    if (!stack.radii.count(m))
      throw Error(ErrorKind::InvalidArgument, "stack must have a sphere for every colour");
  const double r0sq = std::pow(stack.radii.at(0), 2);
  LiftedSphere out;
  out.centre = Point::Zero(d + s);
  out.centre.head(d) = stack.centre;
  // |t - e_m|^2 = R^2 - r_m^2 for every m; differences against m = 0 fix t.
  for (int m = 1; m <= s; ++m)
    out.centre[d + m - 1] = 0.5 * (std::pow(stack.radii.at(m), 2) - r0sq + 1.0);
  out.radius = std::sqrt(r0sq + out.centre.tail(s).squaredNorm());
  return out;
}

Stack inverse_correspondence(const LiftedSphere& sphere, int d, int s) {
  Stack st;
  st.centre = sphere.centre.head(d);
  const Point t = sphere.centre.tail(s);
  for (int m = 0; m <= s; ++m) {
    Point e = Point::Zero(s);
    if (m > 0) e[m - 1] = 1.0;
    const double r2 = sphere.radius * sphere.radius - (t - e).squaredNorm();
    if (r2 < -1e-12 * std::max(1.0, sphere.radius * sphere.radius))
      throw Error(ErrorKind::NoIntersection,
                  "sphere misses the plane of colour " + std::to_string(m));
    st.radii[m] = std::sqrt(std::max(0.0, r2));
  }
  return st;
}

}  // namespace ctda
