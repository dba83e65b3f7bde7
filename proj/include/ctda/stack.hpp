#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctda/core.hpp"

namespace ctda {

// Concentric spheres, one per colour in gamma.
struct Stack {
  Point centre;
  std::map<int, double> radii;

  double rad() const;
  // Colours whose radius equals rad() up to rel_tol * rad().
  std::vector<int> out(double rel_tol = kRelTol) const;
};

// Coefficients on the points of On(S).
struct KKTCertificate {
  std::map<int, double> lambda;

  std::vector<int> front(double tol = 1e-9) const;
  std::vector<int> back(double tol = 1e-9) const;
};

struct StackSolution {
  Stack stack;
  KKTCertificate cert;
};

// Sorted index set; used for sigma-like vertex sets that need not be simplices
// of any particular complex.
using VertexSet = std::vector<int>;

// Minimum-radius stack on the colours of sigma that includes sigma (on or
// inside) and excludes E (on or outside). Colours without a point of sigma on
// their sphere get the largest radius that keeps E excluded, capped by the
// stack radius. Returns nullopt when no such stack exists; throws
// NumericalFailure when feasibility cannot be decided within tolerance.
std::optional<StackSolution> min_stack(const ChromaticPointCloud& cloud, const Simplex& sigma,
                                       const VertexSet& E);

// S(sigma, mu; sigma): the smallest stack whose spheres pass through sigma.
StackSolution min_passing_stack(const ChromaticPointCloud& cloud, const Simplex& sigma);

struct Ball {
  Point centre;
  double radius = 0.0;
  std::vector<int> support;    // indices into the input, on the boundary
  std::vector<double> lambda;  // barycentric weights of the centre over support
};

// Minimum enclosing ball (move-to-front Welzl).
Ball min_enclosing_ball(const PointList& points);

struct KktCheck {
  bool ok = true;
  std::string failed;  // name of the first violated condition
};

// Conditions (1)-(6) of the stack KKT system plus primal feasibility, to
// tol_rel times the scale of the instance.
KktCheck verify_kkt_detail(const Stack& stack, const KKTCertificate& cert,
                           const ChromaticPointCloud& cloud, const Simplex& sigma,
                           const VertexSet& E, double tol_rel = 1e-7);
bool verify_kkt(const Stack& stack, const KKTCertificate& cert, const ChromaticPointCloud& cloud,
                const Simplex& sigma, const VertexSet& E, double tol_rel = 1e-7);

// S*: adds every missing colour m at radius min(Rad, dist to E of colour m).
Stack extend_stack(const Stack& stack, const ChromaticPointCloud& cloud, const VertexSet& E);

// Points of X on or inside the sphere of their own colour.
VertexSet included_points(const Stack& stack, const ChromaticPointCloud& cloud,
                          double tol_rel = kRelTol);

// Points of X whose colour has a sphere and which lie on it.
VertexSet on_points(const Stack& stack, const ChromaticPointCloud& cloud, double tol_rel = kRelTol);

struct LiftedSphere {
  Point centre;  // in R^{d+s}
  double radius = 0.0;
};

// Stacks over all s+1 colours correspond to spheres in R^{d+s} meeting every
// plane R^d x {e_m}.
LiftedSphere lift_correspondence(const Stack& stack, int d, int s);
// Throws NoIntersection when the sphere misses one of the planes.
Stack inverse_correspondence(const LiftedSphere& sphere, int d, int s);

}  // namespace ctda
