#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctda/core.hpp"
#include "ctda/delaunay.hpp"
#include "ctda/filtration.hpp"
#include "ctda/simplex.hpp"

namespace ctda {

// {eta : bottom <= eta <= top}
struct Interval {
  Simplex bottom;
  Simplex top;

  bool contains(const Simplex& s) const { return bottom.is_face_of(s) && s.is_face_of(top); }
  bool singleton() const { return bottom == top; }
  std::size_t count() const { return std::size_t{1} << (top.size() - bottom.size()); }
  std::vector<Simplex> members() const;

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.bottom == b.bottom && a.top == b.top;
  }
  friend bool operator<(const Interval& a, const Interval& b) {
    return a.bottom == b.bottom ? DimLexLess{}(a.top, b.top) : DimLexLess{}(a.bottom, b.bottom);
  }
};

struct VectorField {
  std::vector<Interval> intervals;

  std::vector<Simplex> critical() const;
  bool is_pairing() const;  // every interval has at most two elements
  void sort() { std::sort(intervals.begin(), intervals.end()); }
};

// Index of the interval holding each simplex of k. Throws PartitionFailure
// when a simplex lies in no interval or in two; intervals may reach outside k.
std::vector<std::size_t> locate_intervals(const SimplicialComplex& k, const VectorField& v);
// Additionally every interval must lie inside k.
bool is_partition(const SimplicialComplex& k, const VectorField& v);

// The quotient of the Hasse diagram by v is acyclic (v must partition k).
bool check_acyclicity(const SimplicialComplex& k, const VectorField& v);

// Non-empty intersections I and J over the simplices of k, where I and J are
// the intervals of v and w holding each simplex.
VectorField sum_refine(const SimplicialComplex& k, const VectorField& v, const VectorField& w);

// Intervals of v inside l. Throws NotUnionOfIntervals when an interval is
// partly inside.
VectorField restrict_gradient(const VectorField& v, const SimplicialComplex& l);

// Splits every interval [b, t] into pairs (eta, eta + x) with apex x the
// smallest vertex of t \ b.
VectorField refine_to_pairs(const VectorField& v);

struct CollapseStep {
  Simplex free_face;
  Simplex coface;
};

struct CollapseTrace {
  std::vector<CollapseStep> steps;
  // One "dim | free-face vertices | coface vertices" line per step.
  std::string str() const;
};

// Collapses k onto l along v. Pairs are removed in an order compatible with
// the quotient graph, preferring larger priority(coface), then larger
// dimension, then lexicographic order. Throws NotCollapsible when k \ l is
// not a union of non-singleton intervals or v is cyclic, StuckCollapse when a
// scheduled pair is not free.
CollapseTrace execute_collapse(const SimplicialComplex& k, const VectorField& v,
                               const SimplicialComplex& l,
                               const std::function<double(const Simplex&)>& priority = {});

// Upper and lower facets of a simplex with respect to direction z.
struct FaceClassification {
  Simplex sigma;
  std::vector<int> facet_side;  // +1 upper, -1 lower, 0 side, for the facet opposite sigma[i]
  Simplex upper_min;            // sigma*: intersection of the upper facets
  Simplex lower_min;            // sigma_*: intersection of the lower facets

  // Proper faces containing upper_min (resp. lower_min).
  bool is_upper(const Simplex& face) const;
  bool is_lower(const Simplex& face) const;
};

// coords[i] is the position of sigma[i]. Throws NotTransverse when a facet
// normal is orthogonal to z, unless allow_side: then that facet counts as
// both upper and lower. Side facets of a lifted simplex occur when it holds
// more than d+1 points of one coarse colour class.
FaceClassification upper_lower_faces(const Simplex& sigma, const PointList& coords, const Point& z,
                                     bool allow_side = false);

struct VerticalGradient {
  Triangulation fine;          // Del(Z): combinatorially Del(X, nu)
  SimplicialComplex membrane;  // Del(X, mu)
  VectorField field;
  std::map<Simplex, double> height;  // last circumcentre coordinate of each interval's top
  std::map<Simplex, std::size_t> class_of;
  int split_class = -1;        // nu label lifted to height one
  int morse_offset = 0;        // D in (h - 1/2)^2 + D
};

// Sigma for an elementary refinement nu of the cloud's colouring mu.
VerticalGradient vertical_gradient(const ChromaticPointCloud& cloud, const Colouring& nu);

// dim(sigma) on the membrane, (h - 1/2)^2 + D on interval classes.
double quotient_height(const VerticalGradient& g, const Simplex& sigma);
// The height strictly decreases along every edge of the quotient graph.
bool height_is_morse(const VerticalGradient& g);

// Intervals [Front(S), Incl(S*)] of the given stacks (indexed like the
// complex). With inside_only, intervals must lie in the complex.
VectorField gradient_from_stacks(const ChromaticPointCloud& cloud, const SimplicialComplex& k,
                                 const std::vector<StackSolution>& stacks, const VertexSet& E,
                                 bool inside_only);
VectorField filtration_gradient(const ChromaticPointCloud& cloud, const SelectiveFiltration& f);

// Cech gradient on the simplices of k (intervals may leave k).
VectorField cech_gradient(const ChromaticPointCloud& cloud, const SimplicialComplex& k,
                          int threads = 1);

// The function is constant on intervals and strictly increases from face to
// coface across intervals.
bool is_morse_function(const SimplicialComplex& k, const VectorField& v,
                       const std::vector<double>& values, double tol = 0.0);

struct CollapseCheck {
  // "refinement": DelCech_r(X, nu) onto DelCech_r(X, mu);
  // "cech": Cech_r(X) onto DelCech_r(X, mu); "alpha": DelCech_r(X, mu) onto
  // Alpha_r(X, mu).
  std::string step;
  double r = 0.0;
  std::size_t source_size = 0;
  std::size_t target_size = 0;
  std::size_t steps = 0;
};

struct CollapseReport {
  std::vector<double> radii;
  std::vector<CollapseCheck> checks;
  double max_snap = 0.0;  // largest value change when snapping intervals
};

struct CollapseOptions {
  std::optional<std::vector<double>> radii;  // default: critical values, midpoints, infinity
  bool refinement = true;  // the nu to mu collapse
  bool chain = true;       // Cech to DelCech to Alpha
  int threads = 1;
};

// Builds the gradients of every collapse step (nu refining the cloud's
// colouring mu), restricts them to each radius and executes the collapses.
// Any failure throws.
CollapseReport verify_collapse_theorems(const ChromaticPointCloud& cloud, const Colouring& nu,
                                        const CollapseOptions& opt = {});

// Elementary refinements nu = c_0, c_1, ..., c_k = mu, each c_i refining
// c_{i+1} by one class.
std::vector<Colouring> refinement_chain(const Colouring& nu, const Colouring& mu);

}  // namespace ctda
