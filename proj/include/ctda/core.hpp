#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "ctda/simplex.hpp"

namespace ctda {

using Point = Eigen::VectorXd;
using PointList = std::vector<Point>;
// A colouring assigns a label to each vertex index.
using Colouring = std::vector<int>;

// Relative tolerance for floating predicates, scaled by the coordinate scale.
inline constexpr double kRelTol = 1e-9;

struct ChromaticPointCloud {
  PointList points;
  Colouring colours;  // canonical: labels 0..s in order of first appearance
  int d = 0;
  int s = 0;  // number of colours minus one

  std::size_t size() const { return points.size(); }
  int colour_count() const { return s + 1; }
  std::vector<int> colour_class(int m) const;
  // Colours of the vertices of sigma, sorted and distinct.
  std::vector<int> colours_of(const Simplex& sigma) const;
  // Largest distance between two points (0 for fewer than two points).
  double diameter() const;
};

// Relabel to 0..s in first-appearance order.
Colouring canonicalize_colouring(const Colouring& colours);

ChromaticPointCloud validate_chromatic_set(const PointList& points, const Colouring& colours);
ChromaticPointCloud validate_chromatic_set(const std::vector<std::vector<double>>& rows,
                                           const Colouring& colours);
// Same points, different colouring.
ChromaticPointCloud recolour(const ChromaticPointCloud& cloud, const Colouring& colours);
Colouring monochromatic(std::size_t n);
Colouring maximal_colouring(std::size_t n);

// (x, e_m) in R^{d+s}; e_0 = 0 and e_m the m-th standard basis vector.
PointList chromatic_lift(const ChromaticPointCloud& cloud);

// True iff every class of mu is a union of classes of nu.
bool is_refinement(const Colouring& nu, const Colouring& mu);
// True iff nu refines mu and has exactly one more class.
bool is_elementary_refinement(const Colouring& nu, const Colouring& mu);

struct Sphere {
  Point centre;
  double radius = 0.0;
};

// Smallest sphere through affinely independent points (centre in their
// affine hull).
Sphere circumsphere_through(const PointList& points);

// Dimension of the affine hull, with singular values below tol * scale
// treated as zero.
int affine_dimension(const PointList& points, double rel_tol = kRelTol);

struct GpReport {
  bool gp1 = true;  // no k+3 lifted points on a common k-sphere
  bool gp3 = true;  // direct-sum condition on partitions
  bool ok = true;
  std::string witness_kind;
  std::vector<int> witness;  // vertex indices
  std::vector<std::vector<int>> witness_parts;  // partition, for GP3
};

struct GpOptions {
  bool exact = false;  // rational arithmetic instead of tolerances
  double budget = 1e7;  // maximum number of subsets/partitions examined
};

GpReport check_general_position(const ChromaticPointCloud& cloud, const GpOptions& opt = {});

}  // namespace ctda
