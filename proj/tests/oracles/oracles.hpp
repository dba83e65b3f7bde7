#pragma once

#include <optional>
#include <vector>

#include "ctda/core.hpp"
#include "ctda/simplex.hpp"

// Brute-force reference implementations. None of them calls the production
// solvers they are compared against.
namespace ctda::oracle {

struct Ball {
  Point centre;
  double radius = 0.0;
};

// Smallest sphere through each affinely independent subset of at most d+1
// points; the smallest one enclosing everything wins.
Ball brute_force_meb(const PointList& points);

// Minimum-radius stack including sigma and excluding E, by enumerating the
// faces of the polyhedron of feasible centres. nullopt when infeasible.
std::optional<Ball> brute_force_min_stack(const ChromaticPointCloud& cloud, const Simplex& sigma,
                                          const std::vector<int>& E);

// Rad(S(sigma, mu; X)); nullopt when sigma is not in Alpha_inf(X, mu).
std::optional<double> brute_force_alpha_value(const ChromaticPointCloud& cloud, const Simplex& sigma);

// Smallest empty sphere through sigma, from circumspheres of sigma plus
// extra points.
std::optional<double> min_empty_circumsphere(const PointList& points, const Simplex& sigma);

// The circumsphere of sigma in its own affine hull is empty and its centre
// lies in the relative interior of sigma.
bool centred_empty_simplex(const PointList& points, const Simplex& sigma);

// Betti numbers over GF(2) of a face-closed simplex list, by ranks of dense
// boundary matrices.
std::vector<int> betti_numbers(const std::vector<Simplex>& complex, int max_degree);

}  // namespace ctda::oracle
