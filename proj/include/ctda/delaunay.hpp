#pragma once

#include "ctda/core.hpp"
#include "ctda/simplex.hpp"

namespace ctda {

struct Triangulation {
  SimplicialComplex complex;
  PointList coordinates;      // vertex coordinates in the ambient space
  std::vector<Simplex> tops;  // maximal simplices, sorted
  int top_dimension = -1;
};

struct DelaunayOptions {
  int dim_cap = 8;
  std::uint64_t shuffle_seed = 0x5eed;  // insertion order; output does not depend on it
};

// Delaunay triangulation via the lower hull of the paraboloid lift. Input
// spanning a lower-dimensional flat is triangulated inside that flat.
Triangulation delaunay_triangulation(const PointList& points, const DelaunayOptions& opt = {});

// Delaunay triangulation of the chromatic lift.
Triangulation chromatic_delaunay(const ChromaticPointCloud& cloud, const DelaunayOptions& opt = {});

// Brute force: does some sphere through sigma have no other point strictly
// inside? Independent of the hull code.
bool delaunay_membership_oracle(const PointList& points, const Simplex& sigma);

struct EmbeddingReport {
  bool all_present = true;
  std::size_t checked = 0;
  std::optional<Simplex> missing;
  // Elementary refinements only: the embedded coarse complex is a graph over
  // the last coordinate (no two of its top simplices overlap vertically).
  bool membrane_is_graph = true;
};

// Checks Del(X, mu) embeds in Del(X, nu) on vertex indices. Throws
// NotRefinement, and MissingSimplex on the first missing simplex.
EmbeddingReport embed_subcomplex(const ChromaticPointCloud& cloud, const Colouring& mu,
                                 const Colouring& nu);

}  // namespace ctda
