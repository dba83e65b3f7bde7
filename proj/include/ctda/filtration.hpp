#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctda/core.hpp"
#include "ctda/delaunay.hpp"
#include "ctda/simplex.hpp"
#include "ctda/stack.hpp"

namespace ctda {

struct FilteredComplex {
  SimplicialComplex complex;
  std::vector<double> values;  // indexed like complex
  std::string kind;
  int d = 0;
  int s = 0;

  std::size_t size() const { return complex.size(); }
  // Throws MissingSimplex when sigma is not in the complex.
  double value(const Simplex& sigma) const;
  // Simplex indices sorted by (value, dimension, lexicographic).
  std::vector<std::size_t> filtration_order() const;
  // First (face, coface) pair with value(face) > value(coface) + tol.
  std::optional<std::pair<Simplex, Simplex>> monotonicity_violation(double tol = 0.0) const;
  // Simplices with value <= r.
  SimplicialComplex sublevel(double r) const;
};

struct FiltrationOptions {
  int dim_cap = -1;  // -1: no cap
  int threads = 1;
};

// Complete complexes on more than this many points need a dim_cap.
inline constexpr std::size_t kFullComplexLimit = 16;

FilteredComplex cech_filtration(const ChromaticPointCloud& cloud, const FiltrationOptions& opt = {});
FilteredComplex rips_filtration(const ChromaticPointCloud& cloud, const FiltrationOptions& opt = {});

// Complex Del(X, mu) for the colouring carried by the cloud. A precomputed
// triangulation can be passed to keep it out of timings.
FilteredComplex chromatic_alpha_filtration(const ChromaticPointCloud& cloud,
                                           const FiltrationOptions& opt = {},
                                           const Triangulation* tri = nullptr);
FilteredComplex del_cech_filtration(const ChromaticPointCloud& cloud,
                                    const FiltrationOptions& opt = {},
                                    const Triangulation* tri = nullptr);
FilteredComplex del_rips_filtration(const ChromaticPointCloud& cloud,
                                    const FiltrationOptions& opt = {},
                                    const Triangulation* tri = nullptr);

// Minimising stack of every simplex, kept for the Morse gradient.
struct SelectiveFiltration {
  FilteredComplex filtration;
  std::vector<StackSolution> stacks;  // indexed like filtration.complex
  VertexSet E;
};

// All sigma for which S(sigma, mu; E) exists, grown one vertex at a time.
SelectiveFiltration selective_alpha_filtration(const ChromaticPointCloud& cloud, const VertexSet& E,
                                               const FiltrationOptions& opt = {});
// Same values on a given complex; throws MissingSimplex if some simplex has
// no stack.
SelectiveFiltration selective_on_complex(const ChromaticPointCloud& cloud,
                                         const SimplicialComplex& complex, const VertexSet& E,
                                         const FiltrationOptions& opt = {});

// Simplices whose colour set is a simplex of gamma (a complex on colour
// labels). Throws InvalidGamma when gamma is not face-closed.
FilteredComplex gamma_subfiltration(const FilteredComplex& f, const Colouring& colours,
                                    const std::vector<Simplex>& gamma);
// Gamma made of all colour sets of size at most k.
std::vector<Simplex> k_chromatic_gamma(int colour_count, int k);

struct NestingReport {
  bool ok = true;
  double delta = 0.0;
  double max_ratio = 1.0;  // max Cech / Rips over simplices with positive Rips value
  std::size_t checked = 0;
  std::optional<Simplex> violation;
};

double nesting_delta(int d);
NestingReport verify_nesting(const ChromaticPointCloud& cloud, const FiltrationOptions& opt = {},
                             const Triangulation* tri = nullptr);

const char* const kKindCech = "cech";
const char* const kKindRips = "rips";
const char* const kKindAlpha = "alpha";
const char* const kKindSelective = "selective";
const char* const kKindDelCech = "del-cech";
const char* const kKindDelRips = "del-rips";

}  // namespace ctda
