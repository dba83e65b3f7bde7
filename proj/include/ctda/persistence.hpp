#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "ctda/filtration.hpp"

namespace ctda {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct PersistencePair {
  int degree = 0;
  double birth = 0.0;
  double death = kInfinity;

  bool essential() const { return death == kInfinity; }
  friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
};

struct PersistenceDiagram {
  std::vector<PersistencePair> pairs;  // sorted by (degree, birth, death)

  std::size_t size() const { return pairs.size(); }
  PersistenceDiagram degree(int k) const;
  void sort();
};

struct PersistenceOptions {
  int max_degree = -1;  // -1: every degree below the top dimension
  // Keep pairs with death - birth <= zero_tol (verbose mode).
  bool keep_zero_length = false;
  double zero_tol = 0.0;
};

// GF(2) boundary matrix reduction with clearing, over the canonical
// (value, dimension, lexicographic) order. Throws NonMonotoneFiltration.
PersistenceDiagram compute_persistence(const FilteredComplex& f, const PersistenceOptions& opt = {});

// Bottleneck distance with the L-infinity ground metric; infinite when the
// essential class counts differ. Throws SizeLimitExceeded above
// kBottleneckLimit points in one degree.
inline constexpr std::size_t kBottleneckLimit = 200;
double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b);

// True when the diagrams can be matched with every bar moved by at most tol
// (bars shorter than 2 tol may go to the diagonal).
bool diagrams_equal(const PersistenceDiagram& a, const PersistenceDiagram& b, double tol = 1e-8);

// "degree,birth,death" with infinite deaths written as inf.
void write_diagram_csv(std::ostream& os, const PersistenceDiagram& d);
PersistenceDiagram read_diagram_csv(std::istream& is);

}  // namespace ctda
