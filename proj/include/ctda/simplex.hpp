#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ctda {

// Abstract simplex: a strictly increasing list of vertex indices. Stored
// inline; no simplex handled by this library has more than kMaxVertices.
class Simplex {
 public:
  static constexpr int kMaxVertices = 16;

  Simplex() = default;
  Simplex(std::initializer_list<int> vs);
  explicit Simplex(const std::vector<int>& vs);

  int size() const { return n_; }
  int dim() const { return n_ - 1; }
  bool empty() const { return n_ == 0; }
  int operator[](int i) const { return v_[i]; }
  const int* begin() const { return v_.data(); }
  const int* end() const { return v_.data() + n_; }

  bool contains(int v) const;
  bool is_face_of(const Simplex& other) const;
  Simplex without(int v) const;
  Simplex with(int v) const;
  Simplex set_union(const Simplex& other) const;
  Simplex set_intersection(const Simplex& other) const;
  Simplex set_difference(const Simplex& other) const;
  std::vector<int> to_vector() const { return {begin(), end()}; }
  std::string str() const;

  // Every non-empty face, this simplex included.
  std::vector<Simplex> faces() const;
  // Faces of codimension one.
  std::vector<Simplex> facets() const;

  friend bool operator==(const Simplex& a, const Simplex& b);
  friend bool operator!=(const Simplex& a, const Simplex& b) { return !(a == b); }
  // Lexicographic on the vertex list.
  friend bool operator<(const Simplex& a, const Simplex& b);

 private:
  std::array<int, kMaxVertices> v_{};
  std::uint8_t n_ = 0;

  void push_sorted_checked(int v);
};

// Order by (dimension, lexicographic).
struct DimLexLess {
  bool operator()(const Simplex& a, const Simplex& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const;
};

// Face-closed set of simplices, stored in (dimension, lexicographic) order.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  // Closure of the given simplices.
  static SimplicialComplex from_maximal(const std::vector<Simplex>& tops);
  // The given simplices must already be closed under faces.
  static SimplicialComplex from_simplices(std::vector<Simplex> simplices);
  static SimplicialComplex full_simplex(int n, int dim_cap = -1);

  std::size_t size() const { return simplices_.size(); }
  bool empty() const { return simplices_.empty(); }
  const Simplex& operator[](std::size_t i) const { return simplices_[i]; }
  const std::vector<Simplex>& simplices() const { return simplices_; }
  auto begin() const { return simplices_.begin(); }
  auto end() const { return simplices_.end(); }

  std::optional<std::size_t> index_of(const Simplex& s) const;
  bool contains(const Simplex& s) const { return index_.count(s) > 0; }
  int dimension() const { return simplices_.empty() ? -1 : simplices_.back().dim(); }
  std::size_t vertex_count() const;
  long euler_characteristic() const;
  std::vector<Simplex> maximal_simplices() const;

  bool is_subcomplex_of(const SimplicialComplex& other) const;
  bool operator==(const SimplicialComplex& other) const {
    return simplices_ == other.simplices_;
  }

 private:
  std::vector<Simplex> simplices_;
  std::unordered_map<Simplex, std::size_t, SimplexHash> index_;

  void build_index();
};

// Codimension-one incidences of a complex, by simplex index.
struct HasseDiagram {
  std::vector<std::vector<std::size_t>> facets;
  std::vector<std::vector<std::size_t>> cofacets;
};

HasseDiagram hasse_diagram(const SimplicialComplex& k);

}  // namespace ctda
