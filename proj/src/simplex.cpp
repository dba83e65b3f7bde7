#include "ctda/simplex.hpp"

#include <algorithm>
#include <unordered_set>

#include "ctda/errors.hpp"

namespace ctda {

Simplex::Simplex(std::initializer_list<int> vs) : Simplex(std::vector<int>(vs)) {}

Simplex::Simplex(const std::vector<int>& vs) {
  std::vector<int> sorted(vs);
  std::sort(sorted.begin(), sorted.end());
  if (sorted.size() > static_cast<std::size_t>(kMaxVertices))
    throw Error(ErrorKind::SizeLimitExceeded,
                "simplex with more than " + std::to_string(kMaxVertices) + " vertices");
  for (int v : sorted) push_sorted_checked(v);
}

void Simplex::push_sorted_checked(int v) {
  if (v < 0) throw Error(ErrorKind::InvalidArgument, "negative vertex index");
  if (n_ > 0 && v_[n_ - 1] >= v)
    throw Error(ErrorKind::InvalidArgument, "repeated vertex in simplex");
  v_[n_++] = v;
}

bool Simplex::contains(int v) const {
  return std::binary_search(begin(), end(), v);
}

bool Simplex::is_face_of(const Simplex& other) const {
  return std::includes(other.begin(), other.end(), begin(), end());
}

Simplex Simplex::without(int v) const {
  Simplex r;
  for (int x : *this)
    if (x != v) r.v_[r.n_++] = x;
  return r;
}

Simplex Simplex::with(int v) const {
  if (contains(v)) return *this;
  if (n_ == kMaxVertices)
    throw Error(ErrorKind::SizeLimitExceeded, "simplex vertex capacity exceeded");
  Simplex r;
  bool placed = false;
  for (int x : *this) {
    if (!placed && v < x) {
      r.v_[r.n_++] = v;
      placed = true;
    }
    r.v_[r.n_++] = x;
  }
  if (!placed) r.v_[r.n_++] = v;
  return r;
}

Simplex Simplex::set_union(const Simplex& other) const {
  std::vector<int> out;
  std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
  return Simplex(out);
}

Simplex Simplex::set_intersection(const Simplex& other) const {
  Simplex r;
  for (int x : *this)
    if (other.contains(x)) r.v_[r.n_++] = x;
  return r;
}

Simplex Simplex::set_difference(const Simplex& other) const {
  Simplex r;
  for (int x : *this)
    if (!other.contains(x)) r.v_[r.n_++] = x;
  return r;
}

std::string Simplex::str() const {
  std::string s;
  for (int i = 0; i < n_; ++i) {
    if (i) s += ' ';
    s += std::to_string(v_[i]);
  }
  return s;
}

std::vector<Simplex> Simplex::faces() const {
  std::vector<Simplex> out;
  const unsigned full = (1u << n_);
  out.reserve(full - 1);
  for (unsigned mask = 1; mask < full; ++mask) {
    Simplex f;
    for (int i = 0; i < n_; ++i)
      if (mask & (1u << i)) f.v_[f.n_++] = v_[i];
    out.push_back(f);
  }
  return out;
}

std::vector<Simplex> Simplex::facets() const {
  std::vector<Simplex> out;
  if (n_ <= 1) return out;
  for (int i = 0; i < n_; ++i) out.push_back(without(v_[i]));
  return out;
}

bool operator==(const Simplex& a, const Simplex& b) {
  return a.n_ == b.n_ && std::equal(a.begin(), a.end(), b.begin());
}

bool operator<(const Simplex& a, const Simplex& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::size_t SimplexHash::operator()(const Simplex& s) const {
  std::uint64_t h = 1469598103934665603ull;
  for (int v : s) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

SimplicialComplex SimplicialComplex::from_maximal(const std::vector<Simplex>& tops) {
  std::unordered_set<Simplex, SimplexHash> all;
  for (const Simplex& t : tops) {
    if (t.empty()) continue;
    if (all.count(t)) continue;
    for (const Simplex& f : t.faces()) all.insert(f);
  }
  SimplicialComplex k;
  k.simplices_.assign(all.begin(), all.end());
  std::sort(k.simplices_.begin(), k.simplices_.end(), DimLexLess{});
  k.build_index();
  return k;
}

SimplicialComplex SimplicialComplex::from_simplices(std::vector<Simplex> simplices) {
  SimplicialComplex k;
  k.simplices_ = std::move(simplices);
  std::sort(k.simplices_.begin(), k.simplices_.end(), DimLexLess{});
  k.simplices_.erase(std::unique(k.simplices_.begin(), k.simplices_.end()), k.simplices_.end());
  k.build_index();
  for (const Simplex& s : k.simplices_)
    for (const Simplex& f : s.facets())
      if (!k.contains(f))
        throw Error(ErrorKind::InvalidArgument,
                    "simplex set is not closed under faces: missing " + f.str(), f.to_vector());
  return k;
}

SimplicialComplex SimplicialComplex::full_simplex(int n, int dim_cap) {
  if (n <= 0) return {};
  const int top = dim_cap < 0 ? n - 1 : std::min(n - 1, dim_cap);
  if (top + 1 > Simplex::kMaxVertices)
    throw Error(ErrorKind::SizeLimitExceeded, "full simplex too large");
  std::vector<Simplex> out;
  // Grow by dimension: extend each simplex by vertices above its maximum.
  std::vector<Simplex> layer;
  for (int v = 0; v < n; ++v) layer.push_back(Simplex{v});
  for (int dim = 0; dim <= top; ++dim) {
    out.insert(out.end(), layer.begin(), layer.end());
    if (dim == top) break;
    std::vector<Simplex> next;
    for (const Simplex& s : layer)
      for (int v = s[s.size() - 1] + 1; v < n; ++v) next.push_back(s.with(v));
    layer.swap(next);
  }
  SimplicialComplex k;
  k.simplices_ = std::move(out);
  std::sort(k.simplices_.begin(), k.simplices_.end(), DimLexLess{});
  k.build_index();
  return k;
}

void SimplicialComplex::build_index() {
  index_.clear();
  index_.reserve(simplices_.size());
  for (std::size_t i = 0; i < simplices_.size(); ++i) index_.emplace(simplices_[i], i);
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t SimplicialComplex::vertex_count() const {
  std::size_t c = 0;
  for (const Simplex& s : simplices_) {
    if (s.size() != 1) break;
    ++c;
  }
  return c;
}

long SimplicialComplex::euler_characteristic() const {
  long chi = 0;
  for (const Simplex& s : simplices_) chi += (s.dim() % 2 == 0) ? 1 : -1;
  return chi;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
  HasseDiagram h = hasse_diagram(*this);
  std::vector<Simplex> out;
  for (std::size_t i = 0; i < simplices_.size(); ++i)
    if (h.cofacets[i].empty()) out.push_back(simplices_[i]);
  return out;
}

bool SimplicialComplex::is_subcomplex_of(const SimplicialComplex& other) const {
  for (const Simplex& s : simplices_)
    if (!other.contains(s)) return false;
  return true;
}

HasseDiagram hasse_diagram(const SimplicialComplex& k) {
  HasseDiagram h;
  h.facets.resize(k.size());
  h.cofacets.resize(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (const Simplex& f : k[i].facets()) {
      auto j = k.index_of(f);
      if (!j) continue;
      h.facets[i].push_back(*j);
      h.cofacets[*j].push_back(i);
    }
  }
  return h;
}

}  // namespace ctda
