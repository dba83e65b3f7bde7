#include "ctda/persistence.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "ctda/errors.hpp"

namespace ctda {

PersistenceDiagram PersistenceDiagram::degree(int k) const {
  PersistenceDiagram out;
  for (const auto& p : pairs)
    if (p.degree == k) out.pairs.push_back(p);
  return out;
}

void PersistenceDiagram::sort() {
  std::sort(pairs.begin(), pairs.end(), [](const PersistencePair& a, const PersistencePair& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
  });
}

PersistenceDiagram compute_persistence(const FilteredComplex& f, const PersistenceOptions& opt) {
  if (auto bad = f.monotonicity_violation(0.0))
    throw Error(ErrorKind::NonMonotoneFiltration,
                "face " + bad->first.str() + " enters after " + bad->second.str(),
                bad->second.to_vector());
  const int top = f.complex.dimension();
  const int max_degree = opt.max_degree < 0 ? top - 1 : opt.max_degree;

  // Simplices up to dimension max_degree + 1, in filtration order.
  std::vector<std::size_t> order;
  for (std::size_t i : f.filtration_order())
    if (f.complex[i].dim() <= max_degree + 1) order.push_back(i);
  const std::size_t n = order.size();
  std::vector<std::size_t> pos(f.size(), SIZE_MAX);
  for (std::size_t j = 0; j < n; ++j) pos[order[j]] = j;

  // Columns as sorted row lists; reduced by symmetric difference.
  std::vector<std::vector<std::size_t>> col(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Simplex& s = f.complex[order[j]];
    if (s.size() < 2) continue;
    for (const Simplex& face : s.facets()) col[j].push_back(pos[*f.complex.index_of(face)]);
    std::sort(col[j].begin(), col[j].end());
  }

  std::vector<std::size_t> pivot_owner(n, SIZE_MAX);
  std::vector<bool> paired(n, false);
  std::vector<std::size_t> scratch;
  // Process by decreasing dimension so that clearing applies.
  for (int dim = max_degree + 1; dim >= 1; --dim) {
    for (std::size_t j = 0; j < n; ++j) {
      if (f.complex[order[j]].dim() != dim) continue;
      if (paired[j]) {  // cleared: column j is a death column, hence zero here
        col[j].clear();
        continue;
      }
      auto& c = col[j];
      while (!c.empty() && pivot_owner[c.back()] != SIZE_MAX) {
        const auto& other = col[pivot_owner[c.back()]];
        scratch.clear();
        std::set_symmetric_difference(c.begin(), c.end(), other.begin(), other.end(),
                                      std::back_inserter(scratch));
        c.swap(scratch);
      }
      if (!c.empty()) {
        pivot_owner[c.back()] = j;
        paired[c.back()] = true;
        paired[j] = true;
      }
    }
  }

  PersistenceDiagram out;
  for (std::size_t j = 0; j < n; ++j) {
    const int dim = f.complex[order[j]].dim();
    if (dim > max_degree) continue;
    const double birth = f.values[order[j]];
    if (pivot_owner[j] != SIZE_MAX) {
      const double death = f.values[order[pivot_owner[j]]];
      if (death - birth > opt.zero_tol || opt.keep_zero_length)
        out.pairs.push_back({dim, birth, death});
    } else if (!paired[j]) {
      out.pairs.push_back({dim, birth, kInfinity});
    }
  }
  out.sort();
  return out;
}

namespace {

// Perfect matching feasibility on a bipartite graph given by adjacency lists
// (Kuhn's augmenting paths).
bool augment(const std::vector<std::vector<int>>& adj, int u, int stamp, std::vector<int>& seen,
             std::vector<int>& match_right) {
  for (int r : adj[u]) {
    if (seen[r] == stamp) continue;
    seen[r] = stamp;
    if (match_right[r] < 0 || augment(adj, match_right[r], stamp, seen, match_right)) {
      match_right[r] = u;
      return true;
    }
  }
  return false;
}

bool has_perfect_matching(const std::vector<std::vector<int>>& adj, int right_size) {
  std::vector<int> match_right(right_size, -1);
  std::vector<int> seen(right_size, -1);
  for (int u = 0; u < static_cast<int>(adj.size()); ++u)
    if (!augment(adj, u, u, seen, match_right)) return false;
  return true;
}

double linf(const PersistencePair& a, const PersistencePair& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diag_cost(const PersistencePair& a) { return 0.5 * (a.death - a.birth); }

bool feasible(const std::vector<PersistencePair>& a, const std::vector<PersistencePair>& b,
              double eps) {
  // Left: a points then diagonal copies of b. Right: b points then diagonal
  // copies of a.
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  std::vector<std::vector<int>> adj(na + nb);
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nb; ++j)
      if (linf(a[i], b[j]) <= eps) adj[i].push_back(j);
    if (diag_cost(a[i]) <= eps) adj[i].push_back(nb + i);
  }
  for (int j = 0; j < nb; ++j) {
    if (diag_cost(b[j]) <= eps) adj[na + j].push_back(j);
    for (int i = 0; i < na; ++i) adj[na + j].push_back(nb + i);
  }
  return has_perfect_matching(adj, na + nb);
}

double finite_bottleneck(const std::vector<PersistencePair>& a,
                         const std::vector<PersistencePair>& b) {
  if (a.size() > kBottleneckLimit || b.size() > kBottleneckLimit)
    throw Error(ErrorKind::SizeLimitExceeded, "diagram too large for exact bottleneck");
  std::vector<double> cand{0.0};
  for (const auto& p : a) {
    cand.push_back(diag_cost(p));
    for (const auto& q : b) cand.push_back(linf(p, q));
  }
  for (const auto& q : b) cand.push_back(diag_cost(q));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::size_t lo = 0, hi = cand.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (feasible(a, b, cand[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return cand[lo];
}

void split(const PersistenceDiagram& d, int degree, std::vector<PersistencePair>& finite,
           std::vector<double>& essential) {
  for (const auto& p : d.pairs) {
    if (p.degree != degree) continue;
    if (p.essential())
      essential.push_back(p.birth);
    else
      finite.push_back(p);
  }
  std::sort(essential.begin(), essential.end());
}

}  // namespace

double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  int max_deg = -1;
  for (const auto& p : a.pairs) max_deg = std::max(max_deg, p.degree);
  for (const auto& p : b.pairs) max_deg = std::max(max_deg, p.degree);
  double dist = 0.0;
  for (int k = 0; k <= max_deg; ++k) {
    std::vector<PersistencePair> fa, fb;
    std::vector<double> ea, eb;
    split(a, k, fa, ea);
    split(b, k, fb, eb);
    if (ea.size() != eb.size()) return kInfinity;
    // Essential classes: sorted births matched in order.
    for (std::size_t i = 0; i < ea.size(); ++i) dist = std::max(dist, std::abs(ea[i] - eb[i]));
    dist = std::max(dist, finite_bottleneck(fa, fb));
  }
  return dist;
}

bool diagrams_equal(const PersistenceDiagram& a, const PersistenceDiagram& b, double tol) {
  return bottleneck_distance(a, b) <= tol;
}

namespace {

std::string fmt(double v) {
  if (v == kInfinity) return "inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_value(const std::string& s) {
  if (s == "inf") return kInfinity;
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::InvalidArgument, "bad number '" + s + "' in diagram");
  return v;
}

}  // namespace

void write_diagram_csv(std::ostream& os, const PersistenceDiagram& d) {
  PersistenceDiagram sorted = d;
  sorted.sort();
  os << "degree,birth,death\n";
  for (const auto& p : sorted.pairs) os << p.degree << ',' << fmt(p.birth) << ',' << fmt(p.death) << '\n';
}

PersistenceDiagram read_diagram_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "degree,birth,death")
    throw Error(ErrorKind::InvalidArgument, "diagram header must be degree,birth,death");
  PersistenceDiagram d;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c))
      throw Error(ErrorKind::InvalidArgument, "bad diagram row '" + line + "'");
    d.pairs.push_back({std::stoi(a), parse_value(b), parse_value(c)});
  }
  d.sort();
  return d;
}

}  // namespace ctda
