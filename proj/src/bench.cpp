#include "ctda/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "ctda/delaunay.hpp"
#include "ctda/errors.hpp"
#include "ctda/filtration.hpp"
#include "ctda/io.hpp"
#include "ctda/rng.hpp"

namespace ctda {

namespace {

// Colours are drawn until every label occurs, so the colouring is surjective.
Colouring draw_colours(std::size_t n, int colours, SplitMix64& rng) {
  Colouring c(n);
  for (int attempt = 0;; ++attempt) {
    std::vector<bool> seen(colours, false);
    for (auto& x : c) {
      x = static_cast<int>(rng.below(colours));
      seen[x] = true;
    }
    if (std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) return c;
    if (attempt > 100) throw Error(ErrorKind::InvalidArgument, "too few points for the colours");
  }
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

ChromaticPointCloud sample_square(std::size_t n, int colours, std::uint64_t seed) {
  SplitMix64 rng(seed);
  PointList pts(n, Point(2));
  for (auto& p : pts) {
    p[0] = rng.uniform();
    p[1] = rng.uniform();
  }
  return validate_chromatic_set(pts, draw_colours(n, colours, rng));
}

ChromaticPointCloud sample_ball(std::size_t n, int d, int colours, std::uint64_t seed) {
  SplitMix64 rng(seed);
  PointList pts(n, Point(d));
  for (auto& p : pts) {
    double norm = 0.0;
    while (norm == 0.0) {
      for (int k = 0; k < d; ++k) p[k] = rng.normal();
      norm = p.norm();
    }
    p *= std::pow(rng.uniform(), 1.0 / d) / norm;
  }
  return validate_chromatic_set(pts, draw_colours(n, colours, rng));
}

std::vector<BenchmarkRecord> bench_cloud(const ChromaticPointCloud& cloud, const std::string& scheme,
                                         std::uint64_t seed, const BenchOptions& opt) {
  const FiltrationOptions fopt{-1, opt.threads};
  const char* kinds[] = {kKindAlpha, kKindDelCech, kKindDelRips};
  std::vector<double> tri_times;
  std::vector<std::vector<double>> times(3);
  std::size_t count = 0;
  std::vector<std::size_t> counts(3);
  for (int rep = 0; rep < opt.repeats; ++rep) {
    Triangulation t;
    tri_times.push_back(seconds([&] { t = chromatic_delaunay(cloud); }));
    count = t.complex.size();
    for (int k = 0; k < 3; ++k) {
      FilteredComplex f;
      times[k].push_back(seconds([&] {
        if (k == 0) f = chromatic_alpha_filtration(cloud, fopt, &t);
        if (k == 1) f = del_cech_filtration(cloud, fopt, &t);
        if (k == 2) f = del_rips_filtration(cloud, fopt, &t);
      }));
      counts[k] = f.size();
    }
  }
  const double tri = median(tri_times);
  std::vector<BenchmarkRecord> out;
  for (int k = 0; k < 3; ++k)
    out.push_back({scheme, cloud.size(), cloud.d, cloud.colour_count(), kinds[k], seed, tri,
                   median(times[k]), counts[k]});
  out.push_back({scheme, cloud.size(), cloud.d, cloud.colour_count(), "triangulation", seed, tri,
                 tri, count});
  return out;
}

std::vector<BenchmarkRecord> run_benchmark(const std::string& scheme, std::uint64_t seed,
                                           const BenchOptions& opt) {
  std::vector<BenchmarkRecord> out;
  auto add = [&](const ChromaticPointCloud& c) {
    auto rows = bench_cloud(c, scheme, seed, opt);
    out.insert(out.end(), rows.begin(), rows.end());
  };
  if (scheme == "points") {
    std::vector<std::size_t> sizes = opt.sizes;
    if (sizes.empty())
      for (int i = 0; i < 6; ++i)
        sizes.push_back(static_cast<std::size_t>(std::lround(100.0 * std::pow(20.0, i / 5.0))));
    for (std::size_t n : sizes) add(sample_square(n, 2, seed));
  } else if (scheme == "dimension") {
    std::vector<int> ds = opt.values.empty() ? std::vector<int>{2, 3, 4, 5} : opt.values;
    for (int d : ds) add(sample_ball(200, d, 2, seed));
  } else if (scheme == "colours") {
    std::vector<int> ss = opt.values.empty() ? std::vector<int>{2, 3, 4, 5, 6} : opt.values;
    for (int s : ss) add(sample_square(500, s, seed));
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown scheme '" + scheme + "'");
  }
  return out;
}

void write_benchmark_csv(std::ostream& os, const std::vector<BenchmarkRecord>& records) {
  os << "scheme,n,d,s,kind,seed,median_triangulation_seconds,median_seconds,simplex_count\n";
  for (const auto& r : records)
    os << r.scheme << ',' << r.n << ',' << r.d << ',' << r.s << ',' << r.kind << ',' << r.seed << ','
       << format_double(r.median_triangulation_seconds) << ',' << format_double(r.median_seconds)
       << ',' << r.simplex_count << '\n';
}

}  // namespace ctda
