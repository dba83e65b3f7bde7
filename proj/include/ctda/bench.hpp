#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ctda/core.hpp"

namespace ctda {

struct BenchmarkRecord {
  std::string scheme;
  std::size_t n = 0;
  int d = 0;
  int s = 0;  // number of colours
  std::string kind;  // alpha, del-cech, del-rips, triangulation
  std::uint64_t seed = 0;
  double median_triangulation_seconds = 0.0;
  double median_seconds = 0.0;  // filtration values only
  std::size_t simplex_count = 0;
};

struct BenchOptions {
  int repeats = 5;
  int threads = 1;
  std::vector<std::size_t> sizes;  // overrides the grid of the points scheme
  std::vector<int> values;         // overrides d (dimension) or s (colours)
};

// n points uniform in [0,1]^2, colours uniform in {0..colours-1}.
ChromaticPointCloud sample_square(std::size_t n, int colours, std::uint64_t seed);
// n points uniform in the unit ball of R^d.
ChromaticPointCloud sample_ball(std::size_t n, int d, int colours, std::uint64_t seed);

// One record per filtration kind plus the triangulation baseline.
std::vector<BenchmarkRecord> bench_cloud(const ChromaticPointCloud& cloud, const std::string& scheme,
                                         std::uint64_t seed, const BenchOptions& opt = {});

// scheme: points, dimension or colours.
std::vector<BenchmarkRecord> run_benchmark(const std::string& scheme, std::uint64_t seed,
                                           const BenchOptions& opt = {});

void write_benchmark_csv(std::ostream& os, const std::vector<BenchmarkRecord>& records);

}  // namespace ctda
