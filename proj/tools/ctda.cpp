// Command line front end. Errors go to stderr as one JSON object; the exit
// code is 1 for invalid input, 2 for a general position violation and 3 for
// a falsified invariant.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ctda/bench.hpp"
#include "ctda/delaunay.hpp"
#include "ctda/errors.hpp"
#include "ctda/filtration.hpp"
#include "ctda/io.hpp"
#include "ctda/morse.hpp"
#include "ctda/parallel.hpp"
#include "ctda/persistence.hpp"
#include "ctda/stability.hpp"

using namespace ctda;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string input;
  std::string colouring = "file";  // file, mono, maximal
  std::string kind = kKindAlpha;
  std::string exclude = "all";     // selective kind: "all", "none" or comma separated indices
  std::string nu;                  // collapse-check: comma separated refinement labels
  std::vector<std::string> radii;  // collapse-check: overrides the critical values
  int dim_cap = -1;
  int max_degree = -1;
  bool exact = false;
  double eta = 1e-6;
  std::optional<std::uint64_t> seed;
  std::string scheme = "points";
  std::vector<std::size_t> sizes;
  std::vector<int> values;
  int threads = 0;
  std::string output;
};

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "bad integer '" + item + "'");
    }
  }
  return out;
}

ChromaticPointCloud load_cloud(const RunConfig& cfg) {
  std::ifstream is(cfg.input);
  if (!is) throw Error(ErrorKind::InvalidArgument, "cannot open '" + cfg.input + "'");
  auto cloud = read_cloud_csv(is);
  if (cfg.colouring == "mono") return recolour(cloud, monochromatic(cloud.size()));
  if (cfg.colouring == "maximal") return recolour(cloud, maximal_colouring(cloud.size()));
  return cloud;
}

// Writes to -o when given, else to stdout.
template <class F>
void emit(const RunConfig& cfg, F&& write) {
  if (cfg.output.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream os(cfg.output, std::ios::binary);
  if (!os) throw Error(ErrorKind::InvalidArgument, "cannot write '" + cfg.output + "'");
  write(os);
}

VertexSet exclusion_set(const RunConfig& cfg, std::size_t n) {
  VertexSet e;
  if (cfg.exclude == "all") {
    e.resize(n);
    std::iota(e.begin(), e.end(), 0);
  } else if (cfg.exclude != "none") {
    e = parse_ints(cfg.exclude);
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    for (int v : e)
      if (v < 0 || static_cast<std::size_t>(v) >= n)
        throw Error(ErrorKind::InvalidArgument, "exclusion index out of range");
  }
  return e;
}

FilteredComplex build_filtration(const RunConfig& cfg, const ChromaticPointCloud& cloud) {
  const FiltrationOptions opt{cfg.dim_cap, resolve_threads(cfg.threads)};
  if (cfg.kind == kKindCech) return cech_filtration(cloud, opt);
  if (cfg.kind == kKindRips) return rips_filtration(cloud, opt);
  if (cfg.kind == kKindAlpha) return chromatic_alpha_filtration(cloud, opt);
  if (cfg.kind == kKindDelCech) return del_cech_filtration(cloud, opt);
  if (cfg.kind == kKindDelRips) return del_rips_filtration(cloud, opt);
  if (cfg.kind == kKindSelective)
    return selective_alpha_filtration(cloud, exclusion_set(cfg, cloud.size()), opt).filtration;
  throw Error(ErrorKind::InvalidArgument, "unknown filtration kind '" + cfg.kind + "'");
}

bool ends_with(const std::string& s, const std::string& tail) {
  return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

int fail(ErrorKind kind, const std::string& message, const std::vector<int>& witness = {}) {
  json j{{"error", error_name(kind)}, {"message", message}, {"exit_code", exit_code_for(kind)}};
  if (!witness.empty()) j["witness"] = witness;
  std::cerr << j.dump() << std::endl;
  return exit_code_for(kind);
}

int run(const std::string& command, const RunConfig& cfg) {
  if (command != "bench" && !std::filesystem::is_regular_file(cfg.input))
    throw Error(ErrorKind::InvalidArgument, "input '" + cfg.input + "' is not a file");

  if (command == "triangulate") {
    auto cloud = load_cloud(cfg);
    DelaunayOptions opt;
    if (cfg.dim_cap >= 0) opt.dim_cap = cfg.dim_cap;
    auto t = chromatic_delaunay(cloud, opt);
    emit(cfg, [&](std::ostream& os) { write_triangulation_json(os, cloud, t); });
  } else if (command == "filtrate") {
    auto f = build_filtration(cfg, load_cloud(cfg));
    emit(cfg, [&](std::ostream& os) { write_filtration_json(os, f); });
  } else if (command == "persist") {
    // Either a filtration JSON written by filtrate or a point cloud CSV.
    FilteredComplex f;
    if (ends_with(cfg.input, ".json")) {
      std::ifstream is(cfg.input);
      f = read_filtration_json(is);
    } else {
      f = build_filtration(cfg, load_cloud(cfg));
    }
    PersistenceOptions opt;
    opt.max_degree = cfg.max_degree;
    auto d = compute_persistence(f, opt);
    emit(cfg, [&](std::ostream& os) { write_diagram_csv(os, d); });
  } else if (command == "collapse-check") {
    auto cloud = load_cloud(cfg);
    Colouring nu = cfg.nu.empty() ? cloud.colours : parse_ints(cfg.nu);
    if (nu.size() != cloud.size())
      throw Error(ErrorKind::LengthMismatch, "refinement has " + std::to_string(nu.size()) +
                                                 " labels for " + std::to_string(cloud.size()) +
                                                 " points");
    CollapseOptions opt;
    opt.threads = resolve_threads(cfg.threads);
    if (!cfg.radii.empty()) {
      std::vector<double> r;
      for (const auto& s : cfg.radii) {
        try {
          r.push_back(s == "inf" ? kInfinity : std::stod(s));
        } catch (const std::exception&) {
          throw Error(ErrorKind::InvalidArgument, "bad radius '" + s + "'");
        }
      }
      opt.radii = r;
    }
    auto rep = verify_collapse_theorems(cloud, nu, opt);
    emit(cfg, [&](std::ostream& os) { os << collapse_report_json(rep) << '\n'; });
  } else if (command == "gp-check") {
    GpOptions opt;
    opt.exact = cfg.exact;
    auto rep = check_general_position(load_cloud(cfg), opt);
    emit(cfg, [&](std::ostream& os) { os << gp_report_json(rep) << '\n'; });
    if (!rep.ok)
      return fail(ErrorKind::GeneralPositionViolation, "general position fails: " + rep.witness_kind,
                  rep.witness);
  } else if (command == "stability") {
    if (!cfg.seed) throw Error(ErrorKind::InvalidArgument, "stability needs --seed");
    auto rep = perturbation_experiment(load_cloud(cfg), cfg.eta, *cfg.seed, resolve_threads(cfg.threads));
    emit(cfg, [&](std::ostream& os) { os << rep.to_json() << '\n'; });
  } else if (command == "bench") {
    if (!cfg.seed) throw Error(ErrorKind::InvalidArgument, "bench needs --seed");
    BenchOptions opt;
    opt.threads = resolve_threads(cfg.threads);
    opt.sizes = cfg.sizes;
    opt.values = cfg.values;
    auto rows = run_benchmark(cfg.scheme, *cfg.seed, opt);
    emit(cfg, [&](std::ostream& os) { write_benchmark_csv(os, rows); });
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chromatic Delaunay filtrations, persistence and collapse checks"};
  app.require_subcommand(1);
  app.fallthrough();  // --threads may follow the subcommand
  RunConfig cfg;
  app.add_option("--threads", cfg.threads, "worker threads (default: CHROMATIC_TDA_THREADS or 1)");

  auto input = [&](CLI::App* sub) { sub->add_option("input", cfg.input, "point cloud CSV")->required(); };
  auto output = [&](CLI::App* sub) { sub->add_option("-o,--output", cfg.output, "output file (default stdout)"); };
  auto colouring = [&](CLI::App* sub) {
    sub->add_option("--colouring", cfg.colouring, "colours from the file, or mono / maximal")
        ->check(CLI::IsMember({"file", "mono", "maximal"}));
  };
  auto kind = [&](CLI::App* sub) {
    sub->add_option("--kind", cfg.kind, "filtration kind")
        ->check(CLI::IsMember({kKindCech, kKindRips, kKindAlpha, kKindSelective, kKindDelCech, kKindDelRips}));
    sub->add_option("--dim-cap", cfg.dim_cap, "largest simplex dimension");
    sub->add_option("--exclude", cfg.exclude, "excluded points for the selective kind: all, none or i,j,...");
  };

  auto* tri = app.add_subcommand("triangulate", "chromatic Delaunay complex as JSON");
  input(tri), output(tri), colouring(tri);
  tri->add_option("--dim-cap", cfg.dim_cap, "largest lifted dimension");

  auto* filt = app.add_subcommand("filtrate", "filtration values as JSON");
  input(filt), output(filt), colouring(filt), kind(filt);

  auto* pers = app.add_subcommand("persist", "persistence diagram as CSV");
  pers->add_option("input", cfg.input, "point cloud CSV or filtration JSON")->required();
  output(pers), colouring(pers), kind(pers);
  pers->add_option("--max-degree", cfg.max_degree, "highest homology degree");

  auto* coll = app.add_subcommand("collapse-check", "execute the collapses between the filtrations");
  input(coll), output(coll), colouring(coll);
  coll->add_option("--nu", cfg.nu, "refining colouring as comma separated labels");
  coll->add_option("--radii", cfg.radii, "radii to check (inf allowed); default all critical values")
      ->delimiter(',');

  auto* gp = app.add_subcommand("gp-check", "general position report");
  input(gp), output(gp), colouring(gp);
  gp->add_flag("--exact", cfg.exact, "rational arithmetic");

  auto* stab = app.add_subcommand("stability", "perturbation experiment");
  input(stab), output(stab), colouring(stab);
  stab->add_option("--eta", cfg.eta, "perturbation radius")->check(CLI::PositiveNumber);
  stab->add_option("--seed", cfg.seed, "random seed")->required();

  auto* bench = app.add_subcommand("bench", "median build times as CSV");
  output(bench);
  bench->add_option("--scheme", cfg.scheme, "points, dimension or colours")
      ->check(CLI::IsMember({"points", "dimension", "colours"}));
  bench->add_option("--seed", cfg.seed, "random seed")->required();
  bench->add_option("--sizes", cfg.sizes, "point counts for the points scheme")->delimiter(',');
  bench->add_option("--values", cfg.values, "d or colour counts for the other schemes")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(ErrorKind::InvalidArgument, e.what());
  }

  try {
    return run(app.get_subcommands().front()->get_name(), cfg);
  } catch (const Error& e) {
    return fail(e.kind(), e.what(), e.witness());
  } catch (const std::exception& e) {
    return fail(ErrorKind::InvalidArgument, e.what());
  }
}
