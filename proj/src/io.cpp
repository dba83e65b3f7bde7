#include "ctda/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "ctda/errors.hpp"

namespace ctda {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  return out;
}

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::InvalidArgument,
                "line " + std::to_string(line) + ": '" + s + "' is not a number");
  return v;
}

std::string json_vertices(const Simplex& s) {
  std::string out = "[";
  for (int i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "]";
}

}  // namespace

ChromaticPointCloud read_cloud_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorKind::InvalidArgument, "empty input");
  const auto header = split_csv(line);
  if (header.size() < 2 || header.back() != "colour")
    throw Error(ErrorKind::InvalidArgument, "header must be x0,...,x{d-1},colour");
  const std::size_t d = header.size() - 1;
  for (std::size_t k = 0; k < d; ++k)
    if (header[k] != "x" + std::to_string(k))
      throw Error(ErrorKind::InvalidArgument, "header must be x0,...,x{d-1},colour");
  std::vector<std::vector<double>> rows;
  Colouring colours;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv(line);
    if (cells.size() != d + 1)
      throw Error(ErrorKind::DimensionMismatch,
                  "line " + std::to_string(lineno) + " has " + std::to_string(cells.size()) +
                      " fields, expected " + std::to_string(d + 1));
    std::vector<double> row;
    for (std::size_t k = 0; k < d; ++k) row.push_back(parse_double(cells[k], lineno));
    int c = 0;
    auto res = std::from_chars(cells[d].data(), cells[d].data() + cells[d].size(), c);
    if (res.ec != std::errc() || res.ptr != cells[d].data() + cells[d].size())
      throw Error(ErrorKind::InvalidArgument,
                  "line " + std::to_string(lineno) + ": colour must be an integer");
    rows.push_back(std::move(row));
    colours.push_back(c);
  }
  return validate_chromatic_set(rows, colours);
}

void write_cloud_csv(std::ostream& os, const ChromaticPointCloud& cloud) {
  for (int k = 0; k < cloud.d; ++k) os << 'x' << k << ',';
  os << "colour\n";
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (int k = 0; k < cloud.d; ++k) os << format_double(cloud.points[i][k]) << ',';
    os << cloud.colours[i] << '\n';
  }
}

void write_filtration_json(std::ostream& os, const FilteredComplex& f) {
  os << "{\"d\": " << f.d << ", \"s\": " << f.s << ", \"kind\": \"" << f.kind
     << "\", \"simplices\": [";
  bool first = true;
  for (std::size_t i : f.filtration_order()) {
    os << (first ? "\n" : ",\n") << "  {\"v\": " << json_vertices(f.complex[i])
       << ", \"value\": " << format_double(f.values[i]) << "}";
    first = false;
  }
  os << "\n]}\n";
}

FilteredComplex read_filtration_json(std::istream& is) {
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("bad filtration JSON: ") + e.what());
  }
  FilteredComplex f;
  f.d = j.at("d").get<int>();
  f.s = j.at("s").get<int>();
  f.kind = j.at("kind").get<std::string>();
  std::vector<std::pair<Simplex, double>> entries;
  for (const auto& e : j.at("simplices"))
    entries.emplace_back(Simplex(e.at("v").get<std::vector<int>>()), e.at("value").get<double>());
  std::vector<Simplex> simplices;
  for (const auto& [s, v] : entries) simplices.push_back(s);
  f.complex = SimplicialComplex::from_simplices(std::move(simplices));
  f.values.assign(f.complex.size(), 0.0);
  for (const auto& [s, v] : entries) f.values[*f.complex.index_of(s)] = v;
  return f;
}

void write_triangulation_json(std::ostream& os, const ChromaticPointCloud& cloud,
                              const Triangulation& t) {
  os << "{\"d\": " << cloud.d << ", \"s\": " << cloud.s << ", \"n\": " << cloud.size()
     << ", \"top_dimension\": " << t.top_dimension << ", \"simplex_count\": " << t.complex.size()
     << ",\n \"maximal\": [";
  for (std::size_t i = 0; i < t.tops.size(); ++i) os << (i ? ", " : "") << json_vertices(t.tops[i]);
  os << "],\n \"simplices\": [";
  for (std::size_t i = 0; i < t.complex.size(); ++i)
    os << (i ? ", " : "") << json_vertices(t.complex[i]);
  os << "]}\n";
}

std::string gp_report_json(const GpReport& rep) {
  nlohmann::ordered_json j;
  j["gp1"] = rep.gp1;
  j["gp3"] = rep.gp3;
  j["ok"] = rep.ok;
  if (!rep.ok) {
    j["witness_kind"] = rep.witness_kind;
    j["witness"] = rep.witness;
    if (!rep.witness_parts.empty()) j["witness_parts"] = rep.witness_parts;
  }
  return j.dump();
}

std::string collapse_report_json(const CollapseReport& rep) {
  std::ostringstream os;
  os << "{\"checks\": [";
  for (std::size_t i = 0; i < rep.checks.size(); ++i) {
    const auto& c = rep.checks[i];
    os << (i ? ",\n  " : "\n  ") << "{\"step\": \"" << c.step << "\", \"r\": ";
    if (std::isinf(c.r))
      os << "\"inf\"";
    else
      os << format_double(c.r);
    os << ", \"source\": " << c.source_size << ", \"target\": " << c.target_size
       << ", \"collapses\": " << c.steps << "}";
  }
  os << "\n], \"radii\": " << rep.radii.size() << ", \"max_snap\": " << format_double(rep.max_snap)
     << ", \"ok\": true}\n";
  return os.str();
}

}  // namespace ctda
