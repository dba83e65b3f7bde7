#pragma once

#include <iosfwd>
#include <string>

#include "ctda/core.hpp"
#include "ctda/delaunay.hpp"
#include "ctda/filtration.hpp"
#include "ctda/morse.hpp"

namespace ctda {

// 17 significant digits, locale independent; infinity is written as inf.
std::string format_double(double v);

// CSV with header x0,...,x{d-1},colour.
ChromaticPointCloud read_cloud_csv(std::istream& is);
void write_cloud_csv(std::ostream& os, const ChromaticPointCloud& cloud);

// {"d", "s", "kind", "simplices": [{"v": [...], "value": ...}]} sorted by
// (value, dimension, lexicographic).
void write_filtration_json(std::ostream& os, const FilteredComplex& f);
FilteredComplex read_filtration_json(std::istream& is);

void write_triangulation_json(std::ostream& os, const ChromaticPointCloud& cloud,
                              const Triangulation& t);
std::string gp_report_json(const GpReport& rep);
std::string collapse_report_json(const CollapseReport& rep);

}  // namespace ctda
