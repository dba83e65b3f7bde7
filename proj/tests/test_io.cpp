#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "ctda/errors.hpp"
#include "ctda/io.hpp"
#include "support.hpp"

using namespace ctda;

TEST_CASE("format_double") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("cloud csv") {
  std::stringstream in("x0,x1,colour\n0,0,3\n1,0.5,7\n2,1,3\n");
  auto c = read_cloud_csv(in);
  CHECK(c.size() == 3);
  CHECK(c.d == 2);
  CHECK(c.colours == Colouring{0, 1, 0});
  std::stringstream out;
  write_cloud_csv(out, c);
  CHECK(out.str() == "x0,x1,colour\n0,0,0\n1,0.5,1\n2,1,0\n");

  std::stringstream bad_header("a,b,colour\n0,0,0\n");
  CHECK_THROWS_AS(read_cloud_csv(bad_header), Error);
  std::stringstream bad_row("x0,x1,colour\n0,0\n");
  CHECK_THROWS_AS(read_cloud_csv(bad_row), Error);
  std::stringstream dup("x0,colour\n0,0\n0,1\n");
  try {
    read_cloud_csv(dup);
    FAIL("expected DuplicatePoint");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DuplicatePoint);
  }
}

TEST_CASE("filtration json round trip") {
  SplitMix64 rng(51);
  auto c = test::random_gp_cloud(rng, 8, 2, 2);
  auto f = chromatic_alpha_filtration(c);
  std::stringstream ss;
  write_filtration_json(ss, f);
  auto doc = nlohmann::json::parse(ss.str());
  CHECK(doc["kind"] == "alpha");
  CHECK(doc["d"] == 2);
  CHECK(doc["s"] == 1);
  CHECK(doc["simplices"].size() == f.size());
  ss.seekg(0);
  auto g = read_filtration_json(ss);
  CHECK(g.complex == f.complex);
  CHECK(g.values == f.values);
  CHECK(g.kind == f.kind);

  std::stringstream tri;
  write_triangulation_json(tri, c, chromatic_delaunay(c));
  CHECK(nlohmann::json::accept(tri.str()));
}

TEST_CASE("report json") {
  auto trap = validate_chromatic_set(
      std::vector<std::vector<double>>{{0, 0}, {0, 1}, {1, 0}, {1, 2}}, {0, 0, 1, 1});
  auto doc = nlohmann::json::parse(gp_report_json(check_general_position(trap)));
  CHECK(doc["ok"] == false);
  CHECK(doc["gp3"] == false);
  CHECK(doc["witness"].size() == 4);
}
