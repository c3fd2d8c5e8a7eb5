#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <string>

#include "mebkit/errors.hpp"
#include "mebkit/io.hpp"

using namespace mebkit;

namespace {

std::size_t parse_error_line(const std::string& text, bool json) {
  try {
    json ? parse_points_json(text) : parse_points_csv(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("csv parsing") {
  const PointSet p = parse_points_csv("0,0\n3,4\n");
  CHECK(p.size() == 2);
  CHECK(p.dim() == 2);
  CHECK(p[1][1] == 4.0);

  const PointSet spaced = parse_points_csv(" 1.5 , -2e3\r\n\n+3,4\n");
  CHECK(spaced.size() == 2);
  CHECK(spaced[0][1] == -2000.0);

  CHECK(parse_error_line("1,2\n3\n", false) == 2);
  CHECK(parse_error_line("1,2\n3,x\n", false) == 2);
  CHECK(parse_error_line("1,2\n\n3,nan\n", false) == 3);
  CHECK(parse_error_line("", false) == 1);
  CHECK(parse_error_line("1,,2\n", false) == 1);
}

TEST_CASE("json parsing") {
  const PointSet p = parse_points_json(R"({"points": [[1,2,3]]})");
  CHECK(p.size() == 1);
  CHECK(p.dim() == 3);
  CHECK_THROWS_AS(parse_points_json(R"({"points": [[1,2],[3]]})"), ParseError);
  CHECK_THROWS_AS(parse_points_json(R"({"points": [[1,"a"]]})"), ParseError);
  CHECK_THROWS_AS(parse_points_json(R"({"points": []})"), ParseError);
  CHECK_THROWS_AS(parse_points_json(R"([[1,2]])"), ParseError);
  CHECK(parse_error_line("{\"points\":\n [[1,2],\n [3,4}", true) == 3);
}

TEST_CASE("formats") {
  CHECK(parse_format("csv") == PointFormat::csv);
  CHECK(parse_format("json") == PointFormat::json);
  CHECK_THROWS_AS(parse_format("xml"), InvalidArgument);
  CHECK(infer_format("a/b.json") == PointFormat::json);
  CHECK(infer_format("a/b.txt") == PointFormat::csv);
}

TEST_CASE("gen, write, read round-trips exactly") {
  const auto dir = std::filesystem::temp_directory_path() / "mebkit_io_test";
  std::filesystem::create_directories(dir);
  for (auto kind : kInstanceKinds) {
    const GeneratedInstance g = gen_instance(kind, 40, 3, 99);
    CHECK(g.points.size() == 40);
    for (PointFormat f : {PointFormat::csv, PointFormat::json}) {
      const auto path = dir / (std::string(kind) + (f == PointFormat::json ? ".json" : ".csv"));
      write_points(path, g.points, f);
      const PointSet back = read_points(path);
      REQUIRE(back.size() == g.points.size());
      bool same = true;
      for (std::size_t i = 0; i < back.data().size(); ++i) {
        same = same && back.data()[i] == g.points.data()[i];
      }
      CHECK(same);
    }
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("generators are deterministic and validate kinds") {
  const GeneratedInstance a = gen_instance("gaussian", 20, 4, 5);
  const GeneratedInstance b = gen_instance("gaussian", 20, 4, 5);
  const GeneratedInstance c = gen_instance("gaussian", 20, 4, 6);
  CHECK(std::equal(a.points.data().begin(), a.points.data().end(), b.points.data().begin()));
  CHECK_FALSE(std::equal(a.points.data().begin(), a.points.data().end(), c.points.data().begin()));
  try {
    gen_instance("spiral", 10, 2, 1);
    FAIL("expected an error");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("uniform-ball") != std::string::npos);
  }

  const GeneratedInstance s = gen_instance("sphere-surface", 30, 3, 1);
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    CHECK(distance(s.points[i], Point{0, 0, 0}) == doctest::Approx(1.0));
  }
  GenParams gp;
  gp.k = 3;
  const GeneratedInstance cl = gen_instance("clustered", 30, 2, 1, gp);
  CHECK(cl.labels.size() == 30);
  CHECK(cl.centers.size() == 3);
  for (std::size_t i = 0; i < cl.points.size(); ++i) {
    CHECK(distance(cl.points[i], cl.centers[static_cast<std::size_t>(cl.labels[i])]) <= gp.radius);
  }
}
