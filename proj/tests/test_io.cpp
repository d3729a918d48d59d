#include <catch2/catch.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"

using namespace projshape;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("projshape_io_" + name);
}

}  // namespace

TEST_CASE("json configuration schema") {
  const auto j = nlohmann::json::parse(R"({"d":1,"k":4,"matrix":[[1,1],[1,0],[0,1],[0,1]]})");
  const auto c = configuration_from_json(j);
  CHECK(c.d() == 1);
  CHECK(c.k() == 4);
  CHECK(c.matrix()(0, 0) == 1.0);
  CHECK(c.matrix()(3, 0) == 0.0);

  CHECK_THROWS_AS(configuration_from_json(nlohmann::json::parse(R"({"d":1,"k":4})")), Error);
  CHECK_THROWS_AS(
      configuration_from_json(nlohmann::json::parse(R"({"d":1,"k":4,"matrix":[[1,1]]})")), Error);
  CHECK_THROWS_AS(
      configuration_from_json(nlohmann::json::parse(
          R"({"d":1,"k":4,"matrix":[[1,"x"],[1,0],[0,1],[0,1]]})")),
      Error);
}

TEST_CASE("csv with a zero row is an invariant violation") {
  std::istringstream in("1,0\n0,0\n0,1\n1,1\n");
  try {
    configuration_from_csv(in);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == errc::invariant_violation);
  }
}

TEST_CASE("csv parse errors") {
  std::istringstream ragged("1,0\n1\n");
  CHECK_THROWS_AS(configuration_from_csv(ragged), Error);
  std::istringstream junk("1,0\nfoo,1\n");
  CHECK_THROWS_AS(configuration_from_csv(junk), Error);
  std::istringstream empty("");
  CHECK_THROWS_AS(configuration_from_csv(empty), Error);
}

TEST_CASE("round trips are bit exact") {
  Rng rng(5150);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXd m(5, 3);
    for (Eigen::Index i = 0; i < m.size(); ++i)
      m(i / 3, i % 3) = rng.gauss() * std::pow(10.0, static_cast<double>(rng.below(7)) - 3.0);
    const Configuration c(2, 5, m);

    const auto jpath = temp_file("roundtrip.json");
    save_configuration(c, jpath.string());
    CHECK(load_configuration(jpath.string()) == c);

    const auto cpath = temp_file("roundtrip.csv");
    save_configuration(c, cpath.string());
    CHECK(load_configuration(cpath.string()) == c);

    std::filesystem::remove(jpath);
    std::filesystem::remove(cpath);
  }
}

TEST_CASE("the standard frame survives save and load verbatim") {
  const auto c = testutil::standard_frame();
  const auto path = temp_file("standard_frame.json");
  save_configuration(c, path.string());
  CHECK(load_configuration(path.string()).matrix() == c.matrix());
  std::filesystem::remove(path);
}

TEST_CASE("missing and malformed files") {
  CHECK_THROWS_AS(load_configuration("/nonexistent/projshape.json"), Error);
  const auto path = temp_file("garbage.json");
  std::ofstream(path) << "{not json";
  try {
    load_configuration(path.string());
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == errc::parse_error);
  }
  std::filesystem::remove(path);
}

TEST_CASE("data fixtures load") {
  const std::string dir = PROJSHAPE_DATA_DIR;
  CHECK(load_configuration(dir + "/frameless_free.json") == testutil::frameless_free());
  CHECK(load_configuration(dir + "/standard_frame.json") == testutil::standard_frame());
  CHECK(load_configuration(dir + "/single_pair_1_4.json") == testutil::single_pair());
}
