#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "strata/ground_truth.hpp"

using namespace strata;

namespace {

std::filesystem::path temp_csv(const std::string& name,
                               const std::string& content) {
  const auto dir =
      std::filesystem::temp_directory_path() / "strata_truth_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream out(path);
  out << content;
  return path;
}

const std::filesystem::path kFixture =
    std::filesystem::path(STRATA_DATA_DIR) / "sample_ground_truth.csv";

}  // namespace

TEST_CASE("fixture file loads all six surfaces") {
  const auto surfaces = read_ground_truth(kFixture);
  REQUIRE(surfaces.size() == 6);

  CHECK(surfaces[0].id == 1);
  CHECK(surfaces[0].strike_deg == 87);
  CHECK(surfaces[0].dip_deg == 89);
  CHECK(surfaces[0].dipdir_deg == 177);
  CHECK(surfaces[0].normal.x() == doctest::Approx(-0.9985).epsilon(1e-3));
  CHECK(surfaces[0].normal.y() == doctest::Approx(-0.0523).epsilon(1e-3));
  CHECK(surfaces[0].normal.z() == doctest::Approx(0.0175).epsilon(1e-3));

  CHECK(surfaces[5].id == 6);
  CHECK(surfaces[5].strike_deg == 359);
  CHECK(surfaces[5].dip_deg == 40);
  CHECK(surfaces[5].dipdir_deg == 89);
  CHECK(surfaces[5].normal.x() == doctest::Approx(0.0112).epsilon(1e-3));
  CHECK(surfaces[5].normal.y() == doctest::Approx(-0.6427).epsilon(1e-3));
  CHECK(surfaces[5].normal.z() == doctest::Approx(0.7660).epsilon(1e-3));

  for (const auto& s : surfaces) {
    CHECK(s.normal.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("out-of-range values name the row") {
  const auto bad_dip = temp_csv("bad_dip.csv",
                                "id,strike,dip,dipdir,nx,ny,nz\n"
                                "1,10,95,100,0,0,1\n");
  try {
    read_ground_truth(bad_dip);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }

  const auto bad_strike = temp_csv("bad_strike.csv",
                                   "id,strike,dip,dipdir,nx,ny,nz\n"
                                   "1,10,80,100,0,0,1\n"
                                   "2,360,80,100,0,0,1\n");
  try {
    read_ground_truth(bad_strike);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("row 3") != std::string::npos);
  }

  const auto bad_normal = temp_csv("bad_normal.csv",
                                   "id,strike,dip,dipdir,nx,ny,nz\n"
                                   "1,10,80,100,2,0,0\n");
  CHECK_THROWS_AS(read_ground_truth(bad_normal), ValidationError);
}

TEST_CASE("header must match the schema") {
  const auto wrong = temp_csv("wrong_header.csv",
                              "id,strike,dip\n"
                              "1,10,80\n");
  CHECK_THROWS_AS(read_ground_truth(wrong), SchemaError);
  CHECK_THROWS_AS(read_ground_truth("/no/such/file.csv"), IoError);
}

TEST_CASE("write and re-read preserves the table") {
  const auto surfaces = read_ground_truth(kFixture);
  const auto path = temp_csv("rewrite.csv", "");
  write_ground_truth(surfaces, path);
  const auto again = read_ground_truth(path);
  REQUIRE(again.size() == surfaces.size());
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    CHECK(again[i].id == surfaces[i].id);
    CHECK(again[i].strike_deg == doctest::Approx(surfaces[i].strike_deg));
    CHECK(again[i].dip_deg == doctest::Approx(surfaces[i].dip_deg));
    CHECK(again[i].dipdir_deg == doctest::Approx(surfaces[i].dipdir_deg));
    CHECK((again[i].normal - surfaces[i].normal).norm() < 1e-9);
  }
}
