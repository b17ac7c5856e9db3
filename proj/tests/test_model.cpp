#include <doctest.h>

#include <algorithm>

#include "amdiscnt/model.hpp"

using namespace amdiscnt;

namespace {
bool mentions(const std::vector<std::string>& v, const std::string& needle) {
  return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}
} // namespace

TEST_CASE("default config carries the reference parameters and is valid") {
  NetworkConfig c;
  CHECK(c.n_nodes == 100);
  CHECK(c.heterogeneity.e0 == 0.5);
  CHECK(c.radio.e_elec == 50e-9);
  CHECK(c.radio.e_fs == 10e-12);
  CHECK(c.radio.e_mp == 0.0013e-12);
  CHECK(c.radio.e_da == 5e-9);
  CHECK(c.radio.packet_bits == 4000);
  CHECK(c.geometry.r_inner == 20.0);
  CHECK(c.geometry.r_outer == 35.0);
  CHECK(validate_config(c).empty());
}

TEST_CASE("inverted radii produce exactly one geometry violation") {
  NetworkConfig c;
  c.geometry = {35.0, 20.0};
  auto v = validate_config(c);
  REQUIRE(v.size() == 1);
  CHECK(mentions(v, "r_inner < r_outer"));
}

TEST_CASE("drop probability above one is rejected") {
  NetworkConfig c;
  c.link_drop_probability = 1.5;
  auto v = validate_config(c);
  REQUIRE(v.size() == 1);
  CHECK(mentions(v, "link_drop_probability"));
  CHECK_THROWS_AS(require_valid(c), ConfigError);
}

TEST_CASE("every violation is reported") {
  NetworkConfig c;
  c.n_nodes = 3;
  c.radio.e_fs = 0.0;
  c.inner_fraction = 1.0;
  c.heterogeneity.mode = ThreeLevel{1.5, -0.1, 1.0, 1.0};
  c.delay_mode = DistanceProportionalDelay{0.0, 0.0};
  auto v = validate_config(c);
  CHECK(mentions(v, "n_nodes"));
  CHECK(mentions(v, "radio.e_fs"));
  CHECK(mentions(v, "inner_fraction"));
  CHECK(mentions(v, "heterogeneity.m "));
  CHECK(mentions(v, "heterogeneity.m0"));
  CHECK(mentions(v, "delay.speed"));
}

TEST_CASE("region labels") {
  CHECK(to_string(RegionId::inner()) == "T1");
  CHECK(to_string(RegionId::outer(0)) == "R1");
  CHECK(to_string(RegionId::outer(7)) == "R8");
}
