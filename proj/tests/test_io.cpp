#include <doctest.h>

#include <sstream>

#include "fracwave/io.hpp"

using namespace fracwave;

TEST_SUITE("io") {

TEST_CASE("config hash ignores key order and whitespace") {
  const auto a = nlohmann::json::parse(R"({"alpha": 1.5, "grid": {"T": 10, "nodes": 64}})");
  const auto b = nlohmann::json::parse(R"({"grid":{"nodes":64,"T":10},"alpha":1.5})");
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  const auto c = nlohmann::json::parse(R"({"alpha": 1.6, "grid": {"T": 10, "nodes": 64}})");
  CHECK(config_hash(a) != config_hash(c));
}

TEST_CASE("doubles round-trip") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) CHECK(std::stod(format_double(x)) == x);
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("CSV stamp, header and trajectory round trip") {
  const TimeGrid grid = TimeGrid::uniform(1.0, 4);
  PointTrajectory tr{0.5, grid, Eigen::VectorXd::LinSpaced(5, -1.0, 1.0 / 3.0)};
  std::stringstream ss;
  write_trajectory_csv(ss, RunStamp{"abc"}, tr);
  std::string first, header;
  std::getline(ss, first);
  std::getline(ss, header);
  CHECK(first == std::string("# fracwave ") + version() + " config_hash=abc");
  CHECK(header == "t,value");
  ss.seekg(0);
  Eigen::VectorXd t, v;
  read_series_csv(ss, t, v);
  CHECK(t == grid.nodes());
  CHECK(v == tr.values);
}

TEST_CASE("history CSV has one column per mode") {
  std::stringstream ss;
  write_history_csv(ss, RunStamp{"h"}, TimeGrid::uniform(1.0, 2), Eigen::MatrixXd::Ones(3, 4));
  std::string line;
  std::getline(ss, line);
  std::getline(ss, line);
  CHECK(line == "t,coeff_1,coeff_2,coeff_3,coeff_4");
}

TEST_CASE("malformed series CSV") {
  std::stringstream a("t,value\n0,1\n0.5\n");
  Eigen::VectorXd t, v;
  CHECK_THROWS_AS(read_series_csv(a, t, v), std::runtime_error);
  std::stringstream b("t,value\n0,1\nx,2\n");
  CHECK_THROWS_AS(read_series_csv(b, t, v), std::runtime_error);
  std::stringstream c("# only a comment\n");
  CHECK_THROWS_AS(read_series_csv(c, t, v), std::runtime_error);
}

TEST_CASE("report JSON uses null for absent values") {
  AsymptoticsReport r;
  const auto j = to_json(r);
  CHECK(j["sign_onset"].is_null());
  CHECK(j["stabilized_sign"].is_null());
  CHECK(j["fitted_norm_slope"].is_null());
  r.stabilized_sign = -1;
  r.sign_onset = 12.5;
  CHECK(to_json(r)["stabilized_sign"] == -1);
  CHECK(to_json(r)["sign_onset"] == 12.5);
}

}
