#include <doctest.h>

#include <random>
#include <sstream>

#include "ricciflow/catalog.hpp"
#include "ricciflow/flow.hpp"
#include "ricciflow/nice.hpp"
#include "ricciflow/io.hpp"
#include "support/random_algebra.hpp"

using namespace ricciflow;
using io::json;

namespace {

std::string error_of(const json& j) {
  try {
    io::algebra_from_json(j);
  } catch (const InvalidInput& e) {
    return e.what();
  }
  return {};
}

} // namespace

TEST_CASE("algebra JSON round trip is bit exact") {
  auto suite = testing_support::random_nilpotent_suite(50, 3);
  for (const auto& name : catalog::names()) suite.push_back(catalog::get(name).algebra);
  for (const auto& l : suite) {
    CHECK(io::algebra_from_json(json::parse(io::to_json(l).dump())) == l);
  }
}

TEST_CASE("algebra JSON is 1-based") {
  const auto j = io::to_json(catalog::get("heis3").algebra);
  CHECK(j["dim"] == 3);
  CHECK(j["brackets"][0]["i"] == 1);
  CHECK(j["brackets"][0]["j"] == 2);
  CHECK(j["brackets"][0]["k"] == 3);
  CHECK(io::algebra_from_json(json{{"dim", 4}}) == LieAlgebra(4));
}

TEST_CASE("schema errors name the offending field") {
  CHECK(error_of(json::array()).starts_with("algebra"));
  CHECK(error_of(json{{"brackets", json::array()}}).starts_with("dim"));
  CHECK(error_of(json{{"dim", 2.5}}).starts_with("dim"));
  CHECK(error_of(json{{"dim", 0}}).starts_with("dim"));
  CHECK(error_of(json::parse(R"({"dim":3,"brackets":[{"i":2,"j":1,"k":3,"c":1}]})")).starts_with("brackets[0]"));
  CHECK(error_of(json::parse(R"({"dim":3,"brackets":[{"i":1,"j":2,"k":4,"c":1}]})")).starts_with("brackets[0].k"));
  CHECK(error_of(json::parse(R"({"dim":3,"brackets":[{"i":1,"j":2,"c":1}]})")).starts_with("brackets[0].k"));
  CHECK(error_of(json::parse(R"({"dim":3,"brackets":[{"i":1,"j":2,"k":3,"c":"x"}]})")).starts_with("brackets[0].c"));
  CHECK(error_of(json::parse(R"({"dim":3,"brackets":[{"i":1,"j":2,"k":3,"c":1},{"i":1,"j":2,"k":3,"c":2}]})"))
            .starts_with("brackets[1]"));
}

TEST_CASE("Jacobi check on input") {
  const LieAlgebra broken(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {0, 2, 0, 1.0}});
  CHECK_THROWS_AS(io::require_lie_algebra(broken), InvalidInput);
  CHECK_NOTHROW(io::require_lie_algebra(catalog::get("L6_11").algebra));
}

TEST_CASE("metric JSON") {
  const auto d = io::metric_from_json(json::parse(R"({"diagonal":[1,2,3]})"));
  CHECK(d.is_diagonal());
  CHECK(d.matrix()(2, 2) == 3.0);
  const auto p = io::metric_from_json(json::parse(R"({"P":[[2,1],[1,2]]})"));
  CHECK(p.matrix()(0, 1) == 1.0);
  CHECK_THROWS_AS(io::metric_from_json(json::parse(R"({"P":[[2,1],[1]]})")), InvalidInput);
  CHECK_THROWS_AS(io::metric_from_json(json::parse(R"({"P":[[1,2],[2,1]]})")), InvalidInput);
  CHECK_THROWS_AS(io::metric_from_json(json::parse(R"({"Q":1})")), InvalidInput);
  CHECK(io::metric_from_json(io::to_json(p)).matrix() == p.matrix());
}

TEST_CASE("report serialization") {
  const auto v = io::to_json(is_nice_basis(catalog::get("L6_11").algebra));
  CHECK(v["nice"] == false);
  CHECK(v["witness"][0] == json::array({2, 3, 6}));
  CHECK(v["witness"][1] == json::array({2, 4, 6}));

  const auto r = io::to_json(ricci(catalog::get("heis3").algebra, Metric::canonical(3)));
  for (const char* key : {"Rc", "Ric", "M", "B", "SadH", "H"}) CHECK(r.contains(key));
  CHECK(r["Ric"][2][2].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("trajectory CSV") {
  const auto traj = integrate_flow(catalog::get("heis3").algebra, Metric::canonical(3), 0.1);
  std::ostringstream out;
  io::write_trajectory_csv(out, traj);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,p_1_1,p_1_2,p_1_3,p_2_2,p_2_3,p_3_3,offdiag,commutator");
  std::size_t rows = 0;
  std::string last;
  while (std::getline(in, line)) {
    ++rows;
    last = line;
  }
  CHECK(rows == traj.samples.size());
  const double t_last = std::stod(last.substr(0, last.find(',')));
  CHECK(t_last == traj.samples.back().t);
}
