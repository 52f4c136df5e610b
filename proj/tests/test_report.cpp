#include "mpilab/report.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

using namespace mpilab;
using nlohmann::json;

namespace {

json op_json(int d, const json& matrix, const json& dims = json::array({2, 2})) {
  return {{"dims", dims}, {"flavors", json::array({"H", "H"})}, {"matrix", matrix}};
}

}  // namespace

TEST_CASE("operator JSON round trip is exact") {
  std::mt19937_64 rng(5);
  const Operator u = conjugate_fixture(group_mpu(cyclic_group(3)), random_unitary(3, rng));
  const Operator back = operator_from_json(json::parse(operator_to_json(u).dump()));
  CHECK(back.space == u.space);
  CHECK(back.m == u.m);
  const std::string path = "mpilab_test_roundtrip.json";
  save_operator(u, path);
  CHECK(load_operator(path).m == u.m);
  std::remove(path.c_str());
}

TEST_CASE("flat and nested matrix forms agree") {
  json nested = json::array(), flat = json::array();
  for (int r = 0; r < 4; ++r) {
    json row = json::array();
    for (int c = 0; c < 4; ++c) {
      row.push_back({r == c ? 1.0 : 0.0, 0.5 * r - c});
      flat.push_back({r == c ? 1.0 : 0.0, 0.5 * r - c});
    }
    nested.push_back(row);
  }
  CHECK(operator_from_json(op_json(4, nested)).m == operator_from_json(op_json(4, flat)).m);
  CHECK(operator_from_json(op_json(4, nested)).m(3, 1) == cplx(0.0, 0.5));
}

TEST_CASE("malformed operator files are input errors") {
  json row = json::array({json::array({0.0, 0.0}), json::array({0.0, 0.0})});
  CHECK_THROWS_AS(operator_from_json(json::array()), InputError);
  CHECK_THROWS_AS(operator_from_json(json{{"dims", {2, 2}}, {"flavors", {"H", "H"}}}), InputError);
  CHECK_THROWS_AS(operator_from_json(op_json(4, json::array({row, row}))), InputError);  // 2 rows for side 4
  CHECK_THROWS_AS(operator_from_json(op_json(4, json::array({1, 2}))), InputError);
  json bad_entry = json::array();
  for (int r = 0; r < 4; ++r) bad_entry.push_back(json::array({json::array({0.0, 0.0}), json::array({1, "x"}),
                                                               json::array({0.0, 0.0}), json::array({0.0, 0.0})}));
  CHECK_THROWS_AS(operator_from_json(op_json(4, bad_entry)), InputError);
  CHECK_THROWS_AS(operator_from_json(op_json(4, bad_entry, json::array({2, 0}))), InputError);
  json j = operator_to_json(group_mpu(cyclic_group(2)));
  j["flavors"] = json::array({"H", "K"});
  CHECK_THROWS_AS(operator_from_json(j), InputError);
  CHECK_THROWS_AS(load_operator("/nonexistent/op.json"), InputError);
  {
    std::ofstream f("mpilab_test_garbage.json");
    f << "{not json";
  }
  CHECK_THROWS_AS(load_operator("mpilab_test_garbage.json"), InputError);
  std::remove("mpilab_test_garbage.json");
}

TEST_CASE("group tables and groupoid specs from JSON") {
  CHECK(group_table_from_json(json{{"table", {{0, 1}, {1, 0}}}}) == cyclic_group(2));
  CHECK_THROWS_AS(group_table_from_json(json{{"table", {{0, 1}, {0, 1}}}}), InputError);
  CHECK_THROWS_AS(group_table_from_json(json{{"rows", {{0}}}}), InputError);
  const json spec = {{"units", {0, 1}},
                     {"arrows", {{{"id", 0}, {"source", 0}, {"target", 0}},
                                 {{"id", 1}, {"source", 1}, {"target", 1}},
                                 {{"id", 2}, {"source", 0}, {"target", 1}},
                                 {{"id", 3}, {"source", 1}, {"target", 0}}}},
                     {"compose", {{0, 0, 0}, {1, 1, 1}, {2, 0, 2}, {1, 2, 2}, {3, 1, 3}, {0, 3, 3}, {2, 3, 1}, {3, 2, 0}}},
                     {"inverse", {{0, 0}, {1, 1}, {2, 3}, {3, 2}}}};
  const GroupoidSpec g = groupoid_from_json(spec);
  CHECK(g.size() == 4);
  CHECK(check_mpi_axioms(groupoid_mpi(g)).pass);
  json broken = spec;
  broken["compose"].erase(0);
  CHECK_THROWS_AS(groupoid_from_json(broken), InputError);
  broken = spec;
  broken["inverse"][2] = {2, 2};
  CHECK_THROWS_AS(groupoid_from_json(broken), InputError);
}

TEST_CASE("levels parse and name") {
  for (const char* s : {"axioms", "coalgebra", "base", "manageability", "antipode", "all"}) {
    REQUIRE(parse_level(s));
    CHECK(std::string(level_name(*parse_level(s))) == s);
  }
  CHECK_FALSE(parse_level("everything"));
}

TEST_CASE("report on a group passes at every level") {
  const Operator w = group_mpu(cyclic_group(2));
  for (Level l : {Level::Axioms, Level::Coalgebra, Level::Base, Level::Manageability, Level::Antipode, Level::All}) {
    CAPTURE(level_name(l));
    const CheckReport r = run_suite("Z2", w, std::nullopt, l);
    CHECK(r.verdict());
    for (const auto& c : r.checks) {
      CAPTURE(c.id);
      CHECK(c.status != Status::Skip);
      CHECK(c.residual >= 0.0);
      CHECK(std::isfinite(c.residual));
    }
  }
  const CheckReport r = run_suite("Z2", w, std::nullopt, Level::All);
  REQUIRE(r.find("antipode.polar"));
  CHECK(r.find("antipode.polar")->status == Status::Pass);
  CHECK(r.find("duality.double_dual")->residual == 0.0);
  CHECK(r.find("base_restrictions.S_B"));
  CHECK(r.find("manageability.certified")->note == "true");
  // level axioms stops there
  const CheckReport a = run_suite("Z2", w, std::nullopt, Level::Axioms);
  CHECK_FALSE(a.find("coalgebra.delta_star"));
}

TEST_CASE("report on the matrix-unit example") {
  const CheckReport r = run_suite("example", matrix_unit_example(), std::nullopt, Level::Antipode);
  CHECK(r.find("axioms.mpi1")->status == Status::Pass);
  CHECK(r.find("manageability.certificate")->status == Status::Pass);
  CHECK(r.find("manageability.certified")->status == Status::Info);
  const CheckEntry* s = r.find("antipode");
  REQUIRE(s);
  CHECK(s->status == Status::Skip);
  CHECK(s->note == "no certified Q");
  CHECK(r.find("base.L_equals_Lhat")->status == Status::Fail);
  CHECK_FALSE(r.verdict());
}

TEST_CASE("failed axioms skip the later modules") {
  const CheckReport r = run_suite("flip", flip(2), std::nullopt, Level::All);
  CHECK(r.find("axioms.mpi1")->status == Status::Fail);
  for (const char* id : {"coalgebra", "base", "manageability"}) {
    CAPTURE(id);
    REQUIRE(r.find(id));
    CHECK(r.find(id)->status == Status::Skip);
    CHECK(r.find(id)->note == "mpi axioms failed");
  }
  CHECK(r.find("antipode")->note == "no certified Q");
  CHECK_FALSE(r.verdict());
  // wrong shape
  const CheckReport s = run_suite("one-leg", single_leg(Mat::Identity(4, 4)), std::nullopt, Level::All);
  CHECK(s.find("axioms.shape")->status == Status::Fail);
}

TEST_CASE("supplied Q: a bad one is reported, not certified") {
  const Operator w = group_mpu(cyclic_group(3));
  Mat d = Mat::Identity(3, 3);
  d(2, 2) = 5.0;
  const CheckReport r = run_suite("Z3", w, single_leg(d), Level::All);
  CHECK(r.find("manageability.certificate")->status == Status::Fail);
  CHECK(r.find("antipode")->status == Status::Skip);
  Mat neg = -Mat::Identity(3, 3);
  const CheckReport n = run_suite("Z3", w, single_leg(neg), Level::All);
  CHECK(n.find("manageability.certificate")->status == Status::Fail);
  CHECK_FALSE(n.find("manageability.certificate")->note.empty());
}

TEST_CASE("reports are deterministic and timing stays out of the JSON by default") {
  const Operator w = groupoid_mpi(pair_groupoid(2));
  const std::string a = to_json(run_suite("pair2", w, std::nullopt, Level::All, {}, 7)).dump(2);
  const std::string b = to_json(run_suite("pair2", w, std::nullopt, Level::All, {}, 7)).dump(2);
  CHECK(a == b);
  CHECK(a.find("seconds") == std::string::npos);
  const json t = to_json(run_suite("pair2", w, std::nullopt, Level::Axioms), true);
  CHECK(t["checks"][0].contains("seconds"));
  CHECK(json::parse(a)["verdict"] == "pass");
  const std::string text = to_text(run_suite("pair2", w, std::nullopt, Level::Axioms));
  CHECK(text.find("PASS") != std::string::npos);
  CHECK(text.find("axioms.mpi1") != std::string::npos);
}
