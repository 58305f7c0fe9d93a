#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dring/commands.hpp"

using namespace dring;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::BadFormat;
}

const char* kHamilton = "quaternion:-1,-1";

}  // namespace

TEST_CASE("witness on given quaternion inputs") {
  const WitnessReport r = cmd_witness_inputs(kHamilton, WordKind::mult, 1, {"i", "1+j"});
  REQUIRE(r.witness);
  // i(1+j)i^-1(1+j)^-1 = (1-j)(1+j)^-1 = (1-j)^2/2 = -j
  CHECK(r.witness->to_string() == "-j");
  REQUIRE(r.min_poly);
  CHECK(r.min_poly->to_string() == "x^2 + 1");
  CHECK(r.success);

  const WitnessReport a = cmd_witness_inputs(kHamilton, WordKind::add, 1, {"i", "j"});
  REQUIRE(a.witness);
  CHECK(a.witness->to_string() == "2*k");
  REQUIRE(a.min_poly);
  CHECK(a.min_poly->to_string() == "x^2 + 4");
  CHECK(a.success);
}

TEST_CASE("witness of commuting inputs is central") {
  const WitnessReport r = cmd_witness_inputs(kHamilton, WordKind::add, 1, {"i", "2*i"});
  REQUIRE(r.witness);
  CHECK(r.witness->is_zero());
  CHECK_FALSE(r.success);
  CHECK(r.observed_max_degree == 1);
}

TEST_CASE("witness search succeeds and replays") {
  for (WordKind kind : {WordKind::mult, WordKind::add})
    for (std::size_t n = 1; n <= 2; ++n) {
      const WitnessReport r = cmd_witness(kHamilton, kind, n, 100, 11);
      CHECK(r.success);
      CHECK(r.observed_max_degree == 2);
      CHECK(r.trials_used <= 100);
      const json j = witness_to_json(r);
      const VerifyResult v = cmd_verify(j);
      CHECK_MESSAGE(v.ok, v.message);
    }
}

TEST_CASE("observed degree grows with the budget") {
  std::size_t last = 0;
  for (std::size_t trials : {1, 3, 10, 50}) {
    const WitnessReport r = cmd_witness("cyclic3", WordKind::mult, 1, trials, 5);
    CHECK(r.observed_max_degree >= last);
    last = r.observed_max_degree;
  }
  CHECK(last == 3);
}

TEST_CASE("witness errors") {
  CHECK(code_of([] { (void)cmd_witness("matrix:2", WordKind::mult, 1, 10, 0); }) == ErrorCode::NotADivisionPreset);
  CHECK(code_of([] { (void)cmd_witness("quaternion:1,1", WordKind::mult, 1, 10, 0); }) == ErrorCode::NotADivisionPreset);
  CHECK(code_of([] { (void)cmd_witness_inputs(kHamilton, WordKind::mult, 1, {"i"}); }) == ErrorCode::ArityMismatch);
  CHECK(code_of([] { (void)cmd_witness_inputs(kHamilton, WordKind::mult, 1, {"i", "0"}); }) == ErrorCode::NotInvertible);
}

TEST_CASE("tampered witness report fails verification") {
  json j = witness_to_json(cmd_witness_inputs(kHamilton, WordKind::mult, 1, {"i", "1+j"}));
  REQUIRE(cmd_verify(j).ok);
  json bad = j;
  bad["success"] = false;
  CHECK_FALSE(cmd_verify(bad).ok);
  bad = j;
  bad["inputs"][1] = witness_to_json(cmd_witness_inputs(kHamilton, WordKind::mult, 1, {"i", "1+k"}))["inputs"][1];
  const VerifyResult v = cmd_verify(bad);
  CHECK_FALSE(v.ok);
  CHECK(v.message.find("coordinate") != std::string::npos);
}

TEST_CASE("parse_matrix_text") {
  CHECK(parse_matrix_text("[[1,2],[3,4]]") == Matrix::from_ints({{1, 2}, {3, 4}}));
  CHECK(parse_matrix_text(R"([["1/2","0"],[0,1]])") ==
        Matrix::diagonal({Field::rationals().from_rational(Rational(1, 2)), Field::rationals().one()}));
  CHECK(parse_matrix_text(R"({"field": "Fp:5", "rows": [[6, 0], [0, 1]]})").field() == Field::prime(5));
  CHECK(code_of([] { (void)parse_matrix_text("[[1,2],[3]]"); }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([] { (void)parse_matrix_text("[[1,2],"); }) == ErrorCode::BadFormat);
}

TEST_CASE("algdeg examples") {
  const json d = cmd_algdeg("matrix:3", "[[1,0,0],[0,2,0],[0,0,4]]", 20, 0);
  CHECK(d["exact_degree"] == 3);
  CHECK(d["probe_degree"] == 3);
  CHECK(d["agree"] == true);
  const json j = cmd_algdeg(kHamilton, "j", 20, 0);
  CHECK(j["exact_degree"] == 2);
  CHECK(j["probe_degree"] == 2);
  const json one = cmd_algdeg("matrix:2", "[[1,0],[0,1]]", 20, 0);
  CHECK(one["exact_degree"] == 1);
  CHECK(one["probe_degree"] == 1);
}

TEST_CASE("decomposition certificates verify and detect tampering") {
  const Matrix t = special_matrix_T(3, TKind::unipotent);
  const json cert = cmd_decompose(WordKind::mult, t, 2, 3);
  CHECK(cert["verified"] == true);
  CHECK(cert["factors"].size() == 4);
  CHECK(cmd_verify(cert).ok);

  json bad = cert;
  bad["target"]["rows"][0][2] = "7";
  const VerifyResult v = cmd_verify(bad);
  CHECK_FALSE(v.ok);
  CHECK(v.message.find("entry (0,2)") != std::string::npos);

  bad = cert;
  bad["factors"][0]["rows"][1][1] = "1/7";
  CHECK_FALSE(cmd_verify(bad).ok);

  const json add = cmd_decompose(WordKind::add, special_matrix_T(3, TKind::nilpotent), 2, 3);
  CHECK(cmd_verify(add).ok);
  bad = add;
  bad["kind"] = "mult";
  CHECK_FALSE(cmd_verify(bad).ok);

  CHECK(code_of([] { (void)cmd_verify(json{{"command", "frobnicate"}}); }) == ErrorCode::BadFormat);
  CHECK(code_of([] { (void)cmd_verify(json{{"command", "decompose"}}); }) == ErrorCode::BadFormat);
}

TEST_CASE("identity reports verify") {
  IdentityRequest req;
  req.builtin_name = "hall-2x2";
  req.context = "matrix:3";
  req.trials = 50;
  req.seed = 2;
  const json rep = cmd_identity(req);
  CHECK(rep["held"] == false);
  CHECK(rep["builtin"] == "hall-2x2");
  CHECK(cmd_verify(rep).ok);
  json bad = rep;
  bad["permissible"] = 1000;
  CHECK_FALSE(cmd_verify(bad).ok);

  req.builtin_name = "hua";
  req.trials = 40;
  const json held = cmd_identity(req);
  CHECK(held["held"] == true);
  CHECK(cmd_verify(held).ok);
}

TEST_CASE("reports are deterministic") {
  const auto dump_all = [] {
    IdentityRequest req;
    req.builtin_name = "sum-inverse";
    req.context = kHamilton;
    req.trials = 30;
    req.seed = 9;
    return cmd_identity(req).dump() + witness_to_json(cmd_witness("cyclic3", WordKind::add, 1, 50, 9)).dump() +
           cmd_decompose(WordKind::mult, special_matrix_T(4, TKind::unipotent), 2, 9).dump() +
           cmd_algdeg("matrix:3", "[[0,1,0],[0,0,1],[1,0,0]]", 20, 9).dump();
  };
  CHECK(dump_all() == dump_all());
}
