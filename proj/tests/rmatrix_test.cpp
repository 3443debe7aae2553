#include <catch2/catch_amalgamated.hpp>

#include "qgw/rmatrix.hpp"
#include "support/helpers.hpp"

using namespace qgw;
using qgw::testing::kind_is;

namespace {

Scalar sc(const std::string& text) { return parse_scalar(text); }

std::map<ParamId, Scalar> at(std::initializer_list<std::pair<const char*, long>> vals) {
  std::map<ParamId, Scalar> sub;
  for (auto& [name, v] : vals) sub[param_id(name)] = Scalar(v);
  return sub;
}

}  // namespace

TEST_CASE("catalog entries load with their conventions") {
  const auto& grs = rmatrix_catalog("R_Grs");
  CHECK(grs.matrix.rows() == 9);
  CHECK(grs.convention == IndexConvention::Lex);
  CHECK(grs.matrix.at(0, 0) == sc("r"));
  CHECK(grs.matrix.at(2, 2) == sc("s"));

  const auto& blocked = rmatrix_catalog("R_q_blocked");
  CHECK(blocked.convention == IndexConvention::Block9);
  CHECK(blocked.matrix.at(4, 4) == sc("s"));

  CHECK(rmatrix_catalog("R_Gmk").matrix.at(0, 3) == sc("m^2"));
  CHECK(rmatrix_catalog("R_GLr2").matrix.rows() == 4);
  CHECK(rmatrix_catalog("R_h2").matrix.at(0, 1) == sc("h"));

  CHECK_THROWS_MATCHES(rmatrix_catalog("R_nope"), Error,
                       kind_is(ErrorKind::UnknownPresentation));
}

TEST_CASE("the two 9x9 displays agree under index reordering") {
  CHECK(reorder(rmatrix_catalog("R_Grs").matrix, block9()) ==
        rmatrix_catalog("R_q_blocked").matrix);
  CHECK(rmatrix_catalog("R_q_blocked").lex() == rmatrix_catalog("R_Grs").matrix);
}

TEST_CASE("Yang-Baxter holds for every catalog matrix") {
  for (const auto& name : rmatrix_names()) {
    auto rep = qybe_check(rmatrix_catalog(name));
    INFO(name);
    CHECK(rep.pass);
    CHECK(rep.witnesses.empty());
    CHECK(rep.check == "qybe");
    CHECK(rep.subject == name);
  }
}

TEST_CASE("Yang-Baxter detects a mutated entry") {
  auto entry = rmatrix_catalog("R_Gmk");
  entry.matrix.at(0, 1) = sc("m + 1");
  auto rep = qybe_check(entry);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.witnesses.empty());
}

TEST_CASE("triangularity") {
  SECTION("holds for the Jordanian matrices") {
    CHECK(triangularity_check(rmatrix_catalog("R_Gmk")).pass);
    CHECK(triangularity_check(rmatrix_catalog("R_h2")).pass);
    CHECK(triangularity_check(param_identity(9), "I9").pass);
  }

  SECTION("fails for the q-deformed matrices, already at the (0,0) entry") {
    auto rep = triangularity_check(rmatrix_catalog("R_Grs"));
    CHECK_FALSE(rep.pass);
    REQUIRE_FALSE(rep.witnesses.empty());
    CHECK(rep.witnesses[0].location == "entry (0,0)");
    CHECK(rep.witnesses[0].residual == "r^2 - 1");

    auto inst = substitute(rmatrix_catalog("R_Grs").lex(), at({{"r", 2}, {"s", 3}}));
    auto irep = triangularity_check(inst, "R_Grs at r=2, s=3");
    CHECK_FALSE(irep.pass);
    CHECK(irep.witnesses[0].residual == "3");

    CHECK_FALSE(triangularity_check(rmatrix_catalog("R_GLr2")).pass);
    CHECK_FALSE(
        triangularity_check(substitute(rmatrix_catalog("R_GLr2").matrix, at({{"r", 2}})), "R_GLr2 at r=2")
            .pass);
  }
}

TEST_CASE("the Jordanian 9x9 matrix is unipotent of order 3") {
  auto R = rmatrix_catalog("R_Gmk").matrix;
  auto N = R - param_identity(9);
  CHECK_FALSE((N * N).is_zero());
  CHECK((N * N * N).is_zero());
}

TEST_CASE("block extraction") {
  std::vector<size_t> head{0, 1, 2, 3};

  SECTION("top-left block of the Jordanian 9x9 is the 4x4 at h=m") {
    auto block = extract_block(rmatrix_catalog("R_Gmk").matrix, head, head);
    auto expected = substitute(rmatrix_catalog("R_h2").matrix,
                               {{param_id("h"), Scalar::param("m")}});
    CHECK(block == expected);
  }

  SECTION("top-left block of the blocked q-matrix is the 4x4 q-matrix") {
    CHECK(extract_block(rmatrix_catalog("R_q_blocked").matrix, head, head) ==
          rmatrix_catalog("R_GLr2").matrix);
  }

  SECTION("full index subset is the identity operation") {
    std::vector<size_t> all{0, 1, 2, 3, 4, 5, 6, 7, 8};
    auto R = rmatrix_catalog("R_Gmk").matrix;
    CHECK(extract_block(R, all, all) == R);
  }

  SECTION("out-of-range indices are rejected") {
    CHECK_THROWS_MATCHES(extract_block(rmatrix_catalog("R_h2").matrix, {0, 4}, {0, 1}), Error,
                         kind_is(ErrorKind::IndexOutOfRange));
  }
}

TEST_CASE("singular-limit contraction of the 9x9 family") {
  auto limit = contract(jordanian_plan_9());
  CHECK(limit == rmatrix_catalog("R_Gmk").matrix);

  SECTION("named entries of the limit") {
    CHECK(limit.at(0, 1) == sc("m"));
    CHECK(limit.at(0, 3) == sc("m^2"));
    CHECK(limit.at(4, 5) == sc("k"));
    CHECK(limit.at(6, 7) == sc("-k"));
  }

  SECTION("the limit is insensitive to higher-order path terms") {
    auto plan = jordanian_plan_9();
    Scalar t = Scalar::param("t");
    plan.path[param_id("s")] = Scalar(1L) + Scalar::param("k") * t + Scalar(3L) * t * t;
    CHECK(contract(plan) == rmatrix_catalog("R_Gmk").matrix);
  }

  SECTION("specializing k=0 first commutes with the limit") {
    auto plan = jordanian_plan_9();
    plan.path[param_id("s")] = Scalar(1L);  // s = 1 + 0*t
    auto one_param = contract(plan);
    CHECK(one_param == substitute(rmatrix_catalog("R_Gmk").matrix, at({{"k", 0}})));
    CHECK(one_param.at(4, 5).is_zero());
    CHECK(one_param.at(0, 1) == sc("m"));
  }
}

TEST_CASE("singular-limit contraction of the 4x4 family") {
  CHECK(contract(jordanian_plan_4()) == rmatrix_catalog("R_h2").matrix);
}

TEST_CASE("a path without a limit reports the entry") {
  auto plan = jordanian_plan_4();
  Scalar t = Scalar::param("t");
  plan.path[param_id("eta")] = Scalar(1L) / (t * t);  // shear blows up too fast
  try {
    contract(plan);
    FAIL("expected PoleAtZero");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PoleAtZero);
    CHECK(std::string(e.what()).find("entry (") != std::string::npos);
  }
}
