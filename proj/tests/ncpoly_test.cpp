#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qgw/ncpoly.hpp"
#include "support/helpers.hpp"

using namespace qgw;

namespace {

NCPoly g(const std::string& n, int slot = 1) { return NCPoly::gen(n, slot); }

NCPoly grs_casimir() {
  // ad - r^-1 bc
  return g("a") * g("d") - Scalar::param("r").pow(-1) * (g("b") * g("c"));
}

}  // namespace

TEST_CASE("concatenation product") {
  NCPoly ad = g("a") * g("d");
  REQUIRE(ad.terms().size() == 1);
  CHECK(word_to_string(ad.terms().begin()->first) == "a*d");
  CHECK(g("a") * g("d") != g("d") * g("a"));
  CHECK((grs_casimir() * g("f")).terms().size() == 2);
}

TEST_CASE("cross-slot letters commute") {
  NCPoly x = g("a", 1) * g("c", 2);
  NCPoly y = g("c", 2) * g("a", 1);
  CHECK(x == y);
  // Same slot does not commute.
  CHECK(g("a", 2) * g("c", 2) != g("c", 2) * g("a", 2));
}

TEST_CASE("embed_slot is multiplicative") {
  NCPoly D = grs_casimir();
  CHECK(embed_slot(D * D, 2) == embed_slot(D, 2) * embed_slot(D, 2));
  CHECK(embed_slot(g("a"), 2) == g("a", 2));
  CHECK(embed_slot(D, 2) * embed_slot(D, 1) == embed_slot(D, 1) * embed_slot(D, 2));
}

TEST_CASE("apply_generator_map extends images as an algebra map") {
  std::map<std::string, NCPoly> images{
      {"a", g("f") * g("a")},
      {"b", g("f") * g("b")},
  };
  NCPoly x = g("a") * g("b");
  CHECK(apply_generator_map(x, images) == g("f") * g("a") * g("f") * g("b"));
  CHECK(apply_generator_map(NCPoly::one(), images) == NCPoly::one());

  std::map<std::string, NCPoly> idmap{
      {"a", g("a")}, {"b", g("b")}, {"c", g("c")}, {"d", g("d")}};
  CHECK(apply_generator_map(grs_casimir(), idmap) == grs_casimir());

  CHECK_THROWS_MATCHES(apply_generator_map(g("c"), images), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::MissingImage;
                       }));
}

TEST_CASE("associativity and bilinearity on random inputs") {
  std::mt19937 rng(404);
  std::vector<std::string> letters{"a", "b", "c", "d", "f"};
  std::vector<ParamId> vars{param_id("r"), param_id("s")};
  for (int i = 0; i < 20; ++i) {
    NCPoly x = testing::random_ncpoly(rng, letters, vars, 3, 3);
    NCPoly y = testing::random_ncpoly(rng, letters, vars, 3, 3);
    NCPoly z = testing::random_ncpoly(rng, letters, vars, 3, 3);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK((x + y) * z == x * z + y * z);
    Scalar c = testing::random_scalar(rng, vars);
    CHECK(c * (x * y) == (c * x) * y);
  }
}

TEST_CASE("degree and homogeneity") {
  CHECK(grs_casimir().degree() == 2);
  CHECK(grs_casimir().is_homogeneous(2));
  CHECK(!(grs_casimir() + NCPoly::one()).is_homogeneous(2));
  CHECK(NCPoly().degree() == -1);
}

TEST_CASE("ncpoly printing") {
  CHECK((g("c") * g("d") - Scalar::param("m") * (g("c") * g("c"))).to_string() ==
        "c*d - m*c*c");
  CHECK(NCPoly().to_string() == "0");
  CHECK(NCPoly::one().to_string() == "1");
  CHECK((g("a", 1) * g("a", 2)).to_string() == "a*a@2");
  CHECK(grs_casimir().to_string() == "-(1/r)*b*c + a*d");
}
