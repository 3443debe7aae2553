#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "qgw/presentation.hpp"
#include "support/helpers.hpp"

using namespace qgw;
using qgw::testing::kind_is;

namespace {

NCPoly np(const std::string& text, const Presentation& p) {
  return parse_ncpoly(text, p.expr_context());
}

NCPoly nf(const Presentation& p, const std::string& text) {
  return p.system().normalize(np(text, p));
}

// substitutes parameters inside every coefficient
NCPoly rename_params(const NCPoly& x, const std::map<ParamId, Scalar>& sub) {
  NCPoly out;
  for (const auto& [w, c] : x.terms()) out.add_term(w, c.substitute(sub));
  return out;
}

bool same_rules(const std::vector<RewriteRule>& a, const std::vector<RewriteRule>& b,
                const std::map<ParamId, Scalar>& sub = {}) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].lhs != b[i].lhs) return false;
    NCPoly rhs = sub.empty() ? b[i].rhs : rename_params(b[i].rhs, sub);
    if (a[i].rhs != rhs) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("catalog shape") {
  const auto& grs = catalog("Grs");
  CHECK(grs.name == "Grs");
  CHECK(grs.gens == std::vector<std::string>{"a", "b", "c", "d", "f"});
  CHECK(grs.inv_of == std::vector<std::string>{"f"});
  CHECK(grs.alphabet() == std::vector<std::string>{"a", "b", "c", "d", "f", "finv"});
  CHECK(grs.params == std::vector<ParamId>{param_id("r"), param_id("s")});
  CHECK(grs.relations.size() == 10);
  CHECK(grs.aux_relations.size() == 6);

  const auto& gmk = catalog("Gmk");
  CHECK(gmk.gens == std::vector<std::string>{"c", "a", "d", "b", "f"});
  CHECK(gmk.params == std::vector<ParamId>{param_id("m"), param_id("k")});
  CHECK(gmk.relations.size() == 10);
  CHECK(gmk.aux_relations.size() == 6);

  SECTION("lookup is case-insensitive") {
    CHECK(&catalog("grs") == &grs);
    CHECK(&catalog("GMK") == &gmk);
  }

  SECTION("unknown names are rejected") {
    CHECK_THROWS_MATCHES(catalog("Gxy"), Error, kind_is(ErrorKind::UnknownPresentation));
  }
}

TEST_CASE("catalog normal forms") {
  const auto& grs = catalog("Grs");
  CHECK(nf(grs, "c*a") == np("r*a*c", grs));
  CHECK(nf(grs, "d*a") == np("a*d + (r - r^-1)*b*c", grs));
  CHECK(nf(grs, "b*a") == np("r*a*b", grs));
  CHECK(nf(grs, "f*b") == np("s*b*f", grs));
  CHECK(nf(grs, "f*finv") == NCPoly::one());
  CHECK(nf(grs, "finv*c") == np("s*c*finv", grs));
  CHECK(nf(grs, "a*d") == np("a*d", grs));

  const auto& gmk = catalog("Gmk");
  CHECK(nf(gmk, "d*c") == np("c*d - m*c*c", gmk));
  CHECK(nf(gmk, "f*d") == np("d*f - k*c*f", gmk));
  CHECK(nf(gmk, "f*b") == np("b*f + k*d*f - k*a*f - k^2*c*f", gmk));
  CHECK(nf(gmk, "finv*b") == np("b*finv + k*a*finv - k*d*finv - k^2*c*finv", gmk));
  CHECK(nf(gmk, "finv*f") == NCPoly::one());
}

TEST_CASE("every catalog system terminates and is locally confluent") {
  for (const auto* name : {"Grs", "Gmk", "GLr2", "GLh2"}) {
    auto sys = catalog(name).system();
    INFO("algebra " << name);
    auto term = sys.check_termination_order();
    CHECK(term.pass);
    auto conf = sys.check_local_confluence();
    CHECK(conf.pass);
    CHECK(conf.witnesses.empty());
  }
}

TEST_CASE("distinguished elements") {
  SECTION("the two determinant expressions agree in Gmk") {
    const auto& gmk = catalog("Gmk");
    auto cands = central_candidates(gmk);
    REQUIRE(cands.size() == 2);
    CHECK(gmk.system().normalize(cands[0] - cands[1]).is_zero());
    CHECK(cands[0] == np("a*d - b*c - m*a*c", gmk));
  }

  SECTION("Grs lists the determinant and its f-multiple") {
    const auto& grs = catalog("Grs");
    auto cands = central_candidates(grs);
    REQUIRE(cands.size() == 2);
    CHECK(cands[0] == np("a*d - r^-1*b*c", grs));
    CHECK(cands[1] == np("a*d*f - r^-1*b*c*f", grs));
  }

  SECTION("the 4-generator targets list their determinant") {
    CHECK(central_candidates(catalog("GLr2")).size() == 1);
    CHECK(central_candidates(catalog("GLh2")).size() == 1);
  }
}

TEST_CASE("4-generator catalogs match the corresponding subsystems") {
  auto subsystem = [](const Presentation& p) {
    std::vector<RewriteRule> out;
    for (auto& rule : p.oriented_rules()) {
      bool small = true;
      auto uses_extension = [](const Word& w) {
        for (const auto& g : w)
          if (g.name == "f" || g.name == "finv") return true;
        return false;
      };
      if (uses_extension(rule.lhs)) small = false;
      for (const auto& [w, c] : rule.rhs.terms())
        if (uses_extension(w)) small = false;
      if (small) out.push_back(rule);
    }
    return out;
  };

  SECTION("Grs block equals GLr2") {
    CHECK(same_rules(subsystem(catalog("Grs")), catalog("GLr2").oriented_rules()));
  }

  SECTION("Gmk block equals GLh2 at h = m") {
    std::map<ParamId, Scalar> h_to_m{{param_id("h"), Scalar::param("m")}};
    CHECK(same_rules(subsystem(catalog("Gmk")), catalog("GLh2").oriented_rules(), h_to_m));
  }
}

TEST_CASE("printing and reparsing is stable") {
  for (const auto* name : {"Grs", "Gmk", "GLr2", "GLh2"}) {
    const auto& p = catalog(name);
    INFO("algebra " << name);
    CHECK(parse_presentation(p.to_dsl()) == p);
  }
}

TEST_CASE("presentation language errors") {
  auto parse = [](const std::string& text) { return parse_presentation(text); };

  SECTION("valid minimal input") {
    auto p = parse("algebra P\nparams q\ngens x < y\nrel y*x = q*x*y\n");
    CHECK(p.name == "P");
    CHECK(p.relations.size() == 1);
    CHECK(p.aux_relations.empty());
  }

  SECTION("unknown directive") {
    CHECK_THROWS_MATCHES(parse("algebra P\ngens x < y\nfoo bar\n"), Error,
                         kind_is(ErrorKind::SyntaxError));
  }

  SECTION("missing pieces") {
    CHECK_THROWS_MATCHES(parse("gens x < y\n"), Error, kind_is(ErrorKind::SyntaxError));
    CHECK_THROWS_MATCHES(parse("algebra P\n"), Error, kind_is(ErrorKind::SyntaxError));
    CHECK_THROWS_MATCHES(parse("algebra P\nrel x = y\n"), Error, kind_is(ErrorKind::SyntaxError));
  }

  SECTION("undeclared generator carries the file line") {
    try {
      parse("algebra P\ngens x < y\n\nrel y*z = x*y\n");
      FAIL("expected UnknownGenerator");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnknownGenerator);
      CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
  }

  SECTION("duplicate generator") {
    CHECK_THROWS_MATCHES(parse("algebra P\ngens x < x\n"), Error,
                         kind_is(ErrorKind::SyntaxError));
  }

  SECTION("inv of unknown generator") {
    CHECK_THROWS_MATCHES(parse("algebra P\ngens x < y\ninv z\n"), Error,
                         kind_is(ErrorKind::SyntaxError));
  }

  SECTION("name used as generator and parameter") {
    CHECK_THROWS_MATCHES(parse("algebra P\nparams x\ngens x < y\n"), Error,
                         kind_is(ErrorKind::SyntaxError));
  }

  SECTION("two equals signs") {
    CHECK_THROWS_MATCHES(parse("algebra P\ngens x < y\nrel x*y = y*x = 1\n"), Error,
                         kind_is(ErrorKind::SyntaxError));
  }

  SECTION("relation that cannot be oriented") {
    // single-letter top word
    CHECK_THROWS_MATCHES(parse("algebra P\ngens x < y\nrel x = 1\n"), Error,
                         kind_is(ErrorKind::NonDecreasingRule));
  }

  SECTION("trivial relation") {
    CHECK_THROWS_MATCHES(parse("algebra P\ngens x < y\nrel x*y = x*y\n"), Error,
                         kind_is(ErrorKind::ConfigError));
  }

  SECTION("leading comments become notes and survive roundtrip") {
    auto p = parse("# a note\n# second line\nalgebra P\ngens x < y\nrel y*x = x*y\n");
    CHECK(p.notes == "a note\nsecond line");
    CHECK(parse_presentation(p.to_dsl()) == p);
  }
}

TEST_CASE("tensor-power systems") {
  const auto& grs = catalog("Grs");
  auto sys2 = grs.system(2);
  CHECK(sys2.rules().size() == 32);

  auto ctx = grs.expr_context();
  auto in = parse_ncpoly("c*a*c@2*a@2", ctx);
  auto expect = parse_ncpoly("r^2*a*c*a@2*c@2", ctx);
  CHECK(sys2.normalize(in) == expect);

  SECTION("slot-2 rules carry slot-2 letters") {
    auto rules = grs.oriented_rules(2);
    for (const auto& rule : rules)
      for (const auto& g : rule.lhs) CHECK(g.slot == 2);
  }

  SECTION("the doubled system stays locally confluent") {
    CHECK(sys2.check_local_confluence().pass);
  }
}
