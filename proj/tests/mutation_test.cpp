#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "qgw/hopf.hpp"
#include "qgw/presentation.hpp"
#include "qgw/rmatrix.hpp"
#include "support/helpers.hpp"

// Every check must actually be able to fail: perturbing one golden entry (or
// deleting one rule term) has to produce a failing report with a witness.

using namespace qgw;

namespace {

struct EnvGuard {
  std::string name, saved;
  bool had;
  EnvGuard(const char* n, const std::string& value) : name(n) {
    const char* cur = std::getenv(n);
    had = cur != nullptr;
    if (had) saved = cur;
    setenv(n, value.c_str(), 1);
  }
  ~EnvGuard() {
    if (had)
      setenv(name.c_str(), saved.c_str(), 1);
    else
      unsetenv(name.c_str());
  }
};

void require_failed_with_witness(const CheckReport& rep) {
  CHECK_FALSE(rep.pass);
  REQUIRE_FALSE(rep.failures().empty());
  CHECK_FALSE(rep.failures().front().residual.empty());
}

}  // namespace

TEST_CASE("qybe fails on a single perturbed entry") {
  ParamMatrix M = rmatrix_catalog("R_Gmk").matrix;  // blocked convention
  M.at(0, 1) = M.at(0, 1) + Scalar(1L);             // m -> m + 1
  CheckReport rep = qybe_check(reorder(M, block9().inverse()), "R_Gmk with (0,1) bumped");
  require_failed_with_witness(rep);
  CHECK(rep.failures().front().location.find("entry (") == 0);
}

TEST_CASE("triangularity fails on a single perturbed entry") {
  ParamMatrix M = rmatrix_catalog("R_h2").matrix;
  M.at(0, 1) = M.at(0, 1) + Scalar(1L);  // h -> h + 1
  require_failed_with_witness(triangularity_check(M, "R_h2 with (0,1) bumped"));
}

TEST_CASE("rtt fails on a single perturbed entry") {
  ParamMatrix M = rmatrix_catalog("R_Grs").matrix;
  M.at(1, 3) = M.at(1, 3) + Scalar(1L);  // the b(x)c coupling
  CheckReport rep = rtt_residuals(M, t_matrix(), catalog("grs"));
  require_failed_with_witness(rep);
}

TEST_CASE("antipode fails when the adjugate block loses a term") {
  namespace fs = std::filesystem;
  fs::path mutated = fs::temp_directory_path() / "qgw_mutated_data";
  fs::remove_all(mutated);
  fs::copy(data_dir(), mutated, fs::copy_options::recursive);

  std::string text = read_text_file((mutated / "antipode_gmk.json").string());
  std::string dropped = " + m^2*c";
  size_t pos = text.find(dropped);
  REQUIRE(pos != std::string::npos);
  text.erase(pos, dropped.size());
  std::ofstream((mutated / "antipode_gmk.json").string()) << text;

  const Presentation& gmk = catalog("gmk");  // cached; unaffected by the override
  EnvGuard env("QGW_DATA_DIR", mutated.string());
  CheckReport rep = check_antipode(gmk);
  require_failed_with_witness(rep);
  CHECK(rep.failures().front().location.find("(M*T)(") == 0);
}

TEST_CASE("confluence fails when a rule loses a term") {
  const Presentation& gmk = catalog("gmk");
  RewriteSystem sys = gmk.system(1);

  Word ba{GenSymbol{1, "b"}, GenSymbol{1, "a"}};
  std::vector<RewriteRule> rules = sys.rules();
  bool patched = false;
  for (auto& rule : rules) {
    if (!(rule.lhs == ba)) continue;
    // delete the -m^2*a*c correction
    NCPoly ac = NCPoly::gen("a") * NCPoly::gen("c");
    rule.rhs = rule.rhs + Scalar::param("m").pow(2) * ac;
    patched = true;
  }
  REQUIRE(patched);

  RewriteSystem broken = RewriteSystem::make(sys.alphabet(), std::move(rules));
  broken.subject = "Gmk without the m^2*a*c correction";
  CheckReport rep = broken.check_local_confluence();
  require_failed_with_witness(rep);
  CHECK(rep.failures().front().location.find("overlap ") == 0);
}
