#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qgw/data.hpp"
#include "qgw/suites.hpp"

namespace {

std::string trimmed(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// "r=2, s=-3/2" -> exact rational bindings
std::map<qgw::ParamId, qgw::Scalar> parse_bindings(const std::string& text) {
  std::map<qgw::ParamId, qgw::Scalar> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trimmed(item);
    if (item.empty()) continue;
    size_t eq = item.find('=');
    if (eq == std::string::npos)
      qgw::fail(qgw::ErrorKind::ConfigError, "binding '" + item + "' is not name=value");
    std::string name = trimmed(item.substr(0, eq));
    std::string value = trimmed(item.substr(eq + 1));
    if (name.empty()) qgw::fail(qgw::ErrorKind::ConfigError, "binding '" + item + "' has no name");
    try {
      out[qgw::param_id(name)] = qgw::Scalar(qgw::BigRat(value));
    } catch (const qgw::Error&) {
      throw;
    } catch (const std::exception&) {
      qgw::fail(qgw::ErrorKind::ConfigError,
                "value '" + value + "' is not an exact rational (use p/q form)");
    }
  }
  if (out.empty()) qgw::fail(qgw::ErrorKind::ConfigError, "empty parameter binding list");
  return out;
}

std::string render_bindings(const std::map<qgw::ParamId, qgw::Scalar>& bindings) {
  std::string out;
  for (const auto& [id, value] : bindings)
    out += (out.empty() ? "" : ", ") + qgw::param_name(id) + "=" + value.to_string();
  return out;
}

void print_matrix(const qgw::ParamMatrix& M) {
  for (size_t i = 0; i < M.rows(); ++i) {
    std::string line = "[";
    for (size_t j = 0; j < M.cols(); ++j)
      line += (j ? ", " : "") + M.at(i, j).to_string();
    std::cout << line << "]\n";
  }
}

void print_reports(const std::vector<qgw::CheckReport>& reports, bool as_json) {
  if (as_json) {
    std::cout << qgw::reports_to_json(reports);
    return;
  }
  size_t failing = 0;
  for (const auto& rep : reports) {
    std::cout << rep.to_text() << "\n";
    if (!rep.pass) ++failing;
  }
  std::cout << reports.size() << " checks, "
            << (failing ? std::to_string(failing) + " failing" : "all pass") << "\n";
}

// A presentation argument is either a catalog name or a DSL file path.
qgw::Presentation load_presentation(const std::string& arg) {
  if (arg.find('/') != std::string::npos ||
      (arg.size() > 4 && arg.rfind(".alg") == arg.size() - 4))
    return qgw::parse_presentation(qgw::read_text_file(arg));
  return qgw::catalog(arg);
}

qgw::OpMatrix generator_matrix(size_t leg) {
  if (leg == 3) return qgw::t_matrix();
  if (leg == 2) {
    qgw::OpMatrix T(2, 2);
    T.at(0, 0) = qgw::NCPoly::gen("a");
    T.at(0, 1) = qgw::NCPoly::gen("b");
    T.at(1, 0) = qgw::NCPoly::gen("c");
    T.at(1, 1) = qgw::NCPoly::gen("d");
    return T;
  }
  qgw::fail(qgw::ErrorKind::DimensionMismatch,
            "no generator matrix for leg dimension " + std::to_string(leg));
}

qgw::ContractionPlan lookup_plan(const std::string& name) {
  if (name == "jordanian9") return qgw::jordanian_plan_9();
  if (name == "jordanian4") return qgw::jordanian_plan_4();
  qgw::fail(qgw::ErrorKind::ConfigError,
            "unknown contraction plan '" + name + "' (known: jordanian9, jordanian4)");
}

struct CheckOpts {
  std::vector<std::string> names;
  bool claims = false;
  std::string algebra, source;
  int N = 0;
  bool json = false;
  bool parallel = false;
};

int run_check_verb(const CheckOpts& opt) {
  qgw::SuiteConfig cfg;
  if (opt.claims) {
    cfg.checks = qgw::suite_names();
  } else {
    for (const auto& n : opt.names) {
      if (n == "all") {
        const auto& all = qgw::suite_names();
        cfg.checks.insert(cfg.checks.end(), all.begin(), all.end());
      } else {
        cfg.checks.push_back(n);
      }
    }
  }
  if (cfg.checks.empty())
    qgw::fail(qgw::ErrorKind::ConfigError, "no checks selected; name suites, 'all', or pass --claims");
  cfg.subject = opt.algebra;
  if (!opt.source.empty()) {
    if (!cfg.subject.empty() && cfg.subject != opt.source)
      qgw::fail(qgw::ErrorKind::ConfigError, "--algebra and --source disagree");
    cfg.subject = opt.source;
  }
  cfg.N = opt.N;
  cfg.parallel = opt.parallel;
  auto reports = qgw::run_suite(cfg);
  print_reports(reports, opt.json);
  return qgw::suite_exit_code(reports);
}

struct NormalizeOpts {
  std::string algebra, expr;
  std::string order = "leftmost";
  bool trace = false;
  bool json = false;
};

int run_normalize_verb(const NormalizeOpts& opt) {
  qgw::Presentation p = load_presentation(opt.algebra);
  qgw::RewriteSystem sys = p.system(1);
  qgw::NCPoly x = qgw::parse_ncpoly(opt.expr, p.expr_context());
  qgw::Strategy strategy = opt.order == "rightmost" ? qgw::Strategy::RightmostInnermost
                                                    : qgw::Strategy::LeftmostInnermost;
  std::vector<qgw::TraceStep> steps;
  bool want_steps = opt.trace || opt.json;
  qgw::NCPoly nf = sys.normalize(x, strategy, want_steps ? &steps : nullptr);
  if (opt.json) {
    nlohmann::ordered_json doc;
    doc["algebra"] = p.name;
    doc["input"] = opt.expr;
    doc["strategy"] = opt.order;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& st : steps)
      arr.push_back({{"before", qgw::word_to_string(st.before)},
                     {"rule", qgw::word_to_string(st.rule_lhs)},
                     {"position", st.position}});
    doc["steps"] = arr;
    doc["normal_form"] = nf.to_string();
    std::cout << doc.dump(2) << "\n";
    return 0;
  }
  if (opt.trace) {
    size_t i = 0;
    for (const auto& st : steps)
      std::cout << "step " << ++i << ": " << qgw::word_to_string(st.before) << "  [rule "
                << qgw::word_to_string(st.rule_lhs) << " at " << st.position << "]\n";
  }
  std::cout << nf.to_string() << "\n";
  return 0;
}

struct RMatrixOpts {
  std::string name;
  std::string params;
  bool json = false;
};

// stored-convention entries, optionally at an exact parameter point
qgw::ParamMatrix shown_matrix(const RMatrixOpts& opt, std::string* subject) {
  const qgw::RMatrixEntry& entry = qgw::rmatrix_catalog(opt.name);
  *subject = entry.name;
  *subject += entry.convention == qgw::IndexConvention::Block9 ? " (block index order)"
                                                               : " (lex index order)";
  qgw::ParamMatrix M = entry.matrix;
  if (!opt.params.empty()) {
    auto bindings = parse_bindings(opt.params);
    M = qgw::substitute(M, bindings);
    *subject += " at " + render_bindings(bindings);
  }
  return M;
}

int run_rmatrix_show(const RMatrixOpts& opt) {
  std::string subject;
  qgw::ParamMatrix M = shown_matrix(opt, &subject);
  if (opt.json) {
    std::cout << qgw::matrix_to_json(M) << "\n";
  } else {
    std::cout << subject << ":\n";
    print_matrix(M);
  }
  return 0;
}

int run_rmatrix_check(const RMatrixOpts& opt, bool triangular) {
  const qgw::RMatrixEntry& entry = qgw::rmatrix_catalog(opt.name);
  std::string subject = entry.name;
  qgw::ParamMatrix M = entry.lex();
  if (!opt.params.empty()) {
    auto bindings = parse_bindings(opt.params);
    M = qgw::substitute(M, bindings);
    subject += " at " + render_bindings(bindings);
  }
  qgw::CheckReport rep =
      triangular ? qgw::triangularity_check(M, subject) : qgw::qybe_check(M, subject);
  print_reports({rep}, opt.json);
  return rep.pass ? 0 : 1;
}

struct ContractOpts {
  std::string plan;
  std::string emit = "text";
  bool json = false;
};

int run_contract_verb(const ContractOpts& opt) {
  qgw::ContractionPlan plan = lookup_plan(opt.plan);
  qgw::ParamMatrix limit = qgw::contract(plan);
  if (opt.json || opt.emit == "json") {
    std::cout << qgw::matrix_to_json(limit) << "\n";
  } else {
    std::cout << plan.name << ":\n";
    print_matrix(limit);
  }
  return 0;
}

struct DeriveOpts {
  std::string rmatrix;
  bool json = false;
};

int run_derive_verb(const DeriveOpts& opt) {
  const qgw::RMatrixEntry& entry = qgw::rmatrix_catalog(opt.rmatrix);
  qgw::ParamMatrix R = entry.lex();
  size_t leg = 1;
  while (leg * leg < R.rows()) ++leg;
  qgw::RelationSet rels = qgw::derive_relations(R, generator_matrix(leg));
  if (opt.json) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& rel : rels) arr.push_back(rel.to_string());
    std::cout << arr.dump(2) << "\n";
  } else {
    for (const auto& rel : rels) std::cout << rel.to_string() << "\n";
  }
  return 0;
}

struct MorphismOpts {
  std::string source;
  int N = 1;
  bool json = false;
};

int run_morphism_verb(const MorphismOpts& opt) {
  qgw::MorphismSpec spec{opt.source, opt.N};
  qgw::CheckReport rep = qgw::check_morphism(spec);
  if (opt.json) {
    std::cout << rep.to_json().dump(2) << "\n";
  } else {
    std::cout << qgw::derive_image_relations(spec).render() << "\n" << rep.to_text() << "\n";
  }
  return rep.pass ? 0 : 1;
}

struct ParseOpts {
  std::string file;
  bool json = false;
};

int run_parse_verb(const ParseOpts& opt) {
  qgw::Presentation p = qgw::parse_presentation(qgw::read_text_file(opt.file));
  qgw::RewriteSystem sys = p.system(1);
  qgw::CheckReport term = sys.check_termination_order();
  qgw::CheckReport conf = sys.check_local_confluence();
  if (opt.json) {
    nlohmann::ordered_json doc;
    doc["algebra"] = p.name;
    doc["generators"] = p.alphabet();
    auto params = nlohmann::ordered_json::array();
    for (qgw::ParamId id : p.params) params.push_back(qgw::param_name(id));
    doc["parameters"] = params;
    doc["rules"] = sys.rules().size();
    doc["reports"] = nlohmann::ordered_json::array({term.to_json(), conf.to_json()});
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "algebra " << p.name << "\n";
    std::string gens;
    for (const auto& g : p.alphabet()) gens += (gens.empty() ? "" : " ") + g;
    std::cout << "generators: " << gens << "\n";
    std::string params;
    for (qgw::ParamId id : p.params) params += (params.empty() ? "" : " ") + qgw::param_name(id);
    std::cout << "parameters: " << params << "\n";
    std::cout << "rules: " << sys.rules().size() << "\n";
    std::cout << term.to_text() << "\n" << conf.to_text() << "\n";
  }
  return term.pass && conf.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact symbolic checks for two-parameter and Jordanian deformed 2x2 matrix "
      "groups: rewriting, exchange matrices, Hopf structure, realisation maps"};
  app.require_subcommand(1);
  int rc = 0;

  CheckOpts check_opts;
  auto* check = app.add_subcommand("check", "run named check suites over the shipped catalogs");
  check->add_option("names", check_opts.names, "suite names, or 'all'");
  check->add_flag("--claims", check_opts.claims, "run every shipped suite (same set as 'all')");
  check->add_option("--algebra", check_opts.algebra, "restrict to one presentation");
  check->add_option("--source", check_opts.source, "alias of --algebra, morphism wording");
  auto* check_n =
      check->add_option("--N", check_opts.N, "pin the realisation exponent (default sweeps 1..3)");
  check->add_flag("--json", check_opts.json, "emit the report array as JSON");
  check->add_flag("--parallel", check_opts.parallel,
                  "run suites concurrently; report order is unchanged");
  check->callback([&] {
    if (check_n->count() > 0 && check_opts.N < 1)
      qgw::fail(qgw::ErrorKind::ConfigError, "exponent --N must be a positive integer, got " +
                                                 std::to_string(check_opts.N));
    rc = run_check_verb(check_opts);
  });

  NormalizeOpts norm_opts;
  auto* norm = app.add_subcommand("normalize", "rewrite an expression to its normal form");
  norm->add_option("--algebra", norm_opts.algebra, "presentation name or .alg file")->required();
  norm->add_option("expr", norm_opts.expr, "expression over the algebra's generators")->required();
  norm->add_option("--order", norm_opts.order, "innermost scan direction")
      ->check(CLI::IsMember({"leftmost", "rightmost"}));
  norm->add_flag("--trace", norm_opts.trace, "print each rewrite step");
  norm->add_flag("--json", norm_opts.json, "emit JSON with the step log");
  norm->callback([&] { rc = run_normalize_verb(norm_opts); });

  auto* rm = app.add_subcommand("rmatrix", "inspect and check the shipped exchange matrices");
  rm->require_subcommand(1);
  RMatrixOpts show_opts;
  auto* show = rm->add_subcommand("show", "print a matrix in its stored index convention");
  show->add_option("--name", show_opts.name, "matrix name")->required();
  show->add_option("--params", show_opts.params, "exact bindings, e.g. r=2,s=3");
  show->add_flag("--json", show_opts.json, "emit the dim/entries JSON form");
  show->callback([&] { rc = run_rmatrix_show(show_opts); });

  RMatrixOpts qybe_opts;
  auto* qybe = rm->add_subcommand("qybe", "check R12 R13 R23 = R23 R13 R12");
  qybe->add_option("--name", qybe_opts.name, "matrix name")->required();
  qybe->add_option("--params", qybe_opts.params, "exact bindings, e.g. r=2,s=3");
  qybe->add_flag("--json", qybe_opts.json, "emit the report as JSON");
  qybe->callback([&] { rc = run_rmatrix_check(qybe_opts, false); });

  RMatrixOpts tri_opts;
  auto* tri = rm->add_subcommand("triangular", "check (P R P) R = I");
  tri->add_option("--name", tri_opts.name, "matrix name")->required();
  tri->add_option("--params", tri_opts.params, "exact bindings, e.g. r=2,s=3");
  tri->add_flag("--json", tri_opts.json, "emit the report as JSON");
  tri->callback([&] { rc = run_rmatrix_check(tri_opts, true); });

  auto add_contract_options = [&](CLI::App* cmd, ContractOpts& opts) {
    cmd->add_option("--plan", opts.plan, "jordanian9 or jordanian4")->required();
    cmd->add_option("--emit", opts.emit, "text or json")->check(CLI::IsMember({"text", "json"}));
    cmd->add_flag("--json", opts.json, "same as --emit json");
    cmd->callback([&] { rc = run_contract_verb(opts); });
  };
  ContractOpts rm_contract_opts;
  add_contract_options(rm->add_subcommand("contract", "evaluate a singular contraction limit"),
                       rm_contract_opts);
  ContractOpts contract_opts;
  add_contract_options(app.add_subcommand("contract", "evaluate a singular contraction limit"),
                       contract_opts);

  DeriveOpts derive_opts;
  auto* derive = app.add_subcommand(
      "derive-relations", "expand the exchange residuals of a matrix into generator relations");
  derive->add_option("--rmatrix", derive_opts.rmatrix, "matrix name")->required();
  derive->add_flag("--json", derive_opts.json, "emit relations as a JSON string array");
  derive->callback([&] { rc = run_derive_verb(derive_opts); });

  MorphismOpts morph_opts;
  auto* morph = app.add_subcommand("morphism",
                                   "derive and certify the primed-image relations of f^N scaling");
  morph->add_option("--source", morph_opts.source, "Grs or Gmk")->required();
  morph->add_option("--N", morph_opts.N, "realisation exponent (positive)");
  morph->add_flag("--json", morph_opts.json, "emit the report as JSON");
  morph->callback([&] { rc = run_morphism_verb(morph_opts); });

  ParseOpts parse_opts;
  auto* parse = app.add_subcommand("parse", "load, validate, and summarize a presentation file");
  parse->add_option("file", parse_opts.file, "path to a .alg presentation")->required();
  parse->add_flag("--json", parse_opts.json, "emit the summary as JSON");
  parse->callback([&] { rc = run_parse_verb(parse_opts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const qgw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
