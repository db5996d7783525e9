#include "cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "posh/errors.hpp"
#include "posh/families.hpp"
#include "posh/psh.hpp"

namespace posh::cli {

HermitianPoly load_polynomial(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_polynomial(text.str());
  } catch (const NonHermitianInput& e) {
    throw ParseError(e.what());
  } catch (const DimensionMismatch& e) {
    throw ParseError(e.what());
  }
}

FamilySpec builtin_family(const std::string& name, int m) {
  if (name == "dangelo") return dangelo_spec(m);
  if (name == "example1") return example1_spec();
  throw BadBracket("unknown family '" + name + "' (expected dangelo or example1)");
}

int cmd_analyze(const HermitianPoly& r, std::ostream& out) {
  const Signature s = signature(r);
  const HolomorphicRep rep = holomorphic_rep(r);
  out << "signature: N+ = " << s.positive << ", N- = " << s.negative << ", N0 = " << s.zero << "\n";
  if (const auto m = r.bihomogeneous_degree()) {
    out << "bihomogeneous of degree " << *m << "\n";
  } else {
    out << "not bihomogeneous\n";
  }
  if (s.negative == 0) {
    out << "in P_inf (squared norm)\n";
  } else {
    out << "in P_k with N- > 0 requires N+ >= k+1; cannot be in P_" << std::max(1, s.positive) << "\n";
  }
  out << "holomorphic representation: p = " << rep.p() << ", q = " << rep.q() << "\n";
  return kOk;
}

int cmd_test(const HermitianPoly& r, int k, std::uint64_t seed, const SearchBudget& budget,
             std::ostream& out) {
  const MembershipVerdict v = test_membership(r, k, budget, seed);
  if (v.violated() && !verify_witness(r, v.witness().cfg, budget.tol).certified) {
    throw Error("witness failed independent verification");
  }
  out << to_json(v).dump(2) << "\n";
  return v.violated() ? kViolation : kOk;
}

int cmd_threshold(const std::string& family, int m, int k, double tol, std::uint64_t seed,
                  const SearchBudget& budget, std::ostream& out) {
  const FamilySpec fam = builtin_family(family, m);
  const double lo = pinf_threshold(fam);
  const double hi = find_violated_lambda(fam, k, lo, budget, seed);
  const ThresholdResult t = threshold(fam, k, {lo, hi}, tol, budget, seed);
  if (!verify_witness(member(fam, t.upper), t.witness_at_upper.cfg, budget.tol).certified) {
    throw Error("witness failed independent verification");
  }
  Json j{{"family", family}};
  if (family == "dangelo") j["m"] = m;
  j.update(to_json(t));
  if (family == "example1") {
    j["c_bracket"] = {example1_c_from_lambda(t.upper), example1_c_from_lambda(t.lower)};
  }
  j["pinf"] = lo;
  out << j.dump(2) << "\n";
  return kOk;
}

int cmd_witness(const std::string& family, int m, const std::string& kind,
                std::optional<double> lambda, std::ostream& out) {
  if (family != "dangelo") throw BadBracket("witness constructions exist for the dangelo family only");
  if (m < 1) throw BadBracket("m must be at least 1");
  Witness w;
  double default_lambda = 0.0;
  if (kind == "roots-of-unity") {
    w.cfg = roots_of_unity_witness(m);
    w.kind = WitnessKind::RootsOfUnity;
    default_lambda = binomial(2 * m, m) + 1.0;
  } else if (kind == "orthogonal-pair") {
    w.cfg = orthogonal_pair_witness();
    w.kind = WitnessKind::OrthogonalPair;
    default_lambda = std::ldexp(1.0, 2 * m - 1) + 1.0;
  } else if (kind == "prop5") {
    w.cfg = prop5_points(m);
    w.kind = WitnessKind::Prop5Points;
    default_lambda = binomial(2 * m, m) + 3.0;
  } else {
    throw BadBracket("unknown witness kind '" + kind + "'");
  }
  const double lam = lambda.value_or(default_lambda);
  const WitnessCheck check = verify_witness(dangelo_family(m, lam), w.cfg);
  w.min_eigenvalue = check.min_eigenvalue;
  w.determinant = check.determinant;
  Json j = to_json(w);
  j["lambda"] = lam;
  j["certified"] = check.certified;
  out << j.dump(2) << "\n";
  return check.certified ? kViolation : kOk;
}

int cmd_psh(const HermitianPoly& r, bool log_mode, std::optional<std::size_t> dehomogenize_var,
            std::uint64_t seed, const SearchBudget& budget, std::ostream& out) {
  const HermitianPoly target = dehomogenize_var ? dehomogenize(r, *dehomogenize_var) : r;
  const PshVerdict v = psh_region_test(target, log_mode ? PshMode::LogPsh : PshMode::Psh, budget, seed);
  out << to_json(v).dump(2) << "\n";
  return v.violated() ? kViolation : kOk;
}

int cmd_reproduce(std::optional<int> only_m, bool json_only, std::uint64_t seed, std::ostream& out) {
  const std::vector<ReproRow> rows = reproduce_rows(only_m, seed);
  if (json_only) {
    out << rows_json(rows).dump(2) << "\n";
  } else {
    out << rows_markdown(rows) << "\n" << rows_json(rows).dump(2) << "\n";
  }
  std::vector<std::string> failed;
  for (const auto& row : rows) {
    if (!row.pass) failed.push_back(row.id);
  }
  if (failed.empty()) return kOk;
  if (!json_only) {
    out << "failed rows:";
    for (const auto& id : failed) out << " " << id;
    out << "\n";
  }
  return kReproductionFailure;
}

namespace {

std::optional<int> parse_only(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if (text.rfind("m=", 0) != 0) throw CLI::ValidationError("--only", "expected m=M");
  try {
    std::size_t used = 0;
    const int m = std::stoi(text.substr(2), &used);
    if (used + 2 != text.size()) throw std::invalid_argument(text);
    return m;
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("--only", "expected m=M with an integer M");
  }
}

void add_budget(CLI::App* cmd, SearchBudget& budget) {
  cmd->add_option("--restarts", budget.restarts, "random restarts per level")->check(CLI::PositiveNumber);
  cmd->add_option("--steps", budget.steps, "descent sweeps per restart")->check(CLI::NonNegativeNumber);
  cmd->add_option("--radius", budget.radius, "sampling ball radius for non-bihomogeneous input")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Positivity classes of Hermitian symmetric polynomials"};
  app.require_subcommand(1);

  std::string file;
  std::string family = "dangelo";
  std::string kind = "roots-of-unity";
  std::string only;
  int k = 1;
  int m = 1;
  double tol = 1e-3;
  std::uint64_t seed = 0;
  std::optional<double> lambda;
  std::optional<std::size_t> dehomogenize_var;
  bool log_mode = false;
  bool json_only = false;
  SearchBudget budget;

  auto* analyze = app.add_subcommand("analyze", "signature and representation summary");
  analyze->add_option("file", file, "polynomial JSON")->required();

  auto* test = app.add_subcommand("test", "search for a P_k violation");
  test->add_option("file", file, "polynomial JSON")->required();
  test->add_option("--k", k, "class index")->required();
  test->add_option("--seed", seed);
  add_budget(test, budget);

  auto* thresh = app.add_subcommand("threshold", "bisect the P_k threshold of a builtin family");
  thresh->add_option("--family", family)->check(CLI::IsMember({"dangelo", "example1"}));
  thresh->add_option("--m", m);
  thresh->add_option("--k", k)->required();
  thresh->add_option("--tol", tol)->check(CLI::PositiveNumber);
  thresh->add_option("--seed", seed);
  add_budget(thresh, budget);

  auto* witness = app.add_subcommand("witness", "evaluate a deterministic witness");
  witness->add_option("--family", family)->check(CLI::IsMember({"dangelo"}));
  witness->add_option("--m", m)->required();
  witness->add_option("--kind", kind)->check(CLI::IsMember({"roots-of-unity", "orthogonal-pair", "prop5"}));
  witness->add_option("--lambda", lambda);

  auto* psh = app.add_subcommand("psh", "search for a plurisubharmonicity violation");
  psh->add_option("file", file, "polynomial JSON")->required();
  psh->add_flag("--log", log_mode, "test log R instead of R");
  psh->add_option("--dehomogenize", dehomogenize_var, "fix this variable (0-based) to 1");
  psh->add_option("--seed", seed);
  add_budget(psh, budget);

  auto* reproduce = app.add_subcommand("reproduce", "recompute the reference threshold table");
  reproduce->add_option("--only", only, "restrict to m=M");
  reproduce->add_flag("--json", json_only, "print only the JSON table");
  reproduce->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (k < 1) {
      err << "--k must be at least 1\n";
      return kUsageError;
    }
    if (*analyze) return cmd_analyze(load_polynomial(file), out);
    if (*test) return cmd_test(load_polynomial(file), k, seed, budget, out);
    if (*thresh) return cmd_threshold(family, m, k, tol, seed, budget, out);
    if (*witness) return cmd_witness(family, m, kind, lambda, out);
    if (*psh) return cmd_psh(load_polynomial(file), log_mode, dehomogenize_var, seed, budget, out);
    if (*reproduce) return cmd_reproduce(parse_only(only), json_only, seed, out);
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return kUsageError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace posh::cli
