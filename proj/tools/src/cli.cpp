#include "bkmtools/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "bkm/characters.hpp"
#include "bkm/errors.hpp"
#include "bkm/lie_engine.hpp"
#include "bkm/solver.hpp"
#include "bkm/weights.hpp"
#include "bkmtools/acceptance.hpp"
#include "bkmtools/json_io.hpp"

namespace bkm::cli {

namespace {

using io::json;

struct RunConfig {
  std::string matrix;
  std::string lambda;
  int cutoff = 6;
  int cap = 0;
  std::string format = "json";
  unsigned threads = 1;
  std::size_t budget_mb = 2048;
  bool oracle_fallback = false;

  // subcommand arguments
  std::string holes;
  std::string beta;
  std::string kind = "simple";
  std::string box;
  std::size_t n = 3;
  bool include_zero = false;
  long m1 = 0, m2 = 0;
  long up_to = 0;
  std::size_t search_budget = 1000000;
  bool report_sets = false;
  std::string suite;
};

[[noreturn]] void bad(const std::string& what) { throw BkmError(ErrorKind::InvalidInput, what); }

CartanMatrix load_matrix(const RunConfig& c) {
  if (c.matrix.empty()) bad("--matrix is required");
  return io::matrix_from_json(io::load_json_arg(c.matrix));
}

Weight load_lambda(const RunConfig& c, const CartanMatrix& a) {
  if (c.lambda.empty()) bad("--lambda is required");
  return io::weight_from_json(io::load_json_arg(c.lambda), a);
}

RootSum load_beta(const RunConfig& c, std::size_t rank) {
  if (c.beta.empty()) bad("--beta is required");
  return io::rootsum_from_json(io::load_json_arg(c.beta), rank);
}

EngineOptions engine_options(const RunConfig& c, int cutoff) { return {cutoff, c.budget_mb, c.threads}; }

std::shared_ptr<const GradedNilpotent> build_engine(const RunConfig& c, const CartanMatrix& a, int cutoff) {
  return GradedNilpotent::build(a, engine_options(c, cutoff));
}

// Multiplicity table for the denominator, optionally cached on disk.
std::map<RootSum, Integer> multiplicities(const RunConfig& c, const CartanMatrix& a, int cutoff) {
  std::optional<std::filesystem::path> file;
  if (const char* dir = std::getenv("BKM_CACHE_DIR"); dir && *dir)
    file = std::filesystem::path(dir) / (a.hash_hex() + "-h" + std::to_string(cutoff) + ".json");

  if (file && std::filesystem::is_regular_file(*file)) {
    try {
      std::ifstream in(*file);
      json j = json::parse(in);
      if (j.at("matrix") == a.canonical_text() && j.at("cutoff") == cutoff) {
        std::map<RootSum, Integer> m;
        for (auto& e : j.at("multiplicities"))
          m[io::rootsum_from_json(e.at("grade"), a.size())] = Integer(e.at("m").get<std::string>());
        return m;
      }
    } catch (const std::exception&) {
      // unreadable entries are rebuilt
    }
  }

  auto g = build_engine(c, a, cutoff);
  std::map<RootSum, Integer> m;
  for (auto& alpha : g->positive_roots()) m[alpha] = Integer(static_cast<unsigned long>(g->multiplicity(alpha)));

  if (file) {
    json rows = json::array();
    for (auto& [b, k] : m) rows.push_back({{"grade", io::rootsum_to_json(b)}, {"m", k.get_str()}});
    std::error_code ec;
    std::filesystem::create_directories(file->parent_path(), ec);
    auto tmp = *file;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      out << json{{"matrix", a.canonical_text()}, {"cutoff", cutoff}, {"multiplicities", rows}}.dump();
    }
    std::filesystem::rename(tmp, *file, ec);
  }
  return m;
}

FormalCharacter denominator_of(const RunConfig& c, const CartanMatrix& a, int cutoff) {
  return denominator(a.size(), cutoff, multiplicities(c, a, cutoff));
}

json with_provenance(json j, const CartanMatrix& a, int cutoff) {
  j["provenance"] = io::provenance(a, cutoff);
  return j;
}

json words_to_json(const std::vector<std::string>& words) {
  json out = json::array();
  for (auto& w : words) {
    json x = json::array();
    for (char ch : w) x.push_back(static_cast<int>(ch));
    out.push_back(x);
  }
  return out;
}

json vec_to_json(const Vec& v) {
  json out = json::array();
  for (auto& x : v) out.push_back(io::rational_to_json(x));
  return out;
}

json cmd_classify(const RunConfig& c) {
  CartanMatrix a = load_matrix(c);
  json types = json::array();
  for (auto t : a.types()) types.push_back(node_type_name(t));
  json out{{"types", types}, {"symmetrizable", a.symmetrizable()}};
  if (a.symmetrizable()) out["symmetrizer"] = vec_to_json(a.symmetrizer());
  if (!c.lambda.empty()) {
    Weight l = load_lambda(c, a);
    ConeInfo cone = cone_membership(a, l);
    json powers = json::array();
    for (auto& p : cone.powers) powers.push_back(io::integer_to_json(p));
    out["lambda"] = io::weight_to_json(l);
    out["cone"] = {{"P+", cone.in_p_plus}, {"P+-", cone.in_p_pm}, {"J_lambda", cone.j_lambda}, {"powers", powers}};
  }
  return with_provenance(out, a, c.cutoff);
}

json cmd_weights(const RunConfig& c) {
  CartanMatrix a = load_matrix(c);
  Weight l = load_lambda(c, a);
  json out{{"lambda", io::weight_to_json(l)}};
  if (c.holes.empty()) {
    out["module"] = "simple";
    out["method"] = "simple-formula";
    out["weights"] = io::rootsums_to_json(simple_formula_enumerate(a, l, c.cutoff));
  } else {
    HoleSet hs = io::holes_from_json(io::load_json_arg(c.holes), a.size());
    if (c.cap) hs.cap = c.cap;
    validate_holes(a, l, hs.holes);
    out["module"] = "holes";
    out["holes"] = io::holes_to_json(hs);
    if (is_nice(a, hs.holes)) {
      out["method"] = "A";
      out["weights"] = io::rootsums_to_json(thmA_enumerate(a, l, hs.holes, c.cutoff));
    } else {
      auto r = thmB_weights(a, l, hs, c.cutoff);
      out["method"] = "B";
      out["agree"] = r.agree;
      out["weights"] = io::rootsums_to_json(r.via_simples);
      out["via_nice_supersets"] = io::rootsums_to_json(r.via_nice_supersets);
    }
  }
  return with_provenance(out, a, c.cutoff);
}

FormalCharacter oracle_character(const RunConfig& c, const CartanMatrix& a, const Weight& l, bool with_holes) {
  auto g = build_engine(c, a, c.cutoff);
  VermaModel vm(g, l);
  if (with_holes) {
    HoleSet hs = io::holes_from_json(io::load_json_arg(c.holes), a.size());
    validate_holes(a, l, hs.holes);
    return character_from_dims(quotient_multiplicities(vm, hs.holes), l, c.cutoff);
  }
  return character_from_dims(simple_multiplicities(vm), l, c.cutoff);
}

json cmd_char(const RunConfig& c, FormalCharacter* table) {
  CartanMatrix a = load_matrix(c);
  Weight l = load_lambda(c, a);
  json out;
  FormalCharacter ch;
  auto closed = [&]() {
    if (c.kind == "verma") {
      ch = inverse(denominator_of(c, a, c.cutoff));
      ch.set_top(l);
      out["source"] = "verma";
    } else if (c.kind == "simple") {
      auto num = simple_numerator_rank2(a, l, c.cutoff);
      ch = char_from_numerator(num.numerator, denominator_of(c, a, c.cutoff));
      out["source"] = "closed-form";
      out["setting"] = num.setting;
      out["numerator"] = io::character_to_json(num.numerator);
    } else if (c.kind == "thmD") {
      std::size_t n = a.size();
      if (!(a.entries() == negative_type_a(n).entries()) || !(l == weyl_vector(a)))
        bad("thmD needs the negative type A matrix and lambda = rho");
      std::vector<RootSum> holes =
          c.holes.empty() ? simple_holes(a, l) : io::holes_from_json(io::load_json_arg(c.holes), n).holes;
      FormalCharacter num = thmD_numerator(n, holes, c.cutoff);
      num.set_top(l);
      ch = char_from_numerator(num, denominator_of(c, a, c.cutoff));
      out["source"] = "closed-form";
      out["numerator"] = io::character_to_json(num);
    } else if (c.kind == "wkb") {
      auto terms = wkb_numerator(a, l, c.cutoff);
      ch = char_from_numerator(terms.numerator, denominator_of(c, a, c.cutoff));
      ch.set_top(l);
      out["source"] = "closed-form";
      out["weyl_elements"] = terms.weyl_elements;
    } else if (c.kind == "oracle") {
      ch = oracle_character(c, a, l, !c.holes.empty());
      out["source"] = "oracle";
    } else {
      bad("unknown --kind " + c.kind);
    }
  };
  try {
    closed();
  } catch (const BkmError& e) {
    bool recoverable = e.kind() == ErrorKind::CaseNotCovered || e.kind() == ErrorKind::HypothesisFails ||
                       e.kind() == ErrorKind::NotDominant;
    if (!c.oracle_fallback || !recoverable) throw;
    out = json::object();
    ch = oracle_character(c, a, l, false);
    out["source"] = "oracle";
    out["fallback_reason"] = std::string(error_name(e.kind()));
  }
  ch.set_top(l);
  out["character"] = io::character_to_json(ch);

  if (c.report_sets && a.size() == 2) {
    // the two candidate supports of the numerator
    auto g = build_engine(c, a, c.cutoff);
    std::vector<RootSum> norm, linked;
    for (auto& b : root_sums_up_to(2, c.cutoff)) {
      if (b.is_zero()) continue;
      if (bilinear_residual(a, l, b) == 0) norm.push_back(b);
      if (kk_linked(*g, l, b, c.search_budget).linked) linked.push_back(b);
    }
    out["norm_solutions"] = io::rootsums_to_json(norm);
    out["kk_linked"] = io::rootsums_to_json(linked);
  }
  if (table) *table = ch;
  return with_provenance(out, a, c.cutoff);
}

json cmd_maxvec(const RunConfig& c) {
  CartanMatrix a = load_matrix(c);
  Weight l = load_lambda(c, a);
  RootSum b = load_beta(c, a.size());
  int cutoff = std::max(1, b.height());
  auto g = build_engine(c, a, cutoff);
  VermaModel vm(g, l);
  auto mv = maximal_vectors(vm, b);
  json basis = json::array();
  for (auto& v : mv.basis) basis.push_back(vec_to_json(v));
  json out{{"beta", io::rootsum_to_json(b)},
           {"dim", mv.dim},
           {"basis", basis},
           {"words", words_to_json(g->standard_words(b))},
           {"residual", io::rational_to_json(bilinear_residual(a, l, b))}};
  return with_provenance(out, a, cutoff);
}

json cmd_solve(const RunConfig& c) {
  CartanMatrix a = load_matrix(c);
  Weight l = load_lambda(c, a);
  auto inst = QuadraticInstance::from_matrix(a, l);
  std::optional<Box> box;
  if (!c.box.empty()) {
    json j = io::load_json_arg(c.box);
    if (!j.is_array() || j.size() != 2) bad("--box takes [x_max, y_max]");
    box = Box{j[0].get<long>(), j[1].get<long>()};
  }
  auto sol = enumerate_solutions_rank2(inst, box);
  json out{{"variant", quad_variant_name(inst.variant)},
           {"M", {inst.m1, inst.m2}},
           {"coefficients",
            {{"p", io::rational_to_json(inst.p)}, {"q", io::rational_to_json(inst.q)}, {"s", io::rational_to_json(inst.s)}}},
           {"solutions", io::points_to_json(sol.points)},
           {"box", {sol.box.x_max, sol.box.y_max}}};
  if (!sol.closed_form.empty()) out["closed_form"] = sol.closed_form;
  if (inst.variant == QuadVariant::N) {
    out["interior"] = io::points_to_json(interior_solutions(inst));
    if (inst.p == inst.q && inst.solves(2, 2)) {
      auto cl = classify_22(inst);
      out["classification"] = {{"tag", std::string(1, cl.tag)}, {"extras", io::points_to_json(cl.extras)}};
    }
  }
  return with_provenance(out, a, c.cutoff);
}

json cmd_dn(const RunConfig& c) {
  if (c.n < 1 || c.n > 8) bad("--n must lie in 1..8");
  auto sols = enumerate_dn(c.n, c.include_zero);
  json arr = json::array();
  for (auto& s : sols) arr.push_back({{"x", s.x}, {"blocks", s.blocks}, {"hole_solution", s.hole_solution}});
  return {{"n", c.n}, {"include_zero", c.include_zero}, {"count", sols.size()}, {"solutions", arr}};
}

json cmd_kk(const RunConfig& c, bool* exhausted) {
  CartanMatrix a = load_matrix(c);
  Weight l = load_lambda(c, a);
  RootSum b = load_beta(c, a.size());
  int cutoff = std::max(1, b.height());
  auto g = build_engine(c, a, cutoff);
  auto r = kk_linked(*g, l, b, c.search_budget);
  *exhausted = r.exhausted;
  json out = io::kk_to_json(r);
  out["beta"] = io::rootsum_to_json(b);
  return with_provenance(out, a, cutoff);
}

json cmd_unique(const RunConfig& c) {
  if (c.up_to > 0) {
    json arr = json::array();
    for (long x = 1; x <= c.up_to; ++x)
      for (long y = x; y <= c.up_to; ++y)
        if (unique_solution_predicate(x, y)) arr.push_back({x, y});
    return {{"up_to", c.up_to}, {"unique", arr}};
  }
  if (c.m1 < 1 || c.m2 < 1) bad("--m1 and --m2 must be positive (or use --up-to)");
  return {{"M", {c.m1, c.m2}},
          {"unique", unique_solution_predicate(c.m1, c.m2)},
          {"bruteforce", unique_solution_bruteforce(c.m1, c.m2)}};
}

json cmd_verify(const RunConfig& c, bool* failed) {
  auto names = verify::bundle_names();
  if (std::find(names.begin(), names.end(), c.suite) == names.end()) bad("unknown suite " + c.suite);
  auto res = verify::run_bundle(c.suite);
  json arr = json::array();
  bool all = true;
  for (auto& x : res) {
    all = all && x.pass;
    arr.push_back({{"name", x.name}, {"pass", x.pass}, {"detail", x.detail}});
  }
  *failed = !all || res.empty();
  return {{"suite", c.suite}, {"passed", !*failed}, {"assertions", arr}};
}

std::string render_table(const json& j) {
  std::ostringstream os;
  for (auto& [k, v] : j.items()) os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  return os.str();
}

std::string render_verify_table(const json& j) {
  std::ostringstream os;
  for (auto& a : j.at("assertions"))
    os << (a.at("pass").get<bool>() ? "PASS " : "FAIL ") << a.at("name").get<std::string>() << "  "
       << a.at("detail").get<std::string>() << "\n";
  os << (j.at("passed").get<bool>() ? "suite passed\n" : "suite FAILED\n");
  return os.str();
}

void add_global(CLI::App& app, RunConfig& c) {
  app.add_option("--matrix", c.matrix, "Cartan matrix: inline JSON or a file");
  app.add_option("--lambda", c.lambda, "weight: pairings array, {\"pairings\":..}, {\"powers\":..} or rho");
  app.add_option("--cutoff", c.cutoff, "height cutoff")->check(CLI::Range(1, 64));
  app.add_option("--cap", c.cap, "Heisenberg power cap (0 = cutoff)")->check(CLI::NonNegativeNumber);
  app.add_option("--format", c.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--budget-mb", c.budget_mb, "memory budget in MB")->check(CLI::PositiveNumber);
  app.add_flag("--oracle-fallback", c.oracle_fallback, "fall back to the oracle when no closed form applies");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"bkm: weights, characters and norm equations for BKM highest-weight modules", "bkm"};
  app.require_subcommand(1);
  add_global(app, c);

  auto* classify = app.add_subcommand("classify", "node types, symmetrizer and cone membership");
  auto* weights = app.add_subcommand("weights", "weight set of L(lambda) or of M(lambda, H)");
  weights->add_option("--holes", c.holes, "hole set JSON or file");
  auto* chr = app.add_subcommand("char", "formal character up to the cutoff");
  chr->add_option("--kind", c.kind, "verma, simple, thmD, wkb or oracle")
      ->check(CLI::IsMember({"verma", "simple", "thmD", "wkb", "oracle"}));
  chr->add_option("--holes", c.holes, "hole set (thmD, oracle)");
  chr->add_flag("--report-sets", c.report_sets, "rank 2: list norm-equation solutions and KK-linked grades");
  chr->add_option("--search-budget", c.search_budget, "KK search budget for --report-sets");
  auto* maxvec = app.add_subcommand("maxvec", "maximal vectors of M(lambda) at lambda - beta");
  maxvec->add_option("--beta", c.beta, "grade as an array")->required();
  auto* solve = app.add_subcommand("solve", "rank-2 norm equation");
  solve->add_option("--box", c.box, "[x_max, y_max] (needed for a Real second node)");
  auto* dn = app.add_subcommand("dn", "solutions of d^(n) = 0");
  dn->add_option("--n", c.n, "rank")->required();
  dn->add_flag("--include-zero", c.include_zero, "count the zero tuple");
  auto* kk = app.add_subcommand("kk", "Kac-Kazhdan linkage of lambda - beta to lambda");
  kk->add_option("--beta", c.beta, "grade as an array")->required();
  kk->add_option("--search-budget", c.search_budget, "chain search budget");
  auto* unique = app.add_subcommand("unique", "unique positive solution of X^2+Y^2-M1 X-M2 Y+XY = 0");
  unique->add_option("--m1", c.m1);
  unique->add_option("--m2", c.m2);
  unique->add_option("--up-to", c.up_to, "list all unique pairs M1 <= M2 <= N");
  auto* verify = app.add_subcommand("verify", "run an acceptance bundle");
  verify->add_option("suite", c.suite, "bundle name")->required();
  for (auto* sc : app.get_subcommands({})) sc->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(std::move(rev));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    out << io::dump({{"error", {{"kind", "InvalidInput"}, {"detail", e.what()}}}});
    return kInputError;
  }

  try {
    json result;
    int code = kOk;
    FormalCharacter table;
    bool have_table = false;
    bool is_verify = false;
    if (*classify) {
      result = cmd_classify(c);
    } else if (*weights) {
      result = cmd_weights(c);
    } else if (*chr) {
      result = cmd_char(c, &table);
      have_table = true;
    } else if (*maxvec) {
      result = cmd_maxvec(c);
    } else if (*solve) {
      result = cmd_solve(c);
    } else if (*dn) {
      result = cmd_dn(c);
    } else if (*kk) {
      bool exhausted = false;
      result = cmd_kk(c, &exhausted);
      if (exhausted) code = kBudget;
    } else if (*unique) {
      result = cmd_unique(c);
    } else if (*verify) {
      bool failed = false;
      result = cmd_verify(c, &failed);
      is_verify = true;
      if (failed) code = kVerifyFailed;
    }
    if (c.format == "table")
      out << (have_table ? io::character_table(table) : is_verify ? render_verify_table(result) : render_table(result));
    else
      out << io::dump(result);
    return code;
  } catch (const BkmError& e) {
    err << e.what() << "\n";
    out << io::dump({{"error", {{"kind", error_name(e.kind())}, {"detail", e.detail()}}}});
    return e.kind() == ErrorKind::CutoffTooLargeForBudget ? kBudget : kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << e.what() << "\n";
    out << io::dump({{"error", {{"kind", "InvalidInput"}, {"detail", e.what()}}}});
    return kInputError;
  }
}

}  // namespace bkm::cli
