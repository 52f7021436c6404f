// cubefree: command-line front end. Every run prints one JSON report on stdout.
//   exit 0  ok
//   exit 1  a checked statement failed (counterexample)
//   exit 2  usage error or budget exceeded

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cubefree/cubefree.hpp"
#include "cubefree/serialize.hpp"

namespace {

using namespace cubefree;

enum class Status { kOk, kCounterexample, kBudgetExceeded, kUsageError };

const char* status_name(Status s) {
  switch (s) {
    case Status::kOk:
      return "ok";
    case Status::kCounterexample:
      return "counterexample";
    case Status::kBudgetExceeded:
      return "budget_exceeded";
    case Status::kUsageError:
      return "usage_error";
  }
  return "?";
}

int exit_code(Status s) {
  switch (s) {
    case Status::kOk:
      return 0;
    case Status::kCounterexample:
      return 1;
    default:
      return 2;
  }
}

struct Outcome {
  Json result = Json::object();
  Status status = Status::kOk;
};

struct Args {
  unsigned n = 0;
  std::uint64_t d = 0;
  std::string set;
  std::string pattern = "any";
  unsigned ell = 1;
  bool recursive = false;
  std::uint64_t m = 0;
  bool symmetry = false;
  std::optional<std::uint64_t> budget;
  std::string mode = "exact";
  std::string patterns = "all";
  std::optional<std::uint64_t> target;
  std::string out;
  std::string solution;
  std::string lemma = "keylemma";
  unsigned k = 1;
  std::size_t x = 0;
  std::string level = "smoke";
  std::uint64_t seed = ClaimOptions{}.seed;
  std::string fault;
  std::vector<int> only;
};

std::uint64_t resolve_budget(const Args& a, std::uint64_t fallback) {
  return a.budget ? *a.budget : budget_from_env(fallback);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ArgumentError("cannot write " + path);
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ArgumentError("cannot read " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Outcome cmd_construct(const Args& a) {
  const GroupContext ctx(a.n);
  Outcome o;
  const ResidueSet c = a.recursive ? construct_cd_recursive(a.d, ctx) : construct_cd(a.d, ctx);
  std::vector<unsigned> layers;
  const std::uint64_t mask = cd_layer_mask(a.d);
  for (unsigned i = 1; i <= 64; ++i)
    if ((mask >> (i - 1)) & 1U) layers.push_back(i);
  o.result["d"] = a.d;
  o.result["n"] = a.n;
  o.result["block_vector"] = a.d >= 2 ? Json(block_vector(a.d).lengths) : Json::array();
  o.result["layers"] = layers;
  o.result["size"] = c.size();
  o.result["set"] = to_json(c);
  return o;
}

Outcome cmd_find_cube(const Args& a) {
  const GroupContext ctx(a.n);
  const ResidueSet s = parse_set_argument(ctx, a.set);
  Outcome o;
  std::optional<CubeWitness> w;
  if (a.pattern == "any") {
    w = find_d_cube(s, a.d);
  } else if (a.pattern == "conc2") {
    w = find_conc2_pattern(s);
  } else if (a.pattern == "homogeneous") {
    if (auto h = find_homogeneous_cube(s, a.ell)) w = make_witness(h->generators(ctx), s);
  } else if (a.pattern == "run") {
    const auto x = find_multiple_run(s, a.d);
    o.result["found"] = x.has_value();
    if (x) o.result["x"] = *x;
    return o;
  }
  o.result["found"] = w.has_value();
  if (w) o.result["witness"] = to_json(*w);
  return o;
}

Outcome cmd_count_st(const Args& a) {
  const GroupContext ctx(a.n);
  const ResidueSet s = parse_set_argument(ctx, a.set);
  const LayerProfile p = layer_profile(s);
  Outcome o;
  o.result["st"] = count_schur_triples(s);
  o.result["f_lower_bound"] = schur_lower_bound(p, ctx);
  o.result["layer_sizes"] = p.sizes;
  const TriplesByLayer t = count_triples_by_layer(s);
  o.result["by_layer"] = {{"same_same_above", t.same_same_above},
                          {"same_above_same", t.same_above_same},
                          {"above_same_same", t.above_same_same},
                          {"unclassified", t.unclassified}};
  return o;
}

Outcome cmd_min_schur(const Args& a) {
  const GroupContext ctx(a.n);
  SearchOptions opts;
  opts.symmetry = a.symmetry;
  opts.budget = resolve_budget(a, kDefaultSearchBudget);
  Outcome o;
  o.result = to_json(min_schur_exhaustive(ctx, a.m, opts));
  return o;
}

Outcome cmd_max_search(const Args& a) {
  const GroupContext ctx(a.n);
  SearchOptions opts;
  opts.symmetry = a.symmetry;
  opts.budget = resolve_budget(a, kDefaultSearchBudget);
  Outcome o;
  if (a.mode == "exact") {
    o.result = to_json(max_cube_free_exact(ctx, a.d, opts));
  } else if (a.mode == "exhaustive") {
    o.result = to_json(max_cube_free_exhaustive(ctx, a.d));
  } else if (a.mode == "layers") {
    o.result = to_json(max_cube_free_layer_unions(ctx, a.d));
  } else {
    const CubePatterns patterns = a.patterns == "conc2" ? CubePatterns::kConc2 : CubePatterns::kAll;
    const CoverModel model = build_cover_model(ctx, a.d, patterns, opts.budget);
    o.result["constraints"] = model.cubes.size();
    o.result["patterns"] = a.patterns;
    if (!a.solution.empty()) {
      const SolutionCheck check = validate_solution(model, read_file(a.solution));
      o.result["solution"] = {{"feasible", check.feasible},
                              {"objective", check.objective},
                              {"set", to_json(check.chosen)},
                              {"violated", check.violated.size()},
                              {"problems", check.problems}};
      return o;
    }
    std::string text;
    if (a.mode == "lp") {
      text = export_lp(model);
    } else {
      if (!a.target) throw ArgumentError("--mode cnf needs --target");
      text = export_cnf(model, *a.target);
      o.result["target"] = *a.target;
    }
    if (a.out.empty()) {
      o.result["model"] = text;
    } else {
      write_file(a.out, text);
      o.result["model_file"] = a.out;
    }
  }
  return o;
}

Outcome cmd_verify_lemma(const Args& a) {
  Outcome o;
  const std::uint64_t budget = resolve_budget(a, kDefaultKeylemmaBudget);
  if (a.lemma == "keylemma") {
    if (!a.set.empty()) {
      const Json values = list_argument(a.set);
      std::vector<std::int64_t> xs = values.get<std::vector<std::int64_t>>();
      const auto outcome = keylemma_check_integers(a.k, xs);
      o.result["outcome"] = outcome == KeylemmaOutcome::kHalfSum         ? "half_sum"
                            : outcome == KeylemmaOutcome::kDisjointZeros ? "disjoint_zeros"
                                                                         : "counterexample";
      if (outcome == KeylemmaOutcome::kCounterexample) o.status = Status::kCounterexample;
      return o;
    }
    const KeylemmaReport r = keylemma_verify_all(a.k, a.x, budget);
    o.result = to_json(r);
    if (r.counterexample_count > 0) o.status = Status::kCounterexample;
  } else if (a.lemma == "alon-freiman") {
    const AlonFreimanReport r = alon_freiman_verify_all(a.k, budget);
    o.result = {{"k", r.k}, {"space_size", r.space_size}, {"checked", r.checked}, {"failures", r.failures}};
    if (!r.failures.empty()) o.status = Status::kCounterexample;
  } else if (a.lemma == "disjoint-zero") {
    const Json values = list_argument(a.set);
    const ResidueCollection c(a.k, values.get<std::vector<Residue>>());
    const auto cert = disjoint_zero_sets(c, a.x + 1);
    o.result["found"] = cert.has_value();
    if (cert) o.result["parts"] = cert->parts;
    o.result["max_parts"] = max_disjoint_zero_sets(c);
  }
  return o;
}

Outcome cmd_verify_claims(const Args& a) {
  ClaimOptions opts;
  opts.level = a.level == "desk" ? ClaimLevel::kDesk : ClaimLevel::kSmoke;
  opts.seed = a.seed;
  opts.fault = a.fault == "construct_cd" ? Fault::kConstructCd : Fault::kNone;
  Outcome o;
  Json checks = Json::array();
  std::vector<std::string> failed;
  for (int id : a.only.empty() ? claim_ids() : a.only) {
    const ClaimResult r = run_claim(id, opts);
    std::cerr << (r.passed ? "PASS " : "FAIL ") << r.id << " " << r.name << " (" << r.elapsed_ms << " ms)\n";
    checks.push_back({{"id", r.id},
                      {"name", r.name},
                      {"statement", r.statement},
                      {"passed", r.passed},
                      {"instances", r.instances},
                      {"detail", r.detail},
                      {"counterexample", r.counterexample},
                      {"elapsed_ms", r.elapsed_ms}});
    if (!r.passed) failed.push_back(r.name + (r.counterexample.empty() ? "" : ": " + r.counterexample));
  }
  o.result["level"] = a.level;
  o.result["checks"] = checks;
  o.result["failed"] = failed;
  if (!failed.empty()) o.status = Status::kCounterexample;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Search and verification tools for projective-cube-free subsets of Z_{2^n}"};
  app.require_subcommand(1);
  Args a;
  auto add_n = [&](CLI::App* c) { c->add_option("--n", a.n, "group exponent: work in Z_{2^n}")->required(); };
  auto add_budget = [&](CLI::App* c) {
    c->add_option("--budget", a.budget, "node/subset budget (overrides CUBEFREE_BUDGET)");
  };

  auto* construct = app.add_subcommand("construct", "build C_d");
  construct->add_option("--d", a.d, "cube dimension")->required();
  add_n(construct);
  construct->add_flag("--recursive", a.recursive, "use the recursive definition");

  auto* find = app.add_subcommand("find-cube", "find a projective d-cube inside a set");
  find->add_option("--set", a.set, "comma list or JSON array file")->required();
  add_n(find);
  find->add_option("--d", a.d, "cube dimension (run length for --pattern run)");
  find->add_option("--pattern", a.pattern, "any|homogeneous|conc2|run")
      ->check(CLI::IsMember({"any", "homogeneous", "conc2", "run"}));
  find->add_option("--ell", a.ell, "2^ell - 1 copies of x for --pattern homogeneous");

  auto* count = app.add_subcommand("count-st", "count Schur triples");
  count->add_option("--set", a.set, "comma list or JSON array file")->required();
  add_n(count);

  auto* schur = app.add_subcommand("min-schur", "minimum Schur triples over sets of a given size");
  add_n(schur);
  schur->add_option("--m", a.m, "set size")->required();
  schur->add_flag("--symmetry", a.symmetry, "only visit sets containing 1 (or no odd residue)");
  add_budget(schur);

  auto* search = app.add_subcommand("max-search", "largest d-cube-free set, or export a solver model");
  add_n(search);
  search->add_option("--d", a.d, "cube dimension")->required();
  search->add_option("--mode", a.mode, "exact|exhaustive|layers|lp|cnf")
      ->check(CLI::IsMember({"exact", "exhaustive", "layers", "lp", "cnf"}));
  search->add_option("--target", a.target, "cnf: ask for a set of at least this size");
  search->add_option("--patterns", a.patterns, "lp/cnf cube sets: all|conc2")->check(CLI::IsMember({"all", "conc2"}));
  search->add_option("--out", a.out, "write the model here instead of into the report");
  search->add_option("--solution", a.solution, "check a solver's variable assignment against the model");
  search->add_flag("--symmetry", a.symmetry, "odd-unit symmetry reduction");
  add_budget(search);

  auto* lemma = app.add_subcommand("verify-lemma", "exhaustive zero-sum checks");
  lemma->add_option("--lemma", a.lemma, "keylemma|alon-freiman|disjoint-zero")
      ->check(CLI::IsMember({"keylemma", "alon-freiman", "disjoint-zero"}));
  lemma->add_option("--k", a.k, "residues modulo 2^(k+1)");
  lemma->add_option("--x", a.x, "2^k + x residues (keylemma); x + 1 parts (disjoint-zero)");
  lemma->add_option("--set", a.set, "single instance: comma list or JSON array file");
  add_budget(lemma);

  auto* claims = app.add_subcommand("verify-claims", "run the acceptance checks");
  claims->add_option("--level", a.level, "smoke|desk")->check(CLI::IsMember({"smoke", "desk"}));
  claims->add_option("--seed", a.seed, "seed for the randomized checks");
  claims->add_option("--inject-fault", a.fault, "deliberately break a component (construct_cd)")
      ->check(CLI::IsMember({"construct_cd"}));
  claims->add_option("--only", a.only, "run only these check ids");

  const auto start = std::chrono::steady_clock::now();
  Json report;
  Status status = Status::kOk;
  std::string command = "?";
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    report = {{"command", argc > 1 ? argv[1] : ""}, {"status", status_name(Status::kUsageError)}, {"error", e.what()}};
    std::cout << report.dump(2) << "\n";
    return exit_code(Status::kUsageError);
  }
  CLI::App* sub = app.get_subcommands().front();
  command = sub->get_name();
  Json params = Json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_name() == "--help" || opt->count() == 0) continue;
    const auto results = opt->results();
    params[opt->get_name().substr(2)] = results.size() == 1 ? Json(results.front()) : Json(results);
  }
  Outcome outcome;
  try {
    if (command == "construct") outcome = cmd_construct(a);
    else if (command == "find-cube") outcome = cmd_find_cube(a);
    else if (command == "count-st") outcome = cmd_count_st(a);
    else if (command == "min-schur") outcome = cmd_min_schur(a);
    else if (command == "max-search") outcome = cmd_max_search(a);
    else if (command == "verify-lemma") outcome = cmd_verify_lemma(a);
    else outcome = cmd_verify_claims(a);
    status = outcome.status;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    status = Status::kBudgetExceeded;
    outcome.result = {{"error", e.what()}, {"required", e.required()}, {"budget", e.budget()}};
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    status = Status::kUsageError;
    outcome.result = {{"error", e.what()}};
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  report = {{"command", command},
            {"parameters", params},
            {"result", outcome.result},
            {"status", status_name(status)},
            {"elapsed_ms", ms}};
  std::cout << report.dump(2) << "\n";
  return exit_code(status);
}
