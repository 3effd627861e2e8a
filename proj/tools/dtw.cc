// Command-line front end. Exit codes: 0 = holds / accepted / nothing found,
// 1 = fails / rejected / counterexample found, 2 = error.

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dtw/error.h"
#include "dtw/expand.h"
#include "dtw/game.h"
#include "dtw/json.h"
#include "dtw/lemmas.h"
#include "dtw/minimality.h"
#include "dtw/proof.h"
#include "dtw/proof_format.h"
#include "dtw/search.h"
#include "dtw/semantics.h"
#include "dtw/syntax.h"

namespace fs = std::filesystem;

namespace dtw {
namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

// DTW_BUDGET overrides every resource budget when set.
std::optional<std::uint64_t> env_budget() {
  const char* raw = std::getenv("DTW_BUDGET");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  std::uint64_t value = 0;
  std::string_view text(raw);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    throw BadParams("DTW_BUDGET must be a positive integer");
  }
  return value;
}

std::uint64_t budget_or(std::uint64_t dflt) {
  return env_budget().value_or(dflt);
}

Game open_game(const std::string& path) {
  return load_game(read_file(path), budget_or(kDefaultSerialityBudget));
}

// "[a,b]", "a,b", "a" or "" (empty coalition).
Coalition coalition_arg(const std::string& text) {
  std::string_view t(text);
  while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
  if (!t.empty() && t.front() == '[') return parse_coalition(t);
  return parse_coalition("[" + text + "]");
}

void warn_unknown(const Game& g, const Formula& f) {
  for (const auto& p : unknown_propositions(g, f)) {
    std::cerr << "warning: proposition '" << p
              << "' has no valuation; treated as false\n";
  }
}

struct Common {
  bool json = false;
  unsigned workers = 1;
};

void add_common(CLI::App* cmd, Common& c, bool workers) {
  cmd->add_flag("--json", c.json, "Machine-readable output");
  if (workers) {
    cmd->add_option("--workers", c.workers, "Worker threads")
        ->check(CLI::Range(1u, 256u));
  }
}

struct Bounds {
  int max_agents = 2;
  int max_states = 2;
  int max_actions = 2;
  int max_outcomes = 2;
  int max_props = 1;
  std::optional<std::uint64_t> seed;
  std::size_t iters = 1000;
  std::size_t games = 200;
  bool random = false;
  bool exhaustive = false;
  std::optional<std::uint64_t> budget;
};

void add_bounds(CLI::App* cmd, Bounds& b) {
  cmd->add_option("--max-agents", b.max_agents, "Agents per game")
      ->capture_default_str();
  cmd->add_option("--max-states", b.max_states, "Initial states per game")
      ->capture_default_str();
  cmd->add_option("--max-actions", b.max_actions, "Actions per agent")
      ->capture_default_str();
  cmd->add_option("--max-outcomes", b.max_outcomes,
                  "Outcomes per state and profile")
      ->capture_default_str();
  cmd->add_option("--max-props", b.max_props, "Propositions")
      ->capture_default_str();
  cmd->add_option("--seed", b.seed, "Random seed");
  cmd->add_option("--budget", b.budget, "Maximum games to enumerate");
}

SearchBounds to_search_bounds(const Bounds& b, const Common& c) {
  SearchBounds s;
  s.max_agents = b.max_agents;
  s.max_initial = b.max_states;
  s.max_actions = b.max_actions;
  s.max_outcomes = b.max_outcomes;
  s.max_props = b.max_props;
  s.mode = b.random ? SearchBounds::Mode::kRandom
                    : SearchBounds::Mode::kExhaustive;
  s.seed = b.seed.value_or(0);
  s.iterations = b.iters;
  s.games = b.games;
  s.budget = b.budget.value_or(budget_or(kDefaultSearchBudget));
  s.workers = c.workers;
  return s;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

// --- check ---------------------------------------------------------------

struct CheckArgs {
  Common common;
  std::string game, play, formula;
};

int run_check(const CheckArgs& a) {
  Game g = open_game(a.game);
  std::size_t play = g.find_play(a.play);
  Formula f = parse_formula(a.formula);
  warn_unknown(g, f);
  Verdict v = holds(g, play, f);
  if (a.common.json) {
    print_json(verdict_to_json(v, g));
  } else {
    std::cout << (v.holds ? "holds" : "does not hold") << "\n";
    if (v.witness) std::cout << "witness: " << v.witness->to_string() << "\n";
    if (v.refutation) {
      std::cout << "refutation: play " << *v.refutation + 1 << " ("
                << g.describe(*v.refutation) << ")\n";
    }
  }
  return v.holds ? kExitTrue : kExitFalse;
}

// --- valid ---------------------------------------------------------------

struct ValidArgs {
  Common common;
  std::string game, formula;
};

int run_valid(const ValidArgs& a) {
  Game g = open_game(a.game);
  Formula f = parse_formula(a.formula);
  warn_unknown(g, f);
  Verdict v = valid_in_game(g, f);
  if (a.common.json) {
    print_json(verdict_to_json(v, g));
  } else {
    std::cout << (v.holds ? "valid" : "not valid") << "\n";
    if (v.refutation) {
      std::cout << "refutation: play " << *v.refutation + 1 << " ("
                << g.describe(*v.refutation) << ")\n";
    }
  }
  return v.holds ? kExitTrue : kExitFalse;
}

// --- countermodel ----------------------------------------------------------

struct CountermodelArgs {
  Common common;
  Bounds bounds;
  std::string formula;
};

int run_countermodel(const CountermodelArgs& a) {
  if (a.bounds.random && !a.bounds.seed) {
    throw BadParams("--random requires --seed");
  }
  Formula f = parse_formula(a.formula);
  auto found = countermodel_search(f, to_search_bounds(a.bounds, a.common));
  if (a.common.json) {
    print_json(countermodel_to_json(found));
  } else if (!found) {
    std::cout << "no countermodel within bounds\n";
  } else {
    std::cout << "countermodel found (search index " << found->index << ")\n"
              << render_game(found->game.data()) << "play " << found->play + 1
              << ": " << found->game.describe(found->play) << "\n";
  }
  return found ? kExitFalse : kExitTrue;
}

// --- prove -----------------------------------------------------------------

struct ProveArgs {
  Common common;
  std::string script;
  std::optional<std::string> library;
};

// Checks every script in `dir` (file-name order), repeating while new
// theorems unlock citations. Scripts that never check are ignored.
ProofLibrary load_library(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".prf") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<ProofScript> pending;
  for (const auto& f : files) pending.push_back(parse_proof_script(read_file(f)));
  ProofLibrary lib;
  for (bool progress = true; progress;) {
    progress = false;
    std::vector<ProofScript> left;
    for (auto& s : pending) {
      if (check_and_register(s, lib).accepted) {
        progress = true;
      } else {
        left.push_back(std::move(s));
      }
    }
    pending = std::move(left);
  }
  return lib;
}

int run_prove(const ProveArgs& a) {
  ProofScript s = parse_proof_script(read_file(a.script));
  ProofLibrary lib = a.library ? load_library(*a.library) : ProofLibrary{};
  ProofCheck c = check_proof(s, lib);
  if (a.common.json) {
    print_json(proof_check_to_json(c, s.lines.size()));
  } else if (c.accepted) {
    std::cout << "accepted (" << s.lines.size() << " lines)\n";
  } else {
    std::cout << "rejected";
    if (c.line) std::cout << " at line " << *c.line + 1;
    std::cout << ": " << reason_code(c.reason) << ": " << c.message << "\n";
  }
  return c.accepted ? kExitTrue : kExitFalse;
}

// --- fuzz ------------------------------------------------------------------

struct FuzzArgs {
  Common common;
  Bounds bounds;
  std::string schema;
};

std::vector<Schema> schemas_named(const std::string& name) {
  if (name == "Truth") return {Schema::kTruthK, Schema::kTruthB};
  if (name == "Monotonicity") {
    return {Schema::kMonotonicityK, Schema::kMonotonicityB};
  }
  if (name == "axioms") return {kAxioms.begin(), kAxioms.end()};
  if (auto s = schema_from_name(name)) return {*s};
  std::string known = "Truth, Monotonicity, axioms";
  for (Schema s : kAllSchemas) known += ", " + std::string(schema_name(s));
  throw BadParams("unknown schema '" + name + "'; known: " + known);
}

int run_fuzz(const FuzzArgs& a) {
  if (!a.bounds.seed) throw BadParams("fuzz requires --seed");
  SearchBounds bounds = to_search_bounds(a.bounds, a.common);
  bounds.mode = a.bounds.exhaustive ? SearchBounds::Mode::kExhaustive
                                    : SearchBounds::Mode::kRandom;
  bool any = false;
  Json all = Json::array();
  for (Schema s : schemas_named(a.schema)) {
    auto found = soundness_fuzz(s, bounds);
    any = any || found.has_value();
    if (a.common.json) {
      all.push_back(fuzz_to_json(s, found));
    } else if (!found) {
      std::cout << schema_name(s) << ": no counterexample\n";
    } else {
      std::cout << schema_name(s) << ": counterexample (index " << found->index
                << ")\ninstance: " << render(found->instance) << "\n"
                << render_game(found->game.data()) << "play "
                << found->play + 1 << ": " << found->game.describe(found->play)
                << "\n";
    }
  }
  if (a.common.json) print_json(all);
  return any ? kExitFalse : kExitTrue;
}

// --- minimal ---------------------------------------------------------------

struct MinimalArgs {
  Common common;
  int kind = 1;
  std::string game, play, formula, knowers;
  std::optional<std::string> actors;
};

int run_minimal(const MinimalArgs& a) {
  Game g = open_game(a.game);
  std::size_t play = g.find_play(a.play);
  Formula f = parse_formula(a.formula);
  warn_unknown(g, f);
  std::optional<Coalition> actors;
  if (a.actors) actors = coalition_arg(*a.actors);
  MinimalVerdict v =
      check_minimal_verdict(a.kind, g, play, coalition_arg(a.knowers), actors,
                            f, budget_or(kDefaultMinimalityBudget));
  if (a.common.json) {
    print_json(Json{{"kind", a.kind},
                    {"holds", v.holds},
                    {"actors", v.actors ? Json(v.actors->members())
                                        : Json(nullptr)}});
  } else {
    std::cout << (v.holds ? "holds" : "does not hold") << "\n";
    if (v.actors) std::cout << "actors: " << v.actors->to_string() << "\n";
  }
  return v.holds ? kExitTrue : kExitFalse;
}

// --- expand ----------------------------------------------------------------

struct ExpandArgs {
  Common common;
  int kind = 1;
  std::string formula, knowers, universe;
  std::optional<std::string> actors;
};

int run_expand(const ExpandArgs& a) {
  std::optional<Coalition> actors;
  if (a.actors) actors = coalition_arg(*a.actors);
  Formula f = expand_minimality(a.kind, coalition_arg(a.knowers), actors,
                                parse_formula(a.formula),
                                coalition_arg(a.universe),
                                budget_or(kDefaultNodeBudget));
  if (a.common.json) {
    print_json(Json{{"formula", render(f)}, {"nodes", f.size()}});
  } else {
    std::cout << render(f) << "\n";
  }
  return kExitTrue;
}

// --- example ---------------------------------------------------------------

struct ExampleArgs {
  Common common;
  std::string name = "tarasoff";
  std::string out = ".";
};

int run_example(const ExampleArgs& a) {
  if (a.name != "tarasoff") {
    throw BadParams("unknown example '" + a.name + "'; known: tarasoff");
  }
  fs::create_directories(a.out);
  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& text) {
    write_file(fs::path(a.out) / name, text);
    written.push_back(name);
  };
  emit("tarasoff.game", std::string(tarasoff_text()));
  emit("tarasoff2.game", std::string(tarasoff2_text()));
  for (const auto& b : bundled_scripts()) {
    emit(b.file_name, render_proof_script(b.script));
  }
  if (a.common.json) {
    print_json(Json{{"directory", a.out}, {"files", written}});
  } else {
    for (const auto& w : written) std::cout << (fs::path(a.out) / w).string() << "\n";
  }
  return kExitTrue;
}

int main_impl(int argc, char** argv) {
  CLI::App app{"Model checker and proof checker for distributed knowledge and "
               "blameworthiness"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Evaluate a formula at one play");
  c->add_option("game", check.game, "Game file")->required();
  c->add_option("play", check.play, "\"<initial> | a=x,b=y | <outcome>\"")
      ->required();
  c->add_option("formula", check.formula, "Formula")->required();
  add_common(c, check.common, false);

  ValidArgs valid;
  auto* v = app.add_subcommand("valid", "Check a formula at every play");
  v->add_option("game", valid.game, "Game file")->required();
  v->add_option("formula", valid.formula, "Formula")->required();
  add_common(v, valid.common, false);

  CountermodelArgs cm;
  auto* m = app.add_subcommand("countermodel",
                               "Search small games for a falsifying play");
  m->add_option("formula", cm.formula, "Formula")->required();
  add_bounds(m, cm.bounds);
  m->add_flag("--random", cm.bounds.random,
              "Sample --iters games instead of enumerating");
  m->add_option("--iters", cm.bounds.iters, "Sampled games in --random mode")
      ->capture_default_str();
  add_common(m, cm.common, true);

  ProveArgs prove;
  auto* p = app.add_subcommand("prove", "Check a proof script");
  p->add_option("script", prove.script, "Proof script")->required();
  p->add_option("--library", prove.library,
                "Directory of scripts whose theorems may be cited");
  add_common(p, prove.common, false);

  FuzzArgs fuzz;
  fuzz.bounds.max_agents = 3;
  fuzz.bounds.max_states = 3;
  fuzz.bounds.max_props = 3;
  auto* z = app.add_subcommand(
      "fuzz", "Check random instances of an axiom schema on small games");
  z->add_option("schema", fuzz.schema,
                "Schema name, or Truth / Monotonicity / axioms")
      ->required();
  add_bounds(z, fuzz.bounds);
  z->add_option("--iters", fuzz.bounds.iters, "Instances per game")
      ->capture_default_str();
  z->add_option("--games", fuzz.bounds.games, "Sampled games")
      ->capture_default_str();
  z->add_flag("--exhaustive", fuzz.bounds.exhaustive,
              "Enumerate every game within bounds instead of sampling");
  add_common(z, fuzz.common, true);

  MinimalArgs minimal;
  auto* n = app.add_subcommand("minimal", "Check a minimal-blame notion");
  n->add_option("kind", minimal.kind, "1, 2, 3 or 4")
      ->required()
      ->check(CLI::Range(1, 4));
  n->add_option("game", minimal.game, "Game file")->required();
  n->add_option("play", minimal.play, "Play")->required();
  n->add_option("formula", minimal.formula, "Formula")->required();
  n->add_option("-C,--knowers", minimal.knowers, "Knowing coalition")
      ->required();
  n->add_option("-D,--actors", minimal.actors,
                "Acting coalition (not for kind 4)");
  add_common(n, minimal.common, false);

  ExpandArgs expand;
  auto* e = app.add_subcommand("expand",
                               "Write out a minimal-blame notion as a formula");
  e->add_option("kind", expand.kind, "1, 2, 3 or 4")
      ->required()
      ->check(CLI::Range(1, 4));
  e->add_option("formula", expand.formula, "Formula")->required();
  e->add_option("-C,--knowers", expand.knowers, "Knowing coalition")
      ->required();
  e->add_option("-D,--actors", expand.actors,
                "Acting coalition (not for kind 4)");
  e->add_option("-U,--universe", expand.universe, "All agents")->required();
  add_common(e, expand.common, false);

  ExampleArgs example;
  auto* x = app.add_subcommand("example", "Write the bundled example files");
  x->add_option("name", example.name, "Example name")->capture_default_str();
  x->add_option("--out", example.out, "Output directory")
      ->capture_default_str();
  add_common(x, example.common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  const bool json = check.common.json || valid.common.json ||
                    cm.common.json || prove.common.json || fuzz.common.json ||
                    minimal.common.json || expand.common.json ||
                    example.common.json;
  try {
    if (*c) return run_check(check);
    if (*v) return run_valid(valid);
    if (*m) return run_countermodel(cm);
    if (*p) return run_prove(prove);
    if (*z) return run_fuzz(fuzz);
    if (*n) return run_minimal(minimal);
    if (*e) return run_expand(expand);
    if (*x) return run_example(example);
  } catch (const SyntaxError& err) {
    std::cerr << "error: syntax: " << err.what() << "\n";
    if (json) {
      print_json(Json{{"error", err.what()}, {"position", err.position()}});
    }
    return kExitError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    if (json) print_json(Json{{"error", err.what()}});
    return kExitError;
  }
  return kExitError;
}

}  // namespace
}  // namespace dtw

int main(int argc, char** argv) { return dtw::main_impl(argc, argv); }
