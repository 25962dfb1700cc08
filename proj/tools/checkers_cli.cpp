// Copyright 2026 The checkers-lambda Authors.
// SPDX-License-Identifier: Apache-2.0

// Command-line front end over the C interface.

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <json.hpp>
#include <memory>
#include <string>

#include "checkers.h"

namespace {

struct Globals {
  uint64_t fuel = checkers_default_fuel();
  size_t depth = checkers_default_bohm_options().depth;
  uint64_t seed = 1;
  bool json = false;
  bool detect_loops = false;
  bool assume_divergence = false;
};

using TermPtr = std::unique_ptr<checkers_term, void (*)(checkers_term*)>;

// Statuses map to exit codes 0-4; bad arguments and internal errors are
// reported as usage errors.
int exit_code(checkers_status s) {
  return s <= CHECKERS_ERR_PROPERTY ? static_cast<int>(s) : 1;
}

int fail(checkers_status s) {
  std::cerr << "error: " << checkers_last_error() << "\n";
  return exit_code(s);
}

// An argument naming a file (or "-" for stdin) is read from it; anything
// else is term text.
std::string source_text(const std::string& arg) {
  if (arg == "-")
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(arg);
  if (!in) return arg;
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// With lift set to "b" or "w" the text is read as an ordinary term and
// tagged; otherwise it is read as kind. Null on error, already reported.
TermPtr read_term(const std::string& arg, checkers_kind kind, int& code,
                  const std::string& lift = "") {
  TermPtr none(nullptr, checkers_term_free);
  checkers_term* t = nullptr;
  checkers_status s = checkers_term_parse(
      source_text(arg).c_str(), lift.empty() ? kind : CHECKERS_ORDINARY, &t);
  if (s != CHECKERS_OK) {
    code = fail(s);
    return none;
  }
  TermPtr p(t, checkers_term_free);
  if (lift.empty()) return p;
  checkers_term* l = nullptr;
  s = checkers_term_lift(t, lift == "w" ? CHECKERS_WHITE : CHECKERS_BLACK, &l);
  if (s != CHECKERS_OK) {
    code = fail(s);
    return none;
  }
  return TermPtr(l, checkers_term_free);
}

// Runs one API call and prints its document: the JSON itself with --json,
// the "text" member otherwise.
int emit(const Globals& g, const std::function<checkers_status(char**)>& call) {
  char* out = nullptr;
  checkers_status s = call(&out);
  if (!out) return fail(s);
  if (g.json) {
    std::cout << out << "\n";
  } else {
    std::cout << nlohmann::json::parse(out).at("text").get<std::string>()
              << "\n";
  }
  checkers_free(out);
  return exit_code(s);
}

checkers_bohm_options bohm_options(const Globals& g) {
  checkers_bohm_options o = checkers_default_bohm_options();
  o.depth = g.depth;
  o.fuel = g.fuel;
  o.detect_loops = g.detect_loops;
  o.assume_divergence = g.assume_divergence;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"checkers: head reduction, Böhm trees, separation and multi "
               "types for the checkers lambda-calculus"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--fuel", g.fuel,
                 "head steps per evaluation (default 10000 or $CHECKERS_FUEL)");
  app.add_option("--depth", g.depth, "Böhm-tree levels explored");
  app.add_option("--seed", g.seed, "first seed for suite");
  app.add_flag("--json", g.json, "print the JSON result");
  app.add_flag("--detect-loops", g.detect_loops,
               "treat a repeated evaluation state as divergence");
  app.add_flag("--assume-divergence", g.assume_divergence,
               "treat fuel exhaustion as divergence in Böhm checks");

  int code = 0;
  std::string t_arg, u_arg, lift, mode;
  auto lift_opt = [&](CLI::App* c) {
    c->add_option("--lift", lift,
                  "read an ordinary term and tag it with this player")
        ->check(CLI::IsMember({"b", "w"}));
  };

  bool as_checkers = false;
  auto* parse = app.add_subcommand("parse", "parse and print a term");
  parse->add_option("term", t_arg, "term text or file")->required();
  parse->add_flag("--checkers", as_checkers, "read a checkers term");
  parse->callback([&] {
    TermPtr t = read_term(
        t_arg, as_checkers ? CHECKERS_TAGGED : CHECKERS_ORDINARY, code);
    if (!t) return;
    code = emit(g, [&](char** o) { return checkers_term_describe(t.get(), o); });
  });

  bool trace = false;
  auto* reduce = app.add_subcommand("reduce", "head-reduce a checkers term");
  reduce->add_option("term", t_arg, "term text or file")->required();
  reduce->add_flag("--trace", trace, "print every step");
  lift_opt(reduce);
  reduce->callback([&] {
    TermPtr t = read_term(t_arg, CHECKERS_TAGGED, code, lift);
    if (!t) return;
    code = emit(g, [&](char** o) {
      return checkers_reduce(t.get(), g.fuel, trace, g.detect_loops, o);
    });
  });

  auto* bohm = app.add_subcommand("bohm", "Böhm-tree approximant");
  bohm->add_option("term", t_arg, "term text or file")->required();
  bohm->callback([&] {
    TermPtr t = read_term(t_arg, CHECKERS_ORDINARY, code);
    if (!t) return;
    checkers_bohm_options opts = bohm_options(g);
    code = emit(g, [&](char** o) { return checkers_bohm(t.get(), &opts, o); });
  });

  long eta_budget = -1;
  auto* compare = app.add_subcommand("compare", "Böhm preorder t <= u");
  compare->add_option("t", t_arg)->required();
  compare->add_option("u", u_arg)->required();
  compare->add_option("--mode", mode, "bohm (default) or bohm-eta")
      ->check(CLI::IsMember({"bohm", "bohm-eta"}));
  compare->add_option("--eta-budget", eta_budget,
                      "η-expansions allowed per node (default unbounded)");

  auto* sep = app.add_subcommand("separate", "separating context for t, u");
  sep->add_option("t", t_arg)->required();
  sep->add_option("u", u_arg)->required();

  size_t budget = 4;
  auto* probe = app.add_subcommand(
      "probe", "bounded search for a context refuting t <=int u");
  probe->add_option("t", t_arg)->required();
  probe->add_option("u", u_arg)->required();
  probe->add_option("--budget", budget, "largest context size")
      ->default_val(4);
  probe->add_option("--mode", mode, "preorder (default) or improvement")
      ->check(CLI::IsMember({"preorder", "improvement"}));

  using Two = std::function<checkers_status(checkers_term*, checkers_term*,
                                            char**)>;
  auto two_terms = [&](const Two& run) {
    TermPtr t = read_term(t_arg, CHECKERS_ORDINARY, code);
    if (!t) return;
    TermPtr u = read_term(u_arg, CHECKERS_ORDINARY, code);
    if (!u) return;
    code = emit(g, [&](char** o) { return run(t.get(), u.get(), o); });
  };
  compare->callback([&] {
    checkers_bohm_options opts = bohm_options(g);
    two_terms([&](checkers_term* t, checkers_term* u, char** o) {
      return checkers_compare(t, u, mode == "bohm-eta", eta_budget, &opts, o);
    });
  });
  sep->callback([&] {
    // The context is verified by running it, so a detected loop is safe
    // evidence of divergence here.
    checkers_bohm_options opts = bohm_options(g);
    opts.detect_loops = 1;
    two_terms([&](checkers_term* t, checkers_term* u, char** o) {
      return checkers_separate(t, u, &opts, o);
    });
  });
  probe->callback([&] {
    two_terms([&](checkers_term* t, checkers_term* u, char** o) {
      return checkers_probe(t, u, budget, g.fuel, mode == "improvement", o);
    });
  });

  auto* typecheck = app.add_subcommand("typecheck", "check a derivation file");
  typecheck->add_option("file", t_arg, "JSON derivation, or - for stdin")
      ->required();
  typecheck->callback([&] {
    std::string text = source_text(t_arg);
    code = emit(g, [&](char** o) { return checkers_typecheck(text.c_str(), o); });
  });

  auto* tight = app.add_subcommand("infer-tight", "tight derivation of a term");
  tight->add_option("term", t_arg, "term text or file")->required();
  lift_opt(tight);
  tight->callback([&] {
    TermPtr t = read_term(t_arg, CHECKERS_TAGGED, code, lift);
    if (!t) return;
    code = emit(g,
                [&](char** o) { return checkers_infer_tight(t.get(), g.fuel, o); });
  });

  size_t cap = 3, type_depth = 1, max_card = 2;
  auto* typings = app.add_subcommand("typings", "enumerate typings of a term");
  typings->add_option("term", t_arg, "term text or file")->required();
  typings->add_option("--cap", cap, "most applications in a derivation")
      ->default_val(3);
  typings->add_option("--type-depth", type_depth, "arrow nesting of axioms")
      ->default_val(1);
  typings->add_option("--max-card", max_card, "largest multiset")
      ->default_val(2);
  lift_opt(typings);
  typings->callback([&] {
    TermPtr t = read_term(t_arg, CHECKERS_TAGGED, code, lift);
    if (!t) return;
    code = emit(g, [&](char** o) {
      return checkers_typings(t.get(), cap, type_depth, max_card, o);
    });
  });

  std::string name;
  size_t count = 100, max_size = 12;
  bool list = false;
  auto* suite = app.add_subcommand("suite", "run a property suite");
  suite->add_option("name", name, "suite name, or all");
  suite->add_option("--count", count, "cases")->default_val(100);
  suite->add_option("--max-size", max_size, "largest generated term")
      ->default_val(12);
  suite->add_flag("--list", list, "list suite names");
  suite->callback([&] {
    if (list || name.empty()) {
      code = emit(g, checkers_suite_names);
      return;
    }
    auto run = [&](const std::string& n) {
      return emit(g, [&](char** o) {
        return checkers_suite(n.c_str(), g.seed, max_size, count, g.fuel, o);
      });
    };
    if (name != "all") {
      code = run(name);
      return;
    }
    char* names = nullptr;
    checkers_status s = checkers_suite_names(&names);
    if (!names) {
      code = fail(s);
      return;
    }
    auto all = nlohmann::json::parse(names).at("names");
    checkers_free(names);
    for (const auto& n : all) code = std::max(code, run(n.get<std::string>()));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  return code;
}
