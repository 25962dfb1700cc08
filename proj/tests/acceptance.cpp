// Copyright 2026 The checkers-lambda Authors.
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all
// pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "checkers/bohm.hpp"
#include "checkers/harness.hpp"
#include "checkers/reduction.hpp"
#include "checkers/separate.hpp"
#include "checkers/types.hpp"

namespace checkers {
namespace {

struct Verdict {
  bool ok;
  std::string detail;
};

Term T(const char* s) { return parse_term(s); }
CTerm C(const char* s) { return parse_cterm(s); }

std::string outcome(const Outcome& o) {
  return std::string(o.normal() ? "normal" : "fuel-exhausted") +
         " k=" + std::to_string(o.k) + " n=" + std::to_string(o.n);
}

// 1. Interaction counts of 1 and I against two white arguments.
Verdict interaction_counts() {
  auto t0 = std::chrono::steady_clock::now();
  Outcome one = evaluate_head(C("(One_b @w z) @w w"), 10000);
  Outcome id = evaluate_head(C("(I_b @w z) @w w"), 10000);
  double us = std::chrono::duration<double, std::micro>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  bool ok = one.normal() && one.k == 2 && id.normal() && id.k == 1 &&
            us < 1000.0;
  return {ok, "1: " + outcome(one) + ", I: " + outcome(id) + ", " +
                  std::to_string(static_cast<int>(us)) + "us"};
}

// 2. Classic separation of the two terms differing under x.
Verdict classic_example() {
  Term t = T("\\x y. x (x Om y) Om"), u = T("\\x y. x (x y Om) Om");
  BohmOptions o;
  o.fuel = 1000;
  o.detect_loops = true;
  auto w = find_difference(t, u, o);
  if (!w) return {false, "no difference found"};
  Separation s = classic_separate(t, u, *w, 1000);
  if (!s.ok()) return {false, std::string(to_string(s.status)) + " " + s.diagnostic};
  const SeparationResult& r = *s.result;
  // The reference context [] T2 I P2_1 P2_2 behaves the same way.
  auto ref = verify_separation(parse_context("[] T2 I P2_1 P2_2"), t, u, 1000);
  bool ok = r.left.normal() && !r.right.normal() && r.right.n == 1000 &&
            ref.first.normal() == r.left.normal() &&
            ref.second.normal() == r.right.normal();
  return {ok, "context " + print(r.context) + ": left " + outcome(r.left) +
                  ", right " + outcome(r.right) + "; reference: left " +
                  outcome(ref.first) + ", right " + outcome(ref.second)};
}

// 3. Interaction Böhm-out on I and 1, at K and K + 1.
Verdict interaction_bohm_out_gap() {
  Term i = T("I"), one = T("One");
  auto w = find_difference(i, one);
  if (!w) return {false, "no difference found"};
  Separation s = interaction_bohm_out(i, one, *w, 1000);
  if (!s.ok()) return {false, s.diagnostic};
  std::size_t K = s.result->K;
  Separation s1 = interaction_bohm_out(i, one, *w, 1000, K + 1);
  if (!s1.ok()) return {false, "K+1: " + s1.diagnostic};
  auto gap = [](const SeparationResult& r) {
    return static_cast<long>(r.right.k) - static_cast<long>(r.left.k);
  };
  bool ok = s.result->left.normal() && s.result->right.normal() &&
            s1.result->left.normal() && s1.result->right.normal() &&
            gap(*s.result) == 1 && gap(*s1.result) == 1;
  return {ok, "K=" + std::to_string(K) + " gap " +
                  std::to_string(gap(*s.result)) + ", K=" +
                  std::to_string(K + 1) + " gap " +
                  std::to_string(gap(*s1.result))};
}

struct Corpus {
  std::vector<CTerm> terms;
  std::vector<Outcome> outcomes;
  std::size_t generated = 0;
};

// Generated checkers terms that are not hnfs but reach one within fuel
// 10000.
const Corpus& corpus() {
  static const Corpus c = [] {
    Corpus c;
    GenConfig cfg;
    cfg.seed = 2026;
    cfg.max_size = 12;
    TermGen g(cfg);
    while (c.terms.size() < 1000) {
      CTerm t = g.next_cterm();
      ++c.generated;
      if (is_hnf(t)) continue;
      Outcome o = evaluate_head(t, 10000);
      if (!o.normal()) continue;
      c.terms.push_back(t);
      c.outcomes.push_back(o);
    }
    return c;
  }();
  return c;
}

// 4. The tight index is the interaction count.
Verdict tight_exactness() {
  auto t0 = std::chrono::steady_clock::now();
  const Corpus& c = corpus();
  std::size_t agree = 0;
  std::string first;
  for (std::size_t i = 0; i < c.terms.size(); ++i) {
    auto r = infer_tight(c.terms[i], 10000);
    if (r && r->k == c.outcomes[i].k && r->derivation.k == r->k &&
        is_tight(r->derivation.env, r->derivation.linear())) {
      check_derivation(r->derivation);
      ++agree;
    } else if (first.empty()) {
      first = print(c.terms[i]);
    }
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                           t0)
                 .count();
  bool ok = agree == c.terms.size() && s < 60.0;
  return {ok, std::to_string(agree) + "/" + std::to_string(c.terms.size()) +
                  " agree (from " + std::to_string(c.generated) +
                  " generated), " + std::to_string(s).substr(0, 5) + "s" +
                  (first.empty() ? "" : ", first mismatch " + first)};
}

// 5. Each head step shrinks the derivation by one application node and
// the index by one exactly on interaction steps.
Verdict subject_reduction() {
  const Corpus& c = corpus();
  std::size_t steps = 0, bad = 0;
  std::string first;
  std::size_t derivations = 0;
  // Follows the head reduction of t inside d.
  auto follow = [&](const CTerm& t, Derivation d) {
    ++derivations;
    CTerm cur = t;
    while (auto s = head_step(cur)) {
      Derivation next = subject_reduce(d);
      check_derivation(next);
      std::uint64_t drop = s->kind == StepKind::Interaction ? 1 : 0;
      ++steps;
      if (size(next) + 1 != size(d) || next.k + drop != d.k ||
          !(next.subject == s->term) || next.env != d.env ||
          next.linear() != d.linear()) {
        ++bad;
        if (first.empty()) first = print(cur);
        break;
      }
      d = std::move(next);
      cur = s->term;
    }
  };
  for (const CTerm& t : c.terms) {
    auto r = infer_tight(t, 10000);
    if (!r) {
      ++bad;
      continue;
    }
    follow(t, r->derivation);
    // Non-tight typings too, as far as the bounded enumeration finds them.
    for (const Typing& ty : enumerate_typings(t, 3)) follow(t, ty.witness);
  }
  return {bad == 0 && steps > 0,
          std::to_string(steps) + " head steps in " +
              std::to_string(derivations) + " derivations of " +
              std::to_string(c.terms.size()) + " terms, " +
              std::to_string(bad) + " violations" +
              (first.empty() ? "" : ", first at " + first)};
}

// 6. Tight derivations of hnfs have index 0.
Verdict tight_hnfs() {
  const Corpus& c = corpus();
  std::size_t good = 0;
  for (const Outcome& o : c.outcomes) {
    Derivation d = derive_hnf_tight(o.term);
    CheckReport r = check_derivation(d);
    if (r.k == 0 && d.k == 0 && is_tight(d.env, d.linear())) ++good;
  }
  return {good == c.outcomes.size() && good >= 1000,
          std::to_string(good) + "/" + std::to_string(c.outcomes.size()) +
              " hnfs tight with k=0"};
}

// 7. Derivations of pruned Böhm approximants move to the full term.
Verdict transport() {
  GenConfig cfg;
  cfg.seed = 7000;
  cfg.max_size = 12;
  std::size_t cases = 0, skipped = 0, failures = 0;
  std::string first;
  while (cases < 200) {
    SuiteReport r = run_suite("transport", cfg, 100, 10000);
    cases += r.cases;
    skipped += r.skipped;
    failures += r.failures.size();
    if (first.empty() && !r.failures.empty())
      first = "seed " + std::to_string(r.failures[0].seed) + ": " +
              r.failures[0].detail;
    cfg.seed += 100;
  }
  return {failures == 0, std::to_string(cases) + " pairs transported, " +
                             std::to_string(skipped) + " skipped (no hnf), " +
                             std::to_string(failures) + " failures" +
                             (first.empty() ? "" : ", " + first)};
}

bool has(const std::vector<Typing>& ts, const TypeEnv& env, std::uint64_t k,
         const LinearType& l) {
  for (const Typing& t : ts)
    if (t.env == env && t.k == k && t.type == l) return true;
  return false;
}

// 8. The η-expansion of a variable has typings the variable lacks, and
// conversely.
Verdict no_eta() {
  auto var = enumerate_typings(C("x"), 2);
  auto eta = enumerate_typings(C("\\b y. x @b y"), 2);
  LinearType X = LinearType::atom();
  TypeEnv g = TypeEnv::single("x", parse_multi("[[] -wb-> X]"));
  TypeEnv atom = TypeEnv::single("x", parse_multi("[X]"));
  bool ok = true;
  std::string detail;
  for (Player c : {Player::Black, Player::White}) {
    LinearType l = LinearType::arrow(MultiType(), Player::Black, c, X);
    bool in_eta = has(eta, g, 1, l);
    bool in_var = false;
    for (const Typing& t : var) in_var |= t.env == g && t.type == l;
    ok &= in_eta && !in_var;
    detail += "[] -b" + std::string(1, player_letter(c)) + "-> X: eta " +
              (in_eta ? "yes" : "no") + ", x " + (in_var ? "yes" : "no") +
              "; ";
  }
  bool a_var = has(var, atom, 0, X), a_eta = has(eta, atom, 0, X);
  ok &= a_var && !a_eta;
  detail += "([X],0,X): x " + std::string(a_var ? "yes" : "no") + ", eta " +
            (a_eta ? "yes" : "no");
  return {ok, detail};
}

// 9. Böhm trees of 1, Y, Ω and P z.
Verdict gallery() {
  using A = BohmApprox;
  std::vector<std::string> bad;
  A one = bohm_approx(T("One"), 3, 1000);
  if (!alpha_equal(one, A::node({"x", "y"}, "x", {A::node({}, "y", {})})))
    bad.push_back("1");
  A f1 = A::node({"f"}, "f", {A::bot()});
  A f2 = A::node({"f"}, "f", {A::node({}, "f", {A::bot()})});
  A y3 = bohm_approx(T("Y"), 3, 1000);
  if (le_bot(A::bot(), f1, true) != Tri::Holds ||
      le_bot(f1, f2, true) != Tri::Holds || le_bot(f2, y3, true) != Tri::Holds ||
      le_bot(f2, f1, true) != Tri::Fails ||
      !alpha_equal(y3, A::node({"f"}, "f",
                               {A::node({}, "f", {A::node({}, "f",
                                                          {A::cut()})})})))
    bad.push_back("Y");
  BohmOptions loops;
  loops.fuel = 1000;
  loops.detect_loops = true;
  A om = bohm_approx(T("Om"), loops);
  if (!om.is_bot() || !om.certified) bad.push_back("Om");
  // P z = λx0.x0 (λx1.x1 (...)), with z nowhere.
  A p = bohm_approx(T("Y (\\y z x. x (y z)) z"), 3, 1000);
  bool shape = true;
  const A* n = &p;
  for (int level = 0; level < 3 && shape; ++level) {
    shape = n->is_node() && n->binders.size() == 1 &&
            n->head == n->binders[0] && n->children.size() == 1;
    if (shape) n = &n->children[0];
  }
  shape = shape && n->is_cut() && render(p).find('z') == std::string::npos;
  if (!shape) bad.push_back("P z");
  std::string detail = bad.empty() ? "1, Y chain, Om, P z as expected"
                                   : "mismatch:";
  for (const std::string& b : bad) detail += " " + b;
  return {bad.empty(), detail};
}

// 10. T_n t1..tn P^n_i head-reduces to t_i.
Verdict extraction() {
  GenConfig cfg;
  cfg.seed = 10;
  cfg.max_size = 8;
  cfg.closed = true;
  TermGen g(cfg);
  std::size_t runs = 0, good = 0;
  for (std::size_t n = 1; n <= 5; ++n)
    for (std::size_t i = 1; i <= n; ++i)
      for (int rep = 0; rep < 20; ++rep) {
        std::vector<Term> ts;
        Term t = tupler(n);
        for (std::size_t j = 0; j < n; ++j) {
          ts.push_back(g.next_term());
          t = Term::app(t, ts.back());
        }
        t = Term::app(t, selector(n, i));
        ++runs;
        Term cur = t;
        for (std::size_t s = 0; s <= 2 * n + 2; ++s) {
          if (cur == ts[i - 1]) {
            ++good;
            break;
          }
          auto next = head_step_ordinary(cur);
          if (!next) break;
          cur = *next;
        }
      }
  return {good == runs, std::to_string(good) + "/" + std::to_string(runs) +
                            " extractions for n <= 5"};
}

// 11. Local confluence on random terms.
Verdict confluence() {
  GenConfig cfg;
  cfg.seed = 11000;
  cfg.max_size = 12;
  TermGen g(cfg);
  std::size_t pairs = 0, failures = 0, fuel = 0;
  std::string first;
  for (int i = 0; i < 10000; ++i) {
    ConfluenceReport r = check_local_confluence(g.next_cterm(), 200);
    pairs += r.pairs;
    failures += r.failures;
    fuel += r.fuel_exceeded;
    if (first.empty() && r.failures) first = r.first_failure;
  }
  return {failures == 0 && fuel == 0,
          "10000 terms, " + std::to_string(pairs) + " reduct pairs, " +
              std::to_string(failures) + " failures, " + std::to_string(fuel) +
              " out of fuel" + (first.empty() ? "" : ", " + first)};
}

}  // namespace
}  // namespace checkers

int main() {
  using namespace checkers;
  struct Item {
    const char* name;
    std::function<Verdict()> run;
  };
  const Item items[] = {
      {"interaction counts of 1 and I", interaction_counts},
      {"classic separation example", classic_example},
      {"interaction Böhm-out on (I, 1)", interaction_bohm_out_gap},
      {"tight typing exactness", tight_exactness},
      {"quantitative subject reduction", subject_reduction},
      {"tight hnfs have index 0", tight_hnfs},
      {"Böhm-to-type transport", transport},
      {"no eta in the type system", no_eta},
      {"Böhm tree gallery", gallery},
      {"extraction by tuplers and selectors", extraction},
      {"local confluence", confluence},
  };
  int failed = 0, n = 0;
  for (const Item& it : items) {
    ++n;
    Verdict v;
    try {
      v = it.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2d %s: %s\n", v.ok ? "PASS" : "FAIL", n, it.name,
                v.detail.c_str());
    std::fflush(stdout);
    failed += !v.ok;
  }
  std::printf("%d/%d criteria passed\n", n - failed, n);
  return failed ? 1 : 0;
}
