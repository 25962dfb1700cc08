// Copyright 2026 The checkers-lambda Authors.
// SPDX-License-Identifier: Apache-2.0

#include "checkers/harness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>

#include "checkers/separate.hpp"
#include "checkers/types.hpp"

namespace checkers {

// ---------------------------------------------------------------------------
// Generation

TermGen::TermGen(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

Term TermGen::next_term() {
  std::vector<std::string> scope;
  // A closed term needs a binder, so it has size 2 at least.
  std::size_t lo = cfg_.closed ? 2 : 1;
  std::size_t hi = std::max(cfg_.max_size, lo);
  return build(lo + below(hi - lo + 1), scope);
}

CTerm TermGen::next_cterm() { return tag(next_term()); }

CTerm TermGen::tag(const Term& t) {
  auto pick = [&] {
    switch (cfg_.mix) {
      case PlayerMix::AllBlack:
        return Player::Black;
      case PlayerMix::AllWhite:
        return Player::White;
      case PlayerMix::Mixed:
        break;
    }
    return (rng_() & 1) ? Player::Black : Player::White;
  };
  switch (t.kind()) {
    case TermKind::Var:
      return CTerm::var(t.name());
    case TermKind::Lam: {
      Player p = pick();
      auto [x, body] = t.unbind();
      return CTerm::lam(p, x, tag(body));
    }
    case TermKind::App: {
      Player p = pick();
      CTerm f = tag(t.fun());
      return CTerm::app(p, f, tag(t.arg()));
    }
  }
  return CTerm::var(t.name());
}

Term TermGen::build(std::size_t size, std::vector<std::string>& scope) {
  static const char* kFree[] = {"a", "b", "c"};
  if (size <= 1) {
    if (!scope.empty() && (cfg_.closed || below(4) != 0))
      return Term::var(scope[below(scope.size())]);
    return Term::var(kFree[below(3)]);
  }
  auto lam = [&](std::size_t n) {
    std::string x = "x" + std::to_string(scope.size());
    scope.push_back(x);
    Term body = build(n - 1, scope);
    scope.pop_back();
    return Term::lam(x, body);
  };
  if (size == 2 || (cfg_.closed && scope.empty()) || below(3) == 0)
    return lam(size);
  // A third of the applications with room for it are redexes.
  std::size_t left = 1 + below(size - 2);
  Term f = left >= 2 && below(3) == 0 ? lam(left) : build(left, scope);
  Term a = build(size - 1 - left, scope);
  return Term::app(f, a);
}

Term approx_to_term(const BohmApprox& a) {
  if (!a.is_node()) return *combinator("Om");
  Term t = Term::var(a.head);
  for (const BohmApprox& c : a.children) t = Term::app(t, approx_to_term(c));
  for (auto it = a.binders.rbegin(); it != a.binders.rend(); ++it)
    t = Term::lam(*it, t);
  return t;
}

// ---------------------------------------------------------------------------
// Confluence by complete developments, on marked de Bruijn terms kept apart
// from the reduction module so the two cross-check each other.

namespace {

struct MTerm;
using MPtr = std::shared_ptr<const MTerm>;

struct MTerm {
  enum Kind { Bound, Free, Lam, App } kind;
  Player player = Player::Black;
  bool mark = false;
  int index = 0;
  std::string name;
  MPtr a, b;
};

MPtr mk(MTerm t) { return std::make_shared<const MTerm>(std::move(t)); }

MPtr from_cterm(const CTerm& ct, std::vector<std::string>& bound) {
  switch (ct.kind()) {
    case TermKind::Var:
      for (std::size_t i = bound.size(); i-- > 0;)
        if (bound[i] == ct.name())
          return mk({MTerm::Bound, Player::Black, false,
                     static_cast<int>(bound.size() - 1 - i), "", {}, {}});
      return mk({MTerm::Free, Player::Black, false, 0, ct.name(), {}, {}});
    case TermKind::Lam: {
      auto [x, body] = ct.unbind();
      bound.push_back(x);
      MPtr b = from_cterm(body, bound);
      bound.pop_back();
      return mk({MTerm::Lam, ct.player(), false, 0, "", b, {}});
    }
    case TermKind::App:
      return mk({MTerm::App, ct.player(), false, 0, "",
                 from_cterm(ct.fun(), bound), from_cterm(ct.arg(), bound)});
  }
  return nullptr;
}

MPtr shift(const MPtr& t, int d, int cutoff) {
  switch (t->kind) {
    case MTerm::Bound:
      if (t->index < cutoff) return t;
      return mk({MTerm::Bound, t->player, false, t->index + d, "", {}, {}});
    case MTerm::Free:
      return t;
    case MTerm::Lam:
      return mk({MTerm::Lam, t->player, false, 0, "", shift(t->a, d, cutoff + 1),
                 {}});
    case MTerm::App:
      return mk({MTerm::App, t->player, t->mark, 0, "", shift(t->a, d, cutoff),
                 shift(t->b, d, cutoff)});
  }
  return t;
}

MPtr subst(const MPtr& t, int j, const MPtr& s) {
  switch (t->kind) {
    case MTerm::Bound:
      return t->index == j ? s : t;
    case MTerm::Free:
      return t;
    case MTerm::Lam:
      return mk({MTerm::Lam, t->player, false, 0, "",
                 subst(t->a, j + 1, shift(s, 1, 0)), {}});
    case MTerm::App:
      return mk({MTerm::App, t->player, t->mark, 0, "", subst(t->a, j, s),
                 subst(t->b, j, s)});
  }
  return t;
}

MPtr beta(const MPtr& body, const MPtr& arg) {
  return shift(subst(body, 0, shift(arg, 1, 0)), -1, 0);
}

MPtr with_mark(const MPtr& t, const Position& pos, std::size_t i) {
  if (i == pos.size()) {
    if (t->kind != MTerm::App || t->a->kind != MTerm::Lam)
      throw std::logic_error("no redex to mark");
    return mk({MTerm::App, t->player, true, 0, "", t->a, t->b});
  }
  if (t->kind == MTerm::Lam)
    return mk({MTerm::Lam, t->player, false, 0, "", with_mark(t->a, pos, i + 1),
               {}});
  if (pos[i] == 0)
    return mk({MTerm::App, t->player, t->mark, 0, "", with_mark(t->a, pos, i + 1),
               t->b});
  return mk({MTerm::App, t->player, t->mark, 0, "", t->a,
             with_mark(t->b, pos, i + 1)});
}

MPtr contract_at(const MPtr& t, const Position& pos, std::size_t i) {
  if (i == pos.size()) return beta(t->a->a, t->b);
  if (t->kind == MTerm::Lam)
    return mk({MTerm::Lam, t->player, false, 0, "",
               contract_at(t->a, pos, i + 1), {}});
  if (pos[i] == 0)
    return mk({MTerm::App, t->player, t->mark, 0, "",
               contract_at(t->a, pos, i + 1), t->b});
  return mk({MTerm::App, t->player, t->mark, 0, "", t->a,
             contract_at(t->b, pos, i + 1)});
}

// Contracts every marked redex, innermost first. Residuals of marked redexes
// stay redexes, and no marks survive, so one pass suffices.
MPtr develop(const MPtr& t, std::uint64_t& steps) {
  switch (t->kind) {
    case MTerm::Bound:
    case MTerm::Free:
      return t;
    case MTerm::Lam:
      return mk({MTerm::Lam, t->player, false, 0, "", develop(t->a, steps), {}});
    case MTerm::App: {
      MPtr f = develop(t->a, steps);
      MPtr a = develop(t->b, steps);
      if (!t->mark) return mk({MTerm::App, t->player, false, 0, "", f, a});
      ++steps;
      return beta(f->a, a);
    }
  }
  return t;
}

// Equality ignoring marks.
bool same(const MPtr& x, const MPtr& y) {
  if (x == y) return true;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case MTerm::Bound:
      return x->index == y->index;
    case MTerm::Free:
      return x->name == y->name;
    case MTerm::Lam:
      return x->player == y->player && same(x->a, y->a);
    case MTerm::App:
      return x->player == y->player && same(x->a, y->a) && same(x->b, y->b);
  }
  return false;
}

std::string pos_string(const Position& p) {
  std::string s = "<";
  for (auto c : p) s += char('0' + c);
  return s + ">";
}

}  // namespace

ConfluenceReport check_local_confluence(const CTerm& ct, std::uint64_t fuel) {
  ConfluenceReport rep;
  std::vector<std::string> bound;
  MPtr base = from_cterm(ct, bound);
  std::vector<PositionedStep> steps = any_beta_steps(ct);
  auto fail = [&](const std::string& why) {
    ++rep.failures;
    if (rep.first_failure.empty()) rep.first_failure = print(ct) + ": " + why;
  };
  // The library's one-step reducts must agree with the marked machinery.
  for (const PositionedStep& s : steps) {
    std::vector<std::string> b2;
    if (!same(contract_at(base, s.position, 0), from_cterm(s.term, b2)))
      fail("step at " + pos_string(s.position) + " disagrees");
  }
  for (std::size_t i = 0; i < steps.size(); ++i)
    for (std::size_t j = i + 1; j < steps.size(); ++j) {
      ++rep.pairs;
      const Position& p1 = steps[i].position;
      const Position& p2 = steps[j].position;
      MPtr marked = with_mark(with_mark(base, p1, 0), p2, 0);
      std::uint64_t n1 = 0, n2 = 0;
      MPtr j1 = develop(contract_at(marked, p1, 0), n1);
      MPtr j2 = develop(contract_at(marked, p2, 0), n2);
      if (n1 > fuel || n2 > fuel) {
        ++rep.fuel_exceeded;
        continue;
      }
      if (!same(j1, j2))
        fail("reducts at " + pos_string(p1) + " and " + pos_string(p2) +
             " do not rejoin");
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Context enumeration

namespace {

class ContextEnum {
 public:
  ContextEnum(const std::set<std::string>& capture, std::size_t limit)
      : capture_(capture), limit_(limit) {
    auto taken = [&](const std::string& s) {
      return capture_.count(s) > 0 ||
             std::find(pool_.begin(), pool_.end(), s) != pool_.end();
    };
    pool_.push_back(fresh_name("z", taken));
    pool_.push_back(fresh_name("w", taken));
  }

  std::vector<Context> run(std::size_t budget) {
    for (std::size_t s = 0; s <= budget && !full(); ++s) {
      std::vector<std::string> scope;
      contexts(s, scope, 0, [&](const Context& c, std::size_t) {
        if (!full()) out_.push_back(c);
      });
    }
    return std::move(out_);
  }

 private:
  using TermK = std::function<void(const Term&, std::size_t)>;
  using CtxK = std::function<void(const Context&, std::size_t)>;

  bool full() const { return out_.size() >= limit_; }

  std::string binder(std::size_t depth) {
    return fresh_name("x" + std::to_string(depth), [&](const std::string& s) {
      return capture_.count(s) > 0 ||
             std::find(pool_.begin(), pool_.end(), s) != pool_.end();
    });
  }

  void terms(std::size_t size, std::vector<std::string>& scope,
             std::size_t nfree, const TermK& k) {
    if (full() || size == 0) return;
    if (size == 1) {
      if (nfree < pool_.size()) k(Term::var(pool_[nfree]), nfree + 1);
      for (std::size_t i = scope.size(); i-- > 0;) k(Term::var(scope[i]), nfree);
      for (std::size_t i = 0; i < nfree; ++i) k(Term::var(pool_[i]), nfree);
      return;
    }
    for (std::size_t l = 1; l < size; ++l)
      terms(l, scope, nfree, [&](const Term& f, std::size_t n1) {
        terms(size - l, scope, n1, [&](const Term& a, std::size_t n2) {
          k(Term::app(f, a), n2);
        });
      });
    std::string x = binder(scope.size());
    scope.push_back(x);
    terms(size - 1, scope, nfree, [&](const Term& body, std::size_t n) {
      k(Term::lam(x, body), n);
    });
    scope.pop_back();
  }

  void contexts(std::size_t size, std::vector<std::string>& scope,
                std::size_t nfree, const CtxK& k) {
    if (full()) return;
    if (size == 0) {
      k(Context::hole(), nfree);
      return;
    }
    // C t, then t C, then binders (fresh first, then capturing ones).
    for (std::size_t ts = 1; ts <= size; ++ts)
      contexts(size - ts, scope, nfree, [&](const Context& c, std::size_t n1) {
        terms(ts, scope, n1, [&](const Term& t, std::size_t n2) {
          k(Context::app_left(c, t), n2);
        });
      });
    for (std::size_t ts = 1; ts <= size; ++ts)
      terms(ts, scope, nfree, [&](const Term& t, std::size_t n1) {
        contexts(size - ts, scope, n1, [&](const Context& c, std::size_t n2) {
          k(Context::app_right(t, c), n2);
        });
      });
    std::vector<std::string> names{binder(scope.size())};
    for (const std::string& v : capture_)
      if (std::find(scope.begin(), scope.end(), v) == scope.end())
        names.push_back(v);
    for (const std::string& x : names) {
      scope.push_back(x);
      contexts(size - 1, scope, nfree, [&](const Context& c, std::size_t n) {
        k(Context::lam(x, c), n);
      });
      scope.pop_back();
    }
  }

  std::set<std::string> capture_;
  std::size_t limit_;
  std::vector<std::string> pool_;
  std::vector<Context> out_;
};

// Refutes the relation on this context, or says why not.
enum class Verdict { Holds, Refuted, Inconclusive };

struct Run {
  Verdict verdict;
  Outcome left, right;
};

Run run_context(const Context& c, const Term& t, const Term& u,
                std::uint64_t fuel, ProbeMode mode) {
  CContext cw = lift_context(Player::White, c);
  EvalOptions opts{fuel, true};
  Outcome l = evaluate_head(plug(cw, lift(Player::Black, t)), opts);
  if (!l.normal()) return {Verdict::Holds, l, l};
  Outcome r = evaluate_head(plug(cw, lift(Player::Black, u)), opts);
  if (r.normal()) {
    bool bad = mode == ProbeMode::InterPreorder ? r.k != l.k : r.k > l.k;
    return {bad ? Verdict::Refuted : Verdict::Holds, l, r};
  }
  return {r.cycle ? Verdict::Refuted : Verdict::Inconclusive, l, r};
}

}  // namespace

std::vector<Context> enumerate_contexts(std::size_t budget,
                                        const std::set<std::string>& capture,
                                        std::size_t limit) {
  return ContextEnum(capture, limit).run(budget);
}

std::string_view to_string(ProbeMode m) {
  return m == ProbeMode::InterPreorder ? "preorder" : "improvement";
}

ProbeReport probe_preorder(const Term& t, const Term& u, std::size_t budget,
                           std::uint64_t fuel, ProbeMode mode) {
  ProbeReport rep{mode, 0, 0, std::nullopt, std::nullopt, std::nullopt, ""};
  std::set<std::string> capture = t.free_vars();
  for (const auto& v : u.free_vars()) capture.insert(v);
  auto consider = [&](const Context& c, const char* source) {
    ++rep.contexts_tried;
    Run r = run_context(c, t, u, fuel, mode);
    if (r.verdict == Verdict::Inconclusive) ++rep.inconclusive;
    if (r.verdict != Verdict::Refuted) return false;
    rep.context = c;
    rep.left = r.left;
    rep.right = r.right;
    rep.source = source;
    return true;
  };
  for (const Context& c : enumerate_contexts(budget, capture, 200000))
    if (consider(c, "enumerated")) return rep;
  BohmOptions bo;
  bo.fuel = fuel;
  bo.detect_loops = true;
  Separation s = separate(t, u, bo);
  if (s.ok()) consider(s.result->context, "constructed");
  return rep;
}

bool replay_probe(const ProbeReport& r, const Term& t, const Term& u,
                  std::uint64_t fuel) {
  if (!r.context) return false;
  Run again = run_context(*r.context, t, u, fuel, r.relation);
  return again.verdict == Verdict::Refuted && again.left.k == r.left->k &&
         again.right.normal() == r.right->normal() &&
         (!again.right.normal() || again.right.k == r.right->k);
}

// ---------------------------------------------------------------------------
// Suites

namespace {

// Empty on success, "skip" when the case does not exercise the property,
// otherwise a description of the failure.
using CaseFn = std::function<std::optional<std::string>(TermGen&, std::uint64_t)>;

const std::string kSkip = "\x01skip";

std::optional<std::string> subject_reduction_case(TermGen& g,
                                                  std::uint64_t fuel) {
  CTerm ct = g.next_cterm();
  auto r = infer_tight(ct, fuel);
  if (!r) return kSkip;
  Derivation d = r->derivation;
  while (auto st = head_step(d.subject)) {
    Derivation next = subject_reduce(d);
    CheckReport rep = check_derivation(next);
    bool inter = st->kind == StepKind::Interaction;
    if (rep.size + 1 != size(d) || rep.k + (inter ? 1 : 0) != d.k ||
        next.env != d.env || next.type != d.type)
      return "size/index mismatch reducing " + print(d.subject);
    d = std::move(next);
  }
  return std::nullopt;
}

std::optional<std::string> tight_exactness_case(TermGen& g,
                                                std::uint64_t fuel) {
  CTerm ct = g.next_cterm();
  Outcome o = evaluate_head(ct, fuel);
  auto r = infer_tight(ct, fuel);
  if (o.normal() != r.has_value()) return "normalization disagreement";
  if (!r) return kSkip;
  CheckReport rep = check_derivation(r->derivation);
  if (rep.k != o.k)
    return "k " + std::to_string(rep.k) + " vs measured " + std::to_string(o.k);
  if (!is_tight(rep.env, r->derivation.linear())) return "not tight";
  return std::nullopt;
}

std::optional<std::string> tight_hnf_case(TermGen& g, std::uint64_t fuel) {
  Outcome o = evaluate_head(g.next_cterm(), fuel);
  if (!o.normal()) return kSkip;
  Derivation d = derive_hnf_tight(o.term);
  CheckReport rep = check_derivation(d);
  if (rep.k != 0) return "tight hnf derivation with k > 0";
  if (!is_tight(d.env, d.linear())) return "hnf derivation not tight";
  return std::nullopt;
}

std::optional<std::string> extraction_case(TermGen& g, std::uint64_t fuel) {
  std::size_t n = 1 + g.rng()() % 5;
  std::size_t i = 1 + g.rng()() % n;
  GenConfig closed;
  closed.seed = g.rng()();
  closed.max_size = 8;
  closed.closed = true;
  TermGen cg(closed);
  std::vector<Term> ts;
  Term t = tupler(n);
  for (std::size_t j = 0; j < n; ++j) {
    ts.push_back(cg.next_term());
    t = Term::app(t, ts.back());
  }
  t = Term::app(t, selector(n, i));
  for (std::uint64_t s = 0; s <= fuel; ++s) {
    if (t == ts[i - 1]) return std::nullopt;
    auto next = head_step_ordinary(t);
    if (!next) break;
    t = *next;
  }
  return "T" + std::to_string(n) + " ... P" + std::to_string(n) + "_" +
         std::to_string(i) + " never reaches its component";
}

std::optional<std::string> confluence_case(TermGen& g, std::uint64_t fuel) {
  ConfluenceReport r = check_local_confluence(g.next_cterm(), fuel);
  if (r.failures) return r.first_failure;
  if (r.pairs == 0) return kSkip;
  return std::nullopt;
}

// Replaces random subtrees of an approximant by Ω; the root stays.
BohmApprox prune(const BohmApprox& a, std::mt19937_64& rng, bool root) {
  if (!a.is_node()) return BohmApprox::bot();
  if (!root && rng() % 4 == 0) return BohmApprox::bot();
  std::vector<BohmApprox> cs;
  for (const BohmApprox& c : a.children) cs.push_back(prune(c, rng, false));
  return BohmApprox::node(a.binders, a.head, std::move(cs));
}

std::optional<std::string> transport_case(TermGen& g, std::uint64_t fuel) {
  Term u = g.next_term();
  BohmApprox full = bohm_approx(u, 4, fuel);
  if (!full.is_node()) return kSkip;
  Term t = approx_to_term(prune(full, g.rng(), true));
  auto r = infer_tight(lift(Player::Black, t), fuel);
  if (!r) return "pruned term has no tight typing: " + print(t);
  auto moved = transport_bohm(r->derivation, t, u, 16, fuel);
  if (!moved) return "transport failed from " + print(t) + " to " + print(u);
  check_derivation(*moved);
  if (moved->env != r->derivation.env || moved->k != r->derivation.k ||
      moved->type != r->derivation.type)
    return "transported conclusion differs";
  return std::nullopt;
}

std::optional<std::string> silent_invariance_case(TermGen& g, std::uint64_t) {
  CTerm ct = g.next_cterm();
  bool any = false;
  for (const PositionedStep& ps : any_beta_steps(ct)) {
    if (ps.kind != StepKind::Silent) continue;
    any = true;
    auto before = enumerate_typings(ct, 2);
    auto after = enumerate_typings(ps.term, 2);
    for (const Typing& t : before) {
      bool found = std::any_of(after.begin(), after.end(),
                               [&](const Typing& a) { return a.same_judgment(t); });
      if (!found) return "typing lost by a silent step of " + print(ct);
    }
    for (const Typing& t : after) {
      Derivation e = expand_at(t.witness, ct, ps.position);
      check_derivation(e);
      if (e.env != t.env || e.k != t.k || e.linear() != t.type)
        return "expansion changed the conclusion on " + print(ct);
    }
  }
  return any ? std::nullopt : std::optional<std::string>(kSkip);
}

std::optional<std::string> separation_case(TermGen& g, std::uint64_t fuel) {
  Term t = g.next_term();
  Term u = g.next_term();
  BohmOptions bo;
  bo.fuel = fuel;
  bo.detect_loops = true;
  bo.depth = 6;
  Separation s = separate(t, u, bo);
  if (s.status == SeparationStatus::VerificationFailed)
    return "constructed context does not separate " + print(t) + " and " +
           print(u) + ": " + s.diagnostic;
  if (!s.ok()) return kSkip;
  auto [l, r] = verify_separation(s.result->context, t, u, fuel);
  if (l.normal() == r.normal() && l.k == r.k)
    return "replayed context does not separate";
  return std::nullopt;
}

std::optional<std::string> probe_consistency_case(TermGen& g,
                                                  std::uint64_t fuel) {
  Term t = g.next_term();
  Term u = g.next_term();
  std::uint64_t f = std::min<std::uint64_t>(fuel, 300);
  ProbeReport p = probe_preorder(t, u, 3, f, ProbeMode::InterPreorder);
  if (!p.counterexample()) return kSkip;
  if (!replay_probe(p, t, u, f)) return "counterexample does not replay";
  BohmOptions bo;
  bo.fuel = f;
  bo.depth = 6;
  if (bohm_le(t, u, bo) == Tri::Holds)
    return "probe refutes " + print(t) + " <= " + print(u) +
           " although the Böhm trees are ordered";
  return std::nullopt;
}

const std::map<std::string, CaseFn>& suites() {
  static const std::map<std::string, CaseFn> m = {
      {"subject-reduction", subject_reduction_case},
      {"tight-exactness", tight_exactness_case},
      {"tight-hnf", tight_hnf_case},
      {"extraction-property", extraction_case},
      {"confluence", confluence_case},
      {"transport", transport_case},
      {"silent-invariance", silent_invariance_case},
      {"separation", separation_case},
      {"probe-consistency", probe_consistency_case},
  };
  return m;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : suites()) out.push_back(name);
  return out;
}

SuiteReport run_suite(std::string_view name, const GenConfig& cfg,
                      std::size_t count, std::uint64_t fuel) {
  auto it = suites().find(std::string(name));
  if (it == suites().end())
    throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
  SuiteReport rep;
  rep.name = it->first;
  for (std::size_t i = 0; i < count; ++i) {
    GenConfig c = cfg;
    c.seed = cfg.seed + i;
    TermGen g(c);
    std::optional<std::string> r;
    try {
      r = it->second(g, fuel);
    } catch (const std::exception& e) {
      r = std::string("exception: ") + e.what();
    }
    if (r && *r == kSkip)
      ++rep.skipped;
    else if (r)
      rep.failures.push_back({c.seed, *r}), ++rep.cases;
    else
      ++rep.cases;
  }
  return rep;
}

}  // namespace checkers
