// Copyright 2026 The checkers-lambda Authors.
// SPDX-License-Identifier: Apache-2.0

#include "checkers/separate.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace checkers {

std::string_view to_string(SeparationStatus s) {
  switch (s) {
    case SeparationStatus::Ok:
      return "ok";
    case SeparationStatus::NotApplicable:
      return "not-applicable";
    case SeparationStatus::FuelExceeded:
      return "fuel-exceeded";
    case SeparationStatus::VerificationFailed:
      return "verification-failed";
    case SeparationStatus::Unsupported:
      return "unsupported";
  }
  return "?";
}

Term tupler(std::size_t n) {
  return *combinator("T" + std::to_string(n));
}

Term selector(std::size_t n, std::size_t i) {
  if (i < 1 || i > n) throw std::invalid_argument("selector index out of range");
  return *combinator("P" + std::to_string(n) + "_" + std::to_string(i));
}

Term tuple(const std::vector<Term>& ts) {
  std::string x = fresh_name("x", [&](const std::string& s) {
    return std::any_of(ts.begin(), ts.end(),
                       [&](const Term& t) { return t.has_free(s); });
  });
  Term body = Term::var(x);
  for (const Term& t : ts) body = Term::app(body, t);
  return Term::lam(x, body);
}

std::pair<Outcome, Outcome> verify_separation(const Context& c, const Term& t,
                                              const Term& u,
                                              std::uint64_t fuel) {
  CContext w = lift_context(Player::White, c);
  return {evaluate_head(plug(w, lift(Player::Black, t)), fuel),
          evaluate_head(plug(w, lift(Player::Black, u)), fuel)};
}

std::pair<Trace, Trace> separation_transcript(const Context& c, const Term& t,
                                              const Term& u,
                                              std::uint64_t fuel) {
  CContext w = lift_context(Player::White, c);
  return {evaluate_head_trace(plug(w, lift(Player::Black, t)), fuel),
          evaluate_head_trace(plug(w, lift(Player::Black, u)), fuel)};
}

namespace {

using Names = std::set<std::string>;

void free_in_order(const Term& t, Names bound, Names& seen,
                   std::vector<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Var:
      if (!bound.count(t.name()) && seen.insert(t.name()).second)
        out.push_back(t.name());
      return;
    case TermKind::Lam: {
      auto [x, body] = t.unbind(bound);
      bound.insert(x);
      free_in_order(body, std::move(bound), seen, out);
      return;
    }
    case TermKind::App:
      free_in_order(t.fun(), bound, seen, out);
      free_in_order(t.arg(), bound, seen, out);
      return;
  }
}

// Free variables of t then u, each at its first occurrence.
std::vector<std::string> free_vars_ordered(const Term& t, const Term& u) {
  Names seen;
  std::vector<std::string> out;
  free_in_order(t, {}, seen, out);
  free_in_order(u, {}, seen, out);
  return out;
}

struct Level {
  std::vector<std::string> binders;
  std::string head;
  std::size_t k;
  unsigned j;
};

struct Walk {
  SeparationStatus status = SeparationStatus::Ok;
  std::string diagnostic;
  std::vector<Level> levels;
  std::optional<HnfView> left, right;
};

// Follows the path on both terms; nodes before its end must be spine
// equivalent. At the end, views are kept for whichever sides converge.
Walk walk(const Term& t, const Term& u, const Path& path, std::uint64_t fuel) {
  Walk w;
  Names taken = t.free_vars();
  for (const auto& x : u.free_vars()) taken.insert(x);
  Term a = t, b = u;
  for (std::size_t l = 0;; ++l) {
    OrdinaryOutcome oa = evaluate_head_ordinary(a, fuel);
    OrdinaryOutcome ob = evaluate_head_ordinary(b, fuel);
    if (l == path.length()) {
      if (oa.normal() && ob.normal()) {
        auto [x, y] = view_hnf_pair(oa.term, ob.term, taken);
        w.left = std::move(x);
        w.right = std::move(y);
      } else if (oa.normal()) {
        w.left = view_hnf(oa.term, taken);
      } else if (ob.normal()) {
        w.right = view_hnf(ob.term, taken);
      }
      return w;
    }
    if (!oa.normal() || !ob.normal()) {
      w.status = SeparationStatus::FuelExceeded;
      w.diagnostic = "no head normal form within fuel at depth " +
                     std::to_string(l) + " of the path";
      return w;
    }
    auto [x, y] = view_hnf_pair(oa.term, ob.term, taken);
    if (x.binders.size() != y.binders.size() || x.head != y.head ||
        x.args.size() != y.args.size()) {
      w.status = SeparationStatus::NotApplicable;
      w.diagnostic = "nodes differ before the end of the path";
      return w;
    }
    unsigned j = path.entries[l];
    if (j < 1 || j > x.args.size()) {
      w.status = SeparationStatus::NotApplicable;
      w.diagnostic = "path leaves the tree";
      return w;
    }
    w.levels.push_back({x.binders, x.head, x.args.size(), j});
    a = x.args[j - 1];
    b = y.args[j - 1];
  }
}

Separation fail(SeparationStatus s, std::string diag) {
  Separation r;
  r.status = s;
  r.diagnostic = std::move(diag);
  return r;
}

std::size_t gap(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

long excess(const HnfView& v) {
  return static_cast<long>(v.binders.size()) - static_cast<long>(v.args.size());
}

std::size_t max_prefix_arity(const Walk& w) {
  std::size_t k = 0;
  for (const Level& l : w.levels) k = std::max(k, l.k);
  return k;
}

// λz1..za.body for a closed body.
Term abstract_over(std::size_t a, const Term& body) {
  Term t = body;
  for (std::size_t i = a; i >= 1; --i)
    t = Term::lam("z" + std::to_string(i), t);
  return t;
}

Context build_context(const std::vector<std::string>& prefix_vars,
                      const std::vector<Term>& prefix_vals,
                      const std::vector<Term>& args) {
  Context c = Context::hole();
  for (auto it = prefix_vars.rbegin(); it != prefix_vars.rend(); ++it)
    c = Context::lam(*it, c);
  for (const Term& v : prefix_vals) c = Context::app_left(c, v);
  return c.applied(args);
}

}  // namespace

std::optional<std::size_t> choose_K(const Term& t, const Term& u,
                                    const Path& path, std::uint64_t fuel) {
  Walk w = walk(t, u, path, fuel);
  if (w.status == SeparationStatus::FuelExceeded) return std::nullopt;
  if (w.status != SeparationStatus::Ok) {
    // Still well defined: use what the walk saw.
    return max_prefix_arity(w) + 1;
  }
  if (!w.left || !w.right) return std::nullopt;
  std::size_t k = std::max({max_prefix_arity(w), w.left->args.size(),
                            w.right->args.size()});
  return k + gap(w.left->binders.size(), w.right->binders.size()) + 1;
}

Separation interaction_bohm_out(const Term& t, const Term& u,
                                const DiffWitness& witness, std::uint64_t fuel,
                                std::optional<std::size_t> K_override) {
  if (witness.kind != DiffKind::SpineArityMismatch)
    return fail(SeparationStatus::NotApplicable,
                "the Böhm-out needs a spine arity mismatch");
  Walk w = walk(t, u, witness.path, fuel);
  if (w.status != SeparationStatus::Ok) return fail(w.status, w.diagnostic);
  if (!w.left || !w.right)
    return fail(SeparationStatus::FuelExceeded,
                "no head normal form within fuel at the end of the path");
  const HnfView& L = *w.left;
  const HnfView& R = *w.right;
  if (L.head != R.head || excess(L) != excess(R) ||
      L.binders.size() == R.binders.size())
    return fail(SeparationStatus::NotApplicable,
                "the nodes at the path do not differ by η alone");
  std::size_t m = gap(L.binders.size(), R.binders.size());
  std::size_t n = std::min(L.binders.size(), R.binders.size());
  std::size_t need = std::max({max_prefix_arity(w), L.args.size(),
                               R.args.size()});
  std::size_t K = K_override ? *K_override : need + m + 1;
  if (K < need)
    return fail(SeparationStatus::NotApplicable,
                "K must be at least " + std::to_string(need));

  Term tk = tupler(K);
  std::vector<Term> args;
  std::uint64_t shared = 0;
  for (const Level& l : w.levels) {
    args.insert(args.end(), l.binders.size() + K - l.k, tk);
    args.push_back(selector(K, l.j));
    shared += l.binders.size() + l.k;
  }
  bool bound = std::find(L.binders.begin(), L.binders.begin() + n, L.head) !=
               L.binders.begin() + n;
  if (bound) {
    args.insert(args.end(), n, tk);
    shared += n;
  }
  std::vector<std::string> ys = free_vars_ordered(t, u);
  Context c = build_context(ys, std::vector<Term>(ys.size(), tk), args);

  auto [ol, orr] = verify_separation(c, t, u, fuel);
  SeparationResult res{c, K, ol, orr, shared + L.args.size(),
                       shared + R.args.size()};
  Separation out;
  if (!ol.normal() || !orr.normal()) {
    out.status = SeparationStatus::FuelExceeded;
    out.diagnostic = "the plugged terms did not converge within fuel";
  } else if (ol.k != *res.expected_left || orr.k != *res.expected_right) {
    out.status = SeparationStatus::VerificationFailed;
    out.diagnostic = "interaction counts " + std::to_string(ol.k) + " and " +
                     std::to_string(orr.k) + ", predicted " +
                     std::to_string(*res.expected_left) + " and " +
                     std::to_string(*res.expected_right);
  } else {
    out.status = SeparationStatus::Ok;
  }
  out.result = std::move(res);
  return out;
}

Separation classic_separate(const Term& t, const Term& u,
                            const DiffWitness& witness, std::uint64_t fuel) {
  if (witness.kind == DiffKind::SpineArityMismatch)
    return fail(SeparationStatus::NotApplicable,
                "η-differences are not separable by termination");
  Walk w = walk(t, u, witness.path, fuel);
  if (w.status != SeparationStatus::Ok) return fail(w.status, w.diagnostic);

  bool asym = witness.kind == DiffKind::DivergenceAsymmetry;
  const std::optional<HnfView>& conv =
      asym ? (witness.side == Side::Right ? w.left : w.right) : w.left;
  if (!conv || (!asym && !w.right))
    return fail(SeparationStatus::FuelExceeded,
                "no head normal form within fuel at the end of the path");
  std::size_t K = max_prefix_arity(w);
  if (w.left) K = std::max(K, w.left->args.size());
  if (w.right) K = std::max(K, w.right->args.size());
  Term tk = tupler(K);
  Term I = *combinator("I");
  Term Om = *combinator("Om");

  std::map<std::string, Term> value;
  std::string collision;
  auto assign = [&](const std::string& x, const Term& v) {
    auto [it, fresh] = value.emplace(x, v);
    if (!fresh && !(it->second == v) && collision.empty()) collision = x;
  };
  for (const Level& l : w.levels) assign(l.head, tk);

  std::vector<Term> final_args;
  // Which side should converge once the context is applied.
  Side converging = Side::Left;
  if (asym) {
    converging = witness.side == Side::Right ? Side::Left : Side::Right;
    const HnfView& h = *conv;
    bool own = std::find(h.binders.begin(), h.binders.end(), h.head) !=
               h.binders.end();
    if (!own && !value.count(h.head))
      assign(h.head, abstract_over(h.args.size(), I));
  } else {
    const HnfView& L = *w.left;
    const HnfView& R = *w.right;
    std::size_t N = std::max(L.binders.size(), R.binders.size());
    std::size_t aL = L.args.size() + N - L.binders.size();
    std::size_t aR = R.args.size() + N - R.binders.size();
    bool extra_arg = false;
    if (L.head != R.head) {
      assign(L.head, abstract_over(aL, I));
      assign(R.head, abstract_over(aR, Om));
    } else {
      // The side applying the head to more arguments reaches the final Ω.
      std::size_t big = std::max(aL, aR);
      assign(L.head, selector(big + 1, big + 1));
      converging = aL < aR ? Side::Left : Side::Right;
      extra_arg = true;
    }
    const HnfView& longer = L.binders.size() >= R.binders.size() ? L : R;
    for (std::size_t i = 0; i < N; ++i) {
      auto it = value.find(longer.binders[i]);
      final_args.push_back(it == value.end() ? I : it->second);
    }
    if (extra_arg) final_args.push_back(Om);
  }
  if (!collision.empty())
    return fail(SeparationStatus::Unsupported,
                "variable " + collision +
                    " would need two different substitutes; this needs more "
                    "than one tupler layer");

  std::vector<Term> args;
  for (const Level& l : w.levels) {
    for (const auto& b : l.binders) {
      auto it = value.find(b);
      args.push_back(it == value.end() ? I : it->second);
    }
    args.insert(args.end(), K - l.k, I);
    args.push_back(selector(K, l.j));
  }
  args.insert(args.end(), final_args.begin(), final_args.end());
  std::vector<std::string> ys;
  std::vector<Term> vals;
  for (const auto& y : free_vars_ordered(t, u)) {
    auto it = value.find(y);
    if (it == value.end()) continue;
    ys.push_back(y);
    vals.push_back(it->second);
  }
  Context c = build_context(ys, vals, args);

  auto [ol, orr] = verify_separation(c, t, u, fuel);
  SeparationResult res{c, K, ol, orr, std::nullopt, std::nullopt};
  const Outcome& good = converging == Side::Left ? ol : orr;
  const Outcome& bad = converging == Side::Left ? orr : ol;
  Separation out;
  if (!good.normal()) {
    out.status = SeparationStatus::FuelExceeded;
    out.diagnostic = "the converging side did not reach an hnf within fuel";
  } else if (bad.normal()) {
    out.status = SeparationStatus::VerificationFailed;
    out.diagnostic = "both sides converge";
  } else {
    out.status = SeparationStatus::Ok;
  }
  out.result = std::move(res);
  return out;
}

Separation separate(const Term& t, const Term& u, const BohmOptions& opts) {
  auto w = find_difference(t, u, opts, DiffMode::Preorder);
  if (!w) w = find_difference(t, u, opts, DiffMode::Any);
  if (!w)
    return fail(SeparationStatus::NotApplicable,
                "no definite Böhm-tree difference within budget");
  if (w->kind == DiffKind::SpineArityMismatch)
    return interaction_bohm_out(t, u, *w, opts.fuel);
  return classic_separate(t, u, *w, opts.fuel);
}

}  // namespace checkers
