// Copyright 2026 The checkers-lambda Authors.
// SPDX-License-Identifier: Apache-2.0

#include "checkers/bohm.hpp"

#include <deque>
#include <map>
#include <stdexcept>
#include <utility>

namespace checkers {

std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::Holds:
      return "holds";
    case Tri::Fails:
      return "fails";
    case Tri::Unknown:
      return "unknown";
  }
  return "?";
}

std::string_view to_string(DiffKind k) {
  switch (k) {
    case DiffKind::HeadMismatch:
      return "head-mismatch";
    case DiffKind::SpineArityMismatch:
      return "spine-arity-mismatch";
    case DiffKind::DivergenceAsymmetry:
      return "divergence-asymmetry";
  }
  return "?";
}

std::string_view to_string(Side s) {
  return s == Side::Left ? "left" : "right";
}

BohmApprox BohmApprox::node(std::vector<std::string> binders, std::string head,
                            std::vector<BohmApprox> children) {
  BohmApprox a;
  a.kind = Kind::Node;
  a.binders = std::move(binders);
  a.head = std::move(head);
  a.children = std::move(children);
  return a;
}

BohmApprox BohmApprox::bot(bool certified) {
  BohmApprox a;
  a.kind = Kind::Bot;
  a.certified = certified;
  return a;
}

BohmApprox BohmApprox::cut() { return BohmApprox{}; }

namespace {

using Names = std::set<std::string>;
using Scope = std::map<std::string, std::size_t>;

struct Evaluated {
  bool hnf;
  Term term;
  bool certified;
};

Evaluated eval(const Term& t, const BohmOptions& o) {
  OrdinaryOutcome r =
      evaluate_head_ordinary(t, EvalOptions{o.fuel, o.detect_loops});
  return {r.normal(), r.term, r.cycle};
}

bool definite(const Evaluated& e, const BohmOptions& o) {
  return e.certified || o.assume_divergence;
}

std::string pick(const std::string& hint, const Names& taken, const Term& a,
                 const Term* b = nullptr) {
  return fresh_name(hint, [&](const std::string& s) {
    return taken.count(s) > 0 || a.has_free(s) || (b && b->has_free(s));
  });
}

void read_spine(Term t, HnfView& v) {
  std::vector<Term> rev;
  while (t.is_app()) {
    rev.push_back(t.arg());
    t = t.fun();
  }
  if (!t.is_var()) throw std::invalid_argument("not a head normal form");
  v.head = t.name();
  v.args.assign(rev.rbegin(), rev.rend());
}

// Opens two hnfs side by side so that the i-th binders share a name.
std::pair<HnfView, HnfView> view_pair(Term a, Term b, Names& taken) {
  HnfView l, r;
  while (a.is_lam() || b.is_lam()) {
    const Term& src = a.is_lam() ? a : b;
    std::string x = pick(src.name(), taken, a, &b);
    taken.insert(x);
    if (a.is_lam()) {
      a = a.open(x);
      l.binders.push_back(x);
    }
    if (b.is_lam()) {
      b = b.open(x);
      r.binders.push_back(x);
    }
  }
  read_spine(a, l);
  read_spine(b, r);
  return {std::move(l), std::move(r)};
}

bool same_spine(const HnfView& l, const HnfView& r) {
  return l.binders.size() == r.binders.size() && l.head == r.head &&
         l.args.size() == r.args.size();
}

Tri conj(Tri acc, Tri next) {
  if (acc == Tri::Fails || next == Tri::Fails) return Tri::Fails;
  if (acc == Tri::Unknown || next == Tri::Unknown) return Tri::Unknown;
  return Tri::Holds;
}

BohmApprox approx(const Term& t, std::size_t depth, const BohmOptions& o,
                  Names taken) {
  if (depth == 0) return BohmApprox::cut();
  Evaluated e = eval(t, o);
  if (!e.hnf) return BohmApprox::bot(e.certified);
  HnfView v = view_hnf(e.term, taken);
  std::vector<BohmApprox> kids;
  kids.reserve(v.args.size());
  for (const Term& a : v.args) kids.push_back(approx(a, depth - 1, o, taken));
  return BohmApprox::node(std::move(v.binders), std::move(v.head),
                          std::move(kids));
}

// Binders are replaced by their nesting level so that names do not matter.
std::string resolve(const std::string& x, const Scope& s) {
  auto it = s.find(x);
  return it == s.end() ? "free:" + x : "bound:" + std::to_string(it->second);
}

// Keeps the level counter monotone even when names shadow.
Scope extend_fresh(const Scope& s, const std::vector<std::string>& binders,
                   std::size_t& counter) {
  Scope out = s;
  for (const auto& b : binders) out[b] = counter++;
  return out;
}

bool alpha_rec(const BohmApprox& a, const BohmApprox& b, const Scope& sa,
               const Scope& sb, std::size_t counter) {
  if (a.kind != b.kind) return false;
  if (!a.is_node()) return true;
  if (a.binders.size() != b.binders.size() ||
      a.children.size() != b.children.size())
    return false;
  std::size_t ca = counter, cb = counter;
  Scope na = extend_fresh(sa, a.binders, ca);
  Scope nb = extend_fresh(sb, b.binders, cb);
  if (resolve(a.head, na) != resolve(b.head, nb)) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!alpha_rec(a.children[i], b.children[i], na, nb, ca)) return false;
  return true;
}

Tri le_rec(const BohmApprox& a, const BohmApprox& b, const Scope& sa,
           const Scope& sb, std::size_t counter, bool assume) {
  if (a.is_cut()) return Tri::Unknown;
  if (a.is_bot()) return a.certified || assume ? Tri::Holds : Tri::Unknown;
  if (b.is_cut()) return Tri::Unknown;
  if (b.is_bot()) return b.certified || assume ? Tri::Fails : Tri::Unknown;
  if (a.binders.size() != b.binders.size() ||
      a.children.size() != b.children.size())
    return Tri::Fails;
  std::size_t ca = counter, cb = counter;
  Scope na = extend_fresh(sa, a.binders, ca);
  Scope nb = extend_fresh(sb, b.binders, cb);
  if (resolve(a.head, na) != resolve(b.head, nb)) return Tri::Fails;
  Tri acc = Tri::Holds;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    acc = conj(acc, le_rec(a.children[i], b.children[i], na, nb, ca, assume));
    if (acc == Tri::Fails) return acc;
  }
  return acc;
}

void render_rec(const BohmApprox& a, std::size_t indent, std::string& out) {
  out.append(indent * 2, ' ');
  switch (a.kind) {
    case BohmApprox::Kind::Cut:
      out += "...";
      break;
    case BohmApprox::Kind::Bot:
      out += "_|_";
      break;
    case BohmApprox::Kind::Node:
      if (!a.binders.empty()) {
        out += "λ";
        for (std::size_t i = 0; i < a.binders.size(); ++i) {
          if (i) out += ' ';
          out += a.binders[i];
        }
        out += '.';
      }
      out += a.head;
      break;
  }
  out += '\n';
  for (const auto& c : a.children) render_rec(c, indent + 1, out);
}

Tri le_terms(const Term& t, const Term& u, std::size_t depth,
             const BohmOptions& o, const Names& taken, bool eta,
             std::optional<std::size_t> budget) {
  if (depth == 0) return Tri::Unknown;
  Evaluated et = eval(t, o);
  if (!et.hnf) return definite(et, o) ? Tri::Holds : Tri::Unknown;
  Evaluated eu = eval(u, o);
  if (!eu.hnf) return definite(eu, o) ? Tri::Fails : Tri::Unknown;
  Names inner = taken;
  auto [l, r] = view_pair(et.term, eu.term, inner);
  if (eta) {
    auto excess = [](const HnfView& v) {
      return static_cast<long>(v.binders.size()) -
             static_cast<long>(v.args.size());
    };
    if (excess(l) != excess(r) || l.head != r.head) return Tri::Fails;
    std::size_t gap = l.binders.size() > r.binders.size()
                          ? l.binders.size() - r.binders.size()
                          : r.binders.size() - l.binders.size();
    if (budget && gap > *budget) return Tri::Unknown;
    // η-expand the shorter spine with the longer one's extra binders.
    HnfView& shorter = l.binders.size() < r.binders.size() ? l : r;
    const HnfView& longer = &shorter == &l ? r : l;
    for (std::size_t i = shorter.binders.size(); i < longer.binders.size();
         ++i)
      shorter.args.push_back(Term::var(longer.binders[i]));
  } else if (!same_spine(l, r)) {
    return Tri::Fails;
  }
  Tri acc = Tri::Holds;
  for (std::size_t i = 0; i < l.args.size(); ++i) {
    acc = conj(acc,
               le_terms(l.args[i], r.args[i], depth - 1, o, inner, eta, budget));
    if (acc == Tri::Fails) return acc;
  }
  return acc;
}

Names free_of(const Term& t, const Term& u) {
  Names n = t.free_vars();
  Names m = u.free_vars();
  n.insert(m.begin(), m.end());
  return n;
}

}  // namespace

bool alpha_equal(const BohmApprox& a, const BohmApprox& b) {
  return alpha_rec(a, b, {}, {}, 0);
}

std::string render(const BohmApprox& a) {
  std::string out;
  render_rec(a, 0, out);
  return out;
}

HnfView view_hnf(const Term& h, Names& taken) {
  HnfView v;
  Term t = h;
  while (t.is_lam()) {
    std::string x = pick(t.name(), taken, t);
    taken.insert(x);
    t = t.open(x);
    v.binders.push_back(x);
  }
  read_spine(t, v);
  return v;
}

std::pair<HnfView, HnfView> view_hnf_pair(const Term& h1, const Term& h2,
                                          Names& taken) {
  return view_pair(h1, h2, taken);
}

BohmApprox bohm_approx(const Term& t, const BohmOptions& opts) {
  return approx(t, opts.depth, opts, t.free_vars());
}

BohmApprox bohm_approx(const Term& t, std::size_t depth, std::uint64_t fuel) {
  BohmOptions o;
  o.depth = depth;
  o.fuel = fuel;
  return bohm_approx(t, o);
}

NodeAt node_at_path(const Term& t, const Path& path, const BohmOptions& opts) {
  Names taken = t.free_vars();
  Term cur = t;
  for (std::size_t step = 0;; ++step) {
    Evaluated e = eval(cur, opts);
    if (!e.hnf)
      return {definite(e, opts) ? NodeStatus::Diverges
                                : NodeStatus::FuelExhausted,
              std::nullopt};
    if (step == path.length()) return {NodeStatus::Found, e.term};
    HnfView v = view_hnf(e.term, taken);
    unsigned i = path.entries[step];
    if (i == 0 || i > v.args.size()) return {NodeStatus::Undefined, std::nullopt};
    cur = v.args[i - 1];
  }
}

bool spine_eq(const Term& h1, const Term& h2) {
  if (!is_hnf(h1) || !is_hnf(h2))
    throw std::invalid_argument("spine_eq expects head normal forms");
  Names taken = free_of(h1, h2);
  auto [l, r] = view_pair(h1, h2, taken);
  return same_spine(l, r);
}

Tri bohm_le(const Term& t, const Term& u, const BohmOptions& opts) {
  return le_terms(t, u, opts.depth, opts, free_of(t, u), false, std::nullopt);
}

Tri bohm_le_eta(const Term& t, const Term& u, const BohmOptions& opts,
                std::optional<std::size_t> eta_budget) {
  return le_terms(t, u, opts.depth, opts, free_of(t, u), true, eta_budget);
}

Tri le_bot(const BohmApprox& a, const BohmApprox& b, bool assume_divergence) {
  return le_rec(a, b, {}, {}, 0, assume_divergence);
}

std::optional<DiffWitness> find_difference(const Term& t, const Term& u,
                                           const BohmOptions& opts,
                                           DiffMode mode) {
  struct Item {
    Path path;
    Term t, u;
    Names taken;
  };
  std::deque<Item> queue;
  queue.push_back({Path{}, t, u, free_of(t, u)});
  while (!queue.empty()) {
    Item it = std::move(queue.front());
    queue.pop_front();
    Evaluated et = eval(it.t, opts);
    if (!et.hnf && mode == DiffMode::Preorder) continue;
    Evaluated eu = eval(it.u, opts);
    if (!et.hnf) {
      if (eu.hnf && definite(et, opts)) {
        DiffWitness w;
        w.path = it.path;
        w.kind = DiffKind::DivergenceAsymmetry;
        w.side = Side::Left;
        w.hnf_right = eu.term;
        return w;
      }
      continue;
    }
    if (!eu.hnf) {
      if (definite(eu, opts)) {
        DiffWitness w;
        w.path = it.path;
        w.kind = DiffKind::DivergenceAsymmetry;
        w.side = Side::Right;
        w.hnf_left = et.term;
        return w;
      }
      continue;
    }
    Names inner = it.taken;
    auto [l, r] = view_pair(et.term, eu.term, inner);
    if (same_spine(l, r)) {
      if (it.path.length() + 1 < opts.depth)
        for (std::size_t i = 0; i < l.args.size(); ++i)
          queue.push_back({it.path.child(static_cast<unsigned>(i + 1)),
                           l.args[i], r.args[i], inner});
      continue;
    }
    DiffWitness w;
    w.path = it.path;
    w.hnf_left = et.term;
    w.hnf_right = eu.term;
    long el = static_cast<long>(l.binders.size()) -
              static_cast<long>(l.args.size());
    long er = static_cast<long>(r.binders.size()) -
              static_cast<long>(r.args.size());
    if (l.head == r.head && el == er) {
      w.kind = DiffKind::SpineArityMismatch;
      bool left_longer = l.binders.size() > r.binders.size();
      w.side = left_longer ? Side::Left : Side::Right;
      w.extra = left_longer ? l.binders.size() - r.binders.size()
                            : r.binders.size() - l.binders.size();
    } else {
      w.kind = DiffKind::HeadMismatch;
    }
    return w;
  }
  return std::nullopt;
}

}  // namespace checkers
