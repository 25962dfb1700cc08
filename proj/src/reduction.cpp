// Copyright 2026 The checkers-lambda Authors.
// SPDX-License-Identifier: Apache-2.0

#include "checkers/reduction.hpp"

#include <cstdlib>
#include <string>
#include <unordered_map>

#include "node.hpp"

namespace checkers {

using detail::Kind;
using detail::NodePtr;

std::string_view to_string(StepKind k) {
  return k == StepKind::Silent ? "silent" : "interaction";
}

namespace {

StepKind kind_of(std::uint8_t lam_tag, std::uint8_t app_tag) {
  return lam_tag == app_tag ? StepKind::Silent : StepKind::Interaction;
}

struct NodeStep {
  NodePtr term;
  StepKind kind;
};

std::optional<NodeStep> head_step_node(const NodePtr& n) {
  if (n->kind == Kind::Lam) {
    auto r = head_step_node(n->a);
    if (!r) return std::nullopt;
    return NodeStep{detail::mk_lam(n->tag, n->name, r->term), r->kind};
  }
  std::vector<const detail::Node*> apps;
  const detail::Node* cur = n.get();
  while (cur->kind == Kind::App) {
    apps.push_back(cur);
    cur = cur->a.get();
  }
  if (cur->kind != Kind::Lam || apps.empty()) return std::nullopt;
  const detail::Node* redex = apps.back();
  NodePtr result = detail::instantiate(redex->a->a, redex->b);
  StepKind kind = kind_of(redex->a->tag, redex->tag);
  for (std::size_t i = apps.size() - 1; i-- > 0;)
    result = detail::mk_app(apps[i]->tag, result, apps[i]->b);
  return NodeStep{result, kind};
}

bool is_hnf_node(const NodePtr& n) {
  const detail::Node* cur = n.get();
  while (cur->kind == Kind::Lam) cur = cur->a.get();
  while (cur->kind == Kind::App) cur = cur->a.get();
  return cur->kind == Kind::Free || cur->kind == Kind::Bound;
}

// Head evaluation as a machine over (binder prefix, head, argument stack).
// Arguments stay at the prefix depth because the prefix only grows when the
// stack is empty.
class Machine {
 public:
  explicit Machine(const NodePtr& t) : head_(t) {}

  // One beta step, walking the spine as needed. False at an hnf.
  bool step(StepKind* kind) {
    for (;;) {
      switch (head_->kind) {
        case Kind::App:
          stack_.push_back({head_->tag, head_->b});
          head_ = head_->a;
          continue;
        case Kind::Lam:
          if (stack_.empty()) {
            prefix_.push_back({head_->tag, head_->name});
            head_ = head_->a;
            continue;
          } else {
            Arg a = stack_.back();
            stack_.pop_back();
            *kind = kind_of(head_->tag, a.tag);
            head_ = detail::instantiate(head_->a, a.node);
            return true;
          }
        default:
          return false;
      }
    }
  }

  NodePtr state() const {
    NodePtr t = head_;
    for (std::size_t i = stack_.size(); i-- > 0;)
      t = detail::mk_app(stack_[i].tag, t, stack_[i].node);
    for (std::size_t i = prefix_.size(); i-- > 0;)
      t = detail::mk_lam(prefix_[i].tag, prefix_[i].name, t);
    return t;
  }

 private:
  struct Arg {
    std::uint8_t tag;
    NodePtr node;
  };
  struct Binder {
    std::uint8_t tag;
    std::string name;
  };
  NodePtr head_;
  std::vector<Arg> stack_;
  std::vector<Binder> prefix_;
};

struct RawOutcome {
  Status status;
  NodePtr term;
  std::uint64_t k = 0, n = 0;
  bool cycle = false;
};

RawOutcome run(const NodePtr& t, const EvalOptions& opts) {
  Machine m(t);
  RawOutcome out{Status::FuelExhausted, nullptr};
  std::unordered_multimap<std::size_t, NodePtr> seen;
  if (opts.detect_loops) {
    NodePtr s = m.state();
    seen.emplace(s->hash, s);
  }
  for (;;) {
    if (out.n >= opts.fuel) {
      // Fuel is spent; still report Normal if no step remains.
      StepKind kind;
      Machine probe = m;
      if (!probe.step(&kind)) out.status = Status::Normal;
      out.term = m.state();
      return out;
    }
    StepKind kind;
    if (!m.step(&kind)) {
      out.status = Status::Normal;
      out.term = m.state();
      return out;
    }
    ++out.n;
    if (kind == StepKind::Interaction) ++out.k;
    if (opts.detect_loops) {
      NodePtr s = m.state();
      auto [lo, hi] = seen.equal_range(s->hash);
      for (auto it = lo; it != hi; ++it) {
        if (detail::equal(it->second, s)) {
          out.term = s;
          out.cycle = true;
          return out;
        }
      }
      seen.emplace(s->hash, s);
    }
  }
}

void collect_steps(const NodePtr& n, Position& pos,
                   std::vector<std::pair<NodeStep, Position>>& out) {
  switch (n->kind) {
    case Kind::Lam: {
      std::vector<std::pair<NodeStep, Position>> inner;
      pos.push_back(0);
      collect_steps(n->a, pos, inner);
      pos.pop_back();
      for (auto& [s, p] : inner)
        out.push_back({{detail::mk_lam(n->tag, n->name, s.term), s.kind}, p});
      return;
    }
    case Kind::App: {
      if (n->a->kind == Kind::Lam)
        out.push_back({{detail::instantiate(n->a->a, n->b),
                        kind_of(n->a->tag, n->tag)},
                       pos});
      std::vector<std::pair<NodeStep, Position>> left, right;
      pos.push_back(0);
      collect_steps(n->a, pos, left);
      pos.back() = 1;
      collect_steps(n->b, pos, right);
      pos.pop_back();
      for (auto& [s, p] : left)
        out.push_back({{detail::mk_app(n->tag, s.term, n->b), s.kind}, p});
      for (auto& [s, p] : right)
        out.push_back({{detail::mk_app(n->tag, n->a, s.term), s.kind}, p});
      return;
    }
    default:
      return;
  }
}

std::optional<NodeStep> step_at_node(const NodePtr& n, const Position& pos,
                                     std::size_t i) {
  if (i == pos.size()) {
    if (n->kind != Kind::App || n->a->kind != Kind::Lam) return std::nullopt;
    return NodeStep{detail::instantiate(n->a->a, n->b),
                    kind_of(n->a->tag, n->tag)};
  }
  if (n->kind == Kind::Lam && pos[i] == 0) {
    auto r = step_at_node(n->a, pos, i + 1);
    if (!r) return std::nullopt;
    return NodeStep{detail::mk_lam(n->tag, n->name, r->term), r->kind};
  }
  if (n->kind == Kind::App) {
    auto r = step_at_node(pos[i] == 0 ? n->a : n->b, pos, i + 1);
    if (!r) return std::nullopt;
    NodePtr t = pos[i] == 0 ? detail::mk_app(n->tag, r->term, n->b)
                            : detail::mk_app(n->tag, n->a, r->term);
    return NodeStep{t, r->kind};
  }
  return std::nullopt;
}

}  // namespace

std::optional<Step> root_step(const CTerm& ct) {
  const NodePtr& n = ct.node();
  if (n->kind != Kind::App || n->a->kind != Kind::Lam) return std::nullopt;
  return Step{CTerm(detail::instantiate(n->a->a, n->b)),
              kind_of(n->a->tag, n->tag)};
}

bool is_hnf(const CTerm& ct) { return is_hnf_node(ct.node()); }
bool is_hnf(const Term& t) { return is_hnf_node(t.node()); }

std::optional<HeadSplit> head_decompose(const CTerm& ct) {
  if (is_hnf(ct)) return std::nullopt;
  std::set<std::string> avoid = ct.free_vars();
  std::vector<std::pair<Player, std::string>> prefix;
  CTerm cur = ct;
  while (cur.is_lam()) {
    Player p = cur.player();
    auto [x, body] = cur.unbind(avoid);
    avoid.insert(x);
    prefix.push_back({p, x});
    cur = body;
  }
  std::vector<std::pair<Player, CTerm>> args;
  while (cur.is_app()) {
    args.push_back({cur.player(), cur.arg()});
    cur = cur.fun();
  }
  // cur is an abstraction and args is non-empty, innermost last.
  CTerm redex = CTerm::app(args.back().first, cur, args.back().second);
  CContext c = CContext::hole();
  for (std::size_t i = args.size() - 1; i-- > 0;)
    c = CContext::app_left(args[i].first, c, args[i].second);
  for (std::size_t i = prefix.size(); i-- > 0;)
    c = CContext::lam(prefix[i].first, prefix[i].second, c);
  return HeadSplit{c, redex};
}

std::optional<Step> head_step(const CTerm& ct) {
  auto r = head_step_node(ct.node());
  if (!r) return std::nullopt;
  return Step{CTerm(r->term), r->kind};
}

std::optional<Position> head_position(const CTerm& ct) {
  if (is_hnf(ct)) return std::nullopt;
  Position pos;
  const detail::Node* cur = ct.node().get();
  while (cur->kind == Kind::Lam) {
    pos.push_back(0);
    cur = cur->a.get();
  }
  std::size_t depth = 0;
  for (const detail::Node* c = cur; c->kind == Kind::App; c = c->a.get())
    ++depth;
  // The redex is the innermost application of the spine.
  pos.insert(pos.end(), depth - 1, 0);
  return pos;
}

std::uint64_t default_fuel() {
  if (const char* env = std::getenv("CHECKERS_FUEL")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return kDefaultFuel;
}

Outcome evaluate_head(const CTerm& ct, std::uint64_t fuel) {
  return evaluate_head(ct, EvalOptions{fuel, false});
}

Outcome evaluate_head(const CTerm& ct, const EvalOptions& opts) {
  RawOutcome r = run(ct.node(), opts);
  return Outcome{r.status, CTerm(r.term), r.k, r.n, r.cycle};
}

Trace evaluate_head_trace(const CTerm& ct, std::uint64_t fuel) {
  Trace tr{Outcome{Status::FuelExhausted, ct}, {}};
  CTerm cur = ct;
  for (;;) {
    auto s = head_step(cur);
    if (!s) {
      tr.outcome.status = Status::Normal;
      break;
    }
    if (tr.outcome.n >= fuel) break;
    ++tr.outcome.n;
    if (s->kind == StepKind::Interaction) ++tr.outcome.k;
    cur = s->term;
    tr.steps.push_back(*s);
  }
  tr.outcome.term = cur;
  return tr;
}

std::optional<Term> head_step_ordinary(const Term& t) {
  auto r = head_step_node(t.node());
  if (!r) return std::nullopt;
  return Term(r->term);
}

OrdinaryOutcome evaluate_head_ordinary(const Term& t, std::uint64_t fuel) {
  return evaluate_head_ordinary(t, EvalOptions{fuel, false});
}

OrdinaryOutcome evaluate_head_ordinary(const Term& t, const EvalOptions& opts) {
  RawOutcome r = run(t.node(), opts);
  return OrdinaryOutcome{r.status, Term(r.term), r.k, r.n, r.cycle};
}

std::vector<PositionedStep> any_beta_steps(const CTerm& ct) {
  std::vector<std::pair<NodeStep, Position>> raw;
  Position pos;
  collect_steps(ct.node(), pos, raw);
  std::vector<PositionedStep> out;
  out.reserve(raw.size());
  for (auto& [s, p] : raw) out.push_back({CTerm(s.term), s.kind, p});
  return out;
}

std::optional<Step> step_at(const CTerm& ct, const Position& pos) {
  auto r = step_at_node(ct.node(), pos, 0);
  if (!r) return std::nullopt;
  return Step{CTerm(r->term), r->kind};
}

}  // namespace checkers
