// Copyright 2026 The checkers-lambda Authors.
// SPDX-License-Identifier: Apache-2.0

#include "node.hpp"

#include <algorithm>
#include <functional>

namespace checkers::detail {
namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t base_hash(Kind k, std::uint8_t tag) {
  return mix(static_cast<std::size_t>(k) * 0x100000001b3ULL, tag);
}

}  // namespace

NodePtr mk_free(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Free;
  n->hash = mix(base_hash(Kind::Free, 0), std::hash<std::string>{}(name));
  n->name = std::move(name);
  return n;
}

NodePtr mk_bound(std::uint32_t index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Bound;
  n->index = index;
  n->loose = index + 1;
  n->hash = mix(base_hash(Kind::Bound, 0), index);
  return n;
}

NodePtr mk_lam(std::uint8_t tag, std::string hint, NodePtr body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Lam;
  n->tag = tag;
  n->loose = body->loose > 0 ? body->loose - 1 : 0;
  n->holes = body->holes;
  n->size = body->size + 1;
  n->hash = mix(base_hash(Kind::Lam, tag), body->hash);
  n->name = std::move(hint);
  n->a = std::move(body);
  return n;
}

NodePtr mk_app(std::uint8_t tag, NodePtr fun, NodePtr arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  n->tag = tag;
  n->loose = std::max(fun->loose, arg->loose);
  n->holes = fun->holes + arg->holes;
  n->size = fun->size + arg->size + 1;
  n->hash = mix(mix(base_hash(Kind::App, tag), fun->hash), arg->hash);
  n->a = std::move(fun);
  n->b = std::move(arg);
  return n;
}

NodePtr mk_hole() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Hole;
  n->holes = 1;
  n->hash = base_hash(Kind::Hole, 0);
  return n;
}

bool equal(const NodePtr& x, const NodePtr& y) {
  if (x == y) return true;
  if (x->hash != y->hash || x->kind != y->kind || x->tag != y->tag ||
      x->size != y->size)
    return false;
  switch (x->kind) {
    case Kind::Free:
      return x->name == y->name;
    case Kind::Bound:
      return x->index == y->index;
    case Kind::Hole:
      return true;
    case Kind::Lam:
      return equal(x->a, y->a);
    case Kind::App:
      return equal(x->a, y->a) && equal(x->b, y->b);
  }
  return false;
}

NodePtr shift(const NodePtr& t, std::uint32_t d, std::uint32_t cutoff) {
  if (d == 0 || t->loose <= cutoff) return t;
  switch (t->kind) {
    case Kind::Bound:
      return mk_bound(t->index + d);
    case Kind::Lam:
      return mk_lam(t->tag, t->name, shift(t->a, d, cutoff + 1));
    case Kind::App:
      return mk_app(t->tag, shift(t->a, d, cutoff), shift(t->b, d, cutoff));
    default:
      return t;
  }
}

namespace {

NodePtr inst(const NodePtr& t, const NodePtr& u, std::uint32_t depth) {
  if (t->loose <= depth) return t;
  switch (t->kind) {
    case Kind::Bound:
      if (t->index == depth) return shift(u, depth);
      return mk_bound(t->index - 1);
    case Kind::Lam:
      return mk_lam(t->tag, t->name, inst(t->a, u, depth + 1));
    case Kind::App:
      return mk_app(t->tag, inst(t->a, u, depth), inst(t->b, u, depth));
    default:
      return t;
  }
}

NodePtr abst(const NodePtr& t, const std::string& name, std::uint32_t depth) {
  switch (t->kind) {
    case Kind::Free:
      return t->name == name ? mk_bound(depth) : t;
    case Kind::Bound:
      return t->index >= depth ? mk_bound(t->index + 1) : t;
    case Kind::Lam:
      return mk_lam(t->tag, t->name, abst(t->a, name, depth + 1));
    case Kind::App:
      return mk_app(t->tag, abst(t->a, name, depth), abst(t->b, name, depth));
    case Kind::Hole:
      return t;
  }
  return t;
}

}  // namespace

NodePtr instantiate(const NodePtr& body, const NodePtr& u) {
  return inst(body, u, 0);
}

NodePtr abstract(const NodePtr& t, const std::string& name) {
  return abst(t, name, 0);
}

NodePtr replace_free(const NodePtr& t, const std::string& x, const NodePtr& u) {
  switch (t->kind) {
    case Kind::Free:
      return t->name == x ? u : t;
    case Kind::Lam: {
      NodePtr body = replace_free(t->a, x, u);
      return body == t->a ? t : mk_lam(t->tag, t->name, body);
    }
    case Kind::App: {
      NodePtr f = replace_free(t->a, x, u);
      NodePtr a = replace_free(t->b, x, u);
      return (f == t->a && a == t->b) ? t : mk_app(t->tag, f, a);
    }
    default:
      return t;
  }
}

NodePtr retag(const NodePtr& t, std::uint8_t tag) {
  switch (t->kind) {
    case Kind::Lam:
      return mk_lam(tag, t->name, retag(t->a, tag));
    case Kind::App:
      return mk_app(tag, retag(t->a, tag), retag(t->b, tag));
    default:
      return t;
  }
}

void collect_free(const NodePtr& t, std::set<std::string>& out) {
  switch (t->kind) {
    case Kind::Free:
      out.insert(t->name);
      return;
    case Kind::Lam:
      collect_free(t->a, out);
      return;
    case Kind::App:
      collect_free(t->a, out);
      collect_free(t->b, out);
      return;
    default:
      return;
  }
}

bool occurs_free(const NodePtr& t, const std::string& name) {
  switch (t->kind) {
    case Kind::Free:
      return t->name == name;
    case Kind::Lam:
      return occurs_free(t->a, name);
    case Kind::App:
      return occurs_free(t->a, name) || occurs_free(t->b, name);
    default:
      return false;
  }
}

bool uses_index(const NodePtr& body, std::uint32_t depth) {
  if (body->loose <= depth) return false;
  switch (body->kind) {
    case Kind::Bound:
      return body->index == depth;
    case Kind::Lam:
      return uses_index(body->a, depth + 1);
    case Kind::App:
      return uses_index(body->a, depth) || uses_index(body->b, depth);
    default:
      return false;
  }
}

std::vector<std::string> hole_binders(const NodePtr& ctx) {
  std::vector<std::string> names;
  const Node* cur = ctx.get();
  while (cur->kind != Kind::Hole) {
    if (cur->kind == Kind::Lam) {
      names.push_back(cur->name);
      cur = cur->a.get();
    } else if (cur->kind == Kind::App) {
      cur = cur->a->holes > 0 ? cur->a.get() : cur->b.get();
    } else {
      break;
    }
  }
  return names;
}

namespace {

NodePtr bind_names(const NodePtr& t, const std::vector<std::string>& names,
                   std::uint32_t depth) {
  switch (t->kind) {
    case Kind::Free: {
      for (std::size_t j = 0; j < names.size(); ++j) {
        if (names[names.size() - 1 - j] == t->name)
          return mk_bound(depth + static_cast<std::uint32_t>(j));
      }
      return t;
    }
    case Kind::Lam:
      return mk_lam(t->tag, t->name, bind_names(t->a, names, depth + 1));
    case Kind::App:
      return mk_app(t->tag, bind_names(t->a, names, depth),
                    bind_names(t->b, names, depth));
    default:
      return t;
  }
}

NodePtr plug_at(const NodePtr& ctx, const NodePtr& t,
                std::vector<std::string>& names) {
  switch (ctx->kind) {
    case Kind::Hole:
      return bind_names(t, names, 0);
    case Kind::Lam: {
      names.push_back(ctx->name);
      NodePtr body = plug_at(ctx->a, t, names);
      names.pop_back();
      return mk_lam(ctx->tag, ctx->name, body);
    }
    case Kind::App:
      if (ctx->a->holes > 0)
        return mk_app(ctx->tag, plug_at(ctx->a, t, names), ctx->b);
      return mk_app(ctx->tag, ctx->a, plug_at(ctx->b, t, names));
    default:
      return ctx;
  }
}

}  // namespace

NodePtr plug(const NodePtr& ctx, const NodePtr& t) {
  std::vector<std::string> names;
  return plug_at(ctx, t, names);
}

}  // namespace checkers::detail
