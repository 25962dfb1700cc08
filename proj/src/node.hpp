// Copyright 2026 The checkers-lambda Authors.
// SPDX-License-Identifier: Apache-2.0

// Shared term representation. Bound variables are de Bruijn indices, free
// variables are names, so alpha-equivalence is structural equality.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace checkers::detail {

enum class Kind : std::uint8_t { Free, Bound, Lam, App, Hole };

// Tag 0 marks ordinary constructors; 1 and 2 are Player::Black + 1 and
// Player::White + 1.
inline constexpr std::uint8_t kUntagged = 0;

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  std::uint8_t tag = kUntagged;
  std::uint32_t index = 0;  // Bound only
  std::uint32_t loose = 0;  // 1 + largest dangling index, 0 if locally closed
  std::uint32_t holes = 0;
  std::size_t size = 1;
  std::size_t hash = 0;
  std::string name;  // Free: the name. Lam: binder hint (ignored by equality).
  NodePtr a, b;      // Lam: body in a. App: function in a, argument in b.
};

NodePtr mk_free(std::string name);
NodePtr mk_bound(std::uint32_t index);
NodePtr mk_lam(std::uint8_t tag, std::string hint, NodePtr body);
NodePtr mk_app(std::uint8_t tag, NodePtr fun, NodePtr arg);
NodePtr mk_hole();

bool equal(const NodePtr& x, const NodePtr& y);

// Adds d to every index >= cutoff.
NodePtr shift(const NodePtr& t, std::uint32_t d, std::uint32_t cutoff = 0);
// body lives under one binder; replaces that binder's index by u.
NodePtr instantiate(const NodePtr& body, const NodePtr& u);
// Turns free occurrences of name into the index of a new enclosing binder.
NodePtr abstract(const NodePtr& t, const std::string& name);
// Replaces free name x by the locally closed u. Never captures.
NodePtr replace_free(const NodePtr& t, const std::string& x, const NodePtr& u);
// Sets every constructor tag to tag.
NodePtr retag(const NodePtr& t, std::uint8_t tag);

void collect_free(const NodePtr& t, std::set<std::string>& out);
bool occurs_free(const NodePtr& t, const std::string& name);
bool uses_index(const NodePtr& body, std::uint32_t depth = 0);
// Enclosing binder names of the hole, outermost first.
std::vector<std::string> hole_binders(const NodePtr& ctx);
// Replaces the hole by t, letting ctx binders capture free names of t.
NodePtr plug(const NodePtr& ctx, const NodePtr& t);

}  // namespace checkers::detail
