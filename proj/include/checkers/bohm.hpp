// Copyright 2026 The checkers-lambda Authors.
// SPDX-License-Identifier: Apache-2.0

// Finite Böhm-tree approximants, the Böhm preorder and its extensional
// variant as fuel-bounded three-valued checks, and search for the first
// point where two trees differ.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "checkers/reduction.hpp"
#include "checkers/syntax.hpp"

namespace checkers {

enum class Tri { Holds, Fails, Unknown };

std::string_view to_string(Tri t);

struct BohmOptions {
  // Number of node levels explored; deeper positions count as cut.
  std::size_t depth = 8;
  // Budget for each head evaluation, not for the whole tree.
  std::uint64_t fuel = kDefaultFuel;
  // Treat a repeated evaluation state as proof of divergence.
  bool detect_loops = false;
  // Treat every fuel exhaustion as divergence.
  bool assume_divergence = false;
};

struct BohmApprox {
  enum class Kind { Node, Bot, Cut };

  Kind kind = Kind::Cut;
  std::vector<std::string> binders;
  std::string head;
  std::vector<BohmApprox> children;
  // Bot only: divergence was proven by loop detection.
  bool certified = false;

  static BohmApprox node(std::vector<std::string> binders, std::string head,
                         std::vector<BohmApprox> children);
  static BohmApprox bot(bool certified = false);
  static BohmApprox cut();

  bool is_node() const { return kind == Kind::Node; }
  bool is_bot() const { return kind == Kind::Bot; }
  bool is_cut() const { return kind == Kind::Cut; }
};

// Structural equality up to renaming of binders.
bool alpha_equal(const BohmApprox& a, const BohmApprox& b);

// One line per node, children indented by two spaces: "λx y.x", "_|_", "...".
std::string render(const BohmApprox& a);

BohmApprox bohm_approx(const Term& t, const BohmOptions& opts = {});
BohmApprox bohm_approx(const Term& t, std::size_t depth, std::uint64_t fuel);

// An hnf λx1..xn.y t1..tk with its binders opened.
struct HnfView {
  std::vector<std::string> binders;
  std::string head;
  std::vector<Term> args;
};

// Opens the binders of h with names outside taken, adding them to taken.
// Throws std::invalid_argument if h is not an hnf.
HnfView view_hnf(const Term& h, std::set<std::string>& taken);

// Opens two hnfs side by side: the i-th binders of both get the same name.
std::pair<HnfView, HnfView> view_hnf_pair(const Term& h1, const Term& h2,
                                          std::set<std::string>& taken);

enum class NodeStatus { Found, Undefined, Diverges, FuelExhausted };

struct NodeAt {
  NodeStatus status;
  // The hnf at the path; binders of enclosing nodes occur free.
  std::optional<Term> hnf;
};

NodeAt node_at_path(const Term& t, const Path& path,
                    const BohmOptions& opts = {});

// Same number of binders, same head (binders identified by position), same
// number of arguments. Throws std::invalid_argument on non-hnfs.
bool spine_eq(const Term& h1, const Term& h2);

Tri bohm_le(const Term& t, const Term& u, const BohmOptions& opts = {});
// eta_budget bounds the binder/argument pairs added at a node; none means
// unbounded.
Tri bohm_le_eta(const Term& t, const Term& u, const BohmOptions& opts = {},
                std::optional<std::size_t> eta_budget = std::nullopt);

// Approximant order with bottom least. Cut leaves give Unknown; Bot leaves
// count as bottom when certified or when assume_divergence is set.
Tri le_bot(const BohmApprox& a, const BohmApprox& b,
           bool assume_divergence = false);

enum class DiffKind { HeadMismatch, SpineArityMismatch, DivergenceAsymmetry };
enum class Side { Left, Right };

std::string_view to_string(DiffKind k);
std::string_view to_string(Side s);

struct DiffWitness {
  Path path;
  DiffKind kind = DiffKind::HeadMismatch;
  // SpineArityMismatch: the arity gap m > 0 and the side with more binders.
  // DivergenceAsymmetry: the diverging side.
  std::size_t extra = 0;
  Side side = Side::Left;
  // Node hnfs; absent on a diverging side.
  std::optional<Term> hnf_left, hnf_right;
};

// Preorder skips positions where the left term diverges, since bottom is
// below everything; Any also reports a diverging left against a converging
// right.
enum class DiffMode { Preorder, Any };

// Breadth-first search for the shortest path where the nodes are not spine
// equivalent or exactly one side definitely diverges.
std::optional<DiffWitness> find_difference(const Term& t, const Term& u,
                                           const BohmOptions& opts = {},
                                           DiffMode mode = DiffMode::Preorder);

}  // namespace checkers
