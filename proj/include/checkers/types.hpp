// Copyright 2026 The checkers-lambda Authors.
// SPDX-License-Identifier: Apache-2.0

// Checkers multi types with an interaction index: types, derivations, a
// checker, the derivation transformers behind subject reduction and
// expansion, tight typing and a bounded enumeration of typings.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "checkers/reduction.hpp"
#include "checkers/syntax.hpp"

namespace checkers {

class MultiType;

// L ::= X | M ->(from,to) L. The arrow is silent iff from == to.
class LinearType {
 public:
  LinearType();  // the atom X
  static LinearType atom() { return LinearType(); }
  static LinearType arrow(MultiType arg, Player from, Player to,
                          LinearType res);

  bool is_atom() const { return rep_ == nullptr; }
  bool is_arrow() const { return rep_ != nullptr; }
  const MultiType& arg() const;
  Player from() const;
  Player to() const;
  const LinearType& res() const;
  bool silent() const { return from() == to(); }

  friend std::strong_ordering operator<=>(const LinearType& a,
                                          const LinearType& b);
  friend bool operator==(const LinearType& a, const LinearType& b) {
    return (a <=> b) == 0;
  }

 private:
  struct Rep;
  std::shared_ptr<const Rep> rep_;
};

// A finite multiset of linear types, kept sorted so that equality is
// structural.
class MultiType {
 public:
  MultiType() = default;
  explicit MultiType(std::vector<LinearType> elems);

  const std::vector<LinearType>& elems() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }

  MultiType operator+(const MultiType& other) const;
  // this - other, if other is contained in this.
  std::optional<MultiType> minus(const MultiType& other) const;

  friend auto operator<=>(const MultiType&, const MultiType&) = default;
  friend bool operator==(const MultiType&, const MultiType&) = default;

 private:
  std::vector<LinearType> elems_;
};

// Total map from variables to multi types; empty entries are never stored.
class TypeEnv {
 public:
  TypeEnv() = default;
  static TypeEnv single(const std::string& x, MultiType m);

  const MultiType& get(const std::string& x) const;
  void set(const std::string& x, MultiType m);
  TypeEnv without(const std::string& x) const;
  TypeEnv operator+(const TypeEnv& other) const;

  const std::map<std::string, MultiType>& entries() const { return map_; }
  bool empty() const { return map_.empty(); }

  friend auto operator<=>(const TypeEnv&, const TypeEnv&) = default;
  friend bool operator==(const TypeEnv&, const TypeEnv&) = default;

 private:
  std::map<std::string, MultiType> map_;
};

std::string to_string(const LinearType& l);
std::string to_string(const MultiType& m);
std::string to_string(const TypeEnv& env);

// Inverse of to_string: "X", "[L, ...]", "M -bw-> L".
LinearType parse_linear(std::string_view text);
MultiType parse_multi(std::string_view text);

enum class Rule { Ax, Many, Lam, AppSilent, AppInter };

// "ax", "many", "lam", "app_s", "app_i".
std::string_view to_string(Rule r);

struct Derivation {
  Rule rule;
  TypeEnv env;
  std::uint64_t k = 0;
  CTerm subject;
  std::variant<LinearType, MultiType> type;
  std::vector<Derivation> premises;

  bool is_many() const { return rule == Rule::Many; }
  const LinearType& linear() const;
  const MultiType& multi() const;
};

// Thrown by the checker and by every constructor or transformer handed an
// ill-formed input. path lists premise indices from the root.
class DerivationError : public std::runtime_error {
 public:
  DerivationError(const std::string& msg, std::vector<std::size_t> path = {});
  const std::vector<std::size_t>& path() const { return path_; }

 private:
  std::vector<std::size_t> path_;
};

// Rule constructors. Each computes its conclusion from the premises and
// throws DerivationError when the rule does not apply.
Derivation make_ax(const std::string& x, const LinearType& l);
Derivation make_many(const CTerm& subject, std::vector<Derivation> premises);
// lam_player x. body, typed M ->(lam_player, to) L.
Derivation make_lam(Player lam_player, const std::string& x,
                    const Derivation& body, Player to);
// The rule (silent or interaction) follows from the function's arrow.
Derivation make_app(Player app_player, const Derivation& fun,
                    const Derivation& arg);

// Name of the variable bound by a Lam node in its premise.
std::string lam_binder(const Derivation& lam);

// Number of application nodes.
std::size_t size(const Derivation& d);

struct CheckReport {
  TypeEnv env;
  std::uint64_t k;
  std::variant<LinearType, MultiType> type;
  std::size_t size;
};

// Validates every node against its rule and the stored judgments.
CheckReport check_derivation(const Derivation& d);

// Structural equality, ignoring the order of Many premises.
bool equivalent(const Derivation& a, const Derivation& b);

std::string render(const Derivation& d);

std::string to_json(const Derivation& d, int indent = -1);
// Parses and checks; throws DerivationError or ParseError.
Derivation derivation_from_json(std::string_view text);

// Exactly one non-empty multiset occurs in (env, l) and every arrow there is
// silent.
bool is_tight(const TypeEnv& env, const LinearType& l);

// Tight derivation of an hnf with index 0. Throws std::invalid_argument on
// a non-hnf.
Derivation derive_hnf_tight(const CTerm& h);

// Many-node regrouping.
std::pair<Derivation, Derivation> split_derivation(const Derivation& d,
                                                   const MultiType& n,
                                                   const MultiType& o);
Derivation merge_derivations(const Derivation& a, const Derivation& b);

// d_t : G, x:M |- t : T and d_u : D |- u : M  ==>  G + D |- t[x<-u] : T.
Derivation subst_derivation(const Derivation& d_t, const std::string& x,
                            const Derivation& d_u);

struct AntiSubst {
  MultiType m;
  Derivation d_t;
  Derivation d_u;  // always a Many node
};

// Splits a derivation of t[x<-u] into derivations of t and u.
AntiSubst anti_subst_derivation(const Derivation& d, const CTerm& t,
                                const std::string& x, const CTerm& u);

// Reduces the redex at pos of d's subject inside the derivation. The
// conclusion keeps its env and type.
Derivation reduce_at(const Derivation& d, const Position& pos);
// d concludes step_at(before, pos); returns a derivation of before.
Derivation expand_at(const Derivation& d, const CTerm& before,
                     const Position& pos);

// Head-step versions. subject_reduce throws if the subject is an hnf;
// subject_expand requires d's subject to be the head reduct of before.
Derivation subject_reduce(const Derivation& d);
Derivation subject_expand(const Derivation& d, const CTerm& before);

struct TightResult {
  Derivation derivation;
  std::uint64_t k;
};

// Tight derivation built by expanding the hnf's tight derivation back along
// the head reduction; empty when the fuel runs out.
std::optional<TightResult> infer_tight(const CTerm& ct, std::uint64_t fuel);

// Moves a derivation of lift(Black, t) to one of lift(Black, u) with the
// same conclusion by matching Böhm-tree nodes wherever d types them. Empty
// when a needed node differs, lies deeper than depth, or u's node needs
// more than fuel steps.
std::optional<Derivation> transport_bohm(const Derivation& d, const Term& t,
                                         const Term& u, std::size_t depth,
                                         std::uint64_t fuel);

struct EnumConfig {
  // Axiom types come from the universe: X, then arrows from multisets of at
  // most max_card earlier types, up to type_depth arrow levels.
  std::size_t type_depth = 1;
  std::size_t max_card = 2;
};

std::vector<LinearType> type_universe(const EnumConfig& cfg);

struct Typing {
  TypeEnv env;
  std::uint64_t k;
  LinearType type;
  std::size_t size;  // smallest derivation found
  Derivation witness;

  bool same_judgment(const Typing& o) const {
    return env == o.env && k == o.k && type == o.type;
  }
};

// Every conclusion of a derivation with at most size_cap applications, axiom
// types from the universe and Many nodes of at most max_card premises.
// Sorted by (env, k, type).
std::vector<Typing> enumerate_typings(const CTerm& ct, std::size_t size_cap,
                                      const EnumConfig& cfg = {});

}  // namespace checkers
