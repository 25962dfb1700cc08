// Copyright 2026 The checkers-lambda Authors.
// SPDX-License-Identifier: Apache-2.0

// Ordinary and checkers lambda-terms, contexts, player lifting, parsing and
// printing.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace checkers {

namespace detail {
struct Node;
using NodePtr = std::shared_ptr<const Node>;
}  // namespace detail

enum class Player : std::uint8_t { Black, White };

constexpr Player opposite(Player p) {
  return p == Player::Black ? Player::White : Player::Black;
}

// 'b' or 'w'.
char player_letter(Player p);

enum class TermKind { Var, Lam, App };

// A lambda-term without holes. Tagged terms carry a Player on every
// abstraction and application; variables are never tagged. Equality is
// alpha-equivalence.
template <bool Tagged>
class BasicTerm {
 public:
  static BasicTerm var(std::string name);
  static BasicTerm lam(std::string binder, const BasicTerm& body)
    requires(!Tagged);
  static BasicTerm app(const BasicTerm& fun, const BasicTerm& arg)
    requires(!Tagged);
  static BasicTerm lam(Player p, std::string binder, const BasicTerm& body)
    requires Tagged;
  static BasicTerm app(Player p, const BasicTerm& fun, const BasicTerm& arg)
    requires Tagged;

  TermKind kind() const;
  bool is_var() const { return kind() == TermKind::Var; }
  bool is_lam() const { return kind() == TermKind::Lam; }
  bool is_app() const { return kind() == TermKind::App; }

  // Variable name, or the binder's preferred name for an abstraction.
  const std::string& name() const;
  Player player() const
    requires Tagged;
  BasicTerm fun() const;
  BasicTerm arg() const;
  // Body of an abstraction with its bound variable renamed to name. The
  // caller must pick a name not free in the abstraction.
  BasicTerm open(const std::string& name) const;
  // Opens with a fresh name derived from the binder's own name.
  std::pair<std::string, BasicTerm> unbind(
      const std::set<std::string>& avoid = {}) const;

  std::size_t size() const;
  std::size_t hash() const;
  std::set<std::string> free_vars() const;
  bool has_free(const std::string& name) const;

  bool operator==(const BasicTerm& other) const;

  explicit BasicTerm(detail::NodePtr node);
  const detail::NodePtr& node() const { return node_; }

 private:
  detail::NodePtr node_;
};

using Term = BasicTerm<false>;
using CTerm = BasicTerm<true>;

// A term with exactly one hole. Binder names are significant: plugging
// captures free variables of the plugged term by name.
template <bool Tagged>
class BasicContext {
 public:
  static BasicContext hole();
  static BasicContext lam(std::string binder, const BasicContext& body)
    requires(!Tagged);
  static BasicContext app_left(const BasicContext& fun,
                               const BasicTerm<Tagged>& arg)
    requires(!Tagged);
  static BasicContext app_right(const BasicTerm<Tagged>& fun,
                                const BasicContext& arg)
    requires(!Tagged);
  static BasicContext lam(Player p, std::string binder,
                          const BasicContext& body)
    requires Tagged;
  static BasicContext app_left(Player p, const BasicContext& fun,
                               const BasicTerm<Tagged>& arg)
    requires Tagged;
  static BasicContext app_right(Player p, const BasicTerm<Tagged>& fun,
                                const BasicContext& arg)
    requires Tagged;

  // Applies the context to further arguments: C t1 ... tn.
  BasicContext applied(const std::vector<BasicTerm<Tagged>>& args) const
    requires(!Tagged);

  bool is_hole() const;
  std::size_t hole_count() const;
  bool operator==(const BasicContext& other) const;

  explicit BasicContext(detail::NodePtr node);
  const detail::NodePtr& node() const { return node_; }

 private:
  detail::NodePtr node_;
};

using Context = BasicContext<false>;
using CContext = BasicContext<true>;

// A path into a Böhm tree; entries are 1-based argument positions.
struct Path {
  std::vector<unsigned> entries;

  Path() = default;
  Path(std::initializer_list<unsigned> e);
  explicit Path(std::vector<unsigned> e);
  bool empty() const { return entries.empty(); }
  std::size_t length() const { return entries.size(); }
  Path child(unsigned i) const;
  bool operator==(const Path& other) const = default;
};

std::string to_string(const Path& p);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos);
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

Term parse_term(std::string_view text);
CTerm parse_cterm(std::string_view text);
Context parse_context(std::string_view text);
CContext parse_ccontext(std::string_view text);

struct PrintOptions {
  // Print closed subterms that match a named combinator by its name.
  bool shorthands = false;
};

std::string print(const Term& t, PrintOptions opts = {});
std::string print(const CTerm& t, PrintOptions opts = {});
std::string print(const Context& c, PrintOptions opts = {});
std::string print(const CContext& c, PrintOptions opts = {});

Term substitute(const Term& t, const std::string& x, const Term& u);
CTerm substitute(const CTerm& t, const std::string& x, const CTerm& u);

CTerm lift(Player p, const Term& t);
CContext lift_context(Player p, const Context& c);
Term wash(const CTerm& t);
Context wash_context(const CContext& c);
bool is_tagging(const CTerm& ct, const Term& t);

Term plug(const Context& c, const Term& t);
CTerm plug(const CContext& c, const CTerm& t);

// Named combinators: I, K, F, Y, Om, D, One, T<n>, P<n>_<i>.
std::optional<Term> combinator(std::string_view name);
bool is_reserved_name(std::string_view name);
// hint, hint', hint'', ... : the first candidate that is not taken and not
// reserved.
std::string fresh_name(std::string_view hint,
                       const std::function<bool(const std::string&)>& taken);
bool is_identifier(std::string_view s);

}  // namespace checkers

template <bool Tagged>
struct std::hash<checkers::BasicTerm<Tagged>> {
  std::size_t operator()(const checkers::BasicTerm<Tagged>& t) const {
    return t.hash();
  }
};
