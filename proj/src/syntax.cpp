// Copyright 2026 The checkers-lambda Authors.
// SPDX-License-Identifier: Apache-2.0

#include "checkers/syntax.hpp"

#include <cctype>
#include <charconv>

#include "node.hpp"

namespace checkers {

using detail::Kind;
using detail::NodePtr;

namespace {

std::uint8_t tag_of(Player p) { return static_cast<std::uint8_t>(p) + 1; }

Player player_of(std::uint8_t tag) { return static_cast<Player>(tag - 1); }

}  // namespace

char player_letter(Player p) { return p == Player::Black ? 'b' : 'w'; }

template <bool Tagged>
BasicTerm<Tagged>::BasicTerm(NodePtr node) : node_(std::move(node)) {}

template <bool Tagged>
BasicTerm<Tagged> BasicTerm<Tagged>::var(std::string name) {
  return BasicTerm(detail::mk_free(std::move(name)));
}

template <bool Tagged>
BasicTerm<Tagged> BasicTerm<Tagged>::lam(std::string binder,
                                         const BasicTerm& body)
  requires(!Tagged)
{
  NodePtr b = detail::abstract(body.node_, binder);
  return BasicTerm(detail::mk_lam(detail::kUntagged, std::move(binder), b));
}

template <bool Tagged>
BasicTerm<Tagged> BasicTerm<Tagged>::app(const BasicTerm& fun,
                                         const BasicTerm& arg)
  requires(!Tagged)
{
  return BasicTerm(detail::mk_app(detail::kUntagged, fun.node_, arg.node_));
}

template <bool Tagged>
BasicTerm<Tagged> BasicTerm<Tagged>::lam(Player p, std::string binder,
                                         const BasicTerm& body)
  requires Tagged
{
  NodePtr b = detail::abstract(body.node_, binder);
  return BasicTerm(detail::mk_lam(tag_of(p), std::move(binder), b));
}

template <bool Tagged>
BasicTerm<Tagged> BasicTerm<Tagged>::app(Player p, const BasicTerm& fun,
                                         const BasicTerm& arg)
  requires Tagged
{
  return BasicTerm(detail::mk_app(tag_of(p), fun.node_, arg.node_));
}

template <bool Tagged>
TermKind BasicTerm<Tagged>::kind() const {
  switch (node_->kind) {
    case Kind::Lam:
      return TermKind::Lam;
    case Kind::App:
      return TermKind::App;
    default:
      return TermKind::Var;
  }
}

template <bool Tagged>
const std::string& BasicTerm<Tagged>::name() const {
  return node_->name;
}

template <bool Tagged>
Player BasicTerm<Tagged>::player() const
  requires Tagged
{
  if (node_->tag == detail::kUntagged)
    throw std::logic_error("variables carry no player");
  return player_of(node_->tag);
}

template <bool Tagged>
BasicTerm<Tagged> BasicTerm<Tagged>::fun() const {
  if (node_->kind != Kind::App) throw std::logic_error("fun() of non-application");
  return BasicTerm(node_->a);
}

template <bool Tagged>
BasicTerm<Tagged> BasicTerm<Tagged>::arg() const {
  if (node_->kind != Kind::App) throw std::logic_error("arg() of non-application");
  return BasicTerm(node_->b);
}

template <bool Tagged>
BasicTerm<Tagged> BasicTerm<Tagged>::open(const std::string& name) const {
  if (node_->kind != Kind::Lam) throw std::logic_error("open() of non-abstraction");
  return BasicTerm(detail::instantiate(node_->a, detail::mk_free(name)));
}

template <bool Tagged>
std::pair<std::string, BasicTerm<Tagged>> BasicTerm<Tagged>::unbind(
    const std::set<std::string>& avoid) const {
  std::set<std::string> fv = free_vars();
  std::string x = fresh_name(node_->name, [&](const std::string& s) {
    return fv.count(s) > 0 || avoid.count(s) > 0;
  });
  return {x, open(x)};
}

template <bool Tagged>
std::size_t BasicTerm<Tagged>::size() const {
  return node_->size;
}

template <bool Tagged>
std::size_t BasicTerm<Tagged>::hash() const {
  return node_->hash;
}

template <bool Tagged>
std::set<std::string> BasicTerm<Tagged>::free_vars() const {
  std::set<std::string> out;
  detail::collect_free(node_, out);
  return out;
}

template <bool Tagged>
bool BasicTerm<Tagged>::has_free(const std::string& name) const {
  return detail::occurs_free(node_, name);
}

template <bool Tagged>
bool BasicTerm<Tagged>::operator==(const BasicTerm& other) const {
  return detail::equal(node_, other.node_);
}

template class BasicTerm<false>;
template class BasicTerm<true>;

template <bool Tagged>
BasicContext<Tagged>::BasicContext(NodePtr node) : node_(std::move(node)) {}

template <bool Tagged>
BasicContext<Tagged> BasicContext<Tagged>::hole() {
  return BasicContext(detail::mk_hole());
}

template <bool Tagged>
BasicContext<Tagged> BasicContext<Tagged>::lam(std::string binder,
                                               const BasicContext& body)
  requires(!Tagged)
{
  NodePtr b = detail::abstract(body.node_, binder);
  return BasicContext(detail::mk_lam(detail::kUntagged, std::move(binder), b));
}

template <bool Tagged>
BasicContext<Tagged> BasicContext<Tagged>::app_left(
    const BasicContext& fun, const BasicTerm<Tagged>& arg)
  requires(!Tagged)
{
  return BasicContext(detail::mk_app(detail::kUntagged, fun.node_, arg.node()));
}

template <bool Tagged>
BasicContext<Tagged> BasicContext<Tagged>::app_right(
    const BasicTerm<Tagged>& fun, const BasicContext& arg)
  requires(!Tagged)
{
  return BasicContext(detail::mk_app(detail::kUntagged, fun.node(), arg.node_));
}

template <bool Tagged>
BasicContext<Tagged> BasicContext<Tagged>::lam(Player p, std::string binder,
                                               const BasicContext& body)
  requires Tagged
{
  NodePtr b = detail::abstract(body.node_, binder);
  return BasicContext(detail::mk_lam(tag_of(p), std::move(binder), b));
}

template <bool Tagged>
BasicContext<Tagged> BasicContext<Tagged>::app_left(
    Player p, const BasicContext& fun, const BasicTerm<Tagged>& arg)
  requires Tagged
{
  return BasicContext(detail::mk_app(tag_of(p), fun.node_, arg.node()));
}

template <bool Tagged>
BasicContext<Tagged> BasicContext<Tagged>::app_right(
    Player p, const BasicTerm<Tagged>& fun, const BasicContext& arg)
  requires Tagged
{
  return BasicContext(detail::mk_app(tag_of(p), fun.node(), arg.node_));
}

template <bool Tagged>
BasicContext<Tagged> BasicContext<Tagged>::applied(
    const std::vector<BasicTerm<Tagged>>& args) const
  requires(!Tagged)
{
  NodePtr n = node_;
  for (const auto& a : args) n = detail::mk_app(detail::kUntagged, n, a.node());
  return BasicContext(n);
}

template <bool Tagged>
bool BasicContext<Tagged>::is_hole() const {
  return node_->kind == Kind::Hole;
}

template <bool Tagged>
std::size_t BasicContext<Tagged>::hole_count() const {
  return node_->holes;
}

template <bool Tagged>
bool BasicContext<Tagged>::operator==(const BasicContext& other) const {
  return detail::equal(node_, other.node_) &&
         detail::hole_binders(node_) == detail::hole_binders(other.node_);
}

template class BasicContext<false>;
template class BasicContext<true>;

Path::Path(std::initializer_list<unsigned> e) : Path(std::vector<unsigned>(e)) {}

Path::Path(std::vector<unsigned> e) : entries(std::move(e)) {
  for (unsigned i : entries)
    if (i == 0) throw std::invalid_argument("path entries are 1-based");
}

Path Path::child(unsigned i) const {
  std::vector<unsigned> e = entries;
  e.push_back(i);
  return Path(std::move(e));
}

std::string to_string(const Path& p) {
  std::string s = "<";
  for (std::size_t i = 0; i < p.entries.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p.entries[i]);
  }
  return s + ">";
}

Term substitute(const Term& t, const std::string& x, const Term& u) {
  return Term(detail::replace_free(t.node(), x, u.node()));
}

CTerm substitute(const CTerm& t, const std::string& x, const CTerm& u) {
  return CTerm(detail::replace_free(t.node(), x, u.node()));
}

CTerm lift(Player p, const Term& t) {
  return CTerm(detail::retag(t.node(), tag_of(p)));
}

CContext lift_context(Player p, const Context& c) {
  return CContext(detail::retag(c.node(), tag_of(p)));
}

Term wash(const CTerm& t) {
  return Term(detail::retag(t.node(), detail::kUntagged));
}

Context wash_context(const CContext& c) {
  return Context(detail::retag(c.node(), detail::kUntagged));
}

bool is_tagging(const CTerm& ct, const Term& t) { return wash(ct) == t; }

Term plug(const Context& c, const Term& t) {
  return Term(detail::plug(c.node(), t.node()));
}

CTerm plug(const CContext& c, const CTerm& t) {
  return CTerm(detail::plug(c.node(), t.node()));
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s[0]);
  if (!(std::isalpha(head) || s[0] == '_')) return false;
  for (char ch : s) {
    auto c = static_cast<unsigned char>(ch);
    if (!(std::isalnum(c) || ch == '_' || ch == '\'')) return false;
  }
  return true;
}

namespace {

std::optional<unsigned> parse_nat(std::string_view s) {
  if (s.empty() || s.size() > 4) return std::nullopt;
  unsigned v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

Term v(const char* n) { return Term::var(n); }
Term ap(const Term& a, const Term& b) { return Term::app(a, b); }
Term lm(const char* x, const Term& b) { return Term::lam(x, b); }

Term tupler_term(unsigned n) {
  std::vector<std::string> xs;
  for (unsigned i = 1; i <= n; ++i) xs.push_back("x" + std::to_string(i));
  Term body = v("x");
  for (const auto& x : xs) body = ap(body, Term::var(x));
  Term t = lm("x", body);
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) t = Term::lam(*it, t);
  return t;
}

Term selector_term(unsigned n, unsigned i) {
  Term t = Term::var("x" + std::to_string(i));
  for (unsigned j = n; j >= 1; --j) t = Term::lam("x" + std::to_string(j), t);
  return t;
}

}  // namespace

std::optional<Term> combinator(std::string_view name) {
  if (name == "I") return lm("x", v("x"));
  if (name == "K") return lm("x", lm("y", v("x")));
  if (name == "F") return lm("x", lm("y", v("y")));
  if (name == "One") return lm("x", lm("y", ap(v("x"), v("y"))));
  if (name == "D") return lm("y", lm("x", ap(v("x"), ap(v("y"), v("x")))));
  if (name == "Y" || name == "Om") {
    Term half = lm("x", ap(v("f"), ap(v("x"), v("x"))));
    Term y = lm("f", ap(half, half));
    if (name == "Y") return y;
    return ap(y, lm("x", v("x")));
  }
  if (name.size() >= 2 && name[0] == 'T') {
    if (auto n = parse_nat(name.substr(1))) return tupler_term(*n);
    return std::nullopt;
  }
  if (name.size() >= 4 && name[0] == 'P') {
    auto us = name.find('_');
    if (us == std::string_view::npos) return std::nullopt;
    auto n = parse_nat(name.substr(1, us - 1));
    auto i = parse_nat(name.substr(us + 1));
    if (!n || !i || *i < 1 || *i > *n) return std::nullopt;
    return selector_term(*n, *i);
  }
  return std::nullopt;
}

bool is_reserved_name(std::string_view name) {
  if (combinator(name)) return true;
  // Player-suffixed forms used by the checkers parser.
  if (name.size() > 2 && name[name.size() - 2] == '_' &&
      (name.back() == 'b' || name.back() == 'w'))
    return combinator(name.substr(0, name.size() - 2)).has_value();
  // P<n>_<i> with i out of range is still reserved syntax.
  if (name.size() >= 4 && name[0] == 'P') {
    auto us = name.find('_');
    if (us != std::string_view::npos && parse_nat(name.substr(1, us - 1)) &&
        parse_nat(name.substr(us + 1)))
      return true;
  }
  return false;
}

std::string fresh_name(std::string_view hint,
                       const std::function<bool(const std::string&)>& taken) {
  std::string base = is_identifier(hint) ? std::string(hint) : "x";
  std::string cand = base;
  while (taken(cand) || is_reserved_name(cand)) cand += '\'';
  return cand;
}

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : std::runtime_error(msg + " at offset " + std::to_string(pos)), pos_(pos) {}

}  // namespace checkers
