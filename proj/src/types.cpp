// Copyright 2026 The checkers-lambda Authors.
// SPDX-License-Identifier: Apache-2.0

#include "checkers/types.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

namespace checkers {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Types

struct LinearType::Rep {
  MultiType arg;
  Player from;
  Player to;
  LinearType res;
};

LinearType::LinearType() = default;

LinearType LinearType::arrow(MultiType arg, Player from, Player to,
                             LinearType res) {
  LinearType l;
  l.rep_ = std::make_shared<const Rep>(
      Rep{std::move(arg), from, to, std::move(res)});
  return l;
}

const MultiType& LinearType::arg() const {
  if (!rep_) throw std::logic_error("arg() of the atom");
  return rep_->arg;
}
Player LinearType::from() const {
  if (!rep_) throw std::logic_error("from() of the atom");
  return rep_->from;
}
Player LinearType::to() const {
  if (!rep_) throw std::logic_error("to() of the atom");
  return rep_->to;
}
const LinearType& LinearType::res() const {
  if (!rep_) throw std::logic_error("res() of the atom");
  return rep_->res;
}

std::strong_ordering operator<=>(const LinearType& a, const LinearType& b) {
  if (a.rep_ == b.rep_) return std::strong_ordering::equal;
  if (a.is_atom() || b.is_atom())
    return a.is_atom() ? std::strong_ordering::less
                       : std::strong_ordering::greater;
  if (auto c = a.from() <=> b.from(); c != 0) return c;
  if (auto c = a.to() <=> b.to(); c != 0) return c;
  if (auto c = a.arg() <=> b.arg(); c != 0) return c;
  return a.res() <=> b.res();
}

MultiType::MultiType(std::vector<LinearType> elems) : elems_(std::move(elems)) {
  std::sort(elems_.begin(), elems_.end());
}

MultiType MultiType::operator+(const MultiType& other) const {
  std::vector<LinearType> out;
  out.reserve(size() + other.size());
  std::merge(elems_.begin(), elems_.end(), other.elems_.begin(),
             other.elems_.end(), std::back_inserter(out));
  MultiType m;
  m.elems_ = std::move(out);
  return m;
}

std::optional<MultiType> MultiType::minus(const MultiType& other) const {
  if (!std::includes(elems_.begin(), elems_.end(), other.elems_.begin(),
                     other.elems_.end()))
    return std::nullopt;
  MultiType m;
  std::set_difference(elems_.begin(), elems_.end(), other.elems_.begin(),
                      other.elems_.end(), std::back_inserter(m.elems_));
  return m;
}

TypeEnv TypeEnv::single(const std::string& x, MultiType m) {
  TypeEnv e;
  e.set(x, std::move(m));
  return e;
}

const MultiType& TypeEnv::get(const std::string& x) const {
  static const MultiType kEmpty;
  auto it = map_.find(x);
  return it == map_.end() ? kEmpty : it->second;
}

void TypeEnv::set(const std::string& x, MultiType m) {
  if (m.empty())
    map_.erase(x);
  else
    map_[x] = std::move(m);
}

TypeEnv TypeEnv::without(const std::string& x) const {
  TypeEnv e = *this;
  e.map_.erase(x);
  return e;
}

TypeEnv TypeEnv::operator+(const TypeEnv& other) const {
  TypeEnv e = *this;
  for (const auto& [x, m] : other.map_) e.set(x, e.get(x) + m);
  return e;
}

std::string to_string(const LinearType& l) {
  if (l.is_atom()) return "X";
  std::string s = to_string(l.arg());
  s += " -";
  s += player_letter(l.from());
  s += player_letter(l.to());
  s += "-> ";
  return s + to_string(l.res());
}

std::string to_string(const MultiType& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += ", ";
    s += to_string(m.elems()[i]);
  }
  return s + "]";
}

std::string to_string(const TypeEnv& env) {
  if (env.empty()) return "-";
  std::string s;
  for (const auto& [x, m] : env.entries()) {
    if (!s.empty()) s += ", ";
    s += x + ":" + to_string(m);
  }
  return s;
}

namespace {

class TypeParser {
 public:
  explicit TypeParser(std::string_view s) : s_(s) {}

  LinearType linear() {
    skip();
    if (peek() == 'X') {
      ++i_;
      return LinearType::atom();
    }
    MultiType m = multi();
    expect('-');
    Player from = player();
    Player to = player();
    expect('-');
    expect('>');
    return LinearType::arrow(std::move(m), from, to, linear());
  }

  MultiType multi() {
    expect('[');
    std::vector<LinearType> elems;
    skip();
    if (peek() != ']') {
      elems.push_back(linear());
      while (skip(), peek() == ',') {
        ++i_;
        elems.push_back(linear());
      }
    }
    expect(']');
    return MultiType(std::move(elems));
  }

  void finish() {
    skip();
    if (i_ != s_.size()) fail("trailing input");
  }

 private:
  char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
  void skip() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t')) ++i_;
  }
  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++i_;
  }
  Player player() {
    char c = peek();
    if (c != 'b' && c != 'w') fail("expected b or w");
    ++i_;
    return c == 'b' ? Player::Black : Player::White;
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, i_); }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

LinearType parse_linear(std::string_view text) {
  TypeParser p(text);
  LinearType l = p.linear();
  p.finish();
  return l;
}

MultiType parse_multi(std::string_view text) {
  TypeParser p(text);
  MultiType m = p.multi();
  p.finish();
  return m;
}

// ---------------------------------------------------------------------------
// Derivations

std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::Ax:
      return "ax";
    case Rule::Many:
      return "many";
    case Rule::Lam:
      return "lam";
    case Rule::AppSilent:
      return "app_s";
    case Rule::AppInter:
      return "app_i";
  }
  return "?";
}

const LinearType& Derivation::linear() const {
  if (auto* l = std::get_if<LinearType>(&type)) return *l;
  throw DerivationError("expected a linear conclusion");
}

const MultiType& Derivation::multi() const {
  if (auto* m = std::get_if<MultiType>(&type)) return *m;
  throw DerivationError("expected a multi-type conclusion");
}

DerivationError::DerivationError(const std::string& msg,
                                 std::vector<std::size_t> path)
    : std::runtime_error(msg), path_(std::move(path)) {}

namespace {

bool is_app_rule(Rule r) { return r == Rule::AppSilent || r == Rule::AppInter; }

std::string fresh_avoiding(const std::string& hint,
                           const std::set<std::string>& avoid) {
  return fresh_name(hint,
                    [&](const std::string& s) { return avoid.count(s) > 0; });
}

}  // namespace

Derivation make_ax(const std::string& x, const LinearType& l) {
  return Derivation{Rule::Ax, TypeEnv::single(x, MultiType({l})), 0,
                    CTerm::var(x), l, {}};
}

Derivation make_many(const CTerm& subject, std::vector<Derivation> premises) {
  TypeEnv env;
  std::uint64_t k = 0;
  std::vector<LinearType> elems;
  for (const Derivation& p : premises) {
    if (p.is_many()) throw DerivationError("many premise with a multi type");
    if (!(p.subject == subject))
      throw DerivationError("many premise types a different subject");
    env = env + p.env;
    k += p.k;
    elems.push_back(p.linear());
  }
  return Derivation{Rule::Many, std::move(env), k, subject,
                    MultiType(std::move(elems)), std::move(premises)};
}

Derivation make_lam(Player lam_player, const std::string& x,
                    const Derivation& body, Player to) {
  if (body.is_many()) throw DerivationError("lam premise with a multi type");
  LinearType l = LinearType::arrow(body.env.get(x), lam_player, to,
                                   body.linear());
  return Derivation{Rule::Lam, body.env.without(x), body.k,
                    CTerm::lam(lam_player, x, body.subject), std::move(l),
                    {body}};
}

Derivation make_app(Player app_player, const Derivation& fun,
                    const Derivation& arg) {
  if (fun.is_many()) throw DerivationError("function premise is a many node");
  const LinearType& f = fun.linear();
  if (f.is_atom()) throw DerivationError("function premise has atomic type");
  if (!arg.is_many()) throw DerivationError("argument premise is not many");
  if (f.to() != app_player)
    throw DerivationError(std::string("arrow target player ") +
                          player_letter(f.to()) +
                          " does not match application player " +
                          player_letter(app_player));
  if (!(f.arg() == arg.multi()))
    throw DerivationError("argument has type " + to_string(arg.multi()) +
                          ", arrow expects " + to_string(f.arg()));
  bool silent = f.silent();
  return Derivation{silent ? Rule::AppSilent : Rule::AppInter,
                    fun.env + arg.env,
                    fun.k + arg.k + (silent ? 0 : 1),
                    CTerm::app(app_player, fun.subject, arg.subject),
                    f.res(),
                    {fun, arg}};
}

std::string lam_binder(const Derivation& lam) {
  if (lam.rule != Rule::Lam || lam.premises.size() != 1)
    throw DerivationError("not a lam node");
  auto outer = lam.subject.free_vars();
  auto inner = lam.premises[0].subject.free_vars();
  std::vector<std::string> cands;
  for (const auto& v : inner)
    if (!outer.count(v)) cands.push_back(v);
  if (cands.size() == 1) return cands[0];
  if (cands.size() > 1)
    throw DerivationError("lam premise has several candidate binders");
  // Vacuous binder: any name that is not free works.
  std::set<std::string> avoid = outer;
  avoid.insert(inner.begin(), inner.end());
  return fresh_avoiding(lam.subject.is_lam() ? lam.subject.name() : "x",
                        avoid);
}

std::size_t size(const Derivation& d) {
  std::size_t s = is_app_rule(d.rule) ? 1 : 0;
  for (const Derivation& p : d.premises) s += size(p);
  return s;
}

namespace {

Derivation rebuild_node(const Derivation& d) {
  switch (d.rule) {
    case Rule::Ax:
      if (!d.subject.is_var()) throw DerivationError("ax on a non-variable");
      if (!d.premises.empty()) throw DerivationError("ax with premises");
      return make_ax(d.subject.name(), d.linear());
    case Rule::Many:
      return make_many(d.subject, d.premises);
    case Rule::Lam: {
      if (!d.subject.is_lam()) throw DerivationError("lam on a non-abstraction");
      if (d.premises.size() != 1) throw DerivationError("lam needs one premise");
      const LinearType& l = d.linear();
      if (l.is_atom()) throw DerivationError("lam typed by the atom");
      return make_lam(d.subject.player(), lam_binder(d), d.premises[0],
                      l.to());
    }
    case Rule::AppSilent:
    case Rule::AppInter:
      if (!d.subject.is_app())
        throw DerivationError("application rule on a non-application");
      if (d.premises.size() != 2)
        throw DerivationError("application needs two premises");
      return make_app(d.subject.player(), d.premises[0], d.premises[1]);
  }
  throw DerivationError("unknown rule");
}

std::size_t check_rec(const Derivation& d, std::vector<std::size_t>& path) {
  std::size_t s = is_app_rule(d.rule) ? 1 : 0;
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    path.push_back(i);
    s += check_rec(d.premises[i], path);
    path.pop_back();
  }
  Derivation r = [&] {
    try {
      return rebuild_node(d);
    } catch (const DerivationError& e) {
      throw DerivationError(std::string(to_string(d.rule)) + ": " + e.what(),
                            path);
    }
  }();
  auto bad = [&](const std::string& what) {
    throw DerivationError(std::string(to_string(d.rule)) + ": " + what, path);
  };
  if (r.rule != d.rule)
    bad(std::string("premise types call for rule ") +
        std::string(to_string(r.rule)));
  if (!(r.subject == d.subject)) bad("subject does not match the premises");
  if (r.env != d.env)
    bad("environment is " + to_string(d.env) + ", premises give " +
        to_string(r.env));
  if (r.k != d.k)
    bad("index is " + std::to_string(d.k) + ", premises give " +
        std::to_string(r.k));
  if (r.type != d.type) bad("conclusion type does not follow from premises");
  return s;
}

}  // namespace

CheckReport check_derivation(const Derivation& d) {
  std::vector<std::size_t> path;
  std::size_t s = check_rec(d, path);
  return CheckReport{d.env, d.k, d.type, s};
}

bool equivalent(const Derivation& a, const Derivation& b) {
  if (a.rule != b.rule || a.k != b.k || a.env != b.env ||
      a.type != b.type || !(a.subject == b.subject) ||
      a.premises.size() != b.premises.size())
    return false;
  if (!a.is_many()) {
    for (std::size_t i = 0; i < a.premises.size(); ++i)
      if (!equivalent(a.premises[i], b.premises[i])) return false;
    return true;
  }
  std::vector<bool> used(b.premises.size(), false);
  for (const Derivation& p : a.premises) {
    bool found = false;
    for (std::size_t j = 0; j < b.premises.size() && !found; ++j)
      if (!used[j] && equivalent(p, b.premises[j])) found = used[j] = true;
    if (!found) return false;
  }
  return true;
}

namespace {

std::string type_string(const std::variant<LinearType, MultiType>& t) {
  return std::visit([](const auto& x) { return to_string(x); }, t);
}

void render_rec(const Derivation& d, int indent, std::ostringstream& out) {
  out << std::string(indent, ' ') << to_string(d.rule) << "  "
      << to_string(d.env) << " |-" << d.k << " " << print(d.subject) << " : "
      << type_string(d.type) << "\n";
  for (const Derivation& p : d.premises) render_rec(p, indent + 2, out);
}

json type_json(const LinearType& l);

json multi_json(const MultiType& m) {
  json a = json::array();
  for (const LinearType& l : m.elems()) a.push_back(type_json(l));
  return a;
}

json type_json(const LinearType& l) {
  if (l.is_atom()) return "X";
  return json{{"arg", multi_json(l.arg())},
              {"from", std::string(1, player_letter(l.from()))},
              {"to", std::string(1, player_letter(l.to()))},
              {"res", type_json(l.res())}};
}

json derivation_json(const Derivation& d) {
  json env = json::object();
  for (const auto& [x, m] : d.env.entries()) env[x] = multi_json(m);
  json prem = json::array();
  for (const Derivation& p : d.premises) prem.push_back(derivation_json(p));
  return json{{"rule", std::string(to_string(d.rule))},
              {"env", env},
              {"k", d.k},
              {"subject", print(d.subject)},
              {"type", d.is_many() ? multi_json(d.multi())
                                   : type_json(d.linear())},
              {"premises", prem}};
}

Player player_of(const json& j) {
  std::string s = j.get<std::string>();
  if (s == "b") return Player::Black;
  if (s == "w") return Player::White;
  throw DerivationError("bad player '" + s + "'");
}

LinearType type_of(const json& j);

MultiType multi_of(const json& j) {
  if (!j.is_array()) throw DerivationError("multi type must be an array");
  std::vector<LinearType> elems;
  for (const json& e : j) elems.push_back(type_of(e));
  return MultiType(std::move(elems));
}

LinearType type_of(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "X")
      throw DerivationError("unknown atomic type");
    return LinearType::atom();
  }
  return LinearType::arrow(multi_of(j.at("arg")), player_of(j.at("from")),
                           player_of(j.at("to")), type_of(j.at("res")));
}

Rule rule_of(const std::string& s) {
  for (Rule r : {Rule::Ax, Rule::Many, Rule::Lam, Rule::AppSilent,
                 Rule::AppInter})
    if (to_string(r) == s) return r;
  throw DerivationError("unknown rule '" + s + "'");
}

Derivation derivation_of(const json& j) {
  Rule r = rule_of(j.at("rule").get<std::string>());
  TypeEnv env;
  for (const auto& [x, m] : j.at("env").items()) env.set(x, multi_of(m));
  std::vector<Derivation> prem;
  for (const json& p : j.at("premises")) prem.push_back(derivation_of(p));
  std::variant<LinearType, MultiType> type =
      r == Rule::Many ? std::variant<LinearType, MultiType>(multi_of(j.at("type")))
                      : std::variant<LinearType, MultiType>(type_of(j.at("type")));
  return Derivation{r, std::move(env), j.at("k").get<std::uint64_t>(),
                    parse_cterm(j.at("subject").get<std::string>()),
                    std::move(type), std::move(prem)};
}

}  // namespace

std::string render(const Derivation& d) {
  std::ostringstream out;
  render_rec(d, 0, out);
  return out.str();
}

std::string to_json(const Derivation& d, int indent) {
  return derivation_json(d).dump(indent);
}

Derivation derivation_from_json(std::string_view text) {
  Derivation d = [&] {
    try {
      return derivation_of(json::parse(text));
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
    } catch (const json::exception& e) {
      throw DerivationError(std::string("malformed derivation: ") + e.what());
    }
  }();
  check_derivation(d);
  return d;
}

// ---------------------------------------------------------------------------
// Tightness

namespace {

bool tight_walk(const LinearType& l, std::size_t& nonempty);

bool tight_walk(const MultiType& m, std::size_t& nonempty) {
  if (!m.empty()) ++nonempty;
  for (const LinearType& l : m.elems())
    if (!tight_walk(l, nonempty)) return false;
  return true;
}

bool tight_walk(const LinearType& l, std::size_t& nonempty) {
  if (l.is_atom()) return true;
  if (!l.silent()) return false;
  return tight_walk(l.arg(), nonempty) && tight_walk(l.res(), nonempty);
}

}  // namespace

bool is_tight(const TypeEnv& env, const LinearType& l) {
  std::size_t nonempty = 0;
  for (const auto& [x, m] : env.entries())
    if (!tight_walk(m, nonempty)) return false;
  return tight_walk(l, nonempty) && nonempty == 1;
}

Derivation derive_hnf_tight(const CTerm& h) {
  if (!is_hnf(h)) throw std::invalid_argument("not a head normal form");
  std::vector<std::pair<Player, std::string>> binders;
  std::set<std::string> avoid = h.free_vars();
  CTerm cur = h;
  while (cur.is_lam()) {
    auto [x, body] = cur.unbind(avoid);
    avoid.insert(x);
    binders.emplace_back(cur.player(), x);
    cur = body;
  }
  std::vector<std::pair<Player, CTerm>> args;
  while (cur.is_app()) {
    args.emplace_back(cur.player(), cur.arg());
    cur = cur.fun();
  }
  std::reverse(args.begin(), args.end());
  // The head gets [] -> ... -> [] -> X with silent arrows matching the
  // application players; every argument is typed by the empty multiset.
  LinearType head = LinearType::atom();
  for (auto it = args.rbegin(); it != args.rend(); ++it)
    head = LinearType::arrow(MultiType(), it->first, it->first, head);
  Derivation d = make_ax(cur.name(), head);
  for (const auto& [p, a] : args) d = make_app(p, d, make_many(a, {}));
  for (auto it = binders.rbegin(); it != binders.rend(); ++it)
    d = make_lam(it->first, it->second, d, it->first);
  return d;
}

// ---------------------------------------------------------------------------
// Transformers

namespace {

// Renames the free variable from to a name not free in d's subject.
Derivation rename_free(const Derivation& d, const std::string& from,
                       const std::string& to) {
  if (!d.subject.has_free(from)) return d;
  switch (d.rule) {
    case Rule::Ax:
      return make_ax(to, d.linear());
    case Rule::Many: {
      std::vector<Derivation> ps;
      for (const Derivation& p : d.premises) ps.push_back(rename_free(p, from, to));
      return make_many(substitute(d.subject, from, CTerm::var(to)),
                       std::move(ps));
    }
    case Rule::Lam: {
      std::string b = lam_binder(d);
      Derivation prem = d.premises[0];
      if (b == to) {
        std::set<std::string> avoid = prem.subject.free_vars();
        avoid.insert(from);
        avoid.insert(to);
        std::string nb = fresh_avoiding(b, avoid);
        prem = rename_free(prem, b, nb);
        b = nb;
      }
      return make_lam(d.subject.player(), b, rename_free(prem, from, to),
                      d.linear().to());
    }
    case Rule::AppSilent:
    case Rule::AppInter:
      return make_app(d.subject.player(), rename_free(d.premises[0], from, to),
                      rename_free(d.premises[1], from, to));
  }
  throw DerivationError("unknown rule");
}

// Opens the binder of a Lam node with a name outside avoid.
std::pair<std::string, Derivation> open_lam(const Derivation& d,
                                            std::set<std::string> avoid) {
  std::string b = lam_binder(d);
  Derivation prem = d.premises[0];
  if (avoid.count(b)) {
    auto fv = prem.subject.free_vars();
    avoid.insert(fv.begin(), fv.end());
    std::string nb = fresh_avoiding(b, avoid);
    prem = rename_free(prem, b, nb);
    b = nb;
  }
  return {b, prem};
}

// Regroups the premises of a Many node into one Many node per part.
std::vector<Derivation> split_parts(const Derivation& d,
                                    const std::vector<MultiType>& parts) {
  if (!d.is_many()) throw DerivationError("split of a non-many node");
  std::vector<bool> used(d.premises.size(), false);
  std::vector<Derivation> out;
  for (const MultiType& part : parts) {
    std::vector<Derivation> ps;
    for (const LinearType& l : part.elems()) {
      bool found = false;
      for (std::size_t j = 0; j < d.premises.size() && !found; ++j) {
        if (!used[j] && d.premises[j].linear() == l) {
          used[j] = found = true;
          ps.push_back(d.premises[j]);
        }
      }
      if (!found)
        throw DerivationError("split: " + to_string(l) + " missing from " +
                              to_string(d.multi()));
    }
    out.push_back(make_many(d.subject, std::move(ps)));
  }
  if (std::find(used.begin(), used.end(), false) != used.end())
    throw DerivationError("split: parts do not cover the multiset");
  return out;
}

Derivation subst_rec(const Derivation& d, const std::string& x,
                     const Derivation& du, const std::set<std::string>& fvu) {
  if (!d.subject.has_free(x)) return d;
  const CTerm& u = du.subject;
  switch (d.rule) {
    case Rule::Ax:
      return du.premises.at(0);
    case Rule::Many: {
      std::vector<MultiType> parts;
      for (const Derivation& p : d.premises) parts.push_back(p.env.get(x));
      auto us = split_parts(du, parts);
      std::vector<Derivation> ps;
      for (std::size_t i = 0; i < d.premises.size(); ++i)
        ps.push_back(subst_rec(d.premises[i], x, us[i], fvu));
      return make_many(substitute(d.subject, x, u), std::move(ps));
    }
    case Rule::Lam: {
      std::set<std::string> avoid = fvu;
      avoid.insert(x);
      auto [b, prem] = open_lam(d, avoid);
      return make_lam(d.subject.player(), b, subst_rec(prem, x, du, fvu),
                      d.linear().to());
    }
    case Rule::AppSilent:
    case Rule::AppInter: {
      auto us = split_parts(
          du, {d.premises[0].env.get(x), d.premises[1].env.get(x)});
      return make_app(d.subject.player(),
                      subst_rec(d.premises[0], x, us[0], fvu),
                      subst_rec(d.premises[1], x, us[1], fvu));
    }
  }
  throw DerivationError("unknown rule");
}

struct AntiCtx {
  const std::string& x;
  const CTerm& u;
  std::set<std::string> fvu;
};

AntiSubst anti_rec(const Derivation& d, const CTerm& t, const AntiCtx& c) {
  if (d.is_many()) {
    MultiType m;
    std::vector<Derivation> ts, us;
    for (const Derivation& p : d.premises) {
      AntiSubst r = anti_rec(p, t, c);
      m = m + r.m;
      ts.push_back(std::move(r.d_t));
      for (Derivation& q : r.d_u.premises) us.push_back(std::move(q));
    }
    return {m, make_many(t, std::move(ts)), make_many(c.u, std::move(us))};
  }
  if (t.is_var() && t.name() == c.x)
    return {MultiType({d.linear()}), make_ax(c.x, d.linear()),
            make_many(c.u, {d})};
  if (!t.has_free(c.x)) return {MultiType(), d, make_many(c.u, {})};
  if (t.is_lam()) {
    if (d.rule != Rule::Lam) throw DerivationError("anti-subst: expected lam");
    std::set<std::string> avoid = c.fvu;
    auto fvt = t.free_vars();
    avoid.insert(fvt.begin(), fvt.end());
    avoid.insert(c.x);
    auto [b, prem] = open_lam(d, avoid);
    AntiSubst r = anti_rec(prem, t.open(b), c);
    return {r.m, make_lam(t.player(), b, r.d_t, d.linear().to()), r.d_u};
  }
  if (!is_app_rule(d.rule))
    throw DerivationError("anti-subst: expected an application");
  AntiSubst f = anti_rec(d.premises[0], t.fun(), c);
  AntiSubst a = anti_rec(d.premises[1], t.arg(), c);
  return {f.m + a.m, make_app(t.player(), f.d_t, a.d_t),
          merge_derivations(f.d_u, a.d_u)};
}

}  // namespace

std::pair<Derivation, Derivation> split_derivation(const Derivation& d,
                                                   const MultiType& n,
                                                   const MultiType& o) {
  if (!d.is_many()) throw DerivationError("split of a non-many node");
  if (!(n + o == d.multi()))
    throw DerivationError("split: " + to_string(n) + " + " + to_string(o) +
                          " is not " + to_string(d.multi()));
  auto parts = split_parts(d, {n, o});
  return {parts[0], parts[1]};
}

Derivation merge_derivations(const Derivation& a, const Derivation& b) {
  if (!a.is_many() || !b.is_many())
    throw DerivationError("merge of a non-many node");
  if (!(a.subject == b.subject))
    throw DerivationError("merge of derivations of different subjects");
  std::vector<Derivation> ps = a.premises;
  ps.insert(ps.end(), b.premises.begin(), b.premises.end());
  return make_many(a.subject, std::move(ps));
}

Derivation subst_derivation(const Derivation& d_t, const std::string& x,
                            const Derivation& d_u) {
  if (!d_u.is_many())
    throw DerivationError("substituted derivation must be a many node");
  if (!(d_t.env.get(x) == d_u.multi()))
    throw DerivationError("substitution: " + x + " is typed " +
                          to_string(d_t.env.get(x)) + ", argument gives " +
                          to_string(d_u.multi()));
  return subst_rec(d_t, x, d_u, d_u.subject.free_vars());
}

AntiSubst anti_subst_derivation(const Derivation& d, const CTerm& t,
                                const std::string& x, const CTerm& u) {
  if (!(d.subject == substitute(t, x, u)))
    throw DerivationError("anti-subst: subject is not t[x<-u]");
  return anti_rec(d, t, AntiCtx{x, u, u.free_vars()});
}

namespace {

Derivation reduce_rec(const Derivation& d, const Position& pos,
                      std::size_t i) {
  if (d.is_many()) {
    std::vector<Derivation> ps;
    for (const Derivation& p : d.premises) ps.push_back(reduce_rec(p, pos, i));
    CTerm s = ps.empty()
                  ? step_at(d.subject, Position(pos.begin() + i, pos.end()))
                        .value()
                        .term
                  : ps[0].subject;
    return make_many(s, std::move(ps));
  }
  if (i == pos.size()) {
    if (!is_app_rule(d.rule) || d.premises[0].rule != Rule::Lam)
      throw DerivationError("reduce: no redex at the position");
    const Derivation& f = d.premises[0];
    return subst_derivation(f.premises[0], lam_binder(f), d.premises[1]);
  }
  if (d.rule == Rule::Lam) {
    std::string b = lam_binder(d);
    return make_lam(d.subject.player(), b, reduce_rec(d.premises[0], pos, i + 1),
                    d.linear().to());
  }
  if (!is_app_rule(d.rule)) throw DerivationError("reduce: bad position");
  if (pos[i] == 0)
    return make_app(d.subject.player(), reduce_rec(d.premises[0], pos, i + 1),
                    d.premises[1]);
  return make_app(d.subject.player(), d.premises[0],
                  reduce_rec(d.premises[1], pos, i + 1));
}

Derivation expand_rec(const Derivation& d, const CTerm& ct, const Position& pos,
                      std::size_t i) {
  if (d.is_many()) {
    std::vector<Derivation> ps;
    for (const Derivation& p : d.premises)
      ps.push_back(expand_rec(p, ct, pos, i));
    return make_many(ct, std::move(ps));
  }
  if (i == pos.size()) {
    CTerm f = ct.fun();
    auto [z, body] = f.unbind(ct.free_vars());
    AntiSubst r = anti_subst_derivation(d, body, z, ct.arg());
    Derivation lam = make_lam(f.player(), z, r.d_t, ct.player());
    return make_app(ct.player(), lam, r.d_u);
  }
  if (ct.is_lam()) {
    if (d.rule != Rule::Lam) throw DerivationError("expand: expected lam");
    auto [b, prem] = open_lam(d, ct.free_vars());
    return make_lam(ct.player(), b, expand_rec(prem, ct.open(b), pos, i + 1),
                    d.linear().to());
  }
  if (!is_app_rule(d.rule))
    throw DerivationError("expand: expected an application");
  if (pos[i] == 0)
    return make_app(ct.player(), expand_rec(d.premises[0], ct.fun(), pos, i + 1),
                    d.premises[1]);
  return make_app(ct.player(), d.premises[0],
                  expand_rec(d.premises[1], ct.arg(), pos, i + 1));
}

}  // namespace

Derivation reduce_at(const Derivation& d, const Position& pos) {
  if (!step_at(d.subject, pos))
    throw DerivationError("reduce: no redex at the position");
  return reduce_rec(d, pos, 0);
}

Derivation expand_at(const Derivation& d, const CTerm& before,
                     const Position& pos) {
  auto s = step_at(before, pos);
  if (!s || !(s->term == d.subject))
    throw DerivationError("expand: subject is not the reduct");
  return expand_rec(d, before, pos, 0);
}

Derivation subject_reduce(const Derivation& d) {
  auto pos = head_position(d.subject);
  if (!pos) throw std::invalid_argument("subject is a head normal form");
  return reduce_at(d, *pos);
}

Derivation subject_expand(const Derivation& d, const CTerm& before) {
  auto pos = head_position(before);
  if (!pos) throw std::invalid_argument("term is a head normal form");
  return expand_at(d, before, *pos);
}

std::optional<TightResult> infer_tight(const CTerm& ct, std::uint64_t fuel) {
  Trace tr = evaluate_head_trace(ct, fuel);
  if (!tr.outcome.normal()) return std::nullopt;
  Derivation d = derive_hnf_tight(tr.outcome.term);
  for (std::size_t j = tr.steps.size(); j-- > 0;)
    d = subject_expand(d, j == 0 ? ct : tr.steps[j - 1].term);
  std::uint64_t k = d.k;
  return TightResult{std::move(d), k};
}

// ---------------------------------------------------------------------------
// Transport along the Böhm preorder

namespace {

struct Transport {
  std::size_t depth;
  std::uint64_t fuel;

  std::optional<Derivation> run(const Derivation& d, const CTerm& u,
                                std::size_t level) const {
    if (d.is_many()) {
      std::vector<Derivation> ps;
      for (const Derivation& p : d.premises) {
        auto r = run(p, u, level);
        if (!r) return std::nullopt;
        ps.push_back(std::move(*r));
      }
      return make_many(u, std::move(ps));
    }
    if (level >= depth) return std::nullopt;
    // Each head step drops the size by one, so this terminates.
    Derivation dh = d;
    while (!is_hnf(dh.subject)) dh = subject_reduce(dh);
    Trace tu = evaluate_head_trace(u, fuel);
    if (!tu.outcome.normal()) return std::nullopt;

    struct Binder {
      Player player;
      std::string name;
      Player to;
    };
    std::vector<Binder> lams;
    Derivation cur = dh;
    CTerm cu = tu.outcome.term;
    while (cur.rule == Rule::Lam) {
      if (!cu.is_lam() || cu.player() != cur.subject.player())
        return std::nullopt;
      std::set<std::string> avoid = cu.free_vars();
      auto [b, prem] = open_lam(cur, avoid);
      lams.push_back({cur.subject.player(), b, cur.linear().to()});
      cur = prem;
      cu = cu.open(b);
    }
    if (cu.is_lam()) return std::nullopt;

    std::vector<Derivation> args_t;
    std::vector<Player> players_t;
    while (is_app_rule(cur.rule)) {
      args_t.push_back(cur.premises[1]);
      players_t.push_back(cur.subject.player());
      Derivation f = cur.premises[0];
      cur = std::move(f);
    }
    std::vector<CTerm> args_u;
    std::vector<Player> players;
    while (cu.is_app()) {
      args_u.push_back(cu.arg());
      players.push_back(cu.player());
      cu = cu.fun();
    }
    if (cur.rule != Rule::Ax || args_t.size() != args_u.size() ||
        players_t != players || cur.subject.name() != cu.name())
      return std::nullopt;

    Derivation out = cur;
    for (std::size_t i = args_t.size(); i-- > 0;) {
      std::vector<Derivation> ps;
      for (const Derivation& p : args_t[i].premises) {
        auto r = run(p, args_u[i], level + 1);
        if (!r) return std::nullopt;
        ps.push_back(std::move(*r));
      }
      out = make_app(players[i], out, make_many(args_u[i], std::move(ps)));
    }
    for (auto it = lams.rbegin(); it != lams.rend(); ++it)
      out = make_lam(it->player, it->name, out, it->to);
    for (std::size_t j = tu.steps.size(); j-- > 0;)
      out = subject_expand(out, j == 0 ? u : tu.steps[j - 1].term);
    return out;
  }
};

}  // namespace

std::optional<Derivation> transport_bohm(const Derivation& d, const Term& t,
                                         const Term& u, std::size_t depth,
                                         std::uint64_t fuel) {
  if (!(d.subject == lift(Player::Black, t)))
    throw DerivationError("transport: derivation does not type the black t");
  return Transport{depth, fuel}.run(d, lift(Player::Black, u), 0);
}

// ---------------------------------------------------------------------------
// Bounded enumeration

namespace {

void multisets(const std::vector<LinearType>& pool, std::size_t max_card,
               std::size_t from, std::vector<LinearType>& cur,
               std::vector<MultiType>& out) {
  out.push_back(MultiType(cur));
  if (cur.size() == max_card) return;
  for (std::size_t i = from; i < pool.size(); ++i) {
    cur.push_back(pool[i]);
    multisets(pool, max_card, i, cur, out);
    cur.pop_back();
  }
}

struct Key {
  TypeEnv env;
  std::uint64_t k;
  LinearType type;
  auto operator<=>(const Key&) const = default;
};

struct Entry {
  std::size_t size;
  Derivation d;
};

struct ManyKey {
  TypeEnv env;
  std::uint64_t k;
  auto operator<=>(const ManyKey&) const = default;
};

struct ManyEntry {
  std::size_t size;
  std::vector<Derivation> premises;
};

using Table = std::map<Key, Entry>;
using ManyTable = std::map<ManyKey, ManyEntry>;

template <class M, class K, class E>
void keep_smaller(M& table, K key, E entry) {
  auto it = table.find(key);
  if (it == table.end())
    table.emplace(std::move(key), std::move(entry));
  else if (entry.size < it->second.size)
    it->second = std::move(entry);
}

class Enumerator {
 public:
  Enumerator(std::size_t cap, const EnumConfig& cfg)
      : cap_(cap), cfg_(cfg), universe_(type_universe(cfg)) {}

  Table lin(const CTerm& s) {
    Table out;
    switch (s.kind()) {
      case TermKind::Var:
        for (const LinearType& l : universe_)
          out.emplace(Key{TypeEnv::single(s.name(), MultiType({l})), 0, l},
                      Entry{0, make_ax(s.name(), l)});
        break;
      case TermKind::Lam: {
        auto [z, body] = s.unbind(s.free_vars());
        for (const auto& [key, e] : lin(body))
          for (Player to : {Player::Black, Player::White}) {
            Derivation d = make_lam(s.player(), z, e.d, to);
            keep_smaller(out, Key{d.env, d.k, d.linear()}, Entry{e.size, d});
          }
        break;
      }
      case TermKind::App: {
        Table tf = lin(s.fun());
        Table ta = lin(s.arg());
        std::map<MultiType, ManyTable> memo;
        for (const auto& [key, e] : tf) {
          const LinearType& l = key.type;
          if (l.is_atom() || l.to() != s.player() ||
              l.arg().size() > cfg_.max_card || e.size + 1 > cap_)
            continue;
          auto it = memo.find(l.arg());
          if (it == memo.end())
            it = memo.emplace(l.arg(), many(ta, l.arg())).first;
          for (const auto& [mk, me] : it->second) {
            std::size_t sz = e.size + me.size + 1;
            if (sz > cap_) continue;
            Derivation d =
                make_app(s.player(), e.d, make_many(s.arg(), me.premises));
            keep_smaller(out, Key{d.env, d.k, d.linear()}, Entry{sz, d});
          }
        }
        break;
      }
    }
    return out;
  }

 private:
  // Ways of typing the argument with exactly the multiset m.
  ManyTable many(const Table& ta, const MultiType& m) {
    ManyTable out;
    out.emplace(ManyKey{TypeEnv(), 0}, ManyEntry{0, {}});
    for (const LinearType& want : m.elems()) {
      ManyTable next;
      for (const auto& [mk, me] : out)
        for (const auto& [key, e] : ta) {
          if (!(key.type == want) || me.size + e.size > cap_) continue;
          ManyEntry ne{me.size + e.size, me.premises};
          ne.premises.push_back(e.d);
          keep_smaller(next, ManyKey{mk.env + key.env, mk.k + key.k},
                       std::move(ne));
        }
      out = std::move(next);
    }
    return out;
  }

  std::size_t cap_;
  EnumConfig cfg_;
  std::vector<LinearType> universe_;
};

}  // namespace

std::vector<LinearType> type_universe(const EnumConfig& cfg) {
  std::set<LinearType> all{LinearType::atom()};
  for (std::size_t level = 0; level < cfg.type_depth; ++level) {
    std::vector<LinearType> pool(all.begin(), all.end());
    std::vector<MultiType> ms;
    std::vector<LinearType> cur;
    multisets(pool, cfg.max_card, 0, cur, ms);
    for (const MultiType& m : ms)
      for (const LinearType& res : pool)
        for (Player f : {Player::Black, Player::White})
          for (Player t : {Player::Black, Player::White})
            all.insert(LinearType::arrow(m, f, t, res));
  }
  return {all.begin(), all.end()};
}

std::vector<Typing> enumerate_typings(const CTerm& ct, std::size_t size_cap,
                                      const EnumConfig& cfg) {
  Enumerator en(size_cap, cfg);
  std::vector<Typing> out;
  for (auto& [key, e] : en.lin(ct))
    out.push_back(Typing{key.env, key.k, key.type, e.size, std::move(e.d)});
  return out;
}

}  // namespace checkers
