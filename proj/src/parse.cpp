// Copyright 2026 The checkers-lambda Authors.
// SPDX-License-Identifier: Apache-2.0

// Surface syntax. Ordinary terms: \x y. t, juxtaposition. Checkers terms:
// \b x. t, \w x. t, t @b u, t @w u. Contexts add the hole [].

#include <cctype>
#include <map>
#include <unordered_map>

#include "checkers/syntax.hpp"
#include "node.hpp"

namespace checkers {

using detail::Kind;
using detail::NodePtr;

namespace {

enum class Tok { Lambda, Ident, Dot, LParen, RParen, Hole, At, End };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
  std::uint8_t tag = 0;  // At only
};

bool ident_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '\'';
}

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) { advance(); }
  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
    cur_ = Token{Tok::End, i_, {}};
    if (i_ >= s_.size()) return;
    char c = s_[i_];
    if (c == '\\') {
      cur_.kind = Tok::Lambda;
      ++i_;
    } else if (s_.substr(i_, 2) == "\xCE\xBB") {  // U+03BB
      cur_.kind = Tok::Lambda;
      i_ += 2;
    } else if (c == '.') {
      cur_.kind = Tok::Dot;
      ++i_;
    } else if (c == '(') {
      cur_.kind = Tok::LParen;
      ++i_;
    } else if (c == ')') {
      cur_.kind = Tok::RParen;
      ++i_;
    } else if (c == '[') {
      if (s_.substr(i_, 2) != "[]") throw ParseError("expected []", i_);
      cur_.kind = Tok::Hole;
      i_ += 2;
    } else if (c == '@') {
      if (i_ + 1 >= s_.size() || (s_[i_ + 1] != 'b' && s_[i_ + 1] != 'w') ||
          (i_ + 2 < s_.size() && ident_char(s_[i_ + 2])))
        throw ParseError("expected @b or @w", i_);
      cur_.kind = Tok::At;
      cur_.tag = s_[i_ + 1] == 'b' ? 1 : 2;
      i_ += 2;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_;
      while (j < s_.size() && ident_char(s_[j])) ++j;
      cur_.kind = Tok::Ident;
      cur_.text = std::string(s_.substr(i_, j - i_));
      i_ = j;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", i_);
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
  Token cur_{Tok::End, 0, {}};
};

class Parser {
 public:
  Parser(std::string_view text, bool tagged, bool context)
      : lex_(text), tagged_(tagged), context_(context) {}

  NodePtr parse() {
    NodePtr t = expr();
    if (lex_.peek().kind != Tok::End)
      throw ParseError("unexpected trailing input", lex_.peek().pos);
    if (context_ && t->holes != 1)
      throw ParseError("a context needs exactly one hole", 0);
    return t;
  }

 private:
  static bool atom_start(Tok k) {
    return k == Tok::Ident || k == Tok::LParen || k == Tok::Hole;
  }

  NodePtr expr() {
    if (lex_.peek().kind == Tok::Lambda) return lambda();
    return application();
  }

  NodePtr lambda() {
    Token lam = lex_.take();
    std::uint8_t tag = detail::kUntagged;
    if (tagged_) {
      Token p = lex_.take();
      if (p.kind != Tok::Ident || (p.text != "b" && p.text != "w"))
        throw ParseError("checkers abstraction needs a player b or w", p.pos);
      tag = p.text == "b" ? 1 : 2;
    }
    std::vector<std::string> binders;
    while (lex_.peek().kind == Tok::Ident) {
      Token b = lex_.take();
      if (is_reserved_name(b.text))
        throw ParseError("reserved name '" + b.text + "' cannot be bound", b.pos);
      binders.push_back(b.text);
    }
    if (binders.empty()) throw ParseError("expected a binder", lex_.peek().pos);
    if (lex_.peek().kind != Tok::Dot)
      throw ParseError("expected '.'", lex_.peek().pos);
    lex_.take();
    (void)lam;
    NodePtr body = expr();
    for (auto it = binders.rbegin(); it != binders.rend(); ++it)
      body = detail::mk_lam(tag, *it, detail::abstract(body, *it));
    return body;
  }

  NodePtr application() {
    NodePtr left = atom();
    for (;;) {
      Tok k = lex_.peek().kind;
      if (!tagged_) {
        if (atom_start(k)) {
          left = detail::mk_app(detail::kUntagged, left, atom());
        } else if (k == Tok::Lambda) {
          return detail::mk_app(detail::kUntagged, left, lambda());
        } else {
          return left;
        }
      } else if (k == Tok::At) {
        std::uint8_t tag = lex_.take().tag;
        if (lex_.peek().kind == Tok::Lambda)
          return detail::mk_app(tag, left, lambda());
        left = detail::mk_app(tag, left, atom());
      } else if (atom_start(k) || k == Tok::Lambda) {
        throw ParseError("checkers application needs @b or @w", lex_.peek().pos);
      } else {
        return left;
      }
    }
  }

  NodePtr atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case Tok::Ident:
        return identifier(t);
      case Tok::LParen: {
        NodePtr e = expr();
        if (lex_.peek().kind != Tok::RParen)
          throw ParseError("expected ')'", lex_.peek().pos);
        lex_.take();
        return e;
      }
      case Tok::Hole:
        if (!context_) throw ParseError("hole outside a context", t.pos);
        return detail::mk_hole();
      default:
        throw ParseError("expected a term", t.pos);
    }
  }

  NodePtr identifier(const Token& t) {
    std::string_view name = t.text;
    std::uint8_t tag = 1;
    bool suffixed = false;
    if (name.size() > 2 && name[name.size() - 2] == '_' &&
        (name.back() == 'b' || name.back() == 'w') &&
        combinator(name.substr(0, name.size() - 2))) {
      tag = name.back() == 'b' ? 1 : 2;
      name = name.substr(0, name.size() - 2);
      suffixed = true;
    }
    if (auto c = combinator(name)) {
      if (!tagged_) {
        if (suffixed)
          throw ParseError("player suffix in an ordinary term", t.pos);
        return c->node();
      }
      return detail::retag(c->node(), tag);
    }
    if (is_reserved_name(t.text))
      throw ParseError("malformed combinator name '" + t.text + "'", t.pos);
    return detail::mk_free(t.text);
  }

  Lexer lex_;
  bool tagged_;
  bool context_;
};

struct ShorthandTable {
  std::unordered_multimap<std::size_t, std::pair<std::string, NodePtr>> by_hash;

  void add(const std::string& name, const NodePtr& n) {
    by_hash.emplace(n->hash, std::make_pair(name, n));
  }

  const std::string* find(const NodePtr& n) const {
    auto [lo, hi] = by_hash.equal_range(n->hash);
    const std::string* best = nullptr;
    for (auto it = lo; it != hi; ++it) {
      if (detail::equal(it->second.second, n)) {
        if (!best) best = &it->second.first;
      }
    }
    return best;
  }
};

const ShorthandTable& shorthand_table(bool tagged) {
  static const ShorthandTable plain = [] {
    ShorthandTable t;
    std::vector<std::string> names = {"I", "K", "F", "One", "D", "Y", "Om"};
    for (int n = 1; n <= 9; ++n) names.push_back("T" + std::to_string(n));
    for (int n = 1; n <= 9; ++n)
      for (int i = 1; i <= n; ++i)
        names.push_back("P" + std::to_string(n) + "_" + std::to_string(i));
    for (const auto& nm : names) {
      NodePtr n = combinator(nm)->node();
      if (!t.find(n)) t.add(nm, n);
    }
    return t;
  }();
  static const ShorthandTable checkers = [] {
    ShorthandTable t;
    for (const auto& [h, entry] : plain.by_hash) {
      (void)h;
      t.add(entry.first + "_b", detail::retag(entry.second, 1));
      t.add(entry.first + "_w", detail::retag(entry.second, 2));
    }
    return t;
  }();
  return tagged ? checkers : plain;
}

class Printer {
  using Node = detail::Node;

 public:
  Printer(bool tagged, PrintOptions opts, const NodePtr& root)
      : tagged_(tagged), opts_(opts) {
    detail::collect_free(root, free_);
  }

  std::string run(const NodePtr& n) {
    expr(n);
    return out_;
  }

 private:
  bool shorthand(const NodePtr& n) {
    if (!opts_.shorthands || n->loose != 0 || n->holes != 0) return false;
    if (const std::string* s = shorthand_table(tagged_).find(n)) {
      out_ += *s;
      return true;
    }
    return false;
  }

  // Shadowing is allowed unless the body still refers to the shadowed
  // binder; context holes rely on keeping the innermost names.
  std::string bind(const std::string& hint, const NodePtr& body) {
    std::string x = fresh_name(hint, [&](const std::string& s) {
      if (free_.count(s) > 0 && detail::occurs_free(body, s)) return true;
      for (std::size_t d = 0; d < scope_.size(); ++d) {
        if (scope_[scope_.size() - 1 - d] == s &&
            detail::uses_index(body, static_cast<std::uint32_t>(d + 1)))
          return true;
      }
      return false;
    });
    scope_.push_back(x);
    in_scope_.insert(x);
    return x;
  }

  void unbind_last() {
    in_scope_.erase(in_scope_.find(scope_.back()));
    scope_.pop_back();
  }

  void expr(const NodePtr& n) {
    if (n->kind != Kind::Lam) {
      application(n);
      return;
    }
    if (shorthand(n)) return;
    out_ += '\\';
    if (tagged_) {
      out_ += n->tag == 1 ? 'b' : 'w';
      out_ += ' ';
    }
    const Node* cur = n.get();
    std::size_t pushed = 0;
    NodePtr body = n;
    for (;;) {
      if (pushed) out_ += ' ';
      out_ += bind(cur->name, cur->a);
      ++pushed;
      body = cur->a;
      if (body->kind != Kind::Lam || body->tag != n->tag) break;
      if (opts_.shorthands && body->loose == 0 && body->holes == 0 &&
          shorthand_table(tagged_).find(body))
        break;
      cur = body.get();
    }
    out_ += ". ";
    expr(body);
    for (std::size_t i = 0; i < pushed; ++i) unbind_last();
  }

  void application(const NodePtr& n) {
    if (n->kind != Kind::App || shorthand(n)) {
      if (n->kind != Kind::App) atom(n);
      return;
    }
    const NodePtr& f = n->a;
    if (f->kind == Kind::Lam && !(opts_.shorthands && is_named(f))) {
      paren(f);
    } else {
      application(f);
    }
    if (tagged_) {
      out_ += n->tag == 1 ? " @b " : " @w ";
    } else {
      out_ += ' ';
    }
    atom(n->b);
  }

  bool is_named(const NodePtr& n) {
    return n->loose == 0 && n->holes == 0 &&
           shorthand_table(tagged_).find(n) != nullptr;
  }

  void paren(const NodePtr& n) {
    out_ += '(';
    expr(n);
    out_ += ')';
  }

  void atom(const NodePtr& n) {
    switch (n->kind) {
      case Kind::Free:
        out_ += n->name;
        return;
      case Kind::Bound:
        if (n->index >= scope_.size()) {
          out_ += "?" + std::to_string(n->index);
        } else {
          out_ += scope_[scope_.size() - 1 - n->index];
        }
        return;
      case Kind::Hole:
        out_ += "[]";
        return;
      default:
        if (opts_.shorthands && is_named(n)) {
          shorthand(n);
          return;
        }
        paren(n);
    }
  }

  bool tagged_;
  PrintOptions opts_;
  std::set<std::string> free_;
  std::vector<std::string> scope_;
  std::multiset<std::string> in_scope_;
  std::string out_;
};

}  // namespace

Term parse_term(std::string_view text) {
  return Term(Parser(text, false, false).parse());
}

CTerm parse_cterm(std::string_view text) {
  return CTerm(Parser(text, true, false).parse());
}

Context parse_context(std::string_view text) {
  return Context(Parser(text, false, true).parse());
}

CContext parse_ccontext(std::string_view text) {
  return CContext(Parser(text, true, true).parse());
}

std::string print(const Term& t, PrintOptions opts) {
  return Printer(false, opts, t.node()).run(t.node());
}

std::string print(const CTerm& t, PrintOptions opts) {
  return Printer(true, opts, t.node()).run(t.node());
}

std::string print(const Context& c, PrintOptions opts) {
  return Printer(false, opts, c.node()).run(c.node());
}

std::string print(const CContext& c, PrintOptions opts) {
  return Printer(true, opts, c.node()).run(c.node());
}

}  // namespace checkers
