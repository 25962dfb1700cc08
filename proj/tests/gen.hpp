// Copyright 2026 The checkers-lambda Authors.
// SPDX-License-Identifier: Apache-2.0

// Small hand-rolled term generators for property tests.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "checkers/syntax.hpp"

namespace checkers::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return n ? rng_() % n : 0; }
  bool coin() { return rng_() & 1; }
  Player player() { return coin() ? Player::Black : Player::White; }

  // Term with about `size` constructors; free variables drawn from a, b, c
  // unless closed.
  Term term(std::size_t size, bool closed = false) {
    std::vector<std::string> scope;
    return term_in(size, scope, closed);
  }

  CTerm tagging(const Term& t) {
    switch (t.kind()) {
      case TermKind::Var:
        return CTerm::var(t.name());
      case TermKind::Lam: {
        auto [x, body] = t.unbind();
        return CTerm::lam(player(), x, tagging(body));
      }
      case TermKind::App:
        return CTerm::app(player(), tagging(t.fun()), tagging(t.arg()));
    }
    return CTerm::var("?");
  }

  CTerm cterm(std::size_t size, bool closed = false) {
    return tagging(term(size, closed));
  }

 private:
  Term term_in(std::size_t size, std::vector<std::string>& scope, bool closed) {
    static const char* kFree[] = {"a", "b", "c"};
    if (size <= 1) {
      if (!scope.empty() && (closed || below(4) != 0))
        return Term::var(scope[below(scope.size())]);
      if (closed) return Term::lam("x", Term::var("x"));
      return Term::var(kFree[below(3)]);
    }
    if (below(3) == 0 || size == 2) {
      std::string x = "x" + std::to_string(scope.size());
      scope.push_back(x);
      Term body = term_in(size - 1, scope, closed);
      scope.pop_back();
      return Term::lam(x, body);
    }
    std::size_t left = 1 + below(size - 2);
    Term f = term_in(left, scope, closed);
    Term a = term_in(size - 1 - left, scope, closed);
    return Term::app(f, a);
  }

  std::mt19937_64 rng_;
};

}  // namespace checkers::testing
