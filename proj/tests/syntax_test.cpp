// Copyright 2026 The checkers-lambda Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "checkers/syntax.hpp"
#include "gen.hpp"
#include "node.hpp"

namespace checkers {
namespace {

using testing::Gen;

const Player B = Player::Black;
const Player W = Player::White;

Term V(const char* x) { return Term::var(x); }
CTerm CV(const char* x) { return CTerm::var(x); }

TEST(Player, OppositeIsAnInvolution) {
  EXPECT_EQ(opposite(B), W);
  EXPECT_EQ(opposite(opposite(B)), B);
  EXPECT_EQ(opposite(opposite(W)), W);
}

TEST(Parse, Identity) {
  EXPECT_EQ(parse_term("\\x.x"), Term::lam("x", V("x")));
}

TEST(Parse, BlackSelfApplication) {
  EXPECT_EQ(parse_cterm("\\b x. x @b x"),
            CTerm::lam(B, "x", CTerm::app(B, CV("x"), CV("x"))));
}

TEST(Parse, DeltaDelta) {
  Term d = Term::lam("x", Term::app(V("x"), V("x")));
  EXPECT_EQ(parse_term("(\\x.x x)(\\x.x x)"), Term::app(d, d));
}

TEST(Parse, MultiBinderAndAssociativity) {
  EXPECT_EQ(parse_term("\\x y. x y z"),
            Term::lam("x", Term::lam("y", Term::app(Term::app(V("x"), V("y")),
                                                    V("z")))));
  EXPECT_EQ(parse_cterm("x @w y @b z"),
            CTerm::app(B, CTerm::app(W, CV("x"), CV("y")), CV("z")));
  EXPECT_EQ(parse_cterm("\\b x y. x"), parse_cterm("\\b x. \\b y. x"));
  EXPECT_EQ(parse_term("f \\x. x x"),
            Term::app(V("f"), Term::lam("x", Term::app(V("x"), V("x")))));
}

TEST(Parse, AlphaEquivalentSpellings) {
  EXPECT_EQ(parse_term("\\x.\\y. x y"), parse_term("\\a b. a b"));
  EXPECT_FALSE(parse_term("\\x y. x") == parse_term("\\x y. y"));
  EXPECT_FALSE(parse_cterm("\\b x. x") == parse_cterm("\\w x. x"));
}

TEST(Parse, Combinators) {
  EXPECT_EQ(parse_term("I"), parse_term("\\x.x"));
  EXPECT_EQ(parse_term("K"), parse_term("\\x y.x"));
  EXPECT_EQ(parse_term("F"), parse_term("\\x y.y"));
  EXPECT_EQ(parse_term("Y"),
            parse_term("\\f.(\\x.f (x x)) (\\x.f (x x))"));
  EXPECT_EQ(parse_term("Om"), parse_term("Y I"));
  EXPECT_EQ(parse_term("T2"), parse_term("\\a b. \\z. z a b"));
  EXPECT_EQ(parse_term("T0"), parse_term("I"));
  EXPECT_EQ(parse_term("P3_2"), parse_term("\\a b c. b"));
  EXPECT_EQ(parse_term("P1_1"), parse_term("I"));
  EXPECT_EQ(parse_cterm("I"), parse_cterm("\\b x. x"));
  EXPECT_EQ(parse_cterm("I_w"), parse_cterm("\\w x. x"));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_term("\\x. "), ParseError);
  EXPECT_THROW(parse_term("(x y"), ParseError);
  EXPECT_THROW(parse_term("x ) y"), ParseError);
  EXPECT_THROW(parse_term("[]"), ParseError);
  EXPECT_THROW(parse_cterm("x y"), ParseError);
  EXPECT_THROW(parse_cterm("\\x. x"), ParseError);
  EXPECT_THROW(parse_term("\\I. I"), ParseError);
  EXPECT_THROW(parse_term("P2_3"), ParseError);
  EXPECT_THROW(parse_context("[] []"), ParseError);
  EXPECT_THROW(parse_context("x"), ParseError);
  try {
    parse_term("x $");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
}

TEST(Print, InventsNamesAvoidingCapture) {
  // \y. x with x := y must not capture.
  Term t = substitute(Term::lam("y", V("x")), "x", V("y"));
  EXPECT_EQ(print(t), "\\y'. y");
  EXPECT_EQ(parse_term(print(t)), t);
  EXPECT_EQ(print(parse_term("\\x. \\x. x")), "\\x x. x");
  EXPECT_EQ(print(parse_term("\\x. \\x. x x'")), "\\x x. x x'");
  EXPECT_EQ(print(parse_term("\\x. \\y. x")), "\\x y. x");
  Term outer = Term::lam("x", Term::app(V("x"), Term::lam("x", V("q"))));
  EXPECT_EQ(parse_term(print(outer)), outer);
  EXPECT_EQ(print(parse_cterm("\\b x. \\w y. x @w y @b x")),
            "\\b x. \\w y. x @w y @b x");
  EXPECT_EQ(print(parse_term("(\\x. x) (y z)")), "(\\x. x) (y z)");
}

TEST(Print, Shorthands) {
  PrintOptions o{.shorthands = true};
  EXPECT_EQ(print(parse_context("[] T2 I P2_1 P2_2"), o), "[] T2 I K F");
  EXPECT_EQ(print(parse_cterm("I_b @w Y_w"), o), "I_b @w Y_w");
}

TEST(Substitute, Examples) {
  Term u = parse_term("\\z. z");
  EXPECT_EQ(substitute(V("x"), "x", u), u);
  Term r = substitute(Term::lam("y", V("x")), "x", V("y"));
  ASSERT_TRUE(r.is_lam());
  EXPECT_TRUE(r.has_free("y"));
  auto [y2, body] = r.unbind();
  EXPECT_NE(y2, "y");
  EXPECT_EQ(body, V("y"));
  Term om = parse_term("Om");
  EXPECT_EQ(substitute(Term::app(V("x"), V("x")), "x", om), Term::app(om, om));
}

TEST(Lift, Examples) {
  EXPECT_EQ(lift(B, parse_term("\\x.x")), parse_cterm("\\b x. x"));
  EXPECT_EQ(lift(B, parse_term("\\x y. x y")),
            parse_cterm("\\b x. \\b y. x @b y"));
  EXPECT_EQ(lift_context(W, parse_context("[] z w")),
            parse_ccontext("[] @w z @w w"));
}

TEST(Wash, Examples) {
  EXPECT_EQ(wash(parse_cterm("\\b x. x")), parse_term("\\x. x"));
  EXPECT_EQ(wash(lift(W, parse_term("Om"))), parse_term("Om"));
  EXPECT_EQ(wash(parse_cterm("\\b x. x @w x")), parse_term("\\x. x x"));
}

TEST(Plug, Examples) {
  CTerm t = parse_cterm("\\w q. q @b z");
  EXPECT_EQ(plug(CContext::hole(), t), t);
  EXPECT_EQ(plug(parse_ccontext("\\b x. []"), CV("x")), parse_cterm("\\b x. x"));
  EXPECT_EQ(plug(parse_ccontext("[] @w z @w w"), lift(B, parse_term("One"))),
            parse_cterm("(One_b @w z) @w w"));
}

TEST(Plug, CapturesByInnermostBinder) {
  Context c = parse_context("\\x. (\\x. []) x");
  EXPECT_EQ(plug(c, V("x")), parse_term("\\a. (\\b. b) a"));
  EXPECT_EQ(plug(c, V("y")), parse_term("\\a. (\\b. y) a"));
  EXPECT_EQ(c.hole_count(), 1u);
  Context built = Context::lam("y", Context::hole()).applied({V("u")});
  EXPECT_EQ(plug(built, V("y")), parse_term("(\\y. y) u"));
}

TEST(Tagging, Examples) {
  EXPECT_TRUE(is_tagging(parse_cterm("\\b x. x @w x"), parse_term("\\x. x x")));
  EXPECT_FALSE(is_tagging(parse_cterm("\\b x. x"), parse_term("\\x. x x")));
  Gen g(7);
  for (int i = 0; i < 200; ++i) {
    Term t = g.term(1 + g.below(15));
    EXPECT_TRUE(is_tagging(lift(B, t), t));
    EXPECT_TRUE(is_tagging(g.tagging(t), t));
  }
}

TEST(Path, Entries) {
  Path p{1, 2};
  EXPECT_EQ(to_string(p), "<1,2>");
  EXPECT_EQ(p.child(3), (Path{1, 2, 3}));
  EXPECT_THROW(Path({0}), std::invalid_argument);
}

TEST(SyntaxProperties, WashLiftRoundTrip) {
  Gen g(11);
  for (int i = 0; i < 2000; ++i) {
    Term t = g.term(1 + g.below(20));
    EXPECT_EQ(wash(lift(B, t)), t);
    EXPECT_EQ(wash(lift(W, t)), t);
  }
}

TEST(SyntaxProperties, SubstitutionCommutesWithLifting) {
  Gen g(12);
  for (int i = 0; i < 2000; ++i) {
    Term t = g.term(1 + g.below(15));
    Term u = g.term(1 + g.below(8));
    Player p = g.player();
    EXPECT_EQ(lift(p, substitute(t, "a", u)),
              substitute(lift(p, t), "a", lift(p, u)));
  }
}

TEST(SyntaxProperties, PlugEliminatesTheHole) {
  Gen g(13);
  for (int i = 0; i < 500; ++i) {
    Context c = Context::hole();
    for (int j = 0, n = static_cast<int>(g.below(5)); j < n; ++j) {
      switch (g.below(3)) {
        case 0:
          c = Context::lam("a", c);
          break;
        case 1:
          c = Context::app_left(c, g.term(3));
          break;
        default:
          c = Context::app_right(g.term(3), c);
      }
    }
    EXPECT_EQ(c.hole_count(), 1u);
    Term r = plug(c, g.term(1 + g.below(6)));
    EXPECT_EQ(r.node()->holes, 0u);
    EXPECT_EQ(parse_context(print(c)), c);
  }
}

TEST(SyntaxProperties, ParsePrintRoundTrip) {
  Gen g(14);
  for (int i = 0; i < 10000; ++i) {
    Term t = g.term(1 + g.below(25));
    ASSERT_EQ(parse_term(print(t)), t) << print(t);
    CTerm ct = g.tagging(t);
    ASSERT_EQ(parse_cterm(print(ct)), ct) << print(ct);
    ASSERT_EQ(parse_cterm(print(ct, {.shorthands = true})), ct);
  }
}

}  // namespace
}  // namespace checkers
