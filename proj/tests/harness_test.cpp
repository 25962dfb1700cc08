// Copyright 2026 The checkers-lambda Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "checkers/harness.hpp"

namespace checkers {
namespace {

Term T(const char* s) { return parse_term(s); }

bool players_all(const CTerm& t, Player p, bool& seen_other) {
  switch (t.kind()) {
    case TermKind::Var:
      return true;
    case TermKind::Lam:
      if (t.player() != p) seen_other = true;
      return players_all(t.unbind().second, p, seen_other);
    case TermKind::App:
      if (t.player() != p) seen_other = true;
      return players_all(t.fun(), p, seen_other) &&
             players_all(t.arg(), p, seen_other);
  }
  return true;
}

TEST(Gen, Deterministic) {
  GenConfig cfg;
  cfg.seed = 1;
  cfg.max_size = 3;
  cfg.closed = true;
  TermGen a(cfg), b(cfg);
  for (int i = 0; i < 50; ++i) {
    Term x = a.next_term();
    EXPECT_EQ(x, b.next_term());
    EXPECT_TRUE(x.free_vars().empty());
    EXPECT_LE(x.size(), 3u);
  }
  // Frozen first term of this stream.
  EXPECT_EQ(print(TermGen(cfg).next_term()), "\\x0. x0");
}

TEST(Gen, PlayerMix) {
  GenConfig cfg;
  cfg.mix = PlayerMix::AllBlack;
  TermGen g(cfg);
  for (int i = 0; i < 200; ++i) {
    bool other = false;
    players_all(g.next_cterm(), Player::Black, other);
    EXPECT_FALSE(other);
  }
  cfg.mix = PlayerMix::Mixed;
  TermGen m(cfg);
  bool black = false, white = false;
  for (int i = 0; i < 10000; ++i) {
    bool other_than_black = false, other_than_white = false;
    CTerm t = m.next_cterm();
    players_all(t, Player::Black, other_than_black);
    players_all(t, Player::White, other_than_white);
    white |= other_than_black;
    black |= other_than_white;
  }
  EXPECT_TRUE(black && white);
}

TEST(Approx, ReadBack) {
  BohmApprox a = bohm_approx(T("Y"), 3, 1000);
  Term t = approx_to_term(a);
  EXPECT_EQ(t, T("\\f. f (f (f Om))"));
  BohmOptions opts;
  opts.detect_loops = true;
  EXPECT_EQ(bohm_le(t, T("Y"), opts), Tri::Holds);
}

TEST(Confluence, Examples) {
  ConfluenceReport r =
      check_local_confluence(parse_cterm("(\\b x. x @w x) @b (I_w @b y)"), 200);
  EXPECT_EQ(r.pairs, 1u);
  EXPECT_EQ(r.failures, 0u);
  ConfluenceReport k = check_local_confluence(
      parse_cterm("(\\w x. \\w y. y) @b ((\\b x. x @b x) @b (\\b x. x @b x))"),
      200);
  EXPECT_EQ(k.pairs, 1u);
  EXPECT_EQ(k.failures, 0u);
}

TEST(Confluence, RandomTerms) {
  GenConfig cfg;
  cfg.seed = 99;
  TermGen g(cfg);
  std::size_t pairs = 0;
  for (int i = 0; i < 2000; ++i) {
    ConfluenceReport r = check_local_confluence(g.next_cterm(), 200);
    EXPECT_EQ(r.failures, 0u) << r.first_failure;
    pairs += r.pairs;
  }
  EXPECT_GT(pairs, 200u);
}

TEST(Contexts, EnumerationOrder) {
  auto cs = enumerate_contexts(2, {}, 100);
  ASSERT_GE(cs.size(), 4u);
  EXPECT_TRUE(cs[0].is_hole());
  EXPECT_EQ(print(cs[1]), "[] z");
  EXPECT_EQ(print(cs[2]), "z []");
  EXPECT_EQ(print(cs[3]), "\\x0. []");
  for (const Context& c : enumerate_contexts(4, {"y"}, 100000))
    EXPECT_EQ(c.hole_count(), 1u);
  // Capturing binders show up.
  bool capture = false;
  for (const Context& c : enumerate_contexts(1, {"y"}, 100))
    capture |= print(c) == "\\y. []";
  EXPECT_TRUE(capture);
  EXPECT_EQ(enumerate_contexts(6, {}, 50).size(), 50u);
}

TEST(Probe, IdentityAgainstOne) {
  ProbeReport r = probe_preorder(T("I"), T("One"), 4, 1000,
                                 ProbeMode::InterPreorder);
  ASSERT_TRUE(r.counterexample());
  EXPECT_EQ(print(*r.context), "[] z w");
  EXPECT_EQ(r.left->k, 1u);
  EXPECT_EQ(r.right->k, 2u);
  EXPECT_EQ(r.source, "enumerated");
  EXPECT_TRUE(replay_probe(r, T("I"), T("One"), 1000));
  // One converges no later than I in every context tried.
  ProbeReport back = probe_preorder(T("One"), T("I"), 4, 1000,
                                    ProbeMode::InterImprovement);
  EXPECT_FALSE(back.counterexample());
}

TEST(Probe, SilentUnfoldingIsInvisible) {
  ProbeReport r = probe_preorder(T("Y D"), T("Y"), 4, 2000,
                                 ProbeMode::InterPreorder);
  EXPECT_FALSE(r.counterexample());
  EXPECT_GT(r.contexts_tried, 1000u);
  ProbeReport s = probe_preorder(T("Y"), T("Y D"), 4, 2000,
                                 ProbeMode::InterPreorder);
  EXPECT_FALSE(s.counterexample());
}

TEST(Probe, DivergenceIsBelowEverything) {
  for (const char* u : {"I", "x", "\\y. y Om", "One"}) {
    ProbeReport r = probe_preorder(T("Om"), T(u), 4, 500,
                                   ProbeMode::InterPreorder);
    EXPECT_FALSE(r.counterexample()) << u;
  }
  ProbeReport r = probe_preorder(T("I"), T("Om"), 2, 500,
                                 ProbeMode::InterPreorder);
  ASSERT_TRUE(r.counterexample());
  EXPECT_FALSE(r.right->normal());
  EXPECT_TRUE(r.right->cycle);
}

TEST(Probe, ConstructedContextWhenEnumerationIsTooSmall) {
  // Distinguishing K from F takes more than an empty budget.
  ProbeReport r = probe_preorder(T("K"), T("F"), 0, 500,
                                 ProbeMode::InterPreorder);
  ASSERT_TRUE(r.counterexample());
  EXPECT_EQ(r.source, "constructed");
  EXPECT_TRUE(replay_probe(r, T("K"), T("F"), 500));
}

TEST(Suites, AllPass) {
  GenConfig cfg;
  cfg.seed = 1000;
  cfg.max_size = 10;
  for (const std::string& name : suite_names()) {
    std::size_t n = name == "probe-consistency" ? 40 : 150;
    SuiteReport r = run_suite(name, cfg, n, 2000);
    EXPECT_TRUE(r.passed()) << name << ": seed " << r.failures[0].seed << " "
                            << r.failures[0].detail;
    EXPECT_GT(r.cases, 0u) << name;
  }
  EXPECT_THROW(run_suite("nope", cfg, 1, 10), std::invalid_argument);
}

TEST(Suites, FailuresCarryReplayableSeeds) {
  GenConfig cfg;
  cfg.seed = 77;
  SuiteReport r = run_suite("tight-exactness", cfg, 20, 1000);
  EXPECT_EQ(r.cases + r.skipped, 20u);
  GenConfig one = cfg;
  one.seed = 77 + 5;
  SuiteReport single = run_suite("tight-exactness", one, 1, 1000);
  EXPECT_EQ(single.cases + single.skipped, 1u);
}

}  // namespace
}  // namespace checkers
