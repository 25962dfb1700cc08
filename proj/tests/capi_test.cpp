// Copyright 2026 The checkers-lambda Authors.
// SPDX-License-Identifier: Apache-2.0

// Exercises the library through checkers.h only.

#include <gtest/gtest.h>

#include <json.hpp>
#include <string>

#include "checkers.h"

namespace {

using nlohmann::json;

struct Term {
  checkers_term* t = nullptr;
  Term(const char* text, checkers_kind kind) {
    EXPECT_EQ(checkers_term_parse(text, kind, &t), CHECKERS_OK)
        << checkers_last_error();
  }
  ~Term() { checkers_term_free(t); }
};

// Takes ownership of out.
json take(char* out) {
  EXPECT_NE(out, nullptr);
  if (!out) return json();
  json j = json::parse(out);
  checkers_free(out);
  EXPECT_TRUE(j.contains("text"));
  return j;
}

TEST(CApi, ParseErrors) {
  checkers_term* t = nullptr;
  EXPECT_EQ(checkers_term_parse("\\x. (", CHECKERS_ORDINARY, &t),
            CHECKERS_ERR_PARSE);
  EXPECT_EQ(t, nullptr);
  EXPECT_STRNE(checkers_last_error(), "");
  EXPECT_EQ(checkers_term_parse(nullptr, CHECKERS_ORDINARY, &t),
            CHECKERS_ERR_INVALID);
  // Tagged applications are not part of the ordinary syntax.
  EXPECT_EQ(checkers_term_parse("x @b y", CHECKERS_ORDINARY, &t),
            CHECKERS_ERR_PARSE);
}

TEST(CApi, DescribeAndLift) {
  Term t("\\x. x y", CHECKERS_ORDINARY);
  EXPECT_EQ(checkers_term_kind(t.t), CHECKERS_ORDINARY);
  char* out = nullptr;
  ASSERT_EQ(checkers_term_describe(t.t, &out), CHECKERS_OK);
  json d = take(out);
  EXPECT_EQ(d["kind"], "ordinary");
  EXPECT_EQ(d["free"], json::array({"y"}));
  EXPECT_EQ(d["size"], 4);
  checkers_term* l = nullptr;
  ASSERT_EQ(checkers_term_lift(t.t, CHECKERS_WHITE, &l), CHECKERS_OK);
  EXPECT_EQ(checkers_term_kind(l), CHECKERS_TAGGED);
  ASSERT_EQ(checkers_term_describe(l, &out), CHECKERS_OK);
  EXPECT_EQ(take(out)["term"], "\\w x. x @w y");
  checkers_term_free(l);
  EXPECT_EQ(checkers_term_lift(nullptr, CHECKERS_BLACK, &l),
            CHECKERS_ERR_INVALID);
}

TEST(CApi, Reduce) {
  Term one("(\\b x. \\b y. x @b y) @w z @w w", CHECKERS_TAGGED);
  char* out = nullptr;
  ASSERT_EQ(checkers_reduce(one.t, 1000, 1, 0, &out), CHECKERS_OK);
  json r = take(out);
  EXPECT_EQ(r["status"], "normal");
  EXPECT_EQ(r["k"], 2);
  EXPECT_EQ(r["n"], 2);
  EXPECT_EQ(r["steps"].size(), 2u);
  EXPECT_EQ(r["steps"][0]["kind"], "interaction");
  EXPECT_EQ(r["term"], "z @b w");

  Term om("Om_b", CHECKERS_TAGGED);
  ASSERT_EQ(checkers_reduce(om.t, 50, 0, 0, &out), CHECKERS_ERR_FUEL);
  json f = take(out);
  EXPECT_EQ(f["status"], "fuel-exhausted");
  EXPECT_EQ(f["n"], 50);
  EXPECT_EQ(f["text"], "fuel-exhausted k=0 n=50");
  ASSERT_EQ(checkers_reduce(om.t, 50, 0, 1, &out), CHECKERS_ERR_FUEL);
  EXPECT_EQ(take(out)["cycle"], true);

  // Reduction needs a checkers term.
  Term plain("\\x. x", CHECKERS_ORDINARY);
  EXPECT_EQ(checkers_reduce(plain.t, 10, 0, 0, &out), CHECKERS_ERR_INVALID);
  EXPECT_EQ(out, nullptr);
}

TEST(CApi, BohmAndCompare) {
  checkers_bohm_options o = checkers_default_bohm_options();
  o.depth = 3;
  o.detect_loops = 1;
  Term y("Y", CHECKERS_ORDINARY);
  char* out = nullptr;
  ASSERT_EQ(checkers_bohm(y.t, &o, &out), CHECKERS_OK);
  json b = take(out);
  EXPECT_EQ(b["tree"]["head"], b["tree"]["lam"][0]);
  EXPECT_EQ(b["tree"]["args"][0]["args"][0]["args"][0], json({{"cut", true}}));
  Term om("Om", CHECKERS_ORDINARY);
  ASSERT_EQ(checkers_bohm(om.t, &o, &out), CHECKERS_OK);
  EXPECT_EQ(take(out)["tree"], json({{"bot", true}}));

  Term i("I", CHECKERS_ORDINARY), one("One", CHECKERS_ORDINARY);
  o.depth = 8;
  ASSERT_EQ(checkers_compare(i.t, one.t, 0, -1, &o, &out),
            CHECKERS_ERR_PROPERTY);
  json c = take(out);
  EXPECT_EQ(c["result"], "fails");
  EXPECT_EQ(c["witness"]["path"], "<>");
  EXPECT_EQ(c["witness"]["kind"], "spine-arity-mismatch");
  // I and 1 are η-equivalent.
  ASSERT_EQ(checkers_compare(i.t, one.t, 1, -1, &o, &out), CHECKERS_OK);
  EXPECT_EQ(take(out)["result"], "holds");
  ASSERT_EQ(checkers_compare(om.t, i.t, 0, -1, &o, &out), CHECKERS_OK);
  take(out);
  o.detect_loops = 0;
  ASSERT_EQ(checkers_compare(om.t, i.t, 0, -1, &o, &out), CHECKERS_ERR_FUEL);
  EXPECT_EQ(take(out)["result"], "unknown");
}

TEST(CApi, Separate) {
  checkers_bohm_options o = checkers_default_bohm_options();
  o.fuel = 1000;
  Term i("I", CHECKERS_ORDINARY), one("One", CHECKERS_ORDINARY);
  char* out = nullptr;
  ASSERT_EQ(checkers_separate(i.t, one.t, &o, &out), CHECKERS_OK);
  json s = take(out);
  EXPECT_EQ(s["left"]["status"], "normal");
  EXPECT_EQ(s["right"]["status"], "normal");
  EXPECT_EQ(s["right"]["k"].get<int>() - s["left"]["k"].get<int>(), 1);
  EXPECT_TRUE(s.contains("context"));
  EXPECT_TRUE(s.contains("K"));
  ASSERT_EQ(checkers_separate(i.t, i.t, &o, &out), CHECKERS_ERR_INAPPLICABLE);
  EXPECT_FALSE(take(out).contains("context"));
}

TEST(CApi, TypecheckAndInferTight) {
  Term t("(\\b x. x) @w z", CHECKERS_TAGGED);
  char* out = nullptr;
  ASSERT_EQ(checkers_infer_tight(t.t, 100, &out), CHECKERS_OK);
  json r = take(out);
  EXPECT_EQ(r["k"], 1);
  EXPECT_EQ(r["type"], "X");
  std::string d = r["derivation"].dump();
  ASSERT_EQ(checkers_typecheck(d.c_str(), &out), CHECKERS_OK)
      << checkers_last_error();
  json c = take(out);
  EXPECT_EQ(c["k"], 1);
  EXPECT_EQ(c["env"], r["env"]);
  // Tampering with the index is a property failure, bad JSON a parse error.
  json bad = r["derivation"];
  bad["k"] = 0;
  std::string b = bad.dump();
  EXPECT_EQ(checkers_typecheck(b.c_str(), &out), CHECKERS_ERR_PROPERTY);
  EXPECT_EQ(out, nullptr);
  EXPECT_EQ(checkers_typecheck("{\"rule\":", &out), CHECKERS_ERR_PARSE);

  Term om("Om_b", CHECKERS_TAGGED);
  ASSERT_EQ(checkers_infer_tight(om.t, 100, &out), CHECKERS_ERR_FUEL);
  take(out);
}

TEST(CApi, Typings) {
  Term x("x", CHECKERS_TAGGED);
  char* out = nullptr;
  ASSERT_EQ(checkers_typings(x.t, 2, 1, 2, &out), CHECKERS_OK);
  json r = take(out);
  // x : L for each of the 13 universe types.
  EXPECT_EQ(r["count"], 13);
  bool atom = false;
  for (const json& t : r["typings"])
    atom |= t["type"] == "X" && t["k"] == 0 &&
            t["env"] == json({{"x", json::array({"X"})}});
  EXPECT_TRUE(atom);
}

TEST(CApi, ProbeAndSuite) {
  Term i("I", CHECKERS_ORDINARY), one("One", CHECKERS_ORDINARY);
  char* out = nullptr;
  ASSERT_EQ(checkers_probe(i.t, one.t, 4, 1000, 0, &out),
            CHECKERS_ERR_PROPERTY);
  json p = take(out);
  EXPECT_EQ(p["verdict"], "counterexample");
  EXPECT_EQ(p["context"], "[] z w");
  ASSERT_EQ(checkers_probe(one.t, i.t, 3, 1000, 1, &out), CHECKERS_OK);
  EXPECT_EQ(take(out)["verdict"], "no-counterexample");

  ASSERT_EQ(checkers_suite_names(&out), CHECKERS_OK);
  EXPECT_GE(take(out)["names"].size(), 9u);
  ASSERT_EQ(checkers_suite("tight-exactness", 5, 8, 20, 1000, &out),
            CHECKERS_OK);
  json s = take(out);
  EXPECT_TRUE(s["passed"]);
  EXPECT_EQ(s["cases"].get<int>() + s["skipped"].get<int>(), 20);
  EXPECT_EQ(checkers_suite("nope", 1, 8, 1, 10, &out), CHECKERS_ERR_INVALID);
}

}  // namespace
