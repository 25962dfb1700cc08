// Copyright 2026 The checkers-lambda Authors.
// SPDX-License-Identifier: Apache-2.0

#include "checkers.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <json.hpp>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include "checkers/bohm.hpp"
#include "checkers/harness.hpp"
#include "checkers/reduction.hpp"
#include "checkers/separate.hpp"
#include "checkers/syntax.hpp"
#include "checkers/types.hpp"

using nlohmann::json;
using namespace checkers;

struct checkers_term {
  std::variant<Term, CTerm> t;
};

namespace {

thread_local std::string last_error;

// Thrown inside an entry point to leave with a status and message.
struct Fail {
  checkers_status status;
  std::string msg;
};

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

// Runs body, which fills doc and returns the status; maps exceptions to
// error codes.
template <class F>
checkers_status guard(char** out, F&& body) {
  if (out) *out = nullptr;
  try {
    if (!out) throw Fail{CHECKERS_ERR_INVALID, "null output pointer"};
    json doc;
    checkers_status s = body(doc);
    *out = dup(doc.dump());
    if (!*out) throw Fail{CHECKERS_ERR_INTERNAL, "out of memory"};
    last_error.clear();
    return s;
  } catch (const Fail& f) {
    last_error = f.msg;
    return f.status;
  } catch (const ParseError& e) {
    last_error = e.what();
    return CHECKERS_ERR_PARSE;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return CHECKERS_ERR_INVALID;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CHECKERS_ERR_INTERNAL;
  }
}

const Term& ordinary(const checkers_term* t) {
  if (!t) throw Fail{CHECKERS_ERR_INVALID, "null term"};
  if (auto* p = std::get_if<Term>(&t->t)) return *p;
  throw Fail{CHECKERS_ERR_INVALID, "expected an ordinary term"};
}

const CTerm& tagged(const checkers_term* t) {
  if (!t) throw Fail{CHECKERS_ERR_INVALID, "null term"};
  if (auto* p = std::get_if<CTerm>(&t->t)) return *p;
  throw Fail{CHECKERS_ERR_INVALID, "expected a checkers term"};
}

BohmOptions bohm_opts(const checkers_bohm_options* o) {
  BohmOptions b;
  if (!o) return b;
  b.depth = o->depth;
  b.fuel = o->fuel;
  b.detect_loops = o->detect_loops != 0;
  b.assume_divergence = o->assume_divergence != 0;
  return b;
}

std::string status_name(const Outcome& o) {
  return o.normal() ? "normal" : "fuel-exhausted";
}

json outcome_json(const Outcome& o) {
  json j{{"status", status_name(o)},
         {"k", o.k},
         {"n", o.n},
         {"term", print(o.term)}};
  if (o.cycle) j["cycle"] = true;
  return j;
}

std::string outcome_line(const Outcome& o) {
  std::string s = status_name(o) + " k=" + std::to_string(o.k) +
                  " n=" + std::to_string(o.n);
  if (o.cycle) s += " (loop)";
  return s;
}

json approx_json(const BohmApprox& a) {
  if (a.is_bot()) return json{{"bot", true}};
  if (a.is_cut()) return json{{"cut", true}};
  json args = json::array();
  for (const BohmApprox& c : a.children) args.push_back(approx_json(c));
  return json{{"lam", a.binders}, {"head", a.head}, {"args", args}};
}

json witness_json(const DiffWitness& w) {
  json j{{"path", to_string(w.path)}, {"kind", std::string(to_string(w.kind))}};
  if (w.kind != DiffKind::HeadMismatch) {
    j["side"] = std::string(to_string(w.side));
    if (w.kind == DiffKind::SpineArityMismatch) j["gap"] = w.extra;
  }
  if (w.hnf_left) j["left"] = print(*w.hnf_left);
  if (w.hnf_right) j["right"] = print(*w.hnf_right);
  return j;
}

json linear_json(const LinearType& l) {
  return json::parse(to_json(make_ax("x", l))).at("type");
}

json env_json(const TypeEnv& env) {
  json j = json::object();
  for (const auto& [x, m] : env.entries()) {
    json ms = json::array();
    for (const LinearType& l : m.elems()) ms.push_back(linear_json(l));
    j[x] = ms;
  }
  return j;
}

std::string judgment(const TypeEnv& env, std::uint64_t k,
                     const std::string& type) {
  return to_string(env) + " |-" + std::to_string(k) + " " + type;
}

}  // namespace

extern "C" {

const char* checkers_last_error(void) { return last_error.c_str(); }

void checkers_free(char* s) { std::free(s); }

uint64_t checkers_default_fuel(void) { return default_fuel(); }

checkers_bohm_options checkers_default_bohm_options(void) {
  BohmOptions b;
  return checkers_bohm_options{b.depth, default_fuel(), 0, 0};
}

checkers_status checkers_term_parse(const char* text, checkers_kind kind,
                                    checkers_term** out) {
  if (out) *out = nullptr;
  if (!text || !out) {
    last_error = "null argument";
    return CHECKERS_ERR_INVALID;
  }
  try {
    if (kind == CHECKERS_TAGGED)
      *out = new checkers_term{parse_cterm(text)};
    else
      *out = new checkers_term{parse_term(text)};
    last_error.clear();
    return CHECKERS_OK;
  } catch (const ParseError& e) {
    last_error = e.what();
    return CHECKERS_ERR_PARSE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CHECKERS_ERR_INTERNAL;
  }
}

void checkers_term_free(checkers_term* t) { delete t; }

checkers_kind checkers_term_kind(const checkers_term* t) {
  return t && std::holds_alternative<CTerm>(t->t) ? CHECKERS_TAGGED
                                                  : CHECKERS_ORDINARY;
}

checkers_status checkers_term_lift(const checkers_term* t, checkers_player p,
                                   checkers_term** out) {
  if (out) *out = nullptr;
  if (!t || !out || !std::holds_alternative<Term>(t->t)) {
    last_error = "lift needs an ordinary term";
    return CHECKERS_ERR_INVALID;
  }
  *out = new checkers_term{
      lift(p == CHECKERS_WHITE ? Player::White : Player::Black,
           std::get<Term>(t->t))};
  last_error.clear();
  return CHECKERS_OK;
}

checkers_status checkers_term_describe(const checkers_term* t, char** out) {
  return guard(out, [&](json& doc) {
    if (!t) throw Fail{CHECKERS_ERR_INVALID, "null term"};
    std::visit(
        [&](const auto& x) {
          doc["term"] = print(x);
          doc["size"] = x.size();
          doc["free"] = x.free_vars();
          doc["text"] = print(x);
        },
        t->t);
    doc["kind"] = checkers_term_kind(t) == CHECKERS_TAGGED ? "checkers"
                                                           : "ordinary";
    return CHECKERS_OK;
  });
}

checkers_status checkers_reduce(const checkers_term* t, uint64_t fuel,
                                int trace, int detect_loops, char** out) {
  return guard(out, [&](json& doc) {
    const CTerm& ct = tagged(t);
    std::string text;
    auto run = [&] {
      if (!trace) return evaluate_head(ct, EvalOptions{fuel, detect_loops != 0});
      Trace tr = evaluate_head_trace(ct, fuel);
      json steps = json::array();
      for (const Step& s : tr.steps) {
        steps.push_back({{"kind", std::string(to_string(s.kind))},
                         {"term", print(s.term)}});
        text += std::string(to_string(s.kind)) + " " + print(s.term) + "\n";
      }
      doc["steps"] = steps;
      return tr.outcome;
    };
    Outcome o = run();
    doc.update(outcome_json(o));
    doc["text"] = text + outcome_line(o);
    return o.normal() ? CHECKERS_OK : CHECKERS_ERR_FUEL;
  });
}

checkers_status checkers_bohm(const checkers_term* t,
                              const checkers_bohm_options* opts, char** out) {
  return guard(out, [&](json& doc) {
    BohmApprox a = bohm_approx(ordinary(t), bohm_opts(opts));
    doc["tree"] = approx_json(a);
    std::string text = render(a);
    if (!text.empty() && text.back() == '\n') text.pop_back();
    doc["text"] = text;
    return CHECKERS_OK;
  });
}

checkers_status checkers_compare(const checkers_term* t,
                                 const checkers_term* u, int eta,
                                 long eta_budget,
                                 const checkers_bohm_options* opts,
                                 char** out) {
  return guard(out, [&](json& doc) {
    const Term& a = ordinary(t);
    const Term& b = ordinary(u);
    BohmOptions o = bohm_opts(opts);
    Tri r = eta ? bohm_le_eta(a, b, o,
                              eta_budget < 0
                                  ? std::nullopt
                                  : std::optional<std::size_t>(eta_budget))
                : bohm_le(a, b, o);
    doc["mode"] = eta ? "bohm-eta" : "bohm";
    doc["result"] = std::string(to_string(r));
    std::string text(to_string(r));
    if (r == Tri::Fails) {
      // The witness is the first node where the trees differ. An arity gap
      // can be closed by η, so in the extensional mode it is not shown.
      auto w = find_difference(a, b, o, DiffMode::Preorder);
      if (w && !(eta && w->kind == DiffKind::SpineArityMismatch)) {
        doc["witness"] = witness_json(*w);
        text += " " + to_string(w->path);
      }
    }
    doc["text"] = text;
    switch (r) {
      case Tri::Holds:
        return CHECKERS_OK;
      case Tri::Fails:
        return CHECKERS_ERR_PROPERTY;
      case Tri::Unknown:
        break;
    }
    return CHECKERS_ERR_FUEL;
  });
}

checkers_status checkers_separate(const checkers_term* t,
                                  const checkers_term* u,
                                  const checkers_bohm_options* opts,
                                  char** out) {
  return guard(out, [&](json& doc) {
    Separation s = separate(ordinary(t), ordinary(u), bohm_opts(opts));
    doc["status"] = std::string(to_string(s.status));
    if (!s.diagnostic.empty()) doc["diagnostic"] = s.diagnostic;
    std::ostringstream text;
    text << to_string(s.status);
    if (!s.diagnostic.empty()) text << ": " << s.diagnostic;
    if (s.result) {
      const SeparationResult& r = *s.result;
      doc["context"] = print(r.context);
      doc["K"] = r.K;
      doc["left"] = outcome_json(r.left);
      doc["right"] = outcome_json(r.right);
      text << "\ncontext: " << print(r.context) << "\nK: " << r.K
           << "\nleft: " << outcome_line(r.left)
           << "\nright: " << outcome_line(r.right);
      if (r.expected_left) {
        doc["expected_left"] = *r.expected_left;
        doc["expected_right"] = *r.expected_right;
      }
    }
    doc["text"] = text.str();
    switch (s.status) {
      case SeparationStatus::Ok:
        return CHECKERS_OK;
      case SeparationStatus::FuelExceeded:
        return CHECKERS_ERR_FUEL;
      case SeparationStatus::VerificationFailed:
        return CHECKERS_ERR_PROPERTY;
      case SeparationStatus::NotApplicable:
      case SeparationStatus::Unsupported:
        break;
    }
    return CHECKERS_ERR_INAPPLICABLE;
  });
}

checkers_status checkers_typecheck(const char* derivation_json, char** out) {
  return guard(out, [&](json& doc) {
    if (!derivation_json) throw Fail{CHECKERS_ERR_INVALID, "null input"};
    Derivation d = [&] {
      try {
        return derivation_from_json(derivation_json);
      } catch (const DerivationError& e) {
        std::string where;
        for (std::size_t i : e.path()) where += "/" + std::to_string(i);
        throw Fail{CHECKERS_ERR_PROPERTY,
                   std::string(e.what()) +
                       (where.empty() ? "" : " at premise " + where)};
      } catch (const json::exception& e) {
        throw Fail{CHECKERS_ERR_PARSE, e.what()};
      }
    }();
    CheckReport r = check_derivation(d);
    doc["valid"] = true;
    doc["env"] = env_json(r.env);
    doc["k"] = r.k;
    doc["size"] = r.size;
    std::string type;
    if (auto* l = std::get_if<LinearType>(&r.type)) {
      doc["type"] = linear_json(*l);
      type = to_string(*l);
    } else {
      type = to_string(std::get<MultiType>(r.type));
      doc["type"] = type;
    }
    doc["text"] = "valid: " + judgment(r.env, r.k, type) +
                  " (size " + std::to_string(r.size) + ")";
    return CHECKERS_OK;
  });
}

checkers_status checkers_infer_tight(const checkers_term* t, uint64_t fuel,
                                     char** out) {
  return guard(out, [&](json& doc) {
    const CTerm& ct = tagged(t);
    auto r = infer_tight(ct, fuel);
    if (!r) {
      doc["status"] = "fuel-exhausted";
      doc["text"] = "fuel-exhausted: no hnf within " + std::to_string(fuel) +
                    " steps";
      return CHECKERS_ERR_FUEL;
    }
    const Derivation& d = r->derivation;
    doc["status"] = "ok";
    doc["k"] = r->k;
    doc["env"] = env_json(d.env);
    doc["type"] = linear_json(d.linear());
    doc["derivation"] = json::parse(to_json(d));
    std::string text = render(d);
    if (!text.empty() && text.back() == '\n') text.pop_back();
    doc["text"] = judgment(d.env, d.k, to_string(d.linear())) + "\n" + text;
    return CHECKERS_OK;
  });
}

checkers_status checkers_typings(const checkers_term* t, size_t cap,
                                 size_t type_depth, size_t max_card,
                                 char** out) {
  return guard(out, [&](json& doc) {
    EnumConfig cfg{type_depth, max_card};
    std::vector<Typing> ts = enumerate_typings(tagged(t), cap, cfg);
    json arr = json::array();
    std::string text;
    for (const Typing& x : ts) {
      arr.push_back({{"env", env_json(x.env)},
                     {"k", x.k},
                     {"type", linear_json(x.type)},
                     {"size", x.size}});
      text += judgment(x.env, x.k, to_string(x.type)) + "  (size " +
              std::to_string(x.size) + ")\n";
    }
    doc["typings"] = arr;
    doc["count"] = ts.size();
    doc["text"] = text + std::to_string(ts.size()) + " typing(s)";
    return CHECKERS_OK;
  });
}

checkers_status checkers_probe(const checkers_term* t, const checkers_term* u,
                               size_t budget, uint64_t fuel, int improvement,
                               char** out) {
  return guard(out, [&](json& doc) {
    ProbeMode mode =
        improvement ? ProbeMode::InterImprovement : ProbeMode::InterPreorder;
    ProbeReport r = probe_preorder(ordinary(t), ordinary(u), budget, fuel, mode);
    doc["relation"] = std::string(to_string(r.relation));
    doc["contexts_tried"] = r.contexts_tried;
    doc["inconclusive"] = r.inconclusive;
    std::ostringstream text;
    if (r.counterexample()) {
      doc["verdict"] = "counterexample";
      doc["context"] = print(*r.context);
      doc["left"] = outcome_json(*r.left);
      doc["right"] = outcome_json(*r.right);
      doc["source"] = r.source;
      text << "counterexample (" << r.source << "): " << print(*r.context)
           << "\nleft: " << outcome_line(*r.left)
           << "\nright: " << outcome_line(*r.right);
    } else {
      doc["verdict"] = "no-counterexample";
      text << "no counterexample among " << r.contexts_tried
           << " contexts up to size " << budget << " (bounded search)";
    }
    if (r.inconclusive) text << "\ninconclusive: " << r.inconclusive;
    doc["text"] = text.str();
    return r.counterexample() ? CHECKERS_ERR_PROPERTY : CHECKERS_OK;
  });
}

checkers_status checkers_suite_names(char** out) {
  return guard(out, [&](json& doc) {
    doc["names"] = suite_names();
    std::string text;
    for (const std::string& n : suite_names()) text += (text.empty() ? "" : "\n") + n;
    doc["text"] = text;
    return CHECKERS_OK;
  });
}

checkers_status checkers_suite(const char* name, uint64_t seed,
                               size_t max_size, size_t count, uint64_t fuel,
                               char** out) {
  return guard(out, [&](json& doc) {
    if (!name) throw Fail{CHECKERS_ERR_INVALID, "null suite name"};
    GenConfig cfg;
    cfg.seed = seed;
    cfg.max_size = max_size;
    SuiteReport r = run_suite(name, cfg, count, fuel);
    json fails = json::array();
    std::ostringstream text;
    text << r.name << ": " << (r.passed() ? "pass" : "FAIL") << " cases="
         << r.cases << " skipped=" << r.skipped
         << " failures=" << r.failures.size();
    for (const CaseFailure& f : r.failures) {
      fails.push_back({{"seed", f.seed}, {"detail", f.detail}});
      text << "\n  seed " << f.seed << ": " << f.detail;
    }
    doc["name"] = r.name;
    doc["passed"] = r.passed();
    doc["cases"] = r.cases;
    doc["skipped"] = r.skipped;
    doc["failures"] = fails;
    doc["text"] = text.str();
    return r.passed() ? CHECKERS_OK : CHECKERS_ERR_PROPERTY;
  });
}

}  // extern "C"
