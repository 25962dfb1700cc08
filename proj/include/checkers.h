/* Copyright 2026 The checkers-lambda Authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the checkers library. Terms are opaque handles; every
 * operation returns a status code and, where it produces a result, a
 * malloc'd JSON document that the caller releases with checkers_free.
 * Each document has a "text" member holding the human-readable rendering.
 *
 * A result document is produced for CHECKERS_OK and also for FUEL,
 * INAPPLICABLE and PROPERTY, which are answers rather than failures.
 * PARSE, INVALID and INTERNAL leave *out NULL; checkers_last_error then
 * describes the problem. */

#ifndef CHECKERS_H_
#define CHECKERS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(__GNUC__)
#define CHECKERS_API __attribute__((visibility("default")))
#else
#define CHECKERS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  CHECKERS_OK = 0,
  CHECKERS_ERR_PARSE = 1,        /* malformed term or derivation text */
  CHECKERS_ERR_FUEL = 2,         /* ran out of fuel, or a check is unknown */
  CHECKERS_ERR_INAPPLICABLE = 3, /* the operation has nothing to do */
  CHECKERS_ERR_PROPERTY = 4,     /* a checked property or relation fails */
  CHECKERS_ERR_INVALID = 5,      /* bad argument: null, wrong term kind */
  CHECKERS_ERR_INTERNAL = 6
} checkers_status;

typedef enum {
  CHECKERS_ORDINARY = 0, /* \x. t and juxtaposition */
  CHECKERS_TAGGED = 1    /* \b x. t, t @w u */
} checkers_kind;

typedef enum { CHECKERS_BLACK = 0, CHECKERS_WHITE = 1 } checkers_player;

typedef struct checkers_term checkers_term;

typedef struct {
  size_t depth;          /* Böhm-tree levels explored */
  uint64_t fuel;         /* per head evaluation */
  int detect_loops;      /* a repeated state proves divergence */
  int assume_divergence; /* every fuel exhaustion counts as divergence */
} checkers_bohm_options;

/* Message for the last failing call on this thread; never NULL. */
CHECKERS_API const char*
checkers_last_error(void);
CHECKERS_API void
checkers_free(char* s);

/* 10000, or CHECKERS_FUEL from the environment. */
CHECKERS_API uint64_t
checkers_default_fuel(void);
CHECKERS_API checkers_bohm_options
checkers_default_bohm_options(void);

/* Terms. */
CHECKERS_API checkers_status
checkers_term_parse(const char* text, checkers_kind kind, checkers_term** out);
CHECKERS_API void
checkers_term_free(checkers_term* t);
CHECKERS_API checkers_kind
checkers_term_kind(const checkers_term* t);
/* Tags every constructor of an ordinary term with p. */
CHECKERS_API checkers_status
checkers_term_lift(const checkers_term* t, checkers_player p,
                   checkers_term** out);
/* {"term","kind","size","free":[...],"text"} */
CHECKERS_API checkers_status
checkers_term_describe(const checkers_term* t, char** out);

/* Head reduction of a tagged term. FUEL when no hnf is reached. */
CHECKERS_API checkers_status
checkers_reduce(const checkers_term* t, uint64_t fuel, int trace,
                int detect_loops, char** out);

/* Böhm-tree approximant of an ordinary term. */
CHECKERS_API checkers_status
checkers_bohm(const checkers_term* t, const checkers_bohm_options* opts,
              char** out);

/* Böhm preorder, plain (eta = 0) or extensional. PROPERTY on fails, FUEL
 * on unknown. eta_budget < 0 means unbounded. */
CHECKERS_API checkers_status
checkers_compare(const checkers_term* t, const checkers_term* u, int eta,
                 long eta_budget, const checkers_bohm_options* opts,
                 char** out);

/* Separating context for two ordinary terms. INAPPLICABLE when none is
 * found or supported, FUEL when evaluation ran out, PROPERTY when the
 * constructed context fails verification. */
CHECKERS_API checkers_status
checkers_separate(const checkers_term* t, const checkers_term* u,
                  const checkers_bohm_options* opts, char** out);

/* Checks a derivation given in the JSON file format. PARSE on malformed
 * input, PROPERTY when a rule is violated. */
CHECKERS_API checkers_status
checkers_typecheck(const char* derivation_json, char** out);

/* Tight derivation of a tagged term; FUEL when no hnf is reached. */
CHECKERS_API checkers_status
checkers_infer_tight(const checkers_term* t, uint64_t fuel, char** out);

/* Typings with at most cap applications; type_depth and max_card bound the
 * axiom universe. */
CHECKERS_API checkers_status
checkers_typings(const checkers_term* t, size_t cap, size_t type_depth,
                 size_t max_card, char** out);

/* Bounded search for a context refuting t below u. improvement = 0 checks
 * equal interaction counts, 1 checks that u needs no more. PROPERTY on a
 * counterexample. */
CHECKERS_API checkers_status
checkers_probe(const checkers_term* t, const checkers_term* u, size_t budget,
               uint64_t fuel, int improvement, char** out);

/* JSON array of suite names. */
CHECKERS_API checkers_status
checkers_suite_names(char** out);
/* PROPERTY when a case fails; INVALID on an unknown name. */
CHECKERS_API checkers_status
checkers_suite(const char* name, uint64_t seed, size_t max_size, size_t count,
               uint64_t fuel, char** out);

#ifdef __cplusplus
}
#endif

#endif /* CHECKERS_H_ */
