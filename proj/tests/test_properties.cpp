/* Copyright 2026 The cup Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <algorithm>

#include "cup/proof.hpp"
#include "cup/semantics.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "support.hpp"

using namespace cup;
using namespace cup::gen;

namespace {

constexpr int kCases = 10000;

std::set<std::string> tree_names(const Interpretation& i) {
  std::set<std::string> out;
  for (const auto& t : i.atoms) out.insert(tree_to_string(t));
  return out;
}

Interpretation as_interpretation(const AtomSet& s) {
  Interpretation i;
  i.depth = 4;
  for (const auto& a : s) i.atoms.insert(parse_tree(a));
  return i;
}

// Drops the last child of the k-th internal node in pre-order.
ProofTree drop_child(const ProofTree& t, int& k) {
  ProofNode n = *t;
  if (!n.children.empty() && k-- == 0) {
    n.children.pop_back();
    return std::make_shared<const ProofNode>(std::move(n));
  }
  for (auto& c : n.children) c = drop_child(c, k);
  return std::make_shared<const ProofNode>(std::move(n));
}

size_t internal_nodes(const ProofTree& t) {
  size_t n = t->children.empty() ? 0 : 1;
  for (const auto& c : t->children) n += internal_nodes(c);
  return n;
}

}  // namespace

TEST_CASE("type preservation under substitution") {
  Rng rng(11);
  const Signature& sig = term_signature();
  for (int n = 0; n < kCases; ++n) {
    TypePtr s = random_type(rng);
    TypePtr ty = random_type(rng);
    Context ctx{{"x", s}, {"k", Type::iota()}};
    Term t = random_term(rng, ctx, ty, 3, true);
    Term arg = random_term(rng, {{"k", Type::iota()}, {"y", Type::iota()}}, s, 2, true);
    REQUIRE(type_eq(typecheck(sig, ctx, t), ty));
    Term r = substitute(t, "x", arg);
    CHECK(type_eq(typecheck(sig, {{"k", Type::iota()}, {"y", Type::iota()}}, r), ty));
    CHECK(free_vars(r).count("x") == 0);
  }
}

TEST_CASE("type preservation under beta and fix-beta") {
  Rng rng(12);
  const Signature& sig = term_signature();
  int unfolded = 0;
  for (int n = 0; n < kCases; ++n) {
    TypePtr ty = random_type(rng);
    Context ctx{{"k", Type::iota()}};
    Term t = random_term(rng, ctx, ty, 4, true);
    Term b = beta_normalize(t);
    CHECK(type_eq(typecheck(sig, ctx, b), ty));
    if (has_fix(b)) {
      Term u = fixbeta_unfold(b);
      CHECK(type_eq(typecheck(sig, ctx, u), ty));
      CHECK(type_eq(typecheck(sig, ctx, unfold_round(b)), ty));
      ++unfolded;
    }
  }
  CHECK(unfolded > kCases / 10);
}

TEST_CASE("alpha equivalence is a congruence") {
  Rng rng(13);
  int counter = 0;
  for (int n = 0; n < kCases; ++n) {
    TypePtr ty = random_type(rng);
    Context ctx{{"k", Type::iota()}, {"x", Type::iota()}};
    Term t = random_term(rng, ctx, ty, 3, true);
    Term v = rename_bound(t, counter);
    CHECK(alpha_eq(t, v));
    CHECK(alpha_key(t) == alpha_key(v));
    CHECK(debruijn(t) == debruijn(v));
    Term arg = random_term(rng, {{"k", Type::iota()}}, Type::iota(), 2, false);
    CHECK(alpha_eq(substitute(t, "x", arg), substitute(v, "x", arg)));
    CHECK(alpha_eq(beta_normalize(t), beta_normalize(v)));
    if (ty->kind == Type::Kind::Arrow) {
      Term a = random_term(rng, ctx, ty->arg, 2, false);
      CHECK(alpha_eq(mk_app(t, a), mk_app(v, a)));
    }
    CHECK(alpha_eq(mk_abs("z", Type::iota(), t), mk_abs("w", Type::iota(), v)) ==
          (free_vars(t).count("z") == 0 && free_vars(v).count("w") == 0));
    Term other = random_term(rng, ctx, ty, 3, true);
    CHECK(alpha_eq(t, other) == (debruijn(t) == debruijn(other)));
  }
}

TEST_CASE("beta normalisation is idempotent") {
  Rng rng(14);
  for (int n = 0; n < kCases; ++n) {
    Term t = random_term(rng, {{"k", Type::iota()}}, random_type(rng), 4, true);
    Term b = beta_normalize(t);
    CHECK(is_beta_normal(b));
    CHECK(alpha_eq(beta_normalize(b), b));
  }
}

TEST_CASE("tree distance is an ultrametric") {
  Rng rng(15);
  for (int n = 0; n < kCases; ++n) {
    Tree a = random_tree(rng, 5);
    Tree b = rng.coin(70) ? mutate_tree(rng, a, 4) : random_tree(rng, 5);
    Tree c = rng.coin(70) ? mutate_tree(rng, b, 4) : random_tree(rng, 5);
    CHECK(distance(a, c) <= std::max(distance(a, b), distance(b, c)));
    CHECK(distance(a, b) == distance(b, a));
    CHECK(distance(a, a) == 0.0);
    CHECK((distance(a, b) == 0.0) == (a == b));
    int k = rng.below(6);
    CHECK(distance(truncate(a, k), a) <= std::ldexp(1.0, -k));
  }
}

TEST_CASE("T is monotone") {
  Rng rng(16);
  for (int n = 0; n < kCases; ++n) {
    FiniteProgram fp = random_finite_program(rng, 4, 6, 8);
    Program p = parse_program(program_text(fp));
    auto atoms = ground_atoms(fp);
    AtomSet small, large;
    for (const auto& a : atoms) {
      int r = rng.below(3);
      if (r == 0) small.insert(a);
      if (r <= 1) large.insert(a);
    }
    InstanceConfig ic;
    ic.parallel = false;
    auto ts = tree_names(t_operator(p, as_interpretation(small), ic));
    auto tl = tree_names(t_operator(p, as_interpretation(large), ic));
    CHECK(std::includes(tl.begin(), tl.end(), ts.begin(), ts.end()));
    CHECK(ts == oracle_t(fp, small));
  }
}

TEST_CASE("parallel and serial kernels agree") {
  Rng rng(17);
  for (int n = 0; n < kCases; ++n) {
    FiniteProgram fp = random_finite_program(rng, 6, 10, 12);
    Program p = parse_program(program_text(fp));
    Grounding g = build_grounding(p, 4, {});
    Grounding s = g;
    fill_matchers(g, true);
    serial::fill_matchers(s);
    REQUIRE(g.matchers == s.matchers);
    std::vector<char> alive(g.atoms.size());
    for (auto& a : alive) a = static_cast<char>(rng.coin());
    CHECK(apply_t(g, alive, true) == serial::apply_t(s, alive));
    CHECK(solve_gfp(g, true) == serial::solve_gfp(s));
  }
}

TEST_CASE("checker and searcher agree; found proofs are fragment monotone") {
  Rng rng(18);
  int found = 0, cofound = 0;
  for (int n = 0; n < kCases; ++n) {
    FiniteProgram fp = random_finite_program(rng, 4, 6, 8);
    Program p = parse_program(program_text(fp));
    bool hh = rng.coin();
    Calculus c = hh ? Calculus::FOHH : Calculus::FOHC;
    Formula g = random_goal(rng, p, fp, hh, 3);
    SearchConfig cfg;
    cfg.calculus = c;
    cfg.depth_limit = 8;
    cfg.node_budget = 4000;
    SearchResult r = prove(p, {}, g, cfg);
    if (r.outcome == Outcome::Found) {
      ++found;
      for (Calculus d : all_calculi())
        if (calculus_leq(c, d)) {
          CAPTURE(formula_to_string(g));
          CHECK(check(r.proof, p, d).ok);
        }
      size_t internal = internal_nodes(r.proof);
      if (internal > 0) {
        int k = rng.below(static_cast<int>(internal));
        CHECK_FALSE(check(drop_child(r.proof, k), p, c).ok);
      }
    }
    // Coinductive runs on atomic goals.
    if (n % 4 == 0) {
      Formula m = random_goal(rng, p, fp, false, 0);
      SearchResult cr = coprove(p, m, cfg);
      if (cr.outcome == Outcome::Found) {
        ++cofound;
        for (Calculus d : all_calculi())
          if (calculus_leq(c, d)) CHECK(check(cr.proof, p, d).ok);
      }
    }
  }
  MESSAGE("proofs found: ", found, ", coinductive: ", cofound);
  CHECK(found > kCases / 10);
  CHECK(cofound > kCases / 100);
}
