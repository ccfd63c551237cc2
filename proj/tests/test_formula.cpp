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

#include <functional>
#include <map>

#include "doctest.h"
#include "support.hpp"

using namespace cup;
using cup::test::formula;
using cup::test::streams;
using cup::test::term;

namespace {

std::set<Calculus> goal_calculi(const std::string& text) {
  return classify(streams().sig, formula(text), Role::Goal);
}

const std::set<Calculus> kAll{Calculus::FOHC, Calculus::FOHH, Calculus::HOHC, Calculus::HOHH};
const std::set<Calculus> kHH{Calculus::FOHH, Calculus::HOHH};

bool eval(const Formula& f, const std::map<std::string, bool>& v) {
  switch (f->kind) {
    case FormulaKind::Atom: return v.at(alpha_key(f->atom));
    case FormulaKind::Top: return true;
    case FormulaKind::Conj: return eval(f->left, v) && eval(f->right, v);
    case FormulaKind::Disj: return eval(f->left, v) || eval(f->right, v);
    case FormulaKind::Impl: return !eval(f->left, v) || eval(f->right, v);
    default: return false;
  }
}

}  // namespace

TEST_CASE("goal fragments") {
  CHECK(goal_calculi("exists x. member 0 [0, 1 | x] /\\ member 1 [0, 1 | x]") == kAll);
  CHECK(goal_calculi("forall x. member 0 [0, 1 | x]") == kHH);
  CHECK(goal_calculi("forall x. member 0 x => member 0 [1 | x]") == kHH);
  CHECK(goal_calculi("member 0 [0 | nil]") == kAll);
  CHECK(goal_calculi("bitstream [0 | n_str 0]") ==
        std::set<Calculus>{Calculus::HOHC, Calculus::HOHH});
}

TEST_CASE("core fragments") {
  const Signature& sig = streams().sig;
  CHECK(classify(sig, formula("forall x. from x (fr_str x)"), Role::Core) ==
        std::set<Calculus>{Calculus::HOHH});
  CHECK(classify(sig, formula("member 0 [0 | nil]"), Role::Core) == kAll);
  CHECK(classify(sig, formula("forall y s. bit y => member y s"), Role::Core) == kHH);
  CHECK(classify(sig, formula("exists x. bit x"), Role::Core).empty());
}

TEST_CASE("clause fragments") {
  const Signature& sig = streams().sig;
  Formula c2 = formula("forall x y t. member x t => member x [y | t]");
  CHECK(classify(sig, c2, Role::Clause) == kAll);
  Formula hh = formula("forall x. (forall y. bit y) => bit x");
  CHECK(classify(sig, hh, Role::Clause) == kHH);
}

TEST_CASE("fragment inclusion is monotone") {
  std::vector<std::string> fs{"member 0 [0 | nil]",
                              "exists x. bit x",
                              "forall x. bit x => bit x",
                              "bitstream z_str",
                              "forall x. from x (fr_str x)",
                              "bit 0 \\/ (bit 1 /\\ top)",
                              "exists x. bitstream [x | n_str x]"};
  for (const auto& text : fs) {
    Formula f = formula(text);
    for (Role r : {Role::Clause, Role::Goal, Role::Core})
      for (Calculus a : all_calculi())
        for (Calculus b : all_calculi())
          if (calculus_leq(a, b) && in_calculus(streams().sig, f, r, a)) {
            CAPTURE(text);
            CHECK(in_calculus(streams().sig, f, r, b));
          }
  }
}

TEST_CASE("H clauses") {
  auto hs = to_h_clauses(formula("forall x y t. member x t => member x [y | t]"));
  REQUIRE(hs.size() == 1);
  CHECK(hs[0].vars.size() == 3);
  REQUIRE(hs[0].body.size() == 1);
  Context vars = cup::test::iota_vars({"x", "y", "t"});
  CHECK(alpha_eq(hs[0].body[0], term("member x t", vars)));
  CHECK(alpha_eq(hs[0].head, term("member x [y | t]", vars)));

  auto fact = to_h_clauses(formula("bit 0"));
  REQUIRE(fact.size() == 1);
  CHECK(fact[0].body.empty());

  Formula split = formula("forall x. p x => (q x /\\ bit x)");
  auto two = to_h_clauses(split);
  REQUIRE(two.size() == 2);
  // Both readings agree on every valuation of the x := 0 instance.
  Formula inst = formula_substitute(split->left, split->var, term("0"));
  std::vector<std::string> keys{alpha_key(term("p 0")), alpha_key(term("q 0")),
                                alpha_key(term("bit 0"))};
  for (int bits = 0; bits < 8; ++bits) {
    std::map<std::string, bool> v;
    for (int k = 0; k < 3; ++k) v[keys[k]] = (bits >> k) & 1;
    bool lhs = eval(inst, v);
    bool rhs = true;
    for (const auto& h : two) {
      Term hd = substitute(h.head, h.vars[0].first, term("0"));
      bool body = true;
      for (const auto& b : h.body) body = body && v.at(alpha_key(substitute(b, h.vars[0].first, term("0"))));
      rhs = rhs && (!body || v.at(alpha_key(hd)));
    }
    CHECK(lhs == rhs);
  }
  CHECK_THROWS_AS(to_h_clauses(formula("exists x. bit x")), Error);
}

TEST_CASE("ground instances") {
  auto eq = to_h_clauses(formula("forall x. eq x x"));
  auto gi = ground_instances(eq[0], {term("0"), term("s 0")});
  REQUIRE(gi.size() == 2);
  CHECK(alpha_eq(gi[0].head, term("eq 0 0")));
  CHECK(alpha_eq(gi[1].head, term("eq (s 0) (s 0)")));

  auto fact = to_h_clauses(formula("bit 0"));
  auto same = ground_instances(fact[0], {term("0"), term("1")});
  REQUIRE(same.size() == 1);
  CHECK(alpha_eq(same[0].head, term("bit 0")));

  auto c3 = to_h_clauses(formula("forall x y. bitstream y /\\ bit x => bitstream [x | y]"));
  auto inst = ground_instances(c3[0], {term("0"), term("n_str 0")});
  bool found = false;
  for (const auto& h : inst)
    found = found || alpha_eq(h.head, term("bitstream [0 | n_str 0]"));
  CHECK(found);
  CHECK(inst.size() == 4);
  CHECK(ground_instances(c3[0], {term("0"), term("1")}, 3).size() == 3);
}

TEST_CASE("formula encoding round trip") {
  for (const char* s : {"forall x. from x (fr_str x)", "exists y. bitstream [0 | y]",
                        "bit 0 /\\ (bit 1 \\/ top)", "forall y s. bit y => member y s"}) {
    Formula f = formula(s);
    CHECK(formula_alpha_eq(term_to_formula(formula_to_term(f)), f));
  }
}
