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

#include "cup/soundness.hpp"

#include "doctest.h"
#include "support.hpp"

using namespace cup;
using cup::test::corpus;

namespace {

ProofTree regression(const Program& p, const char* goal, Calculus c) {
  SearchConfig cfg;
  cfg.calculus = c;
  SearchResult r = coprove(p, parse_formula(p, goal), cfg);
  REQUIRE(r.proof);
  return r.proof;
}

Tree nat(int k) {
  Tree t = parse_tree("0");
  for (int i = 0; i < k; ++i) t = Tree{"s", {t}};
  return t;
}

}  // namespace

TEST_CASE("deltas") {
  Program m = corpus("member_circular.cup");
  auto d5 = collect_deltas(regression(m, "member 0 [0 | nil]", Calculus::FOHC));
  REQUIRE(d5.size() == 1);
  CHECK(d5[0].bindings.empty());

  Program f = corpus("from.cup");
  ProofTree p7 = regression(f, "forall x. from x (fr_str x)", Calculus::HOHH);
  auto d7 = collect_deltas(p7);
  REQUIRE(d7.size() == 1);
  REQUIRE(d7[0].bindings.size() == 1);
  CHECK(d7[0].bindings[0].first == "x");
  auto eig = coinductive_eigenvariables(p7);
  REQUIRE(eig.size() == 1);
  Term want = mk_app(mk_const("s"), mk_const(eig[0]));
  CHECK(alpha_eq(d7[0].bindings[0].second, want));

  Program b = corpus("bitstream.cup");
  ProofTree fact = regression(b, "bit 0", Calculus::HOHC);
  CHECK(collect_deltas(fact).empty());
}

TEST_CASE("theta") {
  Program f = corpus("from.cup");
  ProofTree p7 = regression(f, "forall x. from x (fr_str x)", Calculus::HOHH);
  auto deltas = collect_deltas(p7);
  auto eig = coinductive_eigenvariables(p7);
  TreeSubstitution base{{eig[0], nat(0)}};
  CHECK(theta({}, deltas, eig, base, 6).at(eig[0]) == nat(0));
  CHECK(theta({1}, deltas, eig, base, 6).at(eig[0]) == nat(1));
  CHECK(theta({1, 1}, deltas, eig, base, 6).at(eig[0]) == nat(2));
  CHECK(default_base(f, p7).at(eig[0]) == nat(0));
  // Stable under refinement of the depth.
  for (int n = 2; n <= 6; ++n)
    for (const auto& w : words_up_to(1, 4))
      CHECK(theta(w, deltas, eig, base, n - 1).at(eig[0]) ==
            truncate(theta(w, deltas, eig, base, n).at(eig[0]), n - 1));
  CHECK(words_up_to(2, 2).size() == 7);
  CHECK(words_up_to(1, 0).size() == 1);
}

TEST_CASE("candidates") {
  Program b = corpus("bitstream.cup");
  ProofTree p6 = regression(b, "bitstream [0 | n_str 0]", Calculus::HOHC);
  Candidate c6 = build_candidate(b, p6, default_base(b, p6), 4, 2);
  CHECK(c6.atoms.contains(parse_tree("bit(0)")));
  bool stream = false;
  for (const auto& a : c6.atoms.atoms)
    stream = stream || (a.symbol == "bitstream" && a.children[0].symbol == "scons" &&
                        a.children[0].children[0] == parse_tree("0"));
  CHECK(stream);

  Program f = corpus("from.cup");
  ProofTree p7 = regression(f, "forall x. from x (fr_str x)", Calculus::HOHH);
  const int depth = 8;
  Candidate c7 = build_candidate(f, p7, default_base(f, p7), depth, 3);
  for (int k = 0; k <= 3; ++k) {
    CAPTURE(k);
    bool found = false;
    for (const auto& a : c7.atoms.atoms)
      found = found || (a.symbol == "from" && a.children[0] == nat(k) &&
                        a.children[1].symbol == "scons" && a.children[1].children[0] == nat(k));
    CHECK(found);
  }

  ProofTree fact = regression(b, "bit 0", Calculus::HOHC);
  Candidate cf = build_candidate(b, fact, default_base(b, fact), 4, 3);
  CHECK(cf.atoms.atoms == std::set<Tree>{parse_tree("bit(0)")});
}

TEST_CASE("post-fixed points") {
  Program m = corpus("member_circular.cup");
  ProofTree p5 = regression(m, "member 0 [0 | nil]", Calculus::FOHC);
  Candidate c = build_candidate(m, p5, default_base(m, p5), 4, 1);
  Interpretation i = c.atoms;
  Program eqs = parse_program("const 0 1 nil : i. const eq : i -> i -> o. forall x. eq x x.");
  for (const auto& a : gfp_approx(eqs, 4, {}).atoms) i.atoms.insert(a);
  CHECK(verify_postfixed(i, m, {}).ok);

  Program empty = parse_program("const p : o.");
  Interpretation just_p;
  just_p.depth = 4;
  just_p.atoms.insert(parse_tree("p"));
  PostfixedResult r = verify_postfixed(just_p, empty, {});
  CHECK_FALSE(r.ok);
  REQUIRE(r.counterexample.has_value());
  CHECK(*r.counterexample == parse_tree("p"));
}

TEST_CASE("harness on the regression proofs") {
  struct C {
    const char* file;
    const char* goal;
    Calculus c;
    int s;
  };
  for (const C& c : {C{"member_circular.cup", "member 0 [0 | nil]", Calculus::FOHC, 1},
                     C{"bitstream.cup", "bitstream [0 | n_str 0]", Calculus::HOHC, 1},
                     C{"from.cup", "forall x. from x (fr_str x)", Calculus::HOHH, 1},
                     C{"comember.cup", "forall y s. bit y => comember_bit y s", Calculus::FOHH, 1}}) {
    CAPTURE(c.file);
    Program p = corpus(c.file);
    ProofTree t = regression(p, c.goal, c.c);
    HarnessReport h = run_harness(p, t, 4, 3, {});
    CHECK(h.s == c.s);
    CHECK(h.postfixed);
    CHECK(h.side_in_model);
    CHECK(h.heads_in_model);
    CHECK(h.counterexamples.empty());
    CHECK(h.word_budget == 3);
    CHECK(harness_report_text(p, h).find("budget") != std::string::npos);
  }
}

TEST_CASE("conservative extension") {
  Program b = corpus("bitstream.cup");
  auto lemma = to_h_clauses(parse_formula(b, "bitstream [0 | n_str 0]"));
  CHECK(conservative_extension_check(b, lemma, 4, {}).equal);
  auto alien = to_h_clauses(parse_formula(b, "bit (s 0)"));
  try {
    ExtensionReport r = conservative_extension_check(b, alien, 4, {});
    CHECK_FALSE(r.equal);
    CHECK_FALSE(r.only_extended.empty());
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BodyNotInModel);
  }

  Program f = corpus("from.cup");
  std::vector<HClause> inst;
  for (const char* s : {"from 0 (fr_str 0)", "from (s 0) (fr_str (s 0))"})
    for (const auto& h : to_h_clauses(parse_formula(f, s))) inst.push_back(h);
  CHECK(conservative_extension_check(f, inst, 4, {}).equal);
}
