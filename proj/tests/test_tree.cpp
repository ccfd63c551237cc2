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

#include "cup/guard.hpp"
#include "cup/tree.hpp"

#include <cmath>

#include "doctest.h"
#include "support.hpp"

using namespace cup;
using cup::test::streams;
using cup::test::term;

TEST_CASE("term to tree") {
  Tree t = term_to_tree(term("scons 0 nil"), 8);
  auto pos = positions(t);
  CHECK(pos.size() == 3);
  CHECK(pos[{}] == "scons");
  CHECK(pos[{0}] == "0");
  CHECK(pos[{1}] == "nil");
  CHECK(tree_size(term_to_tree(term("0"), 8)) == 1);
  Tree m = term_to_tree(term("member 0 [0 | nil]"), 8);
  CHECK(m.symbol == "member");
  CHECK(m.children.size() == 2);
  CHECK(from_positions(pos) == t);
}

TEST_CASE("guarded atoms as trees") {
  const Signature& sig = streams().sig;
  // Truncation at depth n stars every node at depth n.
  CHECK(tree_to_string(guarded_atom_to_tree(sig, term("bitstream z_str"), 3)) ==
        "bitstream(scons(0, scons(*, *)))");
  Tree z4 = guarded_atom_to_tree(sig, term("bitstream z_str"), 4);
  CHECK(compatible(z4, parse_tree("bitstream(scons(0, scons(0, *)))")));
  CHECK(truncate(z4, 3) == guarded_atom_to_tree(sig, term("bitstream z_str"), 3));
  for (int d = 3; d <= 6; ++d) {
    Tree m = guarded_atom_to_tree(sig, term("member 0 [0 | nil]"), d);
    CHECK_FALSE(contains_symbol(m, "*"));
  }
  CHECK(tree_to_string(guarded_atom_to_tree(sig, term("from 0 (fr_str 0)"), 3)) ==
        "from(0, scons(0, scons(*, *)))");
  Tree f4 = guarded_atom_to_tree(sig, term("from 0 (fr_str 0)"), 4);
  CHECK(tree_to_string(f4) == "from(0, scons(0, scons(s(*), scons(*, *))))");
  CHECK(compatible(f4, parse_tree("from(0, scons(0, scons(s(0), *)))")));
  CHECK_THROWS_AS(guarded_atom_to_tree(sig, term("p x", cup::test::iota_vars({"x"})), 3), Error);
}

TEST_CASE("guarded atom trees do not depend on the fair schedule") {
  const Signature& sig = streams().sig;
  Term atom = term("member z_str (fr_str 1)");
  auto [head, args] = spine(atom);
  // Unfold the first argument twice as often as the second.
  for (int step = 0; step < 40; ++step) {
    size_t k = step % 3 == 2 ? 1 : 0;
    if (has_fix(args[k])) args[k] = unfold_round(args[k]);
  }
  Tree lopsided = term_to_tree(snapshot_unchecked(mk_app(head, args)), 64, {}, false);
  for (int d = 1; d <= 8; ++d) {
    CAPTURE(d);
    CHECK(guarded_atom_to_tree(sig, atom, d) == truncate(lopsided, d));
  }
}

TEST_CASE("truncation and distance") {
  Tree t = parse_tree("bitstream(scons(0, scons(0, scons(0, *))))");
  CHECK(truncate(t, 0).is_star());
  CHECK(distance(t, t) == 0.0);
  Tree u = parse_tree("bitstream(scons(0, *))");
  // scons against the star at node depth 2; the truncations first differ at 3.
  CHECK(first_difference(t, u) == 3);
  CHECK(distance(t, u) == std::ldexp(1.0, -3));
  CHECK(first_difference(t, parse_tree("p")) == 1);
  CHECK(compatible(t, u));
  CHECK_FALSE(compatible(t, parse_tree("bitstream(scons(1, *))")));
  CHECK(tree_height(t) == 4);
  CHECK(truncate(t, 2) == parse_tree("bitstream(scons(*, *))"));
}

TEST_CASE("tree substitution") {
  Tree open = parse_tree("scons(0, x)");
  Tree zero = parse_tree("0");
  CHECK(tree_substitute(open, "x", zero) == parse_tree("scons(0, 0)"));
  CHECK(tree_substitute(open, "y", zero) == open);
  // Grafting a 2 node tree under two occurrences.
  Tree twice = parse_tree("scons(x, x)");
  Tree s0 = parse_tree("s(0)");
  Tree g = tree_substitute(twice, "x", s0);
  CHECK(positions(g).size() == positions(twice).size() + 2 * positions(s0).size() - 2);
  // Unfolding the open stream by repeated grafting closes it to any depth.
  Tree acc = parse_tree("x");
  for (int k = 0; k < 5; ++k) acc = tree_substitute(acc, "x", open);
  Tree closed = tree_substitute(acc, "x", zero);
  CHECK_FALSE(contains_symbol(closed, "x"));
  CHECK(tree_height(closed) == 5);
}

TEST_CASE("tree text round trip") {
  for (const char* s : {"p", "member(0, scons(0, nil))", "from(0, scons(0, *))"})
    CHECK(tree_to_string(parse_tree(s)) == s);
  CHECK_THROWS_AS(parse_tree("p(0,"), Error);
}
