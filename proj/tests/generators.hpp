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

// Random generators and brute-force oracles shared by the property
// suites and the acceptance binary.

#ifndef CUP_TESTS_GENERATORS_HPP
#define CUP_TESTS_GENERATORS_HPP

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cup/formula.hpp"
#include "cup/tree.hpp"

namespace cup::gen {

class Rng {
 public:
  explicit Rng(uint64_t seed) : g_(seed) {}
  int below(int n) { return static_cast<int>(g_() % static_cast<uint64_t>(n)); }
  bool coin(int percent = 50) { return below(100) < percent; }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[below(static_cast<int>(v.size()))]; }

 private:
  std::mt19937_64 g_;
};

// 0 : i, s : i -> i, scons : i -> i -> i, h : (i -> i) -> i, p : i -> o.
const Signature& term_signature();
TypePtr random_type(Rng& rng);
Term random_term(Rng& rng, const Context& ctx, const TypePtr& type, int depth, bool allow_fix);
// Same term with every binder renamed apart.
Term rename_bound(const Term& t, int& counter);
// de Bruijn rendering, independent of alpha_key.
std::string debruijn(const Term& t);

Tree random_tree(Rng& rng, int depth);
// A copy of t with one random subtree replaced.
Tree mutate_tree(Rng& rng, const Tree& t, int depth);

// Finite programs: constants, predicates of arity 0..2, Horn clauses whose
// arguments are variables or constants.
struct Arg {
  bool var = false;
  std::string name;
};
struct Atom {
  std::string pred;
  std::vector<Arg> args;
};
struct Clause {
  std::vector<Atom> body;
  Atom head;
};
struct FiniteProgram {
  std::vector<std::string> constants;
  std::vector<std::pair<std::string, int>> preds;
  std::vector<Clause> clauses;
};

FiniteProgram random_finite_program(Rng& rng, int max_preds = 6, int max_clauses = 10,
                                    int max_atoms = 12);
std::string program_text(const FiniteProgram& p);
// Every ground atom, in the text form of tree_to_string.
std::vector<std::string> ground_atoms(const FiniteProgram& p);

using AtomSet = std::set<std::string>;
AtomSet oracle_t(const FiniteProgram& p, const AtomSet& i);
// Union of all post-fixed points and intersection of all pre-fixed points
// over the powerset of ground atoms.
AtomSet oracle_gfp(const FiniteProgram& p);
AtomSet oracle_lfp(const FiniteProgram& p);

// Random goals over a finite program; hereditary Harrop connectives only
// when hh is set.
Formula random_goal(Rng& rng, const Program& program, const FiniteProgram& fp, bool hh,
                    int depth);

}  // namespace cup::gen

#endif  // CUP_TESTS_GENERATORS_HPP
