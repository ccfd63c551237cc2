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

#ifndef CUP_SEMANTICS_HPP
#define CUP_SEMANTICS_HPP

#include <set>
#include <string>
#include <vector>

#include "cup/formula.hpp"
#include "cup/tree.hpp"

namespace cup {

// Bounds for the finite part of the Herbrand universe that gets
// grounded.
struct InstanceConfig {
  int term_height = 1;      // first-order pool terms
  int def_arg_height = 0;   // arguments of definitions in the pool
  size_t max_pool = 256;
  size_t max_atoms = 50000;
  size_t max_seeds_per_clause = 2000;
  std::vector<Tree> seeds;  // extra candidate atoms
  std::vector<HClause> extra_clauses;
  bool forward_seeds = true;  // heads of clause instances over the pool
  bool parallel = true;
};

struct Interpretation {
  int depth = 0;
  std::set<Tree> atoms;

  bool contains(const Tree& t) const { return atoms.count(t) > 0; }
  friend bool operator==(const Interpretation& a, const Interpretation& b) {
    return a.depth == b.depth && a.atoms == b.atoms;
  }
};

std::string interpretation_to_text(const Interpretation& i);
Interpretation interpretation_from_text(const std::string& text);

// Does the interpretation atom m vouch for the body atom b?  A star in b
// is unknown and matches anything; a star in m matches anything only at
// the truncation depth.
bool supports(const Tree& m, const Tree& b, int depth);

// Candidate atoms, their clause instances and which candidates support
// each body atom.
struct Grounding {
  int depth = 0;
  bool finite = false;
  std::vector<Tree> atoms;
  // instances[i] lists the bodies (as indices into bodies) of the clause
  // instances whose head is atoms[i].
  std::vector<std::vector<std::vector<int>>> instances;
  std::vector<Tree> bodies;
  std::vector<std::vector<int>> matchers;
};

std::vector<Term> enumerate_universe(const Program& program, const InstanceConfig& cfg);
// True when the signature has no function symbols, so the Herbrand
// universe is the finite set of constants.
bool has_finite_universe(const Program& program, const InstanceConfig& cfg);

Grounding build_grounding(const Program& program, int depth, const InstanceConfig& cfg,
                          const std::vector<Tree>& extra = {});

// Kernels over a grounding; alive flags index g.atoms.
std::vector<int> compute_matchers(const Grounding& g, int body, bool parallel);
void fill_matchers(Grounding& g, bool parallel);
std::vector<char> apply_t(const Grounding& g, const std::vector<char>& alive, bool parallel);
std::vector<char> solve_gfp(const Grounding& g, bool parallel);

namespace serial {
void fill_matchers(Grounding& g);
std::vector<char> apply_t(const Grounding& g, const std::vector<char>& alive);
std::vector<char> solve_gfp(const Grounding& g);
}  // namespace serial

Interpretation t_operator(const Program& program, const Interpretation& i,
                          const InstanceConfig& cfg);
Interpretation gfp_approx(const Program& program, int depth, const InstanceConfig& cfg);

enum class Membership { InApprox, CertainlyOut };
const char* membership_name(Membership m);

// Tree of a closed atom; guarded atoms unfold fairly, other closed atoms
// lazily.
Tree atom_tree(const Signature& sig, const Term& atom, int depth);

Membership member_of_model(const Tree& atom, const Interpretation& approx);
Membership member_of_model(const Signature& sig, const Term& atom, const Interpretation& approx);
// gfp_approx seeded with the atom, then membership.
Membership query_model(const Program& program, const Term& atom, int depth,
                       const InstanceConfig& cfg);

}  // namespace cup

#endif  // CUP_SEMANTICS_HPP
