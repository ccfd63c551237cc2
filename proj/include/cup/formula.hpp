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

#ifndef CUP_FORMULA_HPP
#define CUP_FORMULA_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cup/term.hpp"

namespace cup {

enum class FormulaKind { Atom, Top, Conj, Disj, Impl, Forall, Exists };

class FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

class FormulaNode {
 public:
  FormulaKind kind;
  Term atom;
  Formula left;   // Conj, Disj, Impl left; quantifier body
  Formula right;
  std::string var;
  TypePtr type;   // quantified variable type, null until inferred
};

Formula f_atom(Term atom);
Formula f_top();
Formula f_and(Formula a, Formula b);
Formula f_or(Formula a, Formula b);
Formula f_imp(Formula a, Formula b);
Formula f_forall(const std::string& var, TypePtr type, Formula body);
Formula f_exists(const std::string& var, TypePtr type, Formula body);
Formula f_forall(const std::vector<std::string>& vars, Formula body);
Formula f_conj(const std::vector<Formula>& parts);

std::string formula_to_string(const Formula& f);
// Encoding with the logical constants; quantifiers become forall (\x. B).
Term formula_to_term(const Formula& f);
Formula term_to_formula(const Term& t);
Formula annotate_formula(const Signature& sig, const Context& ctx, const Formula& f);

std::set<std::string> formula_free_vars(const Formula& f);
bool formula_alpha_eq(const Formula& a, const Formula& b);
std::string formula_key(const Formula& f);
Formula formula_substitute(const Formula& f, const std::string& x, const Term& n);
Formula formula_replace_const(const Formula& f, const std::string& c, const Term& n);
Formula formula_beta_normalize(const Formula& f);
std::vector<Term> formula_atoms(const Formula& f);

enum class Calculus { FOHC, FOHH, HOHC, HOHH };
enum class Role { Clause, Goal, Core };

inline const std::vector<Calculus>& all_calculi() {
  static const std::vector<Calculus> v{Calculus::FOHC, Calculus::FOHH, Calculus::HOHC,
                                       Calculus::HOHH};
  return v;
}
const char* calculus_name(Calculus c);
std::optional<Calculus> parse_calculus(const std::string& s);
bool is_first_order_calculus(Calculus c);
bool is_hereditary_harrop(Calculus c);
// Fragment inclusion: fohc below everything, hohh above everything.
bool calculus_leq(Calculus a, Calculus b);
const char* role_name(Role r);

bool in_calculus(const Signature& sig, const Formula& f, Role role, Calculus c,
                 const Context& ctx = {});
std::set<Calculus> classify(const Signature& sig, const Formula& f, Role role,
                            const Context& ctx = {});

bool is_fo_atom(const Signature& sig, const Context& ctx, const Term& a);
bool is_rigid_atom(const Term& a);
// Terms without the constants forall and => (level 1) or without => (level 2).
bool in_universe(const Term& t, int level);
// Witness restriction of a calculus.
bool witness_allowed(const Signature& sig, const Context& ctx, const Term& n, Calculus c);

struct Program {
  Signature sig;
  std::vector<Formula> clauses;
  std::map<std::string, Term> defs;
  std::vector<std::string> def_order;
  std::vector<std::string> notes;
  std::vector<Span> clause_spans;
};

// forall xs (A1 /\ .. /\ An => A)
struct HClause {
  Context vars;
  std::vector<Term> body;
  Term head;
};

std::vector<HClause> to_h_clauses(const Formula& d);
std::vector<HClause> program_h_clauses(const Program& p);
std::string hclause_to_string(const HClause& c);
// Every assignment of universe terms to the clause variables, at most
// limit of them, without duplicates.
std::vector<HClause> ground_instances(const HClause& h, const std::vector<Term>& universe,
                                      size_t limit = 100000);

}  // namespace cup

#endif  // CUP_FORMULA_HPP
