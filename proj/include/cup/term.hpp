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

#ifndef CUP_TERM_HPP
#define CUP_TERM_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cup/error.hpp"

namespace cup {

//------------------------------------------------------------------------------
// Simple types

class Type;
using TypePtr = std::shared_ptr<const Type>;

class Type {
 public:
  enum class Kind { Base, Arrow };

  static TypePtr base(const std::string& name);
  static TypePtr arrow(TypePtr arg, TypePtr res);
  static TypePtr iota();
  static TypePtr prop();

  Kind kind;
  std::string name;
  TypePtr arg;
  TypePtr res;
};

TypePtr arrows(const std::vector<TypePtr>& args, TypePtr res);
int type_order(const TypePtr& t);
bool type_eq(const TypePtr& a, const TypePtr& b);
std::string type_to_string(const TypePtr& t);
// Argument types and final target of an arrow chain.
std::pair<std::vector<TypePtr>, TypePtr> uncurry(const TypePtr& t);

//------------------------------------------------------------------------------
// Terms

enum class TermKind { Var, Const, App, Abs, Fix };

class TermNode;
using Term = std::shared_ptr<const TermNode>;

class TermNode {
 public:
  TermKind kind;
  std::string name;  // Var, Const, Abs binder
  TypePtr type;      // Abs binder type, null when not yet inferred
  Term left;         // App function, Abs body, Fix body
  Term right;        // App argument
};

Term mk_var(const std::string& name);
Term mk_const(const std::string& name);
Term mk_app(Term fn, Term arg);
Term mk_app(Term fn, const std::vector<Term>& args);
Term mk_abs(const std::string& name, TypePtr type, Term body);
Term mk_fix(Term body);

// Head and arguments of an application spine.
std::pair<Term, std::vector<Term>> spine(const Term& t);

std::string term_to_string(const Term& t);

// Names reserved for the implementation.  User identifiers never start
// with '_'.
inline constexpr const char* kDiamond = "_diamond";
inline constexpr const char* kAnd = "/\\";
inline constexpr const char* kOr = "\\/";
inline constexpr const char* kImp = "=>";
inline constexpr const char* kTop = "top";
inline constexpr const char* kForall = "forall";
inline constexpr const char* kExists = "exists";

bool is_reserved_name(const std::string& name);
bool is_logical_constant(const std::string& name);

class Signature {
 public:
  Signature();

  void add(const std::string& name, TypePtr type);
  bool has(const std::string& name) const;
  // Null for the polymorphic quantifier constants and unknown names.
  TypePtr type_of(const std::string& name) const;
  const std::map<std::string, TypePtr>& constants() const { return constants_; }
  // Non-logical constants in declaration order.
  const std::vector<std::string>& declared() const { return declared_; }

 private:
  std::map<std::string, TypePtr> constants_;
  std::vector<std::string> declared_;
};

using Context = std::vector<std::pair<std::string, TypePtr>>;

// The type derivable for t.  Unannotated binders are inferred; type
// variables left open default to i.
TypePtr typecheck(const Signature& sig, const Context& ctx, const Term& t);
// Same term with every binder annotated.
Term annotate(const Signature& sig, const Context& ctx, const Term& t);

std::set<std::string> free_vars(const Term& t);
std::set<std::string> constants_of(const Term& t);
// All subterm occurrences in pre-order.
std::vector<Term> subterms(const Term& t);
bool occurs_const(const Term& t, const std::string& name);

Term substitute(const Term& t, const std::string& x, const Term& n);
Term substitute(const Term& t, const std::map<std::string, Term>& s);
Term replace_const(const Term& t, const std::string& c, const Term& n);

bool alpha_eq(const Term& a, const Term& b);
// Nameless rendering; equal keys iff alpha-equivalent.
std::string alpha_key(const Term& t);

Term beta_normalize(const Term& t);
bool is_beta_normal(const Term& t);

// One leftmost-outermost fix step followed by beta normalisation.
Term fixbeta_unfold(const Term& t);
// Unfolds every outermost fix occurrence once, then beta normalises.
Term unfold_round(const Term& t);
bool has_fix(const Term& t);
bool is_fix_app(const Term& t);

enum class Equiv { Equal, NotEqual, Unknown };
const char* equiv_name(Equiv e);
Equiv fixbeta_equiv(const Term& a, const Term& b, int bound = 8);

struct FirstOrderReport {
  bool ok = true;
  int failed_condition = 0;  // 1..5, 0 when ok
  std::string detail;
};

FirstOrderReport is_first_order(const Signature& sig, const Context& ctx,
                                 const Term& t);
bool first_order(const Signature& sig, const Context& ctx, const Term& t);
// Every non-logical constant has order <= 1 and o occurs only as a target.
bool is_first_order_signature(const Signature& sig, std::string* offender = nullptr);
bool is_predicate_type(const TypePtr& t);

class NameSupply {
 public:
  explicit NameSupply(std::string prefix = "_") : prefix_(std::move(prefix)) {}
  std::string fresh(const std::string& base);
  uint64_t counter() const { return counter_; }

 private:
  std::string prefix_;
  uint64_t counter_ = 0;
};

std::string base_name(const std::string& name);

}  // namespace cup

#endif  // CUP_TERM_HPP
