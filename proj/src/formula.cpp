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

#include "cup/formula.hpp"

namespace cup {

namespace {

std::shared_ptr<FormulaNode> node(FormulaKind k) {
  auto f = std::make_shared<FormulaNode>();
  f->kind = k;
  return f;
}

}  // namespace

Formula f_atom(Term atom) {
  auto f = node(FormulaKind::Atom);
  f->atom = std::move(atom);
  return f;
}

Formula f_top() { return node(FormulaKind::Top); }

Formula f_and(Formula a, Formula b) {
  auto f = node(FormulaKind::Conj);
  f->left = std::move(a);
  f->right = std::move(b);
  return f;
}

Formula f_or(Formula a, Formula b) {
  auto f = node(FormulaKind::Disj);
  f->left = std::move(a);
  f->right = std::move(b);
  return f;
}

Formula f_imp(Formula a, Formula b) {
  auto f = node(FormulaKind::Impl);
  f->left = std::move(a);
  f->right = std::move(b);
  return f;
}

Formula f_forall(const std::string& var, TypePtr type, Formula body) {
  auto f = node(FormulaKind::Forall);
  f->var = var;
  f->type = std::move(type);
  f->left = std::move(body);
  return f;
}

Formula f_exists(const std::string& var, TypePtr type, Formula body) {
  auto f = node(FormulaKind::Exists);
  f->var = var;
  f->type = std::move(type);
  f->left = std::move(body);
  return f;
}

Formula f_forall(const std::vector<std::string>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    body = f_forall(*it, Type::iota(), body);
  return body;
}

Formula f_conj(const std::vector<Formula>& parts) {
  if (parts.empty()) return f_top();
  Formula f = parts.back();
  for (int i = static_cast<int>(parts.size()) - 2; i >= 0; --i) f = f_and(parts[i], f);
  return f;
}

std::string formula_to_string(const Formula& f) {
  switch (f->kind) {
    case FormulaKind::Atom: return term_to_string(f->atom);
    case FormulaKind::Top: return "top";
    case FormulaKind::Conj:
      return "(" + formula_to_string(f->left) + " /\\ " + formula_to_string(f->right) + ")";
    case FormulaKind::Disj:
      return "(" + formula_to_string(f->left) + " \\/ " + formula_to_string(f->right) + ")";
    case FormulaKind::Impl:
      return "(" + formula_to_string(f->left) + " => " + formula_to_string(f->right) + ")";
    case FormulaKind::Forall:
      return "(forall " + f->var + ". " + formula_to_string(f->left) + ")";
    case FormulaKind::Exists:
      return "(exists " + f->var + ". " + formula_to_string(f->left) + ")";
  }
  return "";
}

Term formula_to_term(const Formula& f) {
  switch (f->kind) {
    case FormulaKind::Atom: return f->atom;
    case FormulaKind::Top: return mk_const(kTop);
    case FormulaKind::Conj:
      return mk_app(mk_const(kAnd), {formula_to_term(f->left), formula_to_term(f->right)});
    case FormulaKind::Disj:
      return mk_app(mk_const(kOr), {formula_to_term(f->left), formula_to_term(f->right)});
    case FormulaKind::Impl:
      return mk_app(mk_const(kImp), {formula_to_term(f->left), formula_to_term(f->right)});
    case FormulaKind::Forall:
      return mk_app(mk_const(kForall), mk_abs(f->var, f->type, formula_to_term(f->left)));
    case FormulaKind::Exists:
      return mk_app(mk_const(kExists), mk_abs(f->var, f->type, formula_to_term(f->left)));
  }
  return nullptr;
}

Formula term_to_formula(const Term& t) {
  auto [h, args] = spine(t);
  if (h->kind == TermKind::Const) {
    if (h->name == kTop && args.empty()) return f_top();
    if (args.size() == 2) {
      if (h->name == kAnd) return f_and(term_to_formula(args[0]), term_to_formula(args[1]));
      if (h->name == kOr) return f_or(term_to_formula(args[0]), term_to_formula(args[1]));
      if (h->name == kImp) return f_imp(term_to_formula(args[0]), term_to_formula(args[1]));
    }
    if (args.size() == 1 && args[0]->kind == TermKind::Abs) {
      const Term& lam = args[0];
      if (h->name == kForall) return f_forall(lam->name, lam->type, term_to_formula(lam->left));
      if (h->name == kExists) return f_exists(lam->name, lam->type, term_to_formula(lam->left));
    }
  }
  return f_atom(t);
}

Formula annotate_formula(const Signature& sig, const Context& ctx, const Formula& f) {
  Term t = formula_to_term(f);
  TypePtr ty = typecheck(sig, ctx, t);
  if (!type_eq(ty, Type::prop()))
    throw Error(ErrorKind::TypeMismatch, "formula is not of type o: " + formula_to_string(f));
  return term_to_formula(annotate(sig, ctx, t));
}

std::set<std::string> formula_free_vars(const Formula& f) {
  return free_vars(formula_to_term(f));
}

bool formula_alpha_eq(const Formula& a, const Formula& b) {
  return alpha_eq(formula_to_term(a), formula_to_term(b));
}

std::string formula_key(const Formula& f) { return alpha_key(formula_to_term(f)); }

Formula formula_substitute(const Formula& f, const std::string& x, const Term& n) {
  return term_to_formula(substitute(formula_to_term(f), x, n));
}

Formula formula_replace_const(const Formula& f, const std::string& c, const Term& n) {
  return term_to_formula(replace_const(formula_to_term(f), c, n));
}

Formula formula_beta_normalize(const Formula& f) {
  return term_to_formula(beta_normalize(formula_to_term(f)));
}

std::vector<Term> formula_atoms(const Formula& f) {
  std::vector<Term> out;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (g->kind == FormulaKind::Atom) out.push_back(g->atom);
    if (g->right) stack.push_back(g->right);
    if (g->left) stack.push_back(g->left);
  }
  return out;
}

//------------------------------------------------------------------------------
// Calculi

const char* calculus_name(Calculus c) {
  switch (c) {
    case Calculus::FOHC: return "co-fohc";
    case Calculus::FOHH: return "co-fohh";
    case Calculus::HOHC: return "co-hohc";
    case Calculus::HOHH: return "co-hohh";
  }
  return "?";
}

std::optional<Calculus> parse_calculus(const std::string& s) {
  std::string k = s.rfind("co-", 0) == 0 ? s.substr(3) : s;
  if (k == "fohc") return Calculus::FOHC;
  if (k == "fohh") return Calculus::FOHH;
  if (k == "hohc") return Calculus::HOHC;
  if (k == "hohh") return Calculus::HOHH;
  return std::nullopt;
}

bool is_first_order_calculus(Calculus c) { return c == Calculus::FOHC || c == Calculus::FOHH; }

bool is_hereditary_harrop(Calculus c) { return c == Calculus::FOHH || c == Calculus::HOHH; }

bool calculus_leq(Calculus a, Calculus b) {
  return a == b || a == Calculus::FOHC || b == Calculus::HOHH;
}

const char* role_name(Role r) {
  switch (r) {
    case Role::Clause: return "clause";
    case Role::Goal: return "goal";
    case Role::Core: return "core";
  }
  return "?";
}

bool is_fo_atom(const Signature& sig, const Context& ctx, const Term& a) {
  auto [h, args] = spine(beta_normalize(a));
  if (h->kind != TermKind::Const || is_logical_constant(h->name)) return false;
  TypePtr pty = sig.type_of(h->name);
  if (!pty || !is_predicate_type(pty) || uncurry(pty).first.size() != args.size()) return false;
  for (const auto& x : args)
    if (!first_order(sig, ctx, x)) return false;
  return true;
}

bool is_rigid_atom(const Term& a) {
  Term h = spine(a).first;
  return h->kind == TermKind::Const && !is_logical_constant(h->name);
}

bool in_universe(const Term& t, int level) {
  if (occurs_const(t, kImp)) return false;
  return level >= 2 || !occurs_const(t, kForall);
}

bool witness_allowed(const Signature& sig, const Context& ctx, const Term& n, Calculus c) {
  switch (c) {
    case Calculus::FOHC:
    case Calculus::FOHH: return first_order(sig, ctx, n);
    case Calculus::HOHC: return in_universe(n, 1);
    case Calculus::HOHH: return in_universe(n, 2);
  }
  return false;
}

namespace {

class Grammar {
 public:
  Grammar(const Signature& sig, Calculus c) : sig_(sig), c_(c) {}

  bool clause(const Formula& f, Context& ctx) {
    switch (f->kind) {
      case FormulaKind::Atom: return program_atom(f->atom, ctx);
      case FormulaKind::Impl: return goal(f->left, ctx) && clause(f->right, ctx);
      case FormulaKind::Conj: return clause(f->left, ctx) && clause(f->right, ctx);
      case FormulaKind::Forall: return under(f, ctx, [&] { return clause(f->left, ctx); });
      default: return false;
    }
  }

  bool goal(const Formula& f, Context& ctx) {
    switch (f->kind) {
      case FormulaKind::Top: return true;
      case FormulaKind::Atom: return goal_atom(f->atom, ctx);
      case FormulaKind::Conj:
      case FormulaKind::Disj: return goal(f->left, ctx) && goal(f->right, ctx);
      case FormulaKind::Exists: return under(f, ctx, [&] { return goal(f->left, ctx); });
      case FormulaKind::Impl:
        return is_hereditary_harrop(c_) && clause(f->left, ctx) && goal(f->right, ctx);
      case FormulaKind::Forall:
        return is_hereditary_harrop(c_) && under(f, ctx, [&] { return goal(f->left, ctx); });
    }
    return false;
  }

  bool core(const Formula& f, Context& ctx) {
    switch (f->kind) {
      case FormulaKind::Atom: return program_atom(f->atom, ctx);
      case FormulaKind::Conj: return core(f->left, ctx) && core(f->right, ctx);
      case FormulaKind::Impl:
        return is_hereditary_harrop(c_) && core(f->left, ctx) && core(f->right, ctx);
      case FormulaKind::Forall:
        return is_hereditary_harrop(c_) && under(f, ctx, [&] { return core(f->left, ctx); });
      default: return false;
    }
  }

 private:
  template <typename Fn>
  bool under(const Formula& f, Context& ctx, Fn fn) {
    TypePtr ty = f->type ? f->type : Type::iota();
    if (is_first_order_calculus(c_) && (type_order(ty) != 0 || type_eq(ty, Type::prop())))
      return false;
    ctx.emplace_back(f->var, ty);
    bool r = fn();
    ctx.pop_back();
    return r;
  }

  int level() const { return c_ == Calculus::HOHC ? 1 : 2; }

  bool program_atom(const Term& a, const Context& ctx) {
    if (is_first_order_calculus(c_)) return is_fo_atom(sig_, ctx, a);
    return is_rigid_atom(a) && in_universe(a, level());
  }

  bool goal_atom(const Term& a, const Context& ctx) {
    if (is_first_order_calculus(c_)) return is_fo_atom(sig_, ctx, a);
    return in_universe(a, level());
  }

  const Signature& sig_;
  Calculus c_;
};

}  // namespace

bool in_calculus(const Signature& sig, const Formula& f, Role role, Calculus c,
                 const Context& ctx) {
  Grammar g(sig, c);
  Context env = ctx;
  switch (role) {
    case Role::Clause: return g.clause(f, env);
    case Role::Goal: return g.goal(f, env);
    case Role::Core: return g.core(f, env);
  }
  return false;
}

std::set<Calculus> classify(const Signature& sig, const Formula& f, Role role,
                            const Context& ctx) {
  std::set<Calculus> out;
  for (Calculus c : all_calculi())
    if (in_calculus(sig, f, role, c, ctx)) out.insert(c);
  return out;
}

//------------------------------------------------------------------------------
// H-clauses

namespace {

struct Body {
  Context vars;
  std::vector<Term> atoms;
};

std::string unused_name(const std::string& x, const std::set<std::string>& used) {
  if (!used.count(x)) return x;
  std::string b = "_" + base_name(x);
  for (int k = 0;; ++k) {
    std::string c = b + std::to_string(k);
    if (!used.count(c)) return c;
  }
}

std::vector<Body> goal_dnf(const Formula& g, std::set<std::string>& used) {
  switch (g->kind) {
    case FormulaKind::Top: return {Body{}};
    case FormulaKind::Atom: return {Body{{}, {g->atom}}};
    case FormulaKind::Conj: {
      auto l = goal_dnf(g->left, used), r = goal_dnf(g->right, used);
      std::vector<Body> out;
      for (const auto& a : l)
        for (const auto& b : r) {
          Body c = a;
          c.vars.insert(c.vars.end(), b.vars.begin(), b.vars.end());
          c.atoms.insert(c.atoms.end(), b.atoms.begin(), b.atoms.end());
          out.push_back(c);
        }
      return out;
    }
    case FormulaKind::Disj: {
      auto l = goal_dnf(g->left, used), r = goal_dnf(g->right, used);
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
    case FormulaKind::Exists: {
      std::string y = unused_name(g->var, used);
      used.insert(y);
      Formula body = y == g->var ? g->left : formula_substitute(g->left, g->var, mk_var(y));
      auto inner = goal_dnf(body, used);
      for (auto& b : inner)
        b.vars.insert(b.vars.begin(), {y, g->type ? g->type : Type::iota()});
      return inner;
    }
    default:
      throw Error(ErrorKind::NonHConvertibleClause,
                  "clause body is not a Horn goal: " + formula_to_string(g));
  }
}

std::vector<HClause> clauses_of(const Formula& d, const Context& vars, std::set<std::string>& used) {
  switch (d->kind) {
    case FormulaKind::Atom: return {HClause{vars, {}, d->atom}};
    case FormulaKind::Conj: {
      auto l = clauses_of(d->left, vars, used), r = clauses_of(d->right, vars, used);
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
    case FormulaKind::Forall: {
      std::string y = unused_name(d->var, used);
      used.insert(y);
      Formula body = y == d->var ? d->left : formula_substitute(d->left, d->var, mk_var(y));
      Context v = vars;
      v.emplace_back(y, d->type ? d->type : Type::iota());
      return clauses_of(body, v, used);
    }
    case FormulaKind::Impl: {
      auto bodies = goal_dnf(d->left, used);
      auto heads = clauses_of(d->right, {}, used);
      std::vector<HClause> out;
      for (const auto& b : bodies)
        for (const auto& h : heads) {
          HClause c;
          c.vars = vars;
          c.vars.insert(c.vars.end(), b.vars.begin(), b.vars.end());
          c.vars.insert(c.vars.end(), h.vars.begin(), h.vars.end());
          c.body = b.atoms;
          c.body.insert(c.body.end(), h.body.begin(), h.body.end());
          c.head = h.head;
          out.push_back(c);
        }
      return out;
    }
    default:
      throw Error(ErrorKind::NonHConvertibleClause,
                  "not a definite clause: " + formula_to_string(d));
  }
}

}  // namespace

std::vector<HClause> to_h_clauses(const Formula& d) {
  std::set<std::string> used = formula_free_vars(d);
  return clauses_of(d, {}, used);
}

std::vector<HClause> program_h_clauses(const Program& p) {
  std::vector<HClause> out;
  for (const auto& c : p.clauses) {
    auto hs = to_h_clauses(c);
    out.insert(out.end(), hs.begin(), hs.end());
  }
  return out;
}

std::string hclause_to_string(const HClause& c) {
  std::string s;
  for (const auto& v : c.vars) s += "forall " + v.first + ". ";
  for (size_t i = 0; i < c.body.size(); ++i)
    s += (i ? " /\\ " : "") + term_to_string(c.body[i]);
  if (!c.body.empty()) s += " => ";
  return s + term_to_string(c.head);
}

std::vector<HClause> ground_instances(const HClause& h, const std::vector<Term>& universe,
                                      size_t limit) {
  std::vector<HClause> out;
  std::set<std::string> seen;
  std::vector<size_t> idx(h.vars.size(), 0);
  if (!h.vars.empty() && universe.empty()) return out;
  while (out.size() < limit) {
    std::map<std::string, Term> s;
    for (size_t i = 0; i < idx.size(); ++i) s[h.vars[i].first] = universe[idx[i]];
    HClause g;
    g.head = beta_normalize(substitute(h.head, s));
    for (const auto& b : h.body) g.body.push_back(beta_normalize(substitute(b, s)));
    std::string key = alpha_key(g.head);
    for (const auto& b : g.body) key += "|" + alpha_key(b);
    if (seen.insert(key).second) out.push_back(std::move(g));
    size_t k = 0;
    while (k < idx.size() && ++idx[k] == universe.size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return out;
}

}  // namespace cup
