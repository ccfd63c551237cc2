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

#include "cup/term.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>

namespace cup {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnboundConstant: return "UnboundConstant";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::FixBodyNotAbstraction: return "FixBodyNotAbstraction";
    case ErrorKind::NoFixRedex: return "NoFixRedex";
    case ErrorKind::NotGuardedAtom: return "NotGuardedAtom";
    case ErrorKind::DepthUnreachable: return "DepthUnreachable";
    case ErrorKind::NonGroundAtom: return "NonGroundAtom";
    case ErrorKind::NonHConvertibleClause: return "NonHConvertibleClause";
    case ErrorKind::UniverseTooLarge: return "UniverseTooLarge";
    case ErrorKind::BodyNotInModel: return "BodyNotInModel";
    case ErrorKind::NotHShaped: return "NotHShaped";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::TypeError: return "TypeError";
    case ErrorKind::GuardednessError: return "GuardednessError";
    case ErrorKind::NonFirstOrderSignature: return "NonFirstOrderSignature";
    case ErrorKind::NotCoreFormula: return "NotCoreFormula";
    case ErrorKind::NotInCalculus: return "NotInCalculus";
    case ErrorKind::FlexibleAtomUnsupported: return "FlexibleAtomUnsupported";
    case ErrorKind::ProofInvalid: return "ProofInvalid";
    case ErrorKind::SignatureMismatch: return "SignatureMismatch";
    case ErrorKind::MalformedDocument: return "MalformedDocument";
    case ErrorKind::MissingEigenvariableBinding: return "MissingEigenvariableBinding";
  }
  return "Unknown";
}

//------------------------------------------------------------------------------
// Types

TypePtr Type::base(const std::string& name) {
  auto t = std::make_shared<Type>();
  t->kind = Kind::Base;
  t->name = name;
  return t;
}

TypePtr Type::arrow(TypePtr arg, TypePtr res) {
  auto t = std::make_shared<Type>();
  t->kind = Kind::Arrow;
  t->arg = std::move(arg);
  t->res = std::move(res);
  return t;
}

TypePtr Type::iota() {
  static const TypePtr t = base("i");
  return t;
}

TypePtr Type::prop() {
  static const TypePtr t = base("o");
  return t;
}

TypePtr arrows(const std::vector<TypePtr>& args, TypePtr res) {
  for (auto it = args.rbegin(); it != args.rend(); ++it) res = Type::arrow(*it, res);
  return res;
}

int type_order(const TypePtr& t) {
  if (t->kind == Type::Kind::Base) return 0;
  return std::max(type_order(t->arg) + 1, type_order(t->res));
}

bool type_eq(const TypePtr& a, const TypePtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  if (a->kind == Type::Kind::Base) return a->name == b->name;
  return type_eq(a->arg, b->arg) && type_eq(a->res, b->res);
}

std::string type_to_string(const TypePtr& t) {
  if (!t) return "?";
  if (t->kind == Type::Kind::Base) return t->name;
  std::string a = type_to_string(t->arg);
  if (t->arg->kind == Type::Kind::Arrow) a = "(" + a + ")";
  return a + " -> " + type_to_string(t->res);
}

std::pair<std::vector<TypePtr>, TypePtr> uncurry(const TypePtr& t) {
  std::vector<TypePtr> args;
  TypePtr cur = t;
  while (cur->kind == Type::Kind::Arrow) {
    args.push_back(cur->arg);
    cur = cur->res;
  }
  return {args, cur};
}

//------------------------------------------------------------------------------
// Term construction

Term mk_var(const std::string& name) {
  auto t = std::make_shared<TermNode>();
  t->kind = TermKind::Var;
  t->name = name;
  return t;
}

Term mk_const(const std::string& name) {
  auto t = std::make_shared<TermNode>();
  t->kind = TermKind::Const;
  t->name = name;
  return t;
}

Term mk_app(Term fn, Term arg) {
  auto t = std::make_shared<TermNode>();
  t->kind = TermKind::App;
  t->left = std::move(fn);
  t->right = std::move(arg);
  return t;
}

Term mk_app(Term fn, const std::vector<Term>& args) {
  for (const auto& a : args) fn = mk_app(fn, a);
  return fn;
}

Term mk_abs(const std::string& name, TypePtr type, Term body) {
  auto t = std::make_shared<TermNode>();
  t->kind = TermKind::Abs;
  t->name = name;
  t->type = std::move(type);
  t->left = std::move(body);
  return t;
}

Term mk_fix(Term body) {
  if (!body || body->kind != TermKind::Abs)
    throw Error(ErrorKind::FixBodyNotAbstraction,
                "fix body is not an abstraction: " + term_to_string(body));
  auto t = std::make_shared<TermNode>();
  t->kind = TermKind::Fix;
  t->left = std::move(body);
  return t;
}

std::pair<Term, std::vector<Term>> spine(const Term& t) {
  std::vector<Term> args;
  Term cur = t;
  while (cur->kind == TermKind::App) {
    args.push_back(cur->right);
    cur = cur->left;
  }
  std::reverse(args.begin(), args.end());
  return {cur, args};
}

std::string term_to_string(const Term& t) {
  if (!t) return "<null>";
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Const:
      return t->name;
    case TermKind::App: {
      auto [h, args] = spine(t);
      std::string s = h->kind == TermKind::Var || h->kind == TermKind::Const
                          ? h->name
                          : "(" + term_to_string(h) + ")";
      for (const auto& a : args) {
        bool atomic = a->kind == TermKind::Var || a->kind == TermKind::Const;
        s += atomic ? " " + a->name : " (" + term_to_string(a) + ")";
      }
      return s;
    }
    case TermKind::Abs:
      return "\\" + t->name + ". " + term_to_string(t->left);
    case TermKind::Fix:
      return "fix " + term_to_string(t->left);
  }
  return "";
}

bool is_reserved_name(const std::string& name) {
  return !name.empty() && name[0] == '_';
}

bool is_logical_constant(const std::string& name) {
  return name == kAnd || name == kOr || name == kImp || name == kTop ||
         name == kForall || name == kExists;
}

//------------------------------------------------------------------------------
// Signature

Signature::Signature() {
  TypePtr o = Type::prop();
  TypePtr ooo = Type::arrow(o, Type::arrow(o, o));
  constants_[kAnd] = ooo;
  constants_[kOr] = ooo;
  constants_[kImp] = ooo;
  constants_[kTop] = o;
  constants_[kForall] = nullptr;
  constants_[kExists] = nullptr;
  constants_[kDiamond] = Type::iota();
}

void Signature::add(const std::string& name, TypePtr type) {
  if (!constants_.count(name)) declared_.push_back(name);
  constants_[name] = std::move(type);
}

bool Signature::has(const std::string& name) const { return constants_.count(name) > 0; }

TypePtr Signature::type_of(const std::string& name) const {
  auto it = constants_.find(name);
  return it == constants_.end() ? nullptr : it->second;
}

//------------------------------------------------------------------------------
// Type inference

namespace {

class Inferencer {
 public:
  explicit Inferencer(const Signature& sig) : sig_(sig) {}

  TypePtr fresh() { return Type::base("?" + std::to_string(next_++)); }

  static bool is_meta(const TypePtr& t) {
    return t->kind == Type::Kind::Base && !t->name.empty() && t->name[0] == '?';
  }

  TypePtr prune(TypePtr t) {
    while (is_meta(t)) {
      auto it = binding_.find(t->name);
      if (it == binding_.end()) break;
      t = it->second;
    }
    return t;
  }

  TypePtr zonk(const TypePtr& t) {
    TypePtr p = prune(t);
    if (is_meta(p)) return Type::iota();
    if (p->kind == Type::Kind::Base) return p;
    return Type::arrow(zonk(p->arg), zonk(p->res));
  }

  bool occurs(const std::string& m, const TypePtr& t) {
    TypePtr p = prune(t);
    if (is_meta(p)) return p->name == m;
    if (p->kind == Type::Kind::Base) return false;
    return occurs(m, p->arg) || occurs(m, p->res);
  }

  bool unify(const TypePtr& a, const TypePtr& b) {
    TypePtr x = prune(a), y = prune(b);
    if (is_meta(x)) {
      if (is_meta(y) && y->name == x->name) return true;
      if (occurs(x->name, y)) return false;
      binding_[x->name] = y;
      return true;
    }
    if (is_meta(y)) return unify(y, x);
    if (x->kind != y->kind) return false;
    if (x->kind == Type::Kind::Base) return x->name == y->name;
    return unify(x->arg, y->arg) && unify(x->res, y->res);
  }

  TypePtr infer(const Term& t, Context& env) {
    switch (t->kind) {
      case TermKind::Var: {
        for (auto it = env.rbegin(); it != env.rend(); ++it)
          if (it->first == t->name) return it->second;
        throw Error(ErrorKind::UnboundVariable, "unbound variable " + t->name);
      }
      case TermKind::Const: {
        if (t->name == kForall || t->name == kExists) {
          TypePtr a = fresh();
          return Type::arrow(Type::arrow(a, Type::prop()), Type::prop());
        }
        if (!sig_.has(t->name))
          throw Error(ErrorKind::UnboundConstant, "unbound constant " + t->name);
        return sig_.type_of(t->name);
      }
      case TermKind::App: {
        TypePtr f = infer(t->left, env);
        TypePtr a = infer(t->right, env);
        TypePtr r = fresh();
        if (!unify(f, Type::arrow(a, r)))
          throw Error(ErrorKind::TypeMismatch,
                      "type mismatch in application " + term_to_string(t));
        return r;
      }
      case TermKind::Abs: {
        TypePtr a = t->type ? t->type : fresh();
        binders_[t.get()] = a;
        env.emplace_back(t->name, a);
        TypePtr b = infer(t->left, env);
        env.pop_back();
        return Type::arrow(a, b);
      }
      case TermKind::Fix: {
        if (!t->left || t->left->kind != TermKind::Abs)
          throw Error(ErrorKind::FixBodyNotAbstraction, "fix body is not an abstraction");
        TypePtr f = infer(t->left, env);
        TypePtr p = prune(f);
        if (!unify(p->arg, p->res))
          throw Error(ErrorKind::TypeMismatch,
                      "fix body type is not an endofunction: " + term_to_string(t));
        return p->arg;
      }
    }
    throw Error(ErrorKind::TypeMismatch, "malformed term");
  }

  Term rebuild(const Term& t) {
    switch (t->kind) {
      case TermKind::Var:
      case TermKind::Const:
        return t;
      case TermKind::App:
        return mk_app(rebuild(t->left), rebuild(t->right));
      case TermKind::Abs:
        return mk_abs(t->name, zonk(binders_.at(t.get())), rebuild(t->left));
      case TermKind::Fix:
        return mk_fix(rebuild(t->left));
    }
    return t;
  }

 private:
  const Signature& sig_;
  int next_ = 0;
  std::map<std::string, TypePtr> binding_;
  std::unordered_map<const TermNode*, TypePtr> binders_;
};

}  // namespace

TypePtr typecheck(const Signature& sig, const Context& ctx, const Term& t) {
  Inferencer inf(sig);
  Context env = ctx;
  return inf.zonk(inf.infer(t, env));
}

Term annotate(const Signature& sig, const Context& ctx, const Term& t) {
  Inferencer inf(sig);
  Context env = ctx;
  inf.infer(t, env);
  return inf.rebuild(t);
}

//------------------------------------------------------------------------------
// Free variables, subterms

namespace {

void collect_fv(const Term& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (t->kind) {
    case TermKind::Var:
      if (std::find(bound.begin(), bound.end(), t->name) == bound.end()) out.insert(t->name);
      return;
    case TermKind::Const:
      return;
    case TermKind::App:
      collect_fv(t->left, bound, out);
      collect_fv(t->right, bound, out);
      return;
    case TermKind::Abs:
      bound.push_back(t->name);
      collect_fv(t->left, bound, out);
      bound.pop_back();
      return;
    case TermKind::Fix:
      collect_fv(t->left, bound, out);
      return;
  }
}

void collect_names(const Term& t, std::set<std::string>& out) {
  switch (t->kind) {
    case TermKind::Var:
      out.insert(t->name);
      return;
    case TermKind::Const:
      return;
    case TermKind::App:
      collect_names(t->left, out);
      collect_names(t->right, out);
      return;
    case TermKind::Abs:
      out.insert(t->name);
      collect_names(t->left, out);
      return;
    case TermKind::Fix:
      collect_names(t->left, out);
      return;
  }
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_fv(t, bound, out);
  return out;
}

std::set<std::string> constants_of(const Term& t) {
  std::set<std::string> out;
  for (const auto& s : subterms(t))
    if (s->kind == TermKind::Const) out.insert(s->name);
  return out;
}

std::vector<Term> subterms(const Term& t) {
  std::vector<Term> out;
  std::vector<Term> stack{t};
  while (!stack.empty()) {
    Term cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    if (cur->right) stack.push_back(cur->right);
    if (cur->left) stack.push_back(cur->left);
  }
  return out;
}

bool occurs_const(const Term& t, const std::string& name) {
  switch (t->kind) {
    case TermKind::Const: return t->name == name;
    case TermKind::Var: return false;
    case TermKind::App: return occurs_const(t->left, name) || occurs_const(t->right, name);
    case TermKind::Abs:
    case TermKind::Fix: return occurs_const(t->left, name);
  }
  return false;
}

std::string base_name(const std::string& name) {
  size_t b = 0;
  while (b < name.size() && name[b] == '_') ++b;
  size_t e = name.size();
  while (e > b && std::isdigit(static_cast<unsigned char>(name[e - 1]))) --e;
  std::string s = name.substr(b, e - b);
  s.erase(std::remove(s.begin(), s.end(), '\''), s.end());
  return s.empty() ? "v" : s;
}

std::string NameSupply::fresh(const std::string& base) {
  return prefix_ + base_name(base) + std::to_string(counter_++);
}

//------------------------------------------------------------------------------
// Substitution

namespace {

std::string fresh_avoiding(const std::string& x, const std::set<std::string>& avoid) {
  std::string b = "_" + base_name(x);
  for (int k = 0;; ++k) {
    std::string c = b + std::to_string(k);
    if (!avoid.count(c)) return c;
  }
}

Term subst_rec(const Term& t, const std::map<std::string, Term>& s) {
  switch (t->kind) {
    case TermKind::Var: {
      auto it = s.find(t->name);
      return it == s.end() ? t : it->second;
    }
    case TermKind::Const:
      return t;
    case TermKind::App: {
      Term l = subst_rec(t->left, s), r = subst_rec(t->right, s);
      if (l == t->left && r == t->right) return t;
      return mk_app(l, r);
    }
    case TermKind::Abs: {
      std::map<std::string, Term> inner;
      std::set<std::string> body_fv = free_vars(t->left);
      for (const auto& [k, v] : s)
        if (k != t->name && body_fv.count(k)) inner.emplace(k, v);
      if (inner.empty()) return t;
      std::set<std::string> range_fv;
      for (const auto& [k, v] : inner) {
        auto fv = free_vars(v);
        range_fv.insert(fv.begin(), fv.end());
      }
      if (range_fv.count(t->name)) {
        std::set<std::string> avoid = range_fv;
        collect_names(t->left, avoid);
        for (const auto& [k, v] : inner) avoid.insert(k);
        std::string y = fresh_avoiding(t->name, avoid);
        inner[t->name] = mk_var(y);
        return mk_abs(y, t->type, subst_rec(t->left, inner));
      }
      return mk_abs(t->name, t->type, subst_rec(t->left, inner));
    }
    case TermKind::Fix: {
      Term b = subst_rec(t->left, s);
      return b == t->left ? t : mk_fix(b);
    }
  }
  return t;
}

}  // namespace

Term substitute(const Term& t, const std::string& x, const Term& n) {
  return subst_rec(t, {{x, n}});
}

Term substitute(const Term& t, const std::map<std::string, Term>& s) {
  if (s.empty()) return t;
  return subst_rec(t, s);
}

Term replace_const(const Term& t, const std::string& c, const Term& n) {
  if (!occurs_const(t, c)) return t;
  std::set<std::string> avoid;
  collect_names(t, avoid);
  auto fv = free_vars(n);
  avoid.insert(fv.begin(), fv.end());
  std::string v = fresh_avoiding(c, avoid);
  std::function<Term(const Term&)> go = [&](const Term& u) -> Term {
    switch (u->kind) {
      case TermKind::Const: return u->name == c ? mk_var(v) : u;
      case TermKind::Var: return u;
      case TermKind::App: return mk_app(go(u->left), go(u->right));
      case TermKind::Abs: return mk_abs(u->name, u->type, go(u->left));
      case TermKind::Fix: return mk_fix(go(u->left));
    }
    return u;
  };
  return substitute(go(t), v, n);
}

//------------------------------------------------------------------------------
// Alpha equivalence

namespace {

int bound_index(const std::vector<std::string>& env, const std::string& x) {
  for (int i = static_cast<int>(env.size()) - 1; i >= 0; --i)
    if (env[i] == x) return static_cast<int>(env.size()) - 1 - i;
  return -1;
}

bool aeq(const Term& a, const Term& b, std::vector<std::string>& ea,
         std::vector<std::string>& eb) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Var: {
      int i = bound_index(ea, a->name), j = bound_index(eb, b->name);
      if (i < 0 && j < 0) return a->name == b->name;
      return i == j;
    }
    case TermKind::Const:
      return a->name == b->name;
    case TermKind::App:
      return aeq(a->left, b->left, ea, eb) && aeq(a->right, b->right, ea, eb);
    case TermKind::Abs: {
      ea.push_back(a->name);
      eb.push_back(b->name);
      bool r = aeq(a->left, b->left, ea, eb);
      ea.pop_back();
      eb.pop_back();
      return r;
    }
    case TermKind::Fix:
      return aeq(a->left, b->left, ea, eb);
  }
  return false;
}

void key_rec(const Term& t, std::vector<std::string>& env, std::string& out) {
  switch (t->kind) {
    case TermKind::Var: {
      int i = bound_index(env, t->name);
      out += i < 0 ? "v:" + t->name : "#" + std::to_string(i);
      return;
    }
    case TermKind::Const:
      out += "c:" + t->name;
      return;
    case TermKind::App:
      out += "(";
      key_rec(t->left, env, out);
      out += " ";
      key_rec(t->right, env, out);
      out += ")";
      return;
    case TermKind::Abs:
      out += "\\(";
      env.push_back(t->name);
      key_rec(t->left, env, out);
      env.pop_back();
      out += ")";
      return;
    case TermKind::Fix:
      out += "fix(";
      key_rec(t->left, env, out);
      out += ")";
      return;
  }
}

}  // namespace

bool alpha_eq(const Term& a, const Term& b) {
  if (a == b) return true;
  std::vector<std::string> ea, eb;
  return aeq(a, b, ea, eb);
}

std::string alpha_key(const Term& t) {
  std::string out;
  std::vector<std::string> env;
  key_rec(t, env, out);
  return out;
}

//------------------------------------------------------------------------------
// Beta normalisation

Term beta_normalize(const Term& t) {
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Const:
      return t;
    case TermKind::App: {
      Term f = beta_normalize(t->left);
      Term a = beta_normalize(t->right);
      if (f->kind == TermKind::Abs) return beta_normalize(substitute(f->left, f->name, a));
      if (f == t->left && a == t->right) return t;
      return mk_app(f, a);
    }
    case TermKind::Abs: {
      Term b = beta_normalize(t->left);
      return b == t->left ? t : mk_abs(t->name, t->type, b);
    }
    case TermKind::Fix: {
      Term b = beta_normalize(t->left);
      return b == t->left ? t : mk_fix(b);
    }
  }
  return t;
}

bool is_beta_normal(const Term& t) {
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Const:
      return true;
    case TermKind::App:
      return t->left->kind != TermKind::Abs && is_beta_normal(t->left) &&
             is_beta_normal(t->right);
    case TermKind::Abs:
    case TermKind::Fix:
      return is_beta_normal(t->left);
  }
  return true;
}

//------------------------------------------------------------------------------
// Fix unfolding

namespace {

Term unfold_fix_node(const Term& fx) {
  const Term& lam = fx->left;
  return substitute(lam->left, lam->name, fx);
}

std::pair<Term, bool> unfold_leftmost(const Term& t) {
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Const:
      return {t, false};
    case TermKind::Fix:
      return {unfold_fix_node(t), true};
    case TermKind::App: {
      auto [l, found] = unfold_leftmost(t->left);
      if (found) return {mk_app(l, t->right), true};
      auto [r, found2] = unfold_leftmost(t->right);
      if (found2) return {mk_app(t->left, r), true};
      return {t, false};
    }
    case TermKind::Abs: {
      auto [b, found] = unfold_leftmost(t->left);
      if (found) return {mk_abs(t->name, t->type, b), true};
      return {t, false};
    }
  }
  return {t, false};
}

Term unfold_all_outermost(const Term& t, bool& found) {
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Const:
      return t;
    case TermKind::Fix:
      found = true;
      return unfold_fix_node(t);
    case TermKind::App: {
      Term l = unfold_all_outermost(t->left, found);
      Term r = unfold_all_outermost(t->right, found);
      if (l == t->left && r == t->right) return t;
      return mk_app(l, r);
    }
    case TermKind::Abs: {
      Term b = unfold_all_outermost(t->left, found);
      return b == t->left ? t : mk_abs(t->name, t->type, b);
    }
  }
  return t;
}

}  // namespace

Term fixbeta_unfold(const Term& t) {
  auto [u, found] = unfold_leftmost(t);
  if (!found) throw Error(ErrorKind::NoFixRedex, "no fix redex in " + term_to_string(t));
  return beta_normalize(u);
}

Term unfold_round(const Term& t) {
  bool found = false;
  Term u = unfold_all_outermost(t, found);
  if (!found) throw Error(ErrorKind::NoFixRedex, "no fix redex in " + term_to_string(t));
  return beta_normalize(u);
}

bool has_fix(const Term& t) {
  switch (t->kind) {
    case TermKind::Fix: return true;
    case TermKind::Var:
    case TermKind::Const: return false;
    case TermKind::App: return has_fix(t->left) || has_fix(t->right);
    case TermKind::Abs: return has_fix(t->left);
  }
  return false;
}

bool is_fix_app(const Term& t) { return spine(t).first->kind == TermKind::Fix; }

const char* equiv_name(Equiv e) {
  switch (e) {
    case Equiv::Equal: return "Equal";
    case Equiv::NotEqual: return "NotEqual";
    case Equiv::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

Term unfold_head(const Term& t) {
  auto [h, args] = spine(t);
  return beta_normalize(mk_app(unfold_fix_node(h), args));
}

Equiv equiv_rec(const Term& a, const Term& b, int budget) {
  if (alpha_eq(a, b)) return Equiv::Equal;
  auto [ha, xa] = spine(a);
  auto [hb, xb] = spine(b);
  bool fa = ha->kind == TermKind::Fix, fb = hb->kind == TermKind::Fix;
  if (fa || fb) {
    if (budget <= 0) return Equiv::Unknown;
    return equiv_rec(fa ? unfold_head(a) : a, fb ? unfold_head(b) : b, budget - 1);
  }
  if (a->kind == TermKind::Abs || b->kind == TermKind::Abs) {
    if (a->kind != b->kind) return Equiv::NotEqual;
    std::set<std::string> avoid = free_vars(a);
    auto fvb = free_vars(b);
    avoid.insert(fvb.begin(), fvb.end());
    std::string z = fresh_avoiding(a->name, avoid);
    return equiv_rec(substitute(a->left, a->name, mk_var(z)),
                     substitute(b->left, b->name, mk_var(z)), budget);
  }
  if (ha->kind != hb->kind || ha->name != hb->name || xa.size() != xb.size())
    return Equiv::NotEqual;
  bool unknown = false;
  for (size_t i = 0; i < xa.size(); ++i) {
    Equiv e = equiv_rec(xa[i], xb[i], budget);
    if (e == Equiv::NotEqual) return Equiv::NotEqual;
    if (e == Equiv::Unknown) unknown = true;
  }
  return unknown ? Equiv::Unknown : Equiv::Equal;
}

}  // namespace

Equiv fixbeta_equiv(const Term& a, const Term& b, int bound) {
  return equiv_rec(beta_normalize(a), beta_normalize(b), bound);
}

//------------------------------------------------------------------------------
// First-order terms

namespace {

TypePtr typed_walk(const Signature& sig, Context& env, const Term& t,
                   std::vector<std::pair<Term, TypePtr>>& out) {
  TypePtr ty;
  switch (t->kind) {
    case TermKind::Var: {
      for (auto it = env.rbegin(); it != env.rend() && !ty; ++it)
        if (it->first == t->name) ty = it->second;
      if (!ty) throw Error(ErrorKind::UnboundVariable, "unbound variable " + t->name);
      break;
    }
    case TermKind::Const:
      ty = sig.type_of(t->name);
      if (!ty) {
        if (!sig.has(t->name))
          throw Error(ErrorKind::UnboundConstant, "unbound constant " + t->name);
        // polymorphic quantifier constant: order is at least 2
        ty = Type::arrow(Type::arrow(Type::iota(), Type::prop()), Type::prop());
      }
      break;
    case TermKind::App: {
      TypePtr f = typed_walk(sig, env, t->left, out);
      typed_walk(sig, env, t->right, out);
      if (f->kind != Type::Kind::Arrow)
        throw Error(ErrorKind::TypeMismatch, "ill-typed application " + term_to_string(t));
      ty = f->res;
      break;
    }
    case TermKind::Abs: {
      TypePtr a = t->type ? t->type : Type::iota();
      env.emplace_back(t->name, a);
      TypePtr b = typed_walk(sig, env, t->left, out);
      env.pop_back();
      ty = Type::arrow(a, b);
      break;
    }
    case TermKind::Fix: {
      TypePtr f = typed_walk(sig, env, t->left, out);
      ty = f->arg;
      break;
    }
  }
  out.emplace_back(t, ty);
  return ty;
}

}  // namespace

FirstOrderReport is_first_order(const Signature& sig, const Context& ctx, const Term& t) {
  Term at = annotate(sig, ctx, t);
  Context env = ctx;
  std::vector<std::pair<Term, TypePtr>> typed;
  TypePtr ty = typed_walk(sig, env, at, typed);
  FirstOrderReport r;
  auto fail = [&](int c, std::string d) {
    r.ok = false;
    r.failed_condition = c;
    r.detail = std::move(d);
    return r;
  };
  if (type_order(ty) != 0) return fail(1, "term type " + type_to_string(ty) + " has order > 0");
  for (const auto& [s, st] : typed)
    if (s->kind == TermKind::Const && type_order(st) > 1)
      return fail(2, "constant " + s->name + " has order " + std::to_string(type_order(st)));
  for (const auto& [s, st] : typed)
    if (s->kind == TermKind::Var && type_order(st) != 0)
      return fail(3, "variable " + s->name + " has order " + std::to_string(type_order(st)));
  for (const auto& [s, st] : typed)
    if (type_eq(st, Type::prop()))
      return fail(4, "subterm " + term_to_string(s) + " has type o");
  for (const auto& [s, st] : typed)
    if (s->kind == TermKind::Fix) return fail(5, "fix subterm " + term_to_string(s));
  return r;
}

bool first_order(const Signature& sig, const Context& ctx, const Term& t) {
  try {
    return is_first_order(sig, ctx, t).ok;
  } catch (const Error&) {
    return false;
  }
}

bool is_predicate_type(const TypePtr& t) {
  auto [args, target] = uncurry(t);
  if (!type_eq(target, Type::prop())) return false;
  for (const auto& a : args)
    if (a->kind != Type::Kind::Base || type_eq(a, Type::prop())) return false;
  return true;
}

bool is_first_order_signature(const Signature& sig, std::string* offender) {
  for (const auto& name : sig.declared()) {
    TypePtr t = sig.type_of(name);
    auto [args, target] = uncurry(t);
    bool ok = target->kind == Type::Kind::Base;
    for (const auto& a : args)
      if (a->kind != Type::Kind::Base || type_eq(a, Type::prop())) ok = false;
    if (!ok) {
      if (offender) *offender = name;
      return false;
    }
  }
  return true;
}

}  // namespace cup
