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

#include <algorithm>
#include <map>

namespace cup {

std::optional<FixShape> fix_shape(const Term& t) {
  if (t->kind != TermKind::Fix) return std::nullopt;
  FixShape s;
  Term body = t->left;
  s.self = body->name;
  body = body->left;
  while (body->kind == TermKind::Abs) {
    s.params.push_back(body->name);
    body = body->left;
  }
  auto [h, args] = spine(body);
  if (h->kind != TermKind::Const) return std::nullopt;
  s.head = h->name;
  s.args = args;
  for (size_t i = 0; i < args.size(); ++i) {
    auto [ah, aargs] = spine(args[i]);
    if (ah->kind == TermKind::Var && ah->name == s.self) {
      if (s.self_position >= 0) return std::nullopt;
      s.self_position = static_cast<int>(i);
      s.self_args = aargs;
    }
  }
  if (s.self_position < 0) return std::nullopt;
  return s;
}

GuardReport is_guarded_fixed_point(const Signature& sig, const Term& t) {
  GuardReport r;
  auto violate = [&](const std::string& c, const std::string& loc) {
    r.guarded = false;
    r.violations.push_back({c, loc});
  };
  if (t->kind != TermKind::Fix) {
    violate("full-term shape", "not a fix term: " + term_to_string(t));
    return r;
  }
  Term at;
  try {
    at = annotate(sig, {}, t);
  } catch (const Error& e) {
    violate("full-term shape", std::string("ill-typed: ") + e.what());
    return r;
  }
  Term lam = at->left;
  std::string x = lam->name;
  TypePtr xty = lam->type;
  Term body = lam->left;
  Context ctx;
  std::vector<std::string> ys;
  while (body->kind == TermKind::Abs) {
    ys.push_back(body->name);
    ctx.emplace_back(body->name, body->type);
    if (!type_eq(body->type, Type::iota()))
      violate("1", "parameter " + body->name + " is not of type i");
    body = body->left;
  }
  std::vector<TypePtr> iotas(ys.size(), Type::iota());
  if (!type_eq(xty, arrows(iotas, Type::iota())))
    violate("1", "recursion variable " + x + " has type " + type_to_string(xty));
  std::set<std::string> yset(ys.begin(), ys.end());
  if (yset.size() != ys.size()) violate("full-term shape", "repeated parameter names");

  auto [h, args] = spine(body);
  if (h->kind != TermKind::Const) {
    violate("2", "body head is not a constant: " + term_to_string(body));
    return r;
  }
  TypePtr fty = sig.type_of(h->name);
  std::vector<TypePtr> fargs(args.size(), Type::iota());
  if (!fty || !type_eq(fty, arrows(fargs, Type::iota())))
    violate("2", "head " + h->name + " is not of type i^" + std::to_string(args.size()) +
                     " -> i");

  int self_calls = 0;
  std::vector<Term> pieces;
  for (const auto& a : args) {
    auto [ah, aargs] = spine(a);
    if (ah->kind == TermKind::Var && ah->name == x && aargs.size() == ys.size()) {
      ++self_calls;
      pieces.insert(pieces.end(), aargs.begin(), aargs.end());
    } else {
      pieces.push_back(a);
    }
  }
  if (self_calls != 1)
    violate("full-term shape",
            "expected exactly one self call, found " + std::to_string(self_calls));

  std::set<std::string> fv;
  Context full = ctx;
  full.emplace_back(x, xty);
  for (const auto& p : pieces) {
    auto pf = free_vars(p);
    fv.insert(pf.begin(), pf.end());
    bool ok = false;
    try {
      ok = !pf.count(x) && is_first_order(sig, ctx, p).ok &&
           type_eq(typecheck(sig, ctx, p), Type::iota());
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) violate("3", "argument " + term_to_string(p) + " is not a first-order term of type i");
  }
  if (fv.count(x)) violate("4", "recursion variable " + x + " occurs outside the self call");
  fv.erase(x);
  if (fv != yset) violate("4", "free variables of the arguments differ from the parameters");
  return r;
}

bool is_guarded_full(const Signature& sig, const Context& ctx, const Term& t) {
  try {
    if (first_order(sig, ctx, t)) return true;
    auto [h, args] = spine(t);
    if (h->kind != TermKind::Fix) return false;
    if (!is_guarded_fixed_point(sig, h).guarded) return false;
    auto shape = fix_shape(h);
    if (!shape || shape->params.size() != args.size()) return false;
    for (const auto& a : args)
      if (!first_order(sig, ctx, a) || !type_eq(typecheck(sig, ctx, a), Type::iota()))
        return false;
    return true;
  } catch (const Error&) {
    return false;
  }
}

namespace {

bool match_fo(const Term& pat, const Term& t, const std::set<std::string>& vars,
              std::map<std::string, Term>& sub) {
  if (pat->kind == TermKind::Var && vars.count(pat->name)) {
    auto it = sub.find(pat->name);
    if (it != sub.end()) return alpha_eq(it->second, t);
    sub[pat->name] = t;
    return true;
  }
  if (pat->kind != t->kind) return false;
  switch (pat->kind) {
    case TermKind::Var:
    case TermKind::Const:
      return pat->name == t->name;
    case TermKind::App:
      return match_fo(pat->left, t->left, vars, sub) && match_fo(pat->right, t->right, vars, sub);
    default:
      return alpha_eq(pat, t);
  }
}

}  // namespace

std::optional<Term> fold_guarded_full(const Signature& sig, const Context& ctx,
                                      const Term& t, int bound) {
  if (is_guarded_full(sig, ctx, t)) return t;
  if (bound <= 0) return std::nullopt;
  auto [h, args] = spine(t);
  if (h->kind != TermKind::Const) return std::nullopt;
  for (size_t p = 0; p < args.size(); ++p) {
    if (first_order(sig, ctx, args[p])) continue;
    auto inner = fold_guarded_full(sig, ctx, args[p], bound - 1);
    if (!inner) continue;
    auto [F, M] = spine(*inner);
    if (F->kind != TermKind::Fix) continue;
    auto shape = fix_shape(F);
    if (!shape || shape->head != h->name || shape->args.size() != args.size() ||
        shape->self_position != static_cast<int>(p) || shape->self_args.size() != M.size())
      continue;
    std::set<std::string> vars(shape->params.begin(), shape->params.end());
    std::map<std::string, Term> sub;
    bool ok = true;
    for (size_t i = 0; i < args.size() && ok; ++i) {
      if (i == p) continue;
      ok = first_order(sig, ctx, args[i]) && match_fo(shape->args[i], args[i], vars, sub);
    }
    for (size_t j = 0; j < M.size() && ok; ++j) ok = match_fo(shape->self_args[j], M[j], vars, sub);
    if (!ok || sub.size() != vars.size()) continue;
    std::vector<Term> actuals;
    for (const auto& y : shape->params) actuals.push_back(sub.at(y));
    return mk_app(F, actuals);
  }
  return std::nullopt;
}

bool is_guarded_atom(const Signature& sig, const Context& ctx, const Term& a, int bound) {
  auto [h, args] = spine(beta_normalize(a));
  if (h->kind != TermKind::Const || is_logical_constant(h->name)) return false;
  TypePtr pty = sig.type_of(h->name);
  if (!pty || !is_predicate_type(pty)) return false;
  if (uncurry(pty).first.size() != args.size()) return false;
  for (const auto& x : args)
    if (!fold_guarded_full(sig, ctx, x, bound)) return false;
  return true;
}

Term snapshot_unchecked(const Term& t) {
  auto [h, args] = spine(t);
  if (h->kind == TermKind::Fix) return mk_const(kDiamond);
  if (args.empty()) return t;
  std::vector<Term> out;
  bool changed = false;
  for (const auto& a : args) {
    out.push_back(snapshot_unchecked(a));
    changed = changed || out.back() != a;
  }
  return changed ? mk_app(h, out) : t;
}

Term snapshot(const Signature& sig, const Context& ctx, const Term& a) {
  if (!is_guarded_atom(sig, ctx, a))
    throw Error(ErrorKind::NotGuardedAtom, "not a guarded atom: " + term_to_string(a));
  return snapshot_unchecked(beta_normalize(a));
}

}  // namespace cup
