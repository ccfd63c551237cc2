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

#include "cup/proof.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "cup/guard.hpp"
#include "cup/parser.hpp"

namespace cup {

const char* role_tag(ClauseRole r) {
  switch (r) {
    case ClauseRole::Hypothesis: return "hyp";
    case ClauseRole::Lemma: return "lemma";
    case ClauseRole::CoinductiveHypothesis: return "ch";
  }
  return "?";
}

std::optional<ClauseRole> parse_role_tag(const std::string& s) {
  if (s == "hyp") return ClauseRole::Hypothesis;
  if (s == "lemma") return ClauseRole::Lemma;
  if (s == "ch") return ClauseRole::CoinductiveHypothesis;
  return std::nullopt;
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Found: return "Found";
    case Outcome::Failed: return "Failed";
    case Outcome::DepthExceeded: return "DepthExceeded";
  }
  return "?";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Proved: return "proved";
    case Verdict::NoProof: return "no-proof";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

VerdictReport verdict_of(const Program& program, const SearchResult& r) {
  if (r.outcome == Outcome::Found) return {Verdict::Proved, ""};
  if (r.outcome == Outcome::DepthExceeded) return {Verdict::Inconclusive, r.diagnostic};
  for (const auto& n : program.notes)
    if (n.rfind("limitation", 0) == 0) return {Verdict::Inconclusive, n};
  return {Verdict::NoProof, r.diagnostic};
}

Signature sequent_signature(const Program& program, const Sequent& s) {
  Signature sig = program.sig;
  for (const auto& [n, t] : s.eigen) sig.add(n, t);
  return sig;
}

size_t proof_size(const ProofTree& t) {
  size_t n = 1;
  for (const auto& c : t->children) n += proof_size(c);
  return n;
}

size_t proof_depth(const ProofTree& t) {
  size_t d = 0;
  for (const auto& c : t->children) d = std::max(d, proof_depth(c));
  return d + 1;
}

std::vector<ProofTree> proof_leaves(const ProofTree& t) {
  if (t->children.empty()) return {t};
  std::vector<ProofTree> out;
  for (const auto& c : t->children) {
    auto l = proof_leaves(c);
    out.insert(out.end(), l.begin(), l.end());
  }
  return out;
}

namespace {

bool same_formula(const Formula& a, const Formula& b) {
  if (!a || !b) return !a && !b;
  return formula_alpha_eq(formula_beta_normalize(a), formula_beta_normalize(b));
}

bool same_term(const Term& a, const Term& b) {
  if (!a || !b) return !a && !b;
  return alpha_eq(beta_normalize(a), beta_normalize(b));
}

bool same_context(const Context& a, const Context& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first || !type_eq(a[i].second, b[i].second)) return false;
  return true;
}

bool same_additions(const std::vector<ProgramEntry>& a, const std::vector<ProgramEntry>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].role != b[i].role || !same_formula(a[i].formula, b[i].formula)) return false;
  return true;
}

// Empty when equal, otherwise the first differing component.
std::string sequent_difference(const Sequent& a, const Sequent& b) {
  if (!same_context(a.eigen, b.eigen)) return "signature additions";
  if (!same_additions(a.additions, b.additions)) return "program additions";
  if (!same_formula(a.focus, b.focus)) return "focus";
  if (!same_formula(a.goal, b.goal)) return "goal";
  if (a.mode != b.mode) return "guardedness";
  return "";
}

TypePtr binder_type(const Formula& f) { return f->type ? f->type : Type::iota(); }

Formula instance(const Formula& quantified, const Term& n) {
  return formula_beta_normalize(formula_substitute(quantified->left, quantified->var, n));
}

// Predicate names that a focused clause can end in; "" for a flexible head.
void head_predicates(const Formula& d, std::set<std::string>& out) {
  switch (d->kind) {
    case FormulaKind::Atom: {
      Term h = spine(d->atom).first;
      out.insert(h->kind == TermKind::Const ? h->name : "");
      return;
    }
    case FormulaKind::Conj:
      head_predicates(d->left, out);
      head_predicates(d->right, out);
      return;
    case FormulaKind::Impl: head_predicates(d->right, out); return;
    case FormulaKind::Forall: head_predicates(d->left, out); return;
    default: return;
  }
}

}  // namespace

bool proof_equal(const ProofTree& a, const ProofTree& b) {
  if (a->rule != b->rule || !sequent_difference(a->sequent, b->sequent).empty()) return false;
  if (!same_term(a->witness, b->witness)) return false;
  if (a->children.size() != b->children.size()) return false;
  for (size_t i = 0; i < a->children.size(); ++i)
    if (!proof_equal(a->children[i], b->children[i])) return false;
  return true;
}

std::string proof_outline(const Program& p, const ProofTree& t) {
  std::ostringstream os;
  std::function<void(const ProofTree&, int)> walk = [&](const ProofTree& n, int ind) {
    os << std::string(ind * 2, ' ') << n->rule << "  ";
    if (n->sequent.focus) os << "[" << pretty_formula(p, n->sequent.focus) << "] ";
    os << (n->sequent.mode == GoalMode::Guarded ? "<" : "")
       << pretty_formula(p, n->sequent.goal)
       << (n->sequent.mode == GoalMode::Guarded ? ">" : "");
    if (n->witness) os << "  with " << pretty_term(p, n->witness);
    if (!n->eigenvariable.empty()) os << "  new " << n->eigenvariable;
    os << "\n";
    for (const auto& c : n->children) walk(c, ind + 1);
  };
  walk(t, 0);
  return os.str();
}

bool LemmaStore::contains(const Formula& f) const {
  for (const auto& l : lemmas_)
    if (same_formula(l.formula, f)) return true;
  return false;
}

//------------------------------------------------------------------------------
// First-order unification

namespace {

Term walk_subst(const Term& t, const Substitution& s) {
  Term cur = t;
  while (cur->kind == TermKind::Var) {
    auto it = s.find(cur->name);
    if (it == s.end()) break;
    cur = it->second;
  }
  return cur;
}

Term resolve_subst(const Term& t, const Substitution& s) {
  Term w = walk_subst(t, s);
  if (w->kind == TermKind::App) return mk_app(resolve_subst(w->left, s), resolve_subst(w->right, s));
  return w;
}

bool fo_occurs(const std::string& x, const Term& t, const Substitution& s) {
  Term w = walk_subst(t, s);
  if (w->kind == TermKind::Var) return w->name == x;
  if (w->kind == TermKind::App) return fo_occurs(x, w->left, s) || fo_occurs(x, w->right, s);
  return false;
}

bool fo_unify(const Term& a, const Term& b, Substitution& s) {
  Term x = walk_subst(a, s), y = walk_subst(b, s);
  if (x->kind == TermKind::Var && y->kind == TermKind::Var && x->name == y->name) return true;
  if (x->kind == TermKind::Var) {
    if (fo_occurs(x->name, y, s)) return false;
    s[x->name] = y;
    return true;
  }
  if (y->kind == TermKind::Var) return fo_unify(y, x, s);
  if (x->kind == TermKind::Const && y->kind == TermKind::Const) return x->name == y->name;
  if (x->kind == TermKind::App && y->kind == TermKind::App)
    return fo_unify(x->left, y->left, s) && fo_unify(x->right, y->right, s);
  return alpha_eq(x, y);
}

}  // namespace

std::optional<Substitution> unify_first_order(const Term& a, const Term& b) {
  Substitution s;
  if (!fo_unify(a, b, s)) return std::nullopt;
  Substitution out;
  for (const auto& [x, t] : s) out[x] = resolve_subst(t, s);
  return out;
}

//------------------------------------------------------------------------------
// Search

namespace {

bool is_meta_name(const std::string& n) { return !n.empty() && n[0] == '?'; }
bool is_eigen_name(const std::string& n) { return n.size() > 2 && n[0] == '_' && n[1] == '_'; }

class Engine {
 public:
  using Cont = std::function<bool(const ProofTree&)>;

  Engine(const Program& p, const SearchConfig& cfg) : prog_(p), cfg_(cfg), sig_(p.sig) {}

  Signature& sig() { return sig_; }
  const SearchConfig& cfg() const { return cfg_; }
  size_t nodes() const { return nodes_; }
  int max_depth() const { return max_depth_; }
  bool cutoff() const { return cutoff_; }
  bool budget_hit() const { return budget_hit_; }
  void reset_round() {
    cutoff_ = false;
    eigen_ = NameSupply("__");
  }

  Term new_meta(const TypePtr& type, const Context& eigen) {
    Meta m;
    m.type = type;
    for (const auto& e : eigen) m.scope.insert(e.first);
    metas_.push_back(std::move(m));
    return mk_var("?" + std::to_string(metas_.size() - 1));
  }

  size_t mark() const { return trail_.size(); }

  void undo(size_t mark) {
    while (trail_.size() > mark) {
      Trail& e = trail_.back();
      metas_[e.id].binding = e.binding;
      metas_[e.id].scope = std::move(e.scope);
      trail_.pop_back();
    }
  }

  Term instantiate(const Term& t) const {
    switch (t->kind) {
      case TermKind::Var: {
        if (!is_meta_name(t->name)) return t;
        const Meta& m = meta(t);
        return m.binding ? instantiate(m.binding) : t;
      }
      case TermKind::Const: return t;
      case TermKind::App: {
        Term l = instantiate(t->left), r = instantiate(t->right);
        return (l == t->left && r == t->right) ? t : mk_app(l, r);
      }
      case TermKind::Abs:
      case TermKind::Fix: {
        Term b = instantiate(t->left);
        if (b == t->left) return t;
        return t->kind == TermKind::Abs ? mk_abs(t->name, t->type, b) : mk_fix(b);
      }
    }
    return t;
  }

  Formula instantiate(const Formula& f) const {
    if (!f) return f;
    switch (f->kind) {
      case FormulaKind::Atom: return f_atom(instantiate(f->atom));
      case FormulaKind::Top: return f;
      case FormulaKind::Conj: return f_and(instantiate(f->left), instantiate(f->right));
      case FormulaKind::Disj: return f_or(instantiate(f->left), instantiate(f->right));
      case FormulaKind::Impl: return f_imp(instantiate(f->left), instantiate(f->right));
      case FormulaKind::Forall: return f_forall(f->var, f->type, instantiate(f->left));
      case FormulaKind::Exists: return f_exists(f->var, f->type, instantiate(f->left));
    }
    return f;
  }

  Sequent instantiate(const Sequent& s) const {
    Sequent o = s;
    for (auto& a : o.additions) a.formula = instantiate(a.formula);
    o.focus = instantiate(s.focus);
    o.goal = instantiate(s.goal);
    return o;
  }

  ProofTree instantiate(const ProofTree& t) const {
    auto n = std::make_shared<ProofNode>(*t);
    n->sequent = instantiate(t->sequent);
    if (n->witness) n->witness = instantiate(n->witness);
    for (auto& c : n->children) c = instantiate(c);
    return n;
  }

  void unbound_metas(const Term& t, std::vector<std::string>& out) const {
    for (const auto& v : free_vars(instantiate(t)))
      if (is_meta_name(v) && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }

  void unbound_metas(const ProofTree& t, std::vector<std::string>& out) const {
    if (t->witness) unbound_metas(t->witness, out);
    if (t->sequent.goal) unbound_metas(formula_to_term(t->sequent.goal), out);
    if (t->sequent.focus) unbound_metas(formula_to_term(t->sequent.focus), out);
    for (const auto& c : t->children) unbound_metas(c, out);
  }

  // Closed default for a witness nobody constrained.
  bool default_bind(const std::string& name) {
    Meta& m = metas_[std::stoul(name.substr(1))];
    for (const auto& c : prog_.sig.declared())
      if (type_eq(prog_.sig.type_of(c), m.type)) return bind(mk_var(name), mk_const(c));
    for (const auto& c : m.scope)
      if (type_eq(sig_.type_of(c), m.type)) return bind(mk_var(name), mk_const(c));
    return false;
  }

  bool unify(const Term& a0, const Term& b0, int budget) {
    Term a = deref(a0), b = deref(b0);
    if (a->kind == TermKind::Var && is_meta_name(a->name)) {
      if (b->kind == TermKind::Var && b->name == a->name) return true;
      return bind(a, b);
    }
    if (b->kind == TermKind::Var && is_meta_name(b->name)) return bind(b, a);
    auto [ha, xa] = spine(a);
    auto [hb, xb] = spine(b);
    bool fa = ha->kind == TermKind::Fix, fb = hb->kind == TermKind::Fix;
    if (fa || fb) {
      Term ia = instantiate(a), ib = instantiate(b);
      if (fa && fb && alpha_eq(ia, ib)) return true;
      if (budget <= 0) return false;
      return unify(fa ? fixbeta_unfold(ia) : ia, fb ? fixbeta_unfold(ib) : ib, budget - 1);
    }
    if (a->kind == TermKind::Abs || b->kind == TermKind::Abs)
      return fixbeta_equiv(instantiate(a), instantiate(b), budget) == Equiv::Equal;
    if (ha->kind == TermKind::Var && is_meta_name(ha->name))
      throw Error(ErrorKind::FlexibleAtomUnsupported,
                  "cannot unify a flexible term " + term_to_string(instantiate(a)));
    if (hb->kind == TermKind::Var && is_meta_name(hb->name))
      throw Error(ErrorKind::FlexibleAtomUnsupported,
                  "cannot unify a flexible term " + term_to_string(instantiate(b)));
    if (ha->kind != hb->kind || ha->name != hb->name || xa.size() != xb.size()) return false;
    for (size_t i = 0; i < xa.size(); ++i)
      if (!unify(xa[i], xb[i], budget)) return false;
    return true;
  }

  // Node accounting; false once the depth or node budget is spent.
  bool tick(int depth, int level) {
    if (depth <= 0) {
      cutoff_ = true;
      return false;
    }
    if (cfg_.node_budget && nodes_ >= cfg_.node_budget) {
      budget_hit_ = true;
      cutoff_ = true;
      return false;
    }
    ++nodes_;
    max_depth_ = std::max(max_depth_, level);
    return true;
  }

  ProofTree node(const char* rule, const Sequent& s, std::vector<ProofTree> kids,
                 Term witness = nullptr, std::string eigen = "") {
    auto n = std::make_shared<ProofNode>();
    n->rule = rule;
    n->sequent = s;
    n->witness = std::move(witness);
    n->eigenvariable = std::move(eigen);
    n->children = std::move(kids);
    return n;
  }

  bool goal(const Sequent& s, int depth, int level, const Cont& k) {
    if (!tick(depth, level)) return false;
    const Formula& g = s.goal;
    bool guarded = s.mode == GoalMode::Guarded;
    int d = depth - 1, l = level + 1;
    switch (g->kind) {
      case FormulaKind::Top:
        if (guarded) return false;
        return k(node(rules::kTopR, s, {}));
      case FormulaKind::Conj: {
        Sequent c1 = s, c2 = s;
        c1.goal = g->left;
        c2.goal = g->right;
        const char* rule = guarded ? rules::kAndRG : rules::kAndR;
        return goal(c1, d, l, [&](const ProofTree& p1) {
          return goal(c2, d, l, [&](const ProofTree& p2) { return k(node(rule, s, {p1, p2})); });
        });
      }
      case FormulaKind::Disj: {
        if (guarded) return false;
        for (const Formula& side : {g->left, g->right}) {
          Sequent c = s;
          c.goal = side;
          if (goal(c, d, l, [&](const ProofTree& p) { return k(node(rules::kOrR, s, {p})); }))
            return true;
        }
        return false;
      }
      case FormulaKind::Exists: {
        if (guarded) return false;
        Term m = new_meta(binder_type(g), s.eigen);
        Sequent c = s;
        c.goal = instance(g, m);
        return goal(c, d, l,
                    [&](const ProofTree& p) { return k(node(rules::kExistsR, s, {p}, m)); });
      }
      case FormulaKind::Forall: {
        std::string e = eigen_.fresh(g->var);
        sig_.add(e, binder_type(g));
        Sequent c = s;
        c.eigen.emplace_back(e, binder_type(g));
        c.goal = instance(g, mk_const(e));
        const char* rule = guarded ? rules::kForallRG : rules::kForallR;
        return goal(c, d, l,
                    [&](const ProofTree& p) { return k(node(rule, s, {p}, nullptr, e)); });
      }
      case FormulaKind::Impl: {
        Sequent c = s;
        c.additions.push_back({ClauseRole::Hypothesis, g->left});
        c.goal = g->right;
        const char* rule = guarded ? rules::kImpRG : rules::kImpR;
        return goal(c, d, l, [&](const ProofTree& p) { return k(node(rule, s, {p})); });
      }
      case FormulaKind::Atom: return decide(s, d, l, k);
    }
    return false;
  }

  bool decide(const Sequent& s, int d, int l, const Cont& k) {
    Term a = instantiate(s.goal->atom);
    Term h = spine(a).first;
    if (h->kind != TermKind::Const)
      throw Error(ErrorKind::FlexibleAtomUnsupported,
                  "goal " + term_to_string(a) + " has a flexible head");
    bool guarded = s.mode == GoalMode::Guarded;
    std::vector<Formula> cands(prog_.clauses.begin(), prog_.clauses.end());
    if (!guarded) {
      for (ClauseRole r : {ClauseRole::Lemma, ClauseRole::Hypothesis,
                           ClauseRole::CoinductiveHypothesis})
        for (const auto& e : s.additions)
          if (e.role == r) cands.push_back(e.formula);
    }
    const char* rule = guarded ? rules::kDecideG : rules::kDecide;
    for (const Formula& dcl : cands) {
      std::set<std::string> heads;
      head_predicates(dcl, heads);
      if (!heads.count(h->name) && !heads.count("")) continue;
      Sequent c = s;
      c.focus = dcl;
      if (focus(c, d, l, [&](const ProofTree& p) { return k(node(rule, s, {p})); })) return true;
    }
    return false;
  }

  bool focus(const Sequent& s, int depth, int level, const Cont& k) {
    if (!tick(depth, level)) return false;
    const Formula& f = s.focus;
    bool guarded = s.mode == GoalMode::Guarded;
    int d = depth - 1, l = level + 1;
    switch (f->kind) {
      case FormulaKind::Atom: {
        if (s.goal->kind != FormulaKind::Atom) return false;
        size_t m = mark();
        int budget = is_first_order_calculus(cfg_.calculus) ? 0 : cfg_.fixbeta_bound;
        if (unify(f->atom, s.goal->atom, budget)) {
          if (k(node(guarded ? rules::kInitialG : rules::kInitial, s, {}))) return true;
        }
        undo(m);
        return false;
      }
      case FormulaKind::Conj: {
        const char* rule = guarded ? rules::kAndLG : rules::kAndL;
        for (const Formula& side : {f->left, f->right}) {
          std::set<std::string> heads;
          head_predicates(side, heads);
          Term h = spine(instantiate(s.goal->atom)).first;
          if (!heads.count(h->name) && !heads.count("")) continue;
          Sequent c = s;
          c.focus = side;
          if (focus(c, d, l, [&](const ProofTree& p) { return k(node(rule, s, {p})); }))
            return true;
        }
        return false;
      }
      case FormulaKind::Impl: {
        Sequent c1 = s, c2 = s;
        c1.focus = f->right;
        c1.mode = GoalMode::Plain;
        c2.focus = nullptr;
        c2.goal = f->left;
        c2.mode = GoalMode::Plain;
        const char* rule = guarded ? rules::kImpLG : rules::kImpL;
        return focus(c1, d, l, [&](const ProofTree& p1) {
          return goal(c2, d, l, [&](const ProofTree& p2) { return k(node(rule, s, {p1, p2})); });
        });
      }
      case FormulaKind::Forall: {
        Term m = new_meta(binder_type(f), s.eigen);
        Sequent c = s;
        c.focus = instance(f, m);
        const char* rule = guarded ? rules::kForallLG : rules::kForallL;
        return focus(c, d, l, [&](const ProofTree& p) { return k(node(rule, s, {p}, m)); });
      }
      default: return false;
    }
  }

 private:
  struct Meta {
    TypePtr type;
    std::set<std::string> scope;
    Term binding;
  };
  struct Trail {
    size_t id;
    Term binding;
    std::set<std::string> scope;
  };

  const Meta& meta(const Term& v) const { return metas_[std::stoul(v->name.substr(1))]; }

  Term deref(Term t) const {
    while (t->kind == TermKind::Var && is_meta_name(t->name)) {
      const Meta& m = meta(t);
      if (!m.binding) break;
      t = m.binding;
    }
    return t;
  }

  bool bind(const Term& v, const Term& t) {
    size_t id = std::stoul(v->name.substr(1));
    Term ti = instantiate(t);
    auto fv = free_vars(ti);
    if (fv.count(v->name)) return false;
    Context ctx;
    for (const auto& x : fv) {
      if (!is_meta_name(x)) return false;
      ctx.emplace_back(x, meta(mk_var(x)).type);
    }
    for (const auto& c : constants_of(ti))
      if (is_eigen_name(c) && !metas_[id].scope.count(c)) return false;
    bool ok;
    if (is_first_order_calculus(cfg_.calculus)) {
      ok = !has_fix(ti) && first_order(sig_, ctx, ti);
    } else if (type_eq(metas_[id].type, Type::iota())) {
      ok = first_order(sig_, ctx, ti) || is_guarded_full(sig_, ctx, ti);
    } else {
      ok = in_universe(ti, cfg_.calculus == Calculus::HOHC ? 1 : 2);
    }
    if (!ok) return false;
    for (const auto& x : fv) {
      size_t j = std::stoul(x.substr(1));
      std::set<std::string> narrowed;
      for (const auto& c : metas_[j].scope)
        if (metas_[id].scope.count(c)) narrowed.insert(c);
      if (narrowed.size() != metas_[j].scope.size()) {
        trail_.push_back({j, metas_[j].binding, metas_[j].scope});
        metas_[j].scope = std::move(narrowed);
      }
    }
    trail_.push_back({id, metas_[id].binding, metas_[id].scope});
    metas_[id].binding = ti;
    return true;
  }

  const Program& prog_;
  SearchConfig cfg_;
  Signature sig_;
  NameSupply eigen_{"__"};
  std::vector<Meta> metas_;
  std::vector<Trail> trail_;
  size_t nodes_ = 0;
  int max_depth_ = 0;
  bool cutoff_ = false;
  bool budget_hit_ = false;
};

void require_program_in(const Program& program, Calculus c) {
  for (size_t i = 0; i < program.clauses.size(); ++i)
    if (!in_calculus(program.sig, program.clauses[i], Role::Clause, c))
      throw Error(ErrorKind::NotInCalculus,
                  "clause " + std::to_string(i + 1) + " is not a program clause of " +
                      calculus_name(c));
}

SearchResult run_search(const Program& program, const Sequent& root, const SearchConfig& cfg,
                        bool cofix) {
  Engine eng(program, cfg);
  SearchResult res;
  ProofTree found;
  auto finish = [&](const ProofTree& p) {
    size_t m = eng.mark();
    std::vector<std::string> open;
    eng.unbound_metas(p, open);
    for (const auto& v : open)
      if (!eng.default_bind(v)) {
        eng.undo(m);
        return false;
      }
    found = eng.instantiate(p);
    return true;
  };
  int limit = std::max(1, cfg.depth_limit);
  for (int d = 1; d <= limit; ++d) {
    eng.reset_round();
    res.stats.depth_reached = d;
    bool ok;
    if (cofix) {
      Sequent child = root;
      child.additions.push_back({ClauseRole::CoinductiveHypothesis, root.goal});
      child.mode = GoalMode::Guarded;
      ok = eng.goal(child, d - 1, 1, [&](const ProofTree& p) {
        return finish(eng.node(rules::kCoFix, root, {p}));
      });
    } else {
      ok = eng.goal(root, d, 0, finish);
    }
    if (ok) {
      res.outcome = Outcome::Found;
      res.proof = found;
      res.diagnostic.clear();
      break;
    }
    if (!eng.cutoff()) {
      res.outcome = Outcome::Failed;
      res.diagnostic = "the search space is exhausted";
      break;
    }
    if (eng.budget_hit()) {
      res.outcome = Outcome::DepthExceeded;
      res.diagnostic = "node budget of " + std::to_string(cfg.node_budget) + " exhausted";
      break;
    }
    res.outcome = Outcome::DepthExceeded;
    res.diagnostic = "no proof within depth " + std::to_string(limit);
  }
  res.stats.nodes = eng.nodes();
  res.stats.max_depth = eng.max_depth();
  return res;
}

std::vector<ProgramEntry> lemma_entries(const LemmaStore& lemmas) {
  std::vector<ProgramEntry> out;
  for (const auto& l : lemmas.lemmas()) out.push_back({ClauseRole::Lemma, l.formula});
  return out;
}

}  // namespace

SearchResult coprove(const Program& program, const Formula& m, const SearchConfig& cfg,
                     const LemmaStore& lemmas) {
  if (!formula_free_vars(m).empty() || !in_calculus(program.sig, m, Role::Core, cfg.calculus))
    throw Error(ErrorKind::NotCoreFormula,
                pretty_formula(program, m) + " is not a closed core formula of " +
                    calculus_name(cfg.calculus));
  require_program_in(program, cfg.calculus);
  Sequent root;
  root.additions = lemma_entries(lemmas);
  root.goal = m;
  root.mode = GoalMode::Coinductive;
  return run_search(program, root, cfg, true);
}

SearchResult prove(const Program& program, const LemmaStore& lemmas, const Formula& g,
                   const SearchConfig& cfg) {
  if (!formula_free_vars(g).empty() || !in_calculus(program.sig, g, Role::Goal, cfg.calculus))
    throw Error(ErrorKind::NotInCalculus,
                pretty_formula(program, g) + " is not a closed goal of " +
                    calculus_name(cfg.calculus));
  require_program_in(program, cfg.calculus);
  Sequent root;
  root.additions = lemma_entries(lemmas);
  root.goal = g;
  return run_search(program, root, cfg, false);
}

//------------------------------------------------------------------------------
// Witness pools

std::vector<Term> witness_pool(const Program& program, const Sequent& seq,
                               const SearchConfig& cfg, const TypePtr& type) {
  Signature sig = sequent_signature(program, seq);
  std::vector<Term> out;
  std::set<std::string> seen;
  auto offer = [&](const Term& t0) {
    Term t = beta_normalize(t0);
    if (!free_vars(t).empty()) return;
    TypePtr ty;
    try {
      ty = typecheck(sig, {}, t);
    } catch (const Error&) {
      return;
    }
    if (!type_eq(ty, type) || !witness_allowed(sig, {}, t, cfg.calculus)) return;
    if (!is_first_order_calculus(cfg.calculus) && type_eq(type, Type::iota()) &&
        !first_order(sig, {}, t) && !is_guarded_full(sig, {}, t))
      return;
    if (seen.insert(alpha_key(t)).second) out.push_back(t);
  };

  // Unifier-produced witnesses.
  Engine eng(program, cfg);
  for (const auto& [n, t] : seq.eigen) eng.sig().add(n, t);
  int budget = is_first_order_calculus(cfg.calculus) ? 0 : cfg.fixbeta_bound;
  auto heads = [](const Formula& d, auto&& self, std::vector<Formula>& out) -> void {
    if (d->kind == FormulaKind::Atom) out.push_back(d);
    if (d->kind == FormulaKind::Conj) {
      self(d->left, self, out);
      self(d->right, self, out);
    }
    if (d->kind == FormulaKind::Impl) self(d->right, self, out);
  };
  auto strip = [&](Formula d, std::vector<Term>& ms) {
    while (d->kind == FormulaKind::Forall) {
      Term m = eng.new_meta(binder_type(d), seq.eigen);
      ms.push_back(m);
      d = instance(d, m);
    }
    return d;
  };
  auto harvest = [&](const std::vector<Term>& ms, const Term& x, const Term& y) {
    size_t mk = eng.mark();
    try {
      if (eng.unify(x, y, budget))
        for (const auto& m : ms) offer(eng.instantiate(m));
    } catch (const Error&) {
    }
    eng.undo(mk);
  };
  if (seq.focus && seq.goal->kind == FormulaKind::Atom) {
    std::vector<Term> ms;
    Formula body = strip(seq.focus, ms);
    std::vector<Formula> hs;
    heads(body, heads, hs);
    for (const auto& h : hs) harvest(ms, h->atom, seq.goal->atom);
  } else if (seq.goal->kind == FormulaKind::Exists) {
    Term x = eng.new_meta(binder_type(seq.goal), seq.eigen);
    Formula g = instance(seq.goal, x);
    std::vector<Formula> cls(program.clauses.begin(), program.clauses.end());
    for (const auto& e : seq.additions) cls.push_back(e.formula);
    for (const auto& a : formula_atoms(g))
      for (const auto& c : cls) {
        std::vector<Term> ms;
        Formula body = strip(c, ms);
        std::vector<Formula> hs;
        heads(body, heads, hs);
        for (const auto& h : hs) harvest({x}, h->atom, a);
      }
  }

  // Subterms of the goal and the coinductive hypotheses.
  std::vector<Term> sources{formula_to_term(seq.goal)};
  for (const auto& e : seq.additions)
    if (e.role == ClauseRole::CoinductiveHypothesis) sources.push_back(formula_to_term(e.formula));
  std::vector<Term> base;
  for (const auto& src : sources)
    for (const auto& t : subterms(src)) {
      if (!free_vars(t).empty() || is_logical_constant(spine(t).first->name)) continue;
      size_t before = out.size();
      offer(t);
      if (out.size() > before && first_order(sig, {}, t)) base.push_back(t);
    }
  for (const auto& c : sig.declared())
    if (type_eq(sig.type_of(c), Type::iota())) base.push_back(mk_const(c));
  for (const auto& [n, t] : seq.eigen)
    if (type_eq(t, Type::iota())) base.push_back(mk_const(n));

  // Definitions applied to first-order pool terms.
  if (!is_first_order_calculus(cfg.calculus) && type_eq(type, Type::iota())) {
    for (const auto& name : program.def_order) {
      const Term& fx = program.defs.at(name);
      TypePtr ft = typecheck(program.sig, {}, fx);
      auto [args, res] = uncurry(ft);
      if (!type_eq(res, Type::iota())) continue;
      bool all_iota = std::all_of(args.begin(), args.end(),
                                  [](const TypePtr& a) { return type_eq(a, Type::iota()); });
      if (!all_iota) continue;
      std::vector<size_t> idx(args.size(), 0);
      int made = 0;
      while (made < cfg.pool_limit) {
        if (!args.empty() && base.empty()) break;
        std::vector<Term> xs;
        for (size_t i : idx) xs.push_back(base[i]);
        offer(mk_app(fx, xs));
        ++made;
        size_t k = 0;
        while (k < idx.size() && ++idx[k] == base.size()) idx[k++] = 0;
        if (k == idx.size()) break;
      }
    }
  }
  for (const auto& b : base) offer(b);
  return out;
}

//------------------------------------------------------------------------------
// Checking

namespace {

class Checker {
 public:
  Checker(const Program& p, Calculus c, const LemmaStore& lemmas, int bound)
      : p_(p), c_(c), lemmas_(lemmas), bound_(bound) {}

  std::string run(const ProofTree& t) {
    for (size_t i = 0; i < p_.clauses.size(); ++i)
      if (!in_calculus(p_.sig, p_.clauses[i], Role::Clause, c_))
        return "program clause " + std::to_string(i + 1) + " is not in " + calculus_name(c_);
    return node(t, "root", true);
  }

 private:
  std::string formula_ok(const Signature& sig, const Formula& f, Role role) {
    if (!formula_free_vars(f).empty()) return "has free variables";
    try {
      annotate_formula(sig, {}, f);
    } catch (const Error& e) {
      return std::string("is ill-typed: ") + e.what();
    }
    if (!in_calculus(sig, f, role, c_))
      return std::string("is not a ") + role_name(role) + " formula of " + calculus_name(c_);
    return "";
  }

  std::string witness_ok(const Signature& sig, const Term& n, const TypePtr& ty) {
    if (!n) return "missing witness";
    if (!free_vars(n).empty()) return "witness has free variables";
    try {
      if (!type_eq(typecheck(sig, {}, n), ty)) return "witness has the wrong type";
    } catch (const Error& e) {
      return std::string("witness is ill-typed: ") + e.what();
    }
    if (!witness_allowed(sig, {}, n, c_)) return "witness violates the term restriction";
    return "";
  }

  std::string node(const ProofTree& t, const std::string& path, bool root) {
    auto fail = [&](const std::string& msg) { return path + " (" + t->rule + "): " + msg; };
    const Sequent& s = t->sequent;
    if (!s.goal) return fail("missing goal");

    static const std::map<std::string, std::pair<GoalMode, bool>> table = {
        {rules::kCoFix, {GoalMode::Coinductive, false}},
        {rules::kTopR, {GoalMode::Plain, false}},
        {rules::kAndR, {GoalMode::Plain, false}},
        {rules::kOrR, {GoalMode::Plain, false}},
        {rules::kExistsR, {GoalMode::Plain, false}},
        {rules::kForallR, {GoalMode::Plain, false}},
        {rules::kImpR, {GoalMode::Plain, false}},
        {rules::kDecide, {GoalMode::Plain, false}},
        {rules::kAndRG, {GoalMode::Guarded, false}},
        {rules::kForallRG, {GoalMode::Guarded, false}},
        {rules::kImpRG, {GoalMode::Guarded, false}},
        {rules::kDecideG, {GoalMode::Guarded, false}},
        {rules::kInitial, {GoalMode::Plain, true}},
        {rules::kImpL, {GoalMode::Plain, true}},
        {rules::kAndL, {GoalMode::Plain, true}},
        {rules::kForallL, {GoalMode::Plain, true}},
        {rules::kInitialG, {GoalMode::Guarded, true}},
        {rules::kImpLG, {GoalMode::Guarded, true}},
        {rules::kAndLG, {GoalMode::Guarded, true}},
        {rules::kForallLG, {GoalMode::Guarded, true}},
    };
    auto row = table.find(t->rule);
    if (row == table.end()) return fail("unknown rule");
    if (row->second.first != s.mode) return fail("sequent has the wrong guardedness");
    if (row->second.second != static_cast<bool>(s.focus))
      return fail(s.focus ? "unexpected focus" : "missing focus");
    if (s.mode == GoalMode::Coinductive && !root) return fail("co-fix away from the root");

    std::set<std::string> names;
    for (const auto& [n, ty] : s.eigen) {
      if (!names.insert(n).second) return fail("eigenvariable " + n + " introduced twice");
      if (p_.sig.has(n) || p_.defs.count(n)) return fail("eigenvariable " + n + " is not fresh");
    }
    Signature sig = sequent_signature(p_, s);
    if (auto e = formula_ok(sig, s.goal, s.mode == GoalMode::Coinductive ? Role::Core : Role::Goal);
        !e.empty())
      return fail("goal " + e);
    if (s.focus)
      if (auto e = formula_ok(sig, s.focus, Role::Clause); !e.empty()) return fail("focus " + e);
    for (const auto& a : s.additions) {
      Role r = a.role == ClauseRole::CoinductiveHypothesis ? Role::Core : Role::Clause;
      if (auto e = formula_ok(sig, a.formula, r); !e.empty())
        return fail(std::string(role_tag(a.role)) + " " + e);
      if (a.role == ClauseRole::Lemma && !lemmas_.contains(a.formula))
        return fail("lemma " + pretty_formula(p_, a.formula) + " is not in the lemma store");
    }

    std::vector<Sequent> expect;
    std::string err = expected(t, sig, expect);
    if (!err.empty()) return fail(err);
    if (expect.size() != t->children.size())
      return fail("expected " + std::to_string(expect.size()) + " premises, found " +
                  std::to_string(t->children.size()));
    for (size_t i = 0; i < expect.size(); ++i) {
      std::string d = sequent_difference(expect[i], t->children[i]->sequent);
      if (!d.empty()) return fail("premise " + std::to_string(i) + " has the wrong " + d);
    }
    for (size_t i = 0; i < t->children.size(); ++i) {
      std::string r = node(t->children[i], path + "." + std::to_string(i), false);
      if (!r.empty()) return r;
    }
    return "";
  }

  // Premises the rule demands, or an error.
  std::string expected(const ProofTree& t, const Signature& sig, std::vector<Sequent>& out) {
    const Sequent& s = t->sequent;
    const std::string& r = t->rule;
    const Formula& g = s.goal;
    const Formula& f = s.focus;
    auto with_goal = [&](const Formula& ng) {
      Sequent c = s;
      c.goal = ng;
      return c;
    };
    auto with_focus = [&](const Formula& nf) {
      Sequent c = s;
      c.focus = nf;
      return c;
    };
    if (r == rules::kCoFix) {
      Sequent c = s;
      c.additions.push_back({ClauseRole::CoinductiveHypothesis, g});
      c.mode = GoalMode::Guarded;
      out.push_back(c);
      return "";
    }
    if (r == rules::kTopR) return g->kind == FormulaKind::Top ? "" : "goal is not top";
    if (r == rules::kAndR || r == rules::kAndRG) {
      if (g->kind != FormulaKind::Conj) return "goal is not a conjunction";
      out.push_back(with_goal(g->left));
      out.push_back(with_goal(g->right));
      return "";
    }
    if (r == rules::kOrR) {
      if (g->kind != FormulaKind::Disj) return "goal is not a disjunction";
      if (t->children.size() != 1) return "expected one premise";
      const Formula& cg = t->children[0]->sequent.goal;
      out.push_back(with_goal(same_formula(cg, g->right) ? g->right : g->left));
      return "";
    }
    if (r == rules::kExistsR) {
      if (g->kind != FormulaKind::Exists) return "goal is not existential";
      if (auto e = witness_ok(sig, t->witness, binder_type(g)); !e.empty()) return e;
      out.push_back(with_goal(instance(g, t->witness)));
      return "";
    }
    if (r == rules::kForallR || r == rules::kForallRG) {
      if (g->kind != FormulaKind::Forall) return "goal is not universal";
      if (t->children.size() != 1) return "expected one premise";
      const Context& ce = t->children[0]->sequent.eigen;
      if (ce.size() != s.eigen.size() + 1) return "premise must add one eigenvariable";
      const auto& [c, cty] = ce.back();
      if (sig.has(c) || p_.defs.count(c)) return "eigenvariable " + c + " is not fresh";
      if (!t->eigenvariable.empty() && t->eigenvariable != c)
        return "eigenvariable " + t->eigenvariable + " differs from the premise's " + c;
      if (!type_eq(cty, binder_type(g))) return "eigenvariable has the wrong type";
      Sequent n = s;
      n.eigen.emplace_back(c, cty);
      n.goal = instance(g, mk_const(c));
      out.push_back(n);
      return "";
    }
    if (r == rules::kImpR || r == rules::kImpRG) {
      if (g->kind != FormulaKind::Impl) return "goal is not an implication";
      Sequent n = with_goal(g->right);
      n.additions.push_back({ClauseRole::Hypothesis, g->left});
      out.push_back(n);
      return "";
    }
    if (r == rules::kDecide || r == rules::kDecideG) {
      if (g->kind != FormulaKind::Atom) return "goal is not an atom";
      if (t->children.size() != 1) return "expected one premise";
      const Formula& d = t->children[0]->sequent.focus;
      if (!d) return "premise has no focus";
      bool known = std::any_of(p_.clauses.begin(), p_.clauses.end(),
                               [&](const Formula& c) { return same_formula(c, d); });
      if (!known && r == rules::kDecide)
        known = std::any_of(s.additions.begin(), s.additions.end(),
                            [&](const ProgramEntry& e) { return same_formula(e.formula, d); });
      if (!known)
        return r == rules::kDecideG ? "guarded decide must select an original program clause"
                                    : "selected clause is not in the program";
      out.push_back(with_focus(d));
      return "";
    }
    if (r == rules::kInitial || r == rules::kInitialG) {
      if (f->kind != FormulaKind::Atom || g->kind != FormulaKind::Atom)
        return "initial needs atomic focus and goal";
      bool ok = is_first_order_calculus(c_)
                    ? same_term(f->atom, g->atom)
                    : fixbeta_equiv(f->atom, g->atom, bound_) == Equiv::Equal;
      return ok ? "" : "focus and goal atoms differ";
    }
    if (r == rules::kImpL || r == rules::kImpLG) {
      if (f->kind != FormulaKind::Impl) return "focus is not an implication";
      Sequent a = with_focus(f->right), b = with_goal(f->left);
      a.mode = b.mode = GoalMode::Plain;
      b.focus = nullptr;
      out.push_back(a);
      out.push_back(b);
      return "";
    }
    if (r == rules::kAndL || r == rules::kAndLG) {
      if (f->kind != FormulaKind::Conj) return "focus is not a conjunction";
      if (t->children.size() != 1) return "expected one premise";
      const Formula& cf = t->children[0]->sequent.focus;
      out.push_back(with_focus(same_formula(cf, f->right) ? f->right : f->left));
      return "";
    }
    if (r == rules::kForallL || r == rules::kForallLG) {
      if (f->kind != FormulaKind::Forall) return "focus is not universal";
      if (auto e = witness_ok(sig, t->witness, binder_type(f)); !e.empty()) return e;
      out.push_back(with_focus(instance(f, t->witness)));
      return "";
    }
    return "unknown rule";
  }

  const Program& p_;
  Calculus c_;
  const LemmaStore& lemmas_;
  int bound_;
};

}  // namespace

CheckResult check(const ProofTree& tree, const Program& program, Calculus calculus,
                  const LemmaStore& lemmas, int fixbeta_bound) {
  CheckResult r;
  if (!tree) return {false, "empty proof"};
  r.diagnostic = Checker(program, calculus, lemmas, fixbeta_bound).run(tree);
  r.ok = r.diagnostic.empty();
  return r;
}

//------------------------------------------------------------------------------
// Lemmas

bool is_h_shaped(const Formula& f0) {
  Formula f = f0;
  while (f->kind == FormulaKind::Forall) f = f->left;
  auto rigid = [](const Formula& a) {
    return a->kind == FormulaKind::Atom && is_rigid_atom(a->atom);
  };
  std::function<bool(const Formula&)> atoms = [&](const Formula& b) {
    if (b->kind == FormulaKind::Conj) return atoms(b->left) && atoms(b->right);
    return rigid(b);
  };
  if (f->kind == FormulaKind::Impl) return atoms(f->left) && rigid(f->right);
  return rigid(f);
}

LemmaStore promote_lemma(const Program& program, const Formula& lemma, const ProofTree& proof,
                         const LemmaStore& store, Calculus calculus) {
  if (!is_h_shaped(lemma))
    throw Error(ErrorKind::NotHShaped, pretty_formula(program, lemma) + " is not H-shaped");
  if (!proof || proof->rule != rules::kCoFix || !same_formula(proof->sequent.goal, lemma))
    throw Error(ErrorKind::ProofInvalid, "proof does not end in co-fix on the lemma");
  CheckResult c = check(proof, program, calculus, store);
  if (!c.ok) throw Error(ErrorKind::ProofInvalid, c.diagnostic);
  LemmaStore out = store;
  out.add({lemma, proof, calculus});
  return out;
}

}  // namespace cup
