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

#include "cup/semantics.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "cup/guard.hpp"

namespace cup {

std::string interpretation_to_text(const Interpretation& i) {
  std::string out = "% depth " + std::to_string(i.depth) + "\n";
  for (const auto& a : i.atoms) out += tree_to_string(a) + "\n";
  return out;
}

Interpretation interpretation_from_text(const std::string& text) {
  Interpretation i;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '%') {
      std::istringstream hs(line.substr(1));
      std::string word;
      if (hs >> word && word == "depth") hs >> i.depth;
      continue;
    }
    i.atoms.insert(parse_tree(line));
  }
  return i;
}

namespace {

bool supports_rec(const Tree& m, const Tree& b, int level, int depth) {
  if (b.is_star()) return true;
  if (m.is_star()) return level >= depth;
  if (m.symbol != b.symbol || m.children.size() != b.children.size()) return false;
  for (size_t k = 0; k < m.children.size(); ++k)
    if (!supports_rec(m.children[k], b.children[k], level + 1, depth)) return false;
  return true;
}

std::optional<Tree> merge(const Tree& a, const Tree& b) {
  if (a.is_star()) return b;
  if (b.is_star()) return a;
  if (a.symbol != b.symbol || a.children.size() != b.children.size()) return std::nullopt;
  Tree r{a.symbol, {}};
  for (size_t k = 0; k < a.children.size(); ++k) {
    auto c = merge(a.children[k], b.children[k]);
    if (!c) return std::nullopt;
    r.children.push_back(std::move(*c));
  }
  return r;
}

using Bindings = std::map<std::string, Tree>;

// Matches a clause head pattern against a candidate tree.  Stars in the
// tree match any pattern and leave the variables below them unbound.
bool match(const Term& pat, const Tree& t, int level, int depth, Bindings& b) {
  if (t.is_star()) return true;
  auto [h, args] = spine(pat);
  if (h->kind == TermKind::Var) {
    if (!args.empty()) return false;
    auto it = b.find(h->name);
    if (it == b.end()) {
      b[h->name] = t;
      return true;
    }
    auto m = merge(it->second, t);
    if (!m) return false;
    it->second = std::move(*m);
    return true;
  }
  if (h->kind != TermKind::Const) {
    Tree r = term_to_tree(pat, depth - level, b, true);
    return compatible(r, t);
  }
  if (h->name != t.symbol || args.size() != t.children.size()) return false;
  for (size_t k = 0; k < args.size(); ++k)
    if (!match(args[k], t.children[k], level + 1, depth, b)) return false;
  return true;
}

bool is_function_type(const TypePtr& t, size_t* arity) {
  auto [args, res] = uncurry(t);
  if (!type_eq(res, Type::iota())) return false;
  for (const auto& a : args)
    if (!type_eq(a, Type::iota())) return false;
  *arity = args.size();
  return true;
}

std::vector<std::vector<Term>> tuples(const std::vector<Term>& pool, size_t k, size_t cap) {
  std::vector<std::vector<Term>> out;
  if (k > 0 && pool.empty()) return out;
  std::vector<size_t> idx(k, 0);
  while (out.size() < cap) {
    std::vector<Term> t;
    for (size_t i : idx) t.push_back(pool[i]);
    out.push_back(std::move(t));
    size_t j = 0;
    while (j < k && ++idx[j] == pool.size()) idx[j++] = 0;
    if (j == k) break;
  }
  return out;
}

std::vector<Term> fo_levels(const Program& program, int height, size_t cap) {
  std::vector<Term> consts;
  std::vector<std::pair<std::string, size_t>> fns;
  for (const auto& c : program.sig.declared()) {
    size_t n = 0;
    if (!is_function_type(program.sig.type_of(c), &n)) continue;
    if (n == 0)
      consts.push_back(mk_const(c));
    else
      fns.emplace_back(c, n);
  }
  std::vector<Term> level = consts;
  std::set<std::string> seen;
  for (const auto& c : consts) seen.insert(alpha_key(c));
  for (int h = 1; h <= height && level.size() < cap; ++h) {
    std::vector<Term> next = level;
    for (const auto& [f, n] : fns)
      for (const auto& args : tuples(level, n, cap)) {
        Term t = mk_app(mk_const(f), args);
        if (seen.insert(alpha_key(t)).second) next.push_back(t);
        if (next.size() >= cap) break;
      }
    level = std::move(next);
  }
  if (level.size() > cap) level.resize(cap);
  return level;
}

}  // namespace

bool supports(const Tree& m, const Tree& b, int depth) { return supports_rec(m, b, 0, depth); }

std::vector<Term> enumerate_universe(const Program& program, const InstanceConfig& cfg) {
  std::vector<Term> out = fo_levels(program, cfg.term_height, cfg.max_pool);
  std::vector<Term> args = fo_levels(program, cfg.def_arg_height, cfg.max_pool);
  for (const auto& name : program.def_order) {
    const Term& fx = program.defs.at(name);
    size_t n = 0;
    if (!is_function_type(typecheck(program.sig, {}, fx), &n)) continue;
    for (const auto& xs : tuples(args, n, cfg.max_pool)) {
      if (out.size() >= 2 * cfg.max_pool) break;
      out.push_back(xs.empty() ? fx : mk_app(fx, xs));
    }
  }
  return out;
}

bool has_finite_universe(const Program& program, const InstanceConfig& cfg) {
  if (!program.defs.empty()) return false;
  for (const auto& c : program.sig.declared()) {
    size_t n = 0;
    if (is_function_type(program.sig.type_of(c), &n) && n > 0) return false;
  }
  for (const auto& h : cfg.extra_clauses) {
    if (has_fix(h.head)) return false;
    for (const auto& b : h.body)
      if (has_fix(b)) return false;
  }
  return true;
}

namespace {

class GroundingBuilder {
 public:
  GroundingBuilder(const Program& p, int depth, const InstanceConfig& cfg)
      : p_(p), cfg_(cfg) {
    g_.depth = depth;
    g_.finite = has_finite_universe(p, cfg);
    clauses_ = program_h_clauses(p);
    clauses_.insert(clauses_.end(), cfg.extra_clauses.begin(), cfg.extra_clauses.end());
    for (const auto& c : p.sig.declared()) {
      size_t n = 0;
      if (is_function_type(p.sig.type_of(c), &n) && n == 0) constants_.push_back(c);
    }
  }

  int add_atom(const Tree& t) {
    auto it = atom_index_.find(t);
    if (it != atom_index_.end()) return it->second;
    if (g_.atoms.size() >= cfg_.max_atoms)
      throw Error(ErrorKind::UniverseTooLarge,
                  "more than " + std::to_string(cfg_.max_atoms) +
                      " candidate atoms; lower the model depth or the pool bounds");
    int id = static_cast<int>(g_.atoms.size());
    atom_index_.emplace(t, id);
    g_.atoms.push_back(t);
    return id;
  }

  void seed(const std::vector<Tree>& extra) {
    for (const auto& t : cfg_.seeds) add_atom(truncate(t, g_.depth));
    for (const auto& t : extra) add_atom(truncate(t, g_.depth));
    if (!cfg_.forward_seeds) return;
    if (g_.finite) {
      for (const auto& c : p_.sig.declared()) {
        auto [args, res] = uncurry(p_.sig.type_of(c));
        if (!type_eq(res, Type::prop()) || is_reserved_name(c)) continue;
        if (!std::all_of(args.begin(), args.end(),
                         [](const TypePtr& a) { return type_eq(a, Type::iota()); }))
          continue;
        std::vector<Term> cs;
        for (const auto& k : constants_) cs.push_back(mk_const(k));
        for (const auto& xs : tuples(cs, args.size(), cfg_.max_atoms + 1)) {
          Term a = xs.empty() ? mk_const(c) : mk_app(mk_const(c), xs);
          add_atom(term_to_tree(a, g_.depth));
        }
      }
      return;
    }
    InstanceConfig small = cfg_;
    small.term_height = 0;
    small.def_arg_height = 0;
    std::vector<Tree> pool = trees_of(enumerate_universe(p_, cfg_));
    std::vector<Tree> low = trees_of(enumerate_universe(p_, small));
    for (const auto& c : clauses_) {
      std::vector<std::string> hv;
      for (const auto& v : free_vars(c.head)) hv.push_back(v);
      const std::vector<Tree>* use = &pool;
      if (power(pool.size(), hv.size()) > cfg_.max_seeds_per_clause) use = &low;
      if (power(use->size(), hv.size()) > cfg_.max_seeds_per_clause) continue;
      if (!hv.empty() && use->empty()) continue;
      std::vector<size_t> idx(hv.size(), 0);
      while (true) {
        Bindings b;
        for (size_t k = 0; k < hv.size(); ++k) b[hv[k]] = (*use)[idx[k]];
        add_atom(term_to_tree(c.head, g_.depth, b, true));
        size_t j = 0;
        while (j < idx.size() && ++idx[j] == use->size()) idx[j++] = 0;
        if (j == idx.size()) break;
      }
    }
  }

  std::vector<Tree> trees_of(const std::vector<Term>& ts) const {
    std::vector<Tree> out;
    for (const auto& t : ts) out.push_back(term_to_tree(t, g_.depth));
    return out;
  }

  static size_t power(size_t b, size_t e) {
    size_t r = 1;
    for (size_t k = 0; k < e; ++k) {
      r *= b;
      if (r > (size_t{1} << 40)) break;
    }
    return r;
  }

  void close() {
    std::map<Tree, int> body_index;
    for (size_t i = 0; i < g_.atoms.size(); ++i) {
      std::set<std::vector<int>> inst;
      Tree atom = g_.atoms[i];
      for (const auto& c : clauses_) {
        Bindings b;
        if (!match(c.head, atom, 0, g_.depth, b)) continue;
        std::vector<std::string> open;
        for (const auto& [v, ty] : c.vars)
          if (!b.count(v) && type_eq(ty, Type::iota())) open.push_back(v);
        auto emit = [&](const Bindings& bb) {
          std::vector<int> body;
          for (const auto& a : c.body) {
            Tree t = term_to_tree(a, g_.depth, bb, true);
            auto it = body_index.find(t);
            int id;
            if (it == body_index.end()) {
              id = static_cast<int>(g_.bodies.size());
              body_index.emplace(t, id);
              g_.bodies.push_back(t);
            } else {
              id = it->second;
            }
            body.push_back(id);
            add_atom(t);
          }
          std::sort(body.begin(), body.end());
          body.erase(std::unique(body.begin(), body.end()), body.end());
          inst.insert(body);
        };
        if (!g_.finite || open.empty()) {
          emit(b);
          continue;
        }
        std::vector<size_t> idx(open.size(), 0);
        if (constants_.empty()) continue;
        while (true) {
          Bindings bb = b;
          for (size_t k = 0; k < open.size(); ++k) bb[open[k]] = Tree{constants_[idx[k]], {}};
          emit(bb);
          size_t j = 0;
          while (j < idx.size() && ++idx[j] == constants_.size()) idx[j++] = 0;
          if (j == idx.size()) break;
        }
      }
      g_.instances.emplace_back(inst.begin(), inst.end());
    }
  }

  Grounding take() { return std::move(g_); }

 private:
  const Program& p_;
  const InstanceConfig& cfg_;
  Grounding g_;
  std::vector<HClause> clauses_;
  std::vector<std::string> constants_;
  std::map<Tree, int> atom_index_;
};

std::vector<int> matchers_of(const Grounding& g, int j,
                             const std::map<std::string, std::vector<int>>& by_root) {
  std::vector<int> out;
  const Tree& b = g.bodies[j];
  auto it = by_root.find(b.symbol);
  if (it == by_root.end()) return out;
  for (int i : it->second)
    if (supports(g.atoms[i], b, g.depth)) out.push_back(i);
  return out;
}

std::map<std::string, std::vector<int>> index_by_root(const Grounding& g) {
  std::map<std::string, std::vector<int>> by_root;
  for (size_t i = 0; i < g.atoms.size(); ++i)
    by_root[g.atoms[i].symbol].push_back(static_cast<int>(i));
  return by_root;
}

}  // namespace

Grounding build_grounding(const Program& program, int depth, const InstanceConfig& cfg,
                          const std::vector<Tree>& extra) {
  GroundingBuilder b(program, depth, cfg);
  b.seed(extra);
  b.close();
  Grounding g = b.take();
  fill_matchers(g, cfg.parallel);
  return g;
}

std::vector<int> compute_matchers(const Grounding& g, int body, bool) {
  return matchers_of(g, body, index_by_root(g));
}

void fill_matchers(Grounding& g, bool parallel) {
  auto by_root = index_by_root(g);
  long n = static_cast<long>(g.bodies.size());
  g.matchers.assign(g.bodies.size(), {});
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (long j = 0; j < n; ++j) g.matchers[j] = matchers_of(g, static_cast<int>(j), by_root);
}

std::vector<char> apply_t(const Grounding& g, const std::vector<char>& alive, bool parallel) {
  long nb = static_cast<long>(g.bodies.size());
  long na = static_cast<long>(g.atoms.size());
  std::vector<char> body_ok(g.bodies.size(), 0), out(g.atoms.size(), 0);
#pragma omp parallel for schedule(static) if (parallel)
  for (long j = 0; j < nb; ++j) {
    char ok = 0;
    for (int i : g.matchers[j])
      if (alive[i]) {
        ok = 1;
        break;
      }
    body_ok[j] = ok;
  }
#pragma omp parallel for schedule(static) if (parallel)
  for (long i = 0; i < na; ++i) {
    char ok = 0;
    for (const auto& inst : g.instances[i]) {
      bool all = true;
      for (int j : inst)
        if (!body_ok[j]) {
          all = false;
          break;
        }
      if (all) {
        ok = 1;
        break;
      }
    }
    out[i] = ok;
  }
  return out;
}

std::vector<char> solve_gfp(const Grounding& g, bool parallel) {
  std::vector<char> alive(g.atoms.size(), 1);
  while (true) {
    std::vector<char> next = apply_t(g, alive, parallel);
    for (size_t i = 0; i < next.size(); ++i) next[i] = next[i] && alive[i];
    if (next == alive) return alive;
    alive = std::move(next);
  }
}

namespace serial {

void fill_matchers(Grounding& g) {
  auto by_root = index_by_root(g);
  g.matchers.assign(g.bodies.size(), {});
  for (size_t j = 0; j < g.bodies.size(); ++j)
    g.matchers[j] = matchers_of(g, static_cast<int>(j), by_root);
}

std::vector<char> apply_t(const Grounding& g, const std::vector<char>& alive) {
  std::vector<char> out(g.atoms.size(), 0);
  for (size_t i = 0; i < g.atoms.size(); ++i) {
    for (const auto& inst : g.instances[i]) {
      bool all = true;
      for (int j : inst) {
        bool found = false;
        for (int k : g.matchers[j])
          if (alive[k]) {
            found = true;
            break;
          }
        if (!found) {
          all = false;
          break;
        }
      }
      if (all) {
        out[i] = 1;
        break;
      }
    }
  }
  return out;
}

std::vector<char> solve_gfp(const Grounding& g) {
  std::vector<char> alive(g.atoms.size(), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<char> next = apply_t(g, alive);
    for (size_t i = 0; i < alive.size(); ++i)
      if (alive[i] && !next[i]) {
        alive[i] = 0;
        changed = true;
      }
  }
  return alive;
}

}  // namespace serial

Interpretation t_operator(const Program& program, const Interpretation& i,
                          const InstanceConfig& cfg) {
  std::vector<Tree> extra(i.atoms.begin(), i.atoms.end());
  Grounding g = build_grounding(program, i.depth, cfg, extra);
  std::vector<char> alive(g.atoms.size(), 0);
  for (size_t k = 0; k < g.atoms.size(); ++k) alive[k] = i.contains(g.atoms[k]);
  std::vector<char> res = apply_t(g, alive, cfg.parallel);
  Interpretation out;
  out.depth = i.depth;
  for (size_t k = 0; k < g.atoms.size(); ++k)
    if (res[k]) out.atoms.insert(g.atoms[k]);
  return out;
}

Interpretation gfp_approx(const Program& program, int depth, const InstanceConfig& cfg) {
  Grounding g = build_grounding(program, depth, cfg);
  std::vector<char> alive = solve_gfp(g, cfg.parallel);
  Interpretation out;
  out.depth = depth;
  for (size_t k = 0; k < g.atoms.size(); ++k)
    if (alive[k]) out.atoms.insert(g.atoms[k]);
  return out;
}

const char* membership_name(Membership m) {
  return m == Membership::InApprox ? "InApprox" : "CertainlyOut";
}

Tree atom_tree(const Signature& sig, const Term& atom, int depth) {
  try {
    return guarded_atom_to_tree(sig, atom, depth);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotGuardedAtom || !free_vars(atom).empty()) throw;
    return term_to_tree(atom, depth);
  }
}

Membership member_of_model(const Tree& atom, const Interpretation& approx) {
  Tree t = truncate(atom, approx.depth);
  if (approx.contains(t)) return Membership::InApprox;
  for (const auto& a : approx.atoms)
    if (supports(a, t, approx.depth)) return Membership::InApprox;
  return Membership::CertainlyOut;
}

Membership member_of_model(const Signature& sig, const Term& atom, const Interpretation& approx) {
  return member_of_model(guarded_atom_to_tree(sig, atom, approx.depth), approx);
}

Membership query_model(const Program& program, const Term& atom, int depth,
                       const InstanceConfig& cfg) {
  Tree t = atom_tree(program.sig, atom, depth);
  InstanceConfig c = cfg;
  c.seeds.push_back(t);
  return member_of_model(t, gfp_approx(program, depth, c));
}

}  // namespace cup
