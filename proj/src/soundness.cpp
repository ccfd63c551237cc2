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

#include "cup/soundness.hpp"

#include <functional>

#include "cup/parser.hpp"

namespace cup {

namespace {

Formula hypothesis_of(const ProofTree& proof) {
  if (!proof || proof->rule != rules::kCoFix)
    throw Error(ErrorKind::ProofInvalid, "proof does not start with co-fix");
  if (!is_h_shaped(proof->sequent.goal))
    throw Error(ErrorKind::NotHShaped, "coinductive hypothesis is not H-shaped");
  return proof->sequent.goal;
}

std::vector<std::string> quantified(Formula f) {
  std::vector<std::string> out;
  while (f->kind == FormulaKind::Forall) {
    out.push_back(f->var);
    f = f->left;
  }
  return out;
}

bool same(const Formula& a, const Formula& b) {
  return formula_alpha_eq(formula_beta_normalize(a), formula_beta_normalize(b));
}

Term open_eigen(const Term& t, const TreeSubstitution& s) {
  Term r = t;
  for (const auto& c : constants_of(t))
    if (c.size() > 2 && c[0] == '_' && c[1] == '_') {
      if (!s.count(c))
        throw Error(ErrorKind::MissingEigenvariableBinding, "no binding for eigenvariable " + c);
      r = replace_const(r, c, mk_var(c));
    }
  return r;
}

Tree instantiate_tree(const Term& t, const TreeSubstitution& s, int depth) {
  return term_to_tree(open_eigen(t, s), depth, s, true);
}

}  // namespace

std::vector<DeltaRecord> collect_deltas(const ProofTree& proof) {
  Formula ch = hypothesis_of(proof);
  std::vector<std::string> xs = quantified(ch);
  std::vector<DeltaRecord> out;
  std::function<void(const ProofTree&)> walk = [&](const ProofTree& n) {
    if (n->rule == rules::kDecide && n->children.size() == 1 &&
        n->children[0]->sequent.focus && same(n->children[0]->sequent.focus, ch)) {
      DeltaRecord d;
      d.index = static_cast<int>(out.size()) + 1;
      ProofTree cur = n->children[0];
      for (const auto& x : xs) {
        if (cur->rule != rules::kForallL || !cur->witness || cur->children.size() != 1)
          throw Error(ErrorKind::ProofInvalid, "hypothesis use without its forall-l chain");
        d.bindings.emplace_back(x, cur->witness);
        cur = cur->children[0];
      }
      out.push_back(std::move(d));
    }
    for (const auto& c : n->children) walk(c);
  };
  walk(proof);
  return out;
}

std::vector<std::string> coinductive_eigenvariables(const ProofTree& proof) {
  hypothesis_of(proof);
  std::vector<std::string> out;
  ProofTree cur = proof->children.empty() ? nullptr : proof->children[0];
  while (cur && cur->rule == rules::kForallRG && cur->children.size() == 1) {
    out.push_back(cur->children[0]->sequent.eigen.back().first);
    cur = cur->children[0];
  }
  return out;
}

std::vector<std::pair<std::string, TypePtr>> proof_eigenvariables(const ProofTree& proof) {
  std::vector<std::pair<std::string, TypePtr>> out;
  std::set<std::string> seen;
  std::function<void(const ProofTree&)> walk = [&](const ProofTree& n) {
    for (const auto& e : n->sequent.eigen)
      if (seen.insert(e.first).second) out.push_back(e);
    for (const auto& c : n->children) walk(c);
  };
  walk(proof);
  return out;
}

TreeSubstitution default_base(const Program& program, const ProofTree& proof) {
  std::string first;
  for (const auto& c : program.sig.declared())
    if (type_eq(program.sig.type_of(c), Type::iota())) {
      first = c;
      break;
    }
  TreeSubstitution base;
  for (const auto& [n, t] : proof_eigenvariables(proof))
    if (type_eq(t, Type::iota()) && !first.empty()) base[n] = Tree{first, {}};
  return base;
}

TreeSubstitution theta(const Word& w, const std::vector<DeltaRecord>& deltas,
                       const std::vector<std::string>& eigen, const TreeSubstitution& base,
                       int depth) {
  TreeSubstitution cur = base;
  for (const auto& [n, t] : cur) cur[n] = truncate(t, depth);
  for (int j : w) {
    if (j < 1 || j > static_cast<int>(deltas.size()))
      throw Error(ErrorKind::ProofInvalid, "word letter out of range");
    const DeltaRecord& d = deltas[j - 1];
    TreeSubstitution next = cur;
    for (size_t i = 0; i < eigen.size() && i < d.bindings.size(); ++i)
      next[eigen[i]] = instantiate_tree(d.bindings[i].second, cur, depth);
    cur = std::move(next);
  }
  return cur;
}

std::vector<Word> words_up_to(int letters, int length) {
  std::vector<Word> out{{}};
  std::vector<Word> layer{{}};
  for (int k = 0; k < length && letters > 0; ++k) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (int j = 1; j <= letters; ++j) {
        Word v = w;
        v.push_back(j);
        next.push_back(v);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

Candidate build_candidate(const Program&, const ProofTree& proof,
                          const TreeSubstitution& base, int depth, int word_budget) {
  Formula ch = hypothesis_of(proof);
  auto deltas = collect_deltas(proof);
  auto eigen = coinductive_eigenvariables(proof);

  std::vector<Term> atoms;
  std::function<void(const ProofTree&)> walk = [&](const ProofTree& n) {
    if (n != proof && n->sequent.goal->kind == FormulaKind::Atom)
      atoms.push_back(n->sequent.goal->atom);
    for (const auto& c : n->children) walk(c);
  };
  walk(proof);

  std::vector<Term> side;
  Formula body = ch;
  std::vector<std::string> xs;
  while (body->kind == FormulaKind::Forall) {
    xs.push_back(body->var);
    body = body->left;
  }
  if (body->kind == FormulaKind::Impl) {
    std::map<std::string, Term> to_eigen;
    for (size_t i = 0; i < xs.size() && i < eigen.size(); ++i) to_eigen[xs[i]] = mk_const(eigen[i]);
    for (const auto& a : formula_atoms(body->left)) side.push_back(substitute(a, to_eigen));
  }

  Candidate out;
  out.atoms.depth = depth;
  auto words = words_up_to(static_cast<int>(deltas.size()), word_budget);
  out.words = words.size();
  std::set<Tree> side_set;
  for (const auto& w : words) {
    TreeSubstitution th = theta(w, deltas, eigen, base, depth);
    for (const auto& a : atoms) out.atoms.atoms.insert(instantiate_tree(a, th, depth));
    for (const auto& a : side) side_set.insert(instantiate_tree(a, th, depth));
  }
  out.side.assign(side_set.begin(), side_set.end());
  return out;
}

PostfixedResult verify_postfixed(const Interpretation& i, const Program& program,
                                 const InstanceConfig& cfg) {
  InstanceConfig c = cfg;
  c.forward_seeds = false;
  c.seeds.clear();
  std::vector<Tree> extra(i.atoms.begin(), i.atoms.end());
  Grounding g = build_grounding(program, i.depth, c, extra);
  std::vector<char> alive(g.atoms.size(), 0);
  for (size_t k = 0; k < g.atoms.size(); ++k) alive[k] = i.contains(g.atoms[k]);
  std::vector<char> next = apply_t(g, alive, c.parallel);
  PostfixedResult r;
  for (size_t k = 0; k < g.atoms.size(); ++k)
    if (alive[k] && !next[k]) {
      r.ok = false;
      r.counterexample = g.atoms[k];
      break;
    }
  return r;
}

HarnessReport run_harness(const Program& program, const ProofTree& proof, int depth,
                          int word_budget, const InstanceConfig& cfg,
                          const std::optional<TreeSubstitution>& base) {
  HarnessReport r;
  r.deltas = collect_deltas(proof);
  r.s = static_cast<int>(r.deltas.size());
  r.depth = depth;
  r.word_budget = word_budget;
  TreeSubstitution b = base ? *base : default_base(program, proof);
  Candidate cand = build_candidate(program, proof, b, depth, word_budget);
  r.words = cand.words;
  r.candidate_atoms = cand.atoms.atoms.size();

  InstanceConfig c = cfg;
  c.forward_seeds = false;
  c.seeds.insert(c.seeds.end(), cand.side.begin(), cand.side.end());
  c.seeds.insert(c.seeds.end(), cand.atoms.atoms.begin(), cand.atoms.atoms.end());
  Interpretation model = gfp_approx(program, depth, c);
  r.model_atoms = model.atoms.size();
  for (const auto& a : cand.side)
    if (member_of_model(a, model) != Membership::InApprox) {
      r.side_in_model = false;
      r.counterexamples.push_back(a);
    }
  for (const auto& a : cand.atoms.atoms)
    if (member_of_model(a, model) != Membership::InApprox) {
      r.heads_in_model = false;
      r.counterexamples.push_back(a);
    }
  Interpretation u = model;
  u.atoms.insert(cand.atoms.atoms.begin(), cand.atoms.atoms.end());
  PostfixedResult pf = verify_postfixed(u, program, cfg);
  r.postfixed = pf.ok;
  if (pf.counterexample) r.counterexamples.push_back(*pf.counterexample);
  return r;
}

std::string harness_report_text(const Program& program, const HarnessReport& r) {
  std::string out = "hypothesis uses: " + std::to_string(r.s) + "\n";
  for (const auto& d : r.deltas) {
    out += "  delta " + std::to_string(d.index) + ":";
    for (const auto& [x, t] : d.bindings) out += " " + x + " := " + pretty_term(program, t);
    out += "\n";
  }
  out += "depth " + std::to_string(r.depth) + ", word budget " + std::to_string(r.word_budget) +
         " (" + std::to_string(r.words) + " words)\n";
  out += "candidate atoms: " + std::to_string(r.candidate_atoms) +
         ", model atoms: " + std::to_string(r.model_atoms) + "\n";
  out += std::string("body instances in model: ") + (r.side_in_model ? "yes" : "no") + "\n";
  out += std::string("candidate inside model: ") + (r.heads_in_model ? "yes" : "no") + "\n";
  out += std::string("post-fixed point: ") + (r.postfixed ? "yes" : "no") + "\n";
  for (const auto& c : r.counterexamples) out += "counterexample: " + tree_to_string(c) + "\n";
  return out;
}

ExtensionReport conservative_extension_check(const Program& program,
                                             const std::vector<HClause>& lemma_instances,
                                             int depth, const InstanceConfig& cfg) {
  std::vector<Tree> bodies, heads;
  for (const auto& h : lemma_instances) {
    heads.push_back(atom_tree(program.sig, h.head, depth));
    for (const auto& b : h.body) bodies.push_back(atom_tree(program.sig, b, depth));
  }
  InstanceConfig base = cfg;
  base.seeds.insert(base.seeds.end(), heads.begin(), heads.end());
  base.seeds.insert(base.seeds.end(), bodies.begin(), bodies.end());
  Interpretation m = gfp_approx(program, depth, base);
  for (const auto& b : bodies)
    if (member_of_model(b, m) != Membership::InApprox)
      throw Error(ErrorKind::BodyNotInModel, "body atom " + tree_to_string(b) + " is not in the model");
  InstanceConfig ext = base;
  ext.extra_clauses.insert(ext.extra_clauses.end(), lemma_instances.begin(), lemma_instances.end());
  Interpretation m2 = gfp_approx(program, depth, ext);
  ExtensionReport r;
  r.atoms = m.atoms.size();
  for (const auto& a : m.atoms)
    if (!m2.contains(a)) r.only_base.push_back(a);
  for (const auto& a : m2.atoms)
    if (!m.contains(a)) r.only_extended.push_back(a);
  r.equal = r.only_base.empty() && r.only_extended.empty();
  return r;
}

}  // namespace cup
