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

#ifndef CUP_PROOF_HPP
#define CUP_PROOF_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cup/formula.hpp"

namespace cup {

enum class GoalMode { Plain, Guarded, Coinductive };
enum class ClauseRole { Hypothesis, Lemma, CoinductiveHypothesis };

const char* role_tag(ClauseRole r);
std::optional<ClauseRole> parse_role_tag(const std::string& s);

struct ProgramEntry {
  ClauseRole role;
  Formula formula;
};

// The original program is implicit; a sequent records what was added to
// it along the branch.
struct Sequent {
  Context eigen;
  std::vector<ProgramEntry> additions;
  Formula focus;  // null when absent
  Formula goal;
  GoalMode mode = GoalMode::Plain;
};

struct ProofNode;
using ProofTree = std::shared_ptr<const ProofNode>;

struct ProofNode {
  std::string rule;
  Sequent sequent;
  Term witness;
  std::string eigenvariable;
  std::vector<ProofTree> children;
};

namespace rules {
inline constexpr const char* kCoFix = "co-fix";
inline constexpr const char* kTopR = "top-r";
inline constexpr const char* kAndR = "and-r";
inline constexpr const char* kAndRG = "and-r<>";
inline constexpr const char* kOrR = "or-r";
inline constexpr const char* kExistsR = "exists-r";
inline constexpr const char* kForallR = "forall-r";
inline constexpr const char* kForallRG = "forall-r<>";
inline constexpr const char* kImpR = "imp-r";
inline constexpr const char* kImpRG = "imp-r<>";
inline constexpr const char* kDecide = "decide";
inline constexpr const char* kDecideG = "decide<>";
inline constexpr const char* kInitial = "initial";
inline constexpr const char* kInitialG = "initial<>";
inline constexpr const char* kImpL = "imp-l";
inline constexpr const char* kImpLG = "imp-l<>";
inline constexpr const char* kAndL = "and-l";
inline constexpr const char* kAndLG = "and-l<>";
inline constexpr const char* kForallL = "forall-l";
inline constexpr const char* kForallLG = "forall-l<>";
}  // namespace rules

size_t proof_size(const ProofTree& t);
size_t proof_depth(const ProofTree& t);
std::vector<ProofTree> proof_leaves(const ProofTree& t);
bool proof_equal(const ProofTree& a, const ProofTree& b);
std::string proof_outline(const Program& p, const ProofTree& t);

struct SearchConfig {
  Calculus calculus = Calculus::HOHH;
  int depth_limit = 32;
  int fixbeta_bound = 8;
  // Extra candidates per witness pool source.
  int pool_limit = 16;
  // Abort a search after this many expanded nodes (0 = unbounded).
  size_t node_budget = 0;
};

enum class Outcome { Found, Failed, DepthExceeded };
const char* outcome_name(Outcome o);

struct SearchStats {
  size_t nodes = 0;
  int max_depth = 0;
  int depth_reached = 0;
};

struct SearchResult {
  Outcome outcome = Outcome::Failed;
  ProofTree proof;
  SearchStats stats;
  std::string diagnostic;
};

// Search outcomes as reported to users.  A program whose notes carry a
// "limitation:" pragma turns an exhausted search into an inconclusive
// answer pointing at the note.
enum class Verdict { Proved, NoProof, Inconclusive };
const char* verdict_name(Verdict v);

struct VerdictReport {
  Verdict verdict = Verdict::NoProof;
  std::string reason;
};

VerdictReport verdict_of(const Program& program, const SearchResult& r);

struct Lemma {
  Formula formula;
  ProofTree proof;
  Calculus calculus;
};

class LemmaStore {
 public:
  const std::vector<Lemma>& lemmas() const { return lemmas_; }
  bool contains(const Formula& f) const;
  void add(Lemma l) { lemmas_.push_back(std::move(l)); }

 private:
  std::vector<Lemma> lemmas_;
};

SearchResult coprove(const Program& program, const Formula& m, const SearchConfig& cfg,
                     const LemmaStore& lemmas = {});
SearchResult prove(const Program& program, const LemmaStore& lemmas, const Formula& g,
                   const SearchConfig& cfg);

struct CheckResult {
  bool ok = true;
  std::string diagnostic;
};

CheckResult check(const ProofTree& tree, const Program& program, Calculus calculus,
                  const LemmaStore& lemmas = {}, int fixbeta_bound = 8);

using Substitution = std::map<std::string, Term>;
// Free variables are the unknowns.
std::optional<Substitution> unify_first_order(const Term& a, const Term& b);

std::vector<Term> witness_pool(const Program& program, const Sequent& seq,
                               const SearchConfig& cfg, const TypePtr& type = Type::iota());

// Is f of the shape forall xs (A1 /\ .. /\ An => A)?
bool is_h_shaped(const Formula& f);
LemmaStore promote_lemma(const Program& program, const Formula& lemma, const ProofTree& proof,
                         const LemmaStore& store, Calculus calculus);

Signature sequent_signature(const Program& program, const Sequent& s);

}  // namespace cup

#endif  // CUP_PROOF_HPP
