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

#ifndef CUP_SOUNDNESS_HPP
#define CUP_SOUNDNESS_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cup/proof.hpp"
#include "cup/semantics.hpp"

namespace cup {

// The substitution read off the forall-l chain at one use of the
// coinductive hypothesis.
struct DeltaRecord {
  int index = 0;  // 1-based, in pre-order
  std::vector<std::pair<std::string, Term>> bindings;
};

using TreeSubstitution = std::map<std::string, Tree>;
using Word = std::vector<int>;

std::vector<DeltaRecord> collect_deltas(const ProofTree& proof);
// Eigenvariables introduced for the hypothesis' universals, in order.
std::vector<std::string> coinductive_eigenvariables(const ProofTree& proof);
std::vector<std::pair<std::string, TypePtr>> proof_eigenvariables(const ProofTree& proof);

TreeSubstitution theta(const Word& w, const std::vector<DeltaRecord>& deltas,
                       const std::vector<std::string>& eigen, const TreeSubstitution& base,
                       int depth);

// Every eigenvariable of type i bound to the first declared constant of
// type i.
TreeSubstitution default_base(const Program& program, const ProofTree& proof);

std::vector<Word> words_up_to(int letters, int length);

struct Candidate {
  Interpretation atoms;
  // Instances of the hypothesis body that a post-fixed point must hold.
  std::vector<Tree> side;
  size_t words = 0;
};

Candidate build_candidate(const Program& program, const ProofTree& proof,
                          const TreeSubstitution& base, int depth, int word_budget);

struct PostfixedResult {
  bool ok = true;
  std::optional<Tree> counterexample;
};

PostfixedResult verify_postfixed(const Interpretation& i, const Program& program,
                                 const InstanceConfig& cfg);

struct HarnessReport {
  int s = 0;
  std::vector<DeltaRecord> deltas;
  int depth = 0;
  int word_budget = 0;
  size_t words = 0;
  size_t candidate_atoms = 0;
  size_t model_atoms = 0;
  bool side_in_model = true;
  bool postfixed = false;
  bool heads_in_model = true;
  std::vector<Tree> counterexamples;
};

HarnessReport run_harness(const Program& program, const ProofTree& proof, int depth,
                          int word_budget, const InstanceConfig& cfg,
                          const std::optional<TreeSubstitution>& base = std::nullopt);
std::string harness_report_text(const Program& program, const HarnessReport& r);

struct ExtensionReport {
  bool equal = true;
  size_t atoms = 0;
  std::vector<Tree> only_base;
  std::vector<Tree> only_extended;
};

ExtensionReport conservative_extension_check(const Program& program,
                                             const std::vector<HClause>& lemma_instances,
                                             int depth, const InstanceConfig& cfg);

}  // namespace cup

#endif  // CUP_SOUNDNESS_HPP
