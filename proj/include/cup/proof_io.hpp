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

#ifndef CUP_PROOF_IO_HPP
#define CUP_PROOF_IO_HPP

#include <string>

#include "cup/proof.hpp"

namespace cup {

// Each node: rule, signature_additions, program_additions, focus, goal,
// guarded, witness, children.
std::string export_proof(const Program& program, const ProofTree& proof);
ProofTree import_proof(const Program& program, const std::string& document);

}  // namespace cup

#endif  // CUP_PROOF_IO_HPP
