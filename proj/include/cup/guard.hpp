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

#ifndef CUP_GUARD_HPP
#define CUP_GUARD_HPP

#include <optional>
#include <string>
#include <vector>

#include "cup/term.hpp"

namespace cup {

struct GuardViolation {
  std::string condition;  // "1".."4" or "full-term shape"
  std::string location;
};

struct GuardReport {
  bool guarded = true;
  std::vector<GuardViolation> violations;
};

// Decomposition of fix \x. \y1..ym. f L1..Lk (x N1..Nm) Lk+1..Lr.
struct FixShape {
  std::string self;
  std::vector<std::string> params;
  std::string head;
  std::vector<Term> args;  // f's arguments, self call included
  int self_position = -1;
  std::vector<Term> self_args;  // N1..Nm
};

GuardReport is_guarded_fixed_point(const Signature& sig, const Term& t);
std::optional<FixShape> fix_shape(const Term& t);

bool is_guarded_full(const Signature& sig, const Context& ctx, const Term& t);
// A guarded full term fixbeta-equivalent to t, found by folding
// constructor layers back into the fix term they came from.
std::optional<Term> fold_guarded_full(const Signature& sig, const Context& ctx,
                                      const Term& t, int bound = 8);
bool is_guarded_atom(const Signature& sig, const Context& ctx, const Term& a,
                     int bound = 8);
Term snapshot(const Signature& sig, const Context& ctx, const Term& a);
// Replaces every fix-headed subterm by the diamond constant.
Term snapshot_unchecked(const Term& t);

}  // namespace cup

#endif  // CUP_GUARD_HPP
