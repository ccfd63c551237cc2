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

#ifndef CUP_ERROR_HPP
#define CUP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cup {

enum class ErrorKind {
  UnboundConstant,
  UnboundVariable,
  TypeMismatch,
  FixBodyNotAbstraction,
  NoFixRedex,
  NotGuardedAtom,
  DepthUnreachable,
  NonGroundAtom,
  NonHConvertibleClause,
  UniverseTooLarge,
  BodyNotInModel,
  NotHShaped,
  SyntaxError,
  TypeError,
  GuardednessError,
  NonFirstOrderSignature,
  NotCoreFormula,
  NotInCalculus,
  FlexibleAtomUnsupported,
  ProofInvalid,
  SignatureMismatch,
  MalformedDocument,
  MissingEigenvariableBinding,
};

const char* error_kind_name(ErrorKind kind);

struct Span {
  int line = 0;
  int column = 0;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, Span span = {})
      : std::runtime_error(message), kind_(kind), span_(span) {}

  ErrorKind kind() const { return kind_; }
  Span span() const { return span_; }

 private:
  ErrorKind kind_;
  Span span_;
};

}  // namespace cup

#endif  // CUP_ERROR_HPP
