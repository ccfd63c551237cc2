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

#ifndef CUP_TESTS_SUPPORT_HPP
#define CUP_TESTS_SUPPORT_HPP

#include <string>

#include "cup/parser.hpp"

namespace cup::test {

inline Program corpus(const std::string& file) {
  return load_program(std::string(CUP_CORPUS_DIR) + "/" + file);
}

// One signature for the small examples.
inline const char* kStreams = R"(
const 0 1 nil : i.
const s : i -> i.
const scons : i -> i -> i.
const member eq : i -> i -> o.
const bit bitstream : i -> o.
const from : i -> i -> o.
const p q : i -> o.
const r : o.
def z_str = fix \x. scons 0 x.
def n_str = fix \f. \n. scons n (f n).
def fr_str = fix \f. \n. scons n (f (s n)).
)";

inline const Program& streams() {
  static const Program p = parse_program(kStreams);
  return p;
}

inline Term term(const std::string& text, const Context& vars = {}) {
  return parse_term(streams(), text, {}, vars);
}

inline Formula formula(const std::string& text) { return parse_formula(streams(), text); }

inline Context iota_vars(std::initializer_list<const char*> names) {
  Context c;
  for (const char* n : names) c.emplace_back(n, Type::iota());
  return c;
}

}  // namespace cup::test

#endif  // CUP_TESTS_SUPPORT_HPP
