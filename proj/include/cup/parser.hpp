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

#ifndef CUP_PARSER_HPP
#define CUP_PARSER_HPP

#include <string>
#include <vector>

#include "cup/formula.hpp"

namespace cup {

Program parse_program(const std::string& text);
Program load_program(const std::string& path);

// Extra constants extend the program signature, e.g. eigenvariables.
Formula parse_formula(const Program& p, const std::string& text,
                      const Context& extra_constants = {});
Term parse_term(const Program& p, const std::string& text, const Context& extra_constants = {},
                const Context& vars = {});
TypePtr parse_type(const std::string& text);

std::string pretty_term(const Program& p, const Term& t);
std::string pretty_formula(const Program& p, const Formula& f);
std::string pretty_program(const Program& p);

}  // namespace cup

#endif  // CUP_PARSER_HPP
