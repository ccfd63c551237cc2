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

#ifndef CUP_TREE_HPP
#define CUP_TREE_HPP

#include <map>
#include <string>
#include <vector>

#include "cup/term.hpp"

namespace cup {

inline constexpr const char* kStar = "*";

using Position = std::vector<int>;

// A finite tree.  The symbol "*" marks a truncated or unknown subtree.
struct Tree {
  std::string symbol;
  std::vector<Tree> children;

  static Tree star() { return Tree{kStar, {}}; }
  bool is_star() const { return symbol == kStar; }

  friend bool operator==(const Tree& a, const Tree& b) {
    return a.symbol == b.symbol && a.children == b.children;
  }
  friend bool operator!=(const Tree& a, const Tree& b) { return !(a == b); }
  friend bool operator<(const Tree& a, const Tree& b);
};

std::string tree_to_string(const Tree& t);
Tree parse_tree(const std::string& text);

std::map<Position, std::string> positions(const Tree& t);
Tree from_positions(const std::map<Position, std::string>& m);
int tree_height(const Tree& t);
size_t tree_size(const Tree& t);
bool contains_symbol(const Tree& t, const std::string& symbol);
// Length of the shortest position carrying the symbol, -1 if absent.
int min_depth_of(const Tree& t, const std::string& symbol);

Tree truncate(const Tree& t, int n);
// Least n at which the truncations differ, -1 if the trees are equal.
int first_difference(const Tree& a, const Tree& b);
double distance(const Tree& a, const Tree& b);
// Stars on either side match anything.
bool compatible(const Tree& a, const Tree& b);

Tree tree_substitute(const Tree& t, const std::string& x, const Tree& s);
Tree tree_substitute(const Tree& t, const std::map<std::string, Tree>& s);

// Tree of a term truncated at depth, unfolding fix-headed subterms on
// demand.  Variables found in vars are grafted; other variables become
// stars when unbound_as_star, plain leaves otherwise.
Tree term_to_tree(const Term& t, int depth, const std::map<std::string, Tree>& vars = {},
                  bool unbound_as_star = true, int unfold_limit = 4096);

// Unfolds a closed guarded atom in fair rounds until its snapshot is
// determined up to depth, then truncates.
Tree guarded_atom_to_tree(const Signature& sig, const Term& atom, int depth);

}  // namespace cup

#endif  // CUP_TREE_HPP
