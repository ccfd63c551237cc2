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

#include "cup/tree.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "cup/guard.hpp"

namespace cup {

bool operator<(const Tree& a, const Tree& b) {
  if (a.symbol != b.symbol) return a.symbol < b.symbol;
  return std::lexicographical_compare(a.children.begin(), a.children.end(),
                                      b.children.begin(), b.children.end());
}

std::string tree_to_string(const Tree& t) {
  std::string s = t.symbol;
  if (t.children.empty()) return s;
  s += "(";
  for (size_t i = 0; i < t.children.size(); ++i) {
    if (i) s += ", ";
    s += tree_to_string(t.children[i]);
  }
  return s + ")";
}

namespace {

class TreeReader {
 public:
  explicit TreeReader(const std::string& s) : s_(s) {}

  Tree read() {
    Tree t = node();
    skip();
    if (i_ != s_.size()) fail();
    return t;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  [[noreturn]] void fail() {
    throw Error(ErrorKind::SyntaxError, "malformed tree near offset " + std::to_string(i_));
  }
  Tree node() {
    skip();
    size_t b = i_;
    while (i_ < s_.size() && s_[i_] != '(' && s_[i_] != ')' && s_[i_] != ',' &&
           !std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
    if (b == i_) fail();
    Tree t{s_.substr(b, i_ - b), {}};
    skip();
    if (i_ < s_.size() && s_[i_] == '(') {
      ++i_;
      for (;;) {
        t.children.push_back(node());
        skip();
        if (i_ < s_.size() && s_[i_] == ',') {
          ++i_;
          continue;
        }
        if (i_ < s_.size() && s_[i_] == ')') {
          ++i_;
          break;
        }
        fail();
      }
    }
    return t;
  }

  const std::string& s_;
  size_t i_ = 0;
};

void collect_positions(const Tree& t, Position& p, std::map<Position, std::string>& out) {
  out[p] = t.symbol;
  for (size_t i = 0; i < t.children.size(); ++i) {
    p.push_back(static_cast<int>(i));
    collect_positions(t.children[i], p, out);
    p.pop_back();
  }
}

Tree build_from(const std::map<Position, std::string>& m, Position& p) {
  auto it = m.find(p);
  if (it == m.end()) throw Error(ErrorKind::MalformedDocument, "position map is not prefix closed");
  Tree t{it->second, {}};
  for (int i = 0;; ++i) {
    p.push_back(i);
    bool present = m.count(p) > 0;
    if (present) t.children.push_back(build_from(m, p));
    p.pop_back();
    if (!present) break;
  }
  return t;
}

int diff_rec(const Tree& a, const Tree& b, int level) {
  if (a.symbol != b.symbol || a.children.size() != b.children.size()) return level + 1;
  int best = -1;
  for (size_t i = 0; i < a.children.size(); ++i) {
    int d = diff_rec(a.children[i], b.children[i], level + 1);
    if (d >= 0 && (best < 0 || d < best)) best = d;
  }
  return best;
}

}  // namespace

Tree parse_tree(const std::string& text) { return TreeReader(text).read(); }

std::map<Position, std::string> positions(const Tree& t) {
  std::map<Position, std::string> out;
  Position p;
  collect_positions(t, p, out);
  return out;
}

Tree from_positions(const std::map<Position, std::string>& m) {
  Position p;
  Tree t = build_from(m, p);
  if (positions(t).size() != m.size())
    throw Error(ErrorKind::MalformedDocument, "position map is not a tree");
  return t;
}

int tree_height(const Tree& t) {
  int h = 0;
  for (const auto& c : t.children) h = std::max(h, tree_height(c) + 1);
  return h;
}

size_t tree_size(const Tree& t) {
  size_t n = 1;
  for (const auto& c : t.children) n += tree_size(c);
  return n;
}

bool contains_symbol(const Tree& t, const std::string& symbol) {
  return min_depth_of(t, symbol) >= 0;
}

int min_depth_of(const Tree& t, const std::string& symbol) {
  if (t.symbol == symbol) return 0;
  int best = -1;
  for (const auto& c : t.children) {
    int d = min_depth_of(c, symbol);
    if (d >= 0 && (best < 0 || d + 1 < best)) best = d + 1;
  }
  return best;
}

Tree truncate(const Tree& t, int n) {
  if (n <= 0) return Tree::star();
  Tree r{t.symbol, {}};
  r.children.reserve(t.children.size());
  for (const auto& c : t.children) r.children.push_back(truncate(c, n - 1));
  return r;
}

int first_difference(const Tree& a, const Tree& b) { return diff_rec(a, b, 0); }

double distance(const Tree& a, const Tree& b) {
  int g = first_difference(a, b);
  return g < 0 ? 0.0 : std::ldexp(1.0, -g);
}

bool compatible(const Tree& a, const Tree& b) {
  if (a.is_star() || b.is_star()) return true;
  if (a.symbol != b.symbol || a.children.size() != b.children.size()) return false;
  for (size_t i = 0; i < a.children.size(); ++i)
    if (!compatible(a.children[i], b.children[i])) return false;
  return true;
}

Tree tree_substitute(const Tree& t, const std::string& x, const Tree& s) {
  return tree_substitute(t, std::map<std::string, Tree>{{x, s}});
}

Tree tree_substitute(const Tree& t, const std::map<std::string, Tree>& s) {
  if (t.children.empty()) {
    auto it = s.find(t.symbol);
    return it == s.end() ? t : it->second;
  }
  Tree r{t.symbol, {}};
  r.children.reserve(t.children.size());
  for (const auto& c : t.children) r.children.push_back(tree_substitute(c, s));
  return r;
}

namespace {

Tree to_tree_rec(Term t, int depth, const std::map<std::string, Tree>& vars,
                 bool unbound_as_star, int& budget) {
  if (depth <= 0) return Tree::star();
  auto sp = spine(t);
  while (sp.first->kind == TermKind::Fix) {
    if (--budget < 0)
      throw Error(ErrorKind::DepthUnreachable, "unfolding limit reached in " + term_to_string(t));
    const Term& lam = sp.first->left;
    t = beta_normalize(mk_app(substitute(lam->left, lam->name, sp.first), sp.second));
    sp = spine(t);
  }
  const Term& h = sp.first;
  const auto& args = sp.second;
  if (h->kind == TermKind::Var) {
    auto it = vars.find(h->name);
    if (it != vars.end() && args.empty()) return truncate(it->second, depth);
    if (unbound_as_star || it != vars.end()) return Tree::star();
  }
  if (h->kind == TermKind::Abs) return Tree::star();
  Tree r{h->name, {}};
  r.children.reserve(args.size());
  for (const auto& a : args)
    r.children.push_back(to_tree_rec(a, depth - 1, vars, unbound_as_star, budget));
  return r;
}

}  // namespace

Tree term_to_tree(const Term& t, int depth, const std::map<std::string, Tree>& vars,
                  bool unbound_as_star, int unfold_limit) {
  int budget = unfold_limit;
  return to_tree_rec(beta_normalize(t), depth, vars, unbound_as_star, budget);
}

Tree guarded_atom_to_tree(const Signature& sig, const Term& atom, int depth) {
  if (!free_vars(atom).empty())
    throw Error(ErrorKind::NonGroundAtom, "atom has free variables: " + term_to_string(atom));
  if (!is_guarded_atom(sig, {}, atom))
    throw Error(ErrorKind::NotGuardedAtom, "not a guarded atom: " + term_to_string(atom));
  Term cur = beta_normalize(atom);
  const int limit = 4 * depth + 64;
  for (int round = 0; round <= limit; ++round) {
    Tree snap = term_to_tree(snapshot_unchecked(cur), depth + 1, {}, false);
    int d = min_depth_of(snap, kDiamond);
    if (d < 0 || d >= depth) return truncate(snap, depth);
    cur = unfold_round(cur);
  }
  throw Error(ErrorKind::DepthUnreachable,
              "snapshot of " + term_to_string(atom) + " not determined to depth " +
                  std::to_string(depth));
}

}  // namespace cup
