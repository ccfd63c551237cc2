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

#include "cup/proof_io.hpp"

#include <json.hpp>

#include "cup/parser.hpp"

namespace cup {

using json = nlohmann::ordered_json;

namespace {

json node_to_json(const Program& p, const ProofTree& t) {
  const Sequent& s = t->sequent;
  json sig = json::array();
  for (const auto& [n, ty] : s.eigen) sig.push_back({{"name", n}, {"type", type_to_string(ty)}});
  json prog = json::array();
  for (const auto& e : s.additions)
    prog.push_back({{"role", role_tag(e.role)}, {"formula", pretty_formula(p, e.formula)}});
  json kids = json::array();
  for (const auto& c : t->children) kids.push_back(node_to_json(p, c));
  json j;
  j["rule"] = t->rule;
  j["signature_additions"] = sig;
  j["program_additions"] = prog;
  j["focus"] = s.focus ? json(pretty_formula(p, s.focus)) : json(nullptr);
  j["goal"] = pretty_formula(p, s.goal);
  j["guarded"] = s.mode == GoalMode::Guarded;
  j["witness"] = t->witness ? json(pretty_term(p, t->witness)) : json(nullptr);
  j["children"] = kids;
  return j;
}

[[noreturn]] void malformed(const std::string& msg) {
  throw Error(ErrorKind::MalformedDocument, msg);
}

const json& field(const json& j, const char* name) {
  if (!j.is_object()) malformed("proof node is not an object");
  auto it = j.find(name);
  if (it == j.end()) malformed(std::string("proof node lacks field ") + name);
  return *it;
}

std::string text_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_string()) malformed(std::string("field ") + name + " is not a string");
  return v.get<std::string>();
}

template <typename F>
auto in_signature(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::TypeError || e.kind() == ErrorKind::UnboundConstant)
      throw Error(ErrorKind::SignatureMismatch, e.what());
    throw;
  }
}

ProofTree node_from_json(const Program& p, const json& j, bool root) {
  auto n = std::make_shared<ProofNode>();
  n->rule = text_field(j, "rule");
  Sequent& s = n->sequent;
  const json& sig = field(j, "signature_additions");
  if (!sig.is_array()) malformed("signature_additions is not an array");
  for (const auto& e : sig) {
    std::string name = text_field(e, "name");
    TypePtr ty;
    try {
      ty = parse_type(text_field(e, "type"));
    } catch (const Error& err) {
      malformed(std::string("bad type for ") + name + ": " + err.what());
    }
    if (p.sig.has(name) || p.defs.count(name))
      throw Error(ErrorKind::SignatureMismatch, "eigenvariable " + name + " clashes with the program");
    s.eigen.emplace_back(name, ty);
  }
  const json& prog = field(j, "program_additions");
  if (!prog.is_array()) malformed("program_additions is not an array");
  for (const auto& e : prog) {
    auto role = parse_role_tag(text_field(e, "role"));
    if (!role) malformed("unknown role " + text_field(e, "role"));
    std::string text = text_field(e, "formula");
    s.additions.push_back({*role, in_signature([&] { return parse_formula(p, text, s.eigen); })});
  }
  const json& focus = field(j, "focus");
  if (!focus.is_null()) {
    if (!focus.is_string()) malformed("focus is not a string");
    std::string text = focus.get<std::string>();
    s.focus = in_signature([&] { return parse_formula(p, text, s.eigen); });
  }
  std::string goal = text_field(j, "goal");
  s.goal = in_signature([&] { return parse_formula(p, goal, s.eigen); });
  const json& guarded = field(j, "guarded");
  if (!guarded.is_boolean()) malformed("guarded is not a boolean");
  if (root && n->rule == rules::kCoFix)
    s.mode = GoalMode::Coinductive;
  else
    s.mode = guarded.get<bool>() ? GoalMode::Guarded : GoalMode::Plain;
  const json& w = field(j, "witness");
  if (!w.is_null()) {
    if (!w.is_string()) malformed("witness is not a string");
    std::string text = w.get<std::string>();
    n->witness = in_signature([&] { return parse_term(p, text, s.eigen); });
  }
  const json& kids = field(j, "children");
  if (!kids.is_array()) malformed("children is not an array");
  for (const auto& c : kids) n->children.push_back(node_from_json(p, c, false));
  if ((n->rule == rules::kForallR || n->rule == rules::kForallRG) && n->children.size() == 1 &&
      !n->children[0]->sequent.eigen.empty())
    n->eigenvariable = n->children[0]->sequent.eigen.back().first;
  return n;
}

}  // namespace

std::string export_proof(const Program& program, const ProofTree& proof) {
  return node_to_json(program, proof).dump(2) + "\n";
}

ProofTree import_proof(const Program& program, const std::string& document) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::exception& e) {
    malformed(std::string("not JSON: ") + e.what());
  }
  return node_from_json(program, j, true);
}

}  // namespace cup
