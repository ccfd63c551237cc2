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

// cup: command line front end for the coinductive uniform proof engine.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cup/parser.hpp"
#include "cup/proof.hpp"
#include "cup/proof_io.hpp"
#include "cup/semantics.hpp"
#include "cup/soundness.hpp"

#ifndef CUP_CORPUS_DIR
#define CUP_CORPUS_DIR "corpus"
#endif

namespace {

using json = nlohmann::ordered_json;
using namespace cup;

enum Exit { kOk = 0, kFail = 1, kInconclusive = 2, kUsage = 3 };

struct RunConfig {
  std::string program;
  std::string goal;
  std::string calculus = "co-hohh";
  int depth = 32;
  int fixbeta_bound = 8;
  int model_depth = 4;
  int word_budget = 3;
  std::string emit_proof;
  std::string proof;
  std::vector<std::string> lemma_proofs;
  std::string corpus = CUP_CORPUS_DIR;
  bool json = false;
  bool print = false;
  bool dump = false;
  bool run = false;
  std::string role = "all";
};

struct Example {
  const char* name;
  const char* file;
  const char* calculus;
  const char* goal;
  int expected;
};

const std::vector<Example>& shipped_examples() {
  static const std::vector<Example> v{
      {"member", "member.cup", "co-fohc", "member 0 [0|nil]", kOk},
      {"member-circular", "member_circular.cup", "co-fohc", "member 0 [0|nil]", kOk},
      {"bitstream", "bitstream.cup", "co-hohc", "bitstream [0|n_str 0]", kOk},
      {"from", "from.cup", "co-hohh", "forall x. from x (fr_str x)", kOk},
      {"from-atomic", "from.cup", "co-hohc", "from 0 (fr_str 0)", kInconclusive},
      {"comember", "comember.cup", "co-fohh", "forall y s. bit y => comember_bit y s", kOk},
      {"fibs", "fibs.cup", "co-hohh", "forall x y z. add x y z => fibs x y [x | fib_like y z]",
       kInconclusive},
  };
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::SyntaxError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::SyntaxError, "cannot write " + path);
  out << text;
}

Calculus calculus_of(const RunConfig& rc) {
  auto c = parse_calculus(rc.calculus);
  if (!c) throw CLI::ValidationError("--calculus", "unknown calculus " + rc.calculus);
  return *c;
}

SearchConfig search_config(const RunConfig& rc) {
  SearchConfig cfg;
  cfg.calculus = calculus_of(rc);
  cfg.depth_limit = rc.depth;
  cfg.fixbeta_bound = rc.fixbeta_bound;
  return cfg;
}

Program need_program(const RunConfig& rc) {
  if (rc.program.empty()) throw CLI::RequiredError("--program");
  return load_program(rc.program);
}

Formula need_goal(const Program& p, const RunConfig& rc) {
  if (rc.goal.empty()) throw CLI::RequiredError("--goal");
  return parse_formula(p, rc.goal);
}

Formula lemma_formula(const ProofTree& t) {
  if (!t) throw Error(ErrorKind::MalformedDocument, "empty proof");
  return t->sequent.goal;
}

LemmaStore load_lemmas(const Program& p, const RunConfig& rc) {
  LemmaStore store;
  for (const auto& path : rc.lemma_proofs) {
    ProofTree t = import_proof(p, read_file(path));
    store = promote_lemma(p, lemma_formula(t), t, store, calculus_of(rc));
  }
  return store;
}

void print_limitations(const Program& p, std::ostream& os) {
  for (const auto& n : p.notes)
    if (n.rfind("limitation", 0) == 0) os << "note: " << n << "\n";
}

std::string calculi_text(const std::set<Calculus>& cs) {
  std::string s;
  for (Calculus c : all_calculi())
    if (cs.count(c)) s += std::string(s.empty() ? "" : " ") + calculus_name(c);
  return s.empty() ? "(none)" : s;
}

json calculi_json(const std::set<Calculus>& cs) {
  json a = json::array();
  for (Calculus c : all_calculi())
    if (cs.count(c)) a.push_back(calculus_name(c));
  return a;
}

int cmd_check_syntax(const RunConfig& rc) {
  Program p = need_program(rc);
  if (rc.json) {
    json j{{"status", "ok"},
           {"clauses", p.clauses.size()},
           {"definitions", p.defs.size()},
           {"constants", p.sig.declared().size()}};
    std::cout << j.dump(2) << "\n";
  } else if (rc.print) {
    std::cout << pretty_program(p);
  } else {
    std::cout << "ok: " << p.clauses.size() << " clauses, " << p.defs.size() << " definitions, "
              << p.sig.declared().size() << " constants\n";
  }
  return kOk;
}

int cmd_classify(const RunConfig& rc) {
  Program p = need_program(rc);
  std::vector<Role> roles;
  if (rc.role == "all") roles = {Role::Clause, Role::Goal, Role::Core};
  else if (rc.role == "clause") roles = {Role::Clause};
  else if (rc.role == "goal") roles = {Role::Goal};
  else if (rc.role == "core") roles = {Role::Core};
  else throw CLI::ValidationError("--role", "expected clause, goal, core or all");

  json out = json::array();
  auto report = [&](const std::string& label, const Formula& f) {
    json entry{{"formula", label}};
    if (!rc.json) std::cout << label << "\n";
    for (Role r : roles) {
      auto cs = classify(p.sig, f, r);
      if (rc.json) entry[role_name(r)] = calculi_json(cs);
      else std::cout << "  " << role_name(r) << ": " << calculi_text(cs) << "\n";
    }
    out.push_back(entry);
  };
  if (!rc.goal.empty()) {
    report(rc.goal, need_goal(p, rc));
  } else {
    for (const auto& c : p.clauses) report(pretty_formula(p, c), c);
  }
  if (rc.json) std::cout << out.dump(2) << "\n";
  return kOk;
}

int search_command(const RunConfig& rc, bool coinductive) {
  Program p = need_program(rc);
  Formula g = need_goal(p, rc);
  SearchConfig cfg = search_config(rc);
  LemmaStore lemmas = load_lemmas(p, rc);
  SearchResult r = coinductive ? coprove(p, g, cfg, lemmas) : prove(p, lemmas, g, cfg);
  VerdictReport v = verdict_of(p, r);

  if (r.proof && !rc.emit_proof.empty()) write_file(rc.emit_proof, export_proof(p, r.proof));
  if (rc.json) {
    json j{{"status", verdict_name(v.verdict)},
           {"outcome", outcome_name(r.outcome)},
           {"calculus", calculus_name(cfg.calculus)},
           {"nodes", r.stats.nodes},
           {"max_depth", r.stats.max_depth},
           {"depth_reached", r.stats.depth_reached},
           {"proof_size", r.proof ? proof_size(r.proof) : 0},
           {"reason", v.reason}};
    if (!rc.emit_proof.empty() && r.proof) j["proof_file"] = rc.emit_proof;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << verdict_name(v.verdict) << " (" << outcome_name(r.outcome) << ", "
              << r.stats.nodes << " search nodes, depth " << r.stats.depth_reached << ")\n";
    if (r.proof && rc.emit_proof.empty()) std::cout << proof_outline(p, r.proof);
    if (r.proof && !rc.emit_proof.empty()) std::cout << "proof written to " << rc.emit_proof << "\n";
  }
  if (v.verdict != Verdict::Proved) {
    if (r.outcome == Outcome::DepthExceeded) std::cerr << v.reason << "\n";
    print_limitations(p, std::cerr);
  }
  switch (v.verdict) {
    case Verdict::Proved: return kOk;
    case Verdict::NoProof: return kFail;
    case Verdict::Inconclusive: return kInconclusive;
  }
  return kFail;
}

int cmd_check_proof(const RunConfig& rc) {
  Program p = need_program(rc);
  if (rc.proof.empty()) throw CLI::RequiredError("--proof");
  ProofTree t = import_proof(p, read_file(rc.proof));
  LemmaStore lemmas = load_lemmas(p, rc);
  CheckResult c = check(t, p, calculus_of(rc), lemmas, rc.fixbeta_bound);
  if (rc.json) {
    json j{{"status", c.ok ? "valid" : "invalid"}, {"nodes", proof_size(t)}};
    if (!c.ok) j["diagnostic"] = c.diagnostic;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (c.ok ? "valid" : "invalid") << " (" << proof_size(t) << " nodes)\n";
  }
  if (!c.ok) std::cerr << c.diagnostic << "\n";
  return c.ok ? kOk : kFail;
}

int cmd_model(const RunConfig& rc) {
  Program p = need_program(rc);
  InstanceConfig ic;
  std::optional<Tree> atom;
  if (!rc.goal.empty()) {
    Term t = parse_term(p, rc.goal);
    atom = atom_tree(p.sig, t, rc.model_depth);
    ic.seeds.push_back(*atom);
  }
  Interpretation m = gfp_approx(p, rc.model_depth, ic);
  std::optional<Membership> mem;
  if (atom) mem = member_of_model(*atom, m);
  if (rc.json) {
    json j{{"depth", m.depth}, {"atoms", m.atoms.size()}};
    if (atom) {
      j["atom"] = tree_to_string(*atom);
      j["membership"] = membership_name(*mem);
    }
    if (rc.dump) {
      json a = json::array();
      for (const auto& x : m.atoms) a.push_back(tree_to_string(x));
      j["interpretation"] = a;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    if (rc.dump) std::cout << interpretation_to_text(m);
    std::cout << m.atoms.size() << " atoms at depth " << m.depth << "\n";
    if (atom) {
      std::cout << tree_to_string(*atom) << ": " << membership_name(*mem) << "\n";
      if (*mem == Membership::InApprox)
        std::cout << "membership evidence only: agreement up to depth " << m.depth << "\n";
    }
  }
  if (mem && *mem == Membership::CertainlyOut) return kFail;
  return kOk;
}

int cmd_soundness(const RunConfig& rc) {
  Program p = need_program(rc);
  if (rc.proof.empty()) throw CLI::RequiredError("--proof");
  ProofTree t = import_proof(p, read_file(rc.proof));
  LemmaStore lemmas = load_lemmas(p, rc);
  CheckResult c = check(t, p, calculus_of(rc), lemmas, rc.fixbeta_bound);
  if (!c.ok) throw Error(ErrorKind::ProofInvalid, c.diagnostic);
  HarnessReport h = run_harness(p, t, rc.model_depth, rc.word_budget, InstanceConfig{});
  bool ok = h.postfixed && h.side_in_model && h.heads_in_model && h.counterexamples.empty();
  if (rc.json) {
    json deltas = json::array();
    for (const auto& d : h.deltas) {
      json b = json::object();
      for (const auto& [x, n] : d.bindings) b[x] = pretty_term(p, n);
      deltas.push_back({{"index", d.index}, {"bindings", b}});
    }
    json ce = json::array();
    for (const auto& x : h.counterexamples) ce.push_back(tree_to_string(x));
    json j{{"status", ok ? "verified" : "refuted"},
           {"s", h.s},
           {"deltas", deltas},
           {"depth", h.depth},
           {"word_budget", h.word_budget},
           {"words", h.words},
           {"candidate_atoms", h.candidate_atoms},
           {"model_atoms", h.model_atoms},
           {"side_in_model", h.side_in_model},
           {"postfixed", h.postfixed},
           {"heads_in_model", h.heads_in_model},
           {"counterexamples", ce}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << harness_report_text(p, h);
    std::cout << (ok ? "verified" : "refuted") << "\n";
  }
  return ok ? kOk : kFail;
}

int run_example(const RunConfig& rc, const Example& e, std::string* line) {
  Program p = load_program(rc.corpus + "/" + e.file);
  SearchConfig cfg;
  cfg.calculus = *parse_calculus(e.calculus);
  cfg.depth_limit = rc.depth;
  cfg.fixbeta_bound = rc.fixbeta_bound;
  SearchResult r = coprove(p, parse_formula(p, e.goal), cfg);
  VerdictReport v = verdict_of(p, r);
  int code = v.verdict == Verdict::Proved ? kOk
             : v.verdict == Verdict::NoProof ? kFail : kInconclusive;
  if (r.proof && !check(r.proof, p, cfg.calculus).ok) code = kFail;
  std::ostringstream os;
  os << e.name << ": " << verdict_name(v.verdict);
  if (r.proof) os << " (" << proof_size(r.proof) << " nodes)";
  os << (code == e.expected ? "" : "  UNEXPECTED");
  *line = os.str();
  return code;
}

int cmd_examples(const RunConfig& rc) {
  const auto& ex = shipped_examples();
  if (!rc.run) {
    for (const auto& e : ex)
      std::cout << e.name << "  " << e.file << "  " << e.calculus << "  " << e.goal << "\n";
    return kOk;
  }
  bool all = true;
  json out = json::array();
  for (const auto& e : ex) {
    std::string line;
    int code = run_example(rc, e, &line);
    all = all && code == e.expected;
    if (rc.json) out.push_back({{"name", e.name}, {"exit", code}, {"expected", e.expected}});
    else std::cout << line << "\n";
  }
  if (rc.json) std::cout << out.dump(2) << "\n";
  return all ? kOk : kFail;
}

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::UniverseTooLarge:
    case ErrorKind::DepthUnreachable:
    case ErrorKind::FlexibleAtomUnsupported:
      return kInconclusive;
    case ErrorKind::ProofInvalid:
    case ErrorKind::BodyNotInModel:
    case ErrorKind::NotHShaped:
      return kFail;
    default:
      return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cup: coinductive uniform proofs"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig rc;

  auto program_opt = [&](CLI::App* s) {
    s->add_option("--program,-p", rc.program, "program file")->check(CLI::ExistingFile);
  };
  auto calculus_opt = [&](CLI::App* s) {
    s->add_option("--calculus,-c", rc.calculus, "co-fohc, co-fohh, co-hohc or co-hohh")
        ->envname("CUP_CALCULUS")
        ->check(CLI::IsMember({"co-fohc", "co-fohh", "co-hohc", "co-hohh"}));
  };
  auto search_opts = [&](CLI::App* s) {
    s->add_option("--depth", rc.depth, "depth limit")->envname("CUP_DEPTH")->check(CLI::PositiveNumber);
    s->add_option("--fixbeta-bound", rc.fixbeta_bound, "fix-beta unfolding bound")
        ->envname("CUP_FIXBETA_BOUND")
        ->check(CLI::PositiveNumber);
    s->add_option("--lemma-proof", rc.lemma_proofs, "proof file of a lemma")->check(CLI::ExistingFile);
  };
  auto model_opts = [&](CLI::App* s) {
    s->add_option("--model-depth", rc.model_depth, "tree truncation depth")
        ->envname("CUP_MODEL_DEPTH")
        ->check(CLI::PositiveNumber);
  };

  auto* syntax = app.add_subcommand("check-syntax", "parse and typecheck a program");
  program_opt(syntax);
  syntax->add_flag("--print", rc.print, "pretty print the program");

  auto* cls = app.add_subcommand("classify", "calculi of a goal or of the program clauses");
  program_opt(cls);
  cls->add_option("--goal,-g", rc.goal, "formula");
  cls->add_option("--role", rc.role, "clause, goal, core or all");

  auto* prv = app.add_subcommand("prove", "uniform proof search");
  auto* cop = app.add_subcommand("coprove", "coinductive proof search from co-fix");
  for (auto* s : {prv, cop}) {
    program_opt(s);
    calculus_opt(s);
    search_opts(s);
    s->add_option("--goal,-g", rc.goal, "formula");
    s->add_option("--emit-proof", rc.emit_proof, "write the proof document here");
  }

  auto* chk = app.add_subcommand("check-proof", "check a proof document");
  program_opt(chk);
  calculus_opt(chk);
  search_opts(chk);
  chk->add_option("--proof", rc.proof, "proof document")->check(CLI::ExistingFile);

  auto* mdl = app.add_subcommand("model", "approximate the coinductive model");
  program_opt(mdl);
  model_opts(mdl);
  mdl->add_option("--goal,-g", rc.goal, "closed atom");
  mdl->add_flag("--dump", rc.dump, "print the interpretation");

  auto* snd = app.add_subcommand("soundness", "post-fixed point harness over a proof");
  program_opt(snd);
  calculus_opt(snd);
  search_opts(snd);
  model_opts(snd);
  snd->add_option("--proof", rc.proof, "proof document")->check(CLI::ExistingFile);
  snd->add_option("--word-budget", rc.word_budget, "longest word of hypothesis uses")
      ->envname("CUP_WORD_BUDGET")
      ->check(CLI::NonNegativeNumber);

  auto* exs = app.add_subcommand("examples", "list or run the shipped corpus");
  exs->add_flag("--run", rc.run, "run every entry");
  exs->add_option("--corpus", rc.corpus, "corpus directory")->check(CLI::ExistingDirectory);
  exs->add_option("--depth", rc.depth, "depth limit")->envname("CUP_DEPTH");

  app.add_flag("--json", rc.json, "machine readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*syntax) return cmd_check_syntax(rc);
    if (*cls) return cmd_classify(rc);
    if (*prv) return search_command(rc, false);
    if (*cop) return search_command(rc, true);
    if (*chk) return cmd_check_proof(rc);
    if (*mdl) return cmd_model(rc);
    if (*snd) return cmd_soundness(rc);
    if (*exs) return cmd_examples(rc);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << error_kind_name(e.kind());
    if (e.span().line > 0) std::cerr << " at " << e.span().line << ":" << e.span().column;
    std::cerr << ": " << e.what() << "\n";
    return exit_for(e);
  }
  return kUsage;
}
