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

// Serial against OpenMP kernels of the model approximation.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <random>
#include <string>

#include "cup/parser.hpp"
#include "cup/semantics.hpp"

using namespace cup;

namespace {

template <class F>
double time_ms(F&& f, int reps) {
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

// A finite program: n constants, binary predicates linked by random
// Horn clauses.
Program random_finite(int constants, int preds, int clauses, unsigned seed) {
  std::mt19937 rng(seed);
  std::string text;
  for (int c = 0; c < constants; ++c) text += "const c" + std::to_string(c) + " : i.\n";
  for (int p = 0; p < preds; ++p) text += "const q" + std::to_string(p) + " : i -> i -> o.\n";
  auto pred = [&] { return "q" + std::to_string(rng() % preds); };
  const char* vars[] = {"x", "y", "z"};
  auto var = [&] { return std::string(vars[rng() % 3]); };
  for (int i = 0; i < clauses; ++i) {
    std::string body = pred() + " " + var() + " " + var();
    if (rng() % 2) body += " /\\ " + pred() + " " + var() + " " + var();
    text += "forall x y z. " + body + " => " + pred() + " x y.\n";
  }
  for (int c = 0; c < constants; ++c)
    text += "q0 c" + std::to_string(c) + " c" + std::to_string((c + 1) % constants) + ".\n";
  return parse_program(text);
}

void row(const char* name, const Program& p, int depth, int reps) {
  InstanceConfig ic;
  Grounding g = build_grounding(p, depth, ic);
  Grounding gs = g, gp = g;
  double ms_fill_s = time_ms([&] { serial::fill_matchers(gs); }, reps);
  double ms_fill_p = time_ms([&] { fill_matchers(gp, true); }, reps);
  std::vector<char> rs, rp;
  double ms_gfp_s = time_ms([&] { rs = serial::solve_gfp(gs); }, reps);
  double ms_gfp_p = time_ms([&] { rp = solve_gfp(gp, true); }, reps);
  bool same = gs.matchers == gp.matchers && rs == rp;
  std::printf("%-18s %7zu %10.2f %10.2f %10.2f %10.2f  %s\n", name, g.atoms.size(), ms_fill_s,
              ms_fill_p, ms_gfp_s, ms_gfp_p, same ? "agree" : "DISAGREE");
}

}  // namespace

int main(int argc, char** argv) {
  int reps = argc > 1 ? std::stoi(argv[1]) : 3;
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-18s %7s %10s %10s %10s %10s\n", "program", "atoms", "match/ser", "match/omp",
              "gfp/ser", "gfp/omp");
  const std::string dir = CUP_CORPUS_DIR;
  for (const char* f : {"member.cup", "bitstream.cup", "from.cup", "comember.cup"})
    row(f, load_program(dir + "/" + f), 4, reps);
  row("finite 12x6", random_finite(12, 6, 10, 1), 4, reps);
  row("finite 24x6", random_finite(24, 6, 10, 2), 4, reps);
  return 0;
}
