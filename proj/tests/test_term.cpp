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

#include <algorithm>
#include <set>

#include "doctest.h"
#include "support.hpp"

using namespace cup;
using cup::test::iota_vars;
using cup::test::streams;
using cup::test::term;

namespace {

// de Bruijn rendering, written independently of alpha_key.
std::string debruijn(const Term& t, std::vector<std::string>& env) {
  switch (t->kind) {
    case TermKind::Var: {
      for (size_t k = env.size(); k-- > 0;)
        if (env[k] == t->name) return "#" + std::to_string(env.size() - 1 - k);
      return "v:" + t->name;
    }
    case TermKind::Const: return "c:" + t->name;
    case TermKind::App: return "(" + debruijn(t->left, env) + " " + debruijn(t->right, env) + ")";
    case TermKind::Abs: {
      env.push_back(t->name);
      std::string s = "(L " + debruijn(t->left, env) + ")";
      env.pop_back();
      return s;
    }
    case TermKind::Fix: return "(F " + debruijn(t->left, env) + ")";
  }
  return "?";
}

std::string debruijn(const Term& t) {
  std::vector<std::string> env;
  return debruijn(t, env);
}

}  // namespace

TEST_CASE("type order") {
  CHECK(type_order(Type::iota()) == 0);
  CHECK(type_order(parse_type("i -> i -> i")) == 1);
  CHECK(type_order(parse_type("(i -> i) -> i")) == 2);
  CHECK(type_to_string(parse_type("i -> i -> i")) == type_to_string(
      Type::arrow(Type::iota(), Type::arrow(Type::iota(), Type::iota()))));
}

TEST_CASE("typecheck") {
  const Signature& sig = streams().sig;
  CHECK(type_eq(typecheck(sig, {}, term("fix \\x. scons 0 x")), Type::iota()));
  CHECK(type_eq(typecheck(sig, iota_vars({"x"}), mk_var("x")), Type::iota()));
  CHECK(type_eq(typecheck(sig, {}, term("fix \\f. \\n. scons n (f (s n))")),
                parse_type("i -> i")));
  CHECK_THROWS_AS(typecheck(sig, {}, mk_app(mk_const("s"), mk_const("member"))), Error);
  CHECK_THROWS_AS(typecheck(sig, {}, mk_const("unknown")), Error);
}

TEST_CASE("first-order signature check") {
  CHECK(is_first_order_signature(parse_program("const f : i -> i -> i. const p : i -> o.").sig));
  CHECK_THROWS_AS(parse_program("const g : (i -> o) -> o."), Error);
}

TEST_CASE("free variables and subterms") {
  CHECK(free_vars(term("\\x. scons x y", iota_vars({"y"}))) == std::set<std::string>{"y"});
  CHECK(free_vars(term("fix \\f. \\n. scons n (f (s n))")).empty());
  std::set<std::string> keys;
  for (const auto& s : subterms(term("scons 0 nil"))) keys.insert(alpha_key(s));
  for (const char* want : {"0", "nil", "scons", "scons 0", "scons 0 nil"})
    CHECK(keys.count(alpha_key(term(want))) == 1);
}

TEST_CASE("substitution") {
  Context xy = iota_vars({"x", "y"});
  Term t = term("member x [x | y]", xy);
  t = substitute(substitute(t, "x", term("0")), "y", term("nil"));
  CHECK(alpha_eq(t, term("member 0 [0 | nil]")));
  CHECK(alpha_eq(substitute(mk_var("x"), "x", term("s 0")), term("s 0")));

  Context fy{{"x", parse_type("i -> i")}, {"y", parse_type("i -> i")}};
  Term lam = mk_abs("y", Type::iota(), mk_app(mk_var("x"), mk_var("y")));
  Term r = substitute(lam, "x", mk_var("y"));
  REQUIRE(r->kind == TermKind::Abs);
  CHECK(r->name != "y");
  CHECK(alpha_eq(r, mk_abs("z", Type::iota(), mk_app(mk_var("y"), mk_var("z")))));
  CHECK(free_vars(r) == std::set<std::string>{"y"});
}

TEST_CASE("alpha equivalence") {
  Term id_x = mk_abs("x", Type::iota(), mk_var("x"));
  Term id_y = mk_abs("y", Type::iota(), mk_var("y"));
  CHECK(alpha_eq(id_x, id_y));
  Term k1 = mk_abs("x", Type::iota(), mk_abs("y", Type::iota(), mk_var("x")));
  Term k2 = mk_abs("y", Type::iota(), mk_abs("x", Type::iota(), mk_var("x")));
  CHECK_FALSE(alpha_eq(k1, k2));
  CHECK(debruijn(k1) != debruijn(k2));
  Term z1 = term("fix \\x. scons 0 x");
  Term z2 = term("fix \\y. scons 0 y");
  CHECK(alpha_eq(z1, z2));
  CHECK(debruijn(z1) == debruijn(z2));
  CHECK(alpha_key(z1) == alpha_key(z2));
}

TEST_CASE("beta normalisation") {
  CHECK(alpha_eq(beta_normalize(term("(\\x. scons x nil) 0")), term("scons 0 nil")));
  Term fr0 = term("fr_str 0");
  CHECK(alpha_eq(beta_normalize(fr0), fr0));
  CHECK(is_fix_app(beta_normalize(fr0)));
  CHECK(alpha_eq(beta_normalize(term("(\\x y. member x y) 0 nil")), term("member 0 nil")));
  CHECK(is_beta_normal(beta_normalize(term("(\\x y. member x y) 0 nil"))));
}

TEST_CASE("fix unfolding") {
  CHECK(alpha_eq(fixbeta_unfold(term("z_str")), term("scons 0 z_str")));
  Context x = iota_vars({"x"});
  CHECK(alpha_eq(fixbeta_unfold(term("n_str x", x)), term("scons x (n_str x)", x)));
  Context n = iota_vars({"n"});
  CHECK(alpha_eq(fixbeta_unfold(term("fr_str n", n)), term("scons n (fr_str (s n))", n)));
  CHECK_THROWS_AS(fixbeta_unfold(term("scons 0 nil")), Error);
  Term two = term("scons z_str z_str");
  CHECK(alpha_eq(unfold_round(two), term("scons (scons 0 z_str) (scons 0 z_str)")));
  CHECK(alpha_eq(fixbeta_unfold(two), term("scons (scons 0 z_str) z_str")));
}

TEST_CASE("fixbeta equivalence") {
  Program p = parse_program(std::string(cup::test::kStreams) + "const zz : i.");
  Term a = parse_term(p, "from zz [zz | fr_str (s zz)]");
  Term b = parse_term(p, "from zz (fr_str zz)");
  CHECK(fixbeta_equiv(a, b) == Equiv::Equal);
  CHECK(fixbeta_equiv(term("bitstream (n_str 0)"), term("bitstream [0 | n_str 0]")) ==
        Equiv::Equal);
  CHECK(fixbeta_equiv(term("bit 0"), term("bit 1")) == Equiv::NotEqual);
  CHECK(fixbeta_equiv(term("bitstream z_str"), term("bitstream (n_str 1)")) == Equiv::NotEqual);
}

TEST_CASE("first-order terms") {
  const Signature& sig = streams().sig;
  CHECK(is_first_order(sig, {}, term("scons 0 nil")).ok);
  auto fx = is_first_order(sig, {}, term("fix \\x. scons 0 x"));
  CHECK_FALSE(fx.ok);
  CHECK(fx.failed_condition == 5);
  auto id = is_first_order(sig, {}, mk_abs("x", Type::iota(), mk_var("x")));
  CHECK_FALSE(id.ok);
  CHECK(id.failed_condition == 1);
}

TEST_CASE("name supply") {
  NameSupply ns("_");
  std::string a = ns.fresh("x");
  std::string b = ns.fresh("x");
  CHECK(a != b);
  CHECK(base_name(a) == "x");
  CHECK(ns.counter() == 2);
  CHECK(is_reserved_name(a));
}
