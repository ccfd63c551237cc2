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

#include "cup/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "cup/guard.hpp"

namespace cup {

namespace {

enum class Tok {
  Ident, Dot, Colon, LParen, RParen, LBrack, RBrack, Bar, Comma, Semi,
  Lambda, And, Or, Imp, Arrow, Neck, Eq, End
};

struct Token {
  Tok kind;
  std::string text;
  Span span;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(const std::string& s, std::vector<std::string>* notes) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto adv = [&](size_t n) {
    for (size_t k = 0; k < n && i < s.size(); ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv(1);
      continue;
    }
    if (c == '%') {
      size_t e = s.find('\n', i);
      if (e == std::string::npos) e = s.size();
      if (notes && s.compare(i, 2, "%@") == 0) {
        std::string n = s.substr(i + 2, e - i - 2);
        size_t b = n.find_first_not_of(" \t");
        notes->push_back(b == std::string::npos ? "" : n.substr(b));
      }
      adv(e - i);
      continue;
    }
    Span sp{line, col};
    auto emit = [&](Tok k, size_t n) {
      out.push_back({k, s.substr(i, n), sp});
      adv(n);
    };
    if (ident_char(c)) {
      size_t e = i;
      while (e < s.size() && ident_char(s[e])) ++e;
      emit(Tok::Ident, e - i);
      continue;
    }
    auto starts = [&](const char* p) { return s.compare(i, std::char_traits<char>::length(p), p) == 0; };
    if (starts("/\\")) { emit(Tok::And, 2); continue; }
    if (starts("\\/")) { emit(Tok::Or, 2); continue; }
    if (starts("=>")) { emit(Tok::Imp, 2); continue; }
    if (starts("->")) { emit(Tok::Arrow, 2); continue; }
    if (starts(":-")) { emit(Tok::Neck, 2); continue; }
    switch (c) {
      case '.': emit(Tok::Dot, 1); continue;
      case ':': emit(Tok::Colon, 1); continue;
      case '(': emit(Tok::LParen, 1); continue;
      case ')': emit(Tok::RParen, 1); continue;
      case '[': emit(Tok::LBrack, 1); continue;
      case ']': emit(Tok::RBrack, 1); continue;
      case '|': emit(Tok::Bar, 1); continue;
      case ',': emit(Tok::Comma, 1); continue;
      case ';': emit(Tok::Semi, 1); continue;
      case '\\': emit(Tok::Lambda, 1); continue;
      case '=': emit(Tok::Eq, 1); continue;
      default: break;
    }
    throw Error(ErrorKind::SyntaxError, "unexpected character '" + std::string(1, c) + "'", sp);
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

bool is_keyword(const std::string& s) {
  return s == "const" || s == "def" || s == "fix" || s == "forall" || s == "exists" ||
         s == "top";
}

class Parser {
 public:
  Parser(std::vector<Token> toks, Signature sig, const std::map<std::string, Term>& defs)
      : toks_(std::move(toks)), sig_(std::move(sig)), defs_(defs) {}

  const Signature& sig() const { return sig_; }
  Signature& mutable_sig() { return sig_; }

  const Token& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(const char* w) const { return at(Tok::Ident) && peek().text == w; }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::SyntaxError, msg + " near '" + peek().text + "'", peek().span);
  }

  Token expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return take();
  }

  std::string ident(const char* what) {
    if (!at(Tok::Ident) || is_keyword(peek().text)) fail(std::string("expected ") + what);
    return take().text;
  }

  // Types

  TypePtr type() {
    TypePtr a = type_atom();
    if (at(Tok::Arrow)) {
      take();
      return Type::arrow(a, type());
    }
    return a;
  }

  TypePtr type_atom() {
    if (at(Tok::LParen)) {
      take();
      TypePtr t = type();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (at_word("i")) {
      take();
      return Type::iota();
    }
    if (at_word("o")) {
      take();
      return Type::prop();
    }
    fail("expected a type");
  }

  // Binders: x y (z w : T) [: T]

  Context binders() {
    Context out;
    for (;;) {
      if (at(Tok::LParen)) {
        take();
        std::vector<std::string> names;
        while (at(Tok::Ident)) names.push_back(ident("a variable"));
        expect(Tok::Colon, "':'");
        TypePtr t = type();
        expect(Tok::RParen, "')'");
        for (const auto& n : names) out.emplace_back(n, t);
        continue;
      }
      if (at(Tok::Ident) && !is_keyword(peek().text)) {
        out.emplace_back(ident("a variable"), nullptr);
        continue;
      }
      break;
    }
    if (out.empty()) fail("expected a bound variable");
    if (at(Tok::Colon)) {
      take();
      TypePtr t = type();
      for (auto& b : out)
        if (!b.second) b.second = t;
    }
    expect(Tok::Dot, "'.'");
    return out;
  }

  // Terms

  bool starts_aterm() const {
    if (at(Tok::LParen) || at(Tok::LBrack)) return true;
    return at(Tok::Ident) && !is_keyword(peek().text);
  }

  Term term() {
    if (at(Tok::Lambda)) return lambda();
    if (at_word("fix")) {
      Span sp = take().span;
      Term body = at(Tok::LParen) ? aterm() : term();
      if (body->kind != TermKind::Abs)
        throw Error(ErrorKind::SyntaxError, "fix body must be an abstraction", sp);
      return mk_fix(body);
    }
    return app();
  }

  Term lambda() {
    take();
    Context bs = binders();
    for (const auto& b : bs) scope_.push_back(b.first);
    Term body = term();
    for (size_t k = 0; k < bs.size(); ++k) scope_.pop_back();
    for (auto it = bs.rbegin(); it != bs.rend(); ++it) body = mk_abs(it->first, it->second, body);
    return body;
  }

  Term app() {
    if (!starts_aterm()) fail("expected a term");
    Term t = aterm();
    for (;;) {
      if (starts_aterm()) {
        t = mk_app(t, aterm());
      } else if (at(Tok::Lambda) || at_word("fix")) {
        t = mk_app(t, term());
        break;
      } else {
        break;
      }
    }
    return t;
  }

  Term aterm() {
    if (at(Tok::LParen)) {
      take();
      Term t = term();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (at(Tok::LBrack)) return list();
    Token tok = take();
    return resolve(tok);
  }

  Term list() {
    Span sp = take().span;
    if (!sig_.has("scons"))
      throw Error(ErrorKind::SyntaxError, "list syntax needs a declared constant scons", sp);
    std::vector<Term> elems;
    Term tail;
    if (at(Tok::RBrack)) {
      take();
      return nil(sp);
    }
    elems.push_back(term());
    for (;;) {
      if (at(Tok::Comma)) {
        take();
        elems.push_back(term());
        continue;
      }
      if (at(Tok::Bar)) {
        take();
        Term t = term();
        if (at(Tok::Bar)) {
          elems.push_back(t);
          continue;
        }
        tail = t;
      }
      break;
    }
    expect(Tok::RBrack, "']'");
    if (!tail) tail = nil(sp);
    for (auto it = elems.rbegin(); it != elems.rend(); ++it)
      tail = mk_app(mk_const("scons"), {*it, tail});
    return tail;
  }

  Term nil(Span sp) {
    if (!sig_.has("nil"))
      throw Error(ErrorKind::SyntaxError, "closed list syntax needs a declared constant nil", sp);
    return mk_const("nil");
  }

  Term resolve(const Token& tok) {
    const std::string& n = tok.text;
    if (tok.kind != Tok::Ident || is_keyword(n))
      throw Error(ErrorKind::SyntaxError, "unexpected '" + n + "'", tok.span);
    if (n == kDiamond)
      throw Error(ErrorKind::SyntaxError, "reserved name " + n, tok.span);
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (*it == n) return mk_var(n);
    for (const auto& v : implicit_)
      if (v == n) return mk_var(n);
    if (sig_.has(n) && !is_logical_constant(n)) return mk_const(n);
    auto d = defs_.find(n);
    if (d != defs_.end()) return d->second;
    if (implicit_ok_ && std::isupper(static_cast<unsigned char>(n[0]))) {
      implicit_.push_back(n);
      return mk_var(n);
    }
    throw Error(ErrorKind::TypeError, "unknown identifier " + n, tok.span);
  }

  // Formulas

  Formula formula() {
    if (at_word("forall") || at_word("exists")) return quantified();
    Formula l = disj();
    if (at(Tok::Imp)) {
      take();
      return f_imp(l, formula());
    }
    return l;
  }

  Formula quantified() {
    bool all = take().text == "forall";
    Context bs = binders();
    for (const auto& b : bs) scope_.push_back(b.first);
    Formula body = formula();
    for (size_t k = 0; k < bs.size(); ++k) scope_.pop_back();
    for (auto it = bs.rbegin(); it != bs.rend(); ++it)
      body = all ? f_forall(it->first, it->second, body) : f_exists(it->first, it->second, body);
    return body;
  }

  Formula disj() {
    Formula l = conj();
    while (at(Tok::Or) || (neck_ && at(Tok::Semi))) {
      take();
      l = f_or(l, conj());
    }
    return l;
  }

  Formula conj() {
    Formula l = unary();
    while (at(Tok::And) || (neck_ && at(Tok::Comma))) {
      take();
      l = f_and(l, unary());
    }
    return l;
  }

  Formula unary() {
    if (at_word("top")) {
      take();
      return f_top();
    }
    if (at_word("forall") || at_word("exists")) return quantified();
    if (at(Tok::LParen)) {
      take();
      bool saved = neck_;
      neck_ = false;
      Formula f = formula();
      neck_ = saved;
      expect(Tok::RParen, "')'");
      return f;
    }
    return f_atom(app());
  }

  Formula clause() {
    implicit_.clear();
    implicit_ok_ = true;
    Formula head = formula();
    if (at(Tok::Neck)) {
      take();
      neck_ = true;
      Formula body = formula();
      neck_ = false;
      head = f_imp(body, head);
    }
    implicit_ok_ = false;
    for (auto it = implicit_.rbegin(); it != implicit_.rend(); ++it)
      head = f_forall(*it, nullptr, head);
    implicit_.clear();
    return head;
  }

  void set_scope(const std::vector<std::string>& s) { scope_ = s; }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  Signature sig_;
  const std::map<std::string, Term>& defs_;
  std::vector<std::string> scope_;
  std::vector<std::string> implicit_;
  bool implicit_ok_ = false;
  bool neck_ = false;
};

Signature extend(const Signature& sig, const Context& extra) {
  Signature s = sig;
  for (const auto& [n, t] : extra) s.add(n, t);
  return s;
}

void check_declared_name(const std::string& n, const Signature& sig,
                         const std::map<std::string, Term>& defs, Span sp) {
  if (is_reserved_name(n)) throw Error(ErrorKind::SyntaxError, "reserved name " + n, sp);
  if (sig.has(n) || defs.count(n))
    throw Error(ErrorKind::SyntaxError, "name declared twice: " + n, sp);
}

}  // namespace

Program parse_program(const std::string& text) {
  Program prog;
  auto toks = lex(text, &prog.notes);
  Parser ps(toks, prog.sig, prog.defs);
  while (!ps.at(Tok::End)) {
    Span sp = ps.peek().span;
    if (ps.at_word("const")) {
      ps.take();
      std::vector<std::pair<std::string, Span>> names;
      while (ps.at(Tok::Ident) && !is_keyword(ps.peek().text)) {
        Span nsp = ps.peek().span;
        names.emplace_back(ps.ident("a constant name"), nsp);
      }
      if (names.empty()) ps.fail("expected a constant name");
      ps.expect(Tok::Colon, "':'");
      TypePtr t = ps.type();
      ps.expect(Tok::Dot, "'.'");
      for (const auto& [n, nsp] : names) {
        check_declared_name(n, ps.sig(), prog.defs, nsp);
        ps.mutable_sig().add(n, t);
        std::string bad;
        if (!is_first_order_signature(ps.sig(), &bad))
          throw Error(ErrorKind::NonFirstOrderSignature,
                      "constant " + bad + " : " + type_to_string(t) + " is not first order", nsp);
      }
      continue;
    }
    if (ps.at_word("def")) {
      ps.take();
      Span nsp = ps.peek().span;
      std::string n = ps.ident("a definition name");
      check_declared_name(n, ps.sig(), prog.defs, nsp);
      ps.expect(Tok::Eq, "'='");
      Term body = ps.term();
      ps.expect(Tok::Dot, "'.'");
      try {
        body = annotate(ps.sig(), {}, body);
        typecheck(ps.sig(), {}, body);
      } catch (const Error& e) {
        throw Error(ErrorKind::TypeError, std::string(e.what()), sp);
      }
      GuardReport g = is_guarded_fixed_point(ps.sig(), body);
      if (!g.guarded) {
        std::string msg = "definition " + n + " is not a guarded fixed point term";
        for (const auto& v : g.violations) msg += "; condition " + v.condition + ": " + v.location;
        throw Error(ErrorKind::GuardednessError, msg, nsp);
      }
      prog.defs[n] = body;
      prog.def_order.push_back(n);
      continue;
    }
    Formula f = ps.clause();
    ps.expect(Tok::Dot, "'.' at end of clause");
    if (!formula_free_vars(f).empty())
      throw Error(ErrorKind::TypeError, "clause has free variables", sp);
    try {
      f = annotate_formula(ps.sig(), {}, f);
    } catch (const Error& e) {
      throw Error(ErrorKind::TypeError, std::string(e.what()), sp);
    }
    prog.clauses.push_back(f);
    prog.clause_spans.push_back(sp);
  }
  prog.sig = ps.sig();
  return prog;
}

Program load_program(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::SyntaxError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

Formula parse_formula(const Program& p, const std::string& text, const Context& extra) {
  Signature sig = extend(p.sig, extra);
  Parser ps(lex(text, nullptr), sig, p.defs);
  Formula f = ps.formula();
  if (ps.at(Tok::Dot)) ps.take();
  if (!ps.at(Tok::End)) ps.fail("trailing input");
  try {
    return annotate_formula(sig, {}, f);
  } catch (const Error& e) {
    throw Error(ErrorKind::TypeError, e.what(), {1, 1});
  }
}

Term parse_term(const Program& p, const std::string& text, const Context& extra,
                const Context& vars) {
  Signature sig = extend(p.sig, extra);
  Parser ps(lex(text, nullptr), sig, p.defs);
  std::vector<std::string> scope;
  for (const auto& v : vars) scope.push_back(v.first);
  ps.set_scope(scope);
  Term t = ps.term();
  if (!ps.at(Tok::End)) ps.fail("trailing input");
  try {
    return annotate(sig, vars, t);
  } catch (const Error& e) {
    throw Error(ErrorKind::TypeError, e.what(), {1, 1});
  }
}

TypePtr parse_type(const std::string& text) {
  std::map<std::string, Term> none;
  Parser ps(lex(text, nullptr), Signature(), none);
  TypePtr t = ps.type();
  if (!ps.at(Tok::End)) ps.fail("trailing input");
  return t;
}

//------------------------------------------------------------------------------
// Pretty printing

namespace {

class Printer {
 public:
  explicit Printer(const Program& p) : p_(p) {
    for (const auto& [name, t] : p.defs) def_keys_[alpha_key(t)] = name;
    lists_ = p.sig.has("scons");
    nil_ = p.sig.has("nil");
  }

  std::string binder(const std::string& n, const TypePtr& t) const {
    if (!t || type_eq(t, Type::iota())) return n;
    return "(" + n + " : " + type_to_string(t) + ")";
  }

  bool atomic(const Term& t) const {
    if (t->kind == TermKind::Var || t->kind == TermKind::Const) return true;
    if (t->kind == TermKind::Fix && def_keys_.count(alpha_key(t))) return true;
    return is_list(t);
  }

  bool is_list(const Term& t) const {
    if (!lists_ || t->kind != TermKind::App) return false;
    auto [h, args] = spine(t);
    return h->kind == TermKind::Const && h->name == "scons" && args.size() == 2;
  }

  std::string term(const Term& t, bool use_defs = true) const {
    switch (t->kind) {
      case TermKind::Var:
      case TermKind::Const:
        return t->name;
      case TermKind::Fix: {
        if (use_defs) {
          auto it = def_keys_.find(alpha_key(t));
          if (it != def_keys_.end()) return it->second;
        }
        return "fix " + term(t->left);
      }
      case TermKind::Abs:
        return "\\" + binder(t->name, t->type) + ". " + term(t->left);
      case TermKind::App: {
        if (is_list(t)) return list(t);
        auto [h, args] = spine(t);
        std::string s = atomic(h) ? term(h) : "(" + term(h) + ")";
        for (const auto& a : args) s += " " + (atomic(a) ? term(a) : "(" + term(a) + ")");
        return s;
      }
    }
    return "";
  }

  std::string list(const Term& t) const {
    std::vector<std::string> elems;
    Term cur = t;
    while (is_list(cur)) {
      auto [h, args] = spine(cur);
      elems.push_back(term(args[0]));
      cur = args[1];
    }
    std::string s = "[";
    for (size_t i = 0; i < elems.size(); ++i) s += (i ? ", " : "") + elems[i];
    if (!(nil_ && cur->kind == TermKind::Const && cur->name == "nil")) s += " | " + term(cur);
    return s + "]";
  }

  std::string formula(const Formula& f, int prec) const {
    std::string s;
    int mine = 4;
    switch (f->kind) {
      case FormulaKind::Atom: return term(f->atom);
      case FormulaKind::Top: return "top";
      case FormulaKind::Forall:
      case FormulaKind::Exists:
        s = std::string(f->kind == FormulaKind::Forall ? "forall " : "exists ") +
            binder(f->var, f->type) + ". " + formula(f->left, 0);
        mine = 0;
        break;
      case FormulaKind::Impl:
        s = formula(f->left, 2) + " => " + formula(f->right, 0);
        mine = 1;
        break;
      case FormulaKind::Disj:
        s = formula(f->left, 2) + " \\/ " + formula(f->right, 3);
        mine = 2;
        break;
      case FormulaKind::Conj:
        s = formula(f->left, 3) + " /\\ " + formula(f->right, 4);
        mine = 3;
        break;
    }
    return mine < prec ? "(" + s + ")" : s;
  }

 private:
  const Program& p_;
  std::map<std::string, std::string> def_keys_;
  bool lists_ = false;
  bool nil_ = false;
};

}  // namespace

std::string pretty_term(const Program& p, const Term& t) { return Printer(p).term(t); }

std::string pretty_formula(const Program& p, const Formula& f) {
  return Printer(p).formula(f, 0);
}

std::string pretty_program(const Program& p) {
  Printer pr(p);
  std::string out;
  for (const auto& n : p.notes) out += "%@ " + n + "\n";
  for (const auto& n : p.sig.declared())
    out += "const " + n + " : " + type_to_string(p.sig.type_of(n)) + ".\n";
  for (const auto& n : p.def_order) out += "def " + n + " = " + pr.term(p.defs.at(n), false) + ".\n";
  for (const auto& c : p.clauses) out += pr.formula(c, 0) + ".\n";
  return out;
}

}  // namespace cup
