#include "chevlab/folang.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

namespace chevlab {

namespace {

struct Token {
  enum class Kind { Ident, Int, Sym, End } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Kind::Ident, std::string(s.substr(i, j - i)), i});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Kind::Int, std::string(s.substr(i, j - i)), i});
      i = j;
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Token::Kind::Sym, "->", i});
      i += 2;
    } else if (std::string_view("*^-=!&|()[],.").find(c) != std::string_view::npos) {
      out.push_back({Token::Kind::Sym, std::string(1, c), i});
      ++i;
    } else {
      throw FormulaError(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({Token::Kind::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : toks_(tokenize(s)) {}

  Formula formula_all() {
    Formula f = formula();
    expect_end();
    return f;
  }
  Term term_all() {
    Term t = term();
    expect_end();
    return t;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  bool is_sym(const char* s, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::Sym && peek(k).text == s;
  }
  [[noreturn]] void fail(const std::string& what) const { throw FormulaError(what, peek().pos); }
  void expect(const char* s) {
    if (!is_sym(s)) fail(std::string("expected '") + s + "'");
    ++i_;
  }
  void expect_end() {
    if (peek().kind != Token::Kind::End) fail("unexpected trailing input");
  }
  bool at_quantifier() const {
    return peek().kind == Token::Kind::Ident && (peek().text == "E" || peek().text == "A") &&
           peek(1).kind == Token::Kind::Ident && is_sym(".", 2);
  }

  Formula formula() {
    if (at_quantifier()) return quant();
    Formula left = disj();
    if (is_sym("->")) {
      ++i_;
      Formula f;
      f.kind = Formula::Kind::Implies;
      f.subs = {std::move(left), formula()};
      return f;
    }
    return left;
  }

  Formula quant() {
    Formula f;
    f.kind = peek().text == "E" ? Formula::Kind::Exists : Formula::Kind::Forall;
    f.name = peek(1).text;
    if (f.name == "e") fail("'e' cannot be bound");
    i_ += 3;
    f.subs = {formula()};
    return f;
  }

  Formula binary(Formula::Kind kind, const char* op, Formula (Parser::*next)()) {
    Formula left = (this->*next)();
    while (is_sym(op)) {
      ++i_;
      Formula f;
      f.kind = kind;
      f.subs = {std::move(left), (this->*next)()};
      left = std::move(f);
    }
    return left;
  }
  Formula disj() { return binary(Formula::Kind::Or, "|", &Parser::conj); }
  Formula conj() { return binary(Formula::Kind::And, "&", &Parser::unary); }

  Formula unary() {
    if (is_sym("!")) {
      ++i_;
      Formula f;
      f.kind = Formula::Kind::Not;
      f.subs = {unary()};
      return f;
    }
    if (at_quantifier()) return quant();
    if (is_sym("(")) {
      const std::size_t save = i_;
      try {
        ++i_;
        Formula f = formula();
        expect(")");
        if (!is_sym("=") && !is_sym("*") && !is_sym("^")) return f;
      } catch (const FormulaError&) {
      }
      i_ = save;
      return equation();
    }
    if (peek().kind == Token::Kind::Ident && peek().text != "e" && is_sym("(", 1)) {
      Formula f;
      f.kind = Formula::Kind::Pred;
      f.name = peek().text;
      i_ += 2;
      f.terms.push_back(term());
      while (is_sym(",")) {
        ++i_;
        f.terms.push_back(term());
      }
      expect(")");
      return f;
    }
    return equation();
  }

  Formula equation() {
    Formula f;
    f.kind = Formula::Kind::Eq;
    f.terms.push_back(term());
    expect("=");
    f.terms.push_back(term());
    return f;
  }

  Term term() {
    Term left = post();
    while (is_sym("*")) {
      ++i_;
      Term t;
      t.kind = Term::Kind::Mul;
      t.args = {std::move(left), post()};
      left = std::move(t);
    }
    return left;
  }

  Term post() {
    Term t = prim();
    while (is_sym("^")) {
      ++i_;
      bool negative = false;
      if (is_sym("-")) {
        negative = true;
        ++i_;
      }
      if (peek().kind != Token::Kind::Int) fail("expected exponent");
      long k = std::stol(peek().text);
      ++i_;
      Term p;
      if (negative && k == 1) {
        p.kind = Term::Kind::Inv;
      } else {
        p.kind = Term::Kind::Pow;
        p.exponent = negative ? -k : k;
      }
      p.args = {std::move(t)};
      t = std::move(p);
    }
    return t;
  }

  Term prim() {
    Term t;
    if (peek().kind == Token::Kind::Ident) {
      if (peek().text == "e") {
        t.kind = Term::Kind::Identity;
      } else {
        t.kind = Term::Kind::Name;
        t.name = peek().text;
      }
      ++i_;
      return t;
    }
    if (is_sym("(")) {
      ++i_;
      t = term();
      expect(")");
      return t;
    }
    if (is_sym("[")) {
      ++i_;
      t.kind = Term::Kind::Comm;
      t.args.push_back(term());
      expect(",");
      t.args.push_back(term());
      expect("]");
      return t;
    }
    fail("expected a term");
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

int precedence(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Implies: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    case Formula::Kind::Not: return 4;
    default: return 5;
  }
}

bool is_quant(const Formula& f) {
  return f.kind == Formula::Kind::Exists || f.kind == Formula::Kind::Forall;
}

// A quantifier is printed bare only where its body may extend to the end.
std::string print_f(const Formula& f, bool tail);

std::string wrap(const Formula& f, bool parens, bool tail) {
  if (is_quant(f) && !tail) parens = true;
  return parens ? "(" + print_f(f, true) + ")" : print_f(f, tail);
}

std::string print_f(const Formula& f, bool tail) {
  switch (f.kind) {
    case Formula::Kind::Eq:
      return print(f.terms[0]) + " = " + print(f.terms[1]);
    case Formula::Kind::Pred: {
      std::string s = f.name + "(";
      for (std::size_t i = 0; i < f.terms.size(); ++i) s += (i ? "," : "") + print(f.terms[i]);
      return s + ")";
    }
    case Formula::Kind::Not:
      return "!" + wrap(f.subs[0], precedence(f.subs[0]) < 4, tail);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      const int p = precedence(f);
      const char* op = f.kind == Formula::Kind::And ? " & " : " | ";
      return wrap(f.subs[0], precedence(f.subs[0]) < p, false) + op +
             wrap(f.subs[1], precedence(f.subs[1]) <= p, tail);
    }
    case Formula::Kind::Implies:
      return wrap(f.subs[0], precedence(f.subs[0]) <= 1, false) + " -> " + wrap(f.subs[1], false, tail);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      return std::string(f.kind == Formula::Kind::Exists ? "E " : "A ") + f.name + ". " +
             print_f(f.subs[0], tail);
  }
  return {};
}

void collect_free(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out);

void collect_free(const Term& t, const std::vector<std::string>& bound, std::vector<std::string>& out) {
  if (t.kind == Term::Kind::Name) {
    if (std::find(bound.begin(), bound.end(), t.name) == bound.end() &&
        std::find(out.begin(), out.end(), t.name) == out.end())
      out.push_back(t.name);
    return;
  }
  for (const auto& a : t.args) collect_free(a, bound, out);
}

void collect_free(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
  for (const auto& t : f.terms) collect_free(t, bound, out);
  if (is_quant(f)) {
    bound.push_back(f.name);
    collect_free(f.subs[0], bound, out);
    bound.pop_back();
    return;
  }
  for (const auto& s : f.subs) collect_free(s, bound, out);
}

}  // namespace

Term parse_term(std::string_view text) { return Parser(text).term_all(); }
Formula parse_formula(std::string_view text) { return Parser(text).formula_all(); }

std::string print(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Name: return t.name;
    case Term::Kind::Identity: return "e";
    case Term::Kind::Mul: {
      const Term& r = t.args[1];
      return print(t.args[0]) + "*" + (r.kind == Term::Kind::Mul ? "(" + print(r) + ")" : print(r));
    }
    case Term::Kind::Inv:
    case Term::Kind::Pow: {
      const Term& a = t.args[0];
      std::string base = a.kind == Term::Kind::Mul ? "(" + print(a) + ")" : print(a);
      return base + (t.kind == Term::Kind::Inv ? "^-1" : "^" + std::to_string(t.exponent));
    }
    case Term::Kind::Comm: return "[" + print(t.args[0]) + "," + print(t.args[1]) + "]";
  }
  return {};
}

std::string print(const Formula& f) { return print_f(f, true); }

std::vector<std::string> free_names(const Formula& f) {
  std::vector<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::vector<std::string> read_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RingError("cannot read formula file " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace chevlab
