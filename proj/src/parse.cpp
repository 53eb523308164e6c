#include "nq/parse.hpp"

#include <cctype>

namespace nq {

ParseError::ParseError(std::size_t offset, const std::string& message)
    : Error("parse error at offset " + std::to_string(offset) + ": " + message), offset_(offset) {}

namespace {

enum class Tok {
  Ident, LParen, RParen, LBrack, RBrack, Comma, Dot, Semi,
  Eq, Neq, Arrow, Turnstile, Not, And, Or,
  False, Forall, Exists, Box, Dia, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Semi: return "';'";
    case Tok::Eq: return "'='";
    case Tok::Neq: return "'!='";
    case Tok::Arrow: return "'->'";
    case Tok::Turnstile: return "'=>'";
    case Tok::Not: return "'~'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::False: return "'false'";
    case Tok::Forall: return "'forall'";
    case Tok::Exists: return "'exists'";
    case Tok::Box: return "'box'";
    case Tok::Dia: return "'dia'";
    case Tok::End: return "end of input";
  }
  return "token";
}

struct Symbol {
  std::string_view text;
  Tok kind;
};

// Longest spellings first.
constexpr Symbol kSymbols[] = {
    {"->", Tok::Arrow}, {"=>", Tok::Turnstile}, {"!=", Tok::Neq},
    {"⊃", Tok::Arrow}, {"→", Tok::Arrow}, {"⇒", Tok::Turnstile}, {"≠", Tok::Neq},
    {"¬", Tok::Not}, {"∧", Tok::And}, {"∨", Tok::Or}, {"⊥", Tok::False},
    {"∀", Tok::Forall}, {"∃", Tok::Exists}, {"□", Tok::Box}, {"◇", Tok::Dia},
    {"(", Tok::LParen}, {")", Tok::RParen}, {"[", Tok::LBrack}, {"]", Tok::RBrack},
    {",", Tok::Comma}, {".", Tok::Dot}, {";", Tok::Semi}, {"=", Tok::Eq},
    {"~", Tok::Not}, {"&", Tok::And}, {"|", Tok::Or},
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < s.size() && ident_char(s[j])) ++j;
      std::string word(s.substr(i, j - i));
      Tok k = Tok::Ident;
      if (word == "false") k = Tok::False;
      else if (word == "forall") k = Tok::Forall;
      else if (word == "exists") k = Tok::Exists;
      else if (word == "box") k = Tok::Box;
      else if (word == "dia") k = Tok::Dia;
      out.push_back({k, std::move(word), i});
      i = j;
      continue;
    }
    bool matched = false;
    for (const auto& sym : kSymbols) {
      if (s.substr(i, sym.text.size()) == sym.text) {
        out.push_back({sym.kind, std::string(sym.text), i});
        i += sym.text.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(i, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  SugarFormula formula() { return implication(); }

  // Top-level nested sequent (no surrounding brackets).
  struct RawSequent {
    std::vector<Var> sig;
    std::vector<SugarFormula> ant;
    std::vector<SugarFormula> suc;
    std::vector<RawSequent> children;
  };

  RawSequent nested() {
    RawSequent r;
    r.sig = signature();
    if (peek().kind != Tok::Turnstile) {
      r.ant.push_back(formula());
      while (accept(Tok::Comma)) r.ant.push_back(formula());
    }
    expect(Tok::Turnstile);
    accept(Tok::Comma);  // tolerate "=> , [ ... ]"
    if (peek().kind == Tok::End || peek().kind == Tok::RBrack) return r;
    do {
      if (accept(Tok::LBrack)) {
        r.children.push_back(nested());
        expect(Tok::RBrack);
      } else {
        r.suc.push_back(formula());
      }
    } while (accept(Tok::Comma));
    return r;
  }

  void finish() { expect(Tok::End); }

 private:
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k) {
    if (peek().kind != k)
      throw ParseError(peek().offset, std::string("expected ") + describe(k) + ", found " + describe(peek().kind));
    return toks_[pos_++];
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(peek().offset, "expected " + what + ", found " + describe(peek().kind));
  }

  // Optional "x, y ;" prefix; backtracks when the prefix is not a signature.
  std::vector<Var> signature() {
    if (accept(Tok::Semi)) return {};
    std::size_t save = pos_;
    std::vector<Var> sig;
    while (peek().kind == Tok::Ident) {
      sig.push_back(toks_[pos_++].text);
      if (accept(Tok::Semi)) return sig;
      if (!accept(Tok::Comma)) break;
    }
    pos_ = save;
    return {};
  }

  static SugarFormula node(SugarFormula::Kind k, std::vector<SugarFormula> subs, std::vector<Var> vars = {}) {
    SugarFormula f;
    f.kind = k;
    f.subs = std::move(subs);
    f.vars = std::move(vars);
    return f;
  }

  SugarFormula implication() {
    SugarFormula lhs = disjunction();
    if (accept(Tok::Arrow)) return node(SugarFormula::Kind::Implies, {lhs, implication()});
    return lhs;
  }

  SugarFormula disjunction() {
    SugarFormula acc = conjunction();
    while (accept(Tok::Or)) acc = node(SugarFormula::Kind::Or, {acc, conjunction()});
    return acc;
  }

  SugarFormula conjunction() {
    SugarFormula acc = unary();
    while (accept(Tok::And)) acc = node(SugarFormula::Kind::And, {acc, unary()});
    return acc;
  }

  SugarFormula unary() {
    using K = SugarFormula::Kind;
    if (accept(Tok::Not)) return node(K::Not, {unary()});
    if (accept(Tok::Box)) return node(K::Box, {unary()});
    if (accept(Tok::Dia)) return node(K::Dia, {unary()});
    if (peek().kind == Tok::Forall || peek().kind == Tok::Exists) {
      K k = toks_[pos_++].kind == Tok::Forall ? K::Forall : K::Exists;
      Var x = expect(Tok::Ident).text;
      expect(Tok::Dot);
      return node(k, {implication()}, {x});
    }
    return primary();
  }

  SugarFormula primary() {
    using K = SugarFormula::Kind;
    if (accept(Tok::False)) return node(K::Bottom, {});
    if (accept(Tok::LParen)) {
      SugarFormula f = formula();
      expect(Tok::RParen);
      return f;
    }
    if (peek().kind != Tok::Ident) fail("a formula");
    std::string name = toks_[pos_++].text;
    if (name == "E" && peek().kind == Tok::Ident) return node(K::Exist, {}, {toks_[pos_++].text});
    if (accept(Tok::Eq)) return node(K::Eq, {}, {name, expect(Tok::Ident).text});
    if (accept(Tok::Neq)) return node(K::Not, {node(K::Eq, {}, {name, expect(Tok::Ident).text})});
    SugarFormula f = node(K::Pred, {});
    f.symbol = name;
    if (accept(Tok::LParen)) {
      if (!accept(Tok::RParen)) {
        f.vars.push_back(expect(Tok::Ident).text);
        while (accept(Tok::Comma)) f.vars.push_back(expect(Tok::Ident).text);
        expect(Tok::RParen);
      }
    }
    return f;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void collect_raw(const Parser::RawSequent& r, std::set<Var>& out) {
  out.insert(r.sig.begin(), r.sig.end());
  for (const auto& a : r.ant) collect_names(a, out);
  for (const auto& a : r.suc) collect_names(a, out);
  for (const auto& c : r.children) collect_raw(c, out);
}

NestedSequent expand_raw(const Parser::RawSequent& r, NameSupply& names) {
  NestedSequent s;
  s.node.sig = r.sig;
  for (const auto& a : r.ant) s.node.ant.push_back(expand_sugar(a, names));
  for (const auto& a : r.suc) s.node.suc.push_back(expand_sugar(a, names));
  for (const auto& c : r.children) s.children.push_back(expand_raw(c, names));
  return s;
}

}  // namespace

SugarFormula parse_sugar_formula(std::string_view text) {
  Parser p(text);
  SugarFormula f = p.formula();
  p.finish();
  return f;
}

Formula parse_formula(std::string_view text) { return expand_sugar(parse_sugar_formula(text)); }

NestedSequent parse_nested_sequent(std::string_view text) {
  Parser p(text);
  auto raw = p.nested();
  p.finish();
  std::set<Var> names;
  collect_raw(raw, names);
  NameSupply supply(std::move(names));
  return expand_raw(raw, supply);
}

}  // namespace nq
