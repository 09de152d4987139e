#include "ni2/parse.hpp"

#include <cctype>
#include <vector>

namespace ni2 {

namespace {

enum class Tok {
  Ident, Forall, Hyp, Inl, Inr, Case, Of,
  Arrow, OrSym, Lam, TLam, Dot, Colon, LParen, RParen,
  LBrack, RBrack, LBrace, RBrace, Bar, FatArrow, End
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_cont(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> toks;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string t) { toks.push_back({k, std::move(t), line, col}); };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') { ++i; ++line; col = 1; continue; }
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; ++col; continue; }
    int startcol = col;
    auto adv = [&](std::size_t n) { i += n; col += static_cast<int>(n); };
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') { push(Tok::Arrow, "->"); adv(2); continue; }
    if (c == '=' && i + 1 < src.size() && src[i + 1] == '>') { push(Tok::FatArrow, "=>"); adv(2); continue; }
    if (c == '\\' && i + 1 < src.size() && src[i + 1] == '/') { push(Tok::OrSym, "\\/"); adv(2); continue; }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '\\') { push(Tok::TLam, "/\\"); adv(2); continue; }
    if (c == '\\') { push(Tok::Lam, "\\"); adv(1); continue; }
    if (c == '.') { push(Tok::Dot, "."); adv(1); continue; }
    if (c == ':') { push(Tok::Colon, ":"); adv(1); continue; }
    if (c == '(') { push(Tok::LParen, "("); adv(1); continue; }
    if (c == ')') { push(Tok::RParen, ")"); adv(1); continue; }
    if (c == '[') { push(Tok::LBrack, "["); adv(1); continue; }
    if (c == ']') { push(Tok::RBrack, "]"); adv(1); continue; }
    if (c == '{') { push(Tok::LBrace, "{"); adv(1); continue; }
    if (c == '}') { push(Tok::RBrace, "}"); adv(1); continue; }
    if (c == '|') { push(Tok::Bar, "|"); adv(1); continue; }
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < src.size() && ident_cont(src[j])) ++j;
      // optional fresh-name tail "#123"
      if (j < src.size() && src[j] == '#') {
        std::size_t k = j + 1;
        while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
        if (k > j + 1) j = k;
      }
      std::string word = src.substr(i, j - i);
      Tok k = Tok::Ident;
      if (word == "forall") k = Tok::Forall;
      else if (word == "hyp") k = Tok::Hyp;
      else if (word == "inl") k = Tok::Inl;
      else if (word == "inr") k = Tok::Inr;
      else if (word == "case") k = Tok::Case;
      else if (word == "of") k = Tok::Of;
      toks.push_back({k, word, line, startcol});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }
  toks.push_back({Tok::End, "", line, col});
  return toks;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula formula() {
    Formula f = parse_formula_();
    expect(Tok::End, "end of input");
    return f;
  }

  Term term() {
    Term t = parse_term_();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  bool at(Tok k) const { return peek().kind == k; }
  Token expect(Tok k, const char* what) {
    if (!at(k)) throw ParseError(std::string("expected ") + what + ", found '" + peek().text + "'",
                                 peek().line, peek().col);
    return next();
  }

  Formula parse_formula_() {
    if (at(Tok::Forall)) {
      next();
      Token v = expect(Tok::Ident, "variable");
      expect(Tok::Dot, "'.'");
      return forall(v.text, parse_formula_());
    }
    return parse_imp();
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (at(Tok::Arrow)) {
      next();
      return imp(lhs, parse_imp());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula f = parse_fatom();
    while (at(Tok::OrSym)) {
      next();
      f = disj(f, parse_fatom());
    }
    return f;
  }

  Formula parse_fatom() {
    if (at(Tok::Ident)) return atom(next().text);
    if (at(Tok::LParen)) {
      next();
      Formula f = parse_formula_();
      expect(Tok::RParen, "')'");
      return f;
    }
    throw ParseError("expected formula, found '" + peek().text + "'", peek().line, peek().col);
  }

  Term parse_term_() {
    if (at(Tok::Lam)) {
      next();
      Token l = expect(Tok::Ident, "label");
      expect(Tok::Colon, "':'");
      Formula a = parse_formula_nested();
      expect(Tok::Dot, "'.'");
      return imp_i(l.text, a, parse_term_());
    }
    if (at(Tok::TLam)) {
      next();
      Token v = expect(Tok::Ident, "variable");
      expect(Tok::Dot, "'.'");
      return all_i(v.text, parse_term_());
    }
    if (at(Tok::Case)) return parse_case();
    return parse_app();
  }

  // formula in a term position; stops at '.' / ']' / '=>' boundaries naturally
  Formula parse_formula_nested() {
    if (at(Tok::Forall)) {
      next();
      Token v = expect(Tok::Ident, "variable");
      expect(Tok::Dot, "'.'");
      return forall(v.text, parse_formula_nested());
    }
    Formula lhs = parse_or();
    if (at(Tok::Arrow)) {
      next();
      return imp(lhs, parse_formula_nested());
    }
    return lhs;
  }

  Term parse_case() {
    expect(Tok::Case, "'case'");
    Term scrut = parse_app();
    expect(Tok::Of, "'of'");
    expect(Tok::LBrace, "'{'");
    Token l1 = expect(Tok::Ident, "label");
    expect(Tok::Colon, "':'");
    Formula t1 = parse_formula_nested();
    expect(Tok::FatArrow, "'=>'");
    Term b1 = parse_term_();
    expect(Tok::Bar, "'|'");
    Token l2 = expect(Tok::Ident, "label");
    expect(Tok::Colon, "':'");
    Formula t2 = parse_formula_nested();
    expect(Tok::FatArrow, "'=>'");
    Term b2 = parse_term_();
    expect(Tok::RBrace, "'}'");
    return or_e(scrut, l1.text, t1, b1, l2.text, t2, b2);
  }

  Term parse_app() {
    Term t = parse_primary();
    for (;;) {
      if (at(Tok::LBrack)) {
        next();
        Formula f = parse_formula_();
        expect(Tok::RBrack, "']'");
        t = all_e(t, f);
      } else if (at(Tok::Hyp) || at(Tok::Inl) || at(Tok::Inr) || at(Tok::LParen)) {
        t = imp_e(t, parse_primary());
      } else {
        return t;
      }
    }
  }

  Term parse_primary() {
    if (at(Tok::Hyp)) {
      next();
      Token l = expect(Tok::Ident, "label");
      return hyp(l.text);
    }
    if (at(Tok::Inl) || at(Tok::Inr)) {
      bool left = next().kind == Tok::Inl;
      expect(Tok::LBrack, "'['");
      Formula f = parse_formula_();
      expect(Tok::RBrack, "']'");
      Term body = parse_primary();
      return left ? or_i1(f, body) : or_i2(f, body);
    }
    if (at(Tok::LParen)) {
      next();
      Term t = parse_term_();
      expect(Tok::RParen, "')'");
      return t;
    }
    throw ParseError("expected term, found '" + peek().text + "'", peek().line, peek().col);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(const std::string& src) { return Parser(lex(src)).formula(); }

Term parse_term(const std::string& src) { return Parser(lex(src)).term(); }

}  // namespace ni2
