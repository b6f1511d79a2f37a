#include <algorithm>
#include <cctype>

#include "pcsl/logic.hpp"

namespace pcsl::logic {

SyntaxError::SyntaxError(Pos pos, const std::string& msg)
    : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " + msg),
      pos_(pos) {}

namespace {

enum class Tok {
  kIdent, kZero, kOne,
  kLParen, kRParen, kLBracket, kRBracket, kComma, kColon, kDot,
  kAnd, kBar, kParallel, kArrow, kTilde,
  kEq, kLeq, kLt, kCaret, kStar,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  Pos pos;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::kIdent: return "identifier";
    case Tok::kZero: return "'0'";
    case Tok::kOne: return "'1'";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kLBracket: return "'['";
    case Tok::kRBracket: return "']'";
    case Tok::kComma: return "','";
    case Tok::kColon: return "':'";
    case Tok::kDot: return "'.'";
    case Tok::kAnd: return "'&'";
    case Tok::kBar: return "'|'";
    case Tok::kParallel: return "'||'";
    case Tok::kArrow: return "'->'";
    case Tok::kTilde: return "'~'";
    case Tok::kEq: return "'='";
    case Tok::kLeq: return "'<='";
    case Tok::kLt: return "'<'";
    case Tok::kCaret: return "'^'";
    case Tok::kStar: return "'*'";
    case Tok::kEnd: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const Pos pos{line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::kIdent, std::string(s.substr(i, j - i)), pos});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      const std::string num(s.substr(i, j - i));
      if (num != "0" && num != "1") throw SyntaxError(pos, "only the constants 0 and 1 are allowed, got '" + num + "'");
      out.push_back({num == "0" ? Tok::kZero : Tok::kOne, num, pos});
      advance(j - i);
      continue;
    }
    auto two = [&](const char* t) { return s.substr(i, 2) == t; };
    Tok k;
    std::size_t len = 1;
    if (two("||")) { k = Tok::kParallel; len = 2; }
    else if (two("->")) { k = Tok::kArrow; len = 2; }
    else if (two("<=")) { k = Tok::kLeq; len = 2; }
    else {
      switch (c) {
        case '(': k = Tok::kLParen; break;
        case ')': k = Tok::kRParen; break;
        case '[': k = Tok::kLBracket; break;
        case ']': k = Tok::kRBracket; break;
        case ',': k = Tok::kComma; break;
        case ':': k = Tok::kColon; break;
        case '.': k = Tok::kDot; break;
        case '&': k = Tok::kAnd; break;
        case '|': k = Tok::kBar; break;
        case '~': k = Tok::kTilde; break;
        case '=': k = Tok::kEq; break;
        case '<': k = Tok::kLt; break;
        case '^': k = Tok::kCaret; break;
        case '*': k = Tok::kStar; break;
        default: throw SyntaxError(pos, std::string("unexpected character '") + c + "'");
      }
    }
    out.push_back({k, std::string(s.substr(i, len)), pos});
    advance(len);
  }
  out.push_back({Tok::kEnd, "", {line, col}});
  return out;
}

bool is_keyword(const std::string& s) {
  return s == "A" || s == "E" || s == "v" || s == "Sk" || s == "D" || s == "C" || s == "All";
}

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Sentence sentence() {
    Sentence s;
    if (at(Tok::kLBracket)) {
      next();
      if (!at(Tok::kBar) && !at(Tok::kRBracket)) {
        s.params.push_back(binder());
        while (at(Tok::kComma)) {
          next();
          s.params.push_back(binder());
        }
      }
      for (const auto& b : s.params) scope_.push_back(b.var);
      if (at(Tok::kBar)) {
        next();
        s.has_guard = true;
        s.guard = formula();
      }
      expect(Tok::kRBracket);
    }
    s.matrix = formula();
    expect(Tok::kEnd);
    return s;
  }

private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(const char* w) const { return at(Tok::kIdent) && peek().text == w; }
  const Token& next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }

  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(peek().pos, msg); }

  const Token& expect(Tok k) {
    if (!at(k)) fail(std::string("expected ") + tok_name(k) + ", found " + describe(peek()));
    return next();
  }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::kIdent) return "'" + t.text + "'";
    return tok_name(t.kind);
  }

  std::string fresh_name() {
    if (!at(Tok::kIdent)) fail("expected a variable name, found " + describe(peek()));
    if (is_keyword(peek().text)) fail("'" + peek().text + "' is reserved");
    return next().text;
  }

  Sort sort() {
    if (!at(Tok::kIdent)) fail("expected a sort (Sk, D or All)");
    const std::string s = peek().text;
    if (s == "Sk") { next(); return Sort::kSk; }
    if (s == "D") { next(); return Sort::kD; }
    if (s == "All") { next(); return Sort::kAll; }
    fail("unknown sort '" + s + "' (expected Sk, D or All)");
  }

  Binder binder() {
    Binder b;
    b.var = fresh_name();
    if (at(Tok::kColon)) {
      next();
      b.sort = sort();
    }
    return b;
  }

  bool at_quantifier() const {
    return (at_word("A") || at_word("E")) && peek(1).kind == Tok::kIdent;
  }

  Formula formula() {
    if (at_quantifier()) return quantified();
    return implication();
  }

  Formula quantified() {
    const Pos pos = peek().pos;
    const bool all = next().text == "A";
    const Binder b = binder();
    expect(Tok::kDot);
    scope_.push_back(b.var);
    Formula body = formula();
    scope_.pop_back();
    Formula f = all ? Formula::forall(b.var, b.sort, std::move(body))
                    : Formula::exists(b.var, b.sort, std::move(body));
    f.pos = pos;
    return f;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (at(Tok::kArrow)) {
      next();
      Formula rhs = formula();
      return Formula::implies(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (at(Tok::kBar)) {
      next();
      f = Formula::disj(std::move(f), conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (at(Tok::kAnd)) {
      next();
      f = Formula::conj(std::move(f), unary());
    }
    return f;
  }

  Formula unary() {
    if (at(Tok::kTilde)) {
      const Pos pos = next().pos;
      Formula f = Formula::negate(unary());
      f.pos = pos;
      return f;
    }
    if (at_quantifier()) return quantified();
    return primary();
  }

  Formula primary() {
    if (at(Tok::kIdent) && peek(1).kind == Tok::kLParen &&
        (peek().text == "Sk" || peek().text == "D" || peek().text == "C")) {
      const Token& name = next();
      const auto k = name.text == "Sk" ? Formula::Kind::kIsSk
                     : name.text == "D" ? Formula::Kind::kIsD
                                        : Formula::Kind::kIsCentral;
      const Pos pos = name.pos;
      expect(Tok::kLParen);
      Term t = term();
      expect(Tok::kRParen);
      Formula f = Formula::pred(k, std::move(t));
      f.pos = pos;
      return f;
    }
    if (!at(Tok::kLParen)) return relation();
    // '(' opens either a bracketed term or a bracketed formula
    const std::size_t start = i_;
    try {
      return relation();
    } catch (const SyntaxError& first) {
      const std::size_t reached = furthest_;
      i_ = start;
      furthest_ = start;
      try {
        next();
        Formula f = formula();
        note();
        expect(Tok::kRParen);
        furthest_ = std::max(furthest_, reached);
        return f;
      } catch (const SyntaxError&) {
        // report whichever reading got further
        const bool first_further = reached > furthest_;
        furthest_ = std::max(furthest_, reached);
        if (first_further) throw first;
        throw;
      }
    }
  }

  Formula relation() {
    Term lhs = term();
    Formula::Kind k;
    switch (peek().kind) {
      case Tok::kEq: k = Formula::Kind::kEq; break;
      case Tok::kLeq: k = Formula::Kind::kLeq; break;
      case Tok::kLt: k = Formula::Kind::kLt; break;
      case Tok::kParallel: k = Formula::Kind::kParallel; break;
      default:
        note();
        fail("expected a relation (=, <=, <, ||), found " + describe(peek()));
    }
    next();
    Term rhs = term();
    return Formula::atom(k, std::move(lhs), std::move(rhs));
  }

  void note() { furthest_ = std::max(furthest_, i_); }

  Term term() {
    Term t = meet_term();
    while (at_word("v")) {
      next();
      t = Term::sk_join(std::move(t), meet_term());
    }
    return t;
  }

  Term meet_term() {
    Term t = postfix();
    while (at(Tok::kCaret)) {
      next();
      t = Term::meet(std::move(t), postfix());
    }
    return t;
  }

  Term postfix() {
    Term t = atom();
    while (at(Tok::kStar)) {
      next();
      t = Term::star(std::move(t));
    }
    return t;
  }

  Term atom() {
    note();
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::kZero: next(); return Term::zero();
      case Tok::kOne: next(); return Term::one();
      case Tok::kLParen: {
        next();
        Term t = term();
        note();
        expect(Tok::kRParen);
        return t;
      }
      case Tok::kIdent: {
        if (is_keyword(tok.text)) fail("'" + tok.text + "' is reserved and cannot be used as a term");
        if (std::find(scope_.begin(), scope_.end(), tok.text) == scope_.end())
          throw SyntaxError(tok.pos, "unbound variable '" + tok.text + "'");
        const Token& v = next();
        return Term::var(v.text, v.pos);
      }
      default: fail("expected a term, found " + describe(tok));
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::size_t furthest_ = 0;
  std::vector<std::string> scope_;
};

}  // namespace

Sentence parse(std::string_view text) {
  Parser p(lex(text));
  return p.sentence();
}

}  // namespace pcsl::logic
