#include "pcsl/logic.hpp"

namespace pcsl::logic {

Term Term::var(std::string name, Pos pos) {
  Term t;
  t.kind = Kind::kVar;
  t.name = std::move(name);
  t.pos = pos;
  return t;
}
Term Term::zero() { return Term{Kind::kZero, {}, {}, {}}; }
Term Term::one() { return Term{Kind::kOne, {}, {}, {}}; }
Term Term::meet(Term a, Term b) {
  Term t;
  t.kind = Kind::kMeet;
  t.pos = a.pos;
  t.args = {std::move(a), std::move(b)};
  return t;
}
Term Term::star(Term a) {
  Term t;
  t.kind = Kind::kStar;
  t.pos = a.pos;
  t.args = {std::move(a)};
  return t;
}
Term Term::sk_join(Term a, Term b) {
  Term t;
  t.kind = Kind::kSkJoin;
  t.pos = a.pos;
  t.args = {std::move(a), std::move(b)};
  return t;
}

bool operator==(const Term& a, const Term& b) {
  return a.kind == b.kind && a.name == b.name && a.args == b.args;
}

const char* sort_name(Sort s) {
  switch (s) {
    case Sort::kAll: return "All";
    case Sort::kSk: return "Sk";
    case Sort::kD: return "D";
  }
  return "?";
}

Formula Formula::atom(Kind k, Term a, Term b) {
  Formula f;
  f.kind = k;
  f.pos = a.pos;
  f.terms = {std::move(a), std::move(b)};
  return f;
}
Formula Formula::pred(Kind k, Term a) {
  Formula f;
  f.kind = k;
  f.pos = a.pos;
  f.terms = {std::move(a)};
  return f;
}
namespace {
Formula binary(Formula::Kind k, Formula a, Formula b) {
  Formula f;
  f.kind = k;
  f.pos = a.pos;
  f.subs = {std::move(a), std::move(b)};
  return f;
}
Formula quant(Formula::Kind k, std::string var, Sort s, Formula body) {
  Formula f;
  f.kind = k;
  f.var = std::move(var);
  f.sort = s;
  f.subs = {std::move(body)};
  return f;
}
}  // namespace
Formula Formula::conj(Formula a, Formula b) { return binary(Kind::kAnd, std::move(a), std::move(b)); }
Formula Formula::disj(Formula a, Formula b) { return binary(Kind::kOr, std::move(a), std::move(b)); }
Formula Formula::implies(Formula a, Formula b) {
  return binary(Kind::kImplies, std::move(a), std::move(b));
}
Formula Formula::negate(Formula a) {
  Formula f;
  f.kind = Kind::kNot;
  f.pos = a.pos;
  f.subs = {std::move(a)};
  return f;
}
Formula Formula::forall(std::string var, Sort s, Formula body) {
  return quant(Kind::kForall, std::move(var), s, std::move(body));
}
Formula Formula::exists(std::string var, Sort s, Formula body) {
  return quant(Kind::kExists, std::move(var), s, std::move(body));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.kind != b.kind || a.terms != b.terms || a.subs != b.subs) return false;
  if (a.is_quantifier()) return a.var == b.var && a.sort == b.sort;
  return true;
}

Formula Sentence::closed() const {
  Formula body = has_guard ? Formula::implies(guard, matrix) : matrix;
  for (std::size_t i = params.size(); i-- > 0;)
    body = Formula::forall(params[i].var, params[i].sort, std::move(body));
  return body;
}

bool operator==(const Sentence& a, const Sentence& b) {
  if (a.params != b.params || a.has_guard != b.has_guard || !(a.matrix == b.matrix)) return false;
  return !a.has_guard || a.guard == b.guard;
}

// ---- printing -----------------------------------------------------------

namespace {

int term_prec(const Term& t) {
  switch (t.kind) {
    case Term::Kind::kSkJoin: return 1;
    case Term::Kind::kMeet: return 2;
    case Term::Kind::kStar: return 3;
    default: return 4;
  }
}

void print_term(const Term& t, int ctx, std::string& out) {
  const int p = term_prec(t);
  const bool parens = p < ctx;
  if (parens) out += '(';
  switch (t.kind) {
    case Term::Kind::kVar: out += t.name; break;
    case Term::Kind::kZero: out += '0'; break;
    case Term::Kind::kOne: out += '1'; break;
    case Term::Kind::kStar:
      print_term(t.args[0], 3, out);
      out += '*';
      break;
    case Term::Kind::kMeet:
    case Term::Kind::kSkJoin:
      print_term(t.args[0], p, out);
      out += t.kind == Term::Kind::kMeet ? " ^ " : " v ";
      print_term(t.args[1], p + 1, out);
      break;
  }
  if (parens) out += ')';
}

int formula_prec(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::kForall:
    case Formula::Kind::kExists: return 0;
    case Formula::Kind::kImplies: return 1;
    case Formula::Kind::kOr: return 2;
    case Formula::Kind::kAnd: return 3;
    case Formula::Kind::kNot: return 4;
    default: return 5;
  }
}

const char* relop(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::kEq: return " = ";
    case Formula::Kind::kLeq: return " <= ";
    case Formula::Kind::kLt: return " < ";
    case Formula::Kind::kParallel: return " || ";
    default: return " ? ";
  }
}

// Quantifiers extend to the right, so they are bracketed unless they sit
// where nothing can follow them.
void print_formula(const Formula& f, int ctx, bool tail, std::string& out) {
  const int p = formula_prec(f);
  const bool parens = f.is_quantifier() ? !tail : p < ctx;
  if (parens) {
    out += '(';
    tail = true;
  }
  switch (f.kind) {
    case Formula::Kind::kEq:
    case Formula::Kind::kLeq:
    case Formula::Kind::kLt:
    case Formula::Kind::kParallel:
      print_term(f.terms[0], 0, out);
      out += relop(f.kind);
      print_term(f.terms[1], 0, out);
      break;
    case Formula::Kind::kIsSk:
    case Formula::Kind::kIsD:
    case Formula::Kind::kIsCentral:
      out += f.kind == Formula::Kind::kIsSk ? "Sk(" : f.kind == Formula::Kind::kIsD ? "D(" : "C(";
      print_term(f.terms[0], 0, out);
      out += ')';
      break;
    case Formula::Kind::kNot:
      out += '~';
      // atoms are bracketed for readability
      print_formula(f.subs[0], 5 + f.subs[0].is_atom(), tail, out);
      break;
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr:
      print_formula(f.subs[0], p, false, out);
      out += f.kind == Formula::Kind::kAnd ? " & " : " | ";
      print_formula(f.subs[1], p + 1, tail, out);
      break;
    case Formula::Kind::kImplies:
      print_formula(f.subs[0], 2, false, out);
      out += " -> ";
      print_formula(f.subs[1], 1, tail, out);
      break;
    case Formula::Kind::kForall:
    case Formula::Kind::kExists:
      out += f.kind == Formula::Kind::kForall ? "A " : "E ";
      out += f.var;
      if (f.sort != Sort::kAll) {
        out += ':';
        out += sort_name(f.sort);
      }
      out += ". ";
      print_formula(f.subs[0], 0, true, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string print(const Term& t) {
  std::string out;
  print_term(t, 0, out);
  return out;
}

std::string print(const Formula& f) {
  std::string out;
  print_formula(f, 0, true, out);
  return out;
}

std::string print(const Sentence& s) {
  std::string out;
  if (!s.params.empty() || s.has_guard) {
    out += '[';
    for (std::size_t i = 0; i < s.params.size(); ++i) {
      if (i) out += ", ";
      out += s.params[i].var;
      if (s.params[i].sort != Sort::kAll) {
        out += ':';
        out += sort_name(s.params[i].sort);
      }
    }
    if (s.has_guard) {
      out += " | ";
      print_formula(s.guard, 0, true, out);
    }
    out += "] ";
  }
  print_formula(s.matrix, 0, true, out);
  return out;
}

// ---- transforms ---------------------------------------------------------

QuantifierCounts quantifier_counts(const Formula& f) {
  QuantifierCounts c;
  if (f.kind == Formula::Kind::kForall) ++c.forall;
  if (f.kind == Formula::Kind::kExists) ++c.exists;
  for (const auto& s : f.subs) {
    const auto d = quantifier_counts(s);
    c.forall += d.forall;
    c.exists += d.exists;
  }
  return c;
}

namespace {

Term expand_term(const Term& t) {
  Term out = t;
  for (auto& a : out.args) a = expand_term(a);
  if (out.kind == Term::Kind::kSkJoin) {
    Term joined = Term::star(Term::meet(Term::star(out.args[0]), Term::star(out.args[1])));
    joined.pos = t.pos;
    return joined;
  }
  return out;
}

}  // namespace

Formula expand_sk_join(const Formula& f) {
  Formula out = f;
  for (auto& t : out.terms) t = expand_term(t);
  for (auto& s : out.subs) s = expand_sk_join(s);
  return out;
}

Sentence expand_sk_join(const Sentence& s) {
  Sentence out = s;
  if (out.has_guard) out.guard = expand_sk_join(out.guard);
  out.matrix = expand_sk_join(out.matrix);
  return out;
}

Formula relax_sorts(const Formula& f) {
  Formula out = f;
  for (auto& s : out.subs) s = relax_sorts(s);
  if (out.is_quantifier() && out.sort != Sort::kAll) {
    const auto k = out.sort == Sort::kSk ? Formula::Kind::kIsSk : Formula::Kind::kIsD;
    Formula member = Formula::pred(k, Term::var(out.var));
    Formula body = std::move(out.subs[0]);
    out.subs[0] = out.kind == Formula::Kind::kForall ? Formula::implies(std::move(member), std::move(body))
                                                     : Formula::conj(std::move(member), std::move(body));
    out.sort = Sort::kAll;
  }
  return out;
}

Sentence relax_sorts(const Sentence& s) {
  // parameters keep their sorts: they are inputs, not quantifiers
  Sentence out = s;
  if (out.has_guard) out.guard = relax_sorts(out.guard);
  out.matrix = relax_sorts(out.matrix);
  return out;
}

}  // namespace pcsl::logic
