#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pcsl/algebra.hpp"

namespace pcsl::logic {

/// 1-based source position; ignored by equality.
struct Pos {
  int line = 0;
  int col = 0;
};

struct Term {
  enum class Kind { kVar, kZero, kOne, kMeet, kStar, kSkJoin };
  Kind kind = Kind::kZero;
  std::string name;  // kVar only
  std::vector<Term> args;
  Pos pos;

  static Term var(std::string name, Pos pos = {});
  static Term zero();
  static Term one();
  static Term meet(Term a, Term b);
  static Term star(Term a);
  static Term sk_join(Term a, Term b);

  friend bool operator==(const Term& a, const Term& b);
};

enum class Sort { kAll, kSk, kD };
const char* sort_name(Sort s);

struct Formula {
  enum class Kind {
    kEq, kLeq, kLt, kParallel,  // binary atoms over two terms
    kIsSk, kIsD, kIsCentral,    // unary atoms over one term
    kAnd, kOr, kImplies, kNot,
    kForall, kExists,
  };
  Kind kind = Kind::kEq;
  std::vector<Term> terms;
  std::vector<Formula> subs;
  std::string var;  // quantifiers only
  Sort sort = Sort::kAll;
  Pos pos;

  bool is_atom() const { return kind <= Kind::kIsCentral; }
  bool is_quantifier() const { return kind == Kind::kForall || kind == Kind::kExists; }

  static Formula atom(Kind k, Term a, Term b);
  static Formula pred(Kind k, Term a);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula negate(Formula a);
  static Formula forall(std::string var, Sort s, Formula body);
  static Formula exists(std::string var, Sort s, Formula body);

  friend bool operator==(const Formula& a, const Formula& b);
};

struct Binder {
  std::string var;
  Sort sort = Sort::kAll;
  friend bool operator==(const Binder&, const Binder&) = default;
};

/// A closed formula, or a matrix with explicit parameters and an optional
/// guard written `[x:Sk, y:D | guard] matrix`. The closed reading of the
/// latter is  A params. guard -> matrix.
struct Sentence {
  std::vector<Binder> params;
  bool has_guard = false;
  Formula guard;
  Formula matrix;

  Formula closed() const;
  friend bool operator==(const Sentence& a, const Sentence& b);
};

class SyntaxError : public std::runtime_error {
public:
  SyntaxError(Pos pos, const std::string& msg);
  Pos pos() const { return pos_; }

private:
  Pos pos_;
};

/// Parses the sentence grammar (see docs/dsl.md). `#` starts a comment.
/// Throws SyntaxError for malformed text and for unbound variables.
Sentence parse(std::string_view text);

std::string print(const Term& t);
std::string print(const Formula& f);
/// parse(print(s)) == s.
std::string print(const Sentence& s);

struct QuantifierCounts {
  std::size_t forall = 0;
  std::size_t exists = 0;
};
QuantifierCounts quantifier_counts(const Formula& f);

/// Replaces every a v b by (a* ^ b*)*.
Formula expand_sk_join(const Formula& f);
Sentence expand_sk_join(const Sentence& s);

/// Replaces sorted quantifiers by unsorted ones with a membership guard:
/// A x:Sk. p  becomes  A x. Sk(x) -> p,  E x:D. p  becomes  E x. D(x) & p.
Formula relax_sorts(const Formula& f);
Sentence relax_sorts(const Sentence& s);

// ---- evaluation ---------------------------------------------------------

enum class Strategy {
  /// Stops quantifier sweeps as soon as the verdict is known and checks
  /// premise conjuncts as soon as their variables are bound.
  kShortCircuit,
  /// Visits every assignment and evaluates every subformula.
  kFullSweep,
};

struct EvalOptions {
  Strategy strategy = Strategy::kShortCircuit;
};

struct Binding {
  std::string var;
  Elem value = 0;
  friend bool operator==(const Binding&, const Binding&) = default;
};

enum class AssignmentRole { kNone, kWitness, kCounterexample };
const char* role_name(AssignmentRole r);

struct EvalResult {
  bool value = false;
  /// For a false sentence led by universals: the first assignment to that
  /// leading block falsifying the rest. For a true sentence led by
  /// existentials: the first satisfying assignment to that block.
  std::vector<Binding> assignment;
  AssignmentRole role = AssignmentRole::kNone;
};

EvalResult eval(const FinPSL& p, const Sentence& s, const EvalOptions& opts = {});
EvalResult eval(const FinPSL& p, const Formula& closed, const EvalOptions& opts = {});

struct InstanceResult {
  bool guard = true;
  bool matrix = false;
  /// guard -> matrix
  bool value() const { return !guard || matrix; }
};

/// Evaluates guard and matrix with the parameters bound to `values` (in the
/// order of s.params). Throws std::invalid_argument on arity mismatch.
InstanceResult eval_instance(const FinPSL& p, const Sentence& s, const std::vector<Elem>& values,
                             const EvalOptions& opts = {});

// ---- shipped sentences --------------------------------------------------

/// AC1..AC4, EC1..EC5, PHI1..PHI5.
const std::vector<std::string>& sentence_names();
/// AC1..AC4, EC1..EC5.
const std::vector<std::string>& axiom_names();
/// Source text of a shipped sentence; throws std::out_of_range for unknown names.
const std::string& sentence_text(const std::string& name);
/// Parsed shipped sentence; throws std::out_of_range for unknown names.
Sentence axiom(const std::string& name);

}  // namespace pcsl::logic
