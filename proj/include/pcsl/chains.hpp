#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcsl/algebra.hpp"
#include "pcsl/construct.hpp"
#include "pcsl/json_io.hpp"
#include "pcsl/morphisms.hpp"

namespace pcsl {

/// Precondition failure of a chain builder.
class ChainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Product of F̂_t factors; t = 0 stands for the two-element algebra.
struct ShapeSpec {
  std::vector<std::size_t> factors;
  std::size_t size() const;
  std::string to_string() const;
  FinPSL build(std::size_t cap = kDefaultSizeCap) const;
};

struct ChainStep {
  std::string name;
  ElementSet carrier;
  ShapeSpec shape;
  /// Elements adjoined to the previous carrier (ambient indices).
  std::vector<Elem> generators;
  /// Sub index (ascending carrier order) -> index in shape.build().
  std::optional<Morphism> iso;
  bool verified = false;
  /// Set for anti-atom splitting steps: the carrier equals the closed form.
  std::optional<bool> closed_form;
};

struct ChainReport {
  std::string lemma;
  /// Position k of the working order holds original factor permutation[k].
  std::vector<std::size_t> permutation;
  std::vector<ChainStep> steps;
  bool ok = false;
  /// First failed check, empty when ok.
  std::string failure;
};

/// Chain S = T_0 <= ... <= T_2q = T for T a coded product of F̂_f(i), f(i) >= 1,
/// and S isomorphic to some F̂_s. Throws ChainError on bad input; a failed
/// verification is reported, not thrown.
ChainReport chain_ext1(const Product& t, const ElementSet& s);

/// Chain S = T_0 <= ... <= T_p = T for T = 2^p x prod F̂_f(i) (the 2s leading)
/// and S isomorphic to prod F̂_f(i).
ChainReport chain_ext2(const Product& t, const ElementSet& s);

json chain_report_to_json(const FinPSL& ambient, const ChainReport& r);

enum class ClosedForm {
  /// {((b ^ s) v (b* ^ t)) ^ d : s, t in Sk(base), d in D(base)}
  kSplit,
  /// base u {d ^ b ^ s} u {d ^ (b ^ s)*} over d in D(base) and skeletal s of
  /// base with s not below b
  kAdjoin,
};

ElementSet closed_form_sg(const FinPSL& p, const ElementSet& base, Elem b,
                          ClosedForm form = ClosedForm::kSplit);

struct AdjoinParts {
  ElementSet base;
  ElementSet meets;
  ElementSet stars;
  bool disjoint = false;
  ElementSet all() const { return base | meets | stars; }
};

AdjoinParts adjoin_parts(const FinPSL& p, const ElementSet& base, Elem b);

/// The subalgebra of T = 2 x prod F̂_f(i) whose 2-coordinate is 1 exactly
/// when the last coordinate lies above atom `atom` of its factor.
ElementSet case3_subalgebra(const Product& t, std::size_t atom);

struct Case3Result {
  /// The skeletal witness in P.
  Elem b = 0;
  /// (0, 1, ..., 1) in T.
  Elem b_bar = 0;
  ElementSet s_prime;
  /// T -> P, built piecewise; its image is S'.
  Morphism h;
  std::string direction = "T -> S'";
  HomCheck check;
  bool well_defined = false;
  bool over_s = false;
  bool onto_s_prime = false;
  bool closed_form_p = false;
  bool closed_form_t = false;
  bool disjoint_p = false;
  bool disjoint_t = false;
  bool central_bookkeeping = false;
  bool ok() const {
    return check.ok && check.injective && well_defined && over_s && onto_s_prime && closed_form_p &&
           closed_form_t && disjoint_p && disjoint_t && central_bookkeeping;
  }
};

/// Searches the least skeletal b of P that behaves towards g(S) as (0,1,...,1)
/// does towards S, with S = case3_subalgebra(t, atom) and g : S -> P given in
/// ascending order of S. Builds h : T -> sg(g(S) u {b}) and checks it.
/// Nothing is returned when no witness exists.
std::optional<Case3Result> case3_witness_and_iso(const Product& t, std::size_t atom, const FinPSL& p,
                                                 const Morphism& g);
/// P = T and g the inclusion.
std::optional<Case3Result> case3_witness_and_iso(const Product& t, std::size_t atom);

json case3_to_json(const FinPSL& p, const Case3Result& r);

}  // namespace pcsl
