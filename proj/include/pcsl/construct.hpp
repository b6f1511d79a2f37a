#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pcsl/algebra.hpp"
#include "pcsl/morphism.hpp"

namespace pcsl {

/// Bijection between carrier indices of a product and coordinate tuples.
/// index = sum(tuple[i] * stride[i]).
class ProductCoding {
public:
  ProductCoding() = default;
  ProductCoding(std::vector<FinPSL> factors, std::vector<std::size_t> strides);

  std::size_t arity() const { return factors_.size(); }
  const std::vector<FinPSL>& factors() const { return factors_; }
  const FinPSL& factor(std::size_t i) const { return factors_[i]; }

  std::vector<Elem> tuple(Elem index) const;
  Elem index(std::span<const Elem> tuple) const;
  Elem coord(Elem index, std::size_t i) const {
    return static_cast<Elem>((index / strides_[i]) % factors_[i].size());
  }

private:
  std::vector<FinPSL> factors_;
  std::vector<std::size_t> strides_;
};

struct Product {
  FinPSL algebra;
  ProductCoding coding;
};

/// Direct product with componentwise operations; the first factor is the
/// most significant coordinate. product({}) is the one-element algebra.
Product product(const std::vector<FinPSL>& factors, std::size_t cap = kDefaultSizeCap);

/// All subsets of t atoms: meet is intersection, star is complement. The
/// carrier index of a subset is its bitmask, and the coding has one
/// two-element factor per atom.
Product boolean_algebra(std::size_t t, std::size_t cap = kDefaultSizeCap);

/// P with a new top adjoined; the old top (label "e") becomes dense.
FinPSL hat(const FinPSL& p, std::size_t cap = kDefaultSizeCap);

/// hat(boolean_algebra(t)) for t >= 1 and the two-element algebra for t = 0.
FinPSL f_hat(std::size_t t, std::size_t cap = kDefaultSizeCap);

/// The one-element algebra.
FinPSL trivial_algebra();

struct Quotient {
  FinPSL algebra;
  /// Surjective homomorphism x -> a ^ x onto the quotient.
  Morphism nu;
  /// Quotient index -> the element a ^ x of the original carrier.
  std::vector<Elem> representative;
};

/// P / theta_a realized on {a ^ x}, with derived complement a ^ x*.
Quotient theta_quotient(const FinPSL& p, Elem a);

ElementSet skeleton(const FinPSL& p);
ElementSet dense(const FinPSL& p);
ElementSet central(const FinPSL& p);
Elem sk_join(const FinPSL& p, Elem a, Elem b);

/// Least subset containing the generators and 0 that is closed under meet
/// and star.
ElementSet sg(const FinPSL& p, const ElementSet& generators);
ElementSet sg(const FinPSL& p, std::span<const Elem> generators);

bool is_subalgebra(const FinPSL& p, const ElementSet& s);

struct Subalgebra {
  FinPSL algebra;
  /// Sub index -> parent index, increasing.
  std::vector<Elem> to_parent;
  /// Parent index -> sub index or -1.
  std::vector<int> from_parent;
};

/// The subalgebra on carrier s as a standalone algebra; labels are inherited.
/// Throws std::invalid_argument if s is not a subalgebra carrier.
Subalgebra restrict_to(const FinPSL& p, const ElementSet& s);

}  // namespace pcsl
