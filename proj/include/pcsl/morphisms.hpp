#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcsl/algebra.hpp"
#include "pcsl/morphism.hpp"

namespace pcsl {

/// Outcome of checking the preservation equations for a total map.
struct HomCheck {
  bool ok = true;
  /// "zero", "meet", "star" or "shape" for the first violated equation.
  std::string law;
  std::vector<Elem> witness;
  bool injective = false;
  bool surjective = false;
};

/// Checks f(0) = 0, f(x^y) = f(x)^f(y) and f(x*) = f(x)* in that order and
/// reports the first violation.
HomCheck is_homomorphism(const FinPSL& source, const FinPSL& target, const Morphism& m);

struct SearchOptions {
  /// Restrict candidate images by element invariants (flags, down-set sizes,
  /// star behaviour). Disabling it leaves only the equational propagation.
  bool prune = true;
};

struct SearchResult {
  std::optional<Morphism> morphism;
  /// Why nothing was found (empty when found).
  std::string reason;
  explicit operator bool() const { return morphism.has_value(); }
};

/// Isomorphism source -> target extending `fixed` (-1 = free). Complete:
/// returns nothing only when no such isomorphism exists. Ties are broken by
/// the smallest target index, so results are deterministic.
SearchResult find_iso_over(const FinPSL& source, const FinPSL& target, const PartialMap& fixed = {},
                           const SearchOptions& opts = {});

/// Injective homomorphism source -> target extending `fixed`; complete.
SearchResult find_embedding_over(const FinPSL& source, const FinPSL& target,
                                 const PartialMap& fixed = {}, const SearchOptions& opts = {});

/// Inverse of a bijective map.
Morphism inverse(const Morphism& m);

/// Byte string equal for two algebras exactly when they are isomorphic.
std::string canonical_form(const FinPSL& p);

/// The relabeling behind canonical_form: element x gets canonical index perm[x].
std::vector<Elem> canonical_labeling(const FinPSL& p);

/// Carrier permuted by perm (new index of x is perm[x]); labels follow.
FinPSL permute(const FinPSL& p, const std::vector<Elem>& perm);

}  // namespace pcsl
