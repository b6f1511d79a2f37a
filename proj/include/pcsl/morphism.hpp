#pragma once

#include <string>
#include <vector>

#include "pcsl/element_set.hpp"

namespace pcsl {

enum class MorphismKind { kHomomorphism, kEmbedding, kIsomorphism };

const char* kind_name(MorphismKind kind);
MorphismKind kind_from_name(const std::string& name);

/// Total map between two carriers, source index -> target index. The algebras
/// themselves are passed alongside wherever the map is checked.
struct Morphism {
  std::vector<Elem> map;
  MorphismKind kind = MorphismKind::kHomomorphism;

  Elem operator()(Elem x) const { return map[x]; }
  friend bool operator==(const Morphism&, const Morphism&) = default;
};

/// Partial map used to pin elements during searches; -1 means unconstrained.
using PartialMap = std::vector<int>;

}  // namespace pcsl
