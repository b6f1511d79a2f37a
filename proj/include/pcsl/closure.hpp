#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcsl/algebra.hpp"
#include "pcsl/json_io.hpp"
#include "pcsl/logic.hpp"
#include "pcsl/morphisms.hpp"

namespace pcsl {

/// Every subalgebra carrier of p, sorted. Breadth-first: each known
/// subalgebra is extended by one element at a time and closed again, which
/// reaches every subalgebra.
std::vector<ElementSet> all_subalgebras(const FinPSL& p);

/// 2^r x F̂_t^s.
struct Shape {
  std::size_t r = 0;
  std::size_t s = 0;
  std::size_t t = 0;
  std::size_t size() const;
  std::string to_string() const;
  FinPSL build(std::size_t cap = kDefaultSizeCap) const;
};

struct Theorem1Options {
  /// Also admit shapes with s > 0 hatted factors. Off by default: every
  /// F̂_t is itself a finite model of the hatted factor, which would make
  /// any algebra with a proper dense element pass.
  bool include_hat_factors = false;
};

struct Theorem1Report {
  bool holds = true;
  std::size_t subalgebras = 0;
  /// Shapes that occur as subalgebras, with one carrier each.
  std::vector<std::pair<Shape, ElementSet>> realized;
  /// First subalgebra with no extension of an admitted shape.
  std::optional<ElementSet> failing;
};

/// Every subalgebra S lies in some subalgebra S' isomorphic to an admitted
/// shape with |S'| <= |P|.
Theorem1Report theorem1_finite(const FinPSL& p, const Theorem1Options& opts = {});

struct ExtendResult {
  /// Isomorphism T -> S' (kind isomorphism, target indices are P's).
  std::optional<Morphism> iso;
  ElementSet image;
  std::string reason;
  explicit operator bool() const { return iso.has_value(); }
};

/// Looks for S' <= P and an isomorphism T -> S' sending embed(s) back to s
/// for every s in S. `embed.map[i]` is the image in T of the i-th smallest
/// element of S. Complete: nothing is returned only if no such S' exists.
ExtendResult extend_over_search(const FinPSL& p, const ElementSet& s, const FinPSL& t,
                                const Morphism& embed);

struct AxiomVerdict {
  std::string name;
  logic::EvalResult result;
};

struct Classification {
  std::vector<AxiomVerdict> verdicts;
  bool is_boolean = false;
  bool has_theorem1 = false;
  bool theorem1 = false;
  /// Violated cross-checks, empty when all hold.
  std::vector<std::string> inconsistencies;

  const AxiomVerdict* find(const std::string& name) const;
  /// AC1..AC4 all true; only meaningful when all four were evaluated.
  bool ac_all() const;
};

struct ClassifyOptions {
  /// Subset of the nine axioms to evaluate; empty means all nine.
  std::vector<std::string> axioms;
  bool theorem1 = true;
  logic::EvalOptions eval;
};

/// Evaluates the axioms, the boolean test and theorem1_finite, and records
/// every failed cross-check (Sk = P against a direct x** = x test, boolean
/// implies D = {1}; AC-iff-boolean;
/// AC-iff-theorem1; size >= 2 fails EC1, EC3 or EC4).
Classification classify(const FinPSL& p, const ClassifyOptions& opts = {});

json classification_to_json(const FinPSL& p, const Classification& c);

struct TransferMismatch {
  std::size_t first = 0;
  std::size_t second = 0;
  std::string axiom;
  bool product = false;
  bool factors = false;
};

struct TransferReport {
  std::size_t pairs = 0;
  std::size_t checks = 0;
  std::vector<TransferMismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// For `pairs` seeded random pairs from the pool and each of the nine axioms,
/// compares eval(P1 x P2) with eval(P1) and eval(P2).
TransferReport product_transfer(const std::vector<FinPSL>& pool, std::size_t pairs, std::uint64_t seed);

}  // namespace pcsl
