#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pcsl/element_set.hpp"

namespace pcsl {

/// Default upper bound on carrier sizes produced by constructors.
inline constexpr std::size_t kDefaultSizeCap = 4096;

/// Raised when a constructor would exceed the configured size cap.
class SizeCapError : public std::runtime_error {
public:
  SizeCapError(std::size_t requested, std::size_t cap);
  std::size_t requested() const { return requested_; }
  std::size_t cap() const { return cap_; }

private:
  std::size_t requested_;
  std::size_t cap_;
};

enum class Law {
  kShape,          // table sizes or index ranges
  kIdempotent,     // x^x = x
  kCommutative,    // x^y = y^x
  kAssociative,    // (x^y)^z = x^(y^z)
  kZeroLeast,      // 0^x = 0
  kPseudocomplement,  // x^a = 0 <=> x <= a*
  kTopGreatest,    // 0*^x = x
};

const char* law_name(Law law);

/// One violated law with the elements that witness it (up to three).
struct Violation {
  Law law;
  std::vector<std::size_t> witness;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

private:
  ValidationReport report_;
};

/// Raw tables as read from a file or produced by a constructor, before
/// validation. Indices are plain integers so that malformed input can be
/// reported instead of truncated.
struct AlgebraTables {
  std::size_t n = 0;
  long long zero = 0;
  std::vector<std::vector<long long>> meet;
  std::vector<long long> star;
  std::vector<std::string> labels;
};

struct ValidateOptions {
  /// Associativity is checked exhaustively up to this size and on a
  /// deterministic sample of n^2 triples above it.
  std::size_t exhaustive_limit = 512;
  /// Stop after this many violations per law.
  std::size_t max_per_law = 4;
};

ValidationReport validate(const AlgebraTables& tables, const ValidateOptions& opts = {});

/// A finite pseudocomplemented semilattice. Elements are indices 0..n-1 with
/// precomputed meet and star tables. Immutable after construction.
class FinPSL {
public:
  /// Validates the tables and throws ValidationError listing every violated law.
  static FinPSL from_tables(const AlgebraTables& tables, const ValidateOptions& opts = {});

  /// Builds from tables known to be valid by construction; still runs validate().
  FinPSL(std::size_t n, Elem zero, std::vector<Elem> meet, std::vector<Elem> star,
         std::vector<std::string> labels = {});

  std::size_t size() const { return n_; }
  Elem zero() const { return zero_; }
  Elem one() const { return one_; }

  Elem meet(Elem x, Elem y) const { return meet_[static_cast<std::size_t>(x) * n_ + y]; }
  Elem star(Elem x) const { return star_[x]; }
  bool leq(Elem x, Elem y) const { return meet(x, y) == x; }
  bool lt(Elem x, Elem y) const { return x != y && leq(x, y); }
  bool parallel(Elem x, Elem y) const { return !leq(x, y) && !leq(y, x); }

  bool is_skeletal(Elem x) const { return star(star(x)) == x; }
  bool is_dense(Elem x) const { return star(x) == zero_; }
  bool is_central(Elem x) const { return central_.contains(x); }

  const ElementSet& skeleton() const { return skeleton_; }
  const ElementSet& dense() const { return dense_; }
  const ElementSet& central() const { return central_; }
  const std::vector<Elem>& skeleton_list() const { return skeleton_list_; }
  const std::vector<Elem>& dense_list() const { return dense_list_; }

  /// Skeletal join (a* ^ b*)*; throws std::invalid_argument unless both are skeletal.
  Elem sk_join(Elem a, Elem b) const;

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(Elem x) const;
  /// Index of the element whose label matches (ignoring blanks), or "#k".
  std::optional<Elem> find_label(std::string_view text) const;

  AlgebraTables tables() const;
  FinPSL with_labels(std::vector<std::string> labels) const;

  /// Structural equality of tables (labels ignored).
  friend bool operator==(const FinPSL& a, const FinPSL& b) {
    return a.n_ == b.n_ && a.zero_ == b.zero_ && a.meet_ == b.meet_ && a.star_ == b.star_;
  }

private:
  FinPSL() = default;
  void derive();

  std::size_t n_ = 0;
  Elem zero_ = 0;
  Elem one_ = 0;
  std::vector<Elem> meet_;
  std::vector<Elem> star_;
  std::vector<std::string> labels_;
  ElementSet skeleton_;
  ElementSet dense_;
  ElementSet central_;
  std::vector<Elem> skeleton_list_;
  std::vector<Elem> dense_list_;
};

}  // namespace pcsl
