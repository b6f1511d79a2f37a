#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pcsl/algebra.hpp"
#include "pcsl/construct.hpp"

namespace pcsl {

/// Malformed build expression; `column` is 1-based.
class ExprError : public std::runtime_error {
public:
  ExprError(std::size_t column, const std::string& msg);
  std::size_t column() const { return column_; }

private:
  std::size_t column_;
};

/// Result of a build expression. A top-level product keeps its coding with
/// one factor per operand; anything else is coded as a single factor.
struct Built {
  Product product;
  const FinPSL& algebra() const { return product.algebra; }
};

/// Grammar (see docs/dsl.md):
///   expr := term ('*' term)*
///   term := N | 'B(' N ')' | 'F(' N ')' | 'hat(' expr ')'
///         | 'quot(' expr ',' element ')' | '(' expr ')'
/// N alone is the N-element chain. An element of quot is a label of the
/// inner algebra, such as e or (0,1), or #k for index k.
Built build_expr(std::string_view text, std::size_t cap = kDefaultSizeCap);

/// Resolves a label, a #k index or a tuple of factor labels.
/// Throws std::invalid_argument when nothing matches.
Elem resolve_element(const Product& p, std::string_view text);

}  // namespace pcsl
