#include "pcsl/expr.hpp"

#include <cctype>
#include <vector>

namespace pcsl {

ExprError::ExprError(std::size_t column, const std::string& msg)
    : std::runtime_error("column " + std::to_string(column) + ": " + msg), column_(column) {}

namespace {

FinPSL chain(std::size_t n, std::size_t cap) {
  if (n == 0) throw std::invalid_argument("a chain needs at least one element");
  if (n > cap) throw SizeCapError(n, cap);
  std::vector<Elem> meet(n * n), star(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) meet[a * n + b] = static_cast<Elem>(std::min(a, b));
  star[0] = static_cast<Elem>(n - 1);
  std::vector<std::string> labels(n);
  labels[0] = "0";
  if (n > 1) labels[n - 1] = "1";
  if (n == 3) labels[1] = "e";
  else
    for (std::size_t i = 1; i + 1 < n; ++i) labels[i] = "c" + std::to_string(i);
  return FinPSL(n, 0, std::move(meet), std::move(star), std::move(labels));
}

Product single(FinPSL p) {
  ProductCoding c({p}, {1});
  return Product{std::move(p), std::move(c)};
}

// top-level comma split of "(a,b,...)"
std::optional<std::vector<std::string>> split_tuple(std::string_view text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.size() < 2 || t.front() != '(' || t.back() != ')') return std::nullopt;
  std::vector<std::string> parts(1);
  int depth = 0;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    const char c = t[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) parts.emplace_back();
    else parts.back() += c;
  }
  return parts;
}

class Parser {
public:
  Parser(std::string_view text, std::size_t cap) : s_(text), cap_(cap) {}

  Built run() {
    Product p = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return Built{std::move(p)};
  }

private:
  Product expr() {
    std::vector<FinPSL> factors{term()};
    skip();
    while (i_ < s_.size() && s_[i_] == '*') {
      ++i_;
      factors.push_back(term());
      skip();
    }
    if (factors.size() == 1) return single(std::move(factors[0]));
    return product(factors, cap_);
  }

  FinPSL term() {
    skip();
    if (i_ >= s_.size()) fail("expected an algebra");
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) return chain(number(), cap_);
    if (c == '(') {
      ++i_;
      Product p = expr();
      expect(')');
      return std::move(p.algebra);
    }
    const std::size_t at = i_;
    const std::string name = word();
    if (name == "B" || name == "F") {
      expect('(');
      const std::size_t t = number();
      expect(')');
      return name == "B" ? boolean_algebra(t, cap_).algebra : f_hat(t, cap_);
    }
    if (name == "hat") {
      expect('(');
      Product p = expr();
      expect(')');
      return hat(p.algebra, cap_);
    }
    if (name == "quot") {
      expect('(');
      Product p = expr();
      expect(',');
      const std::size_t at_elem = i_;
      const std::string elem = balanced();
      expect(')');
      Elem a = 0;
      try {
        a = resolve_element(p, elem);
      } catch (const std::invalid_argument& e) {
        column_ = at_elem;
        fail(e.what());
      }
      return theta_quotient(p.algebra, a).algebra;
    }
    i_ = at;
    fail(name.empty() ? "expected an algebra" : "unknown constructor '" + name + "'");
  }

  // element text up to the ')' closing quot
  std::string balanced() {
    skip();
    std::string out;
    int depth = 0;
    while (i_ < s_.size()) {
      const char c = s_[i_];
      if (c == ')' && depth == 0) break;
      if (c == '(') ++depth;
      if (c == ')') --depth;
      out += c;
      ++i_;
    }
    if (out.empty()) fail("expected an element");
    return out;
  }

  std::size_t number() {
    skip();
    const std::size_t start = i_;
    std::size_t v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = v * 10 + static_cast<std::size_t>(s_[i_] - '0');
      if (v > 1'000'000) fail("number too large");
      ++i_;
    }
    if (start == i_) fail("expected a number");
    return v;
  }

  std::string word() {
    std::string out;
    while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) out += s_[i_++];
    return out;
  }

  void expect(char c) {
    skip();
    if (i_ >= s_.size() || s_[i_] != c) fail(std::string("expected '") + c + "'");
    ++i_;
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ExprError((column_ ? column_ : i_) + 1, msg);
  }

  std::string_view s_;
  std::size_t cap_;
  std::size_t i_ = 0;
  std::size_t column_ = 0;
};

}  // namespace

Built build_expr(std::string_view text, std::size_t cap) {
  try {
    return Parser(text, cap).run();
  } catch (const std::invalid_argument& e) {
    throw ExprError(1, e.what());
  }
}

Elem resolve_element(const Product& p, std::string_view text) {
  if (auto x = p.algebra.find_label(text)) return *x;
  if (auto parts = split_tuple(text); parts && parts->size() == p.coding.arity() && p.coding.arity() > 1) {
    std::vector<Elem> w;
    for (std::size_t i = 0; i < parts->size(); ++i) {
      auto x = p.coding.factor(i).find_label((*parts)[i]);
      if (!x) break;
      w.push_back(*x);
    }
    if (w.size() == parts->size()) return p.coding.index(w);
  }
  throw std::invalid_argument("no element '" + std::string(text) + "'");
}

}  // namespace pcsl
