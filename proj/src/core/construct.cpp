#include "pcsl/construct.hpp"

#include <algorithm>
#include <stdexcept>

namespace pcsl {

const char* kind_name(MorphismKind kind) {
  switch (kind) {
    case MorphismKind::kHomomorphism: return "homomorphism";
    case MorphismKind::kEmbedding: return "embedding";
    case MorphismKind::kIsomorphism: return "isomorphism";
  }
  return "?";
}

MorphismKind kind_from_name(const std::string& name) {
  if (name == "homomorphism") return MorphismKind::kHomomorphism;
  if (name == "embedding") return MorphismKind::kEmbedding;
  if (name == "isomorphism") return MorphismKind::kIsomorphism;
  throw std::invalid_argument("unknown morphism kind '" + name + "'");
}

ProductCoding::ProductCoding(std::vector<FinPSL> factors, std::vector<std::size_t> strides)
    : factors_(std::move(factors)), strides_(std::move(strides)) {
  if (factors_.size() != strides_.size())
    throw std::invalid_argument("ProductCoding: one stride per factor");
}

std::vector<Elem> ProductCoding::tuple(Elem index) const {
  std::vector<Elem> t(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) t[i] = coord(index, i);
  return t;
}

Elem ProductCoding::index(std::span<const Elem> tuple) const {
  if (tuple.size() != factors_.size()) throw std::invalid_argument("tuple has wrong arity");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] >= factors_[i].size()) throw std::out_of_range("tuple coordinate out of range");
    idx += tuple[i] * strides_[i];
  }
  return static_cast<Elem>(idx);
}

FinPSL trivial_algebra() { return FinPSL(1, 0, {0}, {0}, {"0"}); }

Product product(const std::vector<FinPSL>& factors, std::size_t cap) {
  std::size_t n = 1;
  for (const auto& f : factors) {
    n *= f.size();
    if (n > cap) throw SizeCapError(n, cap);
  }
  const std::size_t k = factors.size();
  std::vector<std::size_t> strides(k);
  std::size_t s = 1;
  for (std::size_t i = k; i-- > 0;) {
    strides[i] = s;
    s *= factors[i].size();
  }
  ProductCoding coding(factors, strides);

  std::vector<std::vector<Elem>> tuples(n);
  for (std::size_t x = 0; x < n; ++x) tuples[x] = coding.tuple(static_cast<Elem>(x));

  std::vector<Elem> meet(n * n), star(n);
  std::vector<Elem> buf(k);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) {
      for (std::size_t i = 0; i < k; ++i) buf[i] = factors[i].meet(tuples[x][i], tuples[y][i]);
      const Elem m = coding.index(buf);
      meet[x * n + y] = m;
      meet[y * n + x] = m;
    }
    for (std::size_t i = 0; i < k; ++i) buf[i] = factors[i].star(tuples[x][i]);
    star[x] = coding.index(buf);
  }
  for (std::size_t i = 0; i < k; ++i) buf[i] = factors[i].zero();
  const Elem zero = coding.index(buf);

  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::string l = "(";
    for (std::size_t i = 0; i < k; ++i) {
      if (i) l += ',';
      l += factors[i].label(tuples[x][i]);
    }
    labels[x] = l + ")";
  }
  return {FinPSL(n, zero, std::move(meet), std::move(star), std::move(labels)), std::move(coding)};
}

namespace {

std::string subset_label(std::size_t mask, std::size_t t) {
  if (mask == 0) return "0";
  if (mask + 1 == (std::size_t{1} << t)) return "1";
  std::string out;
  if (t <= 26) {
    for (std::size_t i = 0; i < t; ++i)
      if (mask >> i & 1u) out.push_back(static_cast<char>('a' + i));
    return out;
  }
  out = "{";
  bool first = true;
  for (std::size_t i = 0; i < t; ++i)
    if (mask >> i & 1u) {
      if (!first) out += ',';
      out += std::to_string(i);
      first = false;
    }
  return out + "}";
}

}  // namespace

Product boolean_algebra(std::size_t t, std::size_t cap) {
  if (t >= 16 || (std::size_t{1} << t) > cap)
    throw SizeCapError(t >= 63 ? ~std::size_t{0} : (std::size_t{1} << t), cap);
  const std::size_t n = std::size_t{1} << t;
  const std::size_t full = n - 1;
  std::vector<Elem> meet(n * n), star(n);
  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) meet[x * n + y] = static_cast<Elem>(x & y);
    star[x] = static_cast<Elem>(full & ~x);
    labels[x] = subset_label(x, t);
  }
  FinPSL two(2, 0, {0, 0, 0, 1}, {1, 0}, {"0", "1"});
  std::vector<std::size_t> strides(t);
  for (std::size_t i = 0; i < t; ++i) strides[i] = std::size_t{1} << i;
  return {FinPSL(n, 0, std::move(meet), std::move(star), std::move(labels)),
          ProductCoding(std::vector<FinPSL>(t, two), std::move(strides))};
}

FinPSL hat(const FinPSL& p, std::size_t cap) {
  const std::size_t n = p.size();
  const std::size_t m = n + 1;
  if (m > cap) throw SizeCapError(m, cap);
  const auto top = static_cast<Elem>(n);
  std::vector<Elem> meet(m * m), star(m);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y)
      meet[x * m + y] = p.meet(static_cast<Elem>(x), static_cast<Elem>(y));
    meet[x * m + n] = static_cast<Elem>(x);
    meet[n * m + x] = static_cast<Elem>(x);
    star[x] = p.star(static_cast<Elem>(x));
  }
  meet[n * m + n] = top;
  star[p.zero()] = top;
  star[n] = p.zero();

  std::vector<std::string> labels(m);
  for (std::size_t x = 0; x < n; ++x) labels[x] = p.label(static_cast<Elem>(x));
  if (p.one() != p.zero()) labels[p.one()] = "e";
  labels[n] = "1";
  return FinPSL(m, p.zero(), std::move(meet), std::move(star), std::move(labels));
}

FinPSL f_hat(std::size_t t, std::size_t cap) {
  if (t == 0) return boolean_algebra(1, cap).algebra;
  return hat(boolean_algebra(t, cap).algebra, cap);
}

Quotient theta_quotient(const FinPSL& p, Elem a) {
  const std::size_t n = p.size();
  if (a >= n) throw std::out_of_range("theta_quotient: element out of range");
  ElementSet image(n);
  for (std::size_t x = 0; x < n; ++x) image.insert(p.meet(a, static_cast<Elem>(x)));
  const std::vector<Elem> reps = image.elements();
  std::vector<int> to_q(n, -1);
  for (std::size_t i = 0; i < reps.size(); ++i) to_q[reps[i]] = static_cast<int>(i);

  const std::size_t m = reps.size();
  std::vector<Elem> meet(m * m), star(m);
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      meet[i * m + j] = static_cast<Elem>(to_q[p.meet(reps[i], reps[j])]);
    star[i] = static_cast<Elem>(to_q[p.meet(a, p.star(reps[i]))]);
    labels[i] = p.label(reps[i]);
  }
  Morphism nu;
  nu.kind = MorphismKind::kHomomorphism;
  nu.map.resize(n);
  for (std::size_t x = 0; x < n; ++x)
    nu.map[x] = static_cast<Elem>(to_q[p.meet(a, static_cast<Elem>(x))]);
  const auto zero = static_cast<Elem>(to_q[p.zero()]);
  return {FinPSL(m, zero, std::move(meet), std::move(star), std::move(labels)), std::move(nu), reps};
}

ElementSet skeleton(const FinPSL& p) { return p.skeleton(); }
ElementSet dense(const FinPSL& p) { return p.dense(); }
ElementSet central(const FinPSL& p) { return p.central(); }
Elem sk_join(const FinPSL& p, Elem a, Elem b) { return p.sk_join(a, b); }

ElementSet sg(const FinPSL& p, const ElementSet& generators) {
  ElementSet out(p.size());
  std::vector<Elem> members;
  std::vector<Elem> work;
  auto add = [&](Elem x) {
    if (out.insert(x)) work.push_back(x);
  };
  add(p.zero());
  generators.for_each(add);
  while (!work.empty()) {
    const Elem x = work.back();
    work.pop_back();
    add(p.star(x));
    // meets with everything already processed; later members pair with x when they are popped
    for (Elem y : members) add(p.meet(x, y));
    add(p.meet(x, x));
    members.push_back(x);
  }
  return out;
}

ElementSet sg(const FinPSL& p, std::span<const Elem> generators) {
  ElementSet g(p.size());
  for (Elem x : generators) g.insert(x);
  return sg(p, g);
}

bool is_subalgebra(const FinPSL& p, const ElementSet& s) {
  if (s.universe() != p.size() || !s.contains(p.zero())) return false;
  const auto elems = s.elements();
  for (Elem x : elems) {
    if (!s.contains(p.star(x))) return false;
    for (Elem y : elems)
      if (y > x && !s.contains(p.meet(x, y))) return false;
  }
  return true;
}

Subalgebra restrict_to(const FinPSL& p, const ElementSet& s) {
  if (!is_subalgebra(p, s)) throw std::invalid_argument("restrict_to: not a subalgebra carrier");
  Subalgebra out{trivial_algebra(), s.elements(), std::vector<int>(p.size(), -1)};
  const std::size_t m = out.to_parent.size();
  for (std::size_t i = 0; i < m; ++i) out.from_parent[out.to_parent[i]] = static_cast<int>(i);
  std::vector<Elem> meet(m * m), star(m);
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Elem x = out.to_parent[i];
    for (std::size_t j = 0; j < m; ++j)
      meet[i * m + j] = static_cast<Elem>(out.from_parent[p.meet(x, out.to_parent[j])]);
    star[i] = static_cast<Elem>(out.from_parent[p.star(x)]);
    labels[i] = p.label(x);
  }
  out.algebra = FinPSL(m, static_cast<Elem>(out.from_parent[p.zero()]), std::move(meet),
                       std::move(star), std::move(labels));
  return out;
}

}  // namespace pcsl
