#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>

#include "pcsl/morphisms.hpp"

namespace pcsl {

FinPSL permute(const FinPSL& p, const std::vector<Elem>& perm) {
  const std::size_t n = p.size();
  if (perm.size() != n) throw std::invalid_argument("permute: permutation has wrong length");
  std::vector<char> seen(n, 0);
  for (Elem v : perm) {
    if (v >= n || seen[v]) throw std::invalid_argument("permute: not a permutation");
    seen[v] = 1;
  }
  std::vector<Elem> meet(n * n), star(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y)
      meet[perm[x] * n + perm[y]] = perm[p.meet(static_cast<Elem>(x), static_cast<Elem>(y))];
    star[perm[x]] = perm[p.star(static_cast<Elem>(x))];
  }
  std::vector<std::string> labels;
  if (p.has_labels()) {
    labels.resize(n);
    for (std::size_t x = 0; x < n; ++x) labels[perm[x]] = p.labels()[x];
  }
  return FinPSL(n, perm[p.zero()], std::move(meet), std::move(star), std::move(labels));
}

namespace {

using Colours = std::vector<std::uint32_t>;

// Replaces each signature by its rank among the distinct signatures.
std::size_t rank_signatures(const std::vector<std::vector<std::uint32_t>>& sigs, Colours& out) {
  std::vector<std::size_t> order(sigs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sigs[a] < sigs[b]; });
  out.assign(sigs.size(), 0);
  std::uint32_t r = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && sigs[order[i]] != sigs[order[i - 1]]) ++r;
    out[order[i]] = r;
  }
  return sigs.empty() ? 0 : r + 1;
}

class Canonizer {
public:
  explicit Canonizer(const FinPSL& p) : p_(p), n_(p.size()) {}

  void run() {
    std::vector<std::vector<std::uint32_t>> sigs(n_);
    for (std::size_t x = 0; x < n_; ++x) {
      const auto e = static_cast<Elem>(x);
      std::uint32_t down = 0;
      for (std::size_t y = 0; y < n_; ++y) down += p_.leq(static_cast<Elem>(y), e);
      sigs[x] = {e == p_.zero(), p_.is_skeletal(e), p_.is_dense(e), p_.is_central(e), down};
    }
    Colours c;
    rank_signatures(sigs, c);
    search(refine(std::move(c)));
  }

  const std::string& best() const { return best_; }
  const std::vector<Elem>& best_perm() const { return best_perm_; }

private:
  Colours refine(Colours c) const {
    std::size_t cells = 0;
    for (auto v : c) cells = std::max<std::size_t>(cells, v + 1);
    std::vector<std::vector<std::uint32_t>> sigs(n_);
    std::vector<std::uint32_t> pairs(n_);
    while (true) {
      for (std::size_t x = 0; x < n_; ++x) {
        const auto e = static_cast<Elem>(x);
        for (std::size_t y = 0; y < n_; ++y)
          pairs[y] = c[y] * static_cast<std::uint32_t>(n_) + c[p_.meet(e, static_cast<Elem>(y))];
        std::sort(pairs.begin(), pairs.end());
        auto& s = sigs[x];
        s.clear();
        s.push_back(c[x]);
        s.push_back(c[p_.star(e)]);
        s.insert(s.end(), pairs.begin(), pairs.end());
      }
      Colours next;
      const std::size_t k = rank_signatures(sigs, next);
      c = std::move(next);
      if (k == cells) return c;
      cells = k;
    }
  }

  void search(const Colours& c) {
    // smallest non-singleton cell, ties by colour
    std::vector<std::uint32_t> count(n_, 0);
    for (auto v : c) ++count[v];
    int target = -1;
    for (std::size_t v = 0; v < n_; ++v)
      if (count[v] > 1 && (target < 0 || count[v] < count[static_cast<std::size_t>(target)]))
        target = static_cast<int>(v);
    if (target < 0) {
      leaf(c);
      return;
    }
    for (std::size_t x = 0; x < n_; ++x) {
      if (c[x] != static_cast<std::uint32_t>(target)) continue;
      Colours split(n_);
      for (std::size_t y = 0; y < n_; ++y)
        split[y] = 2 * c[y] + (c[y] == static_cast<std::uint32_t>(target) && y != x ? 1u : 0u);
      std::vector<std::vector<std::uint32_t>> sigs(n_);
      for (std::size_t y = 0; y < n_; ++y) sigs[y] = {split[y]};
      Colours ranked;
      rank_signatures(sigs, ranked);
      search(refine(std::move(ranked)));
    }
  }

  void leaf(const Colours& c) {
    std::vector<Elem> perm(n_);
    for (std::size_t x = 0; x < n_; ++x) perm[x] = static_cast<Elem>(c[x]);
    std::vector<Elem> inv(n_);
    for (std::size_t x = 0; x < n_; ++x) inv[perm[x]] = static_cast<Elem>(x);
    std::string code;
    code.reserve(4 + 2 * (n_ * n_ + n_ + 1));
    auto put = [&](std::uint32_t v, int bytes) {
      for (int b = bytes - 1; b >= 0; --b) code.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
    };
    put(static_cast<std::uint32_t>(n_), 4);
    put(perm[p_.zero()], 2);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) put(perm[p_.meet(inv[i], inv[j])], 2);
    for (std::size_t i = 0; i < n_; ++i) put(perm[p_.star(inv[i])], 2);
    if (best_perm_.empty() || code < best_) {
      best_ = std::move(code);
      best_perm_ = std::move(perm);
    }
  }

  const FinPSL& p_;
  std::size_t n_;
  std::string best_;
  std::vector<Elem> best_perm_;
};

}  // namespace

std::vector<Elem> canonical_labeling(const FinPSL& p) {
  Canonizer c(p);
  c.run();
  return c.best_perm();
}

std::string canonical_form(const FinPSL& p) {
  Canonizer c(p);
  c.run();
  return c.best();
}

}  // namespace pcsl
