#include <algorithm>
#include <array>
#include <tuple>

#include "pcsl/morphisms.hpp"

namespace pcsl {

HomCheck is_homomorphism(const FinPSL& a, const FinPSL& b, const Morphism& m) {
  HomCheck r;
  const std::size_t n = a.size();
  if (m.map.size() != n) {
    r.ok = false;
    r.law = "shape";
    return r;
  }
  for (Elem y : m.map)
    if (y >= b.size()) {
      r.ok = false;
      r.law = "shape";
      return r;
    }
  auto fail = [&](const char* law, std::vector<Elem> w) {
    r.ok = false;
    r.law = law;
    r.witness = std::move(w);
  };
  if (m(a.zero()) != b.zero()) {
    fail("zero", {a.zero()});
  } else {
    for (std::size_t i = 0; i < n && r.ok; ++i)
      for (std::size_t j = i; j < n && r.ok; ++j) {
        const auto x = static_cast<Elem>(i), y = static_cast<Elem>(j);
        if (m(a.meet(x, y)) != b.meet(m(x), m(y))) fail("meet", {x, y});
      }
    for (std::size_t i = 0; i < n && r.ok; ++i) {
      const auto x = static_cast<Elem>(i);
      if (m(a.star(x)) != b.star(m(x))) fail("star", {x});
    }
  }
  ElementSet image(b.size());
  for (Elem y : m.map) image.insert(y);
  r.injective = image.size() == n;
  r.surjective = image.size() == b.size();
  return r;
}

Morphism inverse(const Morphism& m) {
  Morphism inv;
  inv.kind = m.kind;
  inv.map.assign(m.map.size(), 0);
  for (std::size_t x = 0; x < m.map.size(); ++x) inv.map[m.map[x]] = static_cast<Elem>(x);
  return inv;
}

namespace {

struct Invariants {
  std::vector<std::array<int, 7>> sig;
};

// (skeletal, dense, central, |down x|, |up x|, |down x*|, |down x**|)
Invariants element_invariants(const FinPSL& p) {
  const std::size_t n = p.size();
  std::vector<int> down(n, 0), up(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (p.leq(static_cast<Elem>(j), static_cast<Elem>(i))) {
        ++down[i];
        ++up[j];
      }
  Invariants inv;
  inv.sig.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = static_cast<Elem>(i);
    inv.sig[i] = {p.is_skeletal(x), p.is_dense(x), p.is_central(x), down[i], up[i],
                  down[p.star(x)], down[p.star(p.star(x))]};
  }
  return inv;
}

class Search {
public:
  Search(const FinPSL& a, const FinPSL& b, bool iso, const SearchOptions& opts)
      : a_(a), b_(b), iso_(iso), map_(a.size(), -1), owner_(b.size(), -1) {
    const std::size_t n = a.size();
    candidates_.resize(n);
    if (opts.prune) {
      const auto ia = element_invariants(a);
      const auto ib = element_invariants(b);
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < b.size(); ++y)
          if (compatible(ia.sig[x], ib.sig[y])) candidates_[x].push_back(static_cast<Elem>(y));
    } else {
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < b.size(); ++y) candidates_[x].push_back(static_cast<Elem>(y));
    }
    allowed_.assign(n, ElementSet(b.size()));
    for (std::size_t x = 0; x < n; ++x)
      for (Elem y : candidates_[x]) allowed_[x].insert(y);
  }

  SearchResult run(const PartialMap& fixed) {
    SearchResult out;
    if (!assign(a_.zero(), b_.zero())) {
      out.reason = "zero cannot be mapped to zero";
      return out;
    }
    for (std::size_t x = 0; x < fixed.size() && x < a_.size(); ++x) {
      if (fixed[x] < 0) continue;
      if (static_cast<std::size_t>(fixed[x]) >= b_.size()) {
        out.reason = "fixed map points outside the target";
        return out;
      }
      if (!assign(static_cast<Elem>(x), static_cast<Elem>(fixed[x]))) {
        out.reason = "fixed map violates a preservation equation or invariant at element " +
                     std::to_string(x);
        return out;
      }
    }
    if (solve()) {
      Morphism m;
      m.kind = iso_ ? MorphismKind::kIsomorphism : MorphismKind::kEmbedding;
      m.map.resize(a_.size());
      for (std::size_t x = 0; x < a_.size(); ++x) m.map[x] = static_cast<Elem>(map_[x]);
      out.morphism = std::move(m);
    } else {
      out.reason = "search exhausted";
    }
    return out;
  }

private:
  bool compatible(const std::array<int, 7>& x, const std::array<int, 7>& y) const {
    if (iso_) return x == y;
    // embeddings preserve and reflect skeletal and dense flags; down-sets can only grow
    return x[0] == y[0] && x[1] == y[1] && x[3] <= y[3];
  }

  // Assigns x -> y and propagates the forced images of stars and meets.
  // On conflict everything done by this call is undone.
  bool assign(Elem x0, Elem y0) {
    const std::size_t mark = trail_.size();
    queue_.clear();
    queue_.emplace_back(x0, y0);
    while (!queue_.empty()) {
      auto [x, y] = queue_.back();
      queue_.pop_back();
      if (map_[x] >= 0) {
        if (map_[x] != y) return undo(mark);
        continue;
      }
      if (!allowed_[x].contains(y) || owner_[y] >= 0) return undo(mark);
      map_[x] = y;
      owner_[y] = x;
      trail_.push_back(x);
      queue_.emplace_back(a_.star(x), b_.star(y));
      for (Elem u : trail_) queue_.emplace_back(a_.meet(x, u), b_.meet(y, static_cast<Elem>(map_[u])));
    }
    return true;
  }

  bool undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const Elem x = trail_.back();
      trail_.pop_back();
      owner_[map_[x]] = -1;
      map_[x] = -1;
    }
    queue_.clear();
    return false;
  }

  bool solve() {
    // branch on the unassigned element with the fewest candidates
    int best = -1;
    std::size_t best_count = ~std::size_t{0};
    for (std::size_t x = 0; x < a_.size(); ++x)
      if (map_[x] < 0 && candidates_[x].size() < best_count) {
        best = static_cast<int>(x);
        best_count = candidates_[x].size();
      }
    if (best < 0) return true;
    const auto x = static_cast<Elem>(best);
    for (Elem y : candidates_[x]) {
      if (owner_[y] >= 0) continue;
      const std::size_t mark = trail_.size();
      if (!assign(x, y)) continue;
      if (solve()) return true;
      undo(mark);
    }
    return false;
  }

  const FinPSL& a_;
  const FinPSL& b_;
  bool iso_;
  std::vector<int> map_;
  std::vector<int> owner_;
  std::vector<std::vector<Elem>> candidates_;
  std::vector<ElementSet> allowed_;
  std::vector<Elem> trail_;
  std::vector<std::pair<Elem, Elem>> queue_;
};

SearchResult run_search(const FinPSL& a, const FinPSL& b, const PartialMap& fixed,
                        const SearchOptions& opts, bool iso) {
  if (iso && a.size() != b.size()) return {std::nullopt, "carrier sizes differ"};
  if (!iso && a.size() > b.size()) return {std::nullopt, "source larger than target"};
  Search s(a, b, iso, opts);
  auto r = s.run(fixed);
  if (r.morphism) {
    const auto check = is_homomorphism(a, b, *r.morphism);
    if (!check.ok || !check.injective) return {std::nullopt, "internal: search produced a non-embedding"};
  }
  return r;
}

}  // namespace

SearchResult find_iso_over(const FinPSL& source, const FinPSL& target, const PartialMap& fixed,
                           const SearchOptions& opts) {
  return run_search(source, target, fixed, opts, true);
}

SearchResult find_embedding_over(const FinPSL& source, const FinPSL& target,
                                 const PartialMap& fixed, const SearchOptions& opts) {
  return run_search(source, target, fixed, opts, false);
}

}  // namespace pcsl
