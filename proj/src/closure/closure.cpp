#include "pcsl/closure.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "pcsl/construct.hpp"

namespace pcsl {

std::vector<ElementSet> all_subalgebras(const FinPSL& p) {
  std::unordered_set<ElementSet, ElementSetHash> seen;
  std::deque<ElementSet> queue;
  ElementSet base = sg(p, ElementSet(p.size()));
  seen.insert(base);
  queue.push_back(std::move(base));
  while (!queue.empty()) {
    const ElementSet s = std::move(queue.front());
    queue.pop_front();
    for (std::size_t x = 0; x < p.size(); ++x) {
      const Elem e = static_cast<Elem>(x);
      if (s.contains(e)) continue;
      ElementSet g = s;
      g.insert(e);
      ElementSet c = sg(p, g);
      if (seen.insert(c).second) queue.push_back(std::move(c));
    }
  }
  std::vector<ElementSet> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const ElementSet& a, const ElementSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements() < b.elements();
  });
  return out;
}

// ---- shapes ---------------------------------------------------------------

std::size_t Shape::size() const {
  std::size_t n = std::size_t{1} << r;
  const std::size_t f = (std::size_t{1} << t) + 1;
  for (std::size_t i = 0; i < s; ++i) n *= f;
  return n;
}

std::string Shape::to_string() const {
  std::string out = "2^" + std::to_string(r);
  if (s) out += " x F^" + std::to_string(t) + "^" + std::to_string(s);
  return out;
}

FinPSL Shape::build(std::size_t cap) const {
  std::vector<FinPSL> factors;
  if (r) factors.push_back(boolean_algebra(r, cap).algebra);
  for (std::size_t i = 0; i < s; ++i) factors.push_back(f_hat(t, cap));
  if (factors.size() == 1) return factors.front();
  return product(factors, cap).algebra;
}

namespace {

std::vector<Shape> admitted_shapes(std::size_t n, bool hats) {
  std::vector<Shape> out;
  for (std::size_t r = 0; (std::size_t{1} << r) <= n; ++r) {
    out.push_back({r, 0, 0});
    if (!hats) continue;
    // t = 0 would repeat a pure boolean shape
    for (std::size_t t = 1; (std::size_t{1} << r) * ((std::size_t{1} << t) + 1) <= n; ++t)
      for (std::size_t s = 1;; ++s) {
        const Shape sh{r, s, t};
        if (sh.size() > n) break;
        out.push_back(sh);
      }
  }
  return out;
}

}  // namespace

Theorem1Report theorem1_finite(const FinPSL& p, const Theorem1Options& opts) {
  Theorem1Report rep;
  const auto subs = all_subalgebras(p);
  rep.subalgebras = subs.size();

  std::map<std::size_t, std::vector<std::pair<Shape, FinPSL>>> by_size;
  for (const Shape& sh : admitted_shapes(p.size(), opts.include_hat_factors))
    by_size[sh.size()].emplace_back(sh, sh.build());

  std::vector<const ElementSet*> shaped;
  for (const auto& c : subs) {
    auto it = by_size.find(c.size());
    if (it == by_size.end()) continue;
    const FinPSL sub = restrict_to(p, c).algebra;
    for (const auto& [sh, alg] : it->second)
      if (find_iso_over(sub, alg)) {
        rep.realized.emplace_back(sh, c);
        shaped.push_back(&c);
        break;
      }
  }
  for (const auto& c : subs) {
    const bool covered = std::any_of(shaped.begin(), shaped.end(),
                                     [&](const ElementSet* x) { return c.is_subset_of(*x); });
    if (!covered) {
      rep.holds = false;
      rep.failing = c;
      break;
    }
  }
  return rep;
}

// ---- extension over S -------------------------------------------------------

ExtendResult extend_over_search(const FinPSL& p, const ElementSet& s, const FinPSL& t,
                                const Morphism& embed) {
  if (s.universe() != p.size() || !is_subalgebra(p, s))
    throw std::invalid_argument("extend_over_search: S is not a subalgebra carrier of P");
  const auto sub = restrict_to(p, s);
  const HomCheck hc = is_homomorphism(sub.algebra, t, embed);
  if (!hc.ok || !hc.injective)
    throw std::invalid_argument("extend_over_search: the given map does not embed S in T");

  ExtendResult out;
  if (t.size() > p.size()) {
    out.reason = "|T| > |P|";
    return out;
  }
  PartialMap fixed(t.size(), -1);
  for (std::size_t i = 0; i < sub.to_parent.size(); ++i) fixed[embed.map[i]] = sub.to_parent[i];
  SearchResult r = find_embedding_over(t, p, fixed);
  if (!r) {
    out.reason = r.reason;
    return out;
  }
  Morphism iso = *r.morphism;
  iso.kind = MorphismKind::kIsomorphism;
  out.image = ElementSet(p.size());
  for (Elem x : iso.map) out.image.insert(x);
  out.iso = std::move(iso);
  return out;
}

// ---- classification -----------------------------------------------------

const AxiomVerdict* Classification::find(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return &v;
  return nullptr;
}

bool Classification::ac_all() const {
  for (const char* n : {"AC1", "AC2", "AC3", "AC4"}) {
    const auto* v = find(n);
    if (!v || !v->result.value) return false;
  }
  return true;
}

namespace {

const logic::Sentence& cached_axiom(const std::string& name) {
  static const std::map<std::string, logic::Sentence> cache = [] {
    std::map<std::string, logic::Sentence> m;
    for (const auto& n : logic::axiom_names()) m.emplace(n, logic::axiom(n));
    return m;
  }();
  auto it = cache.find(name);
  if (it == cache.end()) throw std::out_of_range("unknown axiom '" + name + "'");
  return it->second;
}

}  // namespace

Classification classify(const FinPSL& p, const ClassifyOptions& opts) {
  Classification c;
  const auto& names = opts.axioms.empty() ? logic::axiom_names() : opts.axioms;
  for (const auto& n : names) c.verdicts.push_back({n, logic::eval(p, cached_axiom(n), opts.eval)});

  const bool sk_is_all = p.skeleton() == ElementSet::full(p.size());
  bool every_skeletal = true;
  for (std::size_t x = 0; x < p.size(); ++x)
    if (p.star(p.star(static_cast<Elem>(x))) != x) every_skeletal = false;
  // D = {1} is only necessary: 0 < a < b < 1 beside an atom c has D = {1}
  const bool dense_top = p.dense().size() == 1 && p.dense().contains(p.one());
  c.is_boolean = every_skeletal;
  if (sk_is_all != every_skeletal || (every_skeletal && !dense_top))
    c.inconsistencies.push_back("boolean tests disagree");

  if (opts.theorem1) {
    c.has_theorem1 = true;
    c.theorem1 = theorem1_finite(p).holds;
    if (c.theorem1 != c.is_boolean) c.inconsistencies.push_back("theorem1_finite differs from boolean");
  }
  const bool have_ac = c.find("AC1") && c.find("AC2") && c.find("AC3") && c.find("AC4");
  if (have_ac) {
    if (c.ac_all() != c.is_boolean) c.inconsistencies.push_back("AC1-AC4 differs from boolean");
    if (c.has_theorem1 && c.ac_all() != c.theorem1)
      c.inconsistencies.push_back("AC1-AC4 differs from theorem1_finite");
  }
  const auto* e1 = c.find("EC1");
  const auto* e3 = c.find("EC3");
  const auto* e4 = c.find("EC4");
  if (p.size() >= 2 && e1 && e3 && e4 && e1->result.value && e3->result.value && e4->result.value)
    c.inconsistencies.push_back("finite algebra satisfies EC1, EC3 and EC4");
  return c;
}

json classification_to_json(const FinPSL& p, const Classification& c) {
  json j;
  j["canonical"] = to_hex(canonical_form(p));
  j["n"] = p.size();
  j["boolean"] = c.is_boolean;
  if (c.has_theorem1) j["theorem1"] = c.theorem1;
  json ax = json::object();
  for (const auto& v : c.verdicts) {
    json a;
    a["value"] = v.result.value;
    a["role"] = logic::role_name(v.result.role);
    json asg = json::object();
    for (const auto& b : v.result.assignment) asg[b.var] = p.label(b.value);
    a["assignment"] = std::move(asg);
    ax[v.name] = std::move(a);
  }
  j["axioms"] = std::move(ax);
  j["inconsistencies"] = c.inconsistencies;
  return j;
}

// ---- product transfer -------------------------------------------------------

TransferReport product_transfer(const std::vector<FinPSL>& pool, std::size_t pairs, std::uint64_t seed) {
  TransferReport rep;
  if (pool.empty()) return rep;
  const auto& names = logic::axiom_names();
  std::map<std::size_t, std::vector<bool>> memo;
  auto verdicts = [&](std::size_t i) -> const std::vector<bool>& {
    auto it = memo.find(i);
    if (it != memo.end()) return it->second;
    std::vector<bool> v;
    for (const auto& n : names) v.push_back(logic::eval(pool[i], cached_axiom(n)).value);
    return memo.emplace(i, std::move(v)).first->second;
  };
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (std::size_t k = 0; k < pairs; ++k) {
    const std::size_t a = pick(rng), b = pick(rng);
    const FinPSL prod = product({pool[a], pool[b]}).algebra;
    const auto& va = verdicts(a);
    const auto& vb = verdicts(b);
    for (std::size_t i = 0; i < names.size(); ++i) {
      const bool whole = logic::eval(prod, cached_axiom(names[i])).value;
      const bool parts = va[i] && vb[i];
      ++rep.checks;
      if (whole != parts) rep.mismatches.push_back({a, b, names[i], whole, parts});
    }
    ++rep.pairs;
  }
  return rep;
}

}  // namespace pcsl
