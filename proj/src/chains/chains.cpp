#include "pcsl/chains.hpp"

#include <algorithm>
#include <numeric>

namespace pcsl {

// ---- shapes -------------------------------------------------------------------

std::size_t ShapeSpec::size() const {
  std::size_t n = 1;
  for (std::size_t t : factors) n *= t == 0 ? 2 : (std::size_t{1} << t) + 1;
  return n;
}

std::string ShapeSpec::to_string() const {
  if (factors.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += " x ";
    out += factors[i] == 0 ? "2" : "F" + std::to_string(factors[i]);
  }
  return out;
}

FinPSL ShapeSpec::build(std::size_t cap) const {
  std::vector<FinPSL> fs;
  for (std::size_t t : factors) fs.push_back(f_hat(t, cap));
  if (fs.size() == 1) return fs.front();
  return product(fs, cap).algebra;
}

namespace {

std::optional<std::size_t> hat_index(const FinPSL& f) {
  if (f.size() == 2) return f == f_hat(0) ? std::optional<std::size_t>(0) : std::nullopt;
  for (std::size_t t = 1; t < 12; ++t)
    if (f.size() == (std::size_t{1} << t) + 1) return f == f_hat(t) ? std::optional<std::size_t>(t) : std::nullopt;
  return std::nullopt;
}

Elem hat_one(std::size_t t) { return static_cast<Elem>(t == 0 ? 1 : std::size_t{1} << t); }
Elem hat_e(std::size_t t) { return static_cast<Elem>((std::size_t{1} << t) - 1); }

Elem join(const FinPSL& p, Elem a, Elem b) { return p.star(p.meet(p.star(a), p.star(b))); }

ElementSet skeletal_in(const FinPSL& p, const ElementSet& s) { return s & p.skeleton(); }
ElementSet dense_in(const FinPSL& p, const ElementSet& s) { return s & p.dense(); }

bool is_antiatom(const FinPSL& p, Elem x, const ElementSet& within) {
  if (x == p.one()) return false;
  bool maximal = true;
  within.for_each([&](Elem y) {
    if (y != p.one() && p.lt(x, y)) maximal = false;
  });
  return maximal;
}

ElementSet with(const FinPSL& p, const ElementSet& base, const std::vector<Elem>& gens) {
  ElementSet g = base;
  for (Elem x : gens) g.insert(x);
  return sg(p, g);
}

class Builder {
public:
  Builder(const FinPSL& t, ChainReport& rep) : t_(t), rep_(rep) {}

  void step(std::string name, const ElementSet& carrier, ShapeSpec shape, std::vector<Elem> gens,
            std::optional<bool> closed = std::nullopt) {
    ChainStep s;
    s.name = std::move(name);
    s.carrier = carrier;
    s.shape = std::move(shape);
    s.generators = std::move(gens);
    s.closed_form = closed;
    const FinPSL sub = restrict_to(t_, carrier).algebra;
    if (sub.size() == s.shape.size()) {
      SearchResult r = find_iso_over(sub, s.shape.build());
      if (r) {
        s.iso = std::move(r.morphism);
        s.verified = true;
      }
    }
    if (!s.verified) fail("step " + s.name + " is not isomorphic to " + s.shape.to_string());
    if (closed && !*closed) fail("step " + s.name + " differs from its closed form");
    if (!rep_.steps.empty() && !rep_.steps.back().carrier.is_subset_of(carrier))
      fail("step " + s.name + " does not contain its predecessor");
    rep_.steps.push_back(std::move(s));
  }

  void fail(const std::string& why) {
    if (rep_.failure.empty()) rep_.failure = why;
  }

  void finish(const ElementSet& first) {
    if (rep_.steps.empty() || rep_.steps.front().carrier != first) fail("first step is not S");
    if (!rep_.steps.empty() && rep_.steps.back().carrier != ElementSet::full(t_.size()))
      fail("last step is not T");
    rep_.ok = rep_.failure.empty();
  }

private:
  const FinPSL& t_;
  ChainReport& rep_;
};

void require_subalgebra(const FinPSL& t, const ElementSet& s) {
  if (s.universe() != t.size() || !is_subalgebra(t, s))
    throw ChainError("S is not a subalgebra carrier of T");
}

std::size_t log2_exact(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return (std::size_t{1} << k) == n ? k : ~std::size_t{0};
}

}  // namespace

// ---- first chain lemma ------------------------------------------------------------

ChainReport chain_ext1(const Product& prod, const ElementSet& s) {
  const FinPSL& t = prod.algebra;
  const ProductCoding& cd = prod.coding;
  const std::size_t q = cd.arity();
  if (q == 0) throw ChainError("T must have at least one factor");
  std::vector<std::size_t> f(q);
  for (std::size_t i = 0; i < q; ++i) {
    const auto h = hat_index(cd.factor(i));
    if (!h || *h == 0) throw ChainError("factor " + std::to_string(i) + " is not F̂_t with t >= 1");
    f[i] = *h;
  }
  require_subalgebra(t, s);

  std::size_t s_t = 0;
  if (s.size() != 2) {
    s_t = log2_exact(s.size() - 1);
    if (s_t == ~std::size_t{0} || !find_iso_over(restrict_to(t, s).algebra, f_hat(s_t)))
      throw ChainError("S is not isomorphic to any F̂_s");
  }
  Elem d = t.one();
  if (s_t > 0)
    dense_in(t, s).for_each([&](Elem x) {
      if (x != t.one()) d = x;
    });
  const std::vector<Elem> dt = cd.tuple(d);

  std::vector<std::size_t> proj(q);
  for (std::size_t i = 0; i < q; ++i) {
    ElementSet img(cd.factor(i).size());
    s.for_each([&](Elem x) { img.insert(cd.coord(x, i)); });
    proj[i] = img.size();
  }

  ChainReport rep;
  rep.lemma = "ext1";
  std::vector<std::size_t> perm(q);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  // larger projections first, coordinates where d is e before the others
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (proj[a] != proj[b]) return proj[a] > proj[b];
    const bool ea = dt[a] != hat_one(f[a]), eb = dt[b] != hat_one(f[b]);
    return ea && !eb;
  });
  rep.permutation = perm;
  Builder out(t, rep);

  auto one = [&](std::size_t k) { return hat_one(f[perm[k]]); };
  auto e = [&](std::size_t k) { return hat_e(f[perm[k]]); };
  auto ones = [&] {
    std::vector<Elem> w(q);
    for (std::size_t k = 0; k < q; ++k) w[k] = one(k);
    return w;
  };
  auto elem = [&](const std::vector<Elem>& w) {
    std::vector<Elem> orig(q);
    for (std::size_t k = 0; k < q; ++k) orig[perm[k]] = w[k];
    return cd.index(orig);
  };
  std::vector<Elem> dw(q);
  for (std::size_t k = 0; k < q; ++k) dw[k] = dt[perm[k]];

  if (proj[perm[0]] != s.size()) out.fail("no coordinate projection is faithful on S");
  std::vector<std::size_t> g(q);
  for (std::size_t k = 0; k < q; ++k) {
    const std::size_t n = proj[perm[k]];
    // S_l is the projection when d has e there, else its hat
    g[k] = dw[k] == e(k) && s_t > 0 ? log2_exact(n - 1) : log2_exact(n);
    if (g[k] == ~std::size_t{0} || g[k] > f[perm[k]]) {
      out.fail("projection " + std::to_string(perm[k]) + " of S has an unexpected size");
      g[k] = std::min<std::size_t>(g[k], f[perm[k]]);
    }
  }
  if (s_t > 0)
    for (std::size_t k = 1; k < q; ++k)
      if (proj[perm[k]] < s.size() && dw[k] != one(k))
        out.fail("d is not 1 on a non-faithful coordinate");

  const ShapeSpec s_shape{{s_t}};
  out.step("T0", s, s_shape, {});
  ElementSet cur = s;

  if (q == 1) {
    std::vector<Elem> gens;
    if (s_t == 0) {
      gens = {elem({e(0)})};
      cur = with(t, cur, gens);
    }
    out.step("T1", cur, {{g[0]}}, gens);
    out.step("T2", ElementSet::full(t.size()), {{f[0]}}, {});
    out.finish(s);
    return rep;
  }

  {
    std::vector<Elem> gens;
    if (s_t == 0) {
      auto w = ones();
      w[0] = e(0);
      gens.push_back(elem(w));
      cur = with(t, cur, gens);
    }
    out.step("T1", cur, {{g[0]}}, gens);
  }
  for (std::size_t k = 1; k < q; ++k) {
    std::vector<Elem> gens;
    auto dk = ones();
    dk[k] = e(k);
    gens.push_back(elem(dk));
    auto bk = ones();
    bk[k] = 0;
    gens.push_back(elem(bk));
    if (s_t > 0 && dw[k] == e(k)) {
      // d lifted to 1 on positions 1..k unties them from position 0
      auto dp = dw;
      for (std::size_t j = 1; j <= k; ++j) dp[j] = one(j);
      gens.push_back(elem(dp));
    }
    cur = with(t, cur, gens);
    out.step("T" + std::to_string(k + 1), cur, {{g.begin(), g.begin() + static_cast<long>(k) + 1}}, gens);
  }

  const ElementSet sk_t = t.skeleton();
  std::vector<std::size_t> shape = g;
  for (std::size_t k = 0; k < q; ++k) {
    auto dl = ones();
    dl[k] = e(k);
    const Elem dk = elem(dl);
    for (std::size_t m = 1; shape[k] < f[perm[k]]; ++m) {
      const ElementSet sk_cur = skeletal_in(t, cur);
      std::optional<Elem> b;
      sk_cur.for_each([&](Elem x) {
        if (!b && t.lt(x, dk) && is_antiatom(t, x, sk_cur) && !is_antiatom(t, x, sk_t)) b = x;
      });
      if (!b) {
        out.fail("no anti-atom to split in factor " + std::to_string(perm[k]));
        break;
      }
      std::optional<Elem> bb;
      sk_t.for_each([&](Elem y) {
        if (!bb && t.lt(*b, y) && t.lt(y, dk) && t.lt(join(t, *b, t.star(y)), dk)) bb = y;
      });
      if (!bb) {
        out.fail("no splitting element in factor " + std::to_string(perm[k]));
        break;
      }
      const ElementSet next = with(t, cur, {*bb});
      const bool closed = closed_form_sg(t, cur, *bb, ClosedForm::kSplit) == next;
      cur = next;
      ++shape[k];
      out.step("T" + std::to_string(q + k) + "," + std::to_string(m), cur, {shape}, {*bb}, closed);
    }
    out.step("T" + std::to_string(q + k + 1), cur, {shape}, {});
  }
  out.finish(s);
  return rep;
}

// ---- second chain lemma -----------------------------------------------------------

ChainReport chain_ext2(const Product& prod, const ElementSet& s) {
  const FinPSL& t = prod.algebra;
  const ProductCoding& cd = prod.coding;
  const std::size_t n = cd.arity();
  std::vector<std::size_t> f(n);
  std::size_t p = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto h = hat_index(cd.factor(i));
    if (!h) throw ChainError("factor " + std::to_string(i) + " is neither 2 nor F̂_t");
    f[i] = *h;
    if (f[i] == 0) {
      if (p != i) throw ChainError("the two-element factors must come first");
      ++p;
    }
  }
  const std::size_t q = n - p;
  if (p == 0 || q == 0) throw ChainError("T needs at least one two-element factor and one F̂_t factor");
  require_subalgebra(t, s);

  s.for_each([&](Elem x) {
    if (x == t.one()) return;
    bool all_top = true;
    for (std::size_t i = p; i < n; ++i) all_top = all_top && cd.coord(x, i) == hat_one(f[i]);
    if (all_top)
      throw ChainError("S has an element other than 1 whose F̂ coordinates are all 1: " + t.label(x));
  });
  const ShapeSpec hats{{f.begin() + static_cast<long>(p), f.end()}};
  if (s.size() != hats.size() || !find_iso_over(restrict_to(t, s).algebra, hats.build()))
    throw ChainError("S is not isomorphic to " + hats.to_string());

  ChainReport rep;
  rep.lemma = "ext2";
  rep.permutation.resize(n);
  std::iota(rep.permutation.begin(), rep.permutation.end(), std::size_t{0});
  Builder out(t, rep);
  out.step("T0", s, hats, {});
  ElementSet cur = s;
  for (std::size_t k = 0; k < p; ++k) {
    std::vector<Elem> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = i < p ? static_cast<Elem>(i < k ? 1 : 0) : hat_one(f[i]);
    const Elem b = cd.index(w);
    if (cur.contains(b)) out.fail("witness b_" + std::to_string(k) + " already lies in the chain");
    cur = with(t, cur, {b});
    ShapeSpec shape;
    shape.factors.assign(k + 1, 0);
    shape.factors.insert(shape.factors.end(), hats.factors.begin(), hats.factors.end());
    out.step("T" + std::to_string(k + 1), cur, shape, {b});
  }
  out.finish(s);
  return rep;
}

json chain_report_to_json(const FinPSL& ambient, const ChainReport& r) {
  json j;
  j["lemma"] = r.lemma;
  j["ok"] = r.ok;
  if (!r.failure.empty()) j["failure"] = r.failure;
  j["permutation"] = r.permutation;
  json steps = json::array();
  for (const auto& s : r.steps) {
    json st;
    st["name"] = s.name;
    st["size"] = s.carrier.size();
    st["shape"] = s.shape.to_string();
    json carrier = json::array();
    s.carrier.for_each([&](Elem x) { carrier.push_back(ambient.label(x)); });
    st["carrier"] = std::move(carrier);
    json gens = json::array();
    for (Elem x : s.generators) gens.push_back(ambient.label(x));
    st["generators"] = std::move(gens);
    st["verified"] = s.verified;
    if (s.iso) st["iso"] = s.iso->map;
    if (s.closed_form) st["closed_form"] = *s.closed_form;
    steps.push_back(std::move(st));
  }
  j["steps"] = std::move(steps);
  return j;
}

// ---- closed forms ---------------------------------------------------------------

ElementSet closed_form_sg(const FinPSL& p, const ElementSet& base, Elem b, ClosedForm form) {
  if (form == ClosedForm::kAdjoin) return adjoin_parts(p, base, b).all();
  const auto sk = skeletal_in(p, base).elements();
  const auto ds = dense_in(p, base).elements();
  const Elem bs = p.star(b);
  ElementSet out(p.size());
  for (Elem x : sk)
    for (Elem y : sk) {
      const Elem j = join(p, p.meet(b, x), p.meet(bs, y));
      for (Elem d : ds) out.insert(p.meet(j, d));
    }
  return out;
}

AdjoinParts adjoin_parts(const FinPSL& p, const ElementSet& base, Elem b) {
  AdjoinParts out;
  out.base = base;
  out.meets = ElementSet(p.size());
  out.stars = ElementSet(p.size());
  const auto ds = dense_in(p, base).elements();
  skeletal_in(p, base).for_each([&](Elem s) {
    if (p.leq(s, b)) return;
    for (Elem d : ds) {
      out.meets.insert(p.meet(p.meet(d, b), s));
      out.stars.insert(p.meet(d, p.star(p.meet(b, s))));
    }
  });
  out.disjoint = !out.base.intersects(out.meets) && !out.base.intersects(out.stars) &&
                 !out.meets.intersects(out.stars);
  return out;
}

// ---- the adjoined two-element factor ---------------------------------------------

namespace {

struct Case3Frame {
  std::size_t q = 0;
  std::vector<std::size_t> f;
};

Case3Frame case3_frame(const Product& prod, std::size_t atom) {
  const ProductCoding& cd = prod.coding;
  Case3Frame fr;
  if (cd.arity() < 2) throw ChainError("T must be 2 x a product of at least one F̂_t");
  fr.q = cd.arity() - 1;
  fr.f.resize(cd.arity());
  for (std::size_t i = 0; i < cd.arity(); ++i) {
    const auto h = hat_index(cd.factor(i));
    if (!h || (i == 0) != (*h == 0))
      throw ChainError("T must be 2 x a product of F̂_t factors with t >= 1");
    fr.f[i] = *h;
  }
  if (atom >= fr.f[fr.q]) throw ChainError("atom index out of range for the last factor");
  return fr;
}

}  // namespace

ElementSet case3_subalgebra(const Product& prod, std::size_t atom) {
  const Case3Frame fr = case3_frame(prod, atom);
  const FinPSL& t = prod.algebra;
  const ProductCoding& cd = prod.coding;
  const FinPSL& last = cd.factor(fr.q);
  const auto a = static_cast<Elem>(std::size_t{1} << atom);
  ElementSet s(t.size());
  for (std::size_t x = 0; x < t.size(); ++x) {
    const auto e = static_cast<Elem>(x);
    if (last.leq(a, cd.coord(e, fr.q)) == (cd.coord(e, 0) == 1)) s.insert(e);
  }
  return s;
}

std::optional<Case3Result> case3_witness_and_iso(const Product& prod, std::size_t atom, const FinPSL& p,
                                                 const Morphism& g) {
  const Case3Frame fr = case3_frame(prod, atom);
  const FinPSL& t = prod.algebra;
  const ProductCoding& cd = prod.coding;
  const std::size_t q = fr.q;
  const ElementSet s = case3_subalgebra(prod, atom);
  const auto sub = restrict_to(t, s);
  if (g.map.size() != s.size()) throw std::invalid_argument("case3: g must be given on every element of S");
  const HomCheck gc = is_homomorphism(sub.algebra, p, g);
  if (!gc.ok || !gc.injective) throw std::invalid_argument("case3: g does not embed S in P");
  auto G = [&](Elem x) { return g.map[static_cast<std::size_t>(sub.from_parent[x])]; };

  auto tuple_with = [&](std::initializer_list<std::pair<std::size_t, Elem>> changes) {
    std::vector<Elem> w(q + 1);
    for (std::size_t i = 0; i <= q; ++i) w[i] = hat_one(fr.f[i]);
    for (const auto& [i, v] : changes) w[i] = v;
    return cd.index(w);
  };
  std::vector<Elem> dm(q + 1), am(q + 1);
  for (std::size_t m = 1; m <= q; ++m) {
    dm[m] = G(tuple_with({{m, hat_e(fr.f[m])}}));
    am[m] = m == q ? G(tuple_with({{0, 0}, {m, 0}})) : G(tuple_with({{m, 0}}));
  }
  std::vector<Elem> lower;  // images of the elements of S with 2-coordinate 0
  s.for_each([&](Elem x) {
    if (cd.coord(x, 0) == 0) lower.push_back(G(x));
  });

  auto witness = [&](Elem b) {
    if (!p.is_skeletal(b)) return false;
    for (std::size_t m = 1; m < q; ++m)
      if (!p.parallel(b, dm[m]) || !p.lt(p.star(b), am[m])) return false;
    if (!p.lt(am[q], b) || !p.parallel(p.meet(b, p.star(am[q])), dm[q]) ||
        !p.lt(join(p, p.star(b), am[q]), dm[q]))
      return false;
    return std::all_of(lower.begin(), lower.end(), [&](Elem x) { return p.lt(x, b); });
  };
  std::optional<Elem> found;
  for (std::size_t x = 0; x < p.size() && !found; ++x)
    if (witness(static_cast<Elem>(x))) found = static_cast<Elem>(x);
  if (!found) return std::nullopt;

  Case3Result r;
  r.b = *found;
  r.b_bar = tuple_with({{0, 0}});
  const Elem b = r.b, bb = r.b_bar;

  std::vector<int> hv(t.size(), -1);
  r.well_defined = true;
  auto assign = [&](Elem x, Elem v) {
    if (hv[x] < 0) hv[x] = v;
    else if (hv[x] != v) r.well_defined = false;
  };
  s.for_each([&](Elem x) { assign(x, G(x)); });
  const auto ds = dense_in(t, s).elements();
  skeletal_in(t, s).for_each([&](Elem x) {
    if (cd.coord(x, 0) != 1) return;
    for (Elem d : ds) {
      assign(t.meet(t.meet(d, bb), x), p.meet(p.meet(G(d), b), G(x)));
      assign(t.meet(d, t.star(t.meet(bb, x))), p.meet(G(d), p.star(p.meet(b, G(x)))));
    }
  });
  r.h.kind = MorphismKind::kIsomorphism;
  r.h.map.resize(t.size());
  for (std::size_t x = 0; x < t.size(); ++x) {
    if (hv[x] < 0) r.well_defined = false;
    r.h.map[x] = static_cast<Elem>(std::max(hv[x], 0));
  }
  r.check = is_homomorphism(t, p, r.h);

  ElementSet gs(p.size());
  s.for_each([&](Elem x) { gs.insert(G(x)); });
  r.s_prime = with(p, gs, {b});
  ElementSet image(p.size());
  for (Elem x : r.h.map) image.insert(x);
  r.onto_s_prime = image == r.s_prime;
  r.over_s = true;
  s.for_each([&](Elem x) { r.over_s = r.over_s && r.h.map[x] == G(x); });

  const AdjoinParts pp = adjoin_parts(p, gs, b);
  r.closed_form_p = pp.all() == r.s_prime;
  r.disjoint_p = pp.disjoint;
  const AdjoinParts tp = adjoin_parts(t, s, bb);
  r.closed_form_t = tp.all() == ElementSet::full(t.size());
  r.disjoint_t = tp.disjoint;

  // a_q is the one maximal central element of S that stops being a maximal
  // skeletal element once b is adjoined
  const auto gsub = restrict_to(p, gs);
  std::vector<Elem> central;
  gsub.algebra.central().for_each([&](Elem x) {
    if (x != gsub.algebra.one()) central.push_back(gsub.to_parent[x]);
  });
  const ElementSet sk_prime = skeletal_in(p, r.s_prime);
  std::vector<Elem> demoted;
  for (Elem c : central) {
    const bool top = std::none_of(central.begin(), central.end(), [&](Elem y) { return p.lt(c, y); });
    if (top && !is_antiatom(p, c, sk_prime)) demoted.push_back(c);
  }
  r.central_bookkeeping = demoted == std::vector<Elem>{am[q]};
  return r;
}

std::optional<Case3Result> case3_witness_and_iso(const Product& prod, std::size_t atom) {
  const ElementSet s = case3_subalgebra(prod, atom);
  return case3_witness_and_iso(prod, atom, prod.algebra, Morphism{s.elements(), MorphismKind::kEmbedding});
}

json case3_to_json(const FinPSL& p, const Case3Result& r) {
  json j;
  j["ok"] = r.ok();
  j["b"] = p.label(r.b);
  j["direction"] = r.direction;
  j["s_prime_size"] = r.s_prime.size();
  j["h"] = r.h.map;
  j["homomorphism"] = r.check.ok;
  j["injective"] = r.check.injective;
  j["well_defined"] = r.well_defined;
  j["over_s"] = r.over_s;
  j["onto_s_prime"] = r.onto_s_prime;
  j["closed_form"] = r.closed_form_p && r.closed_form_t;
  j["disjoint"] = r.disjoint_p && r.disjoint_t;
  j["central_bookkeeping"] = r.central_bookkeeping;
  return j;
}

}  // namespace pcsl
