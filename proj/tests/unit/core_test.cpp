#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "pcsl/construct.hpp"
#include "pcsl/json_io.hpp"
#include "pcsl/morphisms.hpp"
#include "pcsl_testing/oracles.hpp"

namespace pcsl {
namespace {

AlgebraTables three_tables(long long star_e) {
  AlgebraTables t;
  t.n = 3;
  t.zero = 0;
  t.meet = {{0, 0, 0}, {0, 1, 1}, {0, 1, 2}};
  t.star = {2, star_e, 0};
  return t;
}

std::vector<FinPSL> sample_algebras() {
  std::vector<FinPSL> v;
  v.push_back(trivial_algebra());
  v.push_back(f_hat(0));
  v.push_back(f_hat(1));
  v.push_back(f_hat(2));
  v.push_back(boolean_algebra(3).algebra);
  v.push_back(product({f_hat(1), f_hat(0)}).algebra);
  v.push_back(product({f_hat(2), f_hat(1)}).algebra);
  v.push_back(hat(hat(f_hat(1))));
  v.push_back(hat(product({f_hat(1), f_hat(1)}).algebra));
  return v;
}

TEST(Validate, ThreeElementChainIsValid) {
  auto r = validate(three_tables(0));
  EXPECT_TRUE(r.ok()) << r.to_string();
  const FinPSL p = FinPSL::from_tables(three_tables(0));
  EXPECT_EQ(p.one(), 2);
}

TEST(Validate, OneElementIsValid) {
  AlgebraTables t;
  t.n = 1;
  t.meet = {{0}};
  t.star = {0};
  EXPECT_TRUE(validate(t).ok());
  EXPECT_EQ(FinPSL::from_tables(t).size(), 1u);
}

TEST(Validate, SelfStarredMiddleViolatesPseudocomplement) {
  auto r = validate(three_tables(1));
  ASSERT_FALSE(r.ok());
  bool found = false;
  for (const auto& v : r.violations)
    if (v.law == Law::kPseudocomplement && v.witness == std::vector<std::size_t>{1, 1}) found = true;
  EXPECT_TRUE(found) << r.to_string();
  EXPECT_THROW(FinPSL::from_tables(three_tables(1)), ValidationError);
}

TEST(Validate, ReportsNonAssociativeAndZeroNotLeast) {
  AlgebraTables t;
  t.n = 4;
  t.zero = 0;
  // 1^2 = 3 and 2^3 = 1 break associativity; 0 stays least
  t.meet = {{0, 0, 0, 0}, {0, 1, 3, 1}, {0, 3, 2, 1}, {0, 1, 1, 3}};
  t.star = {3, 0, 0, 0};
  auto r = validate(t);
  bool assoc = false;
  for (const auto& v : r.violations) assoc |= v.law == Law::kAssociative && v.witness.size() == 3;
  EXPECT_TRUE(assoc) << r.to_string();

  AlgebraTables z = three_tables(0);
  z.zero = 1;
  r = validate(z);
  bool least = false;
  for (const auto& v : r.violations) least |= v.law == Law::kZeroLeast;
  EXPECT_TRUE(least);
}

TEST(Validate, ShapeErrors) {
  AlgebraTables t = three_tables(0);
  t.meet[1].pop_back();
  EXPECT_FALSE(validate(t).ok());
  t = three_tables(0);
  t.star[0] = 7;
  EXPECT_EQ(validate(t).violations.front().law, Law::kShape);
  t = three_tables(0);
  t.labels = {"a"};
  EXPECT_FALSE(validate(t).ok());
}

TEST(Constructors, BooleanAlgebra) {
  EXPECT_EQ(boolean_algebra(0).algebra.size(), 1u);
  EXPECT_EQ(boolean_algebra(1).algebra.size(), 2u);
  const auto b2 = boolean_algebra(2).algebra;
  ASSERT_EQ(b2.size(), 4u);
  EXPECT_TRUE(b2.is_skeletal(1));
  EXPECT_TRUE(b2.is_skeletal(2));
  EXPECT_EQ(b2.star(1), 2);
  EXPECT_EQ(b2.star(2), 1);
  EXPECT_EQ(b2.label(1), "a");
  EXPECT_THROW(boolean_algebra(13, 4096), SizeCapError);
}

TEST(Constructors, HatOfTrivialIsTwoAndHatOfTwoIsThree) {
  const FinPSL two = hat(trivial_algebra());
  EXPECT_EQ(two.size(), 2u);
  EXPECT_TRUE(find_iso_over(two, boolean_algebra(1).algebra));
  const FinPSL three = hat(two);
  ASSERT_EQ(three.size(), 3u);
  EXPECT_EQ(three.label(1), "e");
  EXPECT_EQ(three.star(1), three.zero());
  EXPECT_EQ(three.star(three.zero()), 2);
  EXPECT_EQ(three.dense().elements(), (std::vector<Elem>{1, 2}));
}

TEST(Constructors, HatDenseSet) {
  const FinPSL p = hat(boolean_algebra(2).algebra);
  EXPECT_EQ(p.dense().size(), 2u);
  EXPECT_TRUE(p.dense().contains(*p.find_label("e")));
  EXPECT_TRUE(p.dense().contains(p.one()));
}

TEST(Constructors, FHat) {
  EXPECT_EQ(f_hat(0).size(), 2u);
  EXPECT_EQ(f_hat(1).size(), 3u);
  const FinPSL f2 = f_hat(2);
  ASSERT_EQ(f2.size(), 5u);
  EXPECT_EQ(f2.skeleton().size(), 4u);
  EXPECT_EQ(f2.dense().size(), 2u);
  const Elem e = *f2.find_label("e");
  EXPECT_FALSE(f2.skeleton().contains(e));
  EXPECT_EQ(f2.sk_join(*f2.find_label("a"), *f2.find_label("b")), f2.one());
}

TEST(Constructors, Products) {
  const auto empty = product({});
  EXPECT_EQ(empty.algebra.size(), 1u);
  const auto p22 = product({f_hat(0), f_hat(0)});
  EXPECT_TRUE(find_iso_over(p22.algebra, boolean_algebra(2).algebra));
  const auto p32 = product({f_hat(1), f_hat(0)});
  ASSERT_EQ(p32.algebra.size(), 6u);
  std::vector<std::string> dense;
  for (Elem d : p32.algebra.dense_list()) dense.push_back(p32.algebra.label(d));
  EXPECT_EQ(dense, (std::vector<std::string>{"(e,1)", "(1,1)"}));
  EXPECT_THROW(product({f_hat(3), f_hat(3), f_hat(3), f_hat(3)}, 4096), SizeCapError);
}

TEST(Constructors, CodingIsBijective) {
  const auto p = product({f_hat(2), f_hat(1), f_hat(0)});
  for (std::size_t x = 0; x < p.algebra.size(); ++x) {
    const auto t = p.coding.tuple(static_cast<Elem>(x));
    EXPECT_EQ(p.coding.index(t), x);
    for (std::size_t y = 0; y < p.algebra.size(); ++y) {
      const auto u = p.coding.tuple(static_cast<Elem>(y));
      const auto m = p.coding.tuple(p.algebra.meet(static_cast<Elem>(x), static_cast<Elem>(y)));
      for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(m[i], p.coding.factor(i).meet(t[i], u[i]));
    }
    const auto s = p.coding.tuple(p.algebra.star(static_cast<Elem>(x)));
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(s[i], p.coding.factor(i).star(t[i]));
  }
}

TEST(Queries, SkeletonDenseCentral) {
  const FinPSL three = f_hat(1);
  EXPECT_EQ(three.skeleton().elements(), (std::vector<Elem>{0, 2}));
  EXPECT_EQ(three.dense().elements(), (std::vector<Elem>{1, 2}));
  EXPECT_EQ(boolean_algebra(2).algebra.central().size(), 4u);
  const FinPSL two = f_hat(0);
  EXPECT_EQ(two.dense().elements(), (std::vector<Elem>{1}));
}

TEST(Queries, SkJoin) {
  const auto b2 = boolean_algebra(2).algebra;
  for (Elem b : b2.skeleton_list()) EXPECT_EQ(b2.sk_join(0, b), b);
  EXPECT_EQ(b2.sk_join(1, 2), 3);
  EXPECT_THROW(f_hat(1).sk_join(1, 0), std::invalid_argument);
}

TEST(Sg, SmallClosures) {
  const FinPSL three = f_hat(1);
  EXPECT_EQ(sg(three, ElementSet(3)).elements(), (std::vector<Elem>{0, 2}));
  EXPECT_EQ(sg(three, ElementSet(3, {1})).size(), 3u);
}

TEST(Sg, MatchesNaiveClosure) {
  std::mt19937 rng(7);
  for (const auto& p : sample_algebras()) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(p.size()) - 1);
    for (int trial = 0; trial < 20; ++trial) {
      ElementSet g(p.size());
      for (int k = 0; k < 3; ++k) g.insert(static_cast<Elem>(pick(rng)));
      const auto s = sg(p, g);
      EXPECT_EQ(s, testing::naive_closure(p, g));
      EXPECT_TRUE(is_subalgebra(p, s));
    }
  }
}

TEST(Quotient, ByTopIsIdentityAndByZeroIsTrivial) {
  for (const auto& p : sample_algebras()) {
    const auto q1 = theta_quotient(p, p.one());
    EXPECT_TRUE(find_iso_over(q1.algebra, p));
    EXPECT_EQ(theta_quotient(p, p.zero()).algebra.size(), 1u);
  }
}

TEST(Quotient, NuIsSurjectiveHomomorphism) {
  for (const auto& p : sample_algebras())
    for (std::size_t a = 0; a < p.size(); ++a) {
      const auto q = theta_quotient(p, static_cast<Elem>(a));
      const auto check = is_homomorphism(p, q.algebra, q.nu);
      EXPECT_TRUE(check.ok) << check.law;
      EXPECT_TRUE(check.surjective);
      EXPECT_EQ(q.algebra.one(), std::find(q.representative.begin(), q.representative.end(),
                                           static_cast<Elem>(a)) - q.representative.begin());
    }
}

TEST(Quotient, ProductRoundTrip) {
  const std::vector<FinPSL> fs = {f_hat(1), f_hat(0), f_hat(2)};
  const auto p = product(fs);
  for (std::size_t k = 0; k <= fs.size(); ++k) {
    std::vector<Elem> t(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) t[i] = i < k ? fs[i].zero() : fs[i].one();
    const auto q = theta_quotient(p.algebra, p.coding.index(t));
    const auto rest = product(std::vector<FinPSL>(fs.begin() + static_cast<long>(k), fs.end()));
    EXPECT_TRUE(find_iso_over(q.algebra, rest.algebra)) << "k=" << k;
  }
}

TEST(Quotient, HatThenQuotientByE) {
  for (std::size_t t = 1; t <= 3; ++t) {
    const FinPSL p = f_hat(t);
    const auto q = theta_quotient(p, *p.find_label("e"));
    EXPECT_TRUE(find_iso_over(q.algebra, boolean_algebra(t).algebra));
  }
}

// Laws every algebra must satisfy, checked exhaustively.
class Laws : public ::testing::TestWithParam<int> {};

TEST_P(Laws, SkeletonIsBooleanAlgebra) {
  const FinPSL p = sample_algebras()[static_cast<std::size_t>(GetParam())];
  const auto& sk = p.skeleton_list();
  auto j = [&](Elem a, Elem b) { return p.sk_join(a, b); };
  for (Elem a : sk) {
    EXPECT_TRUE(p.is_skeletal(p.star(a)));
    EXPECT_EQ(j(a, p.star(a)), p.one());
    EXPECT_EQ(p.meet(a, p.star(a)), p.zero());
    EXPECT_EQ(j(a, p.zero()), a);
    for (Elem b : sk) {
      EXPECT_TRUE(p.is_skeletal(p.meet(a, b)));
      EXPECT_EQ(j(a, b), j(b, a));
      EXPECT_EQ(j(a, p.meet(a, b)), a);
      EXPECT_EQ(p.meet(a, j(a, b)), a);
      EXPECT_EQ(p.star(j(a, b)), p.meet(p.star(a), p.star(b)));
      for (Elem c : sk) {
        EXPECT_EQ(p.meet(a, j(b, c)), j(p.meet(a, b), p.meet(a, c)));
        EXPECT_EQ(j(a, p.meet(b, c)), p.meet(j(a, b), j(a, c)));
        EXPECT_EQ(j(j(a, b), c), j(a, j(b, c)));
        // least skeletal upper bound
        if (p.leq(a, c) && p.leq(b, c)) EXPECT_TRUE(p.leq(j(a, b), c));
      }
    }
  }
}

TEST_P(Laws, DenseIsFilter) {
  const FinPSL p = sample_algebras()[static_cast<std::size_t>(GetParam())];
  const auto& d = p.dense();
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < p.size(); ++y) {
      const auto a = static_cast<Elem>(x), b = static_cast<Elem>(y);
      if (d.contains(a) && p.leq(a, b)) EXPECT_TRUE(d.contains(b));
      if (d.contains(a) && d.contains(b)) EXPECT_TRUE(d.contains(p.meet(a, b)));
    }
}

TEST_P(Laws, StarLaws) {
  const FinPSL p = sample_algebras()[static_cast<std::size_t>(GetParam())];
  for (std::size_t x = 0; x < p.size(); ++x) {
    const auto a = static_cast<Elem>(x);
    EXPECT_EQ(p.star(p.star(p.star(a))), p.star(a));
    EXPECT_EQ(p.meet(a, p.star(a)), p.zero());
    for (std::size_t y = 0; y < p.size(); ++y) {
      const auto b = static_cast<Elem>(y);
      if (p.leq(a, b)) EXPECT_TRUE(p.leq(p.star(b), p.star(a)));
      if (p.meet(a, b) == p.zero()) EXPECT_TRUE(p.leq(b, p.star(a)));
    }
  }
}

TEST_P(Laws, JsonRoundTrip) {
  const FinPSL p = sample_algebras()[static_cast<std::size_t>(GetParam())];
  const FinPSL q = algebra_from_json(json::parse(algebra_to_json(p).dump()));
  EXPECT_EQ(p, q);
  EXPECT_EQ(p.labels(), q.labels());
}

INSTANTIATE_TEST_SUITE_P(Samples, Laws, ::testing::Range(0, 9));

TEST(Json, RejectsInvalidAndMalformed) {
  json j = algebra_to_json(f_hat(1));
  j["star"][1] = 1;
  EXPECT_THROW(algebra_from_json(j), ValidationError);
  json k = algebra_to_json(f_hat(1));
  k.erase("meet");
  EXPECT_THROW(algebra_from_json(k), FormatError);
  k = algebra_to_json(f_hat(1));
  k["meet"] = "nope";
  EXPECT_THROW(algebra_from_json(k), FormatError);
}

TEST(Json, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "pcsl_core_test_alg.json";
  const FinPSL p = product({f_hat(1), f_hat(0)}).algebra;
  save_algebra(p, path);
  EXPECT_EQ(load_algebra(path), p);
  std::filesystem::remove(path);
}

TEST(Json, MorphismRoundTrip) {
  const Morphism m{{0, 2, 1}, MorphismKind::kEmbedding};
  EXPECT_EQ(morphism_from_json(morphism_to_json(m)), m);
  EXPECT_EQ(to_hex(from_hex("00ff1a")), "00ff1a");
}

TEST(Labels, FindLabel) {
  const auto p = product({f_hat(1), f_hat(0)}).algebra;
  EXPECT_EQ(p.find_label("( e , 1 )"), p.find_label("(e,1)"));
  EXPECT_TRUE(p.find_label("(e,1)").has_value());
  EXPECT_EQ(p.find_label("#3"), Elem{3});
  EXPECT_FALSE(p.find_label("#99").has_value());
  EXPECT_FALSE(p.find_label("zz").has_value());
}

}  // namespace
}  // namespace pcsl
