#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cgt/closure.hpp"
#include "cgt/products.hpp"

using namespace cgt;

TEST_CASE("direct sum") {
  auto g = direct_sum(PermGroup::cyclic(2), PermGroup::cyclic(3));
  CHECK(g.degree() == 5);
  CHECK(g.order().to_u64() == 6);

  auto padded = direct_sum(PermGroup::trivial(2), PermGroup::symmetric(3));
  CHECK(padded.degree() == 5);
  CHECK(padded.order().to_u64() == 6);

  auto twos3 = direct_sum(PermGroup::symmetric(3), PermGroup::symmetric(3));
  CHECK(twos3.order().to_u64() == 36);
  CHECK(twos3.orbits().size() == 2);
}

TEST_CASE("imprimitive wreath product") {
  auto w = wreath_imprimitive(PermGroup::cyclic(2), PermGroup::cyclic(3));
  CHECK(w.degree() == 6);
  CHECK(w.order().to_u64() == 24);  // 2^3 * 3
  CHECK(w.order() == wreath_order(PermGroup::cyclic(2), PermGroup::cyclic(3)));

  auto d4 = wreath_imprimitive(PermGroup::symmetric(2), PermGroup::symmetric(2));
  CHECK(d4.degree() == 4);
  CHECK(d4.order().to_u64() == 8);
  CHECK(!d4.is_primitive());
}

TEST_CASE("product action wreath") {
  auto g = wreath_product_action(PermGroup::symmetric(3), PermGroup::symmetric(2));
  CHECK(g.degree() == 9);
  CHECK(g.order().to_u64() == 72);
  CHECK(g.is_primitive());

  // preconditions are hard errors naming the criterion
  CHECK_THROWS_WITH_AS(
      wreath_product_action(PermGroup::cyclic(2), PermGroup::cyclic(2)),
      "product action: K is regular", product_action_error);
  CHECK_THROWS_WITH_AS(
      wreath_product_action(PermGroup::cyclic(4), PermGroup::cyclic(2)),
      "product action: K is not primitive", product_action_error);
  CHECK_THROWS_WITH_AS(
      wreath_product_action(PermGroup::symmetric(3), PermGroup::trivial(1)),
      "product action: L is trivial", product_action_error);
  CHECK_THROWS_WITH_AS(
      wreath_product_action(PermGroup::symmetric(3),
                            PermGroup::from_generators(
                                3, {Perm::from_cycles(3, {{0, 1}})})),
      "product action: L is not transitive", product_action_error);

  auto big = wreath_product_action(PermGroup::symmetric(4), PermGroup::alternating(3));
  CHECK(big.degree() == 64);
  CHECK(big.order().to_u64() == 41472);  // 24^3 * 3
}

TEST_CASE("direct product closure containment (small cases)") {
  // (K x L)^(m) <= K^(m) x L^(m)
  std::vector<PermGroup> factors;
  factors.push_back(PermGroup::trivial(1));
  factors.push_back(PermGroup::cyclic(2));
  factors.push_back(PermGroup::cyclic(3));
  factors.push_back(PermGroup::symmetric(3));
  for (const auto& k : factors)
    for (const auto& l : factors) {
      auto prod = direct_sum(k, l);
      if (prod.degree() < 2) continue;
      for (uint32_t m = 2; m <= 3; ++m) {
        auto lhs = m_closure(prod, m).closed_group;
        auto rhs = direct_sum(m_closure(k, m).closed_group,
                              m_closure(l, m).closed_group);
        CHECK(lhs.is_subgroup_of(rhs));
      }
    }
}

TEST_CASE("imprimitive wreath closure equality (small cases)") {
  // (K wr L)^(m) = K^(m) wr L^(m)
  std::vector<PermGroup> factors;
  factors.push_back(PermGroup::cyclic(2));
  factors.push_back(PermGroup::cyclic(3));
  factors.push_back(PermGroup::symmetric(3));
  for (const auto& k : factors)
    for (const auto& l : factors) {
      auto prod = wreath_imprimitive(k, l);
      for (uint32_t m = 2; m <= 3; ++m) {
        if (m == 3 && prod.degree() > 6) continue;  // covered in acceptance
        auto lhs = m_closure(prod, m).closed_group;
        auto rhs = wreath_imprimitive(m_closure(k, m).closed_group,
                                      m_closure(l, m).closed_group);
        CHECK(lhs.same_group_as(rhs));
      }
    }
}

TEST_CASE("instantiated theorem: (C2 wr C3)^(2) = C2^(2) wr C3^(2)") {
  auto w = wreath_imprimitive(PermGroup::cyclic(2), PermGroup::cyclic(3));
  auto lhs = two_closure(w).closed_group;
  auto rhs = wreath_imprimitive(two_closure(PermGroup::cyclic(2)).closed_group,
                                two_closure(PermGroup::cyclic(3)).closed_group);
  CHECK(lhs.order().to_u64() == 24);
  CHECK(lhs.same_group_as(rhs));
}

TEST_CASE("primitive wreath closure containment at m=3, degree 9") {
  auto kl = wreath_product_action(PermGroup::symmetric(3), PermGroup::symmetric(2));
  auto lhs = m_closure(kl, 3).closed_group;
  CHECK(lhs.is_subgroup_of(kl));  // K^(3) up L^(3) equals K up L here
  CHECK(lhs.same_group_as(kl));
}

TEST_CASE("direct product closure containment at degree 4 (sampled)") {
  std::mt19937_64 rng(0xd1ec7);
  std::vector<PermGroup> pool{PermGroup::symmetric(4), PermGroup::alternating(4),
                              PermGroup::cyclic(4), PermGroup::cyclic(3),
                              PermGroup::symmetric(3)};
  for (int i = 0; i < 6; ++i) {
    std::vector<Point> img(4);
    for (Point j = 0; j < 4; ++j) img[j] = j;
    std::shuffle(img.begin(), img.end(), rng);
    pool.push_back(PermGroup::from_generators(4, {Perm(img)}));
  }
  for (int trial = 0; trial < 15; ++trial) {
    const auto& k = pool[rng() % pool.size()];
    const auto& l = pool[rng() % pool.size()];
    auto prod = direct_sum(k, l);
    for (uint32_t m = 2; m <= 3; ++m) {
      auto lhs = m_closure(prod, m).closed_group;
      auto rhs = direct_sum(m_closure(k, m).closed_group,
                            m_closure(l, m).closed_group);
      CHECK(lhs.is_subgroup_of(rhs));
    }
  }
}

TEST_CASE("product action point indexing is the documented one") {
  // point = sum gamma_i * r^(d-i-1); a K-generator acting in coordinate 0
  // changes only the most significant digit
  auto g = wreath_product_action(PermGroup::symmetric(3), PermGroup::symmetric(2));
  // generators: K-gens at coordinate 0 first
  const Perm& kgen = g.generators()[0];
  auto s3gen = PermGroup::symmetric(3).generators()[0];  // (0 1)
  for (Point t = 0; t < 9; ++t) {
    Point hi = t / 3, lo = t % 3;
    CHECK(kgen[t] == s3gen[hi] * 3 + lo);
  }
}
