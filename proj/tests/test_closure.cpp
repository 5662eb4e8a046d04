#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cgt/closure.hpp"
#include "cgt/products.hpp"

using namespace cgt;

namespace {

PermGroup d5() {
  return PermGroup::from_generators(
      5, {Perm::from_cycles(5, {{0, 1, 2, 3, 4}}),
          Perm::from_cycles(5, {{1, 4}, {2, 3}})});
}

PermGroup agl15() {
  return PermGroup::from_generators(
      5, {Perm::from_cycles(5, {{0, 1, 2, 3, 4}}),
          Perm::from_cycles(5, {{1, 2, 4, 3}})});
}

// AGammaL(1,8) on the field with 8 elements, encoded 0 and theta^i -> i+1.
PermGroup agammal18() {
  // GF(8) = GF(2)[x]/(x^3+x+1); elements as bit masks 0..7
  auto mulx = [](Point v) { Point w = v << 1; return (w & 8) ? (w ^ 11) : w; };
  std::vector<Point> add1(8), multheta(8), frob(8);
  for (Point v = 0; v < 8; ++v) {
    add1[v] = v ^ 1;
    multheta[v] = mulx(v);
    Point sq = 0;  // v^2 via repeated structure: square each bit-poly
    {
      // square = multiply v by v: naive polynomial multiply mod x^3+x+1
      Point acc = 0, a = v;
      for (int b = 0; b < 3; ++b)
        if (v & (1 << b)) {
          Point t = a;
          for (int s = 0; s < b; ++s) t = mulx(t);
          acc ^= t;
        }
      sq = acc;
    }
    frob[v] = sq;
  }
  return PermGroup::from_generators(8, {Perm(add1), Perm(multheta), Perm(frob)});
}

}  // namespace

TEST_CASE("one closure") {
  CHECK(one_closure(PermGroup::cyclic(5)).same_group_as(PermGroup::symmetric(5)));
  CHECK(one_closure(PermGroup::trivial(3)).is_trivial());
  auto c2c3 = direct_sum(PermGroup::cyclic(2), PermGroup::cyclic(3));
  auto cl = one_closure(c2c3);
  CHECK(cl.order().to_u64() == 12);  // Sym(2) x Sym(3)
}

TEST_CASE("two closure matches brute oracle on named groups") {
  auto check_group = [&](const PermGroup& g) {
    auto fast = two_closure(g);
    auto brute = two_closure_brute(g);
    CHECK(fast.closed_group.same_group_as(brute));
    CHECK(fast.input_order == g.order());
  };
  check_group(PermGroup::cyclic(5));       // C5 -> C5
  check_group(d5());                       // D5 -> D5
  check_group(agl15());                    // AGL(1,5) -> Sym(5)
  check_group(PermGroup::symmetric(4));    // Sym(4) -> Sym(4)
  check_group(PermGroup::trivial(3));
  check_group(PermGroup::alternating(4));
  check_group(PermGroup::cyclic(6));
  check_group(direct_sum(PermGroup::cyclic(2), PermGroup::cyclic(3)));

  CHECK(two_closure(PermGroup::cyclic(5)).closed_order.to_u64() == 5);
  CHECK(two_closure(d5()).closed_order.to_u64() == 10);
  CHECK(two_closure(agl15()).closed_order.to_u64() == 120);
}

TEST_CASE("two closure matches brute oracle on random groups") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 25; ++trial) {
    Point n = 4 + trial % 4;  // 4..7
    std::vector<Perm> gens;
    std::vector<Point> img(n);
    for (int k = 0; k < 2; ++k) {
      for (Point i = 0; i < n; ++i) img[i] = i;
      std::shuffle(img.begin(), img.end(), rng);
      gens.emplace_back(img);
    }
    auto g = PermGroup::from_generators(n, gens);
    auto fast = two_closure(g);
    auto brute = two_closure_brute(g);
    CHECK(fast.closed_group.same_group_as(brute));
  }
}

TEST_CASE("closure operator laws") {
  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 10; ++trial) {
    Point n = 4 + trial % 4;
    std::vector<Point> img(n);
    for (Point i = 0; i < n; ++i) img[i] = i;
    std::shuffle(img.begin(), img.end(), rng);
    auto g = PermGroup::from_generators(n, {Perm(img)});
    auto h = group_closure(g, PermGroup::cyclic(n).generators());

    auto gc = two_closure(g).closed_group;
    auto hc = two_closure(h).closed_group;
    CHECK(g.is_subgroup_of(gc));                       // G <= G^(2)
    CHECK(two_closure(gc).closed_group.same_group_as(gc));  // idempotent
    CHECK(gc.is_subgroup_of(hc));                      // monotone
  }
}

TEST_CASE("closure chain G^(2) >= G^(3) >= G") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 8; ++trial) {
    Point n = 4 + trial % 3;
    std::vector<Point> img(n);
    for (Point i = 0; i < n; ++i) img[i] = i;
    std::shuffle(img.begin(), img.end(), rng);
    auto g = PermGroup::from_generators(n, {Perm(img)});
    auto g2 = two_closure(g).closed_group;
    auto g3 = m_closure(g, 3).closed_group;
    CHECK(g.is_subgroup_of(g3));
    CHECK(g3.is_subgroup_of(g2));
  }
}

TEST_CASE("m=3 closure against symmetric-group filter") {
  // oracle: filter all of Sym(n) by 3-orbit preservation
  auto oracle3 = [](const PermGroup& g) {
    auto col = m_orbit_coloring(g, 3);
    Point n = g.degree();
    std::vector<Point> img(n);
    for (Point i = 0; i < n; ++i) img[i] = i;
    PermGroup closed = PermGroup::trivial(n);
    do {
      Perm p{std::vector<Point>(img)};
      if (col.preserved_by(p) && !closed.contains(p))
        closed = group_closure(closed, {p});
    } while (std::next_permutation(img.begin(), img.end()));
    return closed;
  };

  CHECK(m_closure(PermGroup::cyclic(3), 3).closed_group.same_group_as(
      PermGroup::cyclic(3)));
  CHECK(m_closure(PermGroup::symmetric(5), 3).closed_group.same_group_as(
      PermGroup::symmetric(5)));

  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    Point n = 4 + trial % 3;  // 4..6
    std::vector<Point> img(n);
    for (Point i = 0; i < n; ++i) img[i] = i;
    std::shuffle(img.begin(), img.end(), rng);
    auto g = PermGroup::from_generators(n, {Perm(img)});
    CHECK(m_closure(g, 3).closed_group.same_group_as(oracle3(g)));
  }
  // 2-transitive control: AGL(1,5) is not 3-closed but its 3-closure is
  // a proper subgroup of Sym(5)
  auto a3 = m_closure(agl15(), 3).closed_group;
  CHECK(a3.same_group_as(oracle3(agl15())));
}

TEST_CASE("m-closedness") {
  // Point stabilizer GammaL(1,8) of AGammaL(1,8) is 2-closed;
  // AGammaL(1,8) is then 3-closed.
  auto ag = agammal18();
  CHECK(ag.order().to_u64() == 168);
  auto gl = ag.stabilizer(0);
  CHECK(gl.order().to_u64() == 21);
  uint64_t fixing = 0;  // brute-force: elements of the order-168 group fixing 0
  ag.for_each_element([&](const Perm& p) {
    if (p[0] == 0) ++fixing;
    return true;
  });
  CHECK(fixing == 21);
  CHECK(is_m_closed(gl, 2));
  CHECK(is_m_closed(ag, 3));
  CHECK(!is_m_closed(agl15(), 2));
  CHECK(is_m_closed(PermGroup::symmetric(6), 2));

  // termination of the chain: G^(n-1) = G for subgroups of Sym(n), spot check
  CHECK(m_closure(PermGroup::cyclic(4), 3).closed_order.to_u64() == 4);
}

TEST_CASE("chain termination at m = n-1") {
  // G^(4) = G for subgroups of Sym(5), through the generic m >= 4 path
  std::mt19937_64 rng(17);
  std::vector<PermGroup> groups{PermGroup::symmetric(5), PermGroup::alternating(5),
                                PermGroup::cyclic(5), d5(), agl15()};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point> img(5);
    for (Point i = 0; i < 5; ++i) img[i] = i;
    std::shuffle(img.begin(), img.end(), rng);
    groups.push_back(PermGroup::from_generators(5, {Perm(img)}));
  }
  for (const auto& g : groups)
    CHECK(m_closure(g, 4).closed_order == g.order());
}

TEST_CASE("partly regular detection") {
  // regular representation of C8 (as the Singer action): witness exists
  auto c8 = PermGroup::cyclic(8);
  auto w = is_partly_regular(c8);
  REQUIRE(w.has_value());
  CHECK(*w == 0);

  CHECK(!is_partly_regular(PermGroup::symmetric(3)).has_value());

  // order 16 > 8 points: no regular orbit
  auto big = group_closure(PermGroup::cyclic(8),
                           {Perm::from_cycles(8, {{1, 7}, {2, 6}, {3, 5}})});
  CHECK(big.order().to_u64() == 16);
  CHECK(!is_partly_regular(big).has_value());

  // intransitive witness: C2 x C2 acting with a regular 4-point orbit
  auto v4 = PermGroup::from_generators(
      6, {Perm::from_cycles(6, {{0, 1}, {2, 3}}), Perm::from_cycles(6, {{0, 2}, {1, 3}})});
  auto wv = is_partly_regular(v4);
  REQUIRE(wv.has_value());

  // faithfulness matters: C2 x C2 with only 2-point orbits has regular-length
  // orbits nowhere
  auto k4 = PermGroup::from_generators(
      4, {Perm::from_cycles(4, {{0, 1}}), Perm::from_cycles(4, {{2, 3}})});
  CHECK(!is_partly_regular(k4).has_value());
}

TEST_CASE("two-closed restriction test") {
  // Sym(3) on its full orbit: closed
  CHECK(is_two_closed_restriction(PermGroup::symmetric(3), 0));
  // C4 <= AGL(1,5) zero-stabilizer acting on {1..4}: regular C4 is 2-closed
  auto c4on5 = PermGroup::from_generators(5, {Perm::from_cycles(5, {{1, 2, 4, 3}})});
  CHECK(is_two_closed_restriction(c4on5, 1));
  // 2-transitive restriction that is not symmetric: AGL(1,5) on 5 points
  CHECK(!is_two_closed_restriction(agl15(), 0));
}

TEST_CASE("trivial group on a wide domain") {
  auto res = two_closure(PermGroup::trivial(100));
  CHECK(res.closed_order.is_one());
}

TEST_CASE("closure budget errors") {
  CHECK_THROWS_AS(two_closure(PermGroup::trivial(200)), budget_exceeded);
  CHECK_THROWS_AS(two_closure_brute(PermGroup::trivial(10)), budget_exceeded);
  ClosureOptions tight;
  tight.ternary_degree_budget = 4;
  CHECK_THROWS_AS(m_closure(PermGroup::cyclic(5), 3, tight), budget_exceeded);
}

TEST_CASE("theorem: point stabilizer (m-1)-closed forces m-closed") {
  auto ag = agammal18();
  auto stab = ag.stabilizer(0);
  REQUIRE(is_m_closed(stab, 2));
  CHECK(is_m_closed(ag, 3));

  // partly regular point stabilizers force (m+1)-closedness at m=2:
  // D5's point stabilizer C2 has a faithful regular orbit
  auto dd = d5();
  auto st = dd.stabilizer(0);
  REQUIRE(is_partly_regular(st).has_value());
  CHECK(is_m_closed(dd, 3));
  auto c5 = PermGroup::cyclic(5);
  REQUIRE(is_partly_regular(c5.stabilizer(0)).has_value());
  CHECK(is_m_closed(c5, 3));
}
