#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cgt/bigint.hpp"
#include "cgt/group_io.hpp"
#include "cgt/perm.hpp"
#include "cgt/perm_group.hpp"

using namespace cgt;

TEST_CASE("biguint arithmetic") {
  BigUint a(123456789012345ull), b(987654321ull);
  CHECK(a.mul(b).to_string() == "121932631124827861592745");
  CHECK(BigUint::from_string("121932631124827861592745") == a.mul(b));
  CHECK(a.add(b).to_u64() == 123456789012345ull + 987654321ull);

  BigUint f(1);
  for (uint32_t i = 2; i <= 25; ++i) f = f.mul_small(i);
  CHECK(f.to_string() == "15511210043330985984000000");  // 25!
  auto [q, rem] = f.divmod(BigUint::from_string("1000000007"));
  CHECK(q.mul(BigUint::from_string("1000000007")).add(rem) == f);
  CHECK(f.divmod(f).first.is_one());
  CHECK(f.divmod(f.add(BigUint(1))).first.is_zero());

  CHECK(BigUint(1024).is_power_of(2));
  CHECK(!BigUint(1536).is_power_of(2));
  CHECK(BigUint(40320).valuation(2).first == 7);
  CHECK(BigUint(40320).valuation(2).second.to_u64() == 128);
  CHECK(BigUint(0).to_string() == "0");
  CHECK(BigUint(12).pow(10).to_string() == "61917364224");
}

TEST_CASE("perm compose and inverse") {
  Perm p(std::vector<Point>{1, 2, 0});
  Perm q(std::vector<Point>{1, 0, 2});
  CHECK((p * q).images() == std::vector<Point>{0, 2, 1});
  CHECK((p * Perm(3)) == p);
  CHECK((p * p.inverse()).is_identity());
  CHECK(p.order() == 3);
  CHECK(Perm::from_cycles(5, {{0, 1, 2, 3, 4}}).power(5).is_identity());
  CHECK(Perm::from_cycles(6, {{0, 1}, {2, 3, 4}}).order() == 6);
  CHECK_THROWS_AS(Perm(std::vector<Point>{0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(p * Perm(4), degree_mismatch);
}

TEST_CASE("group orders") {
  CHECK(PermGroup::from_generators(
            4, {Perm::from_cycles(4, {{0, 1}}), Perm::from_cycles(4, {{0, 1, 2, 3}})})
            .order()
            .to_u64() == 24);
  CHECK(PermGroup::cyclic(5).order().to_u64() == 5);
  CHECK(PermGroup::from_generators(3, {}).order().to_u64() == 1);
  CHECK(PermGroup::symmetric(8).order().to_u64() == 40320);
  CHECK(PermGroup::alternating(5).order().to_u64() == 60);
  CHECK(PermGroup::alternating(6).order().to_u64() == 360);
  CHECK(PermGroup::symmetric(12).order().to_string() == "479001600");
}

TEST_CASE("membership by sifting") {
  auto s4 = PermGroup::symmetric(4);
  CHECK(s4.contains(Perm::from_cycles(4, {{0, 2}})));
  auto a4 = PermGroup::alternating(4);
  CHECK(!a4.contains(Perm::from_cycles(4, {{0, 1}})));
  auto c5 = PermGroup::cyclic(5);
  CHECK(c5.contains(Perm::from_cycles(5, {{0, 1, 2, 3, 4}}).power(2)));
  CHECK_THROWS_AS(s4.contains(Perm(5)), degree_mismatch);

  // random products of generators are members
  auto g = PermGroup::from_generators(
      7, {Perm::from_cycles(7, {{0, 1, 2, 3, 4, 5, 6}}), Perm::from_cycles(7, {{1, 2, 4}})});
  Perm w(7);
  for (int i = 0; i < 25; ++i) {
    w = w * g.generators()[i % 2];
    CHECK(g.contains(w));
  }
}

TEST_CASE("orbit and stabilizer") {
  auto s4 = PermGroup::symmetric(4);
  auto [orb, stab] = s4.orbit_and_stabilizer(0);
  CHECK(orb.size() == 4);
  CHECK(stab.order().to_u64() == 6);
  CHECK(BigUint(orb.size()).mul(stab.order()) == s4.order());

  auto c5 = PermGroup::cyclic(5);
  auto [orb5, stab5] = c5.orbit_and_stabilizer(0);
  CHECK(orb5.size() == 5);
  CHECK(stab5.is_trivial());

  CHECK_THROWS_AS(s4.orbit_and_stabilizer(7), std::out_of_range);
}

TEST_CASE("solvability by derived series") {
  int len = 0;
  CHECK(PermGroup::symmetric(4).is_solvable(&len));
  CHECK(len == 3);
  CHECK(!PermGroup::alternating(5).is_solvable());
  CHECK(!PermGroup::symmetric(6).is_solvable());
  CHECK(PermGroup::cyclic(7).is_solvable(&len));
  CHECK(len == 1);
  CHECK(PermGroup::trivial(3).is_solvable(&len));
  CHECK(len == 0);

  // brute-force cross-check on small groups: derived subgroup equals the
  // subgroup generated by all commutators
  auto g = PermGroup::from_generators(
      4, {Perm::from_cycles(4, {{0, 1, 2, 3}}), Perm::from_cycles(4, {{0, 2}})});
  auto d = g.derived_subgroup();
  auto elems = g.elements();
  PermGroup brute = PermGroup::trivial(4);
  for (const auto& x : elems)
    for (const auto& y : elems) {
      Perm c = x.inverse() * y.inverse() * x * y;
      if (!brute.contains(c)) brute = group_closure(brute, {c});
    }
  CHECK(brute.same_group_as(d));
}

TEST_CASE("transitivity and primitivity") {
  auto c4 = PermGroup::cyclic(4);
  CHECK(c4.is_transitive());
  PermGroup::BlockSystem bs;
  CHECK(!c4.is_primitive(&bs));
  CHECK(bs.blocks.size() == 2);
  CHECK(bs.blocks[0] == std::vector<Point>{0, 2});
  CHECK(bs.blocks[1] == std::vector<Point>{1, 3});
  // reported blocks are invariant under all generators
  for (const auto& g : c4.generators())
    for (const auto& blk : bs.blocks) {
      std::set<Point> img;
      for (Point x : blk) img.insert(g[x]);
      bool found = false;
      for (const auto& other : bs.blocks)
        found |= img == std::set<Point>(other.begin(), other.end());
      CHECK(found);
    }

  CHECK(PermGroup::symmetric(3).is_primitive());
  CHECK(PermGroup::cyclic(5).is_primitive());  // prime degree regular

  // C2 wr C3 on 6 points: blocks of size 2
  auto w = PermGroup::from_generators(
      6, {Perm::from_cycles(6, {{0, 1}}),
          Perm::from_cycles(6, {{0, 2, 4}, {1, 3, 5}})});
  CHECK(w.order().to_u64() == 24);
  PermGroup::BlockSystem bw;
  CHECK(!w.is_primitive(&bw));
  bool has_size2 = false;
  for (auto& b : bw.blocks) has_size2 |= b.size() == 2;
  CHECK(has_size2);

  auto intrans = PermGroup::from_generators(5, {Perm::from_cycles(5, {{0, 1, 2}})});
  CHECK_THROWS_AS(intrans.is_primitive(), std::invalid_argument);
}

TEST_CASE("restriction to invariant sets") {
  // Sym(3) (+) C2 on 5 points, restricted to the 3-point orbit
  auto g = PermGroup::from_generators(
      5, {Perm::from_cycles(5, {{0, 1, 2}}), Perm::from_cycles(5, {{0, 1}}),
          Perm::from_cycles(5, {{3, 4}})});
  auto [res, faithful] = g.restriction({0, 1, 2});
  CHECK(res.order().to_u64() == 6);
  CHECK(!faithful);

  auto s4 = PermGroup::symmetric(4);
  auto [whole, f2] = s4.restriction({0, 1, 2, 3});
  CHECK(whole.same_group_as(s4));
  CHECK(f2);

  CHECK_THROWS_AS(g.restriction({0, 1}), std::invalid_argument);
}

TEST_CASE("element enumeration") {
  auto s4 = PermGroup::symmetric(4);
  std::set<std::vector<Point>> seen;
  s4.for_each_element([&](const Perm& p) {
    seen.insert(p.images());
    return true;
  });
  CHECK(seen.size() == 24);

  CHECK(PermGroup::trivial(3).elements().size() == 1);

  auto c6 = PermGroup::cyclic(6);
  CHECK_THROWS_AS(c6.elements(3), enumeration_limit);

  // element_index / element_at round trip
  for (uint64_t i = 0; i < 24; ++i)
    CHECK(s4.element_index(s4.element_at(i)) == i);
}

TEST_CASE("sylow subgroups and normalizers") {
  auto s4 = PermGroup::symmetric(4);
  auto [p3, n3] = s4.sylow_and_normalizer(3);
  CHECK(p3.order().to_u64() == 3);
  CHECK(n3.order().to_u64() == 6);

  auto [p2, n2] = s4.sylow_and_normalizer(2);
  CHECK(p2.order().to_u64() == 8);
  CHECK(n2.order().to_u64() == 8);  // Sylow-2 of S4 is self-normalizing

  // normalizer by enumeration equals normalizer by definition
  auto s5 = PermGroup::symmetric(5);
  auto [p5, n5] = s5.sylow_and_normalizer(5);
  CHECK(p5.order().to_u64() == 5);
  CHECK(n5.order().to_u64() == 20);
  int direct = 0;
  s5.for_each_element([&](const Perm& g) {
    bool ok = true;
    for (const auto& s : p5.generators()) ok &= p5.contains(s.conjugate_by(g));
    if (ok) ++direct;
    return true;
  });
  CHECK(direct == 20);
}

TEST_CASE("sylow respects the enumeration threshold") {
  auto s12 = PermGroup::symmetric(12);  // order 479001600 > 5e6
  CHECK_THROWS_AS(s12.sylow_and_normalizer(2), enumeration_limit);
}

TEST_CASE("group json round trip") {
  auto g = PermGroup::from_generators(
      5, {Perm::from_cycles(5, {{0, 1, 2, 3, 4}}), Perm::from_cycles(5, {{1, 2, 4, 3}})});
  auto j = group_to_json(g, "agl15");
  CHECK(j["order"] == "20");
  auto back = group_from_json(j);
  CHECK(back.same_group_as(g));
  CHECK(back.degree() == 5);
}
