#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <random>
#include <set>

#include "cgt/tuple_coloring.hpp"

using namespace cgt;

namespace {

// Brute-force orbit partition of Omega^m: enumerate all group elements and
// close each tuple. Independent of the BFS coloring path.
std::vector<uint32_t> brute_coloring(const PermGroup& g, uint32_t m) {
  uint64_t n = g.degree(), cells = 1;
  for (uint32_t i = 0; i < m; ++i) cells *= n;
  auto elems = g.elements();
  std::vector<uint32_t> color(cells, UINT32_MAX);
  uint32_t next = 0;
  for (uint64_t t = 0; t < cells; ++t) {
    if (color[t] != UINT32_MAX) continue;
    for (const auto& p : elems) {
      uint64_t img = 0, rest = t, pw = cells / n;
      for (uint32_t i = 0; i < m; ++i) {
        img = img * n + p[static_cast<Point>(rest / pw)];
        rest %= pw;
        pw /= n;
      }
      if (color[img] == UINT32_MAX) color[img] = next;
    }
    ++next;
  }
  return color;
}

PermGroup random_subgroup(Point n, std::mt19937_64& rng, int ngens = 2) {
  std::vector<Perm> gens;
  std::vector<Point> img(n);
  for (int k = 0; k < ngens; ++k) {
    for (Point i = 0; i < n; ++i) img[i] = i;
    std::shuffle(img.begin(), img.end(), rng);
    gens.emplace_back(img);
  }
  return PermGroup::from_generators(n, gens);
}

}  // namespace

TEST_CASE("m-orbit counts") {
  // C3 on 3 points, m=2: diagonal plus two arc classes
  auto c3 = PermGroup::cyclic(3);
  auto col = m_orbit_coloring(c3, 2);
  CHECK(col.num_colors() == 3);
  CHECK(col.same_partition_as(TupleColoring(3, 2, brute_coloring(c3, 2), 3, {})));

  // Sym(n) for n >= 3, m=3: five orbits, one per partition of a 3-set
  for (Point n = 3; n <= 6; ++n) {
    CHECK(m_orbit_coloring(PermGroup::symmetric(n), 3).num_colors() == 5);
    CHECK(m_orbit_coloring(PermGroup::symmetric(n), 2).num_colors() == 2);
  }

  // trivial group: every tuple its own orbit
  CHECK(m_orbit_coloring(PermGroup::trivial(2), 2).num_colors() == 4);

  CHECK_THROWS_AS(m_orbit_coloring(PermGroup::trivial(300), 4), budget_exceeded);
}

TEST_CASE("coloring agrees with brute force on random groups") {
  std::mt19937_64 rng(20240801);
  for (int trial = 0; trial < 12; ++trial) {
    Point n = 3 + trial % 4;  // degrees 3..6
    auto g = random_subgroup(n, rng);
    for (uint32_t m = 1; m <= 3; ++m) {
      auto fast = m_orbit_coloring(g, m);
      auto brute = brute_coloring(g, m);
      uint32_t nb = 0;
      for (auto c : brute) nb = std::max(nb, c + 1);
      CHECK(fast.num_colors() == nb);
      CHECK(fast.colors() == brute);  // both number colors by first visit
    }
  }
}

TEST_CASE("generator invariance of colorings") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 8; ++trial) {
    auto g = random_subgroup(5, rng);
    auto col = m_orbit_coloring(g, 2);
    for (const auto& p : g.generators()) CHECK(col.preserved_by(p));
  }
}

TEST_CASE("partition types") {
  CHECK(partition_type({1, 1, 2}).classes() ==
        std::vector<std::vector<int>>{{0, 1}, {2}});
  CHECK(partition_type({3, 3, 3}).classes() == std::vector<std::vector<int>>{{0, 1, 2}});
  CHECK(partition_type({0, 1, 2}).classes() ==
        std::vector<std::vector<int>>{{0}, {1}, {2}});
}

TEST_CASE("orbit partition types of symmetric groups") {
  // Sym(4), m=3: the five orbits correspond bijectively to partitions of a 3-set
  auto col = m_orbit_coloring(PermGroup::symmetric(4), 3);
  auto types = orbit_partition_types(col);
  CHECK(types.size() == 5);
  std::set<std::vector<int>> distinct;
  for (auto& [c, t] : types) distinct.insert(t.class_ids());
  CHECK(distinct.size() == 5);

  auto col2 = m_orbit_coloring(PermGroup::symmetric(4), 2);
  auto types2 = orbit_partition_types(col2);
  CHECK(types2.size() == 2);
  CHECK(types2.at(col2.color_of({1, 1})).num_classes() == 1);
  CHECK(types2.at(col2.color_of({0, 1})).num_classes() == 2);

  auto colc2 = m_orbit_coloring(PermGroup::cyclic(2), 2);
  CHECK(orbit_partition_types(colc2).at(colc2.color_of({0, 0})).num_classes() == 1);
}

TEST_CASE("m-equivalence") {
  auto c5 = PermGroup::cyclic(5);
  CHECK(are_m_equivalent(c5, c5, 2));
  CHECK(are_m_equivalent(c5, c5, 3));

  // D5 fuses the two arc classes of C5
  auto d5 = PermGroup::from_generators(
      5, {Perm::from_cycles(5, {{0, 1, 2, 3, 4}}),
          Perm::from_cycles(5, {{1, 4}, {2, 3}})});
  CHECK(d5.order().to_u64() == 10);
  CHECK(!are_m_equivalent(c5, d5, 2));

  // AGL(1,5) and Sym(5) are 2-equivalent (both 2-transitive)
  auto agl15 = PermGroup::from_generators(
      5, {Perm::from_cycles(5, {{0, 1, 2, 3, 4}}), Perm::from_cycles(5, {{1, 2, 4, 3}})});
  CHECK(are_m_equivalent(agl15, PermGroup::symmetric(5), 2));
  CHECK(!are_m_equivalent(agl15, PermGroup::symmetric(5), 3));

  CHECK_THROWS_AS(are_m_equivalent(c5, PermGroup::cyclic(4), 2), degree_mismatch);
}

TEST_CASE("m-equivalence monotonicity and stabilizer heredity") {
  // Theorem-level properties on randomized small pairs: m-equivalence
  // implies (m-1)-equivalence, and passes to point stabilizers.
  std::mt19937_64 rng(99);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Point n = 4 + trial % 3;
    auto g = random_subgroup(n, rng, 1 + trial % 2);
    auto h = group_closure(g, random_subgroup(n, rng, 1).generators());
    for (uint32_t m = 2; m <= 3; ++m) {
      if (are_m_equivalent(g, h, m)) {
        ++checked;
        CHECK(are_m_equivalent(g, h, m - 1));
        for (Point a = 0; a < n; ++a)
          CHECK(are_m_equivalent(g.stabilizer(a), h.stabilizer(a), m - 1));
      }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("orbit count lower bound for m >= 3") {
  // |orb_m(G)| >= m+2 whenever n >= m >= 3
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 10; ++trial) {
    Point n = 4 + trial % 2;
    auto g = random_subgroup(n, rng);
    CHECK(m_orbit_coloring(g, 3).num_colors() >= 5);
  }
  CHECK(m_orbit_coloring(PermGroup::symmetric(4), 4).num_colors() >= 6);
}

TEST_CASE("binary export round trip") {
  auto g = PermGroup::from_generators(
      4, {Perm::from_cycles(4, {{0, 1, 2, 3}})});
  auto col = m_orbit_coloring(g, 2);
  std::string path = "coloring_test.bin";
  col.save_binary(path);
  auto back = TupleColoring::load_binary(path);
  CHECK(back.same_partition_as(col));
  CHECK(back.num_colors() == col.num_colors());
  CHECK(back.representative(0) == col.representative(0));
  auto j = col.summary_json();
  CHECK(j["degree"] == 4);
  CHECK(j["num_colors"] == col.num_colors());
  uint64_t total = 0;
  for (auto s : j["class_sizes"]) total += s.get<uint64_t>();
  CHECK(total == 16);
  std::remove(path.c_str());
}
