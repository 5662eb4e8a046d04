#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "cgt/catalog.hpp"

using namespace cgt;

static const std::string kSpoPath = std::string(CGT_DATA_DIR) + "/spo_subgroups.json";

TEST_CASE("derive_b") {
  CHECK(derive_b(5, 2) == 1);   // 5 = 1 mod 4
  CHECK(derive_b(7, 2) == 2);   // 7 = 3, 49 = 1 mod 4
  CHECK(derive_b(5, 3) == 2);   // 5 = 2, 25 = 1 mod 3
  CHECK(derive_b(3, 2) == 2);
  CHECK(derive_b(13, 2) == 1);
  CHECK(derive_b(7, 3) == 1);
  CHECK_THROWS_AS(derive_b(3, 3), std::invalid_argument);
  // b <= 2 throughout the in-scope range
  for (uint32_t p : {3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u})
    for (uint32_t r : {2u, 3u})
      if (p != r) CHECK(derive_b(p, r) <= 2);
}

TEST_CASE("parameter validation") {
  CHECK(validate_parameters({3, 2, 1, 2}).empty());
  CHECK(validate_parameters({3, 4, 2, 2}).empty());
  auto v = validate_parameters({5, 3, 1, 3});
  REQUIRE(!v.empty());  // 3 does not divide 5-1
  CHECK(v[0].find("does not divide") != std::string::npos);
  CHECK(!validate_parameters({3, 5, 1, 4}).empty());  // d != a*e
  CHECK(!validate_parameters({3, 10, 2, 5}, true).empty());  // e not in the list
}

TEST_CASE("table 1 orders") {
  CHECK(table1_orders(9, "Sp(4,3)") == std::vector<uint64_t>{40, 192, 320, 1152});
  CHECK(table1_orders(8, "O-(6,2)") == std::vector<uint64_t>{40, 1296});
  CHECK(table1_orders(2, "Sp(2,2)") == std::vector<uint64_t>{6});
  CHECK(table1_orders(4, "O-(4,2)") == std::vector<uint64_t>{12, 20});
  CHECK_THROWS_AS(table1_orders(5, "Sp(4,2)"), std::invalid_argument);
}

TEST_CASE("candidate order formula") {
  CHECK(candidate_order(3, 1, 2, 6, 1).to_u64() == 48);
  CHECK(candidate_order(7, 1, 2, 6, 1).to_u64() == 144);
  CHECK(candidate_order(5, 1, 4, 20, 1).to_u64() == 1280);
  CHECK_THROWS_AS(candidate_order(3, 2, 1, 6, 1), std::invalid_argument);  // e = 1
  CHECK_THROWS_AS(candidate_order(3, 2, 2, 6, 3), std::invalid_argument);  // a' must divide a
}

TEST_CASE("r-radical orders") {
  // O_2(D8 acting regularly) = D8 itself; O_2(S3) trivial; O_3(S3) = C3
  auto s3 = PermGroup::symmetric(3);
  CHECK(r_radical_order(s3, 2) == BigUint(1));
  CHECK(r_radical_order(s3, 3) == BigUint(3));
  auto s4 = PermGroup::symmetric(4);
  CHECK(r_radical_order(s4, 2) == BigUint(4));  // the Klein four group
  CHECK(r_radical_order(s4, 3) == BigUint(1));
}

TEST_CASE("maximal solvable subgroups of the small classical groups") {
  auto check = [&](const std::string& name, std::vector<uint64_t> expected) {
    auto S = classical_group_by_name(name);
    auto ms = max_solvable_in_S(S, kSpoPath);
    std::vector<uint64_t> orders;
    for (const auto& m : ms) orders.push_back(m.order);
    std::sort(orders.begin(), orders.end());
    std::sort(expected.begin(), expected.end());
    CHECK(orders == expected);
  };
  check("Sp(2,2)", {6});
  check("Sp(2,3)", {24});
  check("O+(2,2)", {2});
  check("O-(2,2)", {6});
  check("Sp(4,2)", {20, 72});
  check("O-(4,2)", {12, 20});
  check("O+(4,2)", {72});
  check("Sp(4,3)", {40, 192, 320, 1152});
  check("O+(4,3)", {1152});
}

TEST_CASE("spo data file loads and words evaluate") {
  auto entries = load_spo_data(kSpoPath);
  CHECK(entries.size() == 7);
  int sp43 = 0, sp62 = 0, om62 = 0;
  for (const auto& e : entries) {
    if (e.s_name == "Sp(4,3)") ++sp43;
    if (e.s_name == "Sp(6,2)") ++sp62;
    if (e.s_name == "O-(6,2)") ++om62;
  }
  CHECK(sp43 == 3);
  CHECK(sp62 == 2);
  CHECK(om62 == 2);

  auto S = classical_group_by_name("Sp(4,3)");
  for (const auto& e : entries) {
    if (e.s_name != "Sp(4,3)") continue;
    std::vector<Perm> gens;
    for (const auto& w : e.words) gens.push_back(evaluate_word(S.perm, w));
    auto m = PermGroup::from_generators(S.perm.degree(), gens);
    CHECK(m.order() == BigUint(e.order));
    CHECK(m.is_solvable());
    CHECK(m.is_subgroup_of(S.perm));
    CHECK(r_radical_order(m, 3) == BigUint(1));
  }
}

TEST_CASE("candidates for the desk-scale parameter sets") {
  CatalogOptions opts;
  opts.spo_path = kSpoPath;

  // (3,2,1,2): two candidates, orders 16 and 48; the 48 one is the full
  // normalizer of the quaternion group, i.e. GL(2,3)
  auto c32 = assemble_candidates({3, 2, 1, 2}, opts);
  REQUIRE(c32.size() == 2);
  CHECK(c32[0].order.to_u64() == 16);
  CHECK(c32[1].order.to_u64() == 48);
  for (const auto& c : c32) {
    REQUIRE(!c.skipped);
    auto hp = mat_to_perm(*c.group, VectorDomain::Nonzero);
    CHECK(hp.is_solvable());
    CHECK(is_irreducible(*c.group).irreducible);
  }
  // the order-48 candidate is all of GL(2,3): compare against the standard copy
  {
    auto f3 = Fq::make(3, 1);
    FqMat tv(f3, 2);
    tv.at(0, 0) = 1;
    tv.at(0, 1) = 1;
    tv.at(1, 1) = 1;
    auto gl23 = mat_to_perm(MatrixGroup(f3, 2, {singer_matrix(3, 2), tv}, ""),
                            VectorDomain::Nonzero);
    auto cand = mat_to_perm(*c32[1].group, VectorDomain::Nonzero);
    CHECK(cand.same_group_as(gl23));
  }

  // (7,2,1,2): includes the order-144 candidate
  auto c72 = assemble_candidates({7, 2, 1, 2}, opts);
  bool has144 = false;
  for (const auto& c : c72) has144 |= !c.skipped && c.order.to_u64() == 144;
  CHECK(has144);

  // (5,4,1,4): b = 1 branch with proper subgroups of Sp(4,2);
  // orders 4*16*{20,72} = {1280, 4608}
  auto c54 = assemble_candidates({5, 4, 1, 4}, opts);
  std::vector<uint64_t> orders;
  for (const auto& c : c54) {
    REQUIRE(!c.skipped);
    orders.push_back(c.order.to_u64());
  }
  std::sort(orders.begin(), orders.end());
  CHECK(orders == std::vector<uint64_t>{1280, 4608});

  // (3,4,2,2): the b = 2 | a branch with the N_L(H_1) extension
  auto c34 = assemble_candidates({3, 4, 2, 2}, opts);
  REQUIRE(c34.size() == 1);
  REQUIRE(!c34[0].skipped);
  CHECK(c34[0].order.to_u64() == 384);
  CHECK(c34[0].a_prime == 2);
  CHECK(c34[0].caveats.empty());

  // determinism: same parameters give the identical candidate list
  auto again = assemble_candidates({3, 2, 1, 2}, opts);
  REQUIRE(again.size() == c32.size());
  for (size_t i = 0; i < again.size(); ++i) {
    CHECK(again[i].name == c32[i].name);
    CHECK(again[i].order == c32[i].order);
    CHECK(again[i].group->generators.size() == c32[i].group->generators.size());
    for (size_t g = 0; g < again[i].group->generators.size(); ++g)
      CHECK(again[i].group->generators[g] == c32[i].group->generators[g]);
  }

  CHECK_THROWS_AS(assemble_candidates({5, 3, 1, 3}, opts), std::invalid_argument);
}

TEST_CASE("enumeration count matches the chain order for Sp(6,2)") {
  auto sp62 = standard_symplectic_group(6, 2);
  REQUIRE(sp62.perm.order().to_u64() == 1451520);
  uint64_t count = 0;
  sp62.perm.for_each_element([&](const Perm&) {
    ++count;
    return true;
  });
  CHECK(count == 1451520);
}

TEST_CASE("corrupted bundled data is rejected") {
  // truncating a word changes the generated group; the loader must refuse it
  std::ifstream in(kSpoPath);
  nlohmann::json j;
  in >> j;
  for (auto& g : j["groups"])
    if (g["s_name"] == "Sp(4,3)") {
      auto words = g["words"].get<std::vector<std::vector<uint32_t>>>();
      words.pop_back();
      g["words"] = words;
      break;
    }
  std::string path = "spo_corrupt_test.json";
  {
    std::ofstream out(path);
    out << j.dump() << '\n';
  }
  auto S = classical_group_by_name("Sp(4,3)");
  CHECK_THROWS_AS(max_solvable_in_S(S, path), verification_failure);
  std::remove(path.c_str());
}

TEST_CASE("candidates across the remaining branch combinations") {
  CatalogOptions opts;
  opts.spo_path = kSpoPath;

  // e = 3 (r = 3): the whole group Sp(2,3) is the only table entry;
  // order (7-1) * 9 * 24 * 1 = 1296
  auto c73 = assemble_candidates({7, 3, 1, 3}, opts);
  REQUIRE(c73.size() == 1);
  REQUIRE(!c73[0].skipped);
  CHECK(c73[0].order.to_u64() == 1296);
  CHECK(c73[0].s_value == 24);

  // e = 4 with b not dividing a: both orthogonal classes,
  // orders 2 * 16 * {72; 12, 20}
  auto c34 = assemble_candidates({3, 4, 1, 4}, opts);
  std::vector<uint64_t> orders;
  for (const auto& c : c34) {
    REQUIRE(!c.skipped);
    orders.push_back(c.order.to_u64());
  }
  std::sort(orders.begin(), orders.end());
  CHECK(orders == std::vector<uint64_t>{384, 640, 2304});
}
