#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cgt/classical.hpp"
#include "cgt/extraspecial.hpp"
#include "cgt/matrix.hpp"

namespace cgt {

// Candidate machinery for maximal solvable primitive subgroups of GL(d,p):
// the parameter bookkeeping (p, d, a, e; r, k, b), the table of orders of
// maximal solvable subgroups of the small classical groups, their explicit
// construction (Sylow normalizers computed on the spot, the rest loaded
// from a bundled generator-word file and verified), and the Kronecker
// assembly of the candidate list for a parameter set.

struct Parameters {
  uint32_t p = 3, d = 2, a = 1, e = 2;
};

struct DerivedParameters {
  uint32_t r = 2, k = 1;
  uint32_t c = 2;  // modulus exponent: 2 for r = 2, 1 otherwise
  uint32_t b = 1;  // least b with p^b = 1 mod r^c
  bool b_divides_a = true;
};

inline std::pair<uint32_t, uint32_t> factor_prime_power_e(uint32_t e) {
  for (uint32_t r : {2u, 3u}) {
    uint32_t k = 0, v = e;
    while (v % r == 0) {
      v /= r;
      ++k;
    }
    if (v == 1 && k >= 1) return {r, k};
  }
  throw std::invalid_argument("e must be a power of 2 or 3, got " + std::to_string(e));
}

inline uint32_t derive_b(uint32_t p, uint32_t r) {
  if (p == r) throw std::invalid_argument("derive_b: p equals r");
  uint32_t mod = r == 2 ? 4 : 3;
  uint64_t v = p % mod;
  for (uint32_t b = 1; b <= mod; ++b) {
    if (v == 1) return b;
    v = v * (p % mod) % mod;
  }
  throw std::logic_error("derive_b: no order found");
}

inline DerivedParameters derive_parameters(const Parameters& P) {
  DerivedParameters D;
  auto [r, k] = factor_prime_power_e(P.e);
  D.r = r;
  D.k = k;
  D.c = r == 2 ? 2 : 1;
  D.b = derive_b(P.p, r);
  D.b_divides_a = P.a % D.b == 0;
  return D;
}

// Violations are data, not errors.
inline std::vector<std::string> validate_parameters(const Parameters& P,
                                                    bool require_e_list = false) {
  std::vector<std::string> out;
  if (!gfdetail::is_prime_u32(P.p)) out.push_back("p is not prime");
  if (P.d != P.a * P.e) out.push_back("d != a*e");
  if (P.e < 2) out.push_back("e must be > 1 for the candidate machinery");
  uint64_t pa = 1;
  for (uint32_t i = 0; i < P.a; ++i) pa *= P.p;
  for (uint32_t q : {2u, 3u})
    if (P.e % q == 0 && (pa - 1) % q != 0)
      out.push_back("prime divisor " + std::to_string(q) + " of e does not divide p^a-1");
  if (P.e != 2 && P.e != 3 && P.e != 4 && P.e != 8 && P.e != 9 && P.e != 16) {
    if (require_e_list)
      out.push_back("e is not in {2,3,4,8,9,16}");
    else {
      bool pow23 = true;
      try {
        factor_prime_power_e(P.e);
      } catch (const std::invalid_argument&) {
        pow23 = false;
      }
      if (!pow23) out.push_back("e is not a prime power of 2 or 3");
    }
  }
  return out;
}

// Orders of the maximal solvable subgroups of the small classical groups,
// by (e, group name).
inline std::vector<uint64_t> table1_orders(uint32_t e, const std::string& s_name) {
  static const std::map<std::pair<uint32_t, std::string>, std::vector<uint64_t>>
      table = {
          {{9, "Sp(4,3)"}, {40, 192, 320, 1152}},
          {{8, "Sp(6,2)"}, {42, 120, 1296}},
          {{8, "O+(6,2)"}, {42, 120, 144}},
          {{8, "O-(6,2)"}, {40, 1296}},
          {{4, "Sp(4,2)"}, {20, 72}},
          {{4, "O+(4,2)"}, {72}},
          {{4, "O-(4,2)"}, {12, 20}},
          {{3, "Sp(2,3)"}, {24}},
          {{2, "Sp(2,2)"}, {6}},
          {{2, "O+(2,2)"}, {2}},
          {{2, "O-(2,2)"}, {6}},
      };
  auto it = table.find({e, s_name});
  if (it == table.end())
    throw std::invalid_argument("table1_orders: no row for e=" + std::to_string(e) +
                                ", S=" + s_name);
  return it->second;
}

inline uint32_t table1_e_of(const std::string& s_name) {
  auto comma = s_name.find(',');
  uint32_t dim = std::stoul(s_name.substr(3, comma - 3));
  uint32_t r = std::stoul(s_name.substr(comma + 1, s_name.size() - comma - 2));
  uint32_t e = 1;
  for (uint32_t i = 0; i < dim / 2; ++i) e *= r;
  return e;
}

// Order of the r-radical O_r(M): the intersection of the conjugates of a
// Sylow r-subgroup. Only used on small groups.
inline BigUint r_radical_order(const PermGroup& m, uint32_t r) {
  auto [p, n] = m.sylow_and_normalizer(r);
  if (p.is_trivial()) return BigUint(1);
  std::vector<Perm> core = p.elements();
  m.for_each_element([&](const Perm& g) {
    if (core.size() == 1) return false;
    std::vector<Perm> next;
    for (const auto& x : core)
      if (p.contains(g * x * g.inverse())) next.push_back(x);
    core = std::move(next);
    return true;
  });
  return BigUint(core.size());
}

struct MaxSolvableSubgroup {
  std::string name;
  uint64_t order = 0;
  PermGroup group;   // subgroup of the standard permutation image of S
  std::string source;  // whole-group | sylow-normalizer | bundled
};

// ---- bundled generator-word data ----

struct SpoEntry {
  std::string s_name, name, structure;
  uint64_t order = 0;
  std::vector<std::vector<uint32_t>> words;  // over the reduced generators of S
};

inline std::vector<SpoEntry> load_spo_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read spo data file " + path);
  nlohmann::json j;
  in >> j;
  std::vector<SpoEntry> out;
  for (const auto& g : j.at("groups")) {
    SpoEntry e;
    e.s_name = g.at("s_name").get<std::string>();
    e.name = g.at("name").get<std::string>();
    e.structure = g.value("structure", "");
    e.order = g.at("order").get<uint64_t>();
    e.words = g.at("words").get<std::vector<std::vector<uint32_t>>>();
    out.push_back(std::move(e));
  }
  return out;
}

inline Perm evaluate_word(const PermGroup& s, const std::vector<uint32_t>& word) {
  Perm p(s.degree());
  for (uint32_t idx : word) {
    if (idx >= s.generators().size())
      throw std::invalid_argument("generator word index out of range");
    p = p * s.generators()[idx];
  }
  return p;
}

// The maximal solvable subgroups of S (with the r-radical conditions),
// as concrete subgroups of the standard permutation image:
//   - where the whole group is solvable, M = S;
//   - Sylow normalizer entries are computed directly;
//   - the remaining entries come from the bundled word file and are
//     verified for order, solvability, and the r-radical bound.
inline std::vector<MaxSolvableSubgroup> max_solvable_in_S(
    const ClassicalGroup& S, const std::string& spo_path,
    uint64_t enum_threshold = kEnumThreshold) {
  std::vector<MaxSolvableSubgroup> out;
  const std::string& n = S.name;
  bool whole = n == "Sp(2,2)" || n == "Sp(2,3)" || n == "O+(2,2)" ||
               n == "O-(2,2)" || n == "O+(4,2)" || n == "O+(4,3)";
  if (whole) {
    if (!S.perm.is_solvable())
      throw verification_failure(n + ": expected solvable");
    out.push_back({n, S.order.to_u64(), S.perm, "whole-group"});
  } else {
    static const std::map<std::string, std::vector<std::pair<uint32_t, uint64_t>>>
        sylow_entries = {
            {"Sp(4,2)", {{3, 72}, {5, 20}}},
            {"O-(4,2)", {{3, 12}, {5, 20}}},
            {"O+(6,2)", {{3, 144}, {5, 120}, {7, 42}}},
            {"Sp(4,3)", {{5, 40}}},
            {"O-(6,2)", {{5, 40}}},
            {"Sp(6,2)", {{5, 120}, {7, 42}}},
        };
    auto it = sylow_entries.find(n);
    if (it == sylow_entries.end())
      throw std::invalid_argument("max_solvable_in_S: unknown group " + n);
    for (auto [rr, expected] : it->second) {
      auto [p, norm] = S.perm.sylow_and_normalizer(rr, enum_threshold);
      if (norm.order() != BigUint(expected))
        throw verification_failure(n + ": Sylow-" + std::to_string(rr) +
                                   " normalizer order " + norm.order().to_string() +
                                   ", expected " + std::to_string(expected));
      out.push_back({"N(Syl" + std::to_string(rr) + ")", expected, norm,
                     "sylow-normalizer"});
    }
    bool has_bundled = n == "Sp(4,3)" || n == "Sp(6,2)" || n == "O-(6,2)";
    if (has_bundled) {
      for (const auto& entry : load_spo_data(spo_path)) {
        if (entry.s_name != n) continue;
        std::vector<Perm> gens;
        for (const auto& w : entry.words) gens.push_back(evaluate_word(S.perm, w));
        PermGroup m = PermGroup::from_generators(S.perm.degree(), gens);
        if (m.order() != BigUint(entry.order))
          throw verification_failure("bundled " + entry.name + ": order " +
                                     m.order().to_string() + " != " +
                                     std::to_string(entry.order));
        out.push_back({entry.name, entry.order, m, "bundled"});
      }
    }
  }
  // shared verification: solvability, order-table membership, r-radical bound
  bool orthogonal = n[0] == 'O';
  uint32_t r = S.field_size;
  for (const auto& m : out) {
    if (!m.group.is_solvable())
      throw verification_failure(n + "/" + m.name + ": not solvable");
    if (n != "O+(4,3)") {
      auto orders = table1_orders(table1_e_of(n), n);
      if (std::find(orders.begin(), orders.end(), m.order) == orders.end())
        throw verification_failure(n + "/" + m.name + ": order not in table");
    }
    BigUint rad = r_radical_order(m.group, r);
    BigUint bound = orthogonal ? BigUint(2) : BigUint(1);
    if (rad > bound)
      throw verification_failure(n + "/" + m.name + ": r-radical too large (" +
                                 rad.to_string() + ")");
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.order != y.order ? x.order < y.order : x.name < y.name;
  });
  return out;
}

// |H| = (p^a - 1) e^2 s a' for Case-I filtering.
inline BigUint candidate_order(uint32_t p, uint32_t a, uint32_t e, uint64_t s,
                               uint32_t a_div) {
  if (e < 2) throw std::invalid_argument("candidate_order: requires e > 1");
  if (a_div == 0 || a % a_div != 0)
    throw std::invalid_argument("candidate_order: a' must divide a");
  BigUint pa = BigUint(p).pow(a).sub(BigUint(1));
  return pa.mul(BigUint(e).mul(BigUint(e))).mul(BigUint(s)).mul(BigUint(a_div));
}

// ---- candidate assembly ----

struct CandidateGroup {
  std::string name;
  std::optional<MatrixGroup> group;
  std::string provenance;
  BigUint order = BigUint(0);
  uint64_t s_value = 0;   // |M| factor in the order formula
  uint32_t a_prime = 1;   // Galois factor in the order formula
  std::vector<std::string> caveats;
  bool skipped = false;
  std::string skip_reason;
};

struct CatalogOptions {
  std::string spo_path = "data/spo_subgroups.json";
  uint64_t domain_budget = kVectorDomainBudget;
  uint64_t enum_threshold = kEnumThreshold;
  uint64_t seed = 1;
  uint32_t growth_rounds = 4000;  // random normalizer growth when enumeration is out
};

namespace catdetail {

inline FqMat spread_right(const FqMat& h, uint32_t m) {
  return FqMat::identity(h.field(), m).kron(h);
}

// N_L(H) by filtering the permutation image of L, or by seeded random
// growth when L exceeds the enumeration threshold (flagged by the caller).
inline std::vector<Perm> normalizer_in(const PermGroup& l, const PermGroup& h,
                                       uint64_t threshold, bool& exact,
                                       uint64_t seed, uint32_t rounds) {
  std::vector<Perm> gens = h.generators();
  PermGroup cur = h;
  auto normalizes = [&](const Perm& g) {
    for (const auto& s : h.generators())
      if (!h.contains(g.inverse() * s * g)) return false;
    return true;
  };
  if (l.order() <= BigUint(threshold)) {
    exact = true;
    l.for_each_element([&](const Perm& g) {
      if (normalizes(g) && !cur.contains(g)) {
        gens.push_back(g);
        cur = PermGroup::from_generators(l.degree(), gens);
      }
      return true;
    }, threshold);
    return gens;
  }
  exact = false;
  std::mt19937_64 rng(seed);
  const auto& lg = l.generators();
  Perm w(l.degree());
  for (uint32_t i = 0; i < rounds; ++i) {
    w = w * lg[rng() % lg.size()];
    if (normalizes(w) && !cur.contains(w)) {
      gens.push_back(w);
      cur = PermGroup::from_generators(l.degree(), gens);
    }
  }
  return gens;
}

}  // namespace catdetail

inline std::vector<CandidateGroup> assemble_candidates(const Parameters& P,
                                                       const CatalogOptions& opts = {}) {
  auto violations = validate_parameters(P);
  if (!violations.empty()) {
    std::string msg = "assemble_candidates: invalid parameters:";
    for (const auto& v : violations) msg += " " + v + ";";
    throw std::invalid_argument(msg);
  }
  DerivedParameters D = derive_parameters(P);
  uint32_t m0 = D.b_divides_a ? P.a / D.b : P.a;
  Fq base_field = Fq::make(P.p, D.b_divides_a ? D.b : 1);
  auto tower = tower_singer_frobenius(base_field, m0);
  BigUint pa_minus_1 = BigUint(P.p).pow(P.a).sub(BigUint(1));

  std::vector<char> types =
      D.b_divides_a ? std::vector<char>{'s'} : extraspecial_classes(D.r, base_field);

  std::vector<CandidateGroup> out;
  for (char type : types) {
    ExtraspecialData E = make_extraspecial(D.r, D.k, base_field, type);
    ExtraspecialNormalizer NR = extraspecial_normalizer(E);
    ClassicalGroup S = classical_group_by_name(NR.quotient_name);
    auto Ms = max_solvable_in_S(S, opts.spo_path, opts.enum_threshold);
    for (const auto& M : Ms) {
      CandidateGroup cand;
      cand.name = "p" + std::to_string(P.p) + "d" + std::to_string(P.d) + "a" +
                  std::to_string(P.a) + "e" + std::to_string(P.e) + "." + S.name +
                  "." + M.name;
      cand.s_value = M.order;
      cand.provenance = "F = U o E(type " + std::string(1, E.type) + "), N/F = " +
                        S.name + ", M = " + M.name + " (" + M.source + ")";
      try {
        // H_0 <= GL(e, q0): the full preimage of M in N
        std::vector<FqMat> h0 = NR.f_gens;
        for (const auto& g : reduce_generators(M.group.degree(), M.group.generators()))
          h0.push_back(lift_isometry(E, perm_to_matrix(E.gfr, 2 * D.k, g)));
        // Kronecker assembly over the base field
        FqMat ie = FqMat::identity(base_field, E.e);
        std::vector<FqMat> gens{tower.t.kron(ie), tower.s.kron(ie)};
        for (const auto& h : h0) gens.push_back(catdetail::spread_right(h, m0));

        MatrixGroup H(base_field, m0 * E.e, gens, cand.provenance);
        if (base_field.k() == 2) {
          // blow down to GF(p) and extend to N_L(H_1)
          std::vector<FqMat> blown;
          for (const auto& g : H.generators) blown.push_back(blowup_embedding(g));
          Fq fp = Fq::make(P.p, 1);
          MatrixGroup H1(fp, P.d, blown, cand.provenance);

          std::vector<FqMat> f_gens{blowup_embedding(tower.t.kron(ie))};
          for (const auto& b : E.basis)
            f_gens.push_back(blowup_embedding(catdetail::spread_right(b, m0)));
          MatrixGroup F(fp, P.d, f_gens, "Fit(H_1)");
          std::vector<FqMat> l_gens = f_gens;
          for (const auto& n : NR.lifts)
            l_gens.push_back(blowup_embedding(catdetail::spread_right(n, m0)));
          l_gens.push_back(blowup_embedding(tower.s.kron(ie)));
          l_gens.push_back(blowup_frobenius(base_field, m0 * E.e));

          auto f_perm = mat_to_perm(F, VectorDomain::Nonzero, opts.domain_budget);
          std::vector<FqMat> l_kept;
          for (const auto& g : l_gens) {
            bool ok = true;
            auto gp = matrix_to_perm(g, VectorDomain::Nonzero, opts.domain_budget);
            for (const auto& fg : f_perm.generators())
              ok &= f_perm.contains(gp.inverse() * fg * gp);
            if (ok)
              l_kept.push_back(g);
            else
              cand.caveats.push_back("L generator dropped: does not normalize F");
          }
          MatrixGroup L(fp, P.d, l_kept, "N(Fit(H_1))");
          auto l_perm = mat_to_perm(L, VectorDomain::Nonzero, opts.domain_budget);
          BigUint l_expected =
              pa_minus_1.mul(BigUint(P.e).mul(BigUint(P.e)))
                  .mul(symplectic_order(2 * D.k, D.r))
                  .mul(BigUint(P.a));
          if (l_perm.order() != l_expected)
            cand.caveats.push_back("L order " + l_perm.order().to_string() +
                                   " differs from F:(Sp:Z_a) = " +
                                   l_expected.to_string());
          auto h1_perm = mat_to_perm(H1, VectorDomain::Nonzero, opts.domain_budget);
          bool exact = false;
          auto n_gens = catdetail::normalizer_in(l_perm, h1_perm, opts.enum_threshold,
                                                 exact, opts.seed, opts.growth_rounds);
          if (!exact) cand.caveats.push_back("possibly-non-maximal");
          std::vector<FqMat> final_gens;
          for (const auto& g : n_gens)
            final_gens.push_back(perm_to_matrix(fp, P.d, g));
          H = MatrixGroup(fp, P.d, final_gens, cand.provenance);
        }

        // verification: faithful image, solvable, irreducible, central U,
        // and the Case-I order formula as a cross-check
        auto hp = mat_to_perm(H, VectorDomain::Nonzero, opts.domain_budget);
        cand.order = hp.order();
        if (!hp.is_solvable())
          throw verification_failure("candidate is not solvable");
        auto irr = is_irreducible(H, opts.domain_budget);
        if (!irr.irreducible)
          throw verification_failure("candidate is not irreducible");
        // U = <t (x) I_e> is cyclic of order p^a-1 and normal in the
        // candidate; the Galois part conjugates it to Frobenius powers, so
        // centrality holds only inside C_H(U).
        FqMat u = tower.t.kron(ie);
        if (base_field.k() == 2) u = blowup_embedding(u);
        if (!u.has_order_exactly(pa_minus_1.to_u64()))
          throw verification_failure("U generator order is not p^a-1");
        PermGroup ugrp = PermGroup::from_generators(
            hp.degree(), {matrix_to_perm(u, VectorDomain::Nonzero, opts.domain_budget)});
        for (const auto& g : H.generators) {
          Perm gp = matrix_to_perm(g, VectorDomain::Nonzero, opts.domain_budget);
          if (!ugrp.contains(gp.inverse() * ugrp.generators()[0] * gp))
            throw verification_failure("U is not normal in the candidate");
        }
        bool matched = false;
        for (uint32_t ap = 1; ap <= P.a && !matched; ++ap) {
          if (P.a % ap != 0) continue;
          if (candidate_order(P.p, P.a, P.e, M.order, ap) == cand.order) {
            cand.a_prime = ap;
            matched = true;
          }
        }
        if (!matched)
          throw verification_failure("order " + cand.order.to_string() +
                                     " does not match (p^a-1) e^2 s a'");
        cand.group = std::move(H);
      } catch (const budget_exceeded& ex) {
        cand.skipped = true;
        cand.skip_reason = ex.what();
      } catch (const verification_failure& ex) {
        cand.skipped = true;
        cand.skip_reason = std::string("verification failure: ") + ex.what();
      }
      out.push_back(std::move(cand));
    }
  }
  std::sort(out.begin(), out.end(), [](const CandidateGroup& x, const CandidateGroup& y) {
    return x.name != y.name ? x.name < y.name
                            : x.order.to_string() < y.order.to_string();
  });
  return out;
}

}  // namespace cgt
