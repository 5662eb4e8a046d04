// Regenerates data/spo_subgroups.json: the maximal solvable subgroups of the
// small classical groups that are not Sylow normalizers, stored as generator
// words over the deterministic generators of the standard groups.
//
// The subgroups are built from explicit matrix constructions (block wreath
// products, extraspecial normalizers intersected with the form group, and
// the blown-up semilinear unitary group), moved into the standard form frame,
// verified (order, solvability, r-radical bound, membership), and finally
// expressed as words by breadth-first search over the ambient group.
//
//   make_spo_data [output.json]

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <functional>
#include <vector>

#include <json.hpp>

#include "cgt/catalog.hpp"
#include "cgt/classical.hpp"
#include "cgt/extraspecial.hpp"

using namespace cgt;

namespace {

// Breadth-first generator words for target elements of s, using the
// mixed-radix element index of the stabilizer chain as a perfect hash.
std::vector<std::vector<uint32_t>> bfs_words(const PermGroup& s,
                                             const std::vector<Perm>& targets) {
  uint64_t n = s.order().to_u64();
  std::vector<uint32_t> parent(n, UINT32_MAX);
  std::vector<uint8_t> via(n, 0);
  std::vector<uint8_t> seen(n, 0);
  std::vector<uint32_t> queue;
  uint64_t id = s.element_index(Perm(s.degree()));
  seen[id] = 1;
  parent[id] = static_cast<uint32_t>(id);
  queue.push_back(static_cast<uint32_t>(id));
  for (size_t head = 0; head < queue.size(); ++head) {
    Perm g = s.element_at(queue[head]);
    for (uint8_t gi = 0; gi < s.generators().size(); ++gi) {
      uint64_t w = s.element_index(g * s.generators()[gi]);
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = queue[head];
        via[w] = gi;
        queue.push_back(static_cast<uint32_t>(w));
      }
    }
  }
  std::vector<std::vector<uint32_t>> words;
  for (const auto& t : targets) {
    uint64_t idx = s.element_index(t);
    if (!seen[idx]) throw std::runtime_error("target not reached by BFS");
    std::vector<uint32_t> w;
    while (idx != id) {
      w.push_back(via[idx]);
      idx = parent[idx];
    }
    std::reverse(w.begin(), w.end());
    words.push_back(std::move(w));
  }
  return words;
}

nlohmann::json emit_entry(const ClassicalGroup& s, const std::string& name,
                          const std::string& structure, const PermGroup& m,
                          uint64_t expected_order, uint32_t radical_prime,
                          uint64_t radical_bound) {
  if (m.order() != BigUint(expected_order))
    throw std::runtime_error(name + ": order " + m.order().to_string());
  if (!m.is_solvable()) throw std::runtime_error(name + ": not solvable");
  if (!m.is_subgroup_of(s.perm)) throw std::runtime_error(name + ": not inside S");
  if (r_radical_order(m, radical_prime) > BigUint(radical_bound))
    throw std::runtime_error(name + ": r-radical too large");
  auto gens = reduce_generators(m.degree(), m.generators());
  auto words = bfs_words(s.perm, gens);
  nlohmann::json j;
  j["s_name"] = s.name;
  j["name"] = name;
  j["structure"] = structure;
  j["order"] = expected_order;
  j["words"] = words;
  std::printf("  %s / %s: order %llu, %zu generator words\n", s.name.c_str(),
              name.c_str(), static_cast<unsigned long long>(expected_order),
              words.size());
  return j;
}

PermGroup normalizer_of(const PermGroup& ambient, const PermGroup& target) {
  std::vector<Perm> gens;
  PermGroup cur = PermGroup::trivial(ambient.degree());
  ambient.for_each_element([&](const Perm& g) {
    for (const auto& s : target.generators())
      if (!target.contains(g.inverse() * s * g)) return true;
    if (!cur.contains(g)) {
      gens.push_back(g);
      cur = PermGroup::from_generators(ambient.degree(), gens);
    }
    return true;
  });
  return cur;
}

// The three non-Sylow entries of Sp(4,3): the two extraspecial-normalizer
// pieces 2^{1+4}:S3 and 2^{1+4}:D10, and the block wreath Sp(2,3) wr S2.
void sp43_entries(nlohmann::json& groups) {
  auto S = standard_symplectic_group(4, 3);
  auto f3 = Fq::make(3, 1);

  // minus-type 2^{1+4} and its GL(4,3)-normalizer, moved to the standard frame
  auto E = make_extraspecial(2, 2, f3, '-');
  auto NR = extraspecial_normalizer(E);
  auto Ngl = NR.normalizer_group();
  auto B = invariant_alternating_form(MatrixGroup(f3, 4, E.basis, ""));
  auto T = symplectic_standardize(*B);
  auto Tinv = *T.inverse();
  auto conj = [&](const FqMat& g) { return T * g * Tinv; };

  std::vector<Perm> ngl_perm_gens;
  for (const auto& g : Ngl.generators)
    ngl_perm_gens.push_back(matrix_to_perm(conj(g), VectorDomain::Nonzero));
  auto ngl = PermGroup::from_generators(80, ngl_perm_gens);

  // intersect with Sp(4,3): keep the elements preserving the standard Gram
  auto J = symplectic_gram(f3, 4);
  std::vector<Perm> nsp_gens;
  PermGroup nsp = PermGroup::trivial(80);
  ngl.for_each_element([&](const Perm& g) {
    FqMat m = perm_to_matrix(f3, 4, g);
    if (m * J * m.transpose() != J) return true;
    if (!nsp.contains(g)) {
      nsp_gens.push_back(g);
      nsp = PermGroup::from_generators(80, nsp_gens);
    }
    return true;
  });
  if (nsp.order().to_u64() != 1920)
    throw std::runtime_error("N_Sp(E) order " + nsp.order().to_string());

  std::vector<Perm> e_perm;
  for (const auto& b : E.basis)
    e_perm.push_back(matrix_to_perm(conj(b), VectorDomain::Nonzero));
  auto egrp = PermGroup::from_generators(80, e_perm);

  for (auto [rr, quot_name, expected] :
       std::vector<std::tuple<uint32_t, const char*, uint64_t>>{
           {3, "2^(1+4):S3", 192}, {5, "2^(1+4):D10", 320}}) {
    auto p = nsp.sylow_and_normalizer(rr).first;
    auto ep = group_closure(egrp, p.generators());
    auto m = normalizer_of(nsp, ep);
    groups.push_back(emit_entry(S, std::string("N(EP") + std::to_string(rr) + ")",
                                quot_name, m, expected, 3, 1));
  }

  // Sp(2,3) wr S2 on the perpendicular pair of planes
  auto sp23 = standard_symplectic_group(2, 3);
  std::vector<FqMat> wr_gens;
  for (const auto& g : sp23.mat_gens) {
    FqMat top = FqMat::identity(f3, 4), bot = FqMat::identity(f3, 4);
    for (uint32_t i = 0; i < 2; ++i)
      for (uint32_t j = 0; j < 2; ++j) {
        top.at(i, j) = g.at(i, j);
        bot.at(2 + i, 2 + j) = g.at(i, j);
      }
    wr_gens.push_back(top);
    wr_gens.push_back(bot);
  }
  FqMat swap(f3, 4);
  swap.at(0, 2) = swap.at(2, 0) = swap.at(1, 3) = swap.at(3, 1) = 1;
  wr_gens.push_back(swap);
  std::vector<Perm> wr_perm;
  for (const auto& g : wr_gens)
    wr_perm.push_back(matrix_to_perm(g, VectorDomain::Nonzero));
  auto wr = PermGroup::from_generators(80, wr_perm);
  groups.push_back(
      emit_entry(S, "Sp(2,3) wr S2", "Sp(2,3) wr S2", wr, 1152, 3, 1));
}

// GL(2,2) wr S3 in block form, as 6x6 matrices over GF(2).
std::vector<FqMat> block_wreath_gl22_s3(const Fq& f2) {
  std::vector<FqMat> gens;
  std::vector<std::array<std::array<uint32_t, 2>, 2>> gl22 = {
      {{{0, 1}, {1, 0}}}, {{{1, 1}, {0, 1}}}};
  for (uint32_t blk = 0; blk < 3; ++blk)
    for (const auto& g : gl22) {
      FqMat m = FqMat::identity(f2, 6);
      for (uint32_t i = 0; i < 2; ++i)
        for (uint32_t j = 0; j < 2; ++j) m.at(2 * blk + i, 2 * blk + j) = g[i][j];
      gens.push_back(m);
    }
  FqMat swap01(f2, 6), cyc(f2, 6);
  for (uint32_t i = 0; i < 2; ++i) {
    swap01.at(i, 2 + i) = swap01.at(2 + i, i) = 1;
    swap01.at(4 + i, 4 + i) = 1;
    cyc.at(i, 2 + i) = cyc.at(2 + i, 4 + i) = cyc.at(4 + i, i) = 1;
  }
  gens.push_back(swap01);
  gens.push_back(cyc);
  return gens;
}

std::vector<FqMat> reduce_mat(const std::vector<FqMat>& gens, const Fq& f) {
  std::vector<Perm> perms;
  std::vector<FqMat> kept;
  PermGroup cur = PermGroup::trivial(
      static_cast<Point>(vector_count(f, gens.front().dim()) - 1));
  for (const auto& g : gens) {
    Perm p = matrix_to_perm(g, VectorDomain::Nonzero);
    if (cur.contains(p)) continue;
    kept.push_back(g);
    perms.push_back(p);
    cur = PermGroup::from_generators(cur.degree(), perms);
  }
  return kept;
}

// GammaU(3,2): the unitary isometries of sum x_i conj(y_i) over GF(4)
// together with the field automorphism, blown up to 6x6 over GF(2).
std::vector<FqMat> gamma_u32_blown() {
  Fq f4 = Fq::make(2, 2);
  auto hermit = [&](const std::vector<uint32_t>& x, const std::vector<uint32_t>& y) {
    uint32_t s = 0;
    for (int i = 0; i < 3; ++i) s = f4.add(s, f4.mul(x[i], f4.frobenius(y[i])));
    return s;
  };
  // collect isometries by row backtracking until the group is complete
  std::vector<FqMat> gu_gens;
  PermGroup cur = PermGroup::trivial(63);
  std::vector<Perm> cur_gens;
  std::vector<std::vector<uint32_t>> rows(3);
  std::function<void(int)> rec = [&](int r) {
    if (cur.order().to_u64() == 648) return;
    if (r == 3) {
      FqMat m(f4, 3);
      for (uint32_t i = 0; i < 3; ++i)
        for (uint32_t j = 0; j < 3; ++j) m.at(i, j) = rows[i][j];
      if (!m.inverse()) return;
      Perm p = matrix_to_perm(m, VectorDomain::Nonzero);
      if (!cur.contains(p)) {
        gu_gens.push_back(m);
        cur_gens.push_back(p);
        cur = PermGroup::from_generators(63, cur_gens);
      }
      return;
    }
    for (uint64_t code = 0; code < 64; ++code) {
      rows[r] = decode_vector(f4, 3, code);
      bool ok = hermit(rows[r], rows[r]) == 1;
      for (int s = 0; s < r && ok; ++s) ok = hermit(rows[r], rows[s]) == 0;
      if (ok) rec(r + 1);
      if (cur.order().to_u64() == 648) return;
    }
  };
  rec(0);
  if (cur.order().to_u64() != 648)
    throw std::runtime_error("GU(3,2) order " + cur.order().to_string());
  std::vector<FqMat> blown;
  for (const auto& g : reduce_mat(gu_gens, f4)) blown.push_back(blowup_embedding(g));
  blown.push_back(blowup_frobenius(f4, 3));
  return blown;
}

// Conjugates 6x6 GF(2) generators into the standard frame of S and emits.
void entry_in_sp62(nlohmann::json& groups, const ClassicalGroup& S,
                   const std::vector<FqMat>& gens, const std::string& name,
                   const std::string& structure, uint64_t order) {
  Fq f2 = Fq::make(2, 1);
  MatrixGroup mg(f2, 6, gens, "");
  auto B = invariant_alternating_form(mg);
  if (!B) throw std::runtime_error(name + ": no invariant symplectic form");
  auto T = symplectic_standardize(*B);
  auto Tinv = *T.inverse();
  std::vector<Perm> perms;
  for (const auto& g : gens)
    perms.push_back(matrix_to_perm(T * g * Tinv, VectorDomain::Nonzero));
  auto m = PermGroup::from_generators(63, perms);
  groups.push_back(emit_entry(S, name, structure, m, order, 2, 1));
}

void entry_in_ominus62(nlohmann::json& groups, const ClassicalGroup& S,
                       const std::vector<FqMat>& gens,
                       const std::vector<uint32_t>& qvalues,
                       const std::string& name, const std::string& structure,
                       uint64_t order) {
  // qvalues: the invariant quadratic form on all 64 vector codes
  for (const auto& g : gens)
    for (uint64_t c = 0; c < 64; ++c) {
      Fq f2 = Fq::make(2, 1);
      auto v = decode_vector(f2, 6, c);
      if (qvalues[encode_vector(f2, g.row_apply(v))] != qvalues[c])
        throw std::runtime_error(name + ": quadratic form not invariant");
    }
  auto [T, eps] = quadratic_standardize_gf2(6, qvalues);
  if (eps != '-') throw std::runtime_error(name + ": form is not minus type");
  auto Tinv = *T.inverse();
  std::vector<Perm> perms;
  for (const auto& g : gens)
    perms.push_back(matrix_to_perm(T * g * Tinv, VectorDomain::Nonzero));
  auto m = PermGroup::from_generators(63, perms);
  groups.push_back(emit_entry(S, name, structure, m, order, 2, 2));
}


}  // namespace

int main(int argc, char** argv) {
  std::string out_path = argc > 1 ? argv[1] : "data/spo_subgroups.json";
  nlohmann::json groups = nlohmann::json::array();

  std::printf("Sp(4,3) entries:\n");
  sp43_entries(groups);

  Fq f2 = Fq::make(2, 1);
  auto wreath = block_wreath_gl22_s3(f2);
  auto gammau = gamma_u32_blown();

  // quadratic forms the two groups preserve, as value tables on GF(2)^6
  std::vector<uint32_t> q_wreath(64), q_gu(64);
  {
    Fq f4 = Fq::make(2, 2);
    for (uint64_t c = 0; c < 64; ++c) {
      auto v = decode_vector(f2, 6, c);
      uint32_t qa = 0;  // anisotropic plane per block
      for (int blk = 0; blk < 3; ++blk) {
        uint32_t x = v[2 * blk], y = v[2 * blk + 1];
        qa ^= (x & y) ^ x ^ y;  // x^2 + xy + y^2 over GF(2)
      }
      q_wreath[c] = qa;
      // Q(x) = h(x,x) for the hermitian form, via the GF(4) coordinates
      uint32_t s = 0;
      for (int i = 0; i < 3; ++i) {
        uint32_t elt = f4.from_coeffs({v[2 * i], v[2 * i + 1]});
        s = f4.add(s, f4.mul(elt, f4.frobenius(elt)));
      }
      q_gu[c] = s;  // lies in GF(2)
    }
  }

  std::printf("Sp(6,2) entries:\n");
  auto sp62 = standard_symplectic_group(6, 2);
  entry_in_sp62(groups, sp62, wreath, "GL(2,2) wr S3", "3^3:(S4 x S2)", 1296);
  entry_in_sp62(groups, sp62, gammau, "GammaU(3,2)", "3^(1+2):(2.S4)", 1296);

  std::printf("O-(6,2) entries:\n");
  auto om62 = standard_orthogonal_group(6, '-', 2);
  entry_in_ominus62(groups, om62, wreath, q_wreath, "GL(2,2) wr S3",
                    "3^3:(S4 x S2)", 1296);
  entry_in_ominus62(groups, om62, gammau, q_gu, "GammaU(3,2)",
                    "3^(1+2):(2.S4)", 1296);

  nlohmann::json j;
  j["comment"] =
      "Maximal solvable subgroups of the small classical groups that are not "
      "Sylow normalizers, as generator words over the deterministic "
      "generators of the standard groups. Regenerate with make_spo_data.";
  j["groups"] = groups;
  std::ofstream out(out_path);
  out << j.dump(1) << '\n';
  std::printf("wrote %s (%zu groups)\n", out_path.c_str(), groups.size());
  return 0;
}
