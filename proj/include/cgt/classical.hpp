#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cgt/matrix.hpp"
#include "cgt/perm_group.hpp"

namespace cgt {

// Standard classical groups over small fields, as isometry groups of fixed
// forms. Conventions (shared with the extraspecial-group frame):
//   - symplectic form: perp sum of planes, B(e_{2i}, e_{2i+1}) = 1,
//     B(e_{2i+1}, e_{2i}) = -1;
//   - plus-type quadratic form: Q = x0 x1 + x2 x3 + ...;
//   - minus-type quadratic form: anisotropic plane first,
//     Q = x0^2 + x0 x1 + x1^2 + x2 x3 + ... (over GF(2));
//     over GF(3) the anisotropic plane is x0^2 + x1^2.
// Groups are generated by transvections (reflections in odd characteristic),
// deterministically reduced, and verified against the classical order
// formulas.

inline FqMat symplectic_gram(const Fq& f, uint32_t dim) {
  FqMat j(f, dim);
  for (uint32_t i = 0; i + 1 < dim; i += 2) {
    j.at(i, i + 1) = 1;
    j.at(i + 1, i) = f.neg(1);
  }
  return j;
}

inline uint32_t symplectic_pair(const Fq& f, const FqMat& gram,
                                const std::vector<uint32_t>& x,
                                const std::vector<uint32_t>& y) {
  uint32_t s = 0;
  for (uint32_t i = 0; i < gram.dim(); ++i) {
    if (x[i] == 0) continue;
    for (uint32_t j = 0; j < gram.dim(); ++j)
      s = f.add(s, f.mul(x[i], f.mul(gram.at(i, j), y[j])));
  }
  return s;
}

inline uint32_t standard_quadratic(const Fq& f, char eps,
                                   const std::vector<uint32_t>& x) {
  uint32_t dim = static_cast<uint32_t>(x.size());
  uint32_t q = 0;
  uint32_t start = 0;
  if (eps == '-') {
    if (f.p() == 2) {
      // x0^2 + x0 x1 + x1^2
      q = f.add(f.add(f.mul(x[0], x[0]), f.mul(x[0], x[1])), f.mul(x[1], x[1]));
    } else {
      q = f.add(f.mul(x[0], x[0]), f.mul(x[1], x[1]));
    }
    start = 2;
  }
  for (uint32_t i = start; i + 1 < dim; i += 2) q = f.add(q, f.mul(x[i], x[i + 1]));
  return q;
}

inline BigUint symplectic_order(uint32_t dim, uint32_t q) {
  uint32_t m = dim / 2;
  BigUint o = BigUint(q).pow(uint64_t(m) * m);
  for (uint32_t i = 1; i <= m; ++i)
    o = o.mul(BigUint(q).pow(2 * i).sub(BigUint(1)));
  return o;
}

inline BigUint orthogonal_order(uint32_t dim, char eps, uint32_t q) {
  uint32_t m = dim / 2;
  BigUint o = BigUint(2).mul(BigUint(q).pow(uint64_t(m) * (m - 1)));
  BigUint qm = BigUint(q).pow(m);
  o = o.mul(eps == '+' ? qm.sub(BigUint(1)) : qm.add(BigUint(1)));
  for (uint32_t i = 1; i < m; ++i)
    o = o.mul(BigUint(q).pow(2 * i).sub(BigUint(1)));
  return o;
}

struct ClassicalGroup {
  std::string name;
  uint32_t field_size = 2;
  uint32_t dim = 2;
  char eps = 's';  // 's' symplectic, '+', '-'
  Fq field;
  std::vector<FqMat> mat_gens;  // deterministic reduced generating set
  PermGroup perm;               // action on the nonzero vectors
  BigUint order;

  ClassicalGroup(Fq f) : field(std::move(f)), perm(PermGroup::trivial(0)) {}

  FqMat matrix_of(const Perm& g) const { return perm_to_matrix(field, dim, g); }
};

namespace detail {

inline std::vector<FqMat> reduce_mat_generators(const Fq& f, uint32_t dim,
                                                const std::vector<FqMat>& gens,
                                                const BigUint& target,
                                                PermGroup* perm_out) {
  std::vector<FqMat> kept;
  std::vector<Perm> kept_perms;
  PermGroup cur = PermGroup::trivial(
      static_cast<Point>(vector_count(f, dim) - 1));
  for (const auto& g : gens) {
    Perm p = matrix_to_perm(g, VectorDomain::Nonzero);
    if (cur.contains(p)) continue;
    kept.push_back(g);
    kept_perms.push_back(p);
    cur = PermGroup::from_generators(cur.degree(), kept_perms);
    if (cur.order() == target) break;
  }
  if (perm_out) *perm_out = cur;
  return kept;
}

}  // namespace detail

// Sp(dim, r): generated by the symplectic transvections
// x -> x + lambda B(x,v) v.
inline ClassicalGroup standard_symplectic_group(uint32_t dim, uint32_t r) {
  if (dim % 2 != 0) throw std::invalid_argument("symplectic: dimension must be even");
  Fq f = Fq::make(r, 1);
  ClassicalGroup g(f);
  g.name = "Sp(" + std::to_string(dim) + "," + std::to_string(r) + ")";
  g.field_size = r;
  g.dim = dim;
  g.eps = 's';
  FqMat gram = symplectic_gram(f, dim);
  std::vector<FqMat> transvections;
  uint64_t total = vector_count(f, dim);
  for (uint64_t idx = 1; idx < total; ++idx) {
    auto v = decode_vector(f, dim, idx);
    uint32_t lead = 0;
    while (v[lead] == 0) ++lead;
    if (v[lead] != 1) continue;  // one per projective point
    for (uint32_t lambda = 1; lambda < r; ++lambda) {
      FqMat t = FqMat::identity(f, dim);
      for (uint32_t i = 0; i < dim; ++i) {
        std::vector<uint32_t> ei(dim, 0);
        ei[i] = 1;
        uint32_t c = f.mul(lambda, symplectic_pair(f, gram, ei, v));
        for (uint32_t j = 0; j < dim; ++j)
          t.at(i, j) = f.add(t.at(i, j), f.mul(c, v[j]));
      }
      transvections.push_back(t);
    }
  }
  g.order = symplectic_order(dim, r);
  g.mat_gens = detail::reduce_mat_generators(f, dim, transvections, g.order, &g.perm);
  if (g.perm.order() != g.order)
    throw std::logic_error(g.name + ": transvections did not generate");
  return g;
}

// O^eps(dim, r) as the isometry group of the standard quadratic form.
// Generated by orthogonal transvections (GF(2)) or reflections (odd r);
// if generation falls short the group is completed by filtering small GL.
inline ClassicalGroup standard_orthogonal_group(uint32_t dim, char eps, uint32_t r = 2) {
  if (dim % 2 != 0) throw std::invalid_argument("orthogonal: dimension must be even");
  Fq f = Fq::make(r, 1);
  ClassicalGroup g(f);
  g.name = std::string("O") + eps + "(" + std::to_string(dim) + "," +
           std::to_string(r) + ")";
  g.field_size = r;
  g.dim = dim;
  g.eps = eps;
  auto quad = [&](const std::vector<uint32_t>& x) {
    return standard_quadratic(f, eps, x);
  };
  auto polar = [&](const std::vector<uint32_t>& x, const std::vector<uint32_t>& y) {
    std::vector<uint32_t> s(dim);
    for (uint32_t i = 0; i < dim; ++i) s[i] = f.add(x[i], y[i]);
    return f.sub(f.sub(quad(s), quad(x)), quad(y));
  };
  std::vector<FqMat> gens;
  uint64_t total = vector_count(f, dim);
  for (uint64_t idx = 1; idx < total; ++idx) {
    auto v = decode_vector(f, dim, idx);
    uint32_t qv = quad(v);
    if (qv == 0) continue;
    FqMat t = FqMat::identity(f, dim);
    for (uint32_t i = 0; i < dim; ++i) {
      std::vector<uint32_t> ei(dim, 0);
      ei[i] = 1;
      // x -> x - B(x,v)/Q(v) v; over GF(2) this is x + B(x,v) v
      uint32_t c = f.mul(polar(ei, v), f.inv(qv));
      for (uint32_t j = 0; j < dim; ++j)
        t.at(i, j) = f.sub(t.at(i, j), f.mul(c, v[j]));
    }
    gens.push_back(t);
  }
  g.order = orthogonal_order(dim, eps, r);
  g.mat_gens = detail::reduce_mat_generators(f, dim, gens, g.order, &g.perm);
  if (g.perm.order() != g.order) {
    if (r == 2 && dim <= 4) {
      // complete by filtering all of GL(dim,2) for isometries
      uint64_t cnt = uint64_t(1) << (dim * dim);
      for (uint64_t mask = 0; mask < cnt && g.perm.order() != g.order; ++mask) {
        FqMat m(f, dim);
        for (uint32_t b = 0; b < dim * dim; ++b)
          if (mask & (uint64_t(1) << b)) m.at(b / dim, b % dim) = 1;
        if (!m.inverse()) continue;
        bool iso = true;
        for (uint64_t idx = 1; idx < total && iso; ++idx) {
          auto v = decode_vector(f, dim, idx);
          iso = quad(m.row_apply(v)) == quad(v);
        }
        if (!iso) continue;
        Perm p = matrix_to_perm(m, VectorDomain::Nonzero);
        if (!g.perm.contains(p)) {
          g.mat_gens.push_back(m);
          auto gens2 = g.perm.generators();
          gens2.push_back(p);
          g.perm = PermGroup::from_generators(g.perm.degree(), gens2);
        }
      }
    }
    if (g.perm.order() != g.order)
      throw std::logic_error(g.name + ": generation failed");
  }
  return g;
}

// Lookup by the names used in the maximal-solvable-subgroup tables.
inline ClassicalGroup classical_group_by_name(const std::string& name) {
  if (name.rfind("Sp(", 0) == 0) {
    auto comma = name.find(',');
    uint32_t dim = std::stoul(name.substr(3, comma - 3));
    uint32_t r = std::stoul(name.substr(comma + 1, name.size() - comma - 2));
    return standard_symplectic_group(dim, r);
  }
  if (name[0] == 'O') {
    char eps = name[1];
    auto comma = name.find(',');
    uint32_t dim = std::stoul(name.substr(3, comma - 3));
    uint32_t r = std::stoul(name.substr(comma + 1, name.size() - comma - 2));
    return standard_orthogonal_group(dim, eps, r);
  }
  throw std::invalid_argument("unknown classical group name: " + name);
}

// ---- form utilities ----

// An invariant nondegenerate alternating bilinear form of a matrix group
// (unique up to scalar for irreducible groups), found as the kernel of the
// invariance system g B g^T = B together with alternating constraints.
inline std::optional<FqMat> invariant_alternating_form(const MatrixGroup& m) {
  const Fq& f = m.field;
  uint32_t n = m.dim;
  size_t vars = static_cast<size_t>(n) * n;
  std::vector<std::vector<uint32_t>> cols(vars);
  size_t nrows = vars * (m.generators.size() + 1) + n;
  for (size_t s = 0; s < vars; ++s) {
    FqMat b(f, n);
    b.at(static_cast<uint32_t>(s / n), static_cast<uint32_t>(s % n)) = 1;
    std::vector<uint32_t> col;
    col.reserve(nrows);
    for (const auto& g : m.generators) {
      FqMat img = (g * b * g.transpose()).add(b.scale(f.neg(1)));
      for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) col.push_back(img.at(i, j));
    }
    FqMat skew = b.add(b.transpose());  // B + B^T = 0
    for (uint32_t i = 0; i < n; ++i)
      for (uint32_t j = 0; j < n; ++j) col.push_back(skew.at(i, j));
    for (uint32_t i = 0; i < n; ++i) col.push_back(b.at(i, i));  // zero diagonal
    cols[s] = std::move(col);
  }
  auto ker = detail::kernel_basis(f, cols, nrows);
  for (const auto& t : ker) {
    FqMat b(f, n);
    for (size_t s = 0; s < vars; ++s)
      b.at(static_cast<uint32_t>(s / n), static_cast<uint32_t>(s % n)) = t[s];
    if (b.inverse()) return b;
  }
  return std::nullopt;
}

// Change of basis T with T B T^T the standard symplectic Gram
// (symplectic Gram-Schmidt; works in every characteristic).
inline FqMat symplectic_standardize(const FqMat& b) {
  const Fq& f = b.field();
  uint32_t n = b.dim();
  auto pair = [&](const std::vector<uint32_t>& x, const std::vector<uint32_t>& y) {
    uint32_t s = 0;
    for (uint32_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (uint32_t j = 0; j < n; ++j)
        s = f.add(s, f.mul(x[i], f.mul(b.at(i, j), y[j])));
    }
    return s;
  };
  std::vector<std::vector<uint32_t>> remaining;
  for (uint32_t i = 0; i < n; ++i) {
    std::vector<uint32_t> e(n, 0);
    e[i] = 1;
    remaining.push_back(e);
  }
  std::vector<std::vector<uint32_t>> rows;
  while (!remaining.empty()) {
    auto u = remaining.front();
    remaining.erase(remaining.begin());
    size_t vi = SIZE_MAX;
    for (size_t i = 0; i < remaining.size(); ++i)
      if (pair(u, remaining[i]) != 0) {
        vi = i;
        break;
      }
    if (vi == SIZE_MAX)
      throw std::invalid_argument("symplectic_standardize: degenerate form");
    auto v = remaining[vi];
    remaining.erase(remaining.begin() + vi);
    uint32_t c = f.inv(pair(u, v));
    for (auto& x : v) x = f.mul(x, c);
    // make the rest orthogonal to the pair (u, v)
    for (auto& w : remaining) {
      uint32_t cu = pair(w, v), cv = pair(w, u);
      for (uint32_t i = 0; i < n; ++i)
        w[i] = f.add(f.sub(w[i], f.mul(cu, u[i])), f.mul(cv, v[i]));
    }
    rows.push_back(u);
    rows.push_back(v);
  }
  FqMat t(f, n);
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) t.at(i, j) = rows[i][j];
  if (t * b * t.transpose() != symplectic_gram(f, n))
    throw std::logic_error("symplectic_standardize: verification failed");
  return t;
}

// GF(2) quadratic forms, given by the value on every vector code.
// Returns (T, eps) with Q(x T) = Q_eps_standard(x).
inline std::pair<FqMat, char> quadratic_standardize_gf2(
    uint32_t n, const std::vector<uint32_t>& values) {
  Fq f2 = Fq::make(2, 1);
  auto qval = [&](const std::vector<uint32_t>& x) {
    uint64_t code = 0;
    for (uint32_t i = 0; i < n; ++i) code = code * 2 + x[i];
    return values[code];
  };
  auto polar = [&](const std::vector<uint32_t>& x, const std::vector<uint32_t>& y) {
    std::vector<uint32_t> s(n);
    for (uint32_t i = 0; i < n; ++i) s[i] = x[i] ^ y[i];
    return qval(s) ^ qval(x) ^ qval(y);
  };
  std::vector<std::vector<uint32_t>> space;
  for (uint32_t i = 0; i < n; ++i) {
    std::vector<uint32_t> e(n, 0);
    e[i] = 1;
    space.push_back(e);
  }
  auto span_vector = [&](uint64_t mask) {
    std::vector<uint32_t> v(n, 0);
    for (size_t i = 0; i < space.size(); ++i)
      if (mask & (uint64_t(1) << i))
        for (uint32_t j = 0; j < n; ++j) v[j] ^= space[i][j];
    return v;
  };
  std::vector<std::vector<uint32_t>> pairs;
  while (space.size() > 2) {
    // find an isotropic vector in the span
    std::vector<uint32_t> v;
    for (uint64_t mask = 1; mask < (uint64_t(1) << space.size()); ++mask) {
      auto cand = span_vector(mask);
      if (qval(cand) == 0) {
        v = cand;
        break;
      }
    }
    if (v.empty()) break;
    std::vector<uint32_t> w;
    for (uint64_t mask = 1; mask < (uint64_t(1) << space.size()); ++mask) {
      auto cand = span_vector(mask);
      if (polar(v, cand) == 1) {
        w = cand;
        break;
      }
    }
    if (w.empty()) throw std::invalid_argument("quadratic form is degenerate");
    if (qval(w) == 1)
      for (uint32_t j = 0; j < n; ++j) w[j] ^= v[j];
    pairs.push_back(v);
    pairs.push_back(w);
    // project the complement onto the perp of (v, w) and re-extract a basis
    std::vector<std::vector<uint32_t>> next;
    detail::SpinBasis reduce(f2, n);
    for (auto s : space) {
      uint32_t cv = polar(s, v), cw = polar(s, w);
      for (uint32_t j = 0; j < n; ++j) s[j] ^= (cw & 1) * v[j] ^ (cv & 1) * w[j];
      if (reduce.insert(s)) next.push_back(s);
    }
    space = std::move(next);
  }
  char eps;
  std::vector<std::vector<uint32_t>> rows;
  // the leftover plane is hyperbolic or anisotropic
  bool aniso = true;
  if (space.size() != 2) throw std::logic_error("quadratic_standardize: rank");
  for (uint64_t mask = 1; mask < 4; ++mask) aniso &= qval(span_vector(mask)) == 1;
  if (aniso) {
    eps = '-';
    rows.push_back(space[0]);
    rows.push_back(space[1]);
    for (auto& p : pairs) rows.push_back(p);
  } else {
    // split the leftover plane hyperbolically too
    std::vector<uint32_t> v;
    for (uint64_t mask = 1; mask < 4; ++mask)
      if (qval(span_vector(mask)) == 0) {
        v = span_vector(mask);
        break;
      }
    std::vector<uint32_t> w;
    for (uint64_t mask = 1; mask < 4; ++mask)
      if (polar(v, span_vector(mask)) == 1) {
        w = span_vector(mask);
        break;
      }
    if (qval(w) == 1)
      for (uint32_t j = 0; j < n; ++j) w[j] ^= v[j];
    eps = '+';
    rows = pairs;
    rows.push_back(v);
    rows.push_back(w);
  }
  FqMat t(f2, n);
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) t.at(i, j) = rows[i][j];
  if (!t.inverse()) throw std::logic_error("quadratic_standardize: singular T");
  // verify: Q(e_i T + e_j T) pattern matches the standard form
  for (uint64_t code = 1; code < (uint64_t(1) << n); ++code) {
    std::vector<uint32_t> x(n);
    for (uint32_t i = 0; i < n; ++i) x[i] = (code >> (n - 1 - i)) & 1;
    if (qval(t.row_apply(x)) != standard_quadratic(f2, eps, x))
      throw std::logic_error("quadratic_standardize: verification failed");
  }
  return {t, eps};
}

}  // namespace cgt
