#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cgt/gf.hpp"
#include "cgt/perm_group.hpp"

namespace cgt {

// Dense matrix over Fq, row-major. The action convention is row vectors,
// v -> v*M, matching the left-to-right composition of permutations: the
// permutation of a product is the product of the permutations.
class FqMat {
public:
  FqMat(Fq field, uint32_t n)
      : f_(std::move(field)), n_(n), e_(static_cast<size_t>(n) * n, 0) {}

  static FqMat identity(const Fq& field, uint32_t n) {
    FqMat m(field, n);
    for (uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static FqMat scalar(const Fq& field, uint32_t n, uint32_t lambda) {
    FqMat m(field, n);
    for (uint32_t i = 0; i < n; ++i) m.at(i, i) = lambda;
    return m;
  }

  const Fq& field() const { return f_; }
  uint32_t dim() const { return n_; }
  uint32_t& at(uint32_t r, uint32_t c) { return e_[static_cast<size_t>(r) * n_ + c]; }
  uint32_t at(uint32_t r, uint32_t c) const { return e_[static_cast<size_t>(r) * n_ + c]; }

  bool operator==(const FqMat& o) const { return n_ == o.n_ && e_ == o.e_; }
  bool operator!=(const FqMat& o) const { return !(*this == o); }

  FqMat operator*(const FqMat& o) const {
    require_compatible(o);
    FqMat r(f_, n_);
    for (uint32_t i = 0; i < n_; ++i)
      for (uint32_t k = 0; k < n_; ++k) {
        uint32_t a = at(i, k);
        if (a == 0) continue;
        for (uint32_t j = 0; j < n_; ++j)
          r.at(i, j) = f_.add(r.at(i, j), f_.mul(a, o.at(k, j)));
      }
    return r;
  }

  FqMat scale(uint32_t lambda) const {
    FqMat r = *this;
    for (auto& x : r.e_) x = f_.mul(x, lambda);
    return r;
  }

  FqMat add(const FqMat& o) const {
    require_compatible(o);
    FqMat r = *this;
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = f_.add(r.e_[i], o.e_[i]);
    return r;
  }

  FqMat transpose() const {
    FqMat r(f_, n_);
    for (uint32_t i = 0; i < n_; ++i)
      for (uint32_t j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  bool is_identity() const { return *this == identity(f_, n_); }

  std::optional<uint32_t> as_scalar() const {
    uint32_t lambda = at(0, 0);
    if (*this == scalar(f_, n_, lambda)) return lambda;
    return std::nullopt;
  }

  // Gauss-Jordan inverse; nullopt when singular.
  std::optional<FqMat> inverse() const {
    FqMat a = *this, inv = identity(f_, n_);
    for (uint32_t col = 0; col < n_; ++col) {
      uint32_t piv = col;
      while (piv < n_ && a.at(piv, col) == 0) ++piv;
      if (piv == n_) return std::nullopt;
      if (piv != col)
        for (uint32_t j = 0; j < n_; ++j) {
          std::swap(a.at(piv, j), a.at(col, j));
          std::swap(inv.at(piv, j), inv.at(col, j));
        }
      uint32_t s = f_.inv(a.at(col, col));
      for (uint32_t j = 0; j < n_; ++j) {
        a.at(col, j) = f_.mul(a.at(col, j), s);
        inv.at(col, j) = f_.mul(inv.at(col, j), s);
      }
      for (uint32_t i = 0; i < n_; ++i) {
        if (i == col || a.at(i, col) == 0) continue;
        uint32_t c = a.at(i, col);
        for (uint32_t j = 0; j < n_; ++j) {
          a.at(i, j) = f_.sub(a.at(i, j), f_.mul(c, a.at(col, j)));
          inv.at(i, j) = f_.sub(inv.at(i, j), f_.mul(c, inv.at(col, j)));
        }
      }
    }
    return inv;
  }

  FqMat pow(uint64_t e) const {
    FqMat r = identity(f_, n_), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  // Exact order check: M^n == I and M^(n/l) != I for every prime l | n.
  bool has_order_exactly(uint64_t n) const {
    if (!pow(n).is_identity()) return false;
    for (uint32_t l : gfdetail::prime_factors_u64(n))
      if (pow(n / l).is_identity()) return false;
    return true;
  }

  uint64_t order(uint64_t cap = 1 << 22) const {
    FqMat m = *this;
    for (uint64_t n = 1; n <= cap; ++n) {
      if (m.is_identity()) return n;
      m = m * *this;
    }
    throw std::runtime_error("matrix order exceeds cap");
  }

  // Kronecker product; basis e_i (x) f_j ordered with i major.
  FqMat kron(const FqMat& o) const {
    if (!f_.same_field(o.f_)) throw std::invalid_argument("kron: field mismatch");
    FqMat r(f_, n_ * o.n_);
    for (uint32_t i = 0; i < n_; ++i)
      for (uint32_t j = 0; j < n_; ++j) {
        uint32_t a = at(i, j);
        if (a == 0) continue;
        for (uint32_t s = 0; s < o.n_; ++s)
          for (uint32_t t = 0; t < o.n_; ++t)
            r.at(i * o.n_ + s, j * o.n_ + t) = f_.mul(a, o.at(s, t));
      }
    return r;
  }

  // Entrywise Frobenius x -> x^p.
  FqMat frobenius_entrywise() const {
    FqMat r = *this;
    for (auto& x : r.e_) x = f_.frobenius(x);
    return r;
  }

  // Row action on a coordinate vector.
  std::vector<uint32_t> row_apply(const std::vector<uint32_t>& v) const {
    std::vector<uint32_t> w(n_, 0);
    for (uint32_t i = 0; i < n_; ++i) {
      if (v[i] == 0) continue;
      for (uint32_t j = 0; j < n_; ++j)
        w[j] = f_.add(w[j], f_.mul(v[i], at(i, j)));
    }
    return w;
  }

private:
  void require_compatible(const FqMat& o) const {
    if (n_ != o.n_ || !f_.same_field(o.f_))
      throw std::invalid_argument("matrix dimension or field mismatch");
  }

  Fq f_;
  uint32_t n_;
  std::vector<uint32_t> e_;
};

inline FqMat kron_lift(const FqMat& g, uint32_t m) {
  return g.kron(FqMat::identity(g.field(), m));
}

inline FqMat kron_right(uint32_t k, const FqMat& z) {
  return FqMat::identity(z.field(), k).kron(z);
}

// Singer element: the companion matrix of the primitive modulus of GF(p^a),
// of exact multiplicative order p^a - 1 in GL(a, p).
inline FqMat singer_matrix(uint32_t p, uint32_t a) {
  Fq big = Fq::make(p, a);
  Fq base = Fq::make(p, 1);
  FqMat t(base, a);
  const auto& mod = big.modulus();
  for (uint32_t j = 0; j + 1 < a; ++j) t.at(j, j + 1) = 1;
  for (uint32_t j = 0; j < a; ++j) t.at(a - 1, j) = (p - mod[j]) % p;
  uint64_t n = big.q() - 1;
  if (n > 0 && !t.has_order_exactly(n))
    throw std::logic_error("singer_matrix: order check failed");
  return t;
}

// The matrix of x -> x^p on GF(p^a) in the power basis of the modulus root:
// order a, and conjugation sends the Singer element t to t^p.
inline FqMat frobenius_matrix(uint32_t p, uint32_t a) {
  Fq big = Fq::make(p, a);
  Fq base = Fq::make(p, 1);
  FqMat s(base, a);
  for (uint32_t j = 0; j < a; ++j) {
    uint32_t img = big.pow(big.primitive_element(), static_cast<uint64_t>(j) * p);
    auto c = big.coeffs(img);
    for (uint32_t i = 0; i < a; ++i) s.at(j, i) = c[i];
  }
  if (a > 1 && !s.has_order_exactly(a))
    throw std::logic_error("frobenius_matrix: order check failed");
  return s;
}

// Extension-tower Singer and Frobenius: elements of GL(m, q) of orders
// q^m - 1 and m with t^s = t^q, built from a primitive degree-m modulus
// over GF(q).
struct TowerPair {
  FqMat t, s;
  std::vector<uint32_t> modulus;  // over the base field
};

inline TowerPair tower_singer_frobenius(const Fq& base, uint32_t m) {
  auto f = gfpoly::find_primitive_modulus(base, m);
  FqMat t(base, m);
  for (uint32_t j = 0; j + 1 < m; ++j) t.at(j, j + 1) = 1;
  for (uint32_t j = 0; j < m; ++j) t.at(m - 1, j) = base.neg(f[j]);
  FqMat s(base, m);
  // row j of s = coordinates of (x^j)^q mod f
  std::vector<uint32_t> x(m, 0);
  if (m == 1) {
    x[0] = base.neg(f[0]);
  } else {
    x[1] = 1;
  }
  for (uint32_t j = 0; j < m; ++j) {
    auto xj = gfpoly::powmod(base, x, static_cast<uint64_t>(j) * base.q(), f);
    for (uint32_t i = 0; i < m; ++i) s.at(j, i) = xj[i];
  }
  uint64_t qm = 1;
  for (uint32_t i = 0; i < m; ++i) qm *= base.q();
  if (!t.has_order_exactly(qm - 1))
    throw std::logic_error("tower singer: order check failed");
  auto sinv = s.inverse();
  if (!sinv || sinv->operator*(t) * s != t.pow(base.q()))
    throw std::logic_error("tower frobenius: t^s != t^q");
  return {t, s, f};
}

// GL(k, p^m) -> GL(k*m, p): replace each entry by the m x m matrix of
// multiplication by it in the power basis. Multiplicative and
// order-preserving. blowup_frobenius provides the matrix of coordinatewise
// x -> x^p, which conjugates blown-up matrices to their entrywise-Frobenius
// images.
inline FqMat blowup_embedding(const FqMat& m) {
  const Fq& F = m.field();
  uint32_t k = F.k(), n = m.dim();
  Fq prime = Fq::make(F.p(), 1);
  FqMat big(prime, n * k);
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) {
      uint32_t e = m.at(i, j);
      if (e == 0) continue;
      for (uint32_t r = 0; r < k; ++r) {
        uint32_t prod = F.mul(F.pow(F.primitive_element(), r), e);
        auto c = F.coeffs(prod);
        for (uint32_t s = 0; s < k; ++s) big.at(i * k + r, j * k + s) = c[s];
      }
    }
  return big;
}

inline FqMat blowup_frobenius(const Fq& F, uint32_t n) {
  FqMat f = frobenius_matrix(F.p(), F.k());
  return FqMat::identity(f.field(), n).kron(f);
}

// ---- matrix groups and their permutation actions ----

enum class VectorDomain { All, Nonzero };

struct MatrixGroup {
  Fq field;
  uint32_t dim = 0;
  std::vector<FqMat> generators;
  std::string provenance;

  MatrixGroup(Fq f, uint32_t d, std::vector<FqMat> gens, std::string prov = "")
      : field(std::move(f)), dim(d), generators(std::move(gens)),
        provenance(std::move(prov)) {
    for (const auto& g : generators)
      if (!g.inverse())
        throw std::invalid_argument("MatrixGroup: generator is singular");
  }
};

inline constexpr uint64_t kVectorDomainBudget = uint64_t(1) << 20;

// Vector index: base-q positional encoding, first coordinate most
// significant. For the nonzero domain the zero vector is dropped and
// indices shift down by one.
inline uint64_t vector_count(const Fq& f, uint32_t dim) {
  uint64_t n = 1;
  for (uint32_t i = 0; i < dim; ++i) n *= f.q();
  return n;
}

inline std::vector<uint32_t> decode_vector(const Fq& f, uint32_t dim, uint64_t idx) {
  std::vector<uint32_t> v(dim);
  for (uint32_t i = dim; i-- > 0;) {
    v[i] = static_cast<uint32_t>(idx % f.q());
    idx /= f.q();
  }
  return v;
}

inline uint64_t encode_vector(const Fq& f, const std::vector<uint32_t>& v) {
  uint64_t idx = 0;
  for (uint32_t c : v) idx = idx * f.q() + c;
  return idx;
}

inline Perm matrix_to_perm(const FqMat& m, VectorDomain domain,
                           uint64_t budget = kVectorDomainBudget) {
  const Fq& f = m.field();
  uint64_t total = vector_count(f, m.dim());
  if (total > budget) throw budget_exceeded("matrix_to_perm: domain too large");
  bool nonzero = domain == VectorDomain::Nonzero;
  uint64_t npts = nonzero ? total - 1 : total;
  std::vector<Point> img(npts);
  for (uint64_t idx = nonzero ? 1 : 0; idx < total; ++idx) {
    auto v = decode_vector(f, m.dim(), idx);
    uint64_t w = encode_vector(f, m.row_apply(v));
    img[idx - (nonzero ? 1 : 0)] = static_cast<Point>(w - (nonzero ? 1 : 0));
  }
  return Perm(std::move(img));
}

// Faithful permutation image of a matrix group on its vectors.
inline PermGroup mat_to_perm(const MatrixGroup& m, VectorDomain domain,
                             uint64_t budget = kVectorDomainBudget) {
  std::vector<Perm> gens;
  for (const auto& g : m.generators)
    gens.push_back(matrix_to_perm(g, domain, budget));
  uint64_t total = vector_count(m.field, m.dim);
  bool nonzero = domain == VectorDomain::Nonzero;
  return PermGroup::from_generators(
      static_cast<Point>(nonzero ? total - 1 : total), gens);
}

// Inverse bridge: the matrix of a permutation of the nonzero vectors that
// happens to be linear; throws when it is not.
inline FqMat perm_to_matrix(const Fq& f, uint32_t dim, const Perm& g) {
  FqMat m(f, dim);
  for (uint32_t i = 0; i < dim; ++i) {
    uint64_t ei = 1;
    for (uint32_t s = 0; s + i + 1 < dim; ++s) ei *= f.q();
    auto v = decode_vector(f, dim, uint64_t(g[static_cast<Point>(ei - 1)]) + 1);
    for (uint32_t j = 0; j < dim; ++j) m.at(i, j) = v[j];
  }
  if (matrix_to_perm(m, VectorDomain::Nonzero) != g)
    throw std::logic_error("perm_to_matrix: permutation is not linear");
  return m;
}

// Affine group V : M on all q^d vectors: translations plus the linear part.
inline PermGroup affine_group(const MatrixGroup& m,
                              uint64_t budget = kVectorDomainBudget) {
  const Fq& f = m.field;
  uint64_t total = vector_count(f, m.dim);
  if (total > budget) throw budget_exceeded("affine_group: domain too large");
  std::vector<Perm> gens;
  for (const auto& g : m.generators)
    gens.push_back(matrix_to_perm(g, VectorDomain::All, budget));
  // translations by the GF(p)-basis vectors x^j * e_i
  for (uint32_t i = 0; i < m.dim; ++i)
    for (uint32_t j = 0; j < f.k(); ++j) {
      std::vector<uint32_t> w(m.dim, 0);
      w[i] = f.pow(f.primitive_element(), j);
      std::vector<Point> img(total);
      for (uint64_t idx = 0; idx < total; ++idx) {
        auto v = decode_vector(f, m.dim, idx);
        for (uint32_t c = 0; c < m.dim; ++c) v[c] = f.add(v[c], w[c]);
        img[idx] = static_cast<Point>(encode_vector(f, v));
      }
      gens.emplace_back(std::move(img));
    }
  return PermGroup::from_generators(static_cast<Point>(total), gens);
}

// AGammaL(1, p^d) on the p^d field elements: translations, the Singer
// multiplication, and the Frobenius. Order p^d (p^d - 1) d.
inline PermGroup agammal1(uint32_t p, uint32_t d,
                          uint64_t budget = kVectorDomainBudget) {
  Fq f = Fq::make(p, d);
  if (f.q() > budget) throw budget_exceeded("agammal1: domain too large");
  uint64_t q = f.q();
  std::vector<Point> add1(q), mul(q), frob(q);
  for (uint64_t v = 0; v < q; ++v) {
    add1[v] = static_cast<Point>(f.add(static_cast<uint32_t>(v), 1));
    mul[v] = static_cast<Point>(f.mul(static_cast<uint32_t>(v), f.primitive_element()));
    frob[v] = static_cast<Point>(f.frobenius(static_cast<uint32_t>(v)));
  }
  std::vector<Perm> gens{Perm(add1), Perm(mul)};
  if (d > 1) gens.emplace_back(frob);
  return PermGroup::from_generators(static_cast<Point>(q), gens);
}

// ---- irreducibility by spinning ----

namespace detail {

// Kernel basis of the e^2 x m linear system column-built from `columns`.
inline std::vector<std::vector<uint32_t>> kernel_basis(
    const Fq& f, std::vector<std::vector<uint32_t>> cols, size_t nrows) {
  size_t m = cols.size();
  // Gaussian elimination on the transposed system: find t with sum t_s cols[s] = 0
  std::vector<size_t> pivot_of_col(m, SIZE_MAX);
  std::vector<size_t> used_rows;
  size_t rank = 0;
  std::vector<std::vector<uint32_t>> reduced = cols;
  std::vector<std::vector<uint32_t>> ops(m);  // row ops tracking: combination
  for (size_t s = 0; s < m; ++s) {
    ops[s].assign(m, 0);
    ops[s][s] = 1;
  }
  for (size_t s = 0; s < m; ++s) {
    // reduce column s by previous pivots
    for (size_t t = 0; t < s; ++t) {
      if (pivot_of_col[t] == SIZE_MAX) continue;
      uint32_t c = reduced[s][pivot_of_col[t]];
      if (c == 0) continue;
      for (size_t rr = 0; rr < nrows; ++rr)
        reduced[s][rr] = f.sub(reduced[s][rr], f.mul(c, reduced[t][rr]));
      for (size_t rr = 0; rr < m; ++rr)
        ops[s][rr] = f.sub(ops[s][rr], f.mul(c, ops[t][rr]));
    }
    size_t piv = SIZE_MAX;
    for (size_t rr = 0; rr < nrows; ++rr)
      if (reduced[s][rr] != 0) {
        piv = rr;
        break;
      }
    if (piv == SIZE_MAX) continue;  // dependent: kernel vector in ops[s]
    uint32_t inv = f.inv(reduced[s][piv]);
    for (size_t rr = 0; rr < nrows; ++rr) reduced[s][rr] = f.mul(reduced[s][rr], inv);
    for (size_t rr = 0; rr < m; ++rr) ops[s][rr] = f.mul(ops[s][rr], inv);
    pivot_of_col[s] = piv;
    ++rank;
  }
  std::vector<std::vector<uint32_t>> kernel;
  for (size_t s = 0; s < m; ++s)
    if (pivot_of_col[s] == SIZE_MAX) kernel.push_back(ops[s]);
  return kernel;
}

// Row-echelon basis over Fq supporting incremental closure under generators.
class SpinBasis {
public:
  SpinBasis(const Fq& f, uint32_t dim) : f_(f), dim_(dim) {}

  // Reduces v by the basis; inserts the residue if nonzero. Returns whether
  // the basis grew.
  bool insert(std::vector<uint32_t> v) {
    for (size_t r = 0; r < rows_.size(); ++r) {
      uint32_t c = v[pivots_[r]];
      if (c != 0)
        for (uint32_t j = 0; j < dim_; ++j)
          v[j] = f_.sub(v[j], f_.mul(c, rows_[r][j]));
    }
    uint32_t piv = dim_;
    for (uint32_t j = 0; j < dim_; ++j)
      if (v[j] != 0) {
        piv = j;
        break;
      }
    if (piv == dim_) return false;
    uint32_t s = f_.inv(v[piv]);
    for (uint32_t j = 0; j < dim_; ++j) v[j] = f_.mul(v[j], s);
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
  }

  size_t rank() const { return rows_.size(); }
  const std::vector<std::vector<uint32_t>>& rows() const { return rows_; }

private:
  const Fq& f_;
  uint32_t dim_;
  std::vector<std::vector<uint32_t>> rows_;
  std::vector<uint32_t> pivots_;
};

}  // namespace detail

struct IrreducibilityResult {
  bool irreducible;
  std::vector<std::vector<uint32_t>> witness;  // invariant subspace basis
};

// No proper nonzero invariant subspace: every 1-dimensional seed (one per
// projective point) spins to the full space.
inline IrreducibilityResult is_irreducible(const MatrixGroup& m,
                                           uint64_t budget = kVectorDomainBudget) {
  const Fq& f = m.field;
  uint64_t total = vector_count(f, m.dim);
  if (total > budget) throw budget_exceeded("is_irreducible: domain too large");
  for (uint64_t idx = 1; idx < total; ++idx) {
    auto v = decode_vector(f, m.dim, idx);
    uint32_t lead = 0;
    while (lead < m.dim && v[lead] == 0) ++lead;
    if (v[lead] != 1) continue;  // one seed per projective point
    detail::SpinBasis basis(f, m.dim);
    basis.insert(v);
    size_t head = 0;
    while (head < basis.rank() && basis.rank() < m.dim) {
      auto row = basis.rows()[head++];
      for (const auto& g : m.generators) basis.insert(g.row_apply(row));
    }
    if (basis.rank() < m.dim) return {false, basis.rows()};
  }
  return {true, {}};
}

}  // namespace cgt
