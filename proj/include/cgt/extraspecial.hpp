#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cgt/classical.hpp"
#include "cgt/matrix.hpp"

namespace cgt {

// Extraspecial r-groups E of order r^(2k+1) inside GL(r^k, q), built from
// Kronecker slot pairs, together with the machinery the normalizer needs:
// the symplectic class map E/Z -> GF(r)^(2k) read off commutator characters,
// and lifts of outer isometries solved as intertwiners.
//
// Slot conventions (basis order Y_1, X_1, Y_2, X_2, ...):
//   r odd:  X = clock diag(1, w, .., w^(r-1)), Y = coordinate shift;
//   r = 2:  dihedral slot X = diag(1,-1), Y = swap;
//           quaternion slot (minus type, first slot only) X = j, Y = i.
// With this ordering the commutator form is the standard symplectic Gram
// and, for r = 2, the squaring form is the standard quadratic form of the
// matching type. Both facts are verified at construction.
struct ExtraspecialData {
  Fq field;
  uint32_t r = 2, k = 1;
  char type = 's';  // 's' unique class; '+'/'-' the two classes for r=b=2
  uint32_t e = 2;   // r^k
  uint32_t omega;   // primitive r-th root of unity in the field
  std::vector<FqMat> basis;       // 2k generators, interleaved (Y_i, X_i)
  std::vector<FqMat> basis_inv;
  Fq gfr;                         // GF(r) for class arithmetic
  FqMat gram_inv;                 // inverse of the class Gram over GF(r)

  ExtraspecialData(Fq f, Fq fr)
      : field(std::move(f)), gfr(std::move(fr)), gram_inv(gfr, 1) {}
};

struct verification_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace esdetail {

inline uint32_t dlog_root(const Fq& f, uint32_t omega, uint32_t r, uint32_t v) {
  uint32_t w = 1;
  for (uint32_t c = 0; c < r; ++c) {
    if (v == w) return c;
    w = f.mul(w, omega);
  }
  throw verification_failure("value is not a power of the r-th root");
}

// The scalar lambda with [W, B] = W^-1 B^-1 W B = lambda I.
inline uint32_t commutator_root(const ExtraspecialData& E, const FqMat& W,
                                const FqMat& Winv, size_t j) {
  FqMat c = Winv * E.basis_inv[j] * W * E.basis[j];
  auto lambda = c.as_scalar();
  if (!lambda) throw verification_failure("commutator is not scalar");
  return esdetail::dlog_root(E.field, E.omega, E.r, *lambda);
}

}  // namespace esdetail

inline ExtraspecialData make_extraspecial(uint32_t r, uint32_t k, const Fq& field,
                                          char type) {
  if (r != 2 && r != 3)
    throw std::invalid_argument("extraspecial: r must be 2 or 3");
  if (field.p() == r)
    throw std::invalid_argument("extraspecial: field characteristic equals r");
  if ((field.q() - 1) % r != 0)
    throw std::invalid_argument("extraspecial: no r-th root of unity in field");
  bool has_i = (field.q() - 1) % 4 == 0;
  if (r == 2 && !has_i && type == 's')
    throw std::invalid_argument("extraspecial: q = 3 mod 4 has two classes, pick +/-");
  if (r == 2 && has_i && type != 's')
    throw std::invalid_argument("extraspecial: 4 | q-1 has a single class 's'");
  if (r == 3 && type != 's')
    throw std::invalid_argument("extraspecial: odd r has a single class 's'");

  ExtraspecialData E(field, Fq::make(r, 1));
  E.r = r;
  E.k = k;
  E.type = type;
  E.e = 1;
  for (uint32_t i = 0; i < k; ++i) E.e *= r;
  E.omega = field.pow(field.primitive_element(), (field.q() - 1) / r);

  // slot matrices
  FqMat clock(field, r), shift(field, r);
  {
    uint32_t w = 1;
    for (uint32_t t = 0; t < r; ++t) {
      clock.at(t, t) = w;
      w = field.mul(w, E.omega);
      shift.at(t, (t + 1) % r) = 1;
    }
  }
  FqMat quat_i(field, 2), quat_j(field, 2);
  if (r == 2 && type == '-') {
    // i = [[a,b],[b,-a]] with a^2 + b^2 = -1, j = [[0,-1],[1,0]]
    bool found = false;
    for (uint32_t a = 0; a < field.q() && !found; ++a)
      for (uint32_t b = 0; b < field.q() && !found; ++b)
        if (field.add(field.mul(a, a), field.mul(b, b)) == field.neg(1)) {
          quat_i.at(0, 0) = a;
          quat_i.at(0, 1) = b;
          quat_i.at(1, 0) = b;
          quat_i.at(1, 1) = field.neg(a);
          found = true;
        }
    if (!found) throw std::logic_error("extraspecial: no quaternion embedding");
    quat_j.at(0, 1) = field.neg(1);
    quat_j.at(1, 0) = 1;
  }

  for (uint32_t slot = 0; slot < k; ++slot) {
    FqMat y(field, 1), x(field, 1);
    y.at(0, 0) = 1;
    x.at(0, 0) = 1;
    for (uint32_t i = 0; i < k; ++i) {
      const bool quat = r == 2 && type == '-' && i == 0;
      FqMat ypart = i == slot ? (quat ? quat_i : shift) : FqMat::identity(field, r);
      FqMat xpart = i == slot ? (quat ? quat_j : clock) : FqMat::identity(field, r);
      y = y.kron(ypart);
      x = x.kron(xpart);
    }
    E.basis.push_back(y);
    E.basis.push_back(x);
  }
  for (const auto& b : E.basis) E.basis_inv.push_back(*b.inverse());

  // relations: r-th powers central, commutators scalar, Gram standard
  for (const auto& b : E.basis) {
    auto s = b.pow(r).as_scalar();
    if (!s) throw std::logic_error("extraspecial: generator power not central");
    esdetail::dlog_root(field, E.omega, r, *s);  // must be a power of omega
  }
  FqMat gram(E.gfr, 2 * k);
  for (size_t i = 0; i < E.basis.size(); ++i)
    for (size_t j = 0; j < E.basis.size(); ++j)
      gram.at(static_cast<uint32_t>(i), static_cast<uint32_t>(j)) =
          esdetail::commutator_root(E, E.basis[i], E.basis_inv[i], j);
  if (gram != symplectic_gram(E.gfr, 2 * k))
    throw std::logic_error("extraspecial: commutator form is not standard");
  E.gram_inv = *gram.inverse();
  return E;
}

// Class of W in E/Z as a vector over GF(r), via commutator characters
// against the basis: nondegeneracy of the Gram makes this exact.
inline std::vector<uint32_t> extraspecial_class(const ExtraspecialData& E,
                                                const FqMat& W) {
  auto winv = W.inverse();
  if (!winv) throw std::invalid_argument("extraspecial_class: singular");
  std::vector<uint32_t> phi(2 * E.k);
  for (size_t j = 0; j < E.basis.size(); ++j)
    phi[j] = esdetail::commutator_root(E, W, *winv, j);
  // solve a * gram = phi
  std::vector<uint32_t> a(2 * E.k, 0);
  for (uint32_t i = 0; i < 2 * E.k; ++i)
    for (uint32_t j = 0; j < 2 * E.k; ++j)
      a[i] = E.gfr.add(a[i], E.gfr.mul(phi[j], E.gram_inv.at(j, i)));
  return a;
}

// Canonical monomial representative of a class.
inline FqMat extraspecial_monomial(const ExtraspecialData& E,
                                   const std::vector<uint32_t>& cls) {
  FqMat m = FqMat::identity(E.field, E.e);
  for (uint32_t j = 0; j < 2 * E.k; ++j)
    for (uint32_t c = 0; c < cls[j]; ++c) m = m * E.basis[j];
  return m;
}

// W = lambda * monomial(class): returns (class, lambda) and verifies shape.
inline std::pair<std::vector<uint32_t>, uint32_t> extraspecial_decompose(
    const ExtraspecialData& E, const FqMat& W) {
  auto cls = extraspecial_class(E, W);
  FqMat m = extraspecial_monomial(E, cls);
  FqMat q = W * *m.inverse();
  auto lambda = q.as_scalar();
  if (!lambda)
    throw verification_failure("element is not in the extraspecial frame");
  return {cls, *lambda};
}

// Squaring form on classes (r = 2): Q(cls) = 0 iff monomial(cls)^2 = I.
inline uint32_t extraspecial_square_type(const ExtraspecialData& E,
                                         const std::vector<uint32_t>& cls) {
  auto s = extraspecial_monomial(E, cls).pow(2).as_scalar();
  if (!s) throw std::logic_error("square is not scalar");
  return esdetail::dlog_root(E.field, E.omega, 2, *s);
}

// Lift of an isometry g of the class space to a matrix normalizing
// U o E: solves n B_j = lambda_j M_j n over all admissible phase patterns,
// depth-first with incremental solution spaces. Existence for isometries of
// the right type is the Stone-von-Neumann uniqueness of the irreducible
// representation with a fixed central character.
inline FqMat lift_isometry(const ExtraspecialData& E, const FqMat& g) {
  const Fq& f = E.field;
  uint32_t e = E.e;
  size_t dim2 = static_cast<size_t>(e) * e;
  // admissible phases: r-th roots, plus fourth roots when present (r = 2)
  std::vector<uint32_t> phases;
  {
    uint32_t w = 1;
    for (uint32_t c = 0; c < E.r; ++c) {
      phases.push_back(w);
      w = f.mul(w, E.omega);
    }
    if (E.r == 2 && (f.q() - 1) % 4 == 0) {
      uint32_t i4 = f.pow(f.primitive_element(), (f.q() - 1) / 4);
      phases.push_back(i4);
      phases.push_back(f.neg(i4));
    }
  }
  // target monomials per basis element
  std::vector<FqMat> targets;
  for (uint32_t j = 0; j < 2 * E.k; ++j) {
    std::vector<uint32_t> img(2 * E.k);
    for (uint32_t c = 0; c < 2 * E.k; ++c) img[c] = g.at(j, c);
    targets.push_back(extraspecial_monomial(E, img));
  }

  // solution space as flat e^2 vectors; start with the standard basis
  std::vector<std::vector<uint32_t>> space(dim2);
  for (size_t s = 0; s < dim2; ++s) {
    space[s].assign(dim2, 0);
    space[s][s] = 1;
  }

  std::function<std::optional<std::vector<uint32_t>>(
      size_t, std::vector<std::vector<uint32_t>>)>
      dfs = [&](size_t j, std::vector<std::vector<uint32_t>> span)
      -> std::optional<std::vector<uint32_t>> {
    if (j == targets.size()) {
      for (const auto& v : span) {
        FqMat n(f, e);
        for (uint32_t rr = 0; rr < e; ++rr)
          for (uint32_t cc = 0; cc < e; ++cc) n.at(rr, cc) = v[rr * e + cc];
        if (n.inverse()) return v;
      }
      return std::nullopt;
    }
    for (uint32_t lambda : phases) {
      // constraint B_j n = lambda n M_j, i.e. n^-1 B_j n = lambda M_j,
      // restricted to the current solution span
      std::vector<std::vector<uint32_t>> cols;
      cols.reserve(span.size());
      FqMat lm = targets[j].scale(f.neg(lambda));
      for (const auto& v : span) {
        FqMat n(f, e);
        for (uint32_t rr = 0; rr < e; ++rr)
          for (uint32_t cc = 0; cc < e; ++cc) n.at(rr, cc) = v[rr * e + cc];
        FqMat img = (E.basis[j] * n).add(n * lm);
        std::vector<uint32_t> flat(dim2);
        for (uint32_t rr = 0; rr < e; ++rr)
          for (uint32_t cc = 0; cc < e; ++cc) flat[rr * e + cc] = img.at(rr, cc);
        cols.push_back(std::move(flat));
      }
      auto ker = detail::kernel_basis(f, cols, dim2);
      if (ker.empty()) continue;
      std::vector<std::vector<uint32_t>> next;
      for (const auto& t : ker) {
        std::vector<uint32_t> v(dim2, 0);
        for (size_t s = 0; s < span.size(); ++s) {
          if (t[s] == 0) continue;
          for (size_t idx = 0; idx < dim2; ++idx)
            v[idx] = f.add(v[idx], f.mul(t[s], span[s][idx]));
        }
        next.push_back(std::move(v));
      }
      auto r = dfs(j + 1, std::move(next));
      if (r) return r;
    }
    return std::nullopt;
  };

  auto sol = dfs(0, std::move(space));
  if (!sol) throw verification_failure("lift_isometry: no intertwiner found");
  FqMat n(f, e);
  for (uint32_t rr = 0; rr < e; ++rr)
    for (uint32_t cc = 0; cc < e; ++cc) n.at(rr, cc) = (*sol)[rr * e + cc];
  return n;
}

// F = U o E and its normalizer N in GL(e, q), with N/F identified as
// Sp(2k, r) (when r is odd or 4 | q-1) or O^eps(2k, 2) (else, eps the class
// of E). N is generated by F plus one verified lift per classical generator.
struct ExtraspecialNormalizer {
  ExtraspecialData E;
  std::vector<FqMat> f_gens;   // scalar generator + E basis
  std::vector<FqMat> lifts;
  std::string quotient_name;
  BigUint quotient_order;
  BigUint f_order;  // (q-1) r^(2k)

  MatrixGroup fitting_group() const {
    return MatrixGroup(E.field, E.e, f_gens, "F = U o E");
  }
  MatrixGroup normalizer_group() const {
    auto gens = f_gens;
    gens.insert(gens.end(), lifts.begin(), lifts.end());
    return MatrixGroup(E.field, E.e, gens, "N = N(F), N/F = " + quotient_name);
  }
};

inline ExtraspecialNormalizer extraspecial_normalizer(const ExtraspecialData& E) {
  const Fq& f = E.field;
  ExtraspecialNormalizer out{E, {}, {}, "", BigUint(1), BigUint(1)};
  out.f_gens.push_back(FqMat::scalar(f, E.e, f.primitive_element()));
  for (const auto& b : E.basis) out.f_gens.push_back(b);
  out.f_order = BigUint(f.q() - 1).mul(BigUint(E.r).pow(2 * E.k));

  bool full_sp = E.r != 2 || (f.q() - 1) % 4 == 0;
  ClassicalGroup target =
      full_sp ? standard_symplectic_group(2 * E.k, E.r)
              : standard_orthogonal_group(2 * E.k, E.type, 2);
  out.quotient_name = target.name;
  out.quotient_order = target.order;

  for (const auto& g : target.mat_gens) {
    FqMat n = lift_isometry(E, g);
    // the lift must act on classes exactly as g does
    auto ninv = *n.inverse();
    for (uint32_t j = 0; j < 2 * E.k; ++j) {
      FqMat conj = ninv * E.basis[j] * n;
      auto [cls, lambda] = extraspecial_decompose(E, conj);
      for (uint32_t c = 0; c < 2 * E.k; ++c)
        if (cls[c] != g.at(j, c))
          throw verification_failure(
              "extraspecial_normalizer: lift acts wrongly on class " +
              std::to_string(j));
    }
    out.lifts.push_back(n);
  }
  return out;
}

// Spec-level convenience: the extraspecial group itself as a MatrixGroup.
inline MatrixGroup extraspecial_group(uint32_t r, uint32_t k, const Fq& field,
                                      char type = 0) {
  if (type == 0) {
    bool has_i = (field.q() - 1) % 4 == 0;
    type = (r != 2 || has_i) ? 's' : '-';
  }
  auto E = make_extraspecial(r, k, field, type);
  return MatrixGroup(field, E.e, E.basis,
                     "extraspecial r^(2k+1), r=" + std::to_string(r) +
                         " k=" + std::to_string(k) + " type=" + type);
}

// The class representatives available over this field.
inline std::vector<char> extraspecial_classes(uint32_t r, const Fq& field) {
  if (r != 2 || (field.q() - 1) % 4 == 0) return {'s'};
  return {'+', '-'};
}

}  // namespace cgt
