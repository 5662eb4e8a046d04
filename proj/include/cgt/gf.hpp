#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgt {

namespace gfdetail {

inline bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<uint32_t> prime_factors_u64(uint64_t n) {
  std::vector<uint32_t> out;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(static_cast<uint32_t>(d));
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(static_cast<uint32_t>(n));
  return out;
}

}  // namespace gfdetail

// GF(p^k) with a deterministic modulus: the lexicographically least monic
// irreducible degree-k polynomial over GF(p) whose companion element is
// primitive (polynomials ordered by their coefficient value sum c_i p^i).
// Elements are encoded as uint32_t codes sum c_i p^i, c_i the coefficients
// in the power basis of the modulus root. Immutable and cheap to copy.
class Fq {
public:
  static constexpr uint64_t kMaxOrder = uint64_t(1) << 20;

  static Fq make(uint32_t p, uint32_t k) {
    if (!gfdetail::is_prime_u32(p))
      throw std::invalid_argument("field_make: " + std::to_string(p) + " is not prime");
    if (k < 1) throw std::invalid_argument("field_make: extension degree must be >= 1");
    uint64_t q = 1;
    for (uint32_t i = 0; i < k; ++i) {
      q *= p;
      if (q > kMaxOrder) throw std::invalid_argument("field_make: p^k exceeds 2^20");
    }
    return Fq(std::make_shared<const Data>(p, k, q));
  }

  uint32_t p() const { return d_->p; }
  uint32_t k() const { return d_->k; }
  uint64_t q() const { return d_->q; }
  const std::vector<uint32_t>& modulus() const { return d_->modulus; }
  uint32_t zero() const { return 0; }
  uint32_t one() const { return 1; }

  // The companion root of the modulus; has multiplicative order q-1.
  uint32_t primitive_element() const { return d_->primitive; }

  bool same_field(const Fq& o) const { return d_->p == o.d_->p && d_->k == o.d_->k; }

  uint32_t add(uint32_t a, uint32_t b) const {
    uint32_t r = 0, pw = 1;
    for (uint32_t i = 0; i < d_->k; ++i) {
      r += (a % d_->p + b % d_->p) % d_->p * pw;
      a /= d_->p;
      b /= d_->p;
      pw *= d_->p;
    }
    return r;
  }

  uint32_t neg(uint32_t a) const {
    uint32_t r = 0, pw = 1;
    for (uint32_t i = 0; i < d_->k; ++i) {
      r += (d_->p - a % d_->p) % d_->p * pw;
      a /= d_->p;
      pw *= d_->p;
    }
    return r;
  }

  uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

  uint32_t mul(uint32_t a, uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (!d_->log.empty()) {
      uint64_t e = uint64_t(d_->log[a]) + d_->log[b];
      return d_->exp[e % (d_->q - 1)];
    }
    return d_->mul_poly(a, b);
  }

  uint32_t inv(uint32_t a) const {
    if (a == 0) throw std::domain_error("Fq: inverse of zero");
    if (!d_->log.empty()) return d_->exp[(d_->q - 1 - d_->log[a]) % (d_->q - 1)];
    return pow(a, d_->q - 2);
  }

  uint32_t pow(uint32_t a, uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    if (!d_->log.empty()) {
      uint64_t le = (uint64_t)d_->log[a] % (d_->q - 1) * (e % (d_->q - 1)) % (d_->q - 1);
      return d_->exp[le];
    }
    uint32_t r = 1, b = a;
    while (e) {
      if (e & 1) r = d_->mul_poly(r, b);
      b = d_->mul_poly(b, b);
      e >>= 1;
    }
    return r;
  }

  uint32_t frobenius(uint32_t a) const { return pow(a, d_->p); }

  uint64_t element_order(uint32_t a) const {
    if (a == 0) throw std::domain_error("Fq: order of zero");
    uint64_t n = d_->q - 1, ord = n;
    for (uint32_t l : gfdetail::prime_factors_u64(n))
      while (ord % l == 0 && pow(a, ord / l) == 1) ord /= l;
    return ord;
  }

  // Coefficient vector (c_0..c_{k-1}) of an element code.
  std::vector<uint32_t> coeffs(uint32_t a) const {
    std::vector<uint32_t> c(d_->k);
    for (uint32_t i = 0; i < d_->k; ++i) {
      c[i] = a % d_->p;
      a /= d_->p;
    }
    return c;
  }

  uint32_t from_coeffs(const std::vector<uint32_t>& c) const {
    uint32_t a = 0;
    for (size_t i = c.size(); i-- > 0;) a = a * d_->p + c[i] % d_->p;
    return a;
  }

  // The prime subfield embedding of an integer.
  uint32_t scalar(uint64_t v) const { return static_cast<uint32_t>(v % d_->p); }

private:
  struct Data {
    uint32_t p, k;
    uint64_t q;
    std::vector<uint32_t> modulus;  // c_0..c_k with c_k == 1
    uint32_t primitive = 0;
    std::vector<uint32_t> exp, log;

    Data(uint32_t p_, uint32_t k_, uint64_t q_) : p(p_), k(k_), q(q_) {
      find_modulus();
      if (q <= (uint64_t(1) << 16) && q > 2) build_tables();
    }

    // polynomial multiplication mod the modulus, codes in base p
    uint32_t mul_poly(uint32_t a, uint32_t b) const {
      std::vector<uint32_t> ca(k), cb(k), prod(2 * k - 1, 0);
      uint32_t ta = a, tb = b;
      for (uint32_t i = 0; i < k; ++i) {
        ca[i] = ta % p;
        ta /= p;
        cb[i] = tb % p;
        tb /= p;
      }
      for (uint32_t i = 0; i < k; ++i) {
        if (ca[i] == 0) continue;
        for (uint32_t j = 0; j < k; ++j)
          prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
      }
      for (uint32_t i = 2 * k - 2; i >= k && i < 2 * k; --i) {
        uint32_t c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (uint32_t j = 0; j < k; ++j)
          prod[i - k + j] = (prod[i - k + j] + c * (p - modulus[j]) % p) % p;
      }
      uint32_t r = 0;
      for (uint32_t i = k; i-- > 0;) r = r * p + prod[i];
      return r;
    }

    bool is_irreducible(const std::vector<uint32_t>& f) const {
      // trial division by all monic polynomials of degree <= k/2
      uint32_t deg = k;
      for (uint32_t dd = 1; 2 * dd <= deg; ++dd) {
        uint64_t count = 1;
        for (uint32_t i = 0; i < dd; ++i) count *= p;
        for (uint64_t code = 0; code < count; ++code) {
          std::vector<uint32_t> g(dd + 1);
          uint64_t c = code;
          for (uint32_t i = 0; i < dd; ++i) {
            g[i] = c % p;
            c /= p;
          }
          g[dd] = 1;
          // remainder of f mod g
          std::vector<uint32_t> r = f;
          for (uint32_t i = deg; i + 1 >= dd + 1 && i < r.size(); --i) {
            if (i < dd) break;
            uint32_t lead = r[i];
            if (lead == 0) continue;
            for (uint32_t j = 0; j <= dd; ++j)
              r[i - dd + j] = (r[i - dd + j] + lead * (p - g[j]) % p) % p;
          }
          bool zero = true;
          for (uint32_t i = 0; i < dd; ++i) zero &= r[i] == 0;
          if (zero) return false;
        }
      }
      return true;
    }

    void find_modulus() {
      if (k == 1) {
        // modulus x + c0 with root p - c0 a primitive root mod p
        for (uint32_t c0 = 0; c0 < p; ++c0) {
          uint32_t root = (p - c0) % p;
          if (root == 0) continue;
          if (order_mod_p(root) == p - 1) {
            modulus = {c0, 1};
            primitive = root;
            return;
          }
        }
        throw std::logic_error("no primitive root found");
      }
      uint64_t count = q;
      for (uint64_t code = 0; code < count; ++code) {
        std::vector<uint32_t> f(k + 1);
        uint64_t c = code;
        for (uint32_t i = 0; i < k; ++i) {
          f[i] = static_cast<uint32_t>(c % p);
          c /= p;
        }
        f[k] = 1;
        if (!is_irreducible(f)) continue;
        modulus = f;
        if (companion_is_primitive()) {
          primitive = p;  // the class of x
          return;
        }
      }
      throw std::logic_error("no primitive modulus found");
    }

    uint64_t order_mod_p(uint32_t a) const {
      uint64_t ord = 1, v = a;
      while (v != 1) {
        v = v * a % p;
        ++ord;
      }
      return ord;
    }

    bool companion_is_primitive() const {
      uint64_t n = q - 1;
      for (uint32_t l : gfdetail::prime_factors_u64(n)) {
        // x^(n/l) != 1
        uint32_t r = 1, b = p;  // b = code of x
        uint64_t e = n / l;
        while (e) {
          if (e & 1) r = mul_poly(r, b);
          b = mul_poly(b, b);
          e >>= 1;
        }
        if (r == 1) return false;
      }
      return true;
    }

    void build_tables() {
      exp.assign(q - 1, 0);
      log.assign(q, 0);
      uint32_t prim = k == 1 ? primitive : p;
      uint32_t v = 1;
      for (uint64_t i = 0; i < q - 1; ++i) {
        exp[i] = v;
        log[v] = static_cast<uint32_t>(i);
        v = k == 1 ? (v * prim % p) : mul_poly(v, prim);
      }
    }
  };

  explicit Fq(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  std::shared_ptr<const Data> d_;
};

// Polynomials over an arbitrary Fq, used to build extension towers
// (e.g. a Singer element of GL(m, p^b) needs a primitive degree-m
// polynomial over GF(p^b)). Coefficients are element codes, c[0] constant.
namespace gfpoly {

inline std::vector<uint32_t> mulmod(const Fq& F, std::vector<uint32_t> a,
                                    const std::vector<uint32_t>& b,
                                    const std::vector<uint32_t>& f) {
  size_t m = f.size() - 1;
  std::vector<uint32_t> prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      prod[i + j] = F.add(prod[i + j], F.mul(a[i], b[j]));
  }
  for (size_t i = prod.size(); i-- > m;) {
    uint32_t c = prod[i];
    if (c == 0) continue;
    prod[i] = 0;
    for (size_t j = 0; j < m; ++j)
      prod[i - m + j] = F.sub(prod[i - m + j], F.mul(c, f[j]));
  }
  prod.resize(m);
  return prod;
}

inline std::vector<uint32_t> powmod(const Fq& F, std::vector<uint32_t> base,
                                    uint64_t e, const std::vector<uint32_t>& f) {
  size_t m = f.size() - 1;
  std::vector<uint32_t> r(m, 0);
  r[0] = 1;
  while (e) {
    if (e & 1) r = mulmod(F, r, base, f);
    base = mulmod(F, base, base, f);
    e >>= 1;
  }
  return r;
}

inline bool is_irreducible(const Fq& F, const std::vector<uint32_t>& f) {
  // Rabin: x^(q^m) == x mod f, and x^(q^(m/l)) != x for prime divisors l of m
  size_t m = f.size() - 1;
  auto xpoly = [&]() {
    std::vector<uint32_t> x(m, 0);
    if (m == 1) {
      x[0] = F.neg(f[0]);
    } else {
      x[1] = 1;
    }
    return x;
  };
  auto frob_power = [&](uint32_t steps) {
    // x^(q^steps) mod f by repeated q-th powering
    auto r = xpoly();
    for (uint32_t s = 0; s < steps; ++s) r = powmod(F, r, F.q(), f);
    return r;
  };
  if (frob_power(static_cast<uint32_t>(m)) != xpoly()) return false;
  for (uint32_t l : gfdetail::prime_factors_u64(m))
    if (frob_power(static_cast<uint32_t>(m / l)) == xpoly()) return false;
  return true;
}

// Multiplicative order of the class of x modulo f equals q^m - 1?
inline bool companion_primitive(const Fq& F, const std::vector<uint32_t>& f,
                                uint64_t qm) {
  size_t m = f.size() - 1;
  std::vector<uint32_t> x(m, 0);
  if (m == 1) {
    x[0] = F.neg(f[0]);
  } else {
    x[1] = 1;
  }
  uint64_t n = qm - 1;
  std::vector<uint32_t> one(m, 0);
  one[0] = 1;
  if (powmod(F, x, n, f) != one) return false;
  for (uint32_t l : gfdetail::prime_factors_u64(n))
    if (powmod(F, x, n / l, f) == one) return false;
  return true;
}

// Least monic irreducible degree-m polynomial over F with primitive
// companion, ordered by the coefficient codes (c_0 varying fastest).
inline std::vector<uint32_t> find_primitive_modulus(const Fq& F, uint32_t m) {
  uint64_t qm = 1;
  for (uint32_t i = 0; i < m; ++i) {
    qm *= F.q();
    if (qm > (uint64_t(1) << 40))
      throw std::invalid_argument("find_primitive_modulus: field too large");
  }
  uint64_t count = 1;
  for (uint32_t i = 0; i < m; ++i) count *= F.q();
  for (uint64_t code = 0; code < count; ++code) {
    std::vector<uint32_t> f(m + 1);
    uint64_t c = code;
    for (uint32_t i = 0; i < m; ++i) {
      f[i] = static_cast<uint32_t>(c % F.q());
      c /= F.q();
    }
    f[m] = 1;
    if (!is_irreducible(F, f)) continue;
    if (companion_primitive(F, f, qm)) return f;
  }
  throw std::logic_error("no primitive modulus over extension field");
}

}  // namespace gfpoly

}  // namespace cgt
