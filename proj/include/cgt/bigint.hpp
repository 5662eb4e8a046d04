#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgt {

// Unsigned arbitrary-precision integer, base 2^32 limbs, little-endian.
// Group orders (wreath/product constructions) overflow 64 bits quickly,
// so all orders in this library are BigUint.
class BigUint {
public:
  BigUint() : limbs_{0} {}

  BigUint(uint64_t v) {
    limbs_.push_back(static_cast<uint32_t>(v));
    if (v >> 32) limbs_.push_back(static_cast<uint32_t>(v >> 32));
    trim();
  }

  static BigUint from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("BigUint: empty string");
    BigUint r(0);
    for (char c : s) {
      if (c < '0' || c > '9') throw std::invalid_argument("BigUint: bad digit");
      r = r.mul_small(10);
      r = r.add(BigUint(static_cast<uint64_t>(c - '0')));
    }
    return r;
  }

  bool is_zero() const { return limbs_.size() == 1 && limbs_[0] == 0; }
  bool is_one() const { return limbs_.size() == 1 && limbs_[0] == 1; }
  bool is_odd() const { return limbs_[0] & 1u; }

  bool fits_u64() const { return limbs_.size() <= 2; }

  uint64_t to_u64() const {
    if (!fits_u64()) throw std::overflow_error("BigUint: does not fit u64");
    uint64_t v = limbs_[0];
    if (limbs_.size() == 2) v |= static_cast<uint64_t>(limbs_[1]) << 32;
    return v;
  }

  int compare(const BigUint& o) const {
    if (limbs_.size() != o.limbs_.size())
      return limbs_.size() < o.limbs_.size() ? -1 : 1;
    for (size_t i = limbs_.size(); i-- > 0;)
      if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
    return 0;
  }

  bool operator==(const BigUint& o) const { return compare(o) == 0; }
  bool operator!=(const BigUint& o) const { return compare(o) != 0; }
  bool operator<(const BigUint& o) const { return compare(o) < 0; }
  bool operator<=(const BigUint& o) const { return compare(o) <= 0; }
  bool operator>(const BigUint& o) const { return compare(o) > 0; }
  bool operator>=(const BigUint& o) const { return compare(o) >= 0; }

  BigUint add(const BigUint& o) const {
    BigUint r;
    r.limbs_.assign(std::max(limbs_.size(), o.limbs_.size()) + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < r.limbs_.size(); ++i) {
      uint64_t s = carry;
      if (i < limbs_.size()) s += limbs_[i];
      if (i < o.limbs_.size()) s += o.limbs_[i];
      r.limbs_[i] = static_cast<uint32_t>(s);
      carry = s >> 32;
    }
    r.trim();
    return r;
  }

  // Requires *this >= o.
  BigUint sub(const BigUint& o) const {
    if (compare(o) < 0) throw std::invalid_argument("BigUint::sub: negative");
    BigUint r;
    r.limbs_.assign(limbs_.size(), 0);
    int64_t borrow = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
      int64_t s = static_cast<int64_t>(limbs_[i]) - borrow -
                  (i < o.limbs_.size() ? o.limbs_[i] : 0);
      borrow = 0;
      if (s < 0) {
        s += (int64_t(1) << 32);
        borrow = 1;
      }
      r.limbs_[i] = static_cast<uint32_t>(s);
    }
    r.trim();
    return r;
  }

  BigUint mul_small(uint32_t m) const {
    BigUint r;
    r.limbs_.assign(limbs_.size() + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
      uint64_t s = static_cast<uint64_t>(limbs_[i]) * m + carry;
      r.limbs_[i] = static_cast<uint32_t>(s);
      carry = s >> 32;
    }
    r.limbs_[limbs_.size()] = static_cast<uint32_t>(carry);
    r.trim();
    return r;
  }

  BigUint mul(const BigUint& o) const {
    BigUint r;
    r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
    for (size_t i = 0; i < limbs_.size(); ++i) {
      uint64_t carry = 0;
      for (size_t j = 0; j < o.limbs_.size(); ++j) {
        uint64_t s = static_cast<uint64_t>(limbs_[i]) * o.limbs_[j] +
                     r.limbs_[i + j] + carry;
        r.limbs_[i + j] = static_cast<uint32_t>(s);
        carry = s >> 32;
      }
      r.limbs_[i + o.limbs_.size()] += static_cast<uint32_t>(carry);
    }
    r.trim();
    return r;
  }

  BigUint operator*(const BigUint& o) const { return mul(o); }
  BigUint operator+(const BigUint& o) const { return add(o); }

  // Quotient and remainder by a 32-bit divisor.
  std::pair<BigUint, uint32_t> divmod_small(uint32_t div) const {
    if (div == 0) throw std::invalid_argument("BigUint: division by zero");
    BigUint q;
    q.limbs_.assign(limbs_.size(), 0);
    uint64_t rem = 0;
    for (size_t i = limbs_.size(); i-- > 0;) {
      uint64_t cur = (rem << 32) | limbs_[i];
      q.limbs_[i] = static_cast<uint32_t>(cur / div);
      rem = cur % div;
    }
    q.trim();
    return {q, static_cast<uint32_t>(rem)};
  }

  // Schoolbook long division.
  std::pair<BigUint, BigUint> divmod(const BigUint& div) const {
    if (div.is_zero()) throw std::invalid_argument("BigUint: division by zero");
    if (div.limbs_.size() == 1) {
      auto [q, r] = divmod_small(div.limbs_[0]);
      return {q, BigUint(r)};
    }
    if (compare(div) < 0) return {BigUint(0), *this};

    // Normalize so the top limb of the divisor has its high bit set.
    int shift = 0;
    for (uint32_t top = div.limbs_.back(); !(top & 0x80000000u); top <<= 1) ++shift;
    BigUint u = shl_bits(shift), v = div.shl_bits(shift);
    size_t n = v.limbs_.size(), m = u.limbs_.size() - n;
    u.limbs_.push_back(0);

    BigUint q;
    q.limbs_.assign(m + 1, 0);
    for (size_t j = m + 1; j-- > 0;) {
      uint64_t num = (static_cast<uint64_t>(u.limbs_[j + n]) << 32) | u.limbs_[j + n - 1];
      uint64_t qhat = num / v.limbs_.back();
      uint64_t rhat = num % v.limbs_.back();
      while (qhat >= (uint64_t(1) << 32) ||
             (n >= 2 && qhat * v.limbs_[n - 2] >
                            ((rhat << 32) | u.limbs_[j + n - 2]))) {
        --qhat;
        rhat += v.limbs_.back();
        if (rhat >= (uint64_t(1) << 32)) break;
      }
      // Multiply-subtract, correcting qhat if it was one too large.
      int64_t borrow = 0;
      uint64_t carry = 0;
      for (size_t i = 0; i < n; ++i) {
        uint64_t prod = qhat * v.limbs_[i] + carry;
        carry = prod >> 32;
        int64_t t = static_cast<int64_t>(u.limbs_[i + j]) - borrow -
                    static_cast<int64_t>(prod & 0xffffffffu);
        borrow = 0;
        if (t < 0) {
          t += (int64_t(1) << 32);
          borrow = 1;
        }
        u.limbs_[i + j] = static_cast<uint32_t>(t);
      }
      int64_t t = static_cast<int64_t>(u.limbs_[j + n]) - borrow -
                  static_cast<int64_t>(carry);
      if (t < 0) {
        t += (int64_t(1) << 32);
        --qhat;
        uint64_t c2 = 0;
        for (size_t i = 0; i < n; ++i) {
          uint64_t s = static_cast<uint64_t>(u.limbs_[i + j]) + v.limbs_[i] + c2;
          u.limbs_[i + j] = static_cast<uint32_t>(s);
          c2 = s >> 32;
        }
        t += static_cast<int64_t>(c2);
      }
      u.limbs_[j + n] = static_cast<uint32_t>(t);
      q.limbs_[j] = static_cast<uint32_t>(qhat);
    }
    q.trim();
    u.trim();
    return {q, u.shr_bits(shift)};
  }

  BigUint operator/(const BigUint& o) const { return divmod(o).first; }
  BigUint operator%(const BigUint& o) const { return divmod(o).second; }

  bool divisible_by(uint32_t d) const { return divmod_small(d).second == 0; }

  BigUint pow(uint64_t e) const {
    BigUint r(1), b = *this;
    while (e) {
      if (e & 1) r = r.mul(b);
      b = b.mul(b);
      e >>= 1;
    }
    return r;
  }

  // Largest n with r^n dividing *this, together with r^n.
  std::pair<uint32_t, BigUint> valuation(uint32_t r) const {
    uint32_t n = 0;
    BigUint cur = *this, part(1);
    while (!cur.is_zero()) {
      auto [q, rem] = cur.divmod_small(r);
      if (rem != 0) break;
      cur = q;
      part = part.mul_small(r);
      ++n;
    }
    return {n, part};
  }

  bool is_power_of(uint32_t r) const {
    BigUint cur = *this;
    if (cur.is_zero()) return false;
    while (!cur.is_one()) {
      auto [q, rem] = cur.divmod_small(r);
      if (rem != 0) return false;
      cur = q;
    }
    return true;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    BigUint cur = *this;
    while (!cur.is_zero()) {
      auto [q, r] = cur.divmod_small(1000000000u);
      cur = q;
      std::string chunk = std::to_string(r);
      if (!cur.is_zero()) chunk = std::string(9 - chunk.size(), '0') + chunk;
      s = chunk + s;
    }
    return s;
  }

private:
  void trim() {
    while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
  }

  BigUint shl_bits(int b) const {
    if (b == 0) return *this;
    BigUint r;
    r.limbs_.assign(limbs_.size() + 1, 0);
    for (size_t i = 0; i < limbs_.size(); ++i) {
      r.limbs_[i] |= limbs_[i] << b;
      r.limbs_[i + 1] = limbs_[i] >> (32 - b);
    }
    r.trim();
    return r;
  }

  BigUint shr_bits(int b) const {
    if (b == 0) return *this;
    BigUint r;
    r.limbs_.assign(limbs_.size(), 0);
    for (size_t i = 0; i < limbs_.size(); ++i) {
      r.limbs_[i] = limbs_[i] >> b;
      if (i + 1 < limbs_.size()) r.limbs_[i] |= limbs_[i + 1] << (32 - b);
    }
    r.trim();
    return r;
  }

  std::vector<uint32_t> limbs_;
};

}  // namespace cgt
