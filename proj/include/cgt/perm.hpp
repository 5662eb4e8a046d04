#pragma once

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgt {

using Point = uint32_t;

struct degree_mismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A permutation of {0..n-1}, stored as the image array.
// Composition is left-to-right throughout: alpha^(p*q) = (alpha^p)^q.
class Perm {
public:
  Perm() = default;

  explicit Perm(Point degree) : img_(degree) {
    std::iota(img_.begin(), img_.end(), Point{0});
  }

  explicit Perm(std::vector<Point> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (Point v : img_) {
      if (v >= img_.size() || seen[v])
        throw std::invalid_argument("Perm: images are not a bijection");
      seen[v] = true;
    }
  }

  // Cycle notation helper, mostly for tests: from_cycles(4, {{0,1,2}}).
  static Perm from_cycles(Point degree,
                          std::initializer_list<std::initializer_list<Point>> cycles) {
    Perm p(degree);
    for (auto& cyc : cycles) {
      if (cyc.size() < 2) continue;
      auto it = cyc.begin();
      Point first = *it, prev = *it;
      for (++it; it != cyc.end(); ++it) {
        p.img_[prev] = *it;
        prev = *it;
      }
      p.img_[prev] = first;
    }
    std::vector<bool> seen(degree, false);
    for (Point v : p.img_) {
      if (seen[v]) throw std::invalid_argument("Perm: cycles overlap");
      seen[v] = true;
    }
    return p;
  }

  Point degree() const { return static_cast<Point>(img_.size()); }
  Point operator[](Point a) const { return img_[a]; }
  const std::vector<Point>& images() const { return img_; }

  bool is_identity() const {
    for (Point i = 0; i < degree(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  // Smallest moved point, or degree() if identity.
  Point first_moved() const {
    for (Point i = 0; i < degree(); ++i)
      if (img_[i] != i) return i;
    return degree();
  }

  Perm operator*(const Perm& q) const {
    if (degree() != q.degree()) throw degree_mismatch("Perm: degree mismatch");
    Perm r;
    r.img_.resize(degree());
    for (Point i = 0; i < degree(); ++i) r.img_[i] = q.img_[img_[i]];
    return r;
  }

  Perm inverse() const {
    Perm r;
    r.img_.resize(degree());
    for (Point i = 0; i < degree(); ++i) r.img_[img_[i]] = i;
    return r;
  }

  Perm conjugate_by(const Perm& g) const {  // g^-1 * this * g
    return g.inverse() * (*this * g);
  }

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator!=(const Perm& o) const { return img_ != o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }

  // Element order as lcm of cycle lengths; guarded against u64 overflow,
  // which cannot occur on the degrees this library enumerates.
  uint64_t order() const {
    std::vector<bool> seen(degree(), false);
    uint64_t ord = 1;
    for (Point i = 0; i < degree(); ++i) {
      if (seen[i]) continue;
      uint64_t len = 0;
      for (Point j = i; !seen[j]; j = img_[j]) {
        seen[j] = true;
        ++len;
      }
      uint64_t g = std::gcd(ord, len);
      if (ord / g > UINT64_MAX / len)
        throw std::overflow_error("Perm::order: overflow");
      ord = ord / g * len;
    }
    return ord;
  }

  Perm power(uint64_t e) const {
    Perm r(degree()), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  std::string to_cycle_string() const {
    std::string s;
    std::vector<bool> seen(degree(), false);
    for (Point i = 0; i < degree(); ++i) {
      if (seen[i] || img_[i] == i) {
        seen[i] = true;
        continue;
      }
      s += '(';
      for (Point j = i; !seen[j]; j = img_[j]) {
        seen[j] = true;
        if (j != i) s += ' ';
        s += std::to_string(j);
      }
      s += ')';
    }
    return s.empty() ? "()" : s;
  }

private:
  std::vector<Point> img_;
};

}  // namespace cgt
