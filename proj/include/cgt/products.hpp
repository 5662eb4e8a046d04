#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cgt/perm_group.hpp"
#include "cgt/tuple_coloring.hpp"

namespace cgt {

// The three product actions: direct product on the disjoint union,
// imprimitive wreath product on blocks, and the wreath product in product
// action on functions. Pure constructors; all are safe to share.

// K x L acting on the disjoint union of the two domains (K first).
inline PermGroup direct_sum(const PermGroup& k, const PermGroup& l) {
  Point r = k.degree(), d = l.degree(), n = r + d;
  std::vector<Perm> gens;
  for (const auto& g : k.generators()) {
    std::vector<Point> img(n);
    for (Point i = 0; i < r; ++i) img[i] = g[i];
    for (Point i = r; i < n; ++i) img[i] = i;
    gens.emplace_back(std::move(img));
  }
  for (const auto& g : l.generators()) {
    std::vector<Point> img(n);
    for (Point i = 0; i < r; ++i) img[i] = i;
    for (Point i = 0; i < d; ++i) img[r + i] = r + g[i];
    gens.emplace_back(std::move(img));
  }
  return PermGroup::from_generators(n, gens);
}

// K wr L in imprimitive action: degree r*d, point (block delta, position
// gamma) has index delta*r + gamma. Generated by K acting in block 0 and by
// L permuting the blocks.
inline PermGroup wreath_imprimitive(const PermGroup& k, const PermGroup& l) {
  Point r = k.degree(), d = l.degree(), n = r * d;
  std::vector<Perm> gens;
  for (const auto& g : k.generators()) {
    std::vector<Point> img(n);
    for (Point i = 0; i < n; ++i) img[i] = i;
    for (Point i = 0; i < r; ++i) img[i] = g[i];
    gens.emplace_back(std::move(img));
  }
  for (const auto& g : l.generators()) {
    std::vector<Point> img(n);
    for (Point delta = 0; delta < d; ++delta)
      for (Point gamma = 0; gamma < r; ++gamma)
        img[delta * r + gamma] = g[delta] * r + gamma;
    gens.emplace_back(std::move(img));
  }
  return PermGroup::from_generators(n, gens);
}

struct product_action_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// K up L, the wreath product in product action: points are the functions
// from L's domain to K's domain, i.e. tuples (g_1..g_d), indexed row-major
// by sum g_i * r^(d-i-1). Requires K primitive and nonregular, L transitive
// and nontrivial, which makes the result primitive; each precondition
// violation is a hard error naming the failed criterion.
inline PermGroup wreath_product_action(const PermGroup& k, const PermGroup& l) {
  Point r = k.degree(), d = l.degree();
  if (!k.is_transitive() || !k.is_primitive())
    throw product_action_error("product action: K is not primitive");
  if (k.order() == BigUint(r))
    throw product_action_error("product action: K is regular");
  if (!l.is_transitive())
    throw product_action_error("product action: L is not transitive");
  if (l.order().is_one())
    throw product_action_error("product action: L is trivial");

  uint64_t n = 1;
  for (Point i = 0; i < d; ++i) {
    n *= r;
    if (n > (uint64_t(1) << 27))
      throw budget_exceeded("product action: degree r^d too large");
  }
  std::vector<uint64_t> pw(d);
  {
    uint64_t p = 1;
    for (Point i = d; i-- > 0;) {
      pw[i] = p;
      p *= r;
    }
  }
  std::vector<Perm> gens;
  for (const auto& g : k.generators()) {  // K acting in coordinate 0
    std::vector<Point> img(n);
    for (uint64_t t = 0; t < n; ++t) {
      Point g0 = static_cast<Point>(t / pw[0]);
      img[t] = static_cast<Point>(t - uint64_t(g0) * pw[0] + uint64_t(g[g0]) * pw[0]);
    }
    gens.emplace_back(std::move(img));
  }
  std::vector<Point> digits(d);
  for (const auto& g : l.generators()) {  // L permuting coordinates
    Perm ginv = g.inverse();
    std::vector<Point> img(n);
    for (uint64_t t = 0; t < n; ++t) {
      uint64_t rest = t;
      for (Point i = 0; i < d; ++i) {
        digits[i] = static_cast<Point>(rest / pw[i]);
        rest %= pw[i];
      }
      uint64_t s = 0;
      for (Point i = 0; i < d; ++i) s += uint64_t(digits[ginv[i]]) * pw[i];
      img[t] = static_cast<Point>(s);
    }
    gens.emplace_back(std::move(img));
  }
  PermGroup res = PermGroup::from_generators(static_cast<Point>(n), gens);
  if (!res.is_primitive())
    throw std::logic_error("product action: result failed primitivity check");
  return res;
}

// Wreath orders: |K wr L| = |K up L| = |K|^d * |L|.
inline BigUint wreath_order(const PermGroup& k, const PermGroup& l) {
  return k.order().pow(l.degree()).mul(l.order());
}

}  // namespace cgt
