#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cgt/bigint.hpp"
#include "cgt/perm.hpp"

namespace cgt {

inline constexpr uint64_t kEnumThreshold = 5'000'000;

struct enumeration_limit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct budget_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Permutation group given by generators, backed by a stabilizer chain
// (base, strong generators, Schreier trees). Construction is deterministic:
// base points are always the smallest moved points of sifted residues, and
// orbits are grown breadth-first in generator order, so orders, bases and
// element enumeration order are reproducible across runs.
//
// Immutable after construction; safe to share across threads.
class PermGroup {
public:
  PermGroup() : degree_(0), order_(1) {}

  static PermGroup trivial(Point degree) {
    PermGroup g;
    g.degree_ = degree;
    return g;
  }

  static PermGroup from_generators(Point degree, std::vector<Perm> gens) {
    PermGroup g;
    g.degree_ = degree;
    for (auto& p : gens) {
      if (p.degree() != degree)
        throw degree_mismatch("PermGroup: generator degree mismatch");
      if (!p.is_identity()) g.gens_.push_back(p);
    }
    g.build_chain();
    return g;
  }

  static PermGroup symmetric(Point n) {
    std::vector<Perm> gens;
    if (n >= 2) gens.push_back(Perm::from_cycles(n, {{0, 1}}));
    if (n >= 3) {
      std::vector<Point> img(n);
      for (Point i = 0; i < n; ++i) img[i] = (i + 1) % n;
      gens.push_back(Perm(img));
    }
    return from_generators(n, gens);
  }

  static PermGroup alternating(Point n) {
    std::vector<Perm> gens;
    if (n >= 3) gens.push_back(Perm::from_cycles(n, {{0, 1, 2}}));
    if (n >= 4) {
      std::vector<Point> img(n);
      for (Point i = 0; i < n; ++i) img[i] = i;
      if (n % 2 == 1) {
        for (Point i = 0; i < n; ++i) img[i] = (i + 1) % n;
      } else {
        img[0] = 0;
        for (Point i = 1; i < n; ++i) img[i] = (i % (n - 1)) + 1;
      }
      gens.push_back(Perm(img));
    }
    return from_generators(n, gens);
  }

  static PermGroup cyclic(Point n) {
    std::vector<Point> img(n);
    for (Point i = 0; i < n; ++i) img[i] = (i + 1) % n;
    return from_generators(n, {Perm(img)});
  }

  Point degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const BigUint& order() const { return order_; }
  bool is_trivial() const { return order_.is_one(); }

  bool contains(const Perm& p) const {
    if (p.degree() != degree_) throw degree_mismatch("contains: degree mismatch");
    Perm res = p;
    size_t l = sift(res, 0);
    return l == levels_.size() && res.is_identity();
  }

  bool is_subgroup_of(const PermGroup& h) const {
    for (const auto& g : gens_)
      if (!h.contains(g)) return false;
    return true;
  }

  bool same_group_as(const PermGroup& h) const {
    return order_ == h.order_ && is_subgroup_of(h);
  }

  // ---- orbits ----

  std::vector<Point> orbit(Point a) const {
    check_point(a);
    std::vector<Point> orb{a};
    std::vector<bool> seen(degree_, false);
    seen[a] = true;
    for (size_t i = 0; i < orb.size(); ++i)
      for (const auto& g : gens_) {
        Point w = g[orb[i]];
        if (!seen[w]) {
          seen[w] = true;
          orb.push_back(w);
        }
      }
    return orb;
  }

  std::vector<std::vector<Point>> orbits() const {
    std::vector<std::vector<Point>> out;
    std::vector<bool> seen(degree_, false);
    for (Point a = 0; a < degree_; ++a) {
      if (seen[a]) continue;
      auto orb = orbit(a);
      for (Point w : orb) seen[w] = true;
      out.push_back(std::move(orb));
    }
    return out;
  }

  bool is_transitive() const {
    if (degree_ == 0) return true;
    return orbit(0).size() == degree_;
  }

  // Orbit of a together with the point stabilizer G_a, generated by the
  // Schreier generators of the orbit and then reduced to a small set.
  // Transversal elements are rebuilt from the Schreier tree on demand, so
  // memory stays linear in the degree.
  std::pair<std::vector<Point>, PermGroup> orbit_and_stabilizer(Point a) const {
    check_point(a);
    std::vector<Point> orb{a};
    std::vector<int64_t> pos(degree_, -1);
    std::vector<Point> parent(degree_, 0);
    std::vector<uint32_t> via(degree_, 0);
    pos[a] = 0;
    for (size_t i = 0; i < orb.size(); ++i)
      for (uint32_t gi = 0; gi < gens_.size(); ++gi) {
        Point w = gens_[gi][orb[i]];
        if (pos[w] < 0) {
          pos[w] = static_cast<int64_t>(orb.size());
          parent[w] = orb[i];
          via[w] = gi;
          orb.push_back(w);
        }
      }
    auto rep = [&](Point w) {
      std::vector<uint32_t> path;
      for (Point x = w; x != a; x = parent[x]) path.push_back(via[x]);
      Perm r(degree_);
      for (size_t i = path.size(); i-- > 0;) r = r * gens_[path[i]];
      return r;
    };
    PermGroup stab = trivial(degree_);
    for (size_t i = 0; i < orb.size(); ++i) {
      Perm ri = rep(orb[i]);
      for (const auto& g : gens_) {
        Perm s = ri * g * rep(g[orb[i]]).inverse();
        if (!s.is_identity() && !stab.contains(s)) {
          auto gens = stab.gens_;
          gens.push_back(s);
          stab = from_generators(degree_, gens);
        }
      }
    }
    return {orb, stab};
  }

  PermGroup stabilizer(Point a) const { return orbit_and_stabilizer(a).second; }

  // ---- structural predicates ----

  PermGroup derived_subgroup() const {
    PermGroup d = trivial(degree_);
    auto add = [&](const Perm& p) {
      if (!p.is_identity() && !d.contains(p)) {
        auto gens = d.gens_;
        gens.push_back(p);
        d = from_generators(degree_, gens);
        return true;
      }
      return false;
    };
    for (size_t i = 0; i < gens_.size(); ++i)
      for (size_t j = i + 1; j < gens_.size(); ++j)
        add(gens_[i].inverse() * gens_[j].inverse() * gens_[i] * gens_[j]);
    // normal closure under the whole group
    bool grew = true;
    while (grew) {
      grew = false;
      for (size_t i = 0; i < d.gens_.size() && !grew; ++i)
        for (const auto& g : gens_) {
          if (add(d.gens_[i].conjugate_by(g))) {
            grew = true;
            break;
          }
        }
    }
    return d;
  }

  // True iff the derived series reaches the trivial group; the series
  // length is reported through `length` when provided.
  bool is_solvable(int* length = nullptr) const {
    PermGroup cur = *this;
    int len = 0;
    while (!cur.is_trivial()) {
      PermGroup next = cur.derived_subgroup();
      if (next.order_ == cur.order_) {
        if (length) *length = -1;
        return false;
      }
      cur = std::move(next);
      ++len;
    }
    if (length) *length = len;
    return true;
  }

  struct BlockSystem {
    std::vector<std::vector<Point>> blocks;  // nontrivial G-congruence classes
  };

  // Minimal block system with a and b in one block (Atkinson's algorithm).
  std::vector<Point> min_block_classes(Point a, Point b) const {
    std::vector<Point> parent(degree_);
    for (Point i = 0; i < degree_; ++i) parent[i] = i;
    std::function<Point(Point)> find = [&](Point x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    };
    std::vector<std::pair<Point, Point>> queue;
    auto fuse = [&](Point u, Point v) {
      Point ru = find(u), rv = find(v);
      if (ru == rv) return;
      if (ru > rv) std::swap(ru, rv);
      parent[rv] = ru;
      queue.emplace_back(ru, rv);
    };
    fuse(a, b);
    for (size_t i = 0; i < queue.size(); ++i) {
      auto [x, y] = queue[i];
      for (const auto& g : gens_) fuse(g[x], g[y]);
    }
    std::vector<Point> cls(degree_);
    for (Point i = 0; i < degree_; ++i) cls[i] = find(i);
    return cls;
  }

  // Primitivity via minimal block systems; requires transitivity.
  // If imprimitive, the witness receives a nontrivial block system.
  bool is_primitive(BlockSystem* witness = nullptr) const {
    if (!is_transitive())
      throw std::invalid_argument("is_primitive: group is not transitive");
    if (degree_ <= 2) return true;
    for (Point b = 1; b < degree_; ++b) {
      auto cls = min_block_classes(0, b);
      size_t size0 = 0;
      for (Point i = 0; i < degree_; ++i)
        if (cls[i] == cls[0]) ++size0;
      if (size0 < degree_) {  // size0 > 1 by construction
        if (witness) {
          std::vector<std::vector<Point>> blocks;
          std::vector<int64_t> which(degree_, -1);
          for (Point i = 0; i < degree_; ++i) {
            if (which[cls[i]] < 0) {
              which[cls[i]] = static_cast<int64_t>(blocks.size());
              blocks.emplace_back();
            }
            blocks[which[cls[i]]].push_back(i);
          }
          witness->blocks = std::move(blocks);
        }
        return false;
      }
    }
    return true;
  }

  // Action induced on an invariant set, re-indexed along ascending delta.
  // Returns the image group and whether the action is faithful.
  std::pair<PermGroup, bool> restriction(const std::vector<Point>& delta) const {
    std::vector<int64_t> newidx(degree_, -1);
    std::vector<Point> sorted = delta;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i) {
      check_point(sorted[i]);
      newidx[sorted[i]] = static_cast<int64_t>(i);
    }
    std::vector<Perm> rgens;
    for (const auto& g : gens_) {
      std::vector<Point> img(sorted.size());
      for (size_t i = 0; i < sorted.size(); ++i) {
        Point w = g[sorted[i]];
        if (newidx[w] < 0)
          throw std::invalid_argument("restriction: set is not invariant");
        img[i] = static_cast<Point>(newidx[w]);
      }
      rgens.emplace_back(std::move(img));
    }
    PermGroup res = from_generators(static_cast<Point>(sorted.size()), rgens);
    bool faithful = res.order_ == order_;
    return {res, faithful};
  }

  // ---- element enumeration ----

  // Visits every element exactly once, coset by coset along the chain.
  // The visitor returns false to stop early. Throws if |G| > threshold.
  template <class F>
  void for_each_element(F&& visit, uint64_t threshold = kEnumThreshold) const {
    if (order_ > BigUint(threshold))
      throw enumeration_limit("enumeration: order " + order_.to_string() +
                              " exceeds threshold " + std::to_string(threshold));
    size_t nlev = levels_.size();
    if (nlev == 0) {
      visit(Perm(degree_));
      return;
    }
    // odometer over orbit positions, deepest level varies slowest
    std::vector<size_t> digit(nlev, 0);
    std::vector<Perm> partial(nlev + 1);  // partial[l] = product of reps for levels >= l
    partial[nlev] = Perm(degree_);
    for (size_t l = nlev; l-- > 0;)
      partial[l] = partial[l + 1] * transversal_rep(l, levels_[l].orbit[0]);
    for (;;) {
      if (!visit(partial[0])) return;
      size_t l = 0;
      while (l < nlev && digit[l] + 1 == levels_[l].orbit.size()) {
        digit[l] = 0;
        ++l;
      }
      if (l == nlev) return;
      ++digit[l];
      for (size_t m = l + 1; m-- > 0;)
        partial[m] = partial[m + 1] * transversal_rep(m, levels_[m].orbit[digit[m]]);
    }
  }

  std::vector<Perm> elements(uint64_t threshold = kEnumThreshold) const {
    std::vector<Perm> out;
    for_each_element([&](const Perm& p) {
      out.push_back(p);
      return true;
    }, threshold);
    return out;
  }

  // Mixed-radix index of an element with respect to the chain, a bijection
  // onto [0, |G|). Used by word-search tooling.
  uint64_t element_index(const Perm& p) const {
    Perm res = p;
    uint64_t idx = 0, stride = 1;
    for (size_t l = 0; l < levels_.size(); ++l) {
      Point w = res[levels_[l].base];
      int64_t pos = levels_[l].pos[w];
      if (pos < 0) throw std::invalid_argument("element_index: not a member");
      idx += static_cast<uint64_t>(pos) * stride;
      stride *= levels_[l].orbit.size();
      res = res * transversal_rep(l, w).inverse();
    }
    if (!res.is_identity())
      throw std::invalid_argument("element_index: not a member");
    return idx;
  }

  Perm element_at(uint64_t idx) const {
    Perm p(degree_);
    for (size_t l = levels_.size(); l-- > 0;) {
      uint64_t stride = 1;
      for (size_t m = 0; m < l; ++m) stride *= levels_[m].orbit.size();
      size_t pos = idx / stride;
      idx %= stride;
      p = p * transversal_rep(l, levels_[l].orbit[pos]);
    }
    return p;
  }

  // ---- Sylow subgroup and its normalizer, by element collection ----

  std::pair<PermGroup, PermGroup> sylow_and_normalizer(
      uint32_t r, uint64_t threshold = kEnumThreshold) const {
    auto [v, rpart] = order_.valuation(r);
    PermGroup p = trivial(degree_);
    if (v > 0) {
      while (p.order() < rpart) {
        BigUint before = p.order();
        for_each_element([&](const Perm& g) {
          if (p.order() == rpart) return false;
          uint64_t ord = g.order();
          uint64_t rv = 1;
          while (ord % r == 0) {
            ord /= r;
            rv *= r;
          }
          if (rv == 1) return true;
          Perm h = g.power(ord);  // the r-part of g
          if (p.contains(h)) return true;
          auto gens = p.generators();
          gens.push_back(h);
          PermGroup bigger = from_generators(degree_, gens);
          if (bigger.order().is_power_of(r) && bigger.order() <= rpart)
            p = std::move(bigger);
          return true;
        }, threshold);
        if (p.order() == before)
          throw std::runtime_error("sylow: no progress");  // cannot happen
      }
    }
    // normalizer by scanning all elements with P^g = P
    PermGroup norm = p;
    for_each_element([&](const Perm& g) {
      for (const auto& s : p.generators())
        if (!p.contains(s.conjugate_by(g))) return true;
      if (!norm.contains(g)) {
        auto gens = norm.generators();
        gens.push_back(g);
        norm = from_generators(degree_, gens);
      }
      return true;
    }, threshold);
    return {p, norm};
  }

  // ---- chain access (used by the closure engine) ----

  size_t chain_length() const { return levels_.size(); }
  Point base_point(size_t l) const { return levels_[l].base; }
  const std::vector<Point>& basic_orbit(size_t l) const { return levels_[l].orbit; }

  Perm transversal_rep(size_t l, Point w) const {
    const Level& lv = levels_[l];
    if (lv.pos[w] < 0)
      throw std::invalid_argument("transversal_rep: point not in orbit");
    std::vector<uint32_t> path;
    for (Point x = w; x != lv.base; x = lv.parent[x]) path.push_back(lv.via[x]);
    Perm rep(degree_);
    for (size_t i = path.size(); i-- > 0;) rep = rep * lv.gens[path[i]];
    return rep;
  }

private:
  struct Level {
    Point base = 0;
    std::vector<Perm> gens;
    std::vector<Point> orbit;
    std::vector<int64_t> pos;     // point -> orbit position, or -1
    std::vector<Point> parent;    // Schreier tree edges
    std::vector<uint32_t> via;    // generator labels on tree edges
  };

  void check_point(Point a) const {
    if (a >= degree_) throw std::out_of_range("point out of range");
  }

  void rebuild_orbit(size_t l) {
    Level& lv = levels_[l];
    lv.orbit.assign(1, lv.base);
    lv.pos.assign(degree_, -1);
    lv.parent.assign(degree_, 0);
    lv.via.assign(degree_, 0);
    lv.pos[lv.base] = 0;
    for (size_t i = 0; i < lv.orbit.size(); ++i)
      for (uint32_t gi = 0; gi < lv.gens.size(); ++gi) {
        Point w = lv.gens[gi][lv.orbit[i]];
        if (lv.pos[w] < 0) {
          lv.pos[w] = static_cast<int64_t>(lv.orbit.size());
          lv.parent[w] = lv.orbit[i];
          lv.via[w] = gi;
          lv.orbit.push_back(w);
        }
      }
  }

  // Reduces g through levels starting at `from`; returns the level at which
  // sifting stopped (levels_.size() on full success). g holds the residue.
  size_t sift(Perm& g, size_t from) const {
    for (size_t l = from; l < levels_.size(); ++l) {
      Point w = g[levels_[l].base];
      if (levels_[l].pos[w] < 0) return l;
      g = g * transversal_rep(l, w).inverse();
    }
    return levels_.size();
  }

  void add_generator_at(size_t l, const Perm& g) {
    if (l == levels_.size()) {
      Level lv;
      lv.base = g.first_moved();
      levels_.push_back(std::move(lv));
    }
    levels_[l].gens.push_back(g);
    rebuild_orbit(l);
    complete_level(l);
  }

  // Processes all Schreier generators of level l. A residue that does not
  // sift to the identity is added to level l+1 (never deeper, to keep the
  // tower G_0 >= G_1 >= ... intact) and that level is re-completed.
  // Recursive calls may reallocate levels_, so no reference into it is held
  // across them.
  void complete_level(size_t l) {
    for (size_t oi = 0; oi < levels_[l].orbit.size(); ++oi) {
      Perm rep = transversal_rep(l, levels_[l].orbit[oi]);
      for (size_t gi = 0; gi < levels_[l].gens.size(); ++gi) {
        Perm h = rep * levels_[l].gens[gi];
        Perm schreier = h * transversal_rep(l, h[levels_[l].base]).inverse();
        if (schreier.is_identity()) continue;
        sift(schreier, l + 1);
        if (!schreier.is_identity()) add_generator_at(l + 1, schreier);
      }
    }
  }

  void build_chain() {
    order_ = BigUint(1);
    if (gens_.empty()) return;
    Level lv;
    lv.base = gens_[0].first_moved();
    levels_.push_back(std::move(lv));
    levels_[0].gens = gens_;
    rebuild_orbit(0);
    complete_level(0);
    for (const auto& l : levels_) order_ = order_.mul(BigUint(l.orbit.size()));
    // chain soundness: every generator must sift to the identity
    for (const auto& g : gens_) {
      Perm res = g;
      if (sift(res, 0) != levels_.size() || !res.is_identity())
        throw std::logic_error("stabilizer chain failed verification");
    }
  }

  Point degree_;
  std::vector<Perm> gens_;
  std::vector<Level> levels_;
  BigUint order_;
};

// Keeps only generators that enlarge the group, in input order.
inline std::vector<Perm> reduce_generators(Point degree, const std::vector<Perm>& gens) {
  std::vector<Perm> kept;
  PermGroup cur = PermGroup::trivial(degree);
  for (const auto& g : gens) {
    if (g.is_identity() || cur.contains(g)) continue;
    kept.push_back(g);
    cur = PermGroup::from_generators(degree, kept);
  }
  return kept;
}

inline PermGroup group_closure(const PermGroup& base, const std::vector<Perm>& extra) {
  auto gens = base.generators();
  PermGroup cur = base;
  for (const auto& g : extra) {
    if (!cur.contains(g)) {
      gens.push_back(g);
      cur = PermGroup::from_generators(base.degree(), gens);
    }
  }
  return cur;
}

}  // namespace cgt
