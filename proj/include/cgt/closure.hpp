#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cgt/perm_group.hpp"
#include "cgt/tuple_coloring.hpp"

namespace cgt {

struct ClosureOptions {
  Point backtrack_degree_budget = 128;  // two_closure
  Point ternary_degree_budget = 64;     // m == 3
  uint64_t coloring_budget = kColoringBudget;
};

struct ClosureResult {
  PermGroup closed_group;
  uint32_t arity = 2;
  BigUint input_order, closed_order;
  std::string method;  // backtrack | brute-force | structural
  uint64_t nodes = 0, prunes = 0;
};

// G^(1): the direct product of symmetric groups on the orbits of G.
inline PermGroup one_closure(const PermGroup& g) {
  std::vector<Perm> gens;
  Point n = g.degree();
  for (const auto& orb : g.orbits()) {
    if (orb.size() < 2) continue;
    std::vector<Point> sorted(orb.begin(), orb.end());
    std::sort(sorted.begin(), sorted.end());
    gens.push_back(Perm::from_cycles(n, {{sorted[0], sorted[1]}}));
    std::vector<Point> img(n);
    for (Point i = 0; i < n; ++i) img[i] = i;
    for (size_t i = 0; i < sorted.size(); ++i)
      img[sorted[i]] = sorted[(i + 1) % sorted.size()];
    gens.push_back(Perm(img));
  }
  return PermGroup::from_generators(n, gens);
}

namespace detail {

// Partition backtrack over an edge-colored complete digraph: computes the
// full group of color-preserving permutations. Refinement is iterated
// color-degree counting (per-cell hashes of in/out edge colors); branching
// individualizes the first smallest non-singleton cell. Automorphisms are
// recognized as leaves whose refinement trace matches the leftmost path,
// with first-in-orbit pruning by the generators found so far.
class ColorAutSearch {
public:
  ColorAutSearch(const TupleColoring& coloring)
      : n_(coloring.degree()), col_(coloring.colors()) {
    if (coloring.arity() != 2)
      throw std::invalid_argument("ColorAutSearch needs an arity-2 coloring");
  }

  std::vector<Perm> run() {
    Part root = initial_partition();
    refine(root);
    // leftmost descent records the base path
    path_.clear();
    Part cur = root;
    while (true) {
      PathNode node;
      node.part = cur;
      auto target = target_cell(cur);
      if (!target) {
        first_leaf_ = cur.order;
        path_.push_back(std::move(node));
        break;
      }
      node.target_start = *target;
      node.beta = cur.order[*target];
      path_.push_back(node);
      cur = individualize(path_.back().part, path_.back().beta);
      refine(cur);
      path_.back().child_trace = cur.trace;
    }
    gens_.clear();
    explore(0);
    return gens_;
  }

  uint64_t nodes() const { return nodes_; }
  uint64_t prunes() const { return prunes_; }

private:
  struct Part {
    std::vector<Point> order;          // vertices grouped by cell
    std::vector<uint32_t> cell_start;  // vertex -> start index of its cell
    std::vector<uint32_t> cell_len;    // valid at start indices
    uint64_t trace = 0xcbf29ce484222325ull;
  };

  struct PathNode {
    Part part;
    uint32_t target_start = 0;
    Point beta = 0;
    uint64_t child_trace = 0;
  };

  static uint64_t mix(uint64_t h, uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
  static uint64_t scramble(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  uint32_t col(Point v, Point w) const { return col_[uint64_t(v) * n_ + w]; }

  Part initial_partition() const {
    Part p;
    p.order.resize(n_);
    for (Point v = 0; v < n_; ++v) p.order[v] = v;
    std::stable_sort(p.order.begin(), p.order.end(),
                     [&](Point a, Point b) { return col(a, a) < col(b, b); });
    p.cell_start.assign(n_, 0);
    p.cell_len.assign(n_, 0);
    size_t i = 0;
    while (i < n_) {
      size_t j = i;
      while (j < n_ && col(p.order[j], p.order[j]) == col(p.order[i], p.order[i]))
        ++j;
      for (size_t t = i; t < j; ++t) p.cell_start[p.order[t]] = i;
      p.cell_len[i] = static_cast<uint32_t>(j - i);
      i = j;
    }
    return p;
  }

  // One counting pass; returns true if some cell split.
  bool refine_pass(Part& p) const {
    std::vector<uint64_t> sig(n_);
    for (Point v = 0; v < n_; ++v) {
      uint64_t acc = 0;
      for (Point w = 0; w < n_; ++w)
        acc += scramble((uint64_t(p.cell_start[w]) << 40) ^
                        (uint64_t(col(v, w)) << 20) ^ col(w, v));
      sig[v] = mix(scramble(acc), p.cell_start[v]);
    }
    bool changed = false;
    size_t i = 0;
    while (i < n_) {
      size_t len = p.cell_len[i];
      if (len > 1) {
        std::stable_sort(p.order.begin() + i, p.order.begin() + i + len,
                         [&](Point a, Point b) { return sig[a] < sig[b]; });
        size_t s = i;
        for (size_t t = i + 1; t < i + len; ++t)
          if (sig[p.order[t]] != sig[p.order[s]]) {
            p.cell_len[s] = static_cast<uint32_t>(t - s);
            s = t;
            changed = true;
          }
        p.cell_len[s] = static_cast<uint32_t>(i + len - s);
        for (size_t t = i; t < i + len;) {
          size_t l = p.cell_len[t];
          for (size_t u = t; u < t + l; ++u) p.cell_start[p.order[u]] = t;
          t += l;
        }
      }
      i += len;
    }
    return changed;
  }

  void refine(Part& p) const {
    ++nodes_;
    while (refine_pass(p)) {
    }
    size_t i = 0;
    while (i < n_) {
      p.trace = mix(p.trace, (uint64_t(i) << 32) ^ p.cell_len[i]);
      i += p.cell_len[i];
    }
  }

  static Part individualize(const Part& p, Point v) {
    Part q = p;
    uint32_t start = q.cell_start[v];
    uint32_t len = q.cell_len[start];
    auto it = std::find(q.order.begin() + start, q.order.begin() + start + len, v);
    std::rotate(q.order.begin() + start, it, it + 1);
    q.cell_len[start] = 1;
    q.cell_len[start + 1] = len - 1;
    for (uint32_t t = start + 1; t < start + len; ++t)
      q.cell_start[q.order[t]] = start + 1;
    q.trace = mix(q.trace, start);
    return q;
  }

  std::optional<uint32_t> target_cell(const Part& p) const {
    uint32_t best = UINT32_MAX, best_len = UINT32_MAX;
    size_t i = 0;
    while (i < n_) {
      uint32_t len = p.cell_len[i];
      if (len > 1 && len < best_len) {
        best = static_cast<uint32_t>(i);
        best_len = len;
      }
      i += len;
    }
    if (best == UINT32_MAX) return std::nullopt;
    return best;
  }

  std::optional<Perm> candidate_from_leaf(const Part& leaf) const {
    std::vector<Point> img(n_);
    for (size_t pos = 0; pos < n_; ++pos) img[first_leaf_[pos]] = leaf.order[pos];
    Perm sigma{std::vector<Point>(img)};
    for (Point v = 0; v < n_; ++v)
      for (Point w = 0; w < n_; ++w)
        if (col(sigma[v], sigma[w]) != col(v, w)) return std::nullopt;
    return sigma;
  }

  // Orbit of `seeds` under the found generators that fix base[0..level-1].
  std::vector<bool> pruning_orbit(size_t level, const std::vector<Point>& seeds) const {
    std::vector<const Perm*> active;
    for (const auto& g : gens_) {
      bool fixes = true;
      for (size_t l = 0; l < level && fixes; ++l) fixes = g[path_[l].beta] == path_[l].beta;
      if (fixes) active.push_back(&g);
    }
    std::vector<bool> in(n_, false);
    std::vector<Point> queue;
    for (Point s : seeds) {
      in[s] = true;
      queue.push_back(s);
    }
    for (size_t i = 0; i < queue.size(); ++i)
      for (const Perm* g : active) {
        Point w = (*g)[queue[i]];
        if (!in[w]) {
          in[w] = true;
          queue.push_back(w);
        }
      }
    return in;
  }

  void explore(size_t level) {
    const PathNode& node = path_[level];
    if (level + 1 >= path_.size()) return;  // leaf of the base path
    explore(level + 1);
    // siblings of the base choice at this level
    const Part& p = path_[level].part;
    uint32_t start = node.target_start;
    uint32_t len = p.cell_len[start];
    std::vector<Point> processed{node.beta};
    for (uint32_t t = start; t < start + len; ++t) {
      Point w = p.order[t];
      if (w == node.beta) continue;
      auto orb = pruning_orbit(level, processed);
      if (orb[w]) {
        ++prunes_;
        continue;
      }
      Part child = individualize(p, w);
      refine(child);
      if (child.trace != path_[level].child_trace) {
        ++prunes_;
        processed.push_back(w);
        continue;
      }
      auto found = find_one(child, level + 1);
      if (found) gens_.push_back(*found);
      processed.push_back(w);
    }
  }

  std::optional<Perm> find_one(const Part& p, size_t level) {
    auto target = target_cell(p);
    if (!target) return candidate_from_leaf(p);
    if (level + 1 >= path_.size()) return std::nullopt;  // trace hash collision
    uint32_t start = *target, len = p.cell_len[start];
    for (uint32_t t = start; t < start + len; ++t) {
      Part child = individualize(p, p.order[t]);
      refine(child);
      if (child.trace != path_[level].child_trace) {
        ++prunes_;
        continue;
      }
      auto r = find_one(child, level + 1);
      if (r) return r;
    }
    return std::nullopt;
  }

  Point n_;
  const std::vector<uint32_t>& col_;
  std::vector<PathNode> path_;
  std::vector<Point> first_leaf_;
  std::vector<Perm> gens_;
  mutable uint64_t nodes_ = 0;
  uint64_t prunes_ = 0;
};

}  // namespace detail

// G^(2) as the automorphism group of the orbital coloring.
inline ClosureResult two_closure(const PermGroup& g, const ClosureOptions& opts = {}) {
  if (g.degree() > opts.backtrack_degree_budget)
    throw budget_exceeded("two_closure: degree " + std::to_string(g.degree()) +
                          " exceeds backtrack budget");
  auto coloring = m_orbit_coloring(g, 2, opts.coloring_budget);
  detail::ColorAutSearch search(coloring);
  auto gens = search.run();
  ClosureResult res;
  res.arity = 2;
  res.method = "backtrack";
  res.nodes = search.nodes();
  res.prunes = search.prunes();
  res.input_order = g.order();
  res.closed_group = PermGroup::from_generators(g.degree(), gens);
  res.closed_order = res.closed_group.order();
  // the closure contains the input and preserves its coloring
  for (const auto& p : g.generators())
    if (!res.closed_group.contains(p))
      throw std::logic_error("two_closure: input not contained in result");
  for (const auto& p : res.closed_group.generators())
    if (!coloring.preserved_by(p))
      throw std::logic_error("two_closure: result violates color preservation");
  return res;
}

// Independent oracle: filters all of Sym(n) by 2-orbit preservation.
inline PermGroup two_closure_brute(const PermGroup& g) {
  if (g.degree() > 9)
    throw budget_exceeded("two_closure_brute: degree must be <= 9");
  auto coloring = m_orbit_coloring(g, 2);
  Point n = g.degree();
  std::vector<Point> img(n);
  for (Point i = 0; i < n; ++i) img[i] = i;
  PermGroup closed = PermGroup::trivial(n);
  do {
    Perm p{std::vector<Point>(img)};
    if (coloring.preserved_by(p) && !closed.contains(p))
      closed = group_closure(closed, {p});
  } while (std::next_permutation(img.begin(), img.end()));
  return closed;
}

namespace detail {

// Extracts the subgroup of K preserving an m-coloring, by depth-first coset
// search over K's stabilizer chain. The preserving set is a subgroup
// containing the original group, so one representative per basic-orbit point
// suffices at each level. Partial products determine the images of the base
// prefix, which prunes via m-tuple colors before any full check.
class PreservingSubgroupSearch {
public:
  PreservingSubgroupSearch(const PermGroup& k, const TupleColoring& coloring,
                           std::vector<Perm> seed_gens)
      : k_(k), col_(coloring), found_(std::move(seed_gens)) {}

  std::vector<Perm> run(uint64_t* nodes, uint64_t* prunes) {
    size_t L = k_.chain_length();
    for (size_t l = L; l-- > 0;) {
      const auto& orbit = k_.basic_orbit(l);
      for (size_t oi = 1; oi < orbit.size(); ++oi) {
        Point u = orbit[oi];
        if (reachable(l, u)) {
          ++prunes_;
          continue;
        }
        determined_.clear();
        for (size_t j = 0; j < l; ++j) determined_.push_back(k_.base_point(j));
        Perm start = k_.transversal_rep(l, u);
        if (!prefix_ok(start, l + 1)) {
          ++prunes_;
          continue;
        }
        auto e = extend(start, l + 1);
        if (e) found_.push_back(*e);
      }
    }
    if (nodes) *nodes = nodes_;
    if (prunes) *prunes = prunes_;
    return found_;
  }

private:
  // u already in the orbit of base_l under found generators fixing base[0..l-1]?
  bool reachable(size_t l, Point u) const {
    std::vector<const Perm*> active;
    for (const auto& g : found_) {
      bool fixes = true;
      for (size_t j = 0; j < l && fixes; ++j)
        fixes = g[k_.base_point(j)] == k_.base_point(j);
      if (fixes) active.push_back(&g);
    }
    Point b = k_.base_point(l);
    std::vector<bool> in(k_.degree(), false);
    std::vector<Point> queue{b};
    in[b] = true;
    for (size_t i = 0; i < queue.size(); ++i) {
      if (queue[i] == u) return true;
      for (const Perm* g : active) {
        Point w = (*g)[queue[i]];
        if (!in[w]) {
          in[w] = true;
          queue.push_back(w);
        }
      }
    }
    return false;
  }

  // Checks m-tuples over the determined base prefix (plus the newly fixed
  // point) against their images under the partial product.
  bool prefix_ok(const Perm& partial, size_t depth) {
    ++nodes_;
    Point newpt = depth == 0 ? 0 : k_.base_point(depth - 1);
    determined_.push_back(newpt);
    uint32_t m = col_.arity();
    std::vector<size_t> idx(m, 0);
    std::vector<Point> tup(m), img(m);
    // iterate tuples over determined points that involve the new point
    for (;;) {
      bool involves = false;
      for (uint32_t i = 0; i < m; ++i) {
        tup[i] = determined_[idx[i]];
        involves |= tup[i] == newpt;
      }
      if (involves) {
        for (uint32_t i = 0; i < m; ++i) img[i] = partial[tup[i]];
        if (col_.color_of(img) != col_.color_of(tup)) {
          determined_.pop_back();
          return false;
        }
      }
      uint32_t c = 0;
      while (c < m && ++idx[c] == determined_.size()) idx[c++] = 0;
      if (c == m) break;
    }
    return true;
  }

  std::optional<Perm> extend(const Perm& partial, size_t level) {
    if (level == k_.chain_length()) {
      if (col_.preserved_by(partial)) return partial;
      ++prunes_;
      return std::nullopt;
    }
    for (Point w : k_.basic_orbit(level)) {
      Perm next = k_.transversal_rep(level, w) * partial;
      if (!prefix_ok(next, level + 1)) {
        ++prunes_;
        continue;
      }
      auto r = extend(next, level + 1);
      if (r) return r;
      determined_.pop_back();
    }
    return std::nullopt;
  }

  const PermGroup& k_;
  const TupleColoring& col_;
  std::vector<Perm> found_;
  std::vector<Point> determined_;
  uint64_t nodes_ = 0, prunes_ = 0;
};

}  // namespace detail

// G^(m). For m == 2 this is the backtrack closure; for m >= 3 the search
// runs inside K = G^(2), since the closure chain gives G^(m) <= G^(2).
inline ClosureResult m_closure(const PermGroup& g, uint32_t m,
                               const ClosureOptions& opts = {}) {
  if (m < 2) throw std::invalid_argument("m_closure: arity must be >= 2");
  if (m == 2) return two_closure(g, opts);
  if (m == 3 && g.degree() > opts.ternary_degree_budget)
    throw budget_exceeded("m_closure: degree exceeds ternary budget");
  ClosureResult two = two_closure(g, opts);
  auto coloring = m_orbit_coloring(g, m, opts.coloring_budget);
  detail::PreservingSubgroupSearch search(two.closed_group, coloring,
                                          g.generators());
  ClosureResult res;
  res.arity = m;
  res.method = "backtrack";
  res.input_order = g.order();
  auto gens = search.run(&res.nodes, &res.prunes);
  res.nodes += two.nodes;
  res.prunes += two.prunes;
  res.closed_group = PermGroup::from_generators(g.degree(), gens);
  res.closed_order = res.closed_group.order();
  for (const auto& p : res.closed_group.generators())
    if (!coloring.preserved_by(p))
      throw std::logic_error("m_closure: result violates color preservation");
  return res;
}

inline bool is_m_closed(const PermGroup& g, uint32_t m,
                        const ClosureOptions& opts = {}) {
  auto res = m_closure(g, m, opts);
  return res.closed_order == res.input_order;
}

struct RegularOrbitOptions {
  uint64_t exhaustive_limit = uint64_t(1) << 16;
  uint32_t max_samples = 256;
  uint64_t seed = 0;
};

// A point whose orbit is regular and faithful, if one exists. A trivial
// stabilizer gives both, since the kernel of the orbit action lies in the
// stabilizer. Ascending search on small domains, seeded sampling above.
inline std::optional<Point> is_partly_regular(const PermGroup& g,
                                              const RegularOrbitOptions& opts = {}) {
  if (BigUint(g.degree()) < g.order()) return std::nullopt;  // orbits too short
  uint64_t target = g.order().to_u64();
  if (g.degree() <= opts.exhaustive_limit) {
    for (const auto& orb : g.orbits())
      if (orb.size() == target)
        return *std::min_element(orb.begin(), orb.end());
    return std::nullopt;
  }
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<Point> dist(0, g.degree() - 1);
  for (uint32_t i = 0; i < opts.max_samples; ++i) {
    Point a = dist(rng);
    if (g.orbit(a).size() == target) return a;
  }
  return std::nullopt;
}

// Condition (B) primitive: the restriction of h to the orbit of alpha is
// faithful and 2-closed. Non-faithful restrictions report false.
inline bool is_two_closed_restriction(const PermGroup& h, Point alpha,
                                      const ClosureOptions& opts = {}) {
  auto orb = h.orbit(alpha);
  auto [res, faithful] = h.restriction(orb);
  if (!faithful) return false;
  return is_m_closed(res, 2, opts);
}

}  // namespace cgt
