#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cgt/perm_group.hpp"

namespace cgt {

inline constexpr uint64_t kColoringBudget = uint64_t(1) << 27;  // cells

// The orbit partition of Omega^m under the componentwise action of a group:
// a dense color map with one color per m-orbit. Tuples are indexed row-major,
// index = sum t_i * n^(m-i-1). Colors are numbered by first-visited tuple in
// ascending index order, so colorings are deterministic for a fixed generator
// list. Immutable once built.
class TupleColoring {
public:
  TupleColoring(Point degree, uint32_t arity, std::vector<uint32_t> colors,
                uint32_t num_colors, std::vector<uint64_t> reps)
      : n_(degree), m_(arity), colors_(std::move(colors)),
        num_colors_(num_colors), reps_(std::move(reps)) {}

  Point degree() const { return n_; }
  uint32_t arity() const { return m_; }
  uint32_t num_colors() const { return num_colors_; }
  uint64_t size() const { return colors_.size(); }
  uint32_t color_at(uint64_t index) const { return colors_[index]; }
  const std::vector<uint32_t>& colors() const { return colors_; }

  uint32_t color_of(const std::vector<Point>& tuple) const {
    return colors_[encode(tuple)];
  }

  uint64_t encode(const std::vector<Point>& tuple) const {
    uint64_t idx = 0;
    for (Point t : tuple) idx = idx * n_ + t;
    return idx;
  }

  std::vector<Point> decode(uint64_t index) const {
    std::vector<Point> t(m_);
    for (uint32_t i = m_; i-- > 0;) {
      t[i] = static_cast<Point>(index % n_);
      index /= n_;
    }
    return t;
  }

  std::vector<Point> representative(uint32_t color) const {
    return decode(reps_.at(color));
  }

  // Color of the image tuple under p, for the tuple with the given index.
  uint32_t color_of_image(uint64_t index, const Perm& p) const {
    uint64_t img = 0;
    uint64_t rest = index;
    uint64_t pw = colors_.size() / n_;
    for (uint32_t i = 0; i < m_; ++i) {
      img = img * n_ + p[static_cast<Point>(rest / pw)];
      rest %= pw;
      pw /= n_;
    }
    return colors_[img];
  }

  // True iff p maps every color class into itself.
  bool preserved_by(const Perm& p) const {
    for (uint64_t t = 0; t < colors_.size(); ++t)
      if (color_of_image(t, p) != colors_[t]) return false;
    return true;
  }

  bool same_partition_as(const TupleColoring& other) const {
    // both sides number colors by first-visited ascending index, so equal
    // partitions have identical color arrays
    return n_ == other.n_ && m_ == other.m_ && colors_ == other.colors_;
  }

  // Binary export: u64 degree, u64 arity, u64 num_colors, then the color
  // array as fixed-width little-endian u32.
  void save_binary(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    auto put64 = [&](uint64_t v) {
      unsigned char b[8];
      for (int i = 0; i < 8; ++i) b[i] = (v >> (8 * i)) & 0xff;
      out.write(reinterpret_cast<char*>(b), 8);
    };
    put64(n_);
    put64(m_);
    put64(num_colors_);
    for (uint32_t c : colors_) {
      unsigned char b[4];
      for (int i = 0; i < 4; ++i) b[i] = (c >> (8 * i)) & 0xff;
      out.write(reinterpret_cast<char*>(b), 4);
    }
  }

  static TupleColoring load_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    auto get64 = [&]() {
      unsigned char b[8];
      in.read(reinterpret_cast<char*>(b), 8);
      uint64_t v = 0;
      for (int i = 8; i-- > 0;) v = (v << 8) | b[i];
      return v;
    };
    uint64_t n = get64(), m = get64(), nc = get64();
    uint64_t cells = 1;
    for (uint64_t i = 0; i < m; ++i) cells *= n;
    std::vector<uint32_t> colors(cells);
    for (auto& c : colors) {
      unsigned char b[4];
      in.read(reinterpret_cast<char*>(b), 4);
      c = 0;
      for (int i = 4; i-- > 0;) c = (c << 8) | b[i];
    }
    if (!in) throw std::runtime_error("truncated coloring file " + path);
    std::vector<uint64_t> reps(nc, 0);
    std::vector<bool> seen(nc, false);
    for (uint64_t t = 0; t < cells; ++t)
      if (!seen[colors[t]]) {
        seen[colors[t]] = true;
        reps[colors[t]] = t;
      }
    return TupleColoring(static_cast<Point>(n), static_cast<uint32_t>(m),
                         std::move(colors), static_cast<uint32_t>(nc),
                         std::move(reps));
  }

  nlohmann::json summary_json() const {
    std::vector<uint64_t> sizes(num_colors_, 0);
    for (uint32_t c : colors_) ++sizes[c];
    nlohmann::json j;
    j["degree"] = n_;
    j["arity"] = m_;
    j["num_colors"] = num_colors_;
    j["class_sizes"] = sizes;
    return j;
  }

private:
  Point n_;
  uint32_t m_;
  std::vector<uint32_t> colors_;
  uint32_t num_colors_;
  std::vector<uint64_t> reps_;  // first-visited tuple per color
};

// Orbits of G on Omega^m by breadth-first closure under the generators.
inline TupleColoring m_orbit_coloring(const PermGroup& g, uint32_t m,
                                      uint64_t budget = kColoringBudget) {
  if (m < 1) throw std::invalid_argument("m_orbit_coloring: arity must be >= 1");
  uint64_t n = g.degree();
  uint64_t cells = 1;
  for (uint32_t i = 0; i < m; ++i) {
    if (n > 1 && cells > budget / n)
      throw budget_exceeded("m_orbit_coloring: n^m exceeds budget");
    cells *= n;
  }
  std::vector<uint32_t> colors(cells, UINT32_MAX);
  std::vector<uint64_t> reps;
  std::vector<uint64_t> queue;
  std::vector<uint64_t> powers(m);
  {
    uint64_t pw = 1;
    for (uint32_t i = m; i-- > 0;) {
      powers[i] = pw;
      pw *= n;
    }
  }
  uint32_t next_color = 0;
  std::vector<Point> tup(m);
  for (uint64_t seed = 0; seed < cells; ++seed) {
    if (colors[seed] != UINT32_MAX) continue;
    colors[seed] = next_color;
    reps.push_back(seed);
    queue.clear();
    queue.push_back(seed);
    while (!queue.empty()) {
      uint64_t t = queue.back();
      queue.pop_back();
      uint64_t rest = t;
      for (uint32_t i = 0; i < m; ++i) {
        tup[i] = static_cast<Point>(rest / powers[i]);
        rest %= powers[i];
      }
      for (const auto& p : g.generators()) {
        uint64_t img = 0;
        for (uint32_t i = 0; i < m; ++i) img = img * n + p[tup[i]];
        if (colors[img] == UINT32_MAX) {
          colors[img] = next_color;
          queue.push_back(img);
        }
      }
    }
    ++next_color;
  }
  return TupleColoring(g.degree(), m, std::move(colors), next_color,
                       std::move(reps));
}

// Partition of {0..m-1} with i ~ j iff t_i == t_j; canonical form numbers
// classes by least element.
class PartitionType {
public:
  explicit PartitionType(const std::vector<Point>& tuple) {
    class_of_.assign(tuple.size(), -1);
    int next = 0;
    for (size_t i = 0; i < tuple.size(); ++i) {
      if (class_of_[i] >= 0) continue;
      class_of_[i] = next;
      for (size_t j = i + 1; j < tuple.size(); ++j)
        if (tuple[j] == tuple[i]) class_of_[j] = next;
      ++next;
    }
    num_classes_ = next;
  }

  int num_classes() const { return num_classes_; }
  const std::vector<int>& class_ids() const { return class_of_; }

  std::vector<std::vector<int>> classes() const {
    std::vector<std::vector<int>> out(num_classes_);
    for (size_t i = 0; i < class_of_.size(); ++i)
      out[class_of_[i]].push_back(static_cast<int>(i));
    return out;
  }

  bool operator==(const PartitionType& o) const { return class_of_ == o.class_of_; }
  bool operator!=(const PartitionType& o) const { return class_of_ != o.class_of_; }
  bool operator<(const PartitionType& o) const { return class_of_ < o.class_of_; }

private:
  std::vector<int> class_of_;
  int num_classes_ = 0;
};

inline PartitionType partition_type(const std::vector<Point>& tuple) {
  return PartitionType(tuple);
}

// The map color -> partition type. Well-definedness (all tuples of one color
// share a type) is verified, not assumed.
inline std::map<uint32_t, PartitionType> orbit_partition_types(
    const TupleColoring& c) {
  std::map<uint32_t, PartitionType> out;
  for (uint32_t col = 0; col < c.num_colors(); ++col)
    out.emplace(col, partition_type(c.representative(col)));
  for (uint64_t t = 0; t < c.size(); ++t)
    if (!(partition_type(c.decode(t)) == out.at(c.color_at(t))))
      throw std::logic_error(
          "orbit_partition_types: tuples of one color disagree in type");
  return out;
}

// m-equivalence: identical orbit partitions of Omega^m. When every generator
// of g lies in h, the subgroup criterion applies: h is m-equivalent to g iff
// every h-generator preserves g's coloring.
inline bool are_m_equivalent(const PermGroup& g, const PermGroup& h, uint32_t m,
                             uint64_t budget = kColoringBudget) {
  if (g.degree() != h.degree())
    throw degree_mismatch("are_m_equivalent: degree mismatch");
  bool g_in_h = true;
  for (const auto& p : g.generators()) g_in_h &= h.contains(p);
  if (g_in_h) {
    auto cg = m_orbit_coloring(g, m, budget);
    for (const auto& p : h.generators())
      if (!cg.preserved_by(p)) return false;
    return true;
  }
  auto cg = m_orbit_coloring(g, m, budget);
  auto ch = m_orbit_coloring(h, m, budget);
  return cg.same_partition_as(ch);
}

}  // namespace cgt
