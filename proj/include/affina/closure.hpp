#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "affina/enumerate.hpp"
#include "affina/error.hpp"
#include "affina/object.hpp"
#include "affina/polynomial.hpp"
#include "affina/text.hpp"

namespace affina {

/// Disjoint sets over 0..n-1 with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }

  /// Returns the surviving root, or npos when i and j were already joined.
  std::size_t unite(std::size_t i, std::size_t j) {
    i = find(i);
    j = find(j);
    if (i == j) return npos;
    if (size_[i] < size_[j]) std::swap(i, j);
    parent_[j] = i;
    size_[i] += size_[j];
    return i;
  }

  std::size_t count() const { return parent_.size(); }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Classes of a bounded universe. Members of a class are in shortlex order and
/// classes are ordered by their first member.
struct Partition {
  std::vector<std::vector<Object>> classes;

  friend bool operator==(const Partition&, const Partition&) = default;

  /// Index of the class containing `u`, or npos.
  std::size_t class_of(const Object& u) const {
    for (std::size_t i = 0; i < classes.size(); ++i)
      if (std::find(classes[i].begin(), classes[i].end(), u) != classes[i].end()) return i;
    return static_cast<std::size_t>(-1);
  }
};

inline Partition normalize_partition(std::vector<std::vector<Object>> classes) {
  Partition p;
  for (auto& c : classes) {
    if (c.empty()) continue;
    std::sort(c.begin(), c.end(), ShortLex{});
    p.classes.push_back(std::move(c));
  }
  std::sort(p.classes.begin(), p.classes.end(), [](const auto& x, const auto& y) { return ShortLex{}(x.front(), y.front()); });
  return p;
}

/// Groups `universe` by the value of `key`.
template <class Key>
Partition partition_by(const std::vector<Object>& universe, Key&& key) {
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::vector<Object>> classes;
  for (const Object& u : universe) {
    auto [it, fresh] = index.emplace(key(u), classes.size());
    if (fresh) classes.emplace_back();
    classes[it->second].push_back(u);
  }
  return normalize_partition(std::move(classes));
}

/// One line per class: `class <id>: <member> <member> …`, ids from 1.
inline std::string format_partition(const Partition& p) {
  std::string out;
  for (std::size_t i = 0; i < p.classes.size(); ++i) {
    out += "class " + std::to_string(i + 1) + ":";
    for (const Object& m : p.classes[i]) out += " " + to_string(m);
    out += '\n';
  }
  return out;
}

struct ClosureOptions {
  std::size_t universe_cap = 2'000'000;
};

/// Restriction of the congruence generated by ⟨u, v⟩ to objects of measure
/// ≤ max_measure (length for words, s(t) for trees).
///
/// Generators ⟨C(u), C(v)⟩ are seeded for every context C with
/// measure(C(u)) ≤ max_measure + measure(u), i.e. inside a universe padded by
/// the pattern size; the union-find is then closed under ⋆-compatibility
/// within that universe until nothing changes, and finally cut down to the
/// requested bound.
inline Partition closure_oracle(const Object& u, const Object& v, std::size_t max_measure, const Alphabet& alphabet,
                                ClosureOptions options = {}) {
  if (u.mode() != v.mode()) throw ModeMismatch("closure_oracle: operands from different algebras");
  if (!is_ground(u) || !is_ground(v)) throw PreconditionError("closure_oracle: generators must be ground objects");
  const Mode mode = u.mode();
  const std::size_t bound = max_measure + std::max(measure(u), measure(v));
  const double predicted = universe_count(mode, alphabet.size(), bound);
  if (predicted > static_cast<double>(options.universe_cap))
    throw PreconditionError("closure_oracle: universe of " + std::to_string(static_cast<long long>(predicted)) +
                            " objects exceeds the cap of " + std::to_string(options.universe_cap));

  const std::vector<Object> universe = objects_up_to(mode, alphabet, bound);
  std::unordered_map<Object, std::size_t, ObjectHash> index;
  index.reserve(universe.size() * 2);
  for (std::size_t i = 0; i < universe.size(); ++i) index.emplace(universe[i], i);

  UnionFind uf(universe.size());
  // Smallest-measure member of each root's class; the universe is listed in
  // increasing measure, so the smaller index wins.
  std::vector<std::size_t> smallest(universe.size());
  std::iota(smallest.begin(), smallest.end(), std::size_t{0});
  auto join = [&](std::size_t i, std::size_t j) {
    const std::size_t ri = uf.find(i), rj = uf.find(j);
    const std::size_t root = uf.unite(ri, rj);
    if (root == UnionFind::npos) return false;
    smallest[root] = std::min(smallest[ri], smallest[rj]);
    return true;
  };

  for (std::size_t i = 0; i < universe.size(); ++i) {
    for (const Occurrence& occ : find_occurrences(universe[i], u)) {
      auto it = index.find(replace_at(universe[i], occ, u.length(), v));
      if (it != index.end()) join(i, it->second);
    }
  }

  // Compatibility: s₁⋆s₂ ~ r₁⋆r₂ where rᵢ is the smallest member of sᵢ's class.
  std::vector<std::vector<std::size_t>> by_measure(bound + 1);
  for (std::size_t i = 0; i < universe.size(); ++i) by_measure[measure(universe[i])].push_back(i);
  const std::size_t node_cost = mode == Mode::tree ? 1 : 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t m1 = 0; m1 <= bound; ++m1) {
      for (std::size_t m2 = 0; m1 + m2 + node_cost <= bound; ++m2) {
        for (std::size_t i : by_measure[m1]) {
          const std::size_t ri = smallest[uf.find(i)];
          for (std::size_t j : by_measure[m2]) {
            const std::size_t rj = smallest[uf.find(j)];
            if (ri == i && rj == j) continue;
            auto prod = index.find(star(universe[i], universe[j]));
            auto rep = index.find(star(universe[ri], universe[rj]));
            if (prod == index.end() || rep == index.end()) continue;
            changed |= join(prod->second, rep->second);
          }
        }
      }
    }
  }

  std::unordered_map<std::size_t, std::size_t> class_index;
  std::vector<std::vector<Object>> classes;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    if (measure(universe[i]) > max_measure) continue;
    auto [it, fresh] = class_index.emplace(uf.find(i), classes.size());
    if (fresh) classes.emplace_back();
    classes[it->second].push_back(universe[i]);
  }
  return normalize_partition(std::move(classes));
}

}  // namespace affina
