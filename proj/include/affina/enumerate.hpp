#pragma once

#include <cstddef>
#include <vector>

#include "affina/object.hpp"
#include "affina/polynomial.hpp"
#include "affina/symbol.hpp"

// Bounded universes. Words are bounded by length; trees by symbol count s(t),
// since empty subtrees make the set of trees of a given length infinite.

namespace affina {

/// Length for words, s(t) for trees.
inline std::size_t measure(const Object& u) { return u.mode() == Mode::word ? u.length() : u.size(); }

/// All words over `letters` of length ≤ max_length, shortlex order.
inline std::vector<Object> words_up_to(const std::vector<Symbol>& letters, std::size_t max_length) {
  std::vector<Object> out{Object::empty(Mode::word)};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      auto base = out[i].symbols();
      for (Symbol s : letters) {
        std::vector<Symbol> w(base.begin(), base.end());
        w.push_back(s);
        out.push_back(Object::word(std::move(w)));
      }
    }
    level_begin = level_end;
  }
  return out;
}

/// Trees grouped by exact size: result[s] holds every tree with s(t) = s.
inline std::vector<std::vector<Object>> trees_by_size(const std::vector<Symbol>& letters, std::size_t max_size) {
  std::vector<std::vector<Object>> by_size(max_size + 1);
  by_size[0].push_back(Object::empty(Mode::tree));
  if (max_size >= 1)
    for (Symbol s : letters) by_size[1].push_back(Object::atom(Mode::tree, s));
  for (std::size_t s = 2; s <= max_size; ++s) {
    for (std::size_t ls = 0; ls <= s - 1; ++ls) {
      const std::size_t rs = s - 1 - ls;
      for (const Object& l : by_size[ls])
        for (const Object& r : by_size[rs]) by_size[s].push_back(star(l, r));
    }
  }
  return by_size;
}

inline std::vector<Object> trees_up_to(const std::vector<Symbol>& letters, std::size_t max_size) {
  std::vector<Object> out;
  for (auto& level : trees_by_size(letters, max_size))
    for (auto& t : level) out.push_back(std::move(t));
  return out;
}

/// Number of objects with measure ≤ bound, computed without enumerating.
inline double universe_count(Mode mode, std::size_t letters, std::size_t bound) {
  if (mode == Mode::word) {
    double total = 0, level = 1;
    for (std::size_t len = 0; len <= bound; ++len, level *= static_cast<double>(letters)) total += level;
    return total;
  }
  std::vector<double> count(bound + 1, 0.0);
  count[0] = 1;
  if (bound >= 1) count[1] = static_cast<double>(letters);
  for (std::size_t s = 2; s <= bound; ++s)
    for (std::size_t ls = 0; ls <= s - 1; ++ls) count[s] += count[ls] * count[s - 1 - ls];
  double total = 0;
  for (double c : count) total += c;
  return total;
}

inline std::vector<Object> objects_up_to(Mode mode, const std::vector<Symbol>& letters, std::size_t bound) {
  return mode == Mode::word ? words_up_to(letters, bound) : trees_up_to(letters, bound);
}

inline std::vector<Object> objects_up_to(Mode mode, const Alphabet& alphabet, std::size_t bound) {
  return objects_up_to(mode, alphabet.symbols(), bound);
}

/// One-hole contexts C with measure(C) ≤ bound (the hole counts 1).
inline std::vector<ContextPolynomial> contexts_up_to(Mode mode, const Alphabet& alphabet, std::size_t bound) {
  std::vector<ContextPolynomial> out;
  if (bound == 0) return out;
  const auto letters = alphabet.symbols();
  if (mode == Mode::word) {
    const auto words = words_up_to(letters, bound - 1);
    const Object hole = Object::atom(Mode::word, Symbol::hole());
    for (std::size_t total = 0; total + 1 <= bound; ++total)
      for (const Object& l : words)
        for (const Object& r : words)
          if (l.length() + r.length() == total) out.emplace_back(star(star(l, hole), r));
    return out;
  }
  const auto trees = trees_by_size(letters, bound);
  std::vector<std::vector<Object>> ctx(bound + 1);
  ctx[1].push_back(Object::atom(Mode::tree, Symbol::hole()));
  for (std::size_t s = 2; s <= bound; ++s) {
    for (std::size_t cs = 1; cs <= s - 1; ++cs) {
      const std::size_t ts = s - 1 - cs;
      for (const Object& c : ctx[cs])
        for (const Object& t : trees[ts]) ctx[s].push_back(star(c, t));
      for (const Object& c : ctx[cs])
        for (const Object& t : trees[ts]) ctx[s].push_back(star(t, c));
    }
  }
  for (auto& level : ctx)
    for (auto& c : level) out.emplace_back(std::move(c));
  return out;
}

/// Calls `fn(tuple)` for every tuple in pool^arity, lexicographic in pool order.
/// `fn` returns false to stop early; the function returns false if stopped.
template <class Fn>
bool for_each_tuple(const std::vector<Object>& pool, std::size_t arity, Fn&& fn) {
  std::vector<std::size_t> idx(arity, 0);
  std::vector<Object> tuple(arity, pool.empty() ? Object() : pool.front());
  if (arity > 0 && pool.empty()) return true;
  while (true) {
    for (std::size_t i = 0; i < arity; ++i) tuple[i] = pool[idx[i]];
    if (!fn(static_cast<const std::vector<Object>&>(tuple))) return false;
    std::size_t pos = arity;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < pool.size()) break;
      idx[pos] = 0;
      if (pos == 0) return true;
    }
    if (arity == 0) return true;
  }
}

}  // namespace affina
