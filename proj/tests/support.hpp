#pragma once

// Shared generators for the property and acceptance suites.

#include <algorithm>
#include <cstddef>
#include <random>
#include <vector>

#include "affina/affina.hpp"

namespace affina::testing {

struct PolynomialShape {
  std::size_t max_arity = 3;
  std::size_t max_degree_entry = 3;
  std::size_t max_coefficient_length = 4;
};

inline Object random_word(std::mt19937_64& rng, const Alphabet& alphabet, std::size_t max_length) {
  const auto letters = alphabet.symbols();
  std::uniform_int_distribution<std::size_t> len_dist(0, max_length);
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  std::vector<Symbol> w(len_dist(rng));
  for (auto& s : w) s = letters[pick(rng)];
  return Object::word(std::move(w));
}

/// Random tree of the given length; empty children are sprinkled in.
inline Object random_tree_of_length(std::mt19937_64& rng, const Alphabet& alphabet, std::size_t length) {
  const auto letters = alphabet.symbols();
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  std::bernoulli_distribution pad(0.2);
  if (length == 0) return Object::empty(Mode::tree);
  if (length == 1) {
    Object leaf = Object::atom(Mode::tree, letters[pick(rng)]);
    if (pad(rng)) return std::bernoulli_distribution(0.5)(rng) ? star(leaf, Object::empty(Mode::tree)) : star(Object::empty(Mode::tree), leaf);
    return leaf;
  }
  std::uniform_int_distribution<std::size_t> split(1, length - 1);
  const std::size_t l = split(rng);
  return star(random_tree_of_length(rng, alphabet, l), random_tree_of_length(rng, alphabet, length - l));
}

inline Object random_tree(std::mt19937_64& rng, const Alphabet& alphabet, std::size_t max_length) {
  return random_tree_of_length(rng, alphabet, std::uniform_int_distribution<std::size_t>(0, max_length)(rng));
}

inline Object random_object(std::mt19937_64& rng, Mode mode, const Alphabet& alphabet, std::size_t max_length) {
  return mode == Mode::word ? random_word(rng, alphabet, max_length) : random_tree(rng, alphabet, max_length);
}

/// Random polynomial: arity ≤ max_arity, every kᵢ ≤ max_degree_entry, every
/// constant chunk (word factor between variables / constant subtree) of
/// length ≤ max_coefficient_length.
inline Polynomial random_polynomial(std::mt19937_64& rng, Mode mode, const Alphabet& alphabet, PolynomialShape shape = {}) {
  const std::size_t arity = std::uniform_int_distribution<std::size_t>(0, shape.max_arity)(rng);
  std::vector<Symbol> vars;
  for (std::size_t i = 1; i <= arity; ++i) {
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, shape.max_degree_entry)(rng);
    vars.insert(vars.end(), k, Symbol::variable(static_cast<unsigned>(i)));
  }
  std::shuffle(vars.begin(), vars.end(), rng);

  if (mode == Mode::word) {
    Object body = random_word(rng, alphabet, shape.max_coefficient_length);
    for (Symbol v : vars) {
      body = star(body, Object::atom(Mode::word, v));
      body = star(body, random_word(rng, alphabet, shape.max_coefficient_length));
    }
    return Polynomial(body, arity);
  }

  // Leaves: the variable occurrences plus a few constant subtrees, combined
  // by a random bracketing.
  std::vector<Object> parts;
  for (Symbol v : vars) parts.push_back(Object::atom(Mode::tree, v));
  const std::size_t constants = std::uniform_int_distribution<std::size_t>(vars.empty() ? 1 : 0, 2)(rng);
  for (std::size_t i = 0; i < constants; ++i) parts.push_back(random_tree(rng, alphabet, shape.max_coefficient_length));
  std::shuffle(parts.begin(), parts.end(), rng);
  while (parts.size() > 1) {
    const std::size_t i = std::uniform_int_distribution<std::size_t>(0, parts.size() - 2)(rng);
    parts[i] = star(parts[i], parts[i + 1]);
    parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(i + 1));
  }
  return Polynomial(parts.front(), arity);
}

/// Q = a x^{p1} a x^{p2} ⋯ a x^{pn} b x^m a x^{q1} b x^{q2} b ⋯ x^{qn} b, the
/// factor with Q(ε) = aⁿbabⁿ.
inline Polynomial ct_factor(std::size_t n, const std::vector<std::size_t>& p, std::size_t m, const std::vector<std::size_t>& q,
                            const Alphabet& alphabet) {
  const Symbol a = alphabet.a(), b = alphabet.b(), x = Symbol::variable(1);
  std::vector<Symbol> w;
  for (std::size_t i = 0; i < n; ++i) {
    w.push_back(a);
    w.insert(w.end(), p[i], x);
  }
  w.push_back(b);
  w.insert(w.end(), m, x);
  w.push_back(a);
  for (std::size_t i = 0; i < n; ++i) {
    w.insert(w.end(), q[i], x);
    w.push_back(b);
  }
  return Polynomial(Object::word(std::move(w)), 1);
}

}  // namespace affina::testing
