#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "affina/error.hpp"
#include "affina/object.hpp"
#include "affina/polynomial.hpp"
#include "affina/symbol.hpp"
#include "affina/text.hpp"

namespace affina {

/// Replace occurrences of `tau` by `v`. Canonical forms need |v| < |tau|.
struct ReductionSpec {
  Object tau;
  Object v;
};

inline void check_same_mode(const Object& x, const Object& y, const char* op) {
  if (x.mode() != y.mode()) throw ModeMismatch(std::string(op) + ": operands from different algebras");
}

/// t is tau-reducible iff tau is a sub-object of t.
inline bool is_reducible(const Object& t, const Object& tau) {
  check_same_mode(t, tau, "is_reducible");
  return first_occurrence(t, tau).has_value();
}

/// Red: replaces the leftmost occurrence of spec.tau in t by spec.v.
inline Object reduce_once(const Object& t, const ReductionSpec& spec) {
  check_same_mode(t, spec.tau, "reduce_once");
  check_same_mode(t, spec.v, "reduce_once");
  auto occ = first_occurrence(t, spec.tau);
  if (!occ) throw PreconditionError("reduce_once: " + to_string(t) + " is " + to_string(spec.tau) + "-irreducible");
  return replace_at(t, *occ, spec.tau.length(), spec.v);
}

/// Red*: iterates Red until the result is tau-irreducible.
inline Object reduce_star(const Object& t, const ReductionSpec& spec) {
  check_same_mode(t, spec.tau, "reduce_star");
  check_same_mode(t, spec.v, "reduce_star");
  if (spec.v.length() >= spec.tau.length())
    throw PreconditionError("reduce_star: needs |v| < |tau| to terminate (got |v| = " + std::to_string(spec.v.length()) +
                            ", |tau| = " + std::to_string(spec.tau.length()) + ")");
  if (t.mode() == Mode::tree) {
    Object current = t;
    while (auto occ = first_occurrence(current, spec.tau)) current = replace_at(current, *occ, spec.tau.length(), spec.v);
    return current;
  }
  // Words: after rewriting at position i the next leftmost occurrence cannot
  // start before i - |tau| + 1, so the scan resumes there.
  const auto tau = spec.tau.symbols();
  const auto v = spec.v.symbols();
  std::vector<Symbol> w(t.symbols().begin(), t.symbols().end());
  std::size_t from = 0;
  while (w.size() >= tau.size()) {
    auto it = std::search(w.begin() + static_cast<std::ptrdiff_t>(from), w.end(), tau.begin(), tau.end());
    if (it == w.end()) break;
    const auto at = static_cast<std::size_t>(it - w.begin());
    w.erase(it, it + static_cast<std::ptrdiff_t>(tau.size()));
    w.insert(w.begin() + static_cast<std::ptrdiff_t>(at), v.begin(), v.end());
    from = at + 1 >= tau.size() ? at + 1 - tau.size() : 0;
  }
  return Object::word(std::move(w));
}

/// The word aⁿbabⁿ over the designated letters of `alphabet`.
inline Object ct_word(std::size_t n, const Alphabet& alphabet) {
  if (n < 2) throw PreconditionError("ct_word: needs n > 1");
  std::vector<Symbol> w(n, alphabet.a());
  w.push_back(alphabet.b());
  w.push_back(alphabet.a());
  w.insert(w.end(), n, alphabet.b());
  return Object::word(std::move(w));
}

/// Left comb ((…(σ⋆σ)⋆…)⋆σ) with `length` leaves.
inline Object ct_comb(std::size_t length, Symbol letter) {
  if (length < 1) throw PreconditionError("ct_comb: needs at least one leaf");
  Object comb = Object::atom(Mode::tree, letter);
  for (std::size_t i = 1; i < length; ++i) comb = star(comb, Object::atom(Mode::tree, letter));
  return comb;
}

/// Exponent n when tau = aⁿbabⁿ with n > 1, otherwise nothing.
inline std::optional<std::size_t> ct_word_exponent(const Object& tau, const Alphabet& alphabet) {
  if (tau.mode() != Mode::word || alphabet.size() < 2) return std::nullopt;
  const auto w = tau.symbols();
  if (w.size() < 6 || w.size() % 2 != 0) return std::nullopt;
  const std::size_t n = (w.size() - 2) / 2;
  return tau == ct_word(n, alphabet) ? std::optional<std::size_t>(n) : std::nullopt;
}

/// Membership in the curated set: trees of length ≥ 2; words aⁿbabⁿ with n > 1.
inline bool in_ct(const Object& tau, const Alphabet& alphabet) {
  if (!is_ground(tau)) return false;
  if (tau.mode() == Mode::tree) return tau.length() >= 2;
  return ct_word_exponent(tau, alphabet).has_value();
}

/// Smallest member of the curated set with length at least `min_length`.
inline Object smallest_ct(Mode mode, std::size_t min_length, const Alphabet& alphabet) {
  if (mode == Mode::tree) return ct_comb(std::max<std::size_t>(2, min_length), alphabet.a());
  std::size_t n = 2;
  while (2 * n + 2 < min_length) ++n;
  return ct_word(n, alphabet);
}

inline void require_canonical_spec(const ReductionSpec& spec, const Alphabet& alphabet, const char* op) {
  if (!in_ct(spec.tau, alphabet))
    throw PreconditionError(std::string(op) + ": tau = " + to_string(spec.tau) +
                            " is outside the curated set, so Red* is not a canonical form (use the closure oracle)");
  if (spec.v.length() >= spec.tau.length()) throw PreconditionError(std::string(op) + ": needs |v| < |tau|");
}

/// t ~(tau,v) t2, decided by comparing canonical representatives.
inline bool equivalent(const Object& t, const Object& t2, const ReductionSpec& spec, const Alphabet& alphabet) {
  check_same_mode(t, t2, "equivalent");
  require_canonical_spec(spec, alphabet, "equivalent");
  return reduce_star(t, spec) == reduce_star(t2, spec);
}

/// Red*(C(tau)) = Red*(C(v)).
inline bool check_assumption1(const Object& tau, const Object& v, const ContextPolynomial& context) {
  const ReductionSpec spec{tau, v};
  return reduce_star(context(tau), spec) == reduce_star(context(v), spec);
}

/// Red*_{tau, x_fresh}(q): rewrites every occurrence of tau in the
/// polynomial into the fresh variable.
inline Polynomial polynomial_reduce(const Polynomial& q, const Object& tau, unsigned fresh_index, const Alphabet& alphabet) {
  if (!in_ct(tau, alphabet)) throw PreconditionError("polynomial_reduce: tau = " + to_string(tau) + " is outside the curated set");
  if (fresh_index == 0) throw PreconditionError("polynomial_reduce: variables are numbered from 1");
  const Symbol fresh = Symbol::variable(fresh_index);
  if (symbol_count(q.body(), fresh) != 0) throw PreconditionError("polynomial_reduce: " + fresh.to_string() + " already occurs in the polynomial");
  Object reduced = reduce_star(q.body(), ReductionSpec{tau, Object::atom(q.mode(), fresh)});
  return Polynomial(std::move(reduced), std::max<std::size_t>(q.arity(), fresh_index));
}

enum class StrongVerdict : std::uint8_t {
  strongly_irreducible,
  too_short,              // |w| < |tau|
  reducible,              // tau occurs in w
  overlap_suffix_prefix,  // some t ∉ {ε, tau} is a suffix of w and a prefix of tau
  overlap_prefix_suffix,  // some t ∉ {ε, tau} is a prefix of w and a suffix of tau
};

inline const char* to_string(StrongVerdict v) {
  switch (v) {
    case StrongVerdict::strongly_irreducible: return "strongly-irreducible";
    case StrongVerdict::too_short: return "too-short";
    case StrongVerdict::reducible: return "reducible";
    case StrongVerdict::overlap_suffix_prefix: return "overlap-suffix-prefix";
    case StrongVerdict::overlap_prefix_suffix: return "overlap-prefix-suffix";
  }
  return "?";
}

struct StrongIrreducibility {
  StrongVerdict verdict = StrongVerdict::strongly_irreducible;
  std::optional<Object> overlap;  // the shortest overlapping factor, for the overlap verdicts

  explicit operator bool() const { return verdict == StrongVerdict::strongly_irreducible; }
};

/// Certifies strong tau-irreducibility. Trees: |w| ≥ |tau| and irreducible.
/// Words: additionally w and tau must not overlap (direct border scan).
inline StrongIrreducibility classify_strong_irreducibility(const Object& w, const Object& tau) {
  check_same_mode(w, tau, "is_strongly_irreducible");
  if (w.length() < tau.length()) return {StrongVerdict::too_short, std::nullopt};
  if (is_reducible(w, tau)) return {StrongVerdict::reducible, std::nullopt};
  if (w.mode() == Mode::tree) return {};

  const auto ws = w.symbols();
  const auto ts = tau.symbols();
  const std::size_t limit = std::min(ws.size(), ts.size());
  auto slice = [](std::span<const Symbol> s, std::size_t from, std::size_t len) {
    return Object::word(std::vector<Symbol>(s.begin() + static_cast<std::ptrdiff_t>(from),
                                            s.begin() + static_cast<std::ptrdiff_t>(from + len)));
  };
  for (std::size_t len = 1; len <= limit; ++len) {
    if (len == ts.size()) break;  // t = tau is excluded
    if (std::equal(ws.end() - static_cast<std::ptrdiff_t>(len), ws.end(), ts.begin()))
      return {StrongVerdict::overlap_suffix_prefix, slice(ws, ws.size() - len, len)};
  }
  for (std::size_t len = 1; len <= limit; ++len) {
    if (len == ts.size()) break;
    if (std::equal(ws.begin(), ws.begin() + static_cast<std::ptrdiff_t>(len), ts.end() - static_cast<std::ptrdiff_t>(len)))
      return {StrongVerdict::overlap_prefix_suffix, slice(ws, 0, len)};
  }
  return {};
}

inline bool is_strongly_irreducible(const Object& w, const Object& tau) {
  return static_cast<bool>(classify_strong_irreducibility(w, tau));
}

}  // namespace affina
