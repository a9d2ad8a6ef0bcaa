#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "affina/error.hpp"

// ℕ = the free monoid on one letter, and ℕ^p = the free commutative monoid on p letters.

namespace affina::numeric {

using Natural = boost::multiprecision::cpp_int;

inline constexpr unsigned kDefaultFactorialCap = 30;

/// f(0) = 1, f(x) = ⌊e·x!⌋ = Σ_{k=0..x} x!/k! for x ≥ 1. Congruence
/// preserving on ⟨ℕ,+⟩ but not affine.
inline Natural euler_factorial(unsigned x, unsigned cap = kDefaultFactorialCap) {
  if (x > cap) throw PreconditionError("euler_factorial: argument " + std::to_string(x) + " exceeds the cap " + std::to_string(cap));
  if (x == 0) return 1;
  // x!/k! for k = x, x-1, …, 0 is 1, x, x(x-1), …
  Natural term = 1, sum = 0;
  for (unsigned k = x + 1; k-- > 0;) {
    sum += term;
    term *= k;
  }
  return sum;
}

using NaturalFunction = std::function<Natural(unsigned)>;

/// First pair (a, b), 0 ≤ b < a ≤ n in order of a then b, for which (a − b)
/// does not divide f(a) − f(b); nothing if there is none.
inline std::optional<std::pair<unsigned, unsigned>> check_divisibility_cp(unsigned n, const NaturalFunction& f) {
  std::vector<Natural> values;
  for (unsigned x = 0; x <= n; ++x) values.push_back(f(x));
  for (unsigned a = 1; a <= n; ++a)
    for (unsigned b = 0; b < a; ++b) {
      Natural diff = values[a] - values[b];
      if (diff < 0) diff = -diff;
      if (diff % (a - b) != 0) return std::pair{a, b};
    }
  return std::nullopt;
}

inline std::optional<std::pair<unsigned, unsigned>> check_divisibility_cp(unsigned n) {
  return check_divisibility_cp(n, [](unsigned x) { return euler_factorial(x); });
}

/// Successive differences of f on [0..n]; row 0 is the values.
inline std::vector<std::vector<Natural>> difference_table(unsigned n, const NaturalFunction& f, unsigned order = 2) {
  std::vector<std::vector<Natural>> rows(1);
  for (unsigned x = 0; x <= n; ++x) rows[0].push_back(f(x));
  for (unsigned d = 1; d <= order; ++d) {
    std::vector<Natural> next;
    for (std::size_t i = 1; i < rows.back().size(); ++i) next.push_back(rows.back()[i] - rows.back()[i - 1]);
    rows.push_back(std::move(next));
  }
  return rows;
}

/// True iff f restricted to [0..n] is not of the form x ↦ c + kx (some second
/// difference is nonzero).
inline bool check_not_affine(unsigned n, const NaturalFunction& f) {
  if (n < 3) throw PreconditionError("check_not_affine: needs n ≥ 3");
  const auto table = difference_table(n, f);
  for (const Natural& d : table[2])
    if (d != 0) return true;
  return false;
}

inline bool check_not_affine(unsigned n) {
  return check_not_affine(n, [](unsigned x) { return euler_factorial(x); });
}

/// An element of ℕ^p.
class NatVec {
 public:
  NatVec() = default;
  explicit NatVec(std::vector<std::uint64_t> entries) : entries_(std::move(entries)) {}
  static NatVec zero(std::size_t p) { return NatVec(std::vector<std::uint64_t>(p, 0)); }
  static NatVec unit(std::size_t p, std::size_t j) {
    NatVec e = zero(p);
    e.entries_.at(j) = 1;
    return e;
  }

  std::size_t dimension() const { return entries_.size(); }
  std::uint64_t operator[](std::size_t j) const { return entries_[j]; }
  const std::vector<std::uint64_t>& entries() const { return entries_; }

  /// |u| = Σ entries.
  std::uint64_t length() const {
    std::uint64_t total = 0;
    for (auto e : entries_) total += e;
    return total;
  }

  friend NatVec operator+(const NatVec& x, const NatVec& y) {
    if (x.dimension() != y.dimension()) throw PreconditionError("NatVec: dimension mismatch");
    NatVec out = x;
    for (std::size_t j = 0; j < out.entries_.size(); ++j) out.entries_[j] += y.entries_[j];
    return out;
  }

  friend NatVec operator*(std::uint64_t k, const NatVec& x) {
    NatVec out = x;
    for (auto& e : out.entries_) e *= k;
    return out;
  }

  friend bool operator==(const NatVec&, const NatVec&) = default;

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t j = 0; j < entries_.size(); ++j) out += (j ? "," : "") + std::to_string(entries_[j]);
    return out + ")";
  }

 private:
  std::vector<std::uint64_t> entries_;
};

/// x⃗₁..x⃗ₙ ↦ c + Σ kᵢ·x⃗ᵢ.
struct AffineMap {
  NatVec constant;
  std::vector<std::uint64_t> coefficients;

  NatVec operator()(std::span<const NatVec> args) const {
    if (args.size() != coefficients.size()) throw PreconditionError("AffineMap: arity mismatch");
    NatVec out = constant;
    for (std::size_t i = 0; i < args.size(); ++i) out = out + coefficients[i] * args[i];
    return out;
  }

  friend bool operator==(const AffineMap&, const AffineMap&) = default;

  std::string to_string() const {
    std::string out = constant.to_string();
    for (std::size_t i = 0; i < coefficients.size(); ++i) out += " + " + std::to_string(coefficients[i]) + "*x" + std::to_string(i + 1);
    return out;
  }
};

using NatOracle = std::function<NatVec(std::span<const NatVec>)>;

/// ℕ itself (p = 1) is not affine complete: x ↦ ⌊e·x!⌋ preserves every
/// congruence without being affine.
class NotAffineComplete : public PreconditionError {
 public:
  NotAffineComplete()
      : PreconditionError("synthesize_affine: p = 1 is rejected; <N,+> is not affine complete (x -> floor(e*x!) is congruence preserving but not affine)") {}
};

struct AffineSynthesis {
  std::optional<AffineMap> map;
  std::vector<NatVec> witness;  // set on failure
  std::string reason;

  explicit operator bool() const { return map.has_value(); }
};

/// Recovers f = c + Σ kᵢ·x⃗ᵢ from c = f(0⃗,…,0⃗) and kᵢ = |f(…,e⃗₁ at i,…)| − |c|,
/// then checks |f(u⃗)|_j = c_j + Σ kᵢ·|uᵢ|_j for every j on all tuples with
/// entries ≤ verify_bound, together with the summed law on |·|.
inline AffineSynthesis synthesize_affine(const NatOracle& f, std::size_t p, std::size_t n, std::uint64_t verify_bound) {
  if (p == 1) throw NotAffineComplete();
  if (p == 0) throw PreconditionError("synthesize_affine: dimension must be positive");
  AffineSynthesis result;
  std::vector<NatVec> args(n, NatVec::zero(p));
  const NatVec c = f(args);
  if (c.dimension() != p) throw PreconditionError("synthesize_affine: oracle returned a vector of the wrong dimension");
  AffineMap candidate{c, {}};
  for (std::size_t i = 0; i < n; ++i) {
    args.assign(n, NatVec::zero(p));
    args[i] = NatVec::unit(p, 0);
    const std::uint64_t len = f(args).length();
    if (len < c.length()) {
      result.witness = args;
      result.reason = "negative coefficient for argument " + std::to_string(i + 1);
      return result;
    }
    candidate.coefficients.push_back(len - c.length());
  }

  // Odometer over all n·p entries in [0, verify_bound].
  std::vector<std::uint64_t> digits(n * p, 0);
  while (true) {
    args.clear();
    for (std::size_t i = 0; i < n; ++i)
      args.emplace_back(std::vector<std::uint64_t>(digits.begin() + static_cast<std::ptrdiff_t>(i * p),
                                                   digits.begin() + static_cast<std::ptrdiff_t>((i + 1) * p)));
    const NatVec got = f(args);
    const NatVec want = candidate(args);
    std::uint64_t predicted_length = c.length();
    for (std::size_t i = 0; i < n; ++i) predicted_length += candidate.coefficients[i] * args[i].length();
    if (got.dimension() != p || !(got == want) || got.length() != predicted_length) {
      result.witness = args;
      result.reason = "component law fails: f" + [&] {
        std::string s = "(";
        for (std::size_t i = 0; i < n; ++i) s += (i ? "," : "") + args[i].to_string();
        return s + ")";
      }() + " = " + got.to_string() + " but the recovered map gives " + want.to_string();
      return result;
    }
    std::size_t pos = digits.size();
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++digits[pos] <= verify_bound) {
        done = false;
        break;
      }
      digits[pos] = 0;
    }
    if (done) break;
  }
  result.map = candidate;
  return result;
}

}  // namespace affina::numeric
