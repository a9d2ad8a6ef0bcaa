#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "affina/congruence.hpp"
#include "affina/enumerate.hpp"
#include "affina/error.hpp"
#include "affina/object.hpp"
#include "affina/oracle.hpp"
#include "affina/polynomial.hpp"
#include "affina/rewriting.hpp"
#include "affina/text.hpp"

namespace affina {

inline std::string format_tuple(std::span<const Object> tuple) {
  std::string out = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) out += (i ? ", " : "") + to_string(tuple[i]);
  return out + ")";
}

/// The lengths of f's values are not an affine function of the argument
/// lengths, so f is not congruence preserving.
class AffineLawViolation : public Error {
 public:
  AffineLawViolation(const std::string& what, std::vector<Object> witness)
      : Error(what + " at " + format_tuple(witness)), witness_(std::move(witness)) {}

  const std::vector<Object>& witness() const { return witness_; }

 private:
  std::vector<Object> witness_;
};

/// |f(⊥,…,σ,…,⊥)| < |f(⊥,…,⊥)|: no natural multidegree exists.
class NegativeDegree : public AffineLawViolation {
 public:
  NegativeDegree(std::size_t index, std::vector<Object> witness)
      : AffineLawViolation("negative degree in argument " + std::to_string(index + 1), std::move(witness)), index_(index) {}

  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

struct LengthProfile {
  std::size_t base = 0;                   // |f(⊥,…,⊥)|
  std::vector<std::size_t> multidegree;  // ⟨k₁..kₙ⟩
  // λ: argument lengths ↦ |f|, on the sampled grid.
  std::map<std::vector<std::size_t>, std::size_t> lambda;
  // λ_σ: per-argument counts of σ ↦ count of σ in f, per letter.
  std::map<Symbol, std::map<std::vector<std::size_t>, std::size_t>> letter_lambda;

  std::size_t degree() const {
    std::size_t k = 0;
    for (std::size_t d : multidegree) k += d;
    return k;
  }

  std::size_t predicted_length(std::span<const Object> args) const {
    std::size_t len = base;
    for (std::size_t i = 0; i < multidegree.size(); ++i) len += multidegree[i] * args[i].length();
    return len;
  }
};

struct ExtractOptions {
  std::size_t grid_bound = 3;  // sample objects of measure ≤ grid_bound
};

/// kᵢ = |f(⊥,…,σ at i,…,⊥)| − |f(⊥,…,⊥)|, then checks the affine length law
/// and the well-definedness of the per-letter count functions on a grid.
inline LengthProfile extract_multidegree(const FunctionOracle& f, const Alphabet& alphabet, ExtractOptions options = {}) {
  if (f.mode() == Mode::word && alphabet.size() < 2) throw PreconditionError("extract_multidegree: words need at least two letters");
  const Mode mode = f.mode();
  const std::size_t n = f.arity();
  const Object bottom = Object::empty(mode);
  const Object sigma = Object::atom(mode, alphabet.a());

  LengthProfile profile;
  std::vector<Object> args(n, bottom);
  profile.base = f(args).length();
  for (std::size_t i = 0; i < n; ++i) {
    args.assign(n, bottom);
    args[i] = sigma;
    const std::size_t len = f(args).length();
    if (len < profile.base) throw NegativeDegree(i, args);
    profile.multidegree.push_back(len - profile.base);
  }

  const auto letters = alphabet.symbols();
  const auto grid = objects_up_to(mode, alphabet, options.grid_bound);
  for_each_tuple(grid, n, [&](const std::vector<Object>& tuple) {
    const Object image = f(tuple);
    std::vector<std::size_t> lengths;
    for (const Object& u : tuple) lengths.push_back(u.length());
    if (image.length() != profile.predicted_length(tuple))
      throw AffineLawViolation("length " + std::to_string(image.length()) + " differs from the affine prediction " +
                                   std::to_string(profile.predicted_length(tuple)),
                               tuple);
    profile.lambda.emplace(lengths, image.length());
    for (Symbol s : letters) {
      std::vector<std::size_t> counts;
      for (const Object& u : tuple) counts.push_back(symbol_count(u, s));
      auto [it, fresh] = profile.letter_lambda[s].emplace(counts, symbol_count(image, s));
      if (!fresh && it->second != symbol_count(image, s))
        throw AffineLawViolation("count of '" + s.to_string() + "' in the value is not a function of its counts in the arguments", tuple);
    }
    return true;
  });
  return profile;
}

/// Agreement on all tuples of length-1 objects (letters; for trees also σ⋆⊥
/// and ⊥⋆σ). Agreement forces structural equality, which is checked.
inline bool polynomials_equal_on_letters(const Polynomial& p, const Polynomial& q, const Alphabet& alphabet) {
  if (p.mode() != q.mode()) throw ModeMismatch("polynomials_equal_on_letters: polynomials from different algebras");
  if (p.arity() != q.arity() || p.multidegree() != q.multidegree())
    throw PreconditionError("polynomials_equal_on_letters: multidegree mismatch");
  if (p.mode() == Mode::word && alphabet.size() < 2)
    throw PreconditionError("polynomials_equal_on_letters: words need at least two letters");
  std::vector<Object> pool;
  for (Symbol s : alphabet.symbols()) pool.push_back(Object::atom(p.mode(), s));
  if (p.mode() == Mode::tree) {
    const Object a = Object::atom(Mode::tree, alphabet.a());
    const Object bottom = Object::empty(Mode::tree);
    pool.push_back(star(a, bottom));
    pool.push_back(star(bottom, a));
  }
  const bool agree = for_each_tuple(pool, p.arity(), [&](const std::vector<Object>& t) { return eval(p, t) == eval(q, t); });
  if (agree && !(p == q))
    throw std::logic_error("polynomials " + to_string(p) + " and " + to_string(q) + " agree on length-1 arguments but differ");
  return agree;
}

struct SynthesisOptions {
  std::size_t verify_len = 4;  // verification grid: objects of measure ≤ verify_len
  std::size_t grid_bound = 3;  // multidegree extraction grid
  std::size_t max_retries = 4;
};

/// The curated tau picked at one level of the recursion on arity.
struct TauChoice {
  std::size_t arity = 0;
  std::size_t degree = 0;      // k = Σ kᵢ
  std::size_t image_of_a = 0;  // |f(a,…,a)|
  Object tau;
};

struct SynthesisFailure {
  std::vector<Object> witness;  // arguments where the candidate and f disagree
  Object expected;              // f(witness)
  Object actual;                // candidate(witness)
  std::string reason;
};

struct SynthesisResult {
  std::optional<Polynomial> polynomial;
  std::optional<SynthesisFailure> failure;
  std::vector<TauChoice> trace;

  explicit operator bool() const { return polynomial.has_value(); }
};

namespace detail {

inline void synthesize_level(const FunctionOracle& f, const Alphabet& alphabet, const SynthesisOptions& options,
                             const std::vector<Object>& grid, SynthesisResult& result) {
  const Mode mode = f.mode();
  if (f.arity() == 0) {
    result.polynomial = Polynomial(f(std::span<const Object>{}), 0);
    return;
  }
  const std::size_t n = f.arity() - 1;
  const LengthProfile profile = extract_multidegree(f, alphabet, ExtractOptions{options.grid_bound});
  const std::size_t k = profile.degree();
  const std::size_t image_of_a = f(std::vector<Object>(f.arity(), Object::atom(mode, alphabet.a()))).length();

  std::size_t longest_arg = 0;
  for (const Object& u : grid) longest_arg = std::max(longest_arg, u.length());
  std::size_t predicted = profile.base;
  for (std::size_t d : profile.multidegree) predicted += d * longest_arg;
  std::size_t min_len = std::max({image_of_a + 1, 2 * k + 4, predicted + 1, longest_arg + 1});

  for (std::size_t attempt = 0; attempt <= options.max_retries; ++attempt) {
    const Object tau = smallest_ct(mode, min_len, alphabet);
    if (!(tau.length() > image_of_a && tau.length() >= 2 * k + 4 && in_ct(tau, alphabet)))
      throw std::logic_error("synthesize: tau choice violates its length constraints");
    result.trace.push_back(TauChoice{f.arity(), k, image_of_a, tau});

    SynthesisResult sub;
    synthesize_level(f.section(tau), alphabet, options, grid, sub);
    result.trace.insert(result.trace.end(), sub.trace.begin(), sub.trace.end());
    if (!sub.polynomial) {
      result.failure = std::move(sub.failure);
      result.failure->witness.push_back(tau);
      return;
    }
    const Polynomial section_poly(sub.polynomial->body(), n);
    const Polynomial candidate = polynomial_reduce(section_poly, tau, static_cast<unsigned>(n + 1), alphabet);

    bool grow = false;
    std::optional<SynthesisFailure> failure;
    for_each_tuple(grid, f.arity(), [&](const std::vector<Object>& tuple) {
      Object expected = f(tuple);
      if (expected.length() >= tau.length()) {
        grow = true;
        min_len = expected.length() + 1;
        return false;
      }
      Object actual = eval(candidate, tuple);
      if (!(actual == expected)) {
        failure = SynthesisFailure{tuple, std::move(expected), std::move(actual), "candidate polynomial disagrees with f"};
        return false;
      }
      return true;
    });
    if (grow) continue;
    if (failure) {
      result.failure = std::move(failure);
      return;
    }
    result.polynomial = candidate;
    return;
  }
  result.failure = SynthesisFailure{{}, Object::empty(mode), Object::empty(mode), "no tau long enough for the verification grid"};
}

}  // namespace detail

/// Reconstructs the polynomial of a congruence-preserving f by recursion on
/// arity: the section f(·,…,·,tau) is synthesized, its occurrences of tau
/// are rewritten into the last variable, and the candidate is checked on
/// every tuple of measure ≤ verify_len. A disagreement is reported as a
/// failure witness, which shows f is not congruence preserving.
inline SynthesisResult synthesize(const FunctionOracle& f, const Alphabet& alphabet, SynthesisOptions options = {}) {
  if (f.mode() == Mode::word && alphabet.size() < 2) throw PreconditionError("synthesize: words need at least two letters");
  const auto grid = objects_up_to(f.mode(), alphabet, options.verify_len);
  SynthesisResult result;
  detail::synthesize_level(f, alphabet, options, grid, result);
  return result;
}

struct RefuteOptions {
  std::size_t budget = 10'000;    // oracle queries
  std::size_t sample_bound = 3;   // candidate arguments, by measure
  std::size_t context_bound = 3;  // contexts for principal congruences
  std::size_t filler_bound = 1;   // values of the arguments that are kept fixed
  std::size_t closure_bound = 5;  // bounded oracle for non-canonical principal congruences
};

struct RefutationWitness {
  std::string family;
  std::vector<Object> lhs;
  std::vector<Object> rhs;
  Object lhs_image;
  Object rhs_image;
};

struct RefutationReport {
  std::optional<RefutationWitness> witness;
  std::vector<std::string> warnings;
  std::size_t queries = 0;
};

/// Searches for componentwise congruent argument tuples with non-congruent
/// images. No witness within the budget is inconclusive, not a proof.
inline RefutationReport refute_cp(const FunctionOracle& f, std::span<const CongruenceSpec> families, const Alphabet& alphabet,
                                  RefuteOptions options = {}) {
  RefutationReport report;
  const Mode mode = f.mode();
  const std::size_t n = f.arity();
  const std::size_t start = f.queries();
  std::unordered_map<std::string, Object> cache;
  auto spent = [&] { return f.queries() - start; };
  // Cached image of a tuple; nothing once a fresh query would exceed the budget.
  auto query = [&](const std::vector<Object>& tuple) -> const Object* {
    const std::string key = format_tuple(tuple);
    auto it = cache.find(key);
    if (it == cache.end()) {
      if (spent() >= options.budget) return nullptr;
      it = cache.emplace(key, f(tuple)).first;
    }
    return &it->second;
  };

  if (n == 0) {
    report.warnings.push_back("nullary function: every constant preserves all congruences");
    return report;
  }

  const auto sample = objects_up_to(mode, alphabet, options.sample_bound);
  const auto fillers = objects_up_to(mode, alphabet, options.filler_bound);

  for (const CongruenceSpec& family : families) {
    std::optional<CongruenceDecider> decider;
    try {
      decider.emplace(family, mode, alphabet, options.closure_bound);
    } catch (const Error& e) {
      report.warnings.push_back("skipped " + describe(family) + ": " + e.what());
      continue;
    }

    std::vector<std::pair<Object, Object>> pairs;
    if (const auto* p = std::get_if<congruence::Principal>(&family)) {
      for (const ContextPolynomial& c : contexts_up_to(mode, alphabet, options.context_bound)) pairs.emplace_back(c(p->u), c(p->v));
    } else {
      std::map<std::string, std::vector<Object>> groups;
      for (const Object& u : sample)
        if (auto k = decider->key(u)) groups[*k].push_back(u);
      for (const auto& [key, members] : groups)
        for (std::size_t i = 0; i < members.size(); ++i)
          for (std::size_t j = i + 1; j < members.size(); ++j) pairs.emplace_back(members[i], members[j]);
    }
    if (!decider->exact())
      report.warnings.push_back(describe(family) + " is decided by a bounded closure; images beyond the bound are skipped");

    for (const auto& [x, x2] : pairs) {
      if (spent() >= options.budget) break;
      for (std::size_t pos = 0; pos < n && !report.witness && spent() < options.budget; ++pos) {
        for_each_tuple(fillers, n - 1, [&](const std::vector<Object>& rest) {
          if (spent() >= options.budget) return false;
          std::vector<Object> lhs(rest), rhs(rest);
          lhs.insert(lhs.begin() + static_cast<std::ptrdiff_t>(pos), x);
          rhs.insert(rhs.begin() + static_cast<std::ptrdiff_t>(pos), x2);
          const Object* lp = query(lhs);
          const Object* rp = lp ? query(rhs) : nullptr;
          if (!rp) return false;
          const Object li = *lp, ri = *rp;
          auto same = decider->congruent(li, ri);
          if (!same || *same) return true;
          // Re-check every argument pair with the deciding procedure before reporting.
          for (std::size_t i = 0; i < n; ++i) {
            auto args_ok = decider->congruent(lhs[i], rhs[i]);
            if (!args_ok || !*args_ok) return true;
          }
          report.witness = RefutationWitness{describe(family), lhs, rhs, li, ri};
          return false;
        });
      }
      if (report.witness) break;
    }
    if (report.witness || spent() >= options.budget) break;
  }
  report.queries = spent();
  return report;
}

}  // namespace affina
