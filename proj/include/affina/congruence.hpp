#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>

#include "affina/closure.hpp"
#include "affina/error.hpp"
#include "affina/object.hpp"
#include "affina/rewriting.hpp"
#include "affina/text.hpp"

namespace affina {

namespace congruence {

/// ~(u,v): generated by all pairs ⟨C(u), C(v)⟩.
struct Principal {
  Object u;
  Object v;
};
/// Same length.
struct TotalLength {};
/// Same number of occurrences of a letter.
struct LetterCount {
  Symbol letter;
};
/// Same first letter (words); ε is alone in its class.
struct FirstLetter {};
/// Trees: u = v ∈ Σ, or u, v ∉ Σ with the same number of left (right) leaves.
struct LeafSideCount {
  Side side;
};
/// Length modulo m.
struct LengthMod {
  std::size_t modulus;
};

}  // namespace congruence

using CongruenceSpec = std::variant<congruence::Principal, congruence::TotalLength, congruence::LetterCount,
                                    congruence::FirstLetter, congruence::LeafSideCount, congruence::LengthMod>;

inline std::string describe(const CongruenceSpec& spec) {
  struct {
    std::string operator()(const congruence::Principal& p) const { return "principal(" + to_string(p.u) + "," + to_string(p.v) + ")"; }
    std::string operator()(const congruence::TotalLength&) const { return "length"; }
    std::string operator()(const congruence::LetterCount& c) const { return "letter-count(" + c.letter.to_string() + ")"; }
    std::string operator()(const congruence::FirstLetter&) const { return "first-letter"; }
    std::string operator()(const congruence::LeafSideCount& c) const { return c.side == Side::left ? "leaf-side(left)" : "leaf-side(right)"; }
    std::string operator()(const congruence::LengthMod& c) const { return "length-mod(" + std::to_string(c.modulus) + ")"; }
  } visitor;
  return std::visit(visitor, spec);
}

/// Decides a congruence by mapping each object to a class key. Principal
/// congruences with a generator in the curated set use Red* canonical forms;
/// other principal congruences fall back to the bounded closure oracle and
/// cannot classify objects beyond its bound.
class CongruenceDecider {
 public:
  CongruenceDecider(CongruenceSpec spec, Mode mode, Alphabet alphabet, std::size_t closure_bound = 5,
                    ClosureOptions closure_options = {})
      : spec_(std::move(spec)), mode_(mode), alphabet_(std::move(alphabet)) {
    if (std::holds_alternative<congruence::FirstLetter>(spec_) && mode_ != Mode::word)
      throw PreconditionError("first-letter congruence is defined on words only");
    if (std::holds_alternative<congruence::LeafSideCount>(spec_) && mode_ != Mode::tree)
      throw PreconditionError("leaf-side congruence is defined on trees only");
    if (auto* lm = std::get_if<congruence::LengthMod>(&spec_); lm && lm->modulus == 0)
      throw PreconditionError("length-mod congruence needs a positive modulus");
    if (auto* lc = std::get_if<congruence::LetterCount>(&spec_); lc && !alphabet_.contains(lc->letter))
      throw PreconditionError("letter-count congruence: letter not in the alphabet");
    if (auto* p = std::get_if<congruence::Principal>(&spec_)) {
      if (p->u.mode() != mode_ || p->v.mode() != mode_) throw ModeMismatch("principal congruence generators from another algebra");
      Object u = p->u, v = p->v;
      if (!in_ct(u, alphabet_) && in_ct(v, alphabet_)) std::swap(u, v);
      if (in_ct(u, alphabet_) && v.length() < u.length()) {
        canonical_ = ReductionSpec{u, v};
      } else {
        closure_bound_ = closure_bound;
        auto partition = closure_oracle(p->u, p->v, closure_bound, alphabet_, closure_options);
        for (std::size_t i = 0; i < partition.classes.size(); ++i)
          for (const Object& m : partition.classes[i]) closure_class_.emplace(m, i);
      }
    }
  }

  const CongruenceSpec& spec() const { return spec_; }

  /// True when keys come from canonical forms or class functions rather than a bounded oracle.
  bool exact() const { return !std::holds_alternative<congruence::Principal>(spec_) || canonical_.has_value(); }

  /// Class key of `u`, or nothing when `u` lies outside the decidable range.
  std::optional<std::string> key(const Object& u) const {
    if (u.mode() != mode_) throw ModeMismatch("congruence key: object from another algebra");
    struct Visitor {
      const CongruenceDecider& self;
      const Object& u;
      std::optional<std::string> operator()(const congruence::Principal&) const {
        if (self.canonical_) return to_string(reduce_star(u, *self.canonical_));
        auto it = self.closure_class_.find(u);
        if (it == self.closure_class_.end()) return std::nullopt;
        return std::to_string(it->second);
      }
      std::optional<std::string> operator()(const congruence::TotalLength&) const { return std::to_string(u.length()); }
      std::optional<std::string> operator()(const congruence::LetterCount& c) const { return std::to_string(symbol_count(u, c.letter)); }
      std::optional<std::string> operator()(const congruence::FirstLetter&) const {
        return u.is_empty() ? std::string() : u.symbols().front().to_string();
      }
      std::optional<std::string> operator()(const congruence::LeafSideCount& c) const {
        if (u.is_atom()) return "atom " + u.atom_symbol().to_string();
        return std::to_string(leaf_side_count(u, c.side));
      }
      std::optional<std::string> operator()(const congruence::LengthMod& c) const { return std::to_string(u.length() % c.modulus); }
    };
    return std::visit(Visitor{*this, u}, spec_);
  }

  /// Whether x ~ y; nothing when undecidable at the configured bound.
  std::optional<bool> congruent(const Object& x, const Object& y) const {
    auto kx = key(x);
    auto ky = key(y);
    if (!kx || !ky) return std::nullopt;
    return *kx == *ky;
  }

 private:
  CongruenceSpec spec_;
  Mode mode_;
  Alphabet alphabet_;
  std::optional<ReductionSpec> canonical_;
  std::size_t closure_bound_ = 0;
  std::unordered_map<Object, std::size_t, ObjectHash> closure_class_;
};

}  // namespace affina
