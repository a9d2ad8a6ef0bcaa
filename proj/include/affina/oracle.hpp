#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "affina/error.hpp"
#include "affina/object.hpp"
#include "affina/polynomial.hpp"

namespace affina {

/// A black-box total function A(Σ)ⁿ → A(Σ). Copies share one query counter;
/// the evaluator must be deterministic and safe to call concurrently.
class FunctionOracle {
 public:
  using Evaluator = std::function<Object(std::span<const Object>)>;

  FunctionOracle(std::size_t arity, Mode mode, Evaluator evaluator)
      : arity_(arity), mode_(mode), evaluator_(std::move(evaluator)), queries_(std::make_shared<std::atomic<std::size_t>>(0)) {}

  std::size_t arity() const { return arity_; }
  Mode mode() const { return mode_; }
  std::size_t queries() const { return queries_->load(); }

  Object operator()(std::span<const Object> args) const {
    if (args.size() != arity_)
      throw PreconditionError("oracle of arity " + std::to_string(arity_) + " queried with " + std::to_string(args.size()) + " arguments");
    for (const Object& a : args)
      if (a.mode() != mode_) throw ModeMismatch("oracle queried with an object of another algebra");
    queries_->fetch_add(1, std::memory_order_relaxed);
    Object out = evaluator_(args);
    if (out.mode() != mode_) throw ModeMismatch("oracle returned an object of another algebra");
    return out;
  }

  Object operator()(std::initializer_list<Object> args) const { return (*this)(std::span<const Object>(args.begin(), args.size())); }

  /// The (n-1)-ary section u⃗ ↦ f(u⃗, last). Queries count against this oracle.
  FunctionOracle section(Object last) const {
    if (arity_ == 0) throw PreconditionError("section of a nullary oracle");
    FunctionOracle parent = *this;
    FunctionOracle out(arity_ - 1, mode_, [parent, last = std::move(last)](std::span<const Object> args) {
      std::vector<Object> full(args.begin(), args.end());
      full.push_back(last);
      return parent(full);
    });
    return out;
  }

 private:
  std::size_t arity_;
  Mode mode_;
  Evaluator evaluator_;
  std::shared_ptr<std::atomic<std::size_t>> queries_;
};

namespace builtin {

/// u⃗ ↦ P(u⃗).
inline FunctionOracle polynomial(Polynomial p) {
  const std::size_t arity = p.arity();
  const Mode mode = p.mode();
  return FunctionOracle(arity, mode, [p = std::move(p)](std::span<const Object> args) { return eval(p, args); });
}

/// The constant function of the given arity.
inline FunctionOracle constant(Object value, std::size_t arity = 1) {
  const Mode mode = value.mode();
  return FunctionOracle(arity, mode, [value = std::move(value)](std::span<const Object>) { return value; });
}

/// Word reversal (unary).
inline FunctionOracle reverse() {
  return FunctionOracle(1, Mode::word, [](std::span<const Object> args) {
    auto s = args[0].symbols();
    return Object::word(std::vector<Symbol>(s.rbegin(), s.rend()));
  });
}

/// Recursively swaps the children of every tree node (unary).
inline FunctionOracle mirror() {
  return FunctionOracle(1, Mode::tree, [](std::span<const Object> args) {
    auto flip = [](auto&& self, const detail::TreePtr& t) -> detail::TreePtr {
      if (!t || t->leaf) return t;
      return detail::make_node(self(self, t->right), self(self, t->left));
    };
    return Object::from_tree(flip(flip, args[0].tree()));
  });
}

/// w ↦ σ₁^{|w|σ₁} ⋯ σₖ^{|w|σₖ} in alphabet order (unary, words).
inline FunctionOracle sort_letters(const Alphabet& alphabet) {
  return FunctionOracle(1, Mode::word, [letters = alphabet.symbols()](std::span<const Object> args) {
    std::vector<Symbol> out;
    for (Symbol s : letters) out.insert(out.end(), symbol_count(args[0], s), s);
    return Object::word(std::move(out));
  });
}

}  // namespace builtin

}  // namespace affina
