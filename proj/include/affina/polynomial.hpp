#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "affina/error.hpp"
#include "affina/object.hpp"
#include "affina/text.hpp"

namespace affina {

/// Structural substitution: every atom for which `image(symbol)` yields an
/// object is replaced by it; other atoms are kept. Trees are rebuilt through
/// `star`, so ⊥⋆⊥ collapses to ⊥.
template <class Image>
Object substitute(const Object& body, Image&& image) {
  if (body.mode() == Mode::word) {
    std::vector<Symbol> out;
    out.reserve(body.length());
    for (Symbol s : body.symbols()) {
      if (std::optional<Object> img = image(s)) {
        if (img->mode() != Mode::word) throw ModeMismatch("substitute: tree image inside a word");
        auto syms = img->symbols();
        out.insert(out.end(), syms.begin(), syms.end());
      } else {
        out.push_back(s);
      }
    }
    return Object::word(std::move(out));
  }
  auto walk = [&](auto&& self, const detail::TreePtr& t) -> detail::TreePtr {
    if (!t) return t;
    if (t->leaf) {
      if (std::optional<Object> img = image(t->symbol)) {
        if (img->mode() != Mode::tree) throw ModeMismatch("substitute: word image inside a tree");
        return img->tree();
      }
      return t;
    }
    detail::TreePtr l = self(self, t->left);
    detail::TreePtr r = self(self, t->right);
    if (l == t->left && r == t->right) return t;
    return detail::make_node(std::move(l), std::move(r));
  };
  return Object::from_tree(walk(walk, body.tree()));
}

/// An n-ary polynomial: an object over Σ ∪ {x1..xn}.
class Polynomial {
 public:
  Polynomial() = default;

  /// Arity defaults to the largest variable index occurring in `body`.
  explicit Polynomial(Object body) : body_(std::move(body)) {
    for_each_symbol(body_, [&](Symbol s) {
      if (s.is_hole()) throw PreconditionError("polynomial must not contain the hole y");
      if (s.is_variable()) arity_ = std::max<std::size_t>(arity_, s.variable_index());
    });
  }

  Polynomial(Object body, std::size_t arity) : Polynomial(std::move(body)) {
    if (arity_ > arity) throw PreconditionError("polynomial uses x" + std::to_string(arity_) + " beyond its arity " + std::to_string(arity));
    arity_ = arity;
  }

  const Object& body() const { return body_; }
  std::size_t arity() const { return arity_; }
  Mode mode() const { return body_.mode(); }
  std::size_t size() const { return body_.size(); }

  /// ⟨k₁..kₙ⟩ with kᵢ the number of occurrences of xᵢ.
  std::vector<std::size_t> multidegree() const {
    std::vector<std::size_t> degree(arity_, 0);
    for_each_symbol(body_, [&](Symbol s) {
      if (s.is_variable()) ++degree[s.variable_index() - 1];
    });
    return degree;
  }

  std::size_t degree() const {
    std::size_t total = 0;
    for (std::size_t k : multidegree()) total += k;
    return total;
  }

  friend bool operator==(const Polynomial& p, const Polynomial& q) { return p.arity_ == q.arity_ && p.body_ == q.body_; }

 private:
  Object body_;
  std::size_t arity_ = 0;
};

inline std::string to_string(const Polynomial& p) { return to_string(p.body()); }

/// Evaluates P(args) by substituting args[i-1] for xi.
inline Object eval(const Polynomial& p, std::span<const Object> args) {
  if (args.size() < p.arity())
    throw PreconditionError("eval: polynomial of arity " + std::to_string(p.arity()) + " given " + std::to_string(args.size()) + " arguments");
  for (const Object& a : args)
    if (a.mode() != p.mode()) throw ModeMismatch("eval: argument from a different algebra");
  return substitute(p.body(), [&](Symbol s) -> std::optional<Object> {
    if (s.is_variable()) return args[s.variable_index() - 1];
    return std::nullopt;
  });
}

inline Object eval(const Polynomial& p, std::initializer_list<Object> args) {
  return eval(p, std::span<const Object>(args.begin(), args.size()));
}

/// |P(u⃗)| = |P(⊥⃗)| + Σ kᵢ·|uᵢ|; always true, kept as a test hook.
inline bool length_law_check(const Polynomial& p, std::span<const Object> args) {
  std::vector<Object> bottoms(args.size(), Object::empty(p.mode()));
  std::size_t expected = eval(p, bottoms).length();
  auto degree = p.multidegree();
  for (std::size_t i = 0; i < degree.size(); ++i) expected += degree[i] * args[i].length();
  return eval(p, args).length() == expected;
}

/// A one-hole context: an object over Σ ∪ {y} with exactly one y.
class ContextPolynomial {
 public:
  explicit ContextPolynomial(Object body) : body_(std::move(body)) {
    std::size_t holes = 0;
    for_each_symbol(body_, [&](Symbol s) {
      if (s.is_variable()) throw PreconditionError("context must not contain polynomial variables");
      holes += s.is_hole();
    });
    if (holes != 1) throw PreconditionError("context must contain exactly one hole, found " + std::to_string(holes));
  }

  static ContextPolynomial hole(Mode mode) { return ContextPolynomial(Object::atom(mode, Symbol::hole())); }

  const Object& body() const { return body_; }
  Mode mode() const { return body_.mode(); }

  Object operator()(const Object& u) const {
    if (u.mode() != mode()) throw ModeMismatch("context applied to an object of a different algebra");
    return substitute(body_, [&](Symbol s) -> std::optional<Object> {
      if (s.is_hole()) return u;
      return std::nullopt;
    });
  }

  friend bool operator==(const ContextPolynomial&, const ContextPolynomial&) = default;

 private:
  Object body_;
};

inline std::string to_string(const ContextPolynomial& c) { return to_string(c.body()); }

/// Position of a sub-object: a start index for words, a root-to-node path for trees.
struct Occurrence {
  std::size_t start = 0;
  std::vector<Side> path;
};

namespace detail {

// Preorder walk (node, then left, then right) over every subtree position,
// including empty children. `visit` returns false to stop.
template <class Visit>
bool walk_positions(const TreePtr& t, std::vector<Side>& path, Visit& visit) {
  if (!visit(t, path)) return false;
  if (!t || t->leaf) return true;
  path.push_back(Side::left);
  bool go_on = walk_positions(t->left, path, visit);
  path.pop_back();
  if (!go_on) return false;
  path.push_back(Side::right);
  go_on = walk_positions(t->right, path, visit);
  path.pop_back();
  return go_on;
}

inline TreePtr rebuild_at(const TreePtr& t, std::span<const Side> path, const TreePtr& replacement) {
  if (path.empty()) return replacement;
  if (!t || t->leaf) throw PreconditionError("occurrence path leaves the tree");
  if (path.front() == Side::left) return make_node(rebuild_at(t->left, path.subspan(1), replacement), t->right);
  return make_node(t->left, rebuild_at(t->right, path.subspan(1), replacement));
}

}  // namespace detail

/// Every occurrence of `u` in `t`, leftmost first (word: by start index;
/// tree: the node itself before its left subtree before its right subtree).
/// Stops after `limit` hits.
inline std::vector<Occurrence> find_occurrences(const Object& t, const Object& u, std::size_t limit = SIZE_MAX) {
  if (t.mode() != u.mode()) throw ModeMismatch("find_occurrences: operands from different algebras");
  std::vector<Occurrence> found;
  if (limit == 0) return found;
  if (t.mode() == Mode::word) {
    auto hay = t.symbols();
    auto needle = u.symbols();
    if (needle.size() > hay.size()) return found;
    for (std::size_t i = 0; i + needle.size() <= hay.size() && found.size() < limit; ++i) {
      if (std::equal(needle.begin(), needle.end(), hay.begin() + static_cast<std::ptrdiff_t>(i))) found.push_back({i, {}});
    }
    return found;
  }
  const detail::TreePtr& target = u.tree();
  const std::size_t target_size = u.size();
  std::vector<Side> path;
  auto visit = [&](const detail::TreePtr& node, const std::vector<Side>& p) {
    if (detail::tree_equal(node, target)) {
      found.push_back({0, p});
      return found.size() < limit;
    }
    return true;
  };
  // Subtrees smaller than the pattern cannot contain it.
  if (t.size() < target_size) return found;
  detail::walk_positions(t.tree(), path, visit);
  return found;
}

inline std::optional<Occurrence> first_occurrence(const Object& t, const Object& u) {
  auto all = find_occurrences(t, u, 1);
  if (all.empty()) return std::nullopt;
  return std::move(all.front());
}

/// Replaces the occurrence `at` of a sub-object of length `pattern_length`
/// (words) by `replacement`.
inline Object replace_at(const Object& t, const Occurrence& at, std::size_t pattern_length, const Object& replacement) {
  if (t.mode() != replacement.mode()) throw ModeMismatch("replace_at: operands from different algebras");
  if (t.mode() == Mode::word) {
    auto syms = t.symbols();
    if (at.start + pattern_length > syms.size()) throw PreconditionError("replace_at: occurrence out of range");
    std::vector<Symbol> out(syms.begin(), syms.begin() + static_cast<std::ptrdiff_t>(at.start));
    auto rep = replacement.symbols();
    out.insert(out.end(), rep.begin(), rep.end());
    out.insert(out.end(), syms.begin() + static_cast<std::ptrdiff_t>(at.start + pattern_length), syms.end());
    return Object::word(std::move(out));
  }
  return Object::from_tree(detail::rebuild_at(t.tree(), at.path, replacement.tree()));
}

/// Leftmost context C with C(u) = t, or nothing when u is not a sub-object of t.
inline std::optional<ContextPolynomial> find_occurrence(const Object& t, const Object& u) {
  auto occ = first_occurrence(t, u);
  if (!occ) return std::nullopt;
  return ContextPolynomial(replace_at(t, *occ, u.length(), Object::atom(t.mode(), Symbol::hole())));
}

}  // namespace affina
