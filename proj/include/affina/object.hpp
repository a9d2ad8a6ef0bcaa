#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "affina/error.hpp"
#include "affina/symbol.hpp"

namespace affina {

/// Which binary algebra an object lives in: the free monoid or leaf-labelled binary trees.
enum class Mode : std::uint8_t { word, tree };

inline const char* to_string(Mode mode) { return mode == Mode::word ? "word" : "tree"; }

namespace detail {

inline std::size_t hash_mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct TreeNode {
  // A leaf when both children are null; otherwise an inner node (at most one
  // child may be null, i.e. the empty tree).
  Symbol symbol;
  std::shared_ptr<const TreeNode> left;
  std::shared_ptr<const TreeNode> right;
  bool leaf = false;
  std::size_t length = 0;
  std::size_t size = 0;
  std::size_t hash = 0;
};

using TreePtr = std::shared_ptr<const TreeNode>;

inline std::size_t tree_hash(const TreePtr& t) { return t ? t->hash : 0x51ed270b2e3f5a1dULL; }
inline std::size_t tree_length(const TreePtr& t) { return t ? t->length : 0; }
inline std::size_t tree_size(const TreePtr& t) { return t ? t->size : 0; }

inline TreePtr make_leaf(Symbol s) {
  auto n = std::make_shared<TreeNode>();
  n->symbol = s;
  n->leaf = true;
  n->length = 1;
  n->size = 1;
  n->hash = hash_mix(0x2545f4914f6cdd1dULL, std::hash<Symbol>{}(s));
  return n;
}

inline TreePtr make_node(TreePtr l, TreePtr r) {
  if (!l && !r) return nullptr;  // ⊥⋆⊥ is identified with ⊥
  auto n = std::make_shared<TreeNode>();
  n->length = tree_length(l) + tree_length(r);
  n->size = 1 + tree_size(l) + tree_size(r);
  n->hash = hash_mix(hash_mix(0x9ddfea08eb382d69ULL, tree_hash(l)), tree_hash(r));
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

inline bool tree_equal(const TreePtr& x, const TreePtr& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->hash != y->hash || x->length != y->length || x->size != y->size || x->leaf != y->leaf) return false;
  if (x->leaf) return x->symbol == y->symbol;
  return tree_equal(x->left, y->left) && tree_equal(x->right, y->right);
}

}  // namespace detail

/// An element of A(Σ): a word or a leaf-labelled binary tree over the extended
/// alphabet (letters, variables, hole). The empty object ⊥ is ε for words and
/// the empty tree for trees. Values are immutable.
class Object {
 public:
  Object() = default;

  static Object empty(Mode mode) { return Object(mode); }

  static Object atom(Mode mode, Symbol s) {
    Object o(mode);
    if (mode == Mode::word)
      o.word_.push_back(s);
    else
      o.tree_ = detail::make_leaf(s);
    return o;
  }

  static Object word(std::vector<Symbol> symbols) {
    Object o(Mode::word);
    o.word_ = std::move(symbols);
    return o;
  }

  static Object from_tree(detail::TreePtr t) {
    Object o(Mode::tree);
    o.tree_ = std::move(t);
    return o;
  }

  /// The algebra operation: concatenation for words, Node(u, v) for trees.
  static Object star(const Object& u, const Object& v) {
    if (u.mode_ != v.mode_) throw ModeMismatch("star: operands from different algebras");
    if (u.mode_ == Mode::word) {
      Object o(Mode::word);
      o.word_.reserve(u.word_.size() + v.word_.size());
      o.word_.insert(o.word_.end(), u.word_.begin(), u.word_.end());
      o.word_.insert(o.word_.end(), v.word_.begin(), v.word_.end());
      return o;
    }
    return from_tree(detail::make_node(u.tree_, v.tree_));
  }

  Mode mode() const { return mode_; }

  bool is_empty() const { return mode_ == Mode::word ? word_.empty() : tree_ == nullptr; }

  /// True for a single symbol (a letter, variable or hole); for trees, a leaf.
  bool is_atom() const { return mode_ == Mode::word ? word_.size() == 1 : (tree_ && tree_->leaf); }

  /// Tree mode: an inner node t₁⋆t₂ with ⟨t₁,t₂⟩ ≠ ⟨⊥,⊥⟩.
  bool is_node() const { return mode_ == Mode::tree && tree_ && !tree_->leaf; }

  Symbol atom_symbol() const {
    if (!is_atom()) throw PreconditionError("atom_symbol: object is not a single symbol");
    return mode_ == Mode::word ? word_.front() : tree_->symbol;
  }

  /// Number of symbol occurrences (letters, variables and holes).
  std::size_t length() const { return mode_ == Mode::word ? word_.size() : detail::tree_length(tree_); }

  /// Symbol count s(P): trees count letters, variables and ⋆ nodes; words use the length.
  std::size_t size() const { return mode_ == Mode::word ? word_.size() : detail::tree_size(tree_); }

  std::span<const Symbol> symbols() const {
    if (mode_ != Mode::word) throw ModeMismatch("symbols: not a word");
    return word_;
  }

  const detail::TreePtr& tree() const {
    if (mode_ != Mode::tree) throw ModeMismatch("tree: not a tree");
    return tree_;
  }

  Object left() const {
    if (!is_node()) throw PreconditionError("left: object is not an inner tree node");
    return from_tree(tree_->left);
  }

  Object right() const {
    if (!is_node()) throw PreconditionError("right: object is not an inner tree node");
    return from_tree(tree_->right);
  }

  std::size_t hash() const {
    if (mode_ == Mode::tree) return detail::tree_hash(tree_);
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Symbol s : word_) h = detail::hash_mix(h, std::hash<Symbol>{}(s));
    return h;
  }

  friend bool operator==(const Object& x, const Object& y) {
    if (x.mode_ != y.mode_) return false;
    if (x.mode_ == Mode::word) return x.word_ == y.word_;
    return detail::tree_equal(x.tree_, y.tree_);
  }

 private:
  explicit Object(Mode mode) : mode_(mode) {}

  Mode mode_ = Mode::word;
  std::vector<Symbol> word_;
  detail::TreePtr tree_;
};

inline Object star(const Object& u, const Object& v) { return Object::star(u, v); }

inline std::size_t length(const Object& u) { return u.length(); }

/// Calls `fn(Symbol)` for every symbol occurrence, left to right.
template <class Fn>
void for_each_symbol(const Object& u, Fn&& fn) {
  if (u.mode() == Mode::word) {
    for (Symbol s : u.symbols()) fn(s);
    return;
  }
  auto walk = [&](auto&& self, const detail::TreePtr& t) -> void {
    if (!t) return;
    if (t->leaf) {
      fn(t->symbol);
      return;
    }
    self(self, t->left);
    self(self, t->right);
  };
  walk(walk, u.tree());
}

/// Occurrences of `s` in `u` (no alphabet check; works for variables too).
inline std::size_t symbol_count(const Object& u, Symbol s) {
  std::size_t n = 0;
  for_each_symbol(u, [&](Symbol x) { n += (x == s); });
  return n;
}

/// |u|_σ for a letter σ of the alphabet.
inline std::size_t letter_count(const Object& u, Symbol sigma, const Alphabet& alphabet) {
  if (!alphabet.contains(sigma)) throw PreconditionError("letter_count: '" + sigma.to_string() + "' is not in the alphabet");
  return symbol_count(u, sigma);
}

/// Whether every symbol of `u` is a letter (no variables, no hole).
inline bool is_ground(const Object& u) {
  bool ground = true;
  for_each_symbol(u, [&](Symbol s) { ground = ground && s.is_letter(); });
  return ground;
}

enum class Side : std::uint8_t { left, right };

/// Number of left (resp. right) leaves of a tree. A leaf child counts towards
/// the side it hangs on; a bare leaf has no side and counts 0 on both, so
/// left + right = length only for trees outside Σ.
inline std::size_t leaf_side_count(const Object& u, Side side) {
  if (u.mode() != Mode::tree) throw ModeMismatch("leaf_side_count: tree mode only");
  auto count = [side](auto&& self, const detail::TreePtr& t) -> std::size_t {
    if (!t || t->leaf) return 0;
    const auto& near = side == Side::left ? t->left : t->right;
    const auto& far = side == Side::left ? t->right : t->left;
    std::size_t n = self(self, far);
    n += (near && near->leaf) ? 1 : self(self, near);
    return n;
  };
  return count(count, u.tree());
}

struct ObjectHash {
  std::size_t operator()(const Object& o) const noexcept { return o.hash(); }
};

}  // namespace affina
