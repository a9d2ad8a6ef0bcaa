#include <gtest/gtest.h>

#include <random>

#include "affina/affina.hpp"
#include "support.hpp"

namespace affina {
namespace {

const Alphabet ab("ab");
const Alphabet abcd("abcd");

Object W(std::string_view s, const Alphabet& sigma = ab) { return parse_object(s, Mode::word, sigma); }
Object T(std::string_view s, const Alphabet& sigma = abcd) { return parse_object(s, Mode::tree, sigma); }
Object WP(std::string_view s) { return parse_object(s, Mode::word, ab, {.allow_variables = true}); }
Object TP(std::string_view s) { return parse_object(s, Mode::tree, abcd, {.allow_variables = true}); }

// Seven leaves: four are left children, three are right children.
const char* kSampleTree = "(a.(c.(a.(c.(((_.b).a).c)))))";

TEST(Alphabet, Validation) {
  EXPECT_THROW(Alphabet(""), PreconditionError);
  EXPECT_THROW(Alphabet("aa"), PreconditionError);
  EXPECT_THROW(Alphabet("a."), PreconditionError);
  EXPECT_EQ(Alphabet("ab").b(), Symbol::letter('b'));
  EXPECT_THROW(Alphabet("a").b(), PreconditionError);
}

TEST(Symbol, Kinds) {
  EXPECT_TRUE(Symbol::letter('a').is_letter());
  EXPECT_TRUE(Symbol::variable(3).is_variable());
  EXPECT_EQ(Symbol::variable(3).variable_index(), 3u);
  EXPECT_TRUE(Symbol::hole().is_hole());
  EXPECT_EQ(Symbol::variable(12).to_string(), "x12");
}

TEST(Star, NeutralElement) {
  EXPECT_EQ(star(Object::empty(Mode::word), W("ab")), W("ab"));
  EXPECT_EQ(star(W("ab"), Object::empty(Mode::word)), W("ab"));
  EXPECT_EQ(star(W("ab"), W("ba")), W("abba"));
}

TEST(Star, TreePaddingIsNotAnAtom) {
  const Object a = T("a");
  const Object padded = star(a, Object::empty(Mode::tree));
  EXPECT_EQ(padded.length(), 1u);
  EXPECT_FALSE(padded == a);
  EXPECT_FALSE(padded.is_atom());
  EXPECT_EQ(to_string(padded), "(a._)");
}

TEST(Star, EmptyStarEmptyIsEmpty) {
  const Object e = Object::empty(Mode::tree);
  EXPECT_TRUE(star(e, e).is_empty());
  EXPECT_EQ(T("(_._)"), e);
}

TEST(Star, ModeMismatch) { EXPECT_THROW(star(W("a"), T("a")), ModeMismatch); }

TEST(Length, Basics) {
  EXPECT_EQ(Object::empty(Mode::tree).length(), 0u);
  EXPECT_EQ(W("aababb").length(), 6u);
  EXPECT_EQ(star(T("(c.d)"), T("a")).length(), 3u);
  EXPECT_EQ(to_string(star(T("(c.d)"), T("a"))), "((c.d).a)");
}

TEST(Length, SampleTree) {
  const Object t = T(kSampleTree);
  EXPECT_EQ(t.length(), 7u);
  EXPECT_EQ(letter_count(t, Symbol::letter('a'), abcd), 3u);
  EXPECT_EQ(letter_count(t, Symbol::letter('b'), abcd) + letter_count(t, Symbol::letter('c'), abcd), 4u);
  EXPECT_EQ(leaf_side_count(t, Side::left), 4u);
  EXPECT_EQ(leaf_side_count(t, Side::right), 3u);
}

TEST(LeafSideCount, SmallCases) {
  EXPECT_EQ(leaf_side_count(Object::empty(Mode::tree), Side::left), 0u);
  EXPECT_EQ(leaf_side_count(Object::empty(Mode::tree), Side::right), 0u);
  EXPECT_EQ(leaf_side_count(T("(a._)"), Side::left), 1u);
  EXPECT_EQ(leaf_side_count(T("(a._)"), Side::right), 0u);
  EXPECT_EQ(leaf_side_count(T("a"), Side::left), 0u);
}

TEST(LeafSideCount, PartitionsTheLength) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const Object t = testing::random_tree(rng, abcd, 9);
    if (t.is_atom()) continue;
    EXPECT_EQ(leaf_side_count(t, Side::left) + leaf_side_count(t, Side::right), t.length()) << to_string(t);
  }
}

TEST(Size, Definition) {
  EXPECT_EQ(Object::empty(Mode::tree).size(), 0u);
  EXPECT_EQ(T("a").size(), 1u);
  EXPECT_EQ(T("(a.b)").size(), 3u);
  EXPECT_EQ(T("(a._)").size(), 2u);
  EXPECT_EQ(W("abab").size(), 4u);
}

TEST(Text, RoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const Object w = testing::random_word(rng, ab, 8);
    EXPECT_EQ(W(to_string(w)), w);
    const Object t = testing::random_tree(rng, abcd, 8);
    EXPECT_EQ(T(to_string(t)), t);
  }
  EXPECT_EQ(to_string(Object::empty(Mode::word)), "_");
  EXPECT_EQ(to_string(Object::empty(Mode::tree)), "_");
}

TEST(Text, ParseErrorsCarryPositions) {
  try {
    W("abz");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
  try {
    T("(a.b");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(T("(a b)"), ParseError);
  EXPECT_THROW(W(""), ParseError);
  EXPECT_THROW(W("x1"), ParseError);  // variables need allow_variables
  EXPECT_THROW(W("ay"), ParseError);  // no hole in a plain term
  EXPECT_THROW(T("(a.b)c"), ParseError);
}

TEST(Text, VariablesAndHole) {
  const Object p = WP("ax12b");
  ASSERT_EQ(p.length(), 3u);
  EXPECT_EQ(p.symbols()[1], Symbol::variable(12));
  const Object c = parse_object("(y.a)", Mode::tree, ab, {.allow_hole = true});
  EXPECT_TRUE(c.left().atom_symbol().is_hole());
}

TEST(ShortLex, Order) {
  EXPECT_TRUE(ShortLex{}(W("b"), W("aa")));
  EXPECT_TRUE(ShortLex{}(W("ab"), W("ba")));
  EXPECT_FALSE(ShortLex{}(W("ab"), W("ab")));
}

TEST(Tree, Decomposition) {
  // u ∈ Σ ∪ {⊥} or u = u₁⋆u₂ uniquely.
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const Object t = testing::random_tree(rng, abcd, 9);
    if (t.is_empty() || t.is_atom()) continue;
    ASSERT_TRUE(t.is_node());
    EXPECT_EQ(star(t.left(), t.right()), t);
  }
}

TEST(Length, Additivity) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const Mode m = i % 2 ? Mode::word : Mode::tree;
    const Object u = testing::random_object(rng, m, m == Mode::word ? ab : abcd, 7);
    const Object v = testing::random_object(rng, m, m == Mode::word ? ab : abcd, 7);
    EXPECT_EQ(star(u, v).length(), u.length() + v.length());
  }
}

// --- polynomials -----------------------------------------------------------

TEST(Polynomial, Multidegree) {
  const Polynomial p(TP("((b.x1).(x2.x1))"));
  EXPECT_EQ(p.arity(), 2u);
  EXPECT_EQ(p.multidegree(), (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(p.degree(), 3u);
  EXPECT_EQ(p.size(), 7u);
  EXPECT_EQ(Polynomial(WP("ax1"), 3).multidegree(), (std::vector<std::size_t>{1, 0, 0}));
  EXPECT_THROW(Polynomial(WP("ax2"), 1), PreconditionError);
}

TEST(Eval, Examples) {
  const Polynomial p(TP("((b.x1).x2)"));
  EXPECT_EQ(eval(p, {Object::empty(Mode::tree), T("(c.d)")}), T("((b._).(c.d))"));
  const Object u = T("((a.b).c)");
  EXPECT_EQ(eval(Polynomial(TP("x1")), {u}), u);
  EXPECT_EQ(eval(Polynomial(WP("ax1x1b")), {W("ba")}), W("ababab"));
  EXPECT_THROW(eval(p, {T("a")}), PreconditionError);
  EXPECT_THROW(eval(Polynomial(WP("x1")), {T("a")}), ModeMismatch);
}

TEST(Eval, SubstitutionCollapsesEmptyNodes) {
  // (x1.x2) at (⊥,⊥) is ⊥, not a node.
  EXPECT_TRUE(eval(Polynomial(TP("(x1.x2)")), {Object::empty(Mode::tree), Object::empty(Mode::tree)}).is_empty());
}

TEST(Eval, IsHomomorphic) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    const Polynomial p1(TP("(x1.(a.x2))")), p2(TP("(x2.b)"));
    const Object u = testing::random_tree(rng, abcd, 5), v = testing::random_tree(rng, abcd, 5);
    const Polynomial both(star(p1.body(), p2.body()));
    EXPECT_EQ(eval(both, {u, v}), star(eval(p1, {u, v}), eval(p2, {u, v})));
  }
}

TEST(LengthLaw, Examples) {
  const Polynomial p(TP("(x1.(a.x1))"));
  EXPECT_EQ(eval(p, {T("(c.d)")}).length(), 5u);
  const Polynomial q(TP("((b.x1).x2)"));
  EXPECT_EQ(eval(q, {T("(a.b)"), T("((a.b).c)")}).length(), 6u);
  const std::vector<Object> args{T("(a.b)"), T("((a.b).c)")};
  EXPECT_TRUE(length_law_check(q, args));
}

TEST(LengthLaw, RandomPolynomials) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 300; ++i) {
    const Mode m = i % 2 ? Mode::word : Mode::tree;
    const Polynomial p = testing::random_polynomial(rng, m, ab);
    std::vector<Object> args;
    for (std::size_t j = 0; j < p.arity(); ++j) args.push_back(testing::random_object(rng, m, ab, 5));
    EXPECT_TRUE(length_law_check(p, args)) << to_string(p);
  }
}

TEST(FindOccurrence, Examples) {
  const auto c = find_occurrence(W("ababa"), W("aba"));
  ASSERT_TRUE(c);
  EXPECT_EQ(to_string(*c), "yba");
  EXPECT_EQ(to_string(*find_occurrence(W("abab"), W("abab"))), "y");
  EXPECT_FALSE(find_occurrence(W("ab"), W("ba")));
  const auto t = find_occurrence(T("(((c.d)._).(c.d))"), T("(c.d)"));
  ASSERT_TRUE(t);
  EXPECT_EQ(to_string(*t), "((y._).(c.d))");
}

TEST(FindOccurrence, ContextRebuildsTerm) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 300; ++i) {
    const Object t = testing::random_tree(rng, ab, 8);
    if (t.is_empty()) continue;
    // Pick a subtree by walking a random path.
    Object u = t;
    while (u.is_node() && std::bernoulli_distribution(0.6)(rng)) {
      const Object next = std::bernoulli_distribution(0.5)(rng) ? u.left() : u.right();
      if (next.is_empty()) break;
      u = next;
    }
    const auto c = find_occurrence(t, u);
    ASSERT_TRUE(c);
    EXPECT_EQ((*c)(u), t);
  }
}

TEST(ContextPolynomial, Validation) {
  EXPECT_THROW(ContextPolynomial(W("ab")), PreconditionError);
  EXPECT_THROW(ContextPolynomial(parse_object("yy", Mode::word, ab, {.allow_hole = true})), PreconditionError);
  const ContextPolynomial c(parse_object("ayb", Mode::word, ab, {.allow_hole = true}));
  EXPECT_EQ(c(W("bb")), W("abbb"));
}

}  // namespace
}  // namespace affina
