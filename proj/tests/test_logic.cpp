#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "oracles.hpp"
#include "zol/eval.hpp"
#include "zol/formula.hpp"
#include "zol/parser.hpp"

using namespace zol;

namespace {

const Vocabulary kE({{"E", 2}});

Structure p2() { return Structure(kE, 2, {{{0, 1}}}); }

}  // namespace

TEST(Parser, DirectReadings) {
  EXPECT_EQ(parse_formula("exists x. exists y. E(x,y)"),
            Formula::exists("x", Formula::exists("y", Formula::atom("E", {"x", "y"}))));
  EXPECT_EQ(parse_formula("forall x. ~E(x,x)"), Formula::forall("x", Formula::negation(Formula::atom("E", {"x", "x"}))));
  const Formula f = parse_formula("exists x. (E(x,x) -> x = x)");
  EXPECT_TRUE(is_sentence(f));
  EXPECT_NO_THROW(validate(f, kE));
}

TEST(Parser, PrecedenceAndAssociativity) {
  const auto a = Formula::atom("A", {"x"}), b = Formula::atom("B", {"x"}), c = Formula::atom("C", {"x"});
  EXPECT_EQ(parse_formula("A(x) | B(x) & C(x)"), Formula::disjunction(a, Formula::conjunction(b, c)));
  EXPECT_EQ(parse_formula("A(x) -> B(x) -> C(x)"), Formula::implication(a, Formula::implication(b, c)));
  EXPECT_EQ(parse_formula("A(x) <-> B(x) <-> C(x)"), Formula::biconditional(Formula::biconditional(a, b), c));
  EXPECT_EQ(parse_formula("~A(x) & B(x)"), Formula::conjunction(Formula::negation(a), b));
  // Quantifier scope runs to the right as far as possible.
  EXPECT_EQ(parse_formula("exists x. A(x) & B(x)"), Formula::exists("x", Formula::conjunction(a, b)));
}

TEST(Parser, ErrorsCarryPosition) {
  try {
    parse_formula("exists x.\n  E(x,");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 7u);
  }
  EXPECT_THROW(parse_formula("E(x,y"), ParseError);
  EXPECT_THROW(parse_formula("x = "), ParseError);
  EXPECT_THROW(parse_formula("E(x) $"), ParseError);
  EXPECT_THROW(parse_formula(""), ParseError);
}

TEST(Parser, ValidationCatchesArity) {
  EXPECT_THROW(validate(parse_formula("exists x. E(x)"), kE), EvalError);
  EXPECT_THROW(validate(parse_formula("exists x. F(x,x)"), kE), EvalError);
}

TEST(Printer, RoundTripsCorpus) {
  for (const auto& text : rank2_corpus()) {
    const Formula f = parse_formula(text);
    EXPECT_EQ(parse_formula(print(f)), f) << text;
    EXPECT_EQ(print(parse_formula(print(f))), print(f)) << text;
  }
  const Formula nested = Formula::conjunction(Formula::exists("x", Formula::truth()), Formula::falsity());
  EXPECT_EQ(parse_formula(print(nested)), nested);
  EXPECT_EQ(print(parse_formula("forall x.~E(x,x)")), "forall x. ~E(x,x)");
}

TEST(QuantifierRank, Examples) {
  EXPECT_EQ(quantifier_rank(parse_formula("exists x. forall y. E(x,y)")), 2u);
  EXPECT_EQ(quantifier_rank(parse_formula("E(x,y) & ~(x = y)")), 0u);
  EXPECT_EQ(quantifier_rank(parse_formula("(exists x. E(x,x)) & exists y. E(y,y)")), 1u);
  // Without parentheses the second quantifier falls inside the first.
  EXPECT_EQ(quantifier_rank(parse_formula("exists x. E(x,x) & exists y. E(y,y)")), 2u);
  for (const auto& text : rank2_corpus()) EXPECT_LE(quantifier_rank(parse_formula(text)), 2u) << text;
}

TEST(Eval, Examples) {
  EXPECT_TRUE(eval(p2(), parse_formula("exists x. exists y. E(x,y)")));
  const Structure empty(kE, 0);
  EXPECT_TRUE(eval(empty, parse_formula("forall x. false")));
  EXPECT_FALSE(eval(empty, parse_formula("exists x. x = x")));
  EXPECT_THROW(eval(p2(), parse_formula("E(x,y)")), EvalError);
  EXPECT_TRUE(eval(p2(), parse_formula("E(x,y)"), {{"x", 0}, {"y", 1}}));
  EXPECT_FALSE(eval(p2(), parse_formula("E(x,y)"), {{"x", 1}, {"y", 0}}));
  EXPECT_THROW(eval(p2(), parse_formula("E(x,x)"), {{"x", 5}}), EvalError);
}

TEST(Eval, SubsetRelativisationMatchesInduced) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const Structure s = oracle::random_structure(rng, kE, 1 + rng() % 5, 0.3);
    const SubsetMask m = SubsetMask::from_bits(s.size(), rng());
    const auto members = m.members();
    const Structure sub = oracle::restrict_to(s, members);
    for (const auto& text : rank2_corpus()) {
      const Formula f = parse_formula(text);
      EXPECT_EQ(eval_on_subset(s, members, f), eval(sub, f)) << text;
    }
  }
}

TEST(Eval, LogicalProperties) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const Structure s = oracle::random_structure(rng, kE, rng() % 6, 0.35);
    const Structure t = oracle::random_permutation_of(rng, s);
    const auto& corpus = rank2_corpus();
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const Formula f = parse_formula(corpus[i]);
      const Formula g = parse_formula(corpus[(i + 7) % corpus.size()]);
      EXPECT_EQ(eval(s, f), eval(t, f)) << corpus[i];
      EXPECT_EQ(eval(s, Formula::negation(f)), !eval(s, f));
      EXPECT_EQ(eval(s, Formula::negation(Formula::conjunction(f, g))),
                eval(s, Formula::disjunction(Formula::negation(f), Formula::negation(g))));
      EXPECT_EQ(eval(s, Formula::negation(Formula::disjunction(f, g))),
                eval(s, Formula::conjunction(Formula::negation(f), Formula::negation(g))));
    }
  }
}
