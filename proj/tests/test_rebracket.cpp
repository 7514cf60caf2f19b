#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "modcoh/rebracket.hpp"
#include "modcoh/residue.hpp"
#include "oracle.hpp"

using namespace modcoh;

TEST_CASE("rank counts leaves") {
  CHECK(rank(Tree::leaf()) == 1);
  CHECK(rank(Tree::node(Tree::leaf(), Tree::node(Tree::leaf(), Tree::leaf()))) ==
        3);
  for (unsigned k = 1; k <= 7; ++k)
    for (const TreePtr& t : enumerate_trees(k)) CHECK(rank(t) == k);
}

TEST_CASE("enumeration is exhaustive and ordered") {
  CHECK(enumerate_trees(1).size() == 1);
  CHECK(same_tree(enumerate_trees(1)[0], Tree::leaf()));

  std::vector<TreePtr> three = enumerate_trees(3);
  REQUIRE(three.size() == 2);
  CHECK(to_string(three[0]) == "(x (x x))");
  CHECK(to_string(three[1]) == "((x x) x)");

  // Catalan numbers 1, 1, 2, 5, 14, 42, 132, 429.
  const std::size_t catalan[] = {1, 1, 2, 5, 14, 42, 132, 429};
  for (unsigned k = 1; k <= 8; ++k)
    CHECK(enumerate_trees(k).size() == catalan[k - 1]);

  CHECK_THROWS_AS(enumerate_trees(0), std::invalid_argument);
}

TEST_CASE("tree text round trips") {
  for (const TreePtr& t : enumerate_trees(5))
    CHECK(same_tree(parse_tree(to_string(t)), t));
  CHECK(same_tree(parse_tree(" ( x ( x x ) ) "),
                  Tree::node(Tree::leaf(),
                             Tree::node(Tree::leaf(), Tree::leaf()))));
  CHECK_THROWS(parse_tree("(x"));
  CHECK_THROWS(parse_tree("(x x) x"));
  CHECK_THROWS(parse_tree("y"));
}

TEST_CASE("canonical terms for the base cases") {
  TreePtr right3 = parse_tree("(x (x x))");
  TreePtr left3 = parse_tree("((x x) x)");
  CHECK(same_term(canonical_term(right3, left3), Term::tau()));
  CHECK(same_term(canonical_term(left3, left3), Term::id()));
  CHECK(same_term(canonical_term(left3, right3), Term::inverse(Term::tau())));
  CHECK(same_term(arrow_term({parse_tree("(x x)"), parse_tree("(x x)")}),
                  Term::id()));
  CHECK(same_term(arrow_term({right3, left3}), Term::tau()));
  CHECK_THROWS_AS(canonical_term(Tree::leaf(), parse_tree("(x x)")),
                  std::invalid_argument);
}

TEST_CASE("the two routes spell out the expected rank-4 terms") {
  TreePtr spine = parse_tree("(x (x (x x)))");
  TreePtr comb = comb_tree(4);
  TermPtr direct = canonical_term(spine, comb, ReductionRoute::ShallowestLeftmost);
  TermPtr recursive = canonical_term(spine, comb, ReductionRoute::SubtreesFirst);
  CHECK(to_string(direct) == "tau . tau");
  CHECK(to_string(recursive) == "(tau * id) . tau . (id * tau)");
  CHECK(equal(eval(direct), eval(recursive)).equal);
}

TEST_CASE("all routes agree on all pairs up to rank 5") {
  std::mt19937_64 rng(11);
  for (unsigned k = 2; k <= 5; ++k) {
    std::vector<TreePtr> trees = enumerate_trees(k);
    for (const TreePtr& a : trees) {
      for (const TreePtr& b : trees) {
        ModularBijection left =
            eval(canonical_term(a, b, ReductionRoute::ShallowestLeftmost));
        CHECK(equal(left,
                    eval(canonical_term(a, b, ReductionRoute::SubtreesFirst)))
                  .equal);
        CHECK(equal(left, eval(canonical_term_random(a, b, rng))).equal);
      }
    }
  }
}

TEST_CASE("canonical term moduli divide 2^rank") {
  for (unsigned k = 2; k <= 6; ++k) {
    std::vector<TreePtr> trees = enumerate_trees(k);
    Nat bound = Nat{1} << k;
    for (const TreePtr& a : trees) {
      for (const TreePtr& b : trees) {
        for (const Branch& br : eval(canonical_term(a, b)).branches) {
          CHECK(bound % br.in.modulus == 0);
          CHECK(bound % br.out.modulus == 0);
        }
      }
    }
  }
}

TEST_CASE("arrow images compose functorially") {
  for (unsigned k = 3; k <= 5; ++k) {
    std::vector<TreePtr> trees = enumerate_trees(k);
    for (const TreePtr& a : trees) {
      for (const TreePtr& b : trees) {
        for (const TreePtr& c : trees) {
          ModularBijection step1 = eval(canonical_term(a, b));
          ModularBijection step2 = eval(canonical_term(b, c));
          CHECK(equal(compose(step2, step1), eval(canonical_term(a, c))).equal);
        }
      }
    }
  }
}

TEST_CASE("canonical terms evaluate like the formula oracle") {
  for (const TreePtr& a : enumerate_trees(5)) {
    for (const TreePtr& b : enumerate_trees(5)) {
      TermPtr t = canonical_term(a, b);
      oracle::Bij reference = oracle::of_term(t);
      ModularBijection f = eval(t);
      for (Nat n = 0; n < 64; ++n) CHECK(apply(f, n) == reference.fwd(n));
    }
  }
}
