#pragma once

#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "modcoh/term.hpp"

// Binary trees over a single generator and their rebracketing arrows. Any
// two trees of the same rank (leaf count) are connected by a unique arrow;
// this module realizes that arrow as a term over {tau, id, *, ., ^-1} by
// reducing both trees to the left comb and splicing the reduction paths.

namespace modcoh {

class Tree;
using TreePtr = std::shared_ptr<const Tree>;

class Tree {
 public:
  TreePtr left, right;  // both null for a leaf

  bool is_leaf() const { return !left; }

  static TreePtr leaf();
  static TreePtr node(TreePtr left, TreePtr right);
};

unsigned rank(const TreePtr& t);  // leaf count
bool same_tree(const TreePtr& a, const TreePtr& b);

// The fully left-bracketed tree of the given rank.
TreePtr comb_tree(unsigned rank);

// All trees of the given rank, ordered by ascending left-subtree size,
// recursively. Catalan(rank - 1) trees. Throws std::invalid_argument on 0.
std::vector<TreePtr> enumerate_trees(unsigned rank);

// Textual form: "x" for a leaf, "(a b)" for a node.
TreePtr parse_tree(std::string_view text);
std::string to_string(const TreePtr& t);

// An arrow of the rebracketing category: source and target of equal rank.
struct TreeArrow {
  TreePtr source, target;
};

enum class ReductionRoute {
  ShallowestLeftmost,  // reduce at the shallowest-leftmost position
  SubtreesFirst,       // normalize right then left subtree, then merge combs
};

// The term realizing the unique arrow from a to b. Returns id when a and b
// coincide. Throws std::invalid_argument on rank mismatch.
TermPtr canonical_term(const TreePtr& a, const TreePtr& b,
                       ReductionRoute route = ReductionRoute::ShallowestLeftmost);

TermPtr arrow_term(const TreeArrow& w);

// Like canonical_term but reducing at a random position each step; used to
// exercise route independence.
TermPtr canonical_term_random(const TreePtr& a, const TreePtr& b,
                              std::mt19937_64& rng);

}  // namespace modcoh
