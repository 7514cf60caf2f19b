#include "modcoh/rebracket.hpp"

#include <cctype>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace modcoh {

TreePtr Tree::leaf() {
  static const TreePtr single = std::make_shared<Tree>();
  return single;
}

TreePtr Tree::node(TreePtr left, TreePtr right) {
  auto t = std::make_shared<Tree>();
  t->left = std::move(left);
  t->right = std::move(right);
  return t;
}

unsigned rank(const TreePtr& t) {
  return t->is_leaf() ? 1 : rank(t->left) + rank(t->right);
}

bool same_tree(const TreePtr& a, const TreePtr& b) {
  if (a == b) return true;
  if (a->is_leaf() || b->is_leaf()) return a->is_leaf() == b->is_leaf();
  return same_tree(a->left, b->left) && same_tree(a->right, b->right);
}

TreePtr comb_tree(unsigned rank) {
  if (rank == 0) throw std::invalid_argument("tree rank must be positive");
  TreePtr t = Tree::leaf();
  for (unsigned i = 1; i < rank; ++i) t = Tree::node(t, Tree::leaf());
  return t;
}

std::vector<TreePtr> enumerate_trees(unsigned rank) {
  if (rank == 0) throw std::invalid_argument("tree rank must be positive");
  std::vector<std::vector<TreePtr>> by_rank(rank + 1);
  by_rank[1] = {Tree::leaf()};
  for (unsigned k = 2; k <= rank; ++k) {
    for (unsigned i = 1; i < k; ++i) {  // left size ascending
      for (const TreePtr& l : by_rank[i])
        for (const TreePtr& r : by_rank[k - i])
          by_rank[k].push_back(Tree::node(l, r));
    }
  }
  return by_rank[rank];
}

namespace {

struct TreeParser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  TreePtr parse() {
    skip_ws();
    if (pos == text.size())
      throw std::runtime_error("tree syntax error: unexpected end of input");
    if (text[pos] == 'x') {
      ++pos;
      return Tree::leaf();
    }
    if (text[pos] == '(') {
      ++pos;
      TreePtr l = parse();
      TreePtr r = parse();
      skip_ws();
      if (pos == text.size() || text[pos] != ')')
        throw std::runtime_error("tree syntax error: expected \")\" at position " +
                                 std::to_string(pos));
      ++pos;
      return Tree::node(std::move(l), std::move(r));
    }
    throw std::runtime_error(
        std::string("tree syntax error: unexpected character \"") + text[pos] +
        "\" at position " + std::to_string(pos));
  }
};

void print_tree(const TreePtr& t, std::ostringstream& os) {
  if (t->is_leaf()) {
    os << "x";
    return;
  }
  os << "(";
  print_tree(t->left, os);
  os << " ";
  print_tree(t->right, os);
  os << ")";
}

bool is_comb(const TreePtr& t) {
  return t->is_leaf() || (t->right->is_leaf() && is_comb(t->left));
}

// A position is the list of turns from the root; false = left, true = right.
using Position = std::vector<bool>;

bool reducible(const TreePtr& t) {
  return !t->is_leaf() && !t->right->is_leaf();
}

// Rewrites u (v w) to (u v) w at the given position.
TreePtr rotate_at(const TreePtr& t, const Position& pos, std::size_t i = 0) {
  if (i == pos.size()) {
    if (!reducible(t))
      throw std::logic_error("rotation applied at an irreducible position");
    return Tree::node(Tree::node(t->left, t->right->left), t->right->right);
  }
  if (t->is_leaf()) throw std::logic_error("rotation position off the tree");
  if (!pos[i]) return Tree::node(rotate_at(t->left, pos, i + 1), t->right);
  return Tree::node(t->left, rotate_at(t->right, pos, i + 1));
}

// The image of a rotation at a position: tau at the site, tensored with id
// along the path back to the root.
TermPtr step_term(const Position& pos) {
  TermPtr t = Term::tau();
  for (auto it = pos.rbegin(); it != pos.rend(); ++it)
    t = *it ? Term::star(Term::id(), t) : Term::star(t, Term::id());
  return t;
}

std::vector<Position> reducible_positions(const TreePtr& t) {
  std::vector<Position> out;
  std::deque<std::pair<TreePtr, Position>> queue{{t, {}}};
  while (!queue.empty()) {
    auto [node, pos] = queue.front();
    queue.pop_front();
    if (node->is_leaf()) continue;
    if (reducible(node)) out.push_back(pos);
    Position l = pos, r = pos;
    l.push_back(false);
    r.push_back(true);
    queue.emplace_back(node->left, std::move(l));
    queue.emplace_back(node->right, std::move(r));
  }
  return out;  // breadth-first, so shallowest-leftmost comes first
}

std::vector<TermPtr> reduction_steps_shallowest(TreePtr t) {
  std::vector<TermPtr> steps;
  while (!is_comb(t)) {
    Position pos = reducible_positions(t).front();
    steps.push_back(step_term(pos));
    t = rotate_at(t, pos);
  }
  return steps;
}

std::vector<TermPtr> reduction_steps_random(TreePtr t, std::mt19937_64& rng) {
  std::vector<TermPtr> steps;
  while (!is_comb(t)) {
    std::vector<Position> all = reducible_positions(t);
    const Position& pos = all[rng() % all.size()];
    steps.push_back(step_term(pos));
    t = rotate_at(t, pos);
  }
  return steps;
}

void append_wrapped(std::vector<TermPtr>& out, const std::vector<TermPtr>& in,
                    bool right_side) {
  for (const TermPtr& s : in)
    out.push_back(right_side ? Term::star(Term::id(), s)
                             : Term::star(s, Term::id()));
}

std::vector<TermPtr> reduction_steps_recursive(const TreePtr& t);

// Steps normalizing l [] comb_q, given l's own steps are produced lazily:
// rotate the root until the comb on the right is consumed, then descend.
std::vector<TermPtr> merge_comb_steps(const TreePtr& l, unsigned q) {
  std::vector<TermPtr> steps;
  if (q == 1) {
    append_wrapped(steps, reduction_steps_recursive(l), false);
    return steps;
  }
  steps.push_back(Term::tau());
  append_wrapped(steps, merge_comb_steps(l, q - 1), false);
  return steps;
}

std::vector<TermPtr> reduction_steps_recursive(const TreePtr& t) {
  std::vector<TermPtr> steps;
  if (t->is_leaf()) return steps;
  append_wrapped(steps, reduction_steps_recursive(t->right), true);
  std::vector<TermPtr> merged = merge_comb_steps(t->left, rank(t->right));
  steps.insert(steps.end(), merged.begin(), merged.end());
  return steps;
}

// Composes steps in application order (first element acts first), nesting
// to the left so chains print without parentheses.
TermPtr chain(const std::vector<TermPtr>& steps) {
  if (steps.empty()) return Term::id();
  TermPtr t = steps.back();
  for (std::size_t i = steps.size() - 1; i-- > 0;)
    t = Term::compose(std::move(t), steps[i]);
  return t;
}

TermPtr splice_routes(const std::vector<TermPtr>& to_comb_from_a,
                      const std::vector<TermPtr>& to_comb_from_b) {
  if (to_comb_from_b.empty()) return chain(to_comb_from_a);
  if (to_comb_from_a.empty()) return Term::inverse(chain(to_comb_from_b));
  return Term::compose(Term::inverse(chain(to_comb_from_b)),
                       chain(to_comb_from_a));
}

}  // namespace

TreePtr parse_tree(std::string_view text) {
  TreeParser p{text};
  TreePtr t = p.parse();
  p.skip_ws();
  if (p.pos != text.size())
    throw std::runtime_error("tree syntax error: trailing input at position " +
                             std::to_string(p.pos));
  return t;
}

std::string to_string(const TreePtr& t) {
  std::ostringstream os;
  print_tree(t, os);
  return os.str();
}

TermPtr canonical_term(const TreePtr& a, const TreePtr& b,
                       ReductionRoute route) {
  if (rank(a) != rank(b))
    throw std::invalid_argument("no arrow between trees of different rank");
  if (same_tree(a, b)) return Term::id();
  if (route == ReductionRoute::ShallowestLeftmost)
    return splice_routes(reduction_steps_shallowest(a),
                         reduction_steps_shallowest(b));
  return splice_routes(reduction_steps_recursive(a),
                       reduction_steps_recursive(b));
}

TermPtr arrow_term(const TreeArrow& w) {
  return canonical_term(w.source, w.target);
}

TermPtr canonical_term_random(const TreePtr& a, const TreePtr& b,
                              std::mt19937_64& rng) {
  if (rank(a) != rank(b))
    throw std::invalid_argument("no arrow between trees of different rank");
  if (same_tree(a, b)) return Term::id();
  return splice_routes(reduction_steps_random(a, rng),
                       reduction_steps_random(b, rng));
}

}  // namespace modcoh
