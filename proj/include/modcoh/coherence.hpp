#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "modcoh/rebracket.hpp"
#include "modcoh/residue.hpp"
#include "modcoh/term.hpp"

// Sound equality of terms by lifting them into the rebracketing category.
// A term is assigned a principal source/target pair of tree patterns by
// structural rules mirroring the substitution of tau at every associator
// position:
//
//   tau        : A (B C)  =>  (A B) C        fresh A, B, C
//   id         : A        =>  A
//   t^-1       : swap the typing of t
//   l * r      : pair sources and targets component-wise
//   f . g      : unify source(f) with target(g), then source(g) => target(f)
//   sigma      : no lift (symmetry is outside the associativity fragment)
//
// Two terms whose typings unify simultaneously as a (source, target) pair
// denote the same bijection; the converse is not decided here, so the
// negative answer is UNKNOWN rather than "not equal".

namespace modcoh {

class TreePattern;
using PatPtr = std::shared_ptr<const TreePattern>;

// A tree shape with metavariables at the leaves. There is no ground leaf;
// instantiating every metavariable with a tree yields a tree.
class TreePattern {
 public:
  int var = -1;         // >= 0 for a metavariable
  PatPtr left, right;   // set for a node

  bool is_var() const { return var >= 0; }

  static PatPtr metavar(int id);
  static PatPtr node(PatPtr left, PatPtr right);
};

bool same_pattern(const PatPtr& a, const PatPtr& b);
std::string to_string(const PatPtr& p);  // metavar i prints as "v<i>"

using Subst = std::map<int, PatPtr>;

struct UnifyFailure {
  PatPtr var;      // the metavariable that occurs in...
  PatPtr pattern;  // ...this pattern (occurs check)
};

using UnifyResult = std::variant<Subst, UnifyFailure>;

// Most general unifier with occurs check; failure is a value, not an error.
UnifyResult unify(const PatPtr& p, const PatPtr& q);

// Simultaneous unification of several equations under one substitution.
UnifyResult unify_all(const std::vector<std::pair<PatPtr, PatPtr>>& goals);

// Applies the substitution, resolving bindings to fixpoint.
PatPtr substitute(const PatPtr& p, const Subst& s);

// Instantiates every metavariable with the same tree (typically the leaf).
TreePtr instantiate(const PatPtr& p, const TreePtr& value);

// One-way simultaneous match of patterns against ground trees: a map from
// metavariables to trees making each pattern equal its tree, if one exists.
std::optional<std::map<int, TreePtr>> match_trees(
    const std::vector<std::pair<PatPtr, TreePtr>>& goals);

// Principal source => target pair for a term; metavariables are shared
// between the two sides and numbered v1, v2, ... deterministically.
struct Typing {
  PatPtr source, target;
};

struct TypingError {
  enum class Kind { SigmaPresent, UnificationFailure };
  Kind kind;
  std::string detail;
};

using TypingResult = std::variant<Typing, TypingError>;

TypingResult infer_typing(const TermPtr& t);

std::string to_string(const Typing& typing);

struct CoherenceResult {
  bool yes = false;     // true: terms provably denote the same bijection
  std::string reason;   // on UNKNOWN, why the lift was silent
};

CoherenceResult coherence_equal(const TermPtr& a, const TermPtr& b);

// A directed multigraph whose edges carry terms.
struct Diagram {
  struct Edge {
    std::string from, to;
    TermPtr term;
  };
  std::vector<std::string> nodes;
  std::vector<Edge> edges;
};

enum class PathStatus { Coherent, OracleEqual, NotEqual };

struct PathPairReport {
  std::string from, to;
  std::vector<std::string> path_a, path_b;  // node sequences
  std::string term_a, term_b;               // composite terms
  PathStatus status;
  std::optional<Nat> witness;  // least differing input, when NotEqual
  std::string note;            // lift outcome when the oracle decided
};

struct DiagramReport {
  bool commutes = true;
  bool truncated = false;  // some walk hit the length bound
  std::vector<PathPairReport> pairs;
};

// Classifies every pair of distinct directed walks (of length <= path_bound,
// 0 meaning the edge count) between each ordered node pair. The diagram
// commutes iff no pair is NotEqual. Throws std::runtime_error on malformed
// input.
DiagramReport verify_diagram(const Diagram& d, std::size_t path_bound = 0);

}  // namespace modcoh
