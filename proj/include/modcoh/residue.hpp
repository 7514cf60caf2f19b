#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Exact piecewise-affine bijections of the naturals.
//
// A bijection is stored as finitely many affine order-isomorphisms between
// congruence classes: a branch (m, r) -> (m', s) sends m*q + r to m'*q + s.
// Keeping both endpoints as classes (rather than slope/offset pairs) keeps
// every stored number integral even when the pointwise slope is fractional,
// and makes inversion a branch swap. The input classes of a valid value
// partition the naturals, and so do the output classes.

namespace modcoh {

using Nat = std::uint64_t;

// The arithmetic progression { modulus*q + residue : q in N }.
struct CongruenceClass {
  Nat modulus = 1;  // >= 1
  Nat residue = 0;  // < modulus
  bool operator==(const CongruenceClass&) const = default;
};

// The unique affine order-isomorphism  in.modulus*q + in.residue  |->
// out.modulus*q + out.residue  between two classes.
struct Branch {
  CongruenceClass in;
  CongruenceClass out;
  bool operator==(const Branch&) const = default;
};

struct ModularBijection {
  std::vector<Branch> branches;
  bool operator==(const ModularBijection&) const = default;
};

// Generators.
ModularBijection tau();       // {(2,0)->(4,0), (4,1)->(4,2), (4,3)->(2,1)}
ModularBijection sigma();     // {(2,0)->(2,1), (2,1)->(2,0)}
ModularBijection identity();  // {(1,0)->(1,0)}

// Evaluates f at n. Throws std::logic_error if no branch covers n (a
// partition-invariant breach, not a user error).
Nat apply(const ModularBijection& f, Nat n);

// f after g: apply(compose(f, g), n) == apply(f, apply(g, n)). Result is
// canonical.
ModularBijection compose(const ModularBijection& f, const ModularBijection& g);

// Swaps the two classes of every branch.
ModularBijection invert(const ModularBijection& f);

// Routes even inputs through f and odd inputs through g, interleaving the
// results on evens/odds. Result is canonical.
ModularBijection interleave(const ModularBijection& f,
                            const ModularBijection& g);

struct EqualityResult {
  bool equal = false;
  std::optional<Nat> witness;  // least n with f(n) != g(n), when unequal
};

// Exact semantic equality by refining both branch lists to a common input
// modulus. Does not depend on canonical forms.
EqualityResult equal(const ModularBijection& f, const ModularBijection& g);

// Merges sibling branch pairs to fixpoint and sorts branches by input
// (modulus, residue). Siblings: (2m, r)->(2m', s) and (2m, r+m)->(2m', s+m')
// with r < m, s < m' merge into (m, r)->(m', s).
ModularBijection canonicalize(ModularBijection f);

// One line per branch in the case-table style,
// "n ≡ r (mod m) ⇒ f(n) = ...", simplified when one modulus divides the
// other or offsets vanish.
std::string pretty(const ModularBijection& f);

// Checks the partition invariants on both sides (pairwise disjoint classes
// whose densities sum to 1). Throws std::logic_error on breach.
void validate(const ModularBijection& f);

// True iff the classes are pairwise disjoint and cover the naturals.
bool is_partition(const std::vector<CongruenceClass>& classes);

}  // namespace modcoh
