#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "modcoh/rebracket.hpp"
#include "modcoh/residue.hpp"
#include "modcoh/term.hpp"

// Machine-verified identities: for every ordered pair of distinct trees of a
// given rank, the two reduction routes yield terms that provably and
// verifiably denote the same piecewise-affine bijection.

namespace modcoh {

struct VerifiedIdentity {
  TermPtr lhs;              // shallowest-leftmost route
  TermPtr rhs;              // subtrees-first route
  unsigned rank = 0;
  ModularBijection table;   // the common canonical value
};

// Streams identities in tree-enumeration order, stopping after limit when
// given. Every emitted identity has passed both the coherence check and the
// exact oracle. Throws std::invalid_argument unless 2 <= rank <= 10.
void generate_identities(unsigned rank, std::optional<std::size_t> limit,
                         const std::function<void(const VerifiedIdentity&)>& emit);

std::vector<VerifiedIdentity> generate_identities(
    unsigned rank, std::optional<std::size_t> limit = std::nullopt);

}  // namespace modcoh
