#include "modcoh/identities.hpp"

#include <stdexcept>

#include "modcoh/coherence.hpp"

namespace modcoh {

void generate_identities(
    unsigned rank, std::optional<std::size_t> limit,
    const std::function<void(const VerifiedIdentity&)>& emit) {
  if (rank < 2 || rank > 10)
    throw std::invalid_argument(
        "identity rank must be between 2 and 10 (moduli grow as 2^rank)");
  std::vector<TreePtr> trees = enumerate_trees(rank);
  std::size_t emitted = 0;
  for (const TreePtr& a : trees) {
    for (const TreePtr& b : trees) {
      if (same_tree(a, b)) continue;
      if (limit && emitted == *limit) return;
      VerifiedIdentity ident;
      ident.lhs = canonical_term(a, b, ReductionRoute::ShallowestLeftmost);
      ident.rhs = canonical_term(a, b, ReductionRoute::SubtreesFirst);
      ident.rank = rank;
      if (!coherence_equal(ident.lhs, ident.rhs).yes)
        throw std::logic_error("route terms failed the coherence check");
      ident.table = eval(ident.lhs);
      EqualityResult eq = equal(ident.table, eval(ident.rhs));
      if (!eq.equal)
        throw std::logic_error("route terms failed the exact oracle");
      emit(ident);
      ++emitted;
    }
  }
}

std::vector<VerifiedIdentity> generate_identities(
    unsigned rank, std::optional<std::size_t> limit) {
  std::vector<VerifiedIdentity> out;
  generate_identities(rank, limit,
                      [&](const VerifiedIdentity& i) { out.push_back(i); });
  return out;
}

}  // namespace modcoh
