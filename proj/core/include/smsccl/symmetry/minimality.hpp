#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smsccl/graph/partial_graph.hpp"
#include "smsccl/sat/types.hpp"

namespace smsccl::symmetry {

/// A compared cell pair: cell (row, col) of G against cell
/// (pi(row), pi(col)) of G, which is cell (row, col) of the relabeled graph.
struct CellPair {
  int row = 0;
  int col = 0;
  int imageRow = 0;
  int imageCol = 0;
};

/// Proof that a partially defined graph cannot be extended to a canonical
/// graph. `pi` maps positions to vertices: the relabeled graph H has
/// H[i][j] = G[pi(i)][pi(j)], i.e. H = applyPermutation(G, pi.inverse()).
/// Every prefix pair is defined and equal; at `strict`, G is present and H
/// absent, so H <_lex G in every extension.
struct MinimalityWitness {
  graph::Permutation pi;
  std::vector<CellPair> prefix;
  CellPair strict;
};

enum class CheckOutcome { Minimal, Witness, BudgetExceeded };

struct CheckResult {
  CheckOutcome outcome = CheckOutcome::Minimal;
  std::optional<MinimalityWitness> witness;
  uint64_t nodes = 0;
};

/// Budget value meaning "no limit".
inline constexpr uint64_t kUnlimitedBudget = 0;

/// Depth-first search over relabelings. Positions receive vertices in order
/// 1..n and candidates are tried in increasing vertex order. Unfixed
/// positions are kept as an ordered partition (each block homogeneous with
/// respect to every fixed vertex), which makes whole rows of the relabeled
/// matrix comparable as soon as their vertex is fixed. Branches that compare
/// greater or hit an undefined cell are pruned; interchangeable candidates
/// (twins: equal rows apart from each other) are tried once.
class MinimalityChecker {
 public:
  CheckResult check(const graph::PartialGraph& g, uint64_t budget = kUnlimitedBudget);
};

CheckResult checkMinimal(const graph::PartialGraph& g, uint64_t budget = kUnlimitedBudget);

/// Re-validates a witness against a graph: prefix covers every non-trivial
/// cell before `strict` in cell order, all defined and equal, and the strict
/// pair is present versus absent.
bool witnessHolds(const graph::PartialGraph& g, const MinimalityWitness& w);

/// ⋁_{prefix} l_uv ∨ ¬e_ij ∨ e_{pi(i)pi(j)} with l_uv = ¬e_uv when cell
/// (u,v) is present and e_{pi(u)pi(v)} when absent. Throws std::logic_error
/// if the witness does not hold for `g`.
sat::Clause clauseFromWitness(const MinimalityWitness& w, const graph::PartialGraph& g,
                              const graph::EdgeVarMap& map);

/// Independent soundness check of a symmetry clause against its
/// permutation: every total assignment falsifying the clause must define a
/// graph G whose relabeling by `pi` is lex-smaller. Returns an error message
/// or std::nullopt when sound.
std::optional<std::string> verifySymmetryClause(const sat::Clause& clause, const graph::Permutation& pi,
                                                const graph::EdgeVarMap& map);

/// "perm p1 p2 ... pn"
std::string formatPermutationNote(const graph::Permutation& pi);

}  // namespace smsccl::symmetry
