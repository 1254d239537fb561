#include "smsccl/symmetry/propagator.hpp"

namespace smsccl::symmetry {

graph::PartialGraph projectGraph(const sat::Solver& solver, const graph::EdgeVarMap& map) {
  const int n = map.order();
  graph::PartialGraph g(n, graph::CellState::Undefined);
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      const sat::LBool b = solver.value(map.var(u, v));
      if (b == sat::LBool::True) {
        g.set(u, v, graph::CellState::Present);
      } else if (b == sat::LBool::False) {
        g.set(u, v, graph::CellState::Absent);
      }
    }
  }
  return g;
}

SymmetryPropagator::SymmetryPropagator(graph::EdgeVarMap map, SymmetryOptions options)
    : map_(std::move(map)), options_(options) {}

sat::HookPolicy SymmetryPropagator::defaultPolicy() const {
  sat::HookPolicy policy;
  policy.observedFirst = map_.firstVar();
  policy.observedLast = map_.lastVar();
  if (!options_.checkPartial) policy.conflictInterval = 0;
  return policy;
}

std::optional<sat::Injection> SymmetryPropagator::check(const sat::Solver& solver, sat::CheckPoint point) {
  if (point == sat::CheckPoint::Partial && !options_.checkPartial) return std::nullopt;
  return checkGraph(projectGraph(solver, map_));
}

std::optional<sat::Injection> SymmetryPropagator::checkGraph(const graph::PartialGraph& g) {
  const bool full = g.isFullyDefined();
  if (full && lastMinimal_ && *lastMinimal_ == g) return std::nullopt;
  ++stats_.checks;
  if (full) ++stats_.fullChecks;
  const CheckResult result = checker_.check(g, full ? kUnlimitedBudget : options_.partialBudget);
  stats_.nodes += result.nodes;
  if (result.outcome == CheckOutcome::BudgetExceeded) {
    ++stats_.budgetExceeded;
    return std::nullopt;
  }
  if (result.outcome == CheckOutcome::Minimal) {
    if (full) lastMinimal_ = g;
    return std::nullopt;
  }
  ++stats_.witnesses;
  const MinimalityWitness& w = *result.witness;
  return sat::Injection{clauseFromWitness(w, g, map_), formatPermutationNote(w.pi)};
}

}  // namespace smsccl::symmetry
