#include "smsccl/ccl/engine.hpp"

#include <chrono>
#include <stdexcept>

#include "smsccl/graph/graph6.hpp"

namespace smsccl::ccl {

CclPropagator::CclPropagator(graph::EdgeVarMap map, CoNPChecker& checker, SearchMode mode,
                             symmetry::SymmetryOptions symmetryOptions)
    : map_(map), checker_(checker), mode_(mode), symmetry_(std::move(map), symmetryOptions) {}

std::optional<sat::Injection> CclPropagator::check(const sat::Solver& solver, sat::CheckPoint point) {
  const graph::PartialGraph g = symmetry::projectGraph(solver, map_);
  if (auto injection = symmetry_.checkGraph(g)) return injection;
  if (point != sat::CheckPoint::Full) return onPartial(solver, g);
  return onCandidate(solver, g);
}

std::optional<sat::Injection> CclPropagator::onCandidate(const sat::Solver& solver, const graph::PartialGraph& g) {
  ++stats_.candidates;
  if (auto cert = checker_.check(g)) {
    if (cert->blockingClause.empty()) {
      throw std::logic_error("co-certificate produced an empty blocking clause");
    }
    for (sat::Lit l : cert->blockingClause) {
      if (solver.value(l) != sat::LBool::False) {
        throw std::logic_error("co-certificate blocking clause is not falsified by its candidate (literal " +
                               std::to_string(l.toDimacs()) + ")");
      }
    }
    ++stats_.coCertificates;
    return sat::Injection{std::move(cert->blockingClause), std::move(cert->note)};
  }
  ++stats_.solutions;
  solutions_.push_back(g);
  if (onSolution_) onSolution_(g);
  if (mode_ == SearchMode::First) return std::nullopt;
  return sat::Injection{graph::edgeBlockingClause(g, map_), "sol " + graph::toGraph6(g)};
}

SearchResult runSearch(const sat::Formula& formula, const graph::EdgeVarMap& map, CoNPChecker& checker,
                       const SearchOptions& options, std::span<const sat::Lit> assumptions) {
  const auto start = std::chrono::steady_clock::now();
  sat::Solver solver(formula.variableCount, options.solver);
  solver.reserveVars(map.count() > 0 ? map.lastVar() : 0);
  if (options.log) solver.setClauseLog(options.log);
  solver.addFormula(formula);

  CclPropagator hook(map, checker, options.mode, options.symmetry);
  if (options.onSolution) hook.setSolutionCallback(options.onSolution);
  sat::HookPolicy policy;
  policy.observedFirst = map.firstVar();
  policy.observedLast = map.lastVar();
  policy.conflictInterval = options.symmetry.checkPartial ? options.conflictInterval : 0;
  policy.fixpointInterval = options.symmetry.checkPartial ? options.fixpointInterval : 0;
  policy.branchOrder = options.branchOrder;
  solver.setPropagator(&hook, policy);

  const sat::SolveStatus status = solver.solve(assumptions);
  if (status == sat::SolveStatus::InternalError) {
    throw std::logic_error("solver reported an internal error: " + solver.lastError());
  }
  if (options.log) options.log->flush();

  SearchResult result;
  result.solutions = hook.solutions();
  result.stats = hook.stats();
  result.stats.solver = solver.stats();
  result.stats.symmetry = hook.symmetryStats();
  result.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace smsccl::ccl
