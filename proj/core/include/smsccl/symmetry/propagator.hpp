#pragma once

#include <cstdint>
#include <optional>

#include "smsccl/graph/partial_graph.hpp"
#include "smsccl/sat/solver.hpp"
#include "smsccl/symmetry/minimality.hpp"

namespace smsccl::symmetry {

struct SymmetryOptions {
  /// Node budget for checks on partial assignments.
  uint64_t partialBudget = 3000;
  /// Run the (budgeted) check at partial checkpoints at all.
  bool checkPartial = true;
};

struct SymmetryStats {
  uint64_t checks = 0;
  uint64_t fullChecks = 0;
  uint64_t witnesses = 0;
  uint64_t budgetExceeded = 0;
  uint64_t nodes = 0;
};

/// Projects the solver state onto the edge variables and learns a symmetry
/// clause whenever the minimality check finds a witness.
class SymmetryPropagator : public sat::Propagator {
 public:
  explicit SymmetryPropagator(graph::EdgeVarMap map, SymmetryOptions options = {});

  std::optional<sat::Injection> check(const sat::Solver& solver, sat::CheckPoint point) override;

  /// Runs the check on an already projected graph. Fully defined graphs are
  /// always checked without a budget.
  std::optional<sat::Injection> checkGraph(const graph::PartialGraph& g);

  const graph::EdgeVarMap& map() const { return map_; }
  const SymmetryStats& stats() const { return stats_; }

  /// The policy the propagator is designed for: edge variables observed.
  sat::HookPolicy defaultPolicy() const;

 private:
  graph::EdgeVarMap map_;
  SymmetryOptions options_;
  SymmetryStats stats_;
  MinimalityChecker checker_;
  // The last fully defined graph found minimal; the same graph is usually
  // seen twice (edges complete, then all variables complete).
  std::optional<graph::PartialGraph> lastMinimal_;
};

graph::PartialGraph projectGraph(const sat::Solver& solver, const graph::EdgeVarMap& map);

}  // namespace smsccl::symmetry
