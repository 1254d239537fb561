#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "smsccl/ccl/checkers.hpp"
#include "smsccl/graph/partial_graph.hpp"
#include "smsccl/sat/clause_log.hpp"
#include "smsccl/sat/solver.hpp"
#include "smsccl/symmetry/propagator.hpp"

namespace smsccl::ccl {

enum class SearchMode { First, All };

struct SearchStats {
  uint64_t candidates = 0;
  uint64_t coCertificates = 0;
  uint64_t solutions = 0;
  double seconds = 0.0;
  sat::SolverStats solver;
  symmetry::SymmetryStats symmetry;
};

struct SearchOptions {
  SearchMode mode = SearchMode::All;
  symmetry::SymmetryOptions symmetry;
  sat::SolverOptions solver;
  /// Partial-assignment check cadence; the observed range is filled in from
  /// the edge map.
  int conflictInterval = 20;
  int fixpointInterval = 0;
  sat::BranchOrder branchOrder = sat::BranchOrder::Activity;
  sat::ClauseLog* log = nullptr;
  /// Called for every solution as soon as it is found.
  std::function<void(const graph::PartialGraph&)> onSolution;
};

struct SearchResult {
  std::vector<graph::PartialGraph> solutions;
  SearchStats stats;
};

/// SMS + co-certificate learning as a solver hook. Every assignment is
/// first checked for minimality; fully defined canonical candidates then go
/// to the co-NP checker. Certificates and (in All mode) solutions are turned
/// into injected clauses.
class CclPropagator : public sat::Propagator {
 public:
  CclPropagator(graph::EdgeVarMap map, CoNPChecker& checker, SearchMode mode,
                symmetry::SymmetryOptions symmetryOptions = {});

  std::optional<sat::Injection> check(const sat::Solver& solver, sat::CheckPoint point) override;

  const graph::EdgeVarMap& map() const { return map_; }
  const std::vector<graph::PartialGraph>& solutions() const { return solutions_; }
  const SearchStats& stats() const { return stats_; }
  const symmetry::SymmetryStats& symmetryStats() const { return symmetry_.stats(); }
  void setSolutionCallback(std::function<void(const graph::PartialGraph&)> callback) {
    onSolution_ = std::move(callback);
  }

 protected:
  /// Hook for partial checkpoints after the symmetry check found nothing.
  virtual std::optional<sat::Injection> onPartial(const sat::Solver&, const graph::PartialGraph&) {
    return std::nullopt;
  }

 private:
  std::optional<sat::Injection> onCandidate(const sat::Solver& solver, const graph::PartialGraph& g);

  graph::EdgeVarMap map_;
  CoNPChecker& checker_;
  SearchMode mode_;
  symmetry::SymmetryPropagator symmetry_;
  std::vector<graph::PartialGraph> solutions_;
  SearchStats stats_;
  std::function<void(const graph::PartialGraph&)> onSolution_;
};

/// Runs the search to completion (All) or to the first solution (First).
/// Throws std::logic_error on a soundness violation.
SearchResult runSearch(const sat::Formula& formula, const graph::EdgeVarMap& map, CoNPChecker& checker,
                       const SearchOptions& options = {}, std::span<const sat::Lit> assumptions = {});

}  // namespace smsccl::ccl
