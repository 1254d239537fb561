#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smsccl/sat/types.hpp"

namespace smsccl::sat {

class ClauseLog;
class Solver;

enum class SolveStatus {
  Sat,
  Unsat,
  /// A propagator violated its contract (e.g. injected a satisfied clause).
  InternalError,
};

/// Where in the search a propagator callback was triggered.
enum class CheckPoint {
  /// Propagation fixpoint with unassigned variables left.
  Partial,
  /// Every observed variable is assigned; auxiliaries may still be open.
  ObservedComplete,
  /// Every variable is assigned. A Sat answer requires a NoAction here.
  Full,
};

/// A clause handed back to the solver by a propagator. `note` is written to
/// the clause log as a comment above the clause (witness for the lemma).
struct Injection {
  Clause clause;
  std::string note;
};

/// External propagator hook. The callback sees the solver's current
/// assignment and may return a clause; that clause must be falsified or
/// propagating under the assignment the callback observed.
class Propagator {
 public:
  virtual ~Propagator() = default;
  virtual std::optional<Injection> check(const Solver& solver, CheckPoint point) = 0;
};

/// When the solver calls the propagator. Full assignments always trigger a
/// call; the other triggers are optional.
/// Decision order. Activity is plain VSIDS. ObservedFirst decides every
/// unassigned observed variable (by activity) before any other variable.
/// ObservedSequential decides observed variables in increasing index order,
/// then falls back to activity.
enum class BranchOrder { Activity, ObservedFirst, ObservedSequential };

struct HookPolicy {
  /// Partial-assignment calls happen once per this many conflicts; 0 disables.
  int conflictInterval = 20;
  /// Partial-assignment calls happen at every this-many-th propagation
  /// fixpoint; 0 disables.
  int fixpointInterval = 0;
  /// Inclusive range of observed variables (edge variables); empty if
  /// observedLast < observedFirst.
  int observedFirst = 1;
  int observedLast = 0;
  /// Call once as soon as every observed variable is assigned.
  bool callWhenObservedComplete = true;
  /// Call at every fixpoint where at least this many observed variables are
  /// assigned; 0 disables.
  int observedThreshold = 0;
  BranchOrder branchOrder = BranchOrder::Activity;
};

struct SolverOptions {
  bool restarts = true;
  /// VSIDS activity ordering; when off, the lowest unassigned variable is
  /// chosen.
  bool activityHeuristic = true;
  bool phaseSaving = true;
  int lubyUnit = 100;
  double variableDecay = 0.95;
  double clauseDecay = 0.999;
  /// Verifies the two-watched-literal invariant after every propagation
  /// fixpoint. Expensive; meant for tests.
  bool checkInvariants = false;
};

struct SolverStats {
  uint64_t conflicts = 0;
  uint64_t decisions = 0;
  uint64_t propagations = 0;
  uint64_t restarts = 0;
  uint64_t hookCalls = 0;
  uint64_t injected = 0;
  uint64_t learnedClauses = 0;
  uint64_t deletedClauses = 0;
};

/// First-UIP CDCL with two watched literals, VSIDS, phase saving and Luby
/// restarts. Supports incremental clause addition, assumptions, and an
/// external propagator that can inject permanent clauses during search.
class Solver {
 public:
  explicit Solver(int variableCount = 0, SolverOptions options = {});
  ~Solver();

  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;
  Solver(Solver&&) noexcept;
  Solver& operator=(Solver&&) noexcept;

  int newVar();
  /// Declares variables up to `count` (no-op when already declared).
  void reserveVars(int count);
  int variableCount() const;

  /// Adds a permanent clause. Throws std::invalid_argument on an undeclared
  /// variable. An empty clause makes the instance unsatisfiable.
  void addClause(std::span<const Lit> clause);
  void addClause(std::initializer_list<Lit> clause) {
    addClause(std::span<const Lit>(clause.begin(), clause.size()));
  }
  /// Adds a clause justified outside the formula (symmetry, coloring or
  /// blocking clause). It is written to the clause log with `note`.
  void addLemma(std::span<const Lit> clause, const std::string& note);
  void addFormula(const Formula& formula);

  void setPropagator(Propagator* propagator, HookPolicy policy = {});
  void setClauseLog(ClauseLog* log);

  SolveStatus solve(std::span<const Lit> assumptions = {});
  SolveStatus solve(std::initializer_list<Lit> assumptions) {
    return solve(std::span<const Lit>(assumptions.begin(), assumptions.size()));
  }

  /// Current (possibly partial) assignment; meaningful inside callbacks.
  LBool value(int var) const;
  LBool value(Lit lit) const;
  int decisionLevel() const;
  /// Number of observed variables currently assigned.
  int assignedObserved() const;

  /// Model of the last Sat answer.
  bool modelValue(int var) const;
  bool modelValue(Lit lit) const;
  const std::vector<LBool>& model() const;

  /// Formula clauses plus injected clauses (not learned ones).
  std::size_t permanentClauseCount() const;
  const SolverStats& stats() const;
  std::string lastError() const;

  /// Checks the two-watched-literal invariant; returns an empty string when
  /// it holds, otherwise a description of the first violation.
  std::string verifyWatches() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Convenience: solves a formula from scratch without hooks.
SolveStatus solveFormula(const Formula& formula, std::vector<LBool>* model = nullptr,
                         SolverOptions options = {});

}  // namespace smsccl::sat
