#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "smsccl/ccl/engine.hpp"
#include "smsccl/encodings/encodings.hpp"

namespace smsccl::cube {

/// A partial assignment of edge variables, used as solver assumptions.
using Cube = std::vector<sat::Lit>;

struct CubeGenOptions {
  /// Number of assigned edge variables at which a cube is cut off.
  int threshold = 120;
  /// Search time before cubing starts.
  double prerunSeconds = 0.0;
  symmetry::SymmetryOptions symmetry;
  int conflictInterval = 20;
  sat::ClauseLog* log = nullptr;
  sat::BranchOrder branchOrder = sat::BranchOrder::ObservedSequential;
};

struct CubeGenResult {
  /// Cubes in the order they were cut off; full solution cubes appended
  /// last.
  std::vector<Cube> cubes;
  /// Symmetry and co-certificate clauses learned on the way.
  std::vector<sat::Clause> carriedClauses;
  /// Solutions found by the generator itself (each is also a full cube).
  std::vector<graph::PartialGraph> solutions;
  ccl::SearchStats stats;
};

/// Runs the full search; once `prerunSeconds` have passed, every
/// propagation fixpoint with at least `threshold` edge variables assigned
/// becomes a cube whose negation is injected. The run ends when the
/// remaining search space is exhausted.
CubeGenResult generateCubes(const encodings::EncodingBundle& bundle, ccl::CoNPChecker& checker,
                            const CubeGenOptions& options = {});

using CheckerFactory = std::function<std::unique_ptr<ccl::CoNPChecker>()>;

enum class CubeStatus { Solved, Failed };

struct CubeReport {
  std::size_t id = 0;
  CubeStatus status = CubeStatus::Solved;
  std::vector<std::string> solutions;  // graph6
  double seconds = 0.0;
  std::string error;
};

struct CubeSolveOptions {
  symmetry::SymmetryOptions symmetry;
  int conflictInterval = 20;
};

/// Enumerates all solutions consistent with the cube using a fresh solver
/// and a fresh checker.
CubeReport solveCube(const encodings::EncodingBundle& bundle, const Cube& cube, std::size_t id,
                     ccl::CoNPChecker& checker, const CubeSolveOptions& options = {});

/// Solves all cubes with `jobs` worker threads pulling from a shared queue.
/// Reports are returned ordered by cube id.
std::vector<CubeReport> solveCubes(const encodings::EncodingBundle& bundle, const std::vector<Cube>& cubes,
                                   const CheckerFactory& makeChecker, int jobs,
                                   const CubeSolveOptions& options = {});

/// Sorted, duplicate-free union of all reported solutions.
std::vector<std::string> dedupMerge(const std::vector<CubeReport>& reports);

/// "a lit ... lit 0" per cube.
void writeCubes(std::ostream& out, const std::vector<Cube>& cubes);
/// Accepts blank lines and "c" comments; throws std::runtime_error with the
/// line number on malformed input or a cube with complementary literals.
std::vector<Cube> readCubes(std::istream& in);

/// "cube <id> <solved|failed> <#solutions> <seconds>" per report.
void writeReports(std::ostream& out, const std::vector<CubeReport>& reports);

}  // namespace smsccl::cube
