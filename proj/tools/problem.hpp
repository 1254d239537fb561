#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "smsccl/ccl/checkers.hpp"
#include "smsccl/encodings/encodings.hpp"
#include "smsccl/symmetry/propagator.hpp"

namespace smsccl::cli {

/// Raised for flag combinations that are syntactically fine but invalid for
/// the subcommand; mapped to the usage exit code.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProblemConfig {
  std::string problem;
  int n = 0;
  int k = 3;
  std::string dimacsPath;
  std::string mappingPath;
  /// Checker for the dimacs problem: none, kcolor or 010.
  std::string checker = "none";
  bool frequencyGate = true;
  uint64_t partialBudget = 3000;
  bool partialChecks = true;
};

/// Problem names accepted by --problem.
const std::vector<std::string>& problemNames();

/// A loaded problem: encoding plus a way to make fresh co-NP checkers.
class Problem {
 public:
  explicit Problem(const ProblemConfig& config);

  const encodings::EncodingBundle& bundle() const { return bundle_; }
  std::unique_ptr<ccl::CoNPChecker> makeChecker() const;
  symmetry::SymmetryOptions symmetryOptions() const;

  /// Independent check that a reported solution has the target property.
  /// Returns an empty string when it does, otherwise the reason. Graphs
  /// above `bruteForceLimit` vertices are only checked for canonicity.
  std::string bruteForceVerify(const graph::PartialGraph& g, int bruteForceLimit = 12) const;

  /// Clause a checker would emit for a logged coloring, or a reason why the
  /// record is malformed.
  std::string coloringRecordError(const std::string& kind, const std::vector<int>& values,
                                  const sat::Clause& clause) const;

 private:
  enum class Checker { None, KColor, Color010 };

  ProblemConfig config_;
  encodings::EncodingBundle bundle_;
  Checker checker_ = Checker::None;
};

std::string readFile(const std::string& path);

}  // namespace smsccl::cli
