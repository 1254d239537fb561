#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smsccl/encodings/encodings.hpp"
#include "smsccl/graph/partial_graph.hpp"
#include "smsccl/sat/types.hpp"

namespace smsccl::ccl {

/// color[v] in 1..k for v in 1..n; index 0 is unused.
struct KColoring {
  int k = 0;
  std::vector<int> color;
};

/// value[v] in {0,1} for v in 1..n; index 0 is unused.
struct Coloring010 {
  std::vector<uint8_t> value;
};

enum class CertificateKind { KColoring, Coloring010 };

struct CoCertificate {
  CertificateKind kind = CertificateKind::KColoring;
  /// The coloring, vertex-indexed from 1 (index 0 unused).
  std::vector<int> payload;
  sat::Clause blockingClause;
  /// Clause-log comment describing the certificate.
  std::string note;
};

/// Decides the co-NP side of the target property on a fully defined graph.
/// Returns std::nullopt when the graph is a solution.
class CoNPChecker {
 public:
  virtual ~CoNPChecker() = default;
  virtual std::optional<CoCertificate> check(const graph::PartialGraph& g) = 0;
};

/// Every candidate is a solution (enumerates the existential part).
class AcceptAllChecker : public CoNPChecker {
 public:
  std::optional<CoCertificate> check(const graph::PartialGraph&) override { return std::nullopt; }
};

/// Backtracking over vertices 1..n with colors tried in ascending order.
/// The first coloring found is the lexicographically smallest one.
std::optional<KColoring> kColorCheck(const graph::PartialGraph& g, int k);

/// One positive literal e_uv per same-colored pair u<v.
sat::Clause coloringClause(const KColoring& c, const graph::EdgeVarMap& map);

/// Solutions are the graphs that are not k-colorable.
class KColorChecker : public CoNPChecker {
 public:
  KColorChecker(graph::EdgeVarMap map, int k) : map_(std::move(map)), k_(k) {}
  std::optional<CoCertificate> check(const graph::PartialGraph& g) override;

 private:
  graph::EdgeVarMap map_;
  int k_;
};

/// Edge counts over the candidate graphs seen so far.
class EdgeFrequencyTable {
 public:
  explicit EdgeFrequencyTable(int n = 0) : n_(n), counts_(static_cast<std::size_t>(n + 1) * (n + 1), 0) {}
  void update(const graph::PartialGraph& g);
  uint64_t count(int u, int v) const { return counts_[u * (n_ + 1) + v]; }
  uint64_t total() const { return total_; }
  /// count/total, or 0.5 before any graph was seen.
  double relFreq(int u, int v) const {
    return total_ == 0 ? 0.5 : static_cast<double>(count(u, v)) / static_cast<double>(total_);
  }

 private:
  int n_;
  std::vector<uint64_t> counts_;
  uint64_t total_ = 0;
};

/// Value order for vertex v when both 0 and 1 are feasible. `partial`
/// holds the values of vertices 1..v-1. The value whose contribution to the
/// blocking clause has the lower score (likelier to stay false on later
/// candidates) comes first; ties prefer 0.
std::pair<uint8_t, uint8_t> heuristicColorOrder(int v, const std::vector<uint8_t>& partial,
                                                const EdgeFrequencyTable& freq);

/// A 010-coloring: no edge with both ends 0, no triangle with all ends 1.
/// Vertices are processed in index order with forward checking. Without a
/// frequency table, 0 is tried before 1.
std::optional<Coloring010> color010Check(const graph::PartialGraph& g, const EdgeFrequencyTable* freq = nullptr);

/// ⋁_{c(u)=c(v)=0} e_uv ∨ ⋁_{c(a)=c(b)=c(c)=1} t_abc.
sat::Clause blockingClause010(const Coloring010& c, const graph::EdgeVarMap& map,
                              const encodings::TriangleVarMap& triangles);

/// Solutions are the graphs without a 010-coloring. Updates its frequency
/// table once per candidate.
class Color010Checker : public CoNPChecker {
 public:
  Color010Checker(graph::EdgeVarMap map, encodings::TriangleVarMap triangles, bool useHeuristic = true);
  std::optional<CoCertificate> check(const graph::PartialGraph& g) override;
  const EdgeFrequencyTable& frequencies() const { return freq_; }

 private:
  graph::EdgeVarMap map_;
  encodings::TriangleVarMap triangles_;
  bool useHeuristic_;
  EdgeFrequencyTable freq_;
};

/// Exhaustive oracles for tests: all k^n colorings, all 2^n 010-assignments.
bool isKColorableBruteForce(const graph::PartialGraph& g, int k);
bool is010ColorableBruteForce(const graph::PartialGraph& g);
bool isValidKColoring(const graph::PartialGraph& g, const KColoring& c);
bool isValid010Coloring(const graph::PartialGraph& g, const Coloring010& c);

}  // namespace smsccl::ccl
