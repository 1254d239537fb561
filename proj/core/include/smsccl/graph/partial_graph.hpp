#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "smsccl/sat/types.hpp"

namespace smsccl::graph {

enum class CellState : uint8_t { Absent = 0, Present = 1, Undefined = 2 };

/// A graph on vertices 1..n whose vertex pairs are present, absent or not
/// yet decided. Storage is a symmetric (n+1)x(n+1) matrix indexed by 1-based
/// vertices; the diagonal is always Absent.
class PartialGraph {
 public:
  PartialGraph() = default;
  /// All off-diagonal cells start in `initial`.
  explicit PartialGraph(int n, CellState initial = CellState::Undefined);

  static PartialGraph empty(int n) { return PartialGraph(n, CellState::Absent); }
  static PartialGraph complete(int n);
  static PartialGraph fromEdges(int n, std::span<const std::pair<int, int>> edges);
  static PartialGraph fromEdges(int n, std::initializer_list<std::pair<int, int>> edges) {
    return fromEdges(n, std::span<const std::pair<int, int>>(edges.begin(), edges.size()));
  }

  int order() const { return n_; }
  CellState cell(int u, int v) const { return cells_[u * stride_ + v]; }
  bool present(int u, int v) const { return cell(u, v) == CellState::Present; }
  void set(int u, int v, CellState state);
  void addEdge(int u, int v) { set(u, v, CellState::Present); }

  bool isFullyDefined() const;
  int countCells(CellState state) const;
  int degree(int v) const;
  std::vector<std::pair<int, int>> edges() const;
  std::vector<int> neighbors(int v) const;

  bool operator==(const PartialGraph& other) const = default;

 private:
  int n_ = 0;
  int stride_ = 1;
  std::vector<CellState> cells_;
};

/// Bijection between unordered pairs {u,v}, u<v, and variables
/// 1..n(n-1)/2 in row-major order of the strict upper triangle.
class EdgeVarMap {
 public:
  EdgeVarMap() = default;
  explicit EdgeVarMap(int n, int firstVar = 1);

  int order() const { return n_; }
  int count() const { return n_ * (n_ - 1) / 2; }
  int firstVar() const { return first_; }
  int lastVar() const { return first_ + count() - 1; }
  /// Variable of pair {u,v}; order of arguments does not matter.
  int var(int u, int v) const { return table_[u * (n_ + 1) + v]; }
  sat::Lit lit(int u, int v, bool present = true) const {
    return sat::Lit::make(var(u, v), !present);
  }
  std::pair<int, int> pair(int var) const { return pairs_.at(var - first_); }
  bool isEdgeVar(int var) const { return var >= first_ && var <= lastVar(); }

 private:
  int n_ = 0;
  int first_ = 1;
  std::vector<int> table_;
  std::vector<std::pair<int, int>> pairs_;
};

/// A permutation of 1..n stored as its image array.
class Permutation {
 public:
  Permutation() = default;
  /// `images[i-1]` is the image of i. Throws std::invalid_argument if the
  /// input is not a bijection on 1..n.
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(images_.size()) - 1; }
  int operator()(int v) const { return images_[v]; }
  Permutation inverse() const;
  /// (this ∘ other)(v) = this(other(v)).
  Permutation compose(const Permutation& other) const;
  std::vector<int> images() const { return {images_.begin() + 1, images_.end()}; }

  bool operator==(const Permutation& other) const = default;

 private:
  std::vector<int> images_{0};
};

/// E(π(G)) = {π(u)π(v) : uv ∈ E(G)}; undefined cells are carried along.
PartialGraph applyPermutation(const PartialGraph& g, const Permutation& pi);

/// Projection of an assignment (indexed by variable, index 0 unused) onto
/// the edge variables.
PartialGraph graphFromAssignment(std::span<const sat::LBool> assignment, const EdgeVarMap& map);

/// Blocking clause: the negation of the graph's edge assignment. Requires a
/// fully defined graph.
sat::Clause edgeBlockingClause(const PartialGraph& g, const EdgeVarMap& map);

enum class LexOrder { Less, Equal, Greater, Incomparable };

struct LexResult {
  LexOrder order = LexOrder::Equal;
  /// For Incomparable: the first cell (row < col) where either side is
  /// undefined before a strict difference was found.
  int row = 0;
  int col = 0;
};

/// Compares graphs by the concatenated rows of their adjacency matrices,
/// absent < present. Lower-triangle cells repeat their mirror image, so the
/// walk covers the strict upper triangle row by row.
LexResult lexCompare(const PartialGraph& g, const PartialGraph& h);

/// Canonicity by enumeration of all n! permutations (n <= 8).
bool isLexMinBruteForce(const PartialGraph& g);

/// Index of cell (row, col), row < col, in canonical cell order (0-based).
inline int cellIndex(int n, int row, int col) {
  return (row - 1) * n - (row - 1) * row / 2 + (col - row) - 1;
}

}  // namespace smsccl::graph
