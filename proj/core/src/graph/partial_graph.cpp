#include "smsccl/graph/partial_graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace smsccl::graph {

PartialGraph::PartialGraph(int n, CellState initial)
    : n_(n), stride_(n + 1), cells_(static_cast<std::size_t>(n + 1) * (n + 1), initial) {
  if (n < 0) throw std::invalid_argument("graph order must be non-negative");
  // Index 0 is padding; keep it in a fixed state so that equality only
  // depends on the real cells.
  for (int v = 0; v <= n; ++v) {
    cells_[v * stride_ + v] = CellState::Absent;
    cells_[v] = CellState::Absent;
    cells_[v * stride_] = CellState::Absent;
  }
}

PartialGraph PartialGraph::complete(int n) {
  PartialGraph g(n, CellState::Present);
  return g;
}

PartialGraph PartialGraph::fromEdges(int n, std::span<const std::pair<int, int>> edges) {
  PartialGraph g = empty(n);
  for (auto [u, v] : edges) g.addEdge(u, v);
  return g;
}

void PartialGraph::set(int u, int v, CellState state) {
  if (u < 1 || v < 1 || u > n_ || v > n_) {
    throw std::out_of_range("vertex pair (" + std::to_string(u) + "," + std::to_string(v) +
                            ") outside 1.." + std::to_string(n_));
  }
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  cells_[u * stride_ + v] = state;
  cells_[v * stride_ + u] = state;
}

bool PartialGraph::isFullyDefined() const { return countCells(CellState::Undefined) == 0; }

int PartialGraph::countCells(CellState state) const {
  int count = 0;
  for (int u = 1; u <= n_; ++u) {
    for (int v = u + 1; v <= n_; ++v) count += cell(u, v) == state;
  }
  return count;
}

int PartialGraph::degree(int v) const {
  int d = 0;
  for (int u = 1; u <= n_; ++u) d += present(u, v);
  return d;
}

std::vector<std::pair<int, int>> PartialGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 1; u <= n_; ++u) {
    for (int v = u + 1; v <= n_; ++v) {
      if (present(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<int> PartialGraph::neighbors(int v) const {
  std::vector<int> out;
  for (int u = 1; u <= n_; ++u) {
    if (present(v, u)) out.push_back(u);
  }
  return out;
}

EdgeVarMap::EdgeVarMap(int n, int firstVar)
    : n_(n), first_(firstVar), table_(static_cast<std::size_t>(n + 1) * (n + 1), 0) {
  int var = firstVar;
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      table_[u * (n + 1) + v] = var;
      table_[v * (n + 1) + u] = var;
      pairs_.emplace_back(u, v);
      ++var;
    }
  }
}

Permutation::Permutation(std::vector<int> images) {
  const int n = static_cast<int>(images.size());
  std::vector<char> hit(n + 1, 0);
  for (int x : images) {
    if (x < 1 || x > n || hit[x]) throw std::invalid_argument("not a permutation of 1..n");
    hit[x] = 1;
  }
  images_.reserve(n + 1);
  images_.assign(1, 0);
  images_.insert(images_.end(), images.begin(), images.end());
}

Permutation Permutation::identity(int n) {
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(size());
  for (int v = 1; v <= size(); ++v) inv[images_[v] - 1] = v;
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) throw std::invalid_argument("permutation sizes differ");
  std::vector<int> out(size());
  for (int v = 1; v <= size(); ++v) out[v - 1] = images_[other(v)];
  return Permutation(std::move(out));
}

PartialGraph applyPermutation(const PartialGraph& g, const Permutation& pi) {
  const int n = g.order();
  if (pi.size() != n) throw std::invalid_argument("permutation size differs from graph order");
  PartialGraph out(n, CellState::Absent);
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) out.set(pi(u), pi(v), g.cell(u, v));
  }
  return out;
}

PartialGraph graphFromAssignment(std::span<const sat::LBool> assignment, const EdgeVarMap& map) {
  const int n = map.order();
  PartialGraph g(n, CellState::Undefined);
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      const int var = map.var(u, v);
      const sat::LBool b = static_cast<std::size_t>(var) < assignment.size() ? assignment[var] : sat::LBool::Undef;
      if (b == sat::LBool::True) {
        g.set(u, v, CellState::Present);
      } else if (b == sat::LBool::False) {
        g.set(u, v, CellState::Absent);
      }
    }
  }
  return g;
}

sat::Clause edgeBlockingClause(const PartialGraph& g, const EdgeVarMap& map) {
  sat::Clause clause;
  const int n = g.order();
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      const CellState s = g.cell(u, v);
      if (s == CellState::Undefined) throw std::invalid_argument("blocking clause needs a fully defined graph");
      clause.push_back(map.lit(u, v, s != CellState::Present));
    }
  }
  return clause;
}

LexResult lexCompare(const PartialGraph& g, const PartialGraph& h) {
  if (g.order() != h.order()) throw std::invalid_argument("lexCompare needs graphs of equal order");
  const int n = g.order();
  for (int r = 1; r <= n; ++r) {
    for (int c = r + 1; c <= n; ++c) {
      const CellState a = g.cell(r, c);
      const CellState b = h.cell(r, c);
      if (a == CellState::Undefined || b == CellState::Undefined) return {LexOrder::Incomparable, r, c};
      if (a != b) return {a == CellState::Absent ? LexOrder::Less : LexOrder::Greater, r, c};
    }
  }
  return {LexOrder::Equal, 0, 0};
}

bool isLexMinBruteForce(const PartialGraph& g) {
  const int n = g.order();
  if (n > 8) throw std::invalid_argument("brute-force canonicity is limited to n <= 8");
  if (!g.isFullyDefined()) throw std::invalid_argument("brute-force canonicity needs a fully defined graph");
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 1);
  do {
    const PartialGraph image = applyPermutation(g, Permutation(images));
    if (lexCompare(image, g).order == LexOrder::Less) return false;
  } while (std::next_permutation(images.begin(), images.end()));
  return true;
}

}  // namespace smsccl::graph
