#include "smsccl/symmetry/minimality.hpp"

#include <algorithm>
#include <stdexcept>

namespace smsccl::symmetry {

using graph::CellState;
using graph::PartialGraph;

namespace {

// Adjacency as bitmasks (bit v for vertex v) to make refinement and twin
// tests cheap. Orders up to 63 fit.
struct Masks {
  explicit Masks(const PartialGraph& g) : n(g.order()), present(n + 1, 0), undefined(n + 1, 0) {
    for (int u = 1; u <= n; ++u) {
      for (int v = 1; v <= n; ++v) {
        if (u == v) continue;
        const CellState s = g.cell(u, v);
        if (s == CellState::Present) present[u] |= bit(v);
        if (s == CellState::Undefined) undefined[u] |= bit(v);
      }
    }
  }
  static uint64_t bit(int v) { return uint64_t{1} << v; }
  CellState state(int u, int v) const {
    if (present[u] & bit(v)) return CellState::Present;
    if (undefined[u] & bit(v)) return CellState::Undefined;
    return CellState::Absent;
  }
  bool twins(int u, int w) const {
    const uint64_t ignore = ~(bit(u) | bit(w));
    return ((present[u] ^ present[w]) & ignore) == 0 && ((undefined[u] ^ undefined[w]) & ignore) == 0;
  }

  int n;
  std::vector<uint64_t> present;
  std::vector<uint64_t> undefined;
};

class Search {
 public:
  Search(const PartialGraph& g, uint64_t budget) : masks_(g), n_(g.order()), budget_(budget) {}

  CheckResult run() {
    CheckResult result;
    std::vector<int> order(n_ + 2, 0);
    std::vector<char> starts(n_ + 2, 0);
    for (int p = 1; p <= n_; ++p) order[p] = p;
    starts[1] = 1;
    starts[n_ + 1] = 1;
    const bool stopped = n_ > 0 && descend(0, order, starts);
    result.nodes = nodes_;
    if (exceeded_) {
      result.outcome = CheckOutcome::BudgetExceeded;
    } else if (stopped) {
      result.outcome = CheckOutcome::Witness;
      result.witness = buildWitness();
    }
    return result;
  }

 private:
  // Positions 1..k are fixed; returns true when the search must stop
  // (witness found or budget exhausted).
  bool descend(int k, const std::vector<int>& order, const std::vector<char>& starts) {
    if (k >= n_ - 1) return false;
    const int pos = k + 1;
    int blockEnd = pos + 1;
    while (!starts[blockEnd]) ++blockEnd;

    std::vector<int> candidates(order.begin() + pos, order.begin() + blockEnd);
    std::sort(candidates.begin(), candidates.end());
    std::vector<int> representatives;
    for (int u : candidates) {
      bool dup = false;
      for (int r : representatives) {
        if (masks_.twins(u, r)) {
          dup = true;
          break;
        }
      }
      if (!dup) representatives.push_back(u);
    }

    std::vector<int> next(order.size());
    std::vector<char> nextStarts(starts.size());
    std::vector<int> bucket[3];
    for (int u : representatives) {
      ++nodes_;
      if (budget_ != kUnlimitedBudget && nodes_ > budget_) {
        exceeded_ = true;
        return true;
      }
      next = order;
      nextStarts = starts;
      next[pos] = u;
      int fill = pos + 1;
      for (int x : candidates) {
        if (x != u) next[fill++] = x;
      }
      nextStarts[pos] = 1;
      nextStarts[pos + 1] = 1;

      // Refine every unfixed block by the state of each member towards u:
      // absent first, then undefined, then present.
      int s = pos + 1;
      while (s <= n_) {
        int e = s + 1;
        while (!nextStarts[e]) ++e;
        if (e - s > 1) {
          for (auto& b : bucket) b.clear();
          for (int p = s; p < e; ++p) bucket[static_cast<int>(masks_.state(u, next[p]))].push_back(next[p]);
          int w = s;
          for (int cls : {0, 2, 1}) {
            if (bucket[cls].empty()) continue;
            nextStarts[w] = 1;
            for (int x : bucket[cls]) next[w++] = x;
          }
        }
        s = e;
      }

      // Compare row `pos` of the relabeled matrix with row `pos` of G.
      bool equal = true;
      for (int j = pos + 1; j <= n_; ++j) {
        const CellState a = masks_.state(pos, j);
        const CellState b = masks_.state(u, next[j]);
        if (a == CellState::Undefined || b == CellState::Undefined) {
          equal = false;
          break;
        }
        if (a == b) continue;
        if (a == CellState::Present && b == CellState::Absent) {
          witnessOrder_ = next;
          strictRow_ = pos;
          strictCol_ = j;
          return true;
        }
        equal = false;
        break;
      }
      if (equal && descend(pos, next, nextStarts)) return true;
    }
    return false;
  }

  MinimalityWitness buildWitness() const {
    std::vector<int> images(witnessOrder_.begin() + 1, witnessOrder_.begin() + 1 + n_);
    MinimalityWitness w;
    w.pi = graph::Permutation(std::move(images));
    for (int r = 1; r <= strictRow_; ++r) {
      for (int c = r + 1; c <= n_; ++c) {
        if (r == strictRow_ && c == strictCol_) {
          w.strict = {r, c, w.pi(r), w.pi(c)};
          return w;
        }
        const int pr = w.pi(r);
        const int pc = w.pi(c);
        if ((pr == r && pc == c) || (pr == c && pc == r)) continue;
        w.prefix.push_back({r, c, pr, pc});
      }
    }
    return w;
  }

  Masks masks_;
  int n_;
  uint64_t budget_;
  uint64_t nodes_ = 0;
  bool exceeded_ = false;
  std::vector<int> witnessOrder_;
  int strictRow_ = 0;
  int strictCol_ = 0;
};

bool selfMapped(const CellPair& p) {
  return (p.row == p.imageRow && p.col == p.imageCol) || (p.row == p.imageCol && p.col == p.imageRow);
}

}  // namespace

CheckResult MinimalityChecker::check(const PartialGraph& g, uint64_t budget) {
  if (g.order() > 63) throw std::invalid_argument("minimality check supports at most 63 vertices");
  return Search(g, budget).run();
}

CheckResult checkMinimal(const PartialGraph& g, uint64_t budget) { return MinimalityChecker{}.check(g, budget); }

bool witnessHolds(const PartialGraph& g, const MinimalityWitness& w) {
  const int n = g.order();
  if (w.pi.size() != n) return false;
  const CellPair& s = w.strict;
  if (s.row < 1 || s.row >= s.col || s.col > n) return false;
  if (s.imageRow != w.pi(s.row) || s.imageCol != w.pi(s.col)) return false;
  if (g.cell(s.row, s.col) != CellState::Present || g.cell(s.imageRow, s.imageCol) != CellState::Absent) return false;
  std::size_t k = 0;
  for (int r = 1; r <= s.row; ++r) {
    for (int c = r + 1; c <= n; ++c) {
      if (r == s.row && c == s.col) return k == w.prefix.size();
      const CellPair expected{r, c, w.pi(r), w.pi(c)};
      if (selfMapped(expected)) continue;
      if (k >= w.prefix.size()) return false;
      const CellPair& p = w.prefix[k++];
      if (p.row != r || p.col != c || p.imageRow != expected.imageRow || p.imageCol != expected.imageCol) return false;
      const CellState a = g.cell(r, c);
      const CellState b = g.cell(p.imageRow, p.imageCol);
      if (a == CellState::Undefined || a != b) return false;
    }
  }
  return false;
}

sat::Clause clauseFromWitness(const MinimalityWitness& w, const PartialGraph& g, const graph::EdgeVarMap& map) {
  if (!witnessHolds(g, w)) throw std::logic_error("minimality witness is inconsistent with the assignment");
  sat::Clause clause;
  clause.reserve(w.prefix.size() + 2);
  for (const CellPair& p : w.prefix) {
    if (g.cell(p.row, p.col) == CellState::Present) {
      clause.push_back(map.lit(p.row, p.col, false));
    } else {
      clause.push_back(map.lit(p.imageRow, p.imageCol, true));
    }
  }
  clause.push_back(map.lit(w.strict.row, w.strict.col, false));
  clause.push_back(map.lit(w.strict.imageRow, w.strict.imageCol, true));
  sat::normalizeClause(clause);
  return clause;
}

std::optional<std::string> verifySymmetryClause(const sat::Clause& clause, const graph::Permutation& pi,
                                                const graph::EdgeVarMap& map) {
  const int n = map.order();
  if (pi.size() != n) return "permutation size " + std::to_string(pi.size()) + " differs from order " + std::to_string(n);
  PartialGraph forced(n, CellState::Undefined);
  for (sat::Lit l : clause) {
    if (!map.isEdgeVar(l.var())) return "literal " + std::to_string(l.toDimacs()) + " is not an edge variable";
    auto [u, v] = map.pair(l.var());
    const CellState want = l.isNegative() ? CellState::Present : CellState::Absent;
    const CellState have = forced.cell(u, v);
    if (have != CellState::Undefined && have != want) return std::nullopt;  // tautology
    forced.set(u, v, want);
  }
  for (int r = 1; r <= n; ++r) {
    for (int c = r + 1; c <= n; ++c) {
      const CellPair p{r, c, pi(r), pi(c)};
      if (selfMapped(p)) continue;
      const CellState a = forced.cell(r, c);
      const CellState b = forced.cell(p.imageRow, p.imageCol);
      if (a == CellState::Present && b == CellState::Absent) return std::nullopt;
      if (a != CellState::Present && b != CellState::Absent) {
        return "cell (" + std::to_string(r) + "," + std::to_string(c) +
               ") may compare greater under a falsifying assignment";
      }
    }
  }
  return "clause does not force a strict decrease";
}

std::string formatPermutationNote(const graph::Permutation& pi) {
  std::string note = "perm";
  for (int v = 1; v <= pi.size(); ++v) note += " " + std::to_string(pi(v));
  return note;
}

}  // namespace smsccl::symmetry
