#include <algorithm>
#include <random>
#include <stdexcept>

#include "smsccl/embed/embed.hpp"

namespace smsccl::embed {

using graph::PartialGraph;

namespace {

bool connected(const PartialGraph& g) {
  const int n = g.order();
  if (n == 0) return false;
  std::vector<char> seen(n + 1, 0);
  std::vector<int> stack{1};
  seen[1] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u : g.neighbors(v)) {
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == n;
}

}  // namespace

CoverChoice findCover(const PartialGraph& g, const CoverOptions& options) {
  if (!g.isFullyDefined()) throw std::invalid_argument("cover search needs a fully defined graph");
  const auto edges = g.edges();
  if (edges.empty()) throw std::invalid_argument("cover search needs at least one edge");
  if (!connected(g)) throw std::invalid_argument("cover search needs a connected graph");
  const int n = g.order();

  std::pair<int, int> seed = edges.front();
  if (options.seedEdge) {
    seed = *options.seedEdge;
    if (seed.first < 1 || seed.second < 1 || seed.first > n || seed.second > n || seed.first == seed.second ||
        !g.present(seed.first, seed.second)) {
      throw std::invalid_argument("seed edge is not an edge of the graph");
    }
  }
  std::mt19937_64 rng(options.tieSeed.value_or(0));

  CoverChoice result;
  CrossProductCover& cover = result.cover;
  cover.w.assign(n + 1, {0, 0});
  std::vector<char> determined(n + 1, 0);
  auto makeFree = [&](int v) {
    determined[v] = 1;
    cover.free.push_back(v);
  };
  makeFree(seed.first);
  makeFree(seed.second);
  result.freeEdge = seed;
  int remaining = n - 2;

  while (remaining > 0) {
    bool bound = false;
    for (int v = 1; v <= n && !bound; ++v) {
      if (determined[v]) continue;
      int first = 0;
      for (int u = 1; u <= n; ++u) {
        if (!determined[u] || !g.present(u, v)) continue;
        if (first == 0) {
          first = u;
        } else {
          cover.w[v] = {first, u};
          cover.order.push_back(v);
          determined[v] = 1;
          --remaining;
          bound = true;
          break;
        }
      }
    }
    if (bound) continue;
    // Stalled: free the vertex with the most determined neighbors.
    int best = -1;
    std::vector<int> tied;
    for (int v = 1; v <= n; ++v) {
      if (determined[v]) continue;
      int count = 0;
      for (int u : g.neighbors(v)) count += determined[u];
      if (count > best) {
        best = count;
        tied.assign(1, v);
      } else if (count == best) {
        tied.push_back(v);
      }
    }
    int chosen = tied.front();
    if (options.tieSeed) chosen = tied[std::uniform_int_distribution<std::size_t>(0, tied.size() - 1)(rng)];
    makeFree(chosen);
    --remaining;
  }
  std::sort(cover.free.begin(), cover.free.end());
  return result;
}

std::string verifyCover(const PartialGraph& g, const CrossProductCover& cover) {
  const int n = g.order();
  if (static_cast<int>(cover.w.size()) != n + 1) return "neighbor map size differs from graph order";
  std::vector<char> isFree(n + 1, 0);
  for (int v : cover.free) {
    if (v < 1 || v > n) return "free vertex " + std::to_string(v) + " out of range";
    if (isFree[v]) return "free vertex " + std::to_string(v) + " listed twice";
    isFree[v] = 1;
  }
  // Kahn's algorithm over the dependency relation u -> v for u in w_v.
  std::vector<int> indegree(n + 1, 0);
  std::vector<std::vector<int>> dependents(n + 1);
  for (int v = 1; v <= n; ++v) {
    const auto [a, b] = cover.w[v];
    if (isFree[v]) {
      if (a != 0 || b != 0) return "free vertex " + std::to_string(v) + " also has a neighbor pair";
      continue;
    }
    if (a == 0 && b == 0) return "vertex " + std::to_string(v) + " is neither free nor bound";
    if (a < 1 || b < 1 || a > n || b > n || a == b) return "vertex " + std::to_string(v) + " has an invalid pair";
    if (!g.present(v, a) || !g.present(v, b)) {
      return "non-edge: pair of vertex " + std::to_string(v) + " contains a non-neighbor";
    }
    indegree[v] = 2;
    dependents[a].push_back(v);
    dependents[b].push_back(v);
  }
  std::vector<int> ready;
  for (int v = 1; v <= n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  int processed = 0;
  while (!ready.empty()) {
    const int v = ready.back();
    ready.pop_back();
    ++processed;
    for (int d : dependents[v]) {
      if (--indegree[d] == 0) ready.push_back(d);
    }
  }
  if (processed != n) return "cycle in the cross-product dependencies";
  return {};
}

}  // namespace smsccl::embed
