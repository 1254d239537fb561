#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "smsccl/embed/embed.hpp"
#include "smsccl/graph/graph6.hpp"

namespace smsccl::embed {

using graph::PartialGraph;

std::optional<std::vector<int>> findSubgraph(const PartialGraph& h, const PartialGraph& g) {
  const int k = h.order();
  const int n = g.order();
  if (k > n) return std::nullopt;
  if (n > 63) throw std::invalid_argument("subgraph search supports host graphs up to 63 vertices");
  std::vector<uint64_t> adj(n + 1, 0);
  std::vector<int> degG(n + 1, 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= uint64_t{1} << v;
    adj[v] |= uint64_t{1} << u;
    ++degG[u];
    ++degG[v];
  }
  std::vector<int> degH(k + 1, 0);
  for (int u = 1; u <= k; ++u) degH[u] = h.degree(u);

  // Pattern order: start with a maximum-degree vertex, then repeatedly take
  // the vertex with the most already-ordered neighbors (ties: higher degree).
  std::vector<int> order;
  std::vector<char> placed(k + 1, 0);
  for (int step = 0; step < k; ++step) {
    int best = 0, bestLinks = -1;
    for (int u = 1; u <= k; ++u) {
      if (placed[u]) continue;
      int links = 0;
      for (int w : order) links += h.present(u, w);
      if (links > bestLinks || (links == bestLinks && degH[u] > degH[best])) {
        best = u;
        bestLinks = links;
      }
    }
    placed[best] = 1;
    order.push_back(best);
  }

  std::vector<int> mapping(k + 1, 0);
  uint64_t used = 0;
  std::function<bool(std::size_t)> extend = [&](std::size_t i) {
    if (i == order.size()) return true;
    const int u = order[i];
    uint64_t candidates = 0;
    for (int x = 1; x <= n; ++x) candidates |= uint64_t{1} << x;
    candidates &= ~used;
    for (std::size_t j = 0; j < i; ++j) {
      if (h.present(u, order[j])) candidates &= adj[mapping[order[j]]];
    }
    while (candidates) {
      const int x = __builtin_ctzll(candidates);
      candidates &= candidates - 1;
      if (degG[x] < degH[u]) continue;
      mapping[u] = x;
      used |= uint64_t{1} << x;
      if (extend(i + 1)) return true;
      used &= ~(uint64_t{1} << x);
    }
    mapping[u] = 0;
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return mapping;
}

PartialGraph tenVertexUnembeddable() {
  // T0=1 T1=2 T2=3 S0=4 S1=5 C=6 O1=7 O2=8 O3=9 O4=10
  return PartialGraph::fromEdges(10, {{1, 2}, {1, 3}, {2, 3}, {5, 6}, {9, 10}, {1, 6}, {4, 6}, {3, 10},
                                      {5, 10}, {2, 7}, {4, 7}, {7, 8}, {4, 8}, {8, 9}, {5, 9}});
}

UnembeddableLibrary UnembeddableLibrary::builtin() {
  UnembeddableLibrary lib;
  lib.graphs.push_back(tenVertexUnembeddable());
  lib.names.push_back("ten-vertex");
  lib.graphs.push_back(graph::fromGraph6(kFifteenVertexGraph6));
  lib.names.push_back("fifteen-vertex");
  return lib;
}

UnembeddableLibrary UnembeddableLibrary::fromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open library file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  UnembeddableLibrary lib;
  lib.graphs = graph::readGraph6Lines(buffer.str());
  for (std::size_t i = 0; i < lib.graphs.size(); ++i) {
    if (lib.graphs[i].order() > 14) {
      throw std::runtime_error("library graph " + std::to_string(i + 1) + " in " + path + " has more than 14 vertices");
    }
    lib.names.push_back(path + ":" + std::to_string(i + 1));
  }
  return lib;
}

void UnembeddableLibrary::append(const UnembeddableLibrary& other) {
  graphs.insert(graphs.end(), other.graphs.begin(), other.graphs.end());
  names.insert(names.end(), other.names.begin(), other.names.end());
}

std::optional<LibraryHit> subgraphFilter(const PartialGraph& g, const UnembeddableLibrary& lib) {
  for (std::size_t i = 0; i < lib.graphs.size(); ++i) {
    if (auto mapping = findSubgraph(lib.graphs[i], g)) return LibraryHit{i, std::move(*mapping)};
  }
  return std::nullopt;
}

}  // namespace smsccl::embed
