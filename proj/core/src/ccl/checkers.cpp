#include "smsccl/ccl/checkers.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace smsccl::ccl {

using graph::PartialGraph;

namespace {

std::vector<std::vector<int>> lowerNeighbors(const PartialGraph& g) {
  const int n = g.order();
  std::vector<std::vector<int>> out(n + 1);
  for (int v = 1; v <= n; ++v) {
    for (int u = 1; u < v; ++u) {
      if (g.present(u, v)) out[v].push_back(u);
    }
  }
  return out;
}

void requireFullyDefined(const PartialGraph& g) {
  if (!g.isFullyDefined()) throw std::invalid_argument("coloring checks need a fully defined graph");
}

}  // namespace

std::optional<KColoring> kColorCheck(const PartialGraph& g, int k) {
  requireFullyDefined(g);
  const int n = g.order();
  KColoring result{k, std::vector<int>(n + 1, 0)};
  if (n == 0) return result;
  if (k < 1) return std::nullopt;
  const auto lower = lowerNeighbors(g);
  std::vector<int>& color = result.color;
  // Colors above maxUsed+1 are renamings of smaller choices and would
  // never be reached first by the ascending search.
  std::function<bool(int, int)> assign = [&](int v, int maxUsed) {
    if (v > n) return true;
    const int limit = std::min(k, maxUsed + 1);
    for (int c = 1; c <= limit; ++c) {
      bool clash = false;
      for (int u : lower[v]) {
        if (color[u] == c) {
          clash = true;
          break;
        }
      }
      if (clash) continue;
      color[v] = c;
      if (assign(v + 1, std::max(maxUsed, c))) return true;
    }
    color[v] = 0;
    return false;
  };
  if (!assign(1, 0)) return std::nullopt;
  return result;
}

sat::Clause coloringClause(const KColoring& c, const graph::EdgeVarMap& map) {
  const int n = map.order();
  if (static_cast<int>(c.color.size()) != n + 1) throw std::invalid_argument("coloring size differs from graph order");
  sat::Clause clause;
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (c.color[u] == c.color[v]) clause.push_back(map.lit(u, v));
    }
  }
  return clause;
}

std::optional<CoCertificate> KColorChecker::check(const PartialGraph& g) {
  auto coloring = kColorCheck(g, k_);
  if (!coloring) return std::nullopt;
  CoCertificate cert;
  cert.kind = CertificateKind::KColoring;
  cert.payload = coloring->color;
  cert.blockingClause = coloringClause(*coloring, map_);
  cert.note = "col " + std::to_string(k_);
  for (int v = 1; v <= g.order(); ++v) cert.note += " " + std::to_string(coloring->color[v]);
  return cert;
}

void EdgeFrequencyTable::update(const PartialGraph& g) {
  if (g.order() != n_) throw std::invalid_argument("frequency table order differs from graph order");
  for (int u = 1; u <= n_; ++u) {
    for (int v = u + 1; v <= n_; ++v) {
      if (g.present(u, v)) {
        ++counts_[u * (n_ + 1) + v];
        ++counts_[v * (n_ + 1) + u];
      }
    }
  }
  ++total_;
}

std::pair<uint8_t, uint8_t> heuristicColorOrder(int v, const std::vector<uint8_t>& partial,
                                                const EdgeFrequencyTable& freq) {
  double score0 = 0.0;
  double score1 = 0.0;
  for (int u = 1; u < v; ++u) {
    if (partial[u] == 0) score0 += freq.relFreq(u, v);
  }
  for (int u = 1; u < v; ++u) {
    if (partial[u] != 1) continue;
    const double fuv = freq.relFreq(u, v);
    for (int w = u + 1; w < v; ++w) {
      if (partial[w] == 1) score1 += fuv * freq.relFreq(w, v) * freq.relFreq(u, w);
    }
  }
  if (score1 < score0) return {1, 0};
  return {0, 1};
}

std::optional<Coloring010> color010Check(const PartialGraph& g, const EdgeFrequencyTable* freq) {
  requireFullyDefined(g);
  const int n = g.order();
  const auto lower = lowerNeighbors(g);
  constexpr uint8_t kUnset = 2;
  std::vector<uint8_t> value(n + 1, kUnset);

  auto feasible = [&](int v, uint8_t b) {
    if (b == 0) {
      for (int u : lower[v]) {
        if (value[u] == 0) return false;
      }
      return true;
    }
    const auto& nb = lower[v];
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (value[nb[i]] != 1) continue;
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (value[nb[j]] == 1 && g.present(nb[i], nb[j])) return false;
      }
    }
    return true;
  };

  std::function<bool(int)> assign = [&](int v) {
    if (v > n) return true;
    const bool can0 = feasible(v, 0);
    const bool can1 = feasible(v, 1);
    uint8_t order[2];
    int options = 0;
    if (can0 && can1) {
      const auto [first, second] = freq ? heuristicColorOrder(v, value, *freq) : std::pair<uint8_t, uint8_t>{0, 1};
      order[0] = first;
      order[1] = second;
      options = 2;
    } else if (can0) {
      order[0] = 0;
      options = 1;
    } else if (can1) {
      order[0] = 1;
      options = 1;
    }
    for (int i = 0; i < options; ++i) {
      value[v] = order[i];
      if (assign(v + 1)) return true;
    }
    value[v] = kUnset;
    return false;
  };
  if (!assign(1)) return std::nullopt;
  value[0] = 0;
  return Coloring010{std::move(value)};
}

sat::Clause blockingClause010(const Coloring010& c, const graph::EdgeVarMap& map,
                              const encodings::TriangleVarMap& triangles) {
  const int n = map.order();
  if (static_cast<int>(c.value.size()) != n + 1) throw std::invalid_argument("coloring size differs from graph order");
  if (n >= 3 && triangles.order() != n) throw std::logic_error("triangle variables missing for this order");
  sat::Clause clause;
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (c.value[u] == 0 && c.value[v] == 0) clause.push_back(map.lit(u, v));
    }
  }
  for (int a = 1; a <= n; ++a) {
    if (c.value[a] != 1) continue;
    for (int b = a + 1; b <= n; ++b) {
      if (c.value[b] != 1) continue;
      for (int d = b + 1; d <= n; ++d) {
        if (c.value[d] == 1) clause.push_back(sat::Lit::positive(triangles.var(a, b, d)));
      }
    }
  }
  return clause;
}

Color010Checker::Color010Checker(graph::EdgeVarMap map, encodings::TriangleVarMap triangles, bool useHeuristic)
    : map_(std::move(map)), triangles_(std::move(triangles)), useHeuristic_(useHeuristic), freq_(map_.order()) {}

std::optional<CoCertificate> Color010Checker::check(const PartialGraph& g) {
  auto coloring = color010Check(g, useHeuristic_ ? &freq_ : nullptr);
  freq_.update(g);
  if (!coloring) return std::nullopt;
  CoCertificate cert;
  cert.kind = CertificateKind::Coloring010;
  cert.payload.assign(coloring->value.begin(), coloring->value.end());
  cert.blockingClause = blockingClause010(*coloring, map_, triangles_);
  cert.note = "col010";
  for (int v = 1; v <= g.order(); ++v) cert.note += coloring->value[v] ? " 1" : " 0";
  return cert;
}

bool isValidKColoring(const PartialGraph& g, const KColoring& c) {
  const int n = g.order();
  if (static_cast<int>(c.color.size()) != n + 1) return false;
  for (int v = 1; v <= n; ++v) {
    if (c.color[v] < 1 || c.color[v] > c.k) return false;
  }
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (g.present(u, v) && c.color[u] == c.color[v]) return false;
    }
  }
  return true;
}

bool isValid010Coloring(const PartialGraph& g, const Coloring010& c) {
  const int n = g.order();
  if (static_cast<int>(c.value.size()) != n + 1) return false;
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (!g.present(u, v)) continue;
      if (c.value[u] == 0 && c.value[v] == 0) return false;
      if (c.value[u] != 1 || c.value[v] != 1) continue;
      for (int w = v + 1; w <= n; ++w) {
        if (c.value[w] == 1 && g.present(u, w) && g.present(v, w)) return false;
      }
    }
  }
  return true;
}

bool isKColorableBruteForce(const PartialGraph& g, int k) {
  const int n = g.order();
  if (k < 1) return n == 0;
  KColoring c{k, std::vector<int>(n + 1, 1)};
  for (;;) {
    if (isValidKColoring(g, c)) return true;
    int v = 1;
    while (v <= n && c.color[v] == k) c.color[v++] = 1;
    if (v > n) return false;
    ++c.color[v];
  }
}

bool is010ColorableBruteForce(const PartialGraph& g) {
  const int n = g.order();
  if (n > 30) throw std::invalid_argument("brute-force 010 check is limited to n <= 30");
  Coloring010 c{std::vector<uint8_t>(n + 1, 0)};
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    for (int v = 1; v <= n; ++v) c.value[v] = (mask >> (v - 1)) & 1;
    if (isValid010Coloring(g, c)) return true;
  }
  return false;
}

}  // namespace smsccl::ccl
