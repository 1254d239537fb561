#include <cmath>

#include "smsccl/embed/embed.hpp"

namespace smsccl::embed {

using graph::PartialGraph;

namespace {

template <typename T, typename IsZeroDot, typename IsZeroCross>
Verdict check(const PartialGraph& g, const std::vector<Vector3<T>>& p, IsZeroDot zeroDot, IsZeroCross zeroCross) {
  const int n = g.order();
  if (static_cast<int>(p.size()) != n + 1) return {false, "vector list size differs from graph order"};
  for (int v = 1; v <= n; ++v) {
    if (zeroCross(p[v], p[v], true)) return {false, "vertex " + std::to_string(v) + " has a zero vector"};
  }
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (g.present(u, v) && !zeroDot(dot(p[u], p[v]))) {
        return {false, "adjacent vertices " + std::to_string(u) + " and " + std::to_string(v) + " are not orthogonal"};
      }
      if (zeroCross(p[u], p[v], false)) {
        return {false, "vertices " + std::to_string(u) + " and " + std::to_string(v) + " are collinear"};
      }
    }
  }
  return {};
}

}  // namespace

Verdict verifyEmbedding(const PartialGraph& g, const std::vector<Vector3Q>& p) {
  return check(
      g, p, [](const Rational& d) { return d == 0; },
      [](const Vector3Q& a, const Vector3Q& b, bool self) {
        if (self) return a.x == 0 && a.y == 0 && a.z == 0;
        const Vector3Q c = cross(a, b);
        return c.x == 0 && c.y == 0 && c.z == 0;
      });
}

Verdict verifyEmbedding(const PartialGraph& g, const std::vector<Vector3D>& p, double tolerance) {
  return check(
      g, p, [tolerance](double d) { return std::abs(d) <= tolerance; },
      [tolerance](const Vector3D& a, const Vector3D& b, bool self) {
        const Vector3D c = self ? a : cross(a, b);
        return std::sqrt(dot(c, c)) <= tolerance;
      });
}

}  // namespace smsccl::embed
