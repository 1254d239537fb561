#include "smsccl/encodings/encodings.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace smsccl::encodings {

using sat::Lit;

TriangleVarMap::TriangleVarMap(int n, int firstVar)
    : n_(n), first_(firstVar), index_(static_cast<std::size_t>(n + 1) * (n + 1) * (n + 1), 0) {
  int var = firstVar;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      for (int c = b + 1; c <= n; ++c) {
        triples_.push_back({a, b, c});
        index_[(a * (n + 1) + b) * (n + 1) + c] = var++;
      }
    }
  }
}

int TriangleVarMap::var(int a, int b, int c) const {
  std::array<int, 3> t{a, b, c};
  std::sort(t.begin(), t.end());
  if (t[0] < 1 || t[2] > n_ || t[0] == t[1] || t[1] == t[2]) {
    throw std::out_of_range("no triangle variable for (" + std::to_string(a) + "," + std::to_string(b) + "," +
                            std::to_string(c) + ")");
  }
  return index_[(t[0] * (n_ + 1) + t[1]) * (n_ + 1) + t[2]];
}

EncodingBundle encodeTriangleFree(int n) {
  if (n < 3) throw std::invalid_argument("triangle-free encoding needs n >= 3");
  EncodingBundle b;
  b.n = n;
  b.edgeMap = graph::EdgeVarMap(n);
  b.formula.variableCount = b.edgeMap.count();
  const auto& m = b.edgeMap;
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      for (int w = v + 1; w <= n; ++w) b.formula.add({~m.lit(u, v), ~m.lit(v, w), ~m.lit(u, w)});
    }
  }
  return b;
}

int sequentialCounterAtLeast(sat::Formula& formula, std::span<const Lit> inputs, int k) {
  const int m = static_cast<int>(inputs.size());
  if (k <= 0) return 0;
  if (k > m) {
    formula.add(sat::Clause{});
    return 0;
  }
  // s[i][j]: at least j of the first i inputs are true (1 <= j <= min(i,k)).
  std::vector<std::vector<int>> s(m + 1, std::vector<int>(k + 1, 0));
  int allocated = 0;
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= std::min(i, k); ++j) {
      s[i][j] = formula.newVar();
      ++allocated;
    }
  }
  for (int i = 1; i <= m; ++i) {
    const Lit x = inputs[i - 1];
    for (int j = 1; j <= std::min(i, k); ++j) {
      const Lit sij = Lit::positive(s[i][j]);
      const bool prevSame = j <= i - 1;
      sat::Clause viaInput{~sij, x};
      if (prevSame) viaInput.push_back(Lit::positive(s[i - 1][j]));
      formula.add(std::move(viaInput));
      if (j >= 2) {
        sat::Clause viaCount{~sij, Lit::positive(s[i - 1][j - 1])};
        if (prevSame) viaCount.push_back(Lit::positive(s[i - 1][j]));
        formula.add(std::move(viaCount));
      }
    }
  }
  formula.add({Lit::positive(s[m][k])});
  return allocated;
}

EncodingBundle encodeKsExistential(int n) {
  if (n < 4) throw std::invalid_argument("KS encoding needs n >= 4");
  EncodingBundle b;
  b.n = n;
  b.edgeMap = graph::EdgeVarMap(n);
  const auto& e = b.edgeMap;
  b.triangleMap = TriangleVarMap(n, e.lastVar() + 1);
  const auto& t = *b.triangleMap;
  b.colorMap = ColorVarMap(n, 4, t.lastVar() + 1);
  const auto& c = *b.colorMap;
  sat::Formula& f = b.formula;
  f.variableCount = c.lastVar();

  // Square-free: one orientation v1-v2-v3-v4 per 4-cycle.
  for (int v1 = 1; v1 <= n; ++v1) {
    for (int v2 = v1 + 1; v2 <= n; ++v2) {
      for (int v4 = v2 + 1; v4 <= n; ++v4) {
        for (int v3 = v1 + 1; v3 <= n; ++v3) {
          if (v3 == v2 || v3 == v4) continue;
          f.add({~e.lit(v1, v2), ~e.lit(v2, v3), ~e.lit(v3, v4), ~e.lit(v1, v4)});
        }
      }
    }
  }

  // 4-colorable (at-least-one color per vertex; adjacent vertices differ).
  for (int v = 1; v <= n; ++v) {
    sat::Clause some;
    for (int i = 1; i <= 4; ++i) some.push_back(Lit::positive(c.var(v, i)));
    f.add(std::move(some));
  }
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      for (int i = 1; i <= 4; ++i) {
        f.add({~e.lit(u, v), Lit::negative(c.var(u, i)), Lit::negative(c.var(v, i))});
      }
    }
  }

  // Minimum degree 3.
  for (int v = 1; v <= n; ++v) {
    std::vector<Lit> incident;
    for (int u = 1; u <= n; ++u) {
      if (u != v) incident.push_back(e.lit(u, v));
    }
    b.auxCount += sequentialCounterAtLeast(f, incident, 3);
  }

  // Every vertex on a triangle.
  for (int v1 = 1; v1 <= n; ++v1) {
    sat::Clause some;
    for (int v2 = 1; v2 <= n; ++v2) {
      for (int v3 = v2 + 1; v3 <= n; ++v3) {
        if (v2 != v1 && v3 != v1) some.push_back(Lit::positive(t.var(v1, v2, v3)));
      }
    }
    f.add(std::move(some));
  }

  // t_abc <-> e_ab & e_bc & e_ac.
  for (int v = t.firstVar(); v <= t.lastVar(); ++v) {
    const auto [a, bb, cc] = t.triple(v);
    const Lit tv = Lit::positive(v);
    f.add({~tv, e.lit(a, bb)});
    f.add({~tv, e.lit(bb, cc)});
    f.add({~tv, e.lit(a, cc)});
    f.add({tv, ~e.lit(a, bb), ~e.lit(bb, cc), ~e.lit(a, cc)});
  }
  return b;
}

std::string mappingText(const EncodingBundle& bundle) {
  std::ostringstream out;
  const auto& e = bundle.edgeMap;
  for (int v = e.firstVar(); v <= e.lastVar(); ++v) {
    const auto [a, b] = e.pair(v);
    out << "e " << a << ' ' << b << " -> " << v << '\n';
  }
  if (bundle.triangleMap) {
    const auto& t = *bundle.triangleMap;
    for (int v = t.firstVar(); v <= t.lastVar(); ++v) {
      const auto& [a, b, c] = t.triple(v);
      out << "t " << a << ' ' << b << ' ' << c << " -> " << v << '\n';
    }
  }
  return out.str();
}

namespace {

[[noreturn]] void mappingError(int line, const std::string& what) {
  throw std::runtime_error("mapping line " + std::to_string(line) + ": " + what);
}

}  // namespace

EncodingBundle bundleFromMapping(sat::Formula formula, std::string_view mapping) {
  struct Entry {
    std::vector<int> vertices;
    int var;
    int line;
  };
  std::vector<Entry> edges;
  std::vector<Entry> triangles;
  std::istringstream in{std::string(mapping)};
  std::string text;
  int lineNo = 0;
  while (std::getline(in, text)) {
    ++lineNo;
    std::istringstream fields(text);
    std::string kind;
    if (!(fields >> kind) || kind == "c") continue;
    if (kind != "e" && kind != "t") mappingError(lineNo, "unknown record '" + kind + "'");
    Entry entry{{}, 0, lineNo};
    const int arity = kind == "e" ? 2 : 3;
    for (int i = 0; i < arity; ++i) {
      int v = 0;
      if (!(fields >> v) || v < 1) mappingError(lineNo, "expected a vertex");
      entry.vertices.push_back(v);
    }
    std::string arrow;
    std::string rest;
    if (!(fields >> arrow) || arrow != "->" || !(fields >> entry.var) || fields >> rest) {
      mappingError(lineNo, "expected '-> var'");
    }
    if (entry.var < 1 || entry.var > formula.variableCount) mappingError(lineNo, "variable outside the formula");
    (kind == "e" ? edges : triangles).push_back(entry);
  }
  if (edges.empty()) throw std::runtime_error("mapping has no edge variables");

  int n = 0;
  for (const auto& e : edges) n = std::max({n, e.vertices[0], e.vertices[1]});
  EncodingBundle bundle;
  bundle.n = n;
  bundle.edgeMap = graph::EdgeVarMap(n, edges.front().var);
  if (static_cast<int>(edges.size()) != bundle.edgeMap.count()) {
    throw std::runtime_error("mapping lists " + std::to_string(edges.size()) + " edge variables; " +
                             std::to_string(n) + " vertices need " + std::to_string(bundle.edgeMap.count()));
  }
  for (const auto& e : edges) {
    const int u = e.vertices[0];
    const int v = e.vertices[1];
    if (u == v || bundle.edgeMap.var(u, v) != e.var) mappingError(e.line, "edge variables must be consecutive in row-major order");
  }
  if (!triangles.empty()) {
    TriangleVarMap t(n, triangles.front().var);
    if (static_cast<int>(triangles.size()) != t.count()) throw std::runtime_error("mapping does not cover every vertex triple");
    for (const auto& e : triangles) {
      try {
        if (t.var(e.vertices[0], e.vertices[1], e.vertices[2]) != e.var) mappingError(e.line, "triangle variables out of order");
      } catch (const std::out_of_range&) {
        mappingError(e.line, "invalid triple");
      }
    }
    bundle.triangleMap = t;
  }
  bundle.auxCount = formula.variableCount - bundle.edgeMap.count() - (bundle.triangleMap ? bundle.triangleMap->count() : 0);
  bundle.formula = std::move(formula);
  return bundle;
}

}  // namespace smsccl::encodings
