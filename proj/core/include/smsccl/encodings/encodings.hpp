#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smsccl/graph/partial_graph.hpp"
#include "smsccl/sat/types.hpp"

namespace smsccl::encodings {

/// Variables t_{a,b,c} for triples a<b<c, allocated consecutively in
/// lexicographic triple order.
class TriangleVarMap {
 public:
  TriangleVarMap() = default;
  TriangleVarMap(int n, int firstVar);

  int order() const { return n_; }
  int count() const { return static_cast<int>(triples_.size()); }
  int firstVar() const { return first_; }
  int lastVar() const { return first_ + count() - 1; }
  /// Argument order does not matter; throws on repeated or out-of-range
  /// vertices.
  int var(int a, int b, int c) const;
  const std::array<int, 3>& triple(int var) const { return triples_.at(var - first_); }

 private:
  int n_ = 0;
  int first_ = 1;
  std::vector<std::array<int, 3>> triples_;
  std::vector<int> index_;
};

/// Color variables c_{v,i}, v in 1..n, i in 1..colors, vertex-major.
class ColorVarMap {
 public:
  ColorVarMap() = default;
  ColorVarMap(int n, int colors, int firstVar) : n_(n), colors_(colors), first_(firstVar) {}
  int var(int v, int color) const { return first_ + (v - 1) * colors_ + (color - 1); }
  int colors() const { return colors_; }
  int firstVar() const { return first_; }
  int lastVar() const { return first_ + n_ * colors_ - 1; }

 private:
  int n_ = 0;
  int colors_ = 0;
  int first_ = 1;
};

struct EncodingBundle {
  int n = 0;
  sat::Formula formula;
  graph::EdgeVarMap edgeMap;
  std::optional<TriangleVarMap> triangleMap;
  std::optional<ColorVarMap> colorMap;
  int auxCount = 0;
};

/// One clause ¬e_uv ∨ ¬e_vw ∨ ¬e_uw per triple.
EncodingBundle encodeTriangleFree(int n);

/// Necessary conditions for a minimal Kochen-Specker graph: no 4-cycle,
/// 4-colorable, minimum degree at least 3, every vertex on a triangle.
/// Layout: edges, then triangles, then colors, then counter auxiliaries.
EncodingBundle encodeKsExistential(int n);

/// Sinz-style sequential counter asserting that at least `k` of `inputs`
/// are true. Auxiliary variables come from `formula.newVar()`; returns how
/// many were allocated. With k > |inputs| a single empty clause is added.
int sequentialCounterAtLeast(sat::Formula& formula, std::span<const sat::Lit> inputs, int k);

/// Sidecar mapping: "e u v -> var" lines, then "t a b c -> var" lines.
std::string mappingText(const EncodingBundle& bundle);

/// Inverse of mappingText for an externally supplied formula. The "e" lines
/// must cover every vertex pair with consecutive variables in row-major
/// order; "t" lines are optional but, when present, must cover every triple
/// in lexicographic order. Throws std::runtime_error with the line number
/// on malformed or inconsistent input.
EncodingBundle bundleFromMapping(sat::Formula formula, std::string_view mapping);

}  // namespace smsccl::encodings
