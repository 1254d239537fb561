#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "smsccl/graph/partial_graph.hpp"

namespace smsccl::embed {

using Rational = boost::multiprecision::cpp_rational;

template <typename T>
struct Vector3 {
  T x{};
  T y{};
  T z{};
};

using Vector3Q = Vector3<Rational>;
using Vector3D = Vector3<double>;

template <typename T>
T dot(const Vector3<T>& a, const Vector3<T>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <typename T>
Vector3<T> cross(const Vector3<T>& a, const Vector3<T>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Free vertices S and, for each bound vertex v, the two neighbors whose
/// cross product determines p_v. `order` lists bound vertices so that each
/// depends only on free vertices or earlier entries.
struct CrossProductCover {
  std::vector<int> free;
  /// Indexed by vertex (1-based, size n+1); {0,0} for free vertices.
  std::vector<std::pair<int, int>> w;
  std::vector<int> order;
};

struct CoverChoice {
  CrossProductCover cover;
  /// Edge between two free vertices, fixed to (1,0,0) and (0,1,0).
  std::pair<int, int> freeEdge;
};

struct CoverOptions {
  /// Starting edge; defaults to the lowest edge in cell order.
  std::optional<std::pair<int, int>> seedEdge;
  /// When set, ties when freeing a vertex are broken randomly with this
  /// seed instead of by index.
  std::optional<uint64_t> tieSeed;
};

/// Greedy closure: bind the lowest unbound vertex with two determined
/// neighbors (lowest neighbor pair); when stuck, free the undetermined vertex
/// with the most determined neighbors. Throws std::invalid_argument on a
/// disconnected, edgeless or partially defined graph.
CoverChoice findCover(const graph::PartialGraph& g, const CoverOptions& options = {});

/// Returns an empty string when the cover is valid, otherwise the reason.
std::string verifyCover(const graph::PartialGraph& g, const CrossProductCover& cover);

struct Constraints {
  std::string smtlib;
  int unknowns = 0;
};

/// SMT-LIB 2 (QF_NRA): 3(|S|-2) unknowns for the free vectors other than
/// the fixed edge; bound vectors as nested cross-product macros; one
/// non-collinearity assertion per vertex pair and one orthogonality
/// assertion per edge.
Constraints emitConstraints(const graph::PartialGraph& g, const CoverChoice& choice);

struct Verdict {
  bool valid = true;
  std::string violation;
};

/// Exact check: adjacent vectors orthogonal, no two vectors collinear, no
/// zero vector. `p` is indexed by vertex (index 0 unused).
Verdict verifyEmbedding(const graph::PartialGraph& g, const std::vector<Vector3Q>& p);
/// Floating-point check with |dot| <= tolerance and |cross| > tolerance.
Verdict verifyEmbedding(const graph::PartialGraph& g, const std::vector<Vector3D>& p, double tolerance);

/// Non-induced subgraph containment: an injective map from H into G
/// (mapping[u] for u in 1..|H|) preserving edges, or std::nullopt.
std::optional<std::vector<int>> findSubgraph(const graph::PartialGraph& h, const graph::PartialGraph& g);

struct UnembeddableLibrary {
  std::vector<graph::PartialGraph> graphs;
  std::vector<std::string> names;

  /// The ten-vertex 3-regular graph and the fifteen-vertex common subgraph
  /// of the two odd 23-vertex candidates.
  static UnembeddableLibrary builtin();
  /// graph6 lines; throws if a graph has more than 14 vertices.
  static UnembeddableLibrary fromFile(const std::string& path);
  void append(const UnembeddableLibrary& other);
};

/// Ten-vertex graph on T0,T1,T2,S0,S1,C,O1,O2,O3,O4 (vertices 1..10).
graph::PartialGraph tenVertexUnembeddable();
inline constexpr const char* kFifteenVertexGraph6 = "NGw@?i??GHgA@aCtQC?";

struct LibraryHit {
  std::size_t index;
  std::vector<int> mapping;
};
std::optional<LibraryHit> subgraphFilter(const graph::PartialGraph& g, const UnembeddableLibrary& lib);

enum class EmbedVerdict { UnembeddableBySubgraph, UnembeddableBySolver, Embeddable, Unknown };
std::string toString(EmbedVerdict v);

struct PipelineOptions {
  /// Shell command with a "{file}" placeholder, e.g. "z3 {file}".
  std::optional<std::string> solverCommand;
  double timeoutSeconds = 10.0;
  /// Additional attempts with a different cover after a timeout.
  int retryBudget = 3;
  /// Directory for emitted constraint files.
  std::string workDir = ".";
  uint64_t seed = 1;
};

struct PipelineResult {
  EmbedVerdict verdict = EmbedVerdict::Unknown;
  std::string detail;
  std::optional<std::vector<Vector3D>> model;
  std::string constraintFile;
  int attempts = 0;
};

PipelineResult runPipeline(const graph::PartialGraph& g, const UnembeddableLibrary& lib,
                           const PipelineOptions& options, const std::string& label = "graph");

/// Result of running a shell command with a deadline.
struct CommandResult {
  bool timedOut = false;
  int exitStatus = 0;
  std::string output;
};
CommandResult runCommand(const std::string& command, double timeoutSeconds);

/// Parses "sat"/"unsat" output with a (get-model) block into vectors for
/// every vertex, evaluating bound vertices through the cover.
std::optional<std::vector<Vector3D>> modelFromSolverOutput(const std::string& output, const graph::PartialGraph& g,
                                                           const CoverChoice& choice);

}  // namespace smsccl::embed
