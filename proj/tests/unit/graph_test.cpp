#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "smsccl/graph/graph6.hpp"
#include "smsccl/graph/partial_graph.hpp"

using namespace smsccl::graph;
using smsccl::sat::LBool;

namespace {

PartialGraph fromMask(int n, uint64_t mask) {
  PartialGraph g = PartialGraph::empty(n);
  int k = 0;
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v, ++k) {
      if ((mask >> k) & 1) g.addEdge(u, v);
    }
  }
  return g;
}

// Smallest bit pattern over all relabelings: an isomorphism invariant that
// needs no lexicographic machinery.
uint64_t canonicalMask(const PartialGraph& g) {
  const int n = g.order();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  uint64_t best = ~uint64_t{0};
  do {
    uint64_t mask = 0;
    int k = 0;
    for (int u = 1; u <= n; ++u) {
      for (int v = u + 1; v <= n; ++v, ++k) {
        if (g.present(perm[u - 1], perm[v - 1])) mask |= uint64_t{1} << k;
      }
    }
    best = std::min(best, mask);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST(PartialGraph, CellsAreSymmetric) {
  PartialGraph g(4);
  g.set(3, 1, CellState::Present);
  EXPECT_EQ(g.cell(1, 3), CellState::Present);
  EXPECT_EQ(g.countCells(CellState::Undefined), 5);
  EXPECT_FALSE(g.isFullyDefined());
  EXPECT_EQ(g.degree(1), 1);
}

TEST(PartialGraph, DiagonalCannotBeSet) { EXPECT_THROW(PartialGraph(3).set(2, 2, CellState::Present), std::invalid_argument); }

TEST(EdgeVarMap, RowMajorNumbering) {
  const EdgeVarMap map(4);
  EXPECT_EQ(map.var(1, 2), 1);
  EXPECT_EQ(map.var(1, 4), 3);
  EXPECT_EQ(map.var(2, 3), 4);
  EXPECT_EQ(map.var(4, 3), 6);
  EXPECT_EQ(map.count(), 6);
  for (int v = map.firstVar(); v <= map.lastVar(); ++v) {
    auto [a, b] = map.pair(v);
    EXPECT_EQ(map.var(a, b), v);
    EXPECT_EQ(cellIndex(4, a, b), v - 1);
  }
}

TEST(EdgeVarMap, Offset) {
  const EdgeVarMap map(3, 10);
  EXPECT_EQ(map.var(1, 2), 10);
  EXPECT_EQ(map.lastVar(), 12);
  EXPECT_FALSE(map.isEdgeVar(9));
}

TEST(Projection, AllFalseIsEdgeless) {
  const EdgeVarMap map(5);
  std::vector<LBool> a(map.lastVar() + 1, LBool::False);
  EXPECT_EQ(graphFromAssignment(a, map), PartialGraph::empty(5));
}

TEST(Projection, AllTrueOnThreeIsTriangle) {
  const EdgeVarMap map(3);
  std::vector<LBool> a(4, LBool::True);
  EXPECT_EQ(graphFromAssignment(a, map), PartialGraph::complete(3));
}

TEST(Projection, SingleAssignedVariable) {
  const EdgeVarMap map(4);
  std::vector<LBool> a(7, LBool::Undef);
  a[map.var(1, 2)] = LBool::True;
  const PartialGraph g = graphFromAssignment(a, map);
  EXPECT_EQ(g.countCells(CellState::Present), 1);
  EXPECT_EQ(g.countCells(CellState::Undefined), 5);
}

TEST(Permutation, RejectsNonBijection) { EXPECT_THROW(Permutation({1, 1, 2}), std::invalid_argument); }

TEST(Permutation, IdentityKeepsGraph) {
  const PartialGraph g = PartialGraph::fromEdges(4, {{1, 2}, {2, 3}});
  EXPECT_EQ(applyPermutation(g, Permutation::identity(4)), g);
}

TEST(Permutation, MapsEdgesByImage) {
  const PartialGraph path = PartialGraph::fromEdges(3, {{1, 2}});
  const Permutation swap13({3, 2, 1});
  EXPECT_EQ(applyPermutation(path, swap13), PartialGraph::fromEdges(3, {{3, 2}}));
}

TEST(Permutation, InverseUndoes) {
  std::mt19937_64 rng(1);
  std::vector<int> images{1, 2, 3, 4, 5, 6};
  PartialGraph g(6);
  g.set(1, 2, CellState::Present);
  g.set(2, 5, CellState::Absent);
  g.set(4, 6, CellState::Present);
  for (int round = 0; round < 20; ++round) {
    std::shuffle(images.begin(), images.end(), rng);
    const Permutation pi(images);
    EXPECT_EQ(applyPermutation(applyPermutation(g, pi), pi.inverse()), g);
    EXPECT_EQ(pi.compose(pi.inverse()), Permutation::identity(6));
  }
}

TEST(LexCompare, TriangleAboveEdgeless) {
  EXPECT_EQ(lexCompare(PartialGraph::complete(3), PartialGraph::empty(3)).order, LexOrder::Greater);
  EXPECT_EQ(lexCompare(PartialGraph::complete(3), PartialGraph::complete(3)).order, LexOrder::Equal);
}

TEST(LexCompare, WalksCellOrder) {
  // Cell (1,2) decides: present in the first graph, absent in the second.
  const PartialGraph a = PartialGraph::fromEdges(4, {{1, 2}, {3, 4}});
  const PartialGraph b = PartialGraph::fromEdges(4, {{1, 3}, {2, 4}});
  EXPECT_EQ(lexCompare(a, b).order, LexOrder::Greater);
  EXPECT_EQ(lexCompare(b, a).order, LexOrder::Less);
}

TEST(LexCompare, UndefinedBeforeDifferenceIsIncomparable) {
  PartialGraph a(3);
  PartialGraph b(3);
  a.set(1, 3, CellState::Present);
  b.set(1, 3, CellState::Absent);
  const LexResult r = lexCompare(a, b);
  EXPECT_EQ(r.order, LexOrder::Incomparable);
  EXPECT_EQ(r.row, 1);
  EXPECT_EQ(r.col, 2);
}

TEST(LexMinBruteForce, SmallCases) {
  EXPECT_TRUE(isLexMinBruteForce(PartialGraph::empty(4)));
  EXPECT_FALSE(isLexMinBruteForce(PartialGraph::fromEdges(3, {{1, 2}})));
  EXPECT_TRUE(isLexMinBruteForce(PartialGraph::fromEdges(3, {{2, 3}})));
}

// One canonical graph per isomorphism class: 11 on four vertices, 34 on five.
TEST(LexMinBruteForce, OnePerIsomorphismClass) {
  for (auto [n, classes] : {std::pair{4, 11}, std::pair{5, 34}}) {
    const int cells = n * (n - 1) / 2;
    std::set<uint64_t> seen;
    int lexMin = 0;
    for (uint64_t mask = 0; mask < (uint64_t{1} << cells); ++mask) {
      const PartialGraph g = fromMask(n, mask);
      seen.insert(canonicalMask(g));
      lexMin += isLexMinBruteForce(g);
    }
    EXPECT_EQ(static_cast<int>(seen.size()), classes);
    EXPECT_EQ(lexMin, classes);
  }
}

TEST(EdgeBlockingClause, FalsifiedExactlyByItsGraph) {
  const EdgeVarMap map(4);
  const PartialGraph g = PartialGraph::fromEdges(4, {{1, 2}, {3, 4}});
  const auto clause = edgeBlockingClause(g, map);
  EXPECT_EQ(clause.size(), 6u);
  for (uint64_t mask = 0; mask < 64; ++mask) {
    const PartialGraph h = fromMask(4, mask);
    std::vector<LBool> a(7);
    for (int v = 1; v <= 6; ++v) {
      auto [x, y] = map.pair(v);
      a[v] = smsccl::sat::toLBool(h.present(x, y));
    }
    EXPECT_EQ(smsccl::sat::evaluate(clause, a) == LBool::False, h == g);
  }
}

TEST(Graph6, EncodesSmallGraphs) {
  EXPECT_EQ(toGraph6(PartialGraph::empty(2)), "A?");
  EXPECT_EQ(toGraph6(PartialGraph::complete(3)), "Bw");
}

TEST(Graph6, RoundTripsRandomGraphs) {
  std::mt19937_64 rng(6);
  for (int n = 1; n <= 20; ++n) {
    PartialGraph g = PartialGraph::empty(n);
    std::bernoulli_distribution coin(0.4);
    for (int u = 1; u <= n; ++u) {
      for (int v = u + 1; v <= n; ++v) {
        if (coin(rng)) g.addEdge(u, v);
      }
    }
    EXPECT_EQ(fromGraph6(toGraph6(g)), g);
  }
}

TEST(Graph6, FifteenVertexLibraryGraph) {
  const PartialGraph g = fromGraph6("NGw@?i??GHgA@aCtQC?");
  EXPECT_EQ(g.order(), 15);
  // The string decodes to 25 edges; the drawn version of this graph omits
  // one of them.
  EXPECT_EQ(g.edges().size(), 25u);
}

TEST(Graph6, RejectsMalformedInput) {
  EXPECT_THROW(fromGraph6(""), Graph6Error);
  EXPECT_THROW(fromGraph6("Bw?"), Graph6Error);
  EXPECT_THROW(fromGraph6("C"), Graph6Error);
  EXPECT_THROW(toGraph6(PartialGraph(3)), Graph6Error);
}

TEST(Graph6, ReadsLines) {
  const auto graphs = readGraph6Lines("A?\r\n\nBw\n");
  ASSERT_EQ(graphs.size(), 2u);
  EXPECT_EQ(graphs[1], PartialGraph::complete(3));
}
