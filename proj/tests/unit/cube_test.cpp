#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "rup_checker.hpp"
#include "smsccl/ccl/checkers.hpp"
#include "smsccl/cube/cube.hpp"
#include "smsccl/graph/graph6.hpp"
#include "smsccl/sat/clause_log.hpp"
#include "smsccl/sat/solver.hpp"

using namespace smsccl;
using cube::Cube;

namespace {

std::unique_ptr<ccl::CoNPChecker> acceptAll() { return std::make_unique<ccl::AcceptAllChecker>(); }

std::vector<std::string> monolithic(const encodings::EncodingBundle& b) {
  ccl::AcceptAllChecker all;
  std::set<std::string> out;
  for (const auto& g : ccl::runSearch(b.formula, b.edgeMap, all).solutions) out.insert(graph::toGraph6(g));
  return {out.begin(), out.end()};
}

bool satisfiesCube(const graph::PartialGraph& g, const Cube& cube, const graph::EdgeVarMap& map) {
  for (sat::Lit l : cube) {
    auto [u, v] = map.pair(l.var());
    if (g.present(u, v) == l.isNegative()) return false;
  }
  return true;
}

class ThrowingChecker : public ccl::CoNPChecker {
 public:
  std::optional<ccl::CoCertificate> check(const graph::PartialGraph&) override {
    throw std::runtime_error("checker failure");
  }
};

}  // namespace

TEST(GenerateCubes, RejectsBadThreshold) {
  const auto b = encodings::encodeTriangleFree(5);
  ccl::AcceptAllChecker all;
  cube::CubeGenOptions options;
  options.threshold = 0;
  EXPECT_THROW(cube::generateCubes(b, all, options), std::invalid_argument);
  options.threshold = 11;
  EXPECT_THROW(cube::generateCubes(b, all, options), std::invalid_argument);
}

TEST(GenerateCubes, UnsatisfiableInstanceHasNoCubes) {
  auto b = encodings::encodeTriangleFree(5);
  b.formula.add({b.edgeMap.lit(1, 2)});
  b.formula.add({b.edgeMap.lit(1, 2, false)});
  ccl::AcceptAllChecker all;
  cube::CubeGenOptions options;
  options.threshold = 3;
  const auto r = cube::generateCubes(b, all, options);
  EXPECT_TRUE(r.cubes.empty());
  EXPECT_TRUE(r.solutions.empty());
}

// With the threshold at the number of edge variables every cube is a full
// graph: exactly the canonical models.
TEST(GenerateCubes, FullThresholdYieldsCandidates) {
  const auto b = encodings::encodeTriangleFree(6);
  ccl::AcceptAllChecker all;
  cube::CubeGenOptions options;
  options.threshold = b.edgeMap.count();
  const auto r = cube::generateCubes(b, all, options);
  std::set<std::string> graphs;
  for (const Cube& c : r.cubes) {
    ASSERT_EQ(static_cast<int>(c.size()), b.edgeMap.count());
    std::vector<sat::LBool> a(b.edgeMap.lastVar() + 1, sat::LBool::Undef);
    for (sat::Lit l : c) a[l.var()] = sat::toLBool(!l.isNegative());
    graphs.insert(graph::toGraph6(graph::graphFromAssignment(a, b.edgeMap)));
  }
  EXPECT_EQ(r.cubes.size(), 38u);
  const auto expected = monolithic(b);
  EXPECT_EQ(std::vector<std::string>(graphs.begin(), graphs.end()), expected);
}

TEST(GenerateCubes, BothBranchOrdersCoverTheSearchSpace) {
  const auto b = encodings::encodeTriangleFree(8);
  const auto expected = monolithic(b);
  for (sat::BranchOrder order : {sat::BranchOrder::Activity, sat::BranchOrder::ObservedSequential}) {
    ccl::AcceptAllChecker all;
    cube::CubeGenOptions options;
    options.threshold = 8;
    options.branchOrder = order;
    const auto gen = cube::generateCubes(b, all, options);
    EXPECT_FALSE(gen.cubes.empty());
    const auto reports = cube::solveCubes(b, gen.cubes, acceptAll, 1);
    EXPECT_EQ(cube::dedupMerge(reports), expected);
  }
}

TEST(SolveCubes, MatchesMonolithicForSeveralThresholdsAndJobs) {
  const auto b = encodings::encodeTriangleFree(8);
  const auto expected = monolithic(b);
  ASSERT_EQ(expected.size(), 410u);
  for (int threshold : {4, 10, 20}) {
    ccl::AcceptAllChecker all;
    cube::CubeGenOptions options;
    options.threshold = threshold;
    const auto gen = cube::generateCubes(b, all, options);
    for (int jobs : {1, 3}) {
      const auto reports = cube::solveCubes(b, gen.cubes, acceptAll, jobs);
      ASSERT_EQ(reports.size(), gen.cubes.size());
      for (std::size_t i = 0; i < reports.size(); ++i) {
        EXPECT_EQ(reports[i].id, i);
        EXPECT_EQ(reports[i].status, cube::CubeStatus::Solved);
        for (const auto& s : reports[i].solutions) {
          EXPECT_TRUE(satisfiesCube(graph::fromGraph6(s), gen.cubes[i], b.edgeMap));
        }
      }
      EXPECT_EQ(cube::dedupMerge(reports), expected) << "threshold " << threshold << " jobs " << jobs;
    }
  }
}

TEST(SolveCube, ContradictoryCubeHasNoSolutions) {
  const auto b = encodings::encodeTriangleFree(5);
  const Cube triangle{b.edgeMap.lit(1, 2), b.edgeMap.lit(2, 3), b.edgeMap.lit(1, 3)};
  ccl::AcceptAllChecker all;
  const auto report = cube::solveCube(b, triangle, 0, all);
  EXPECT_EQ(report.status, cube::CubeStatus::Solved);
  EXPECT_TRUE(report.solutions.empty());
}

TEST(SolveCube, CheckerFailureIsReported) {
  const auto b = encodings::encodeTriangleFree(5);
  ThrowingChecker broken;
  const auto report = cube::solveCube(b, {}, 4, broken);
  EXPECT_EQ(report.status, cube::CubeStatus::Failed);
  EXPECT_EQ(report.id, 4u);
  EXPECT_NE(report.error.find("checker failure"), std::string::npos);
}

// Cubes may overlap; the merge removes the duplicates.
TEST(SolveCubes, OverlappingCubesAreDeduplicated) {
  const auto b = encodings::encodeTriangleFree(6);
  const std::vector<Cube> cubes{{b.edgeMap.lit(5, 6)}, {b.edgeMap.lit(4, 6)}, {}};
  const auto reports = cube::solveCubes(b, cubes, acceptAll, 2);
  std::size_t total = 0;
  for (const auto& r : reports) total += r.solutions.size();
  const auto merged = cube::dedupMerge(reports);
  EXPECT_GT(total, merged.size());
  EXPECT_EQ(merged, monolithic(b));
}

TEST(DedupMerge, Examples) {
  cube::CubeReport a;
  a.solutions = {"Bw", "Bw"};
  cube::CubeReport c;
  c.solutions = {"A?"};
  EXPECT_EQ(cube::dedupMerge({a, c}), (std::vector<std::string>{"A?", "Bw"}));
  EXPECT_TRUE(cube::dedupMerge({}).empty());
}

TEST(CubeFile, RoundTrip) {
  const std::vector<Cube> cubes{{sat::Lit::fromDimacs(1), sat::Lit::fromDimacs(-3)}, {}, {sat::Lit::fromDimacs(7)}};
  std::stringstream buffer;
  cube::writeCubes(buffer, cubes);
  EXPECT_EQ(buffer.str(), "a 1 -3 0\na 0\na 7 0\n");
  EXPECT_EQ(cube::readCubes(buffer), cubes);
}

TEST(CubeFile, RejectsMalformedLines) {
  for (const char* text : {"a 1 2\n", "x 1 0\n", "a 1 0 3\n", "a 2 -2 0\n", "a 1 z 0\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(cube::readCubes(in), std::runtime_error) << text;
  }
  std::istringstream ok("c comment\n\na -4 0\n");
  EXPECT_EQ(cube::readCubes(ok).size(), 1u);
}

TEST(CubeFile, ReportLines) {
  cube::CubeReport r;
  r.id = 3;
  r.solutions = {"Bw"};
  r.seconds = 0.25;
  std::ostringstream out;
  cube::writeReports(out, {r});
  EXPECT_EQ(out.str().rfind("cube 3 solved 1 ", 0), 0u);
}

// The base formula, the negated cubes and the carried symmetry clauses are
// jointly unsatisfiable, and the generation log replays to the empty clause.
TEST(GenerateCubes, CubesAreEntailedWithAdvice) {
  const auto b = encodings::encodeTriangleFree(7);
  ccl::AcceptAllChecker all;
  std::ostringstream out;
  sat::ClauseLog log(out);
  cube::CubeGenOptions options;
  options.threshold = 8;
  options.log = &log;
  const auto gen = cube::generateCubes(b, all, options);
  ASSERT_FALSE(gen.cubes.empty());

  sat::Formula omega = b.formula;
  for (const Cube& c : gen.cubes) {
    sat::Clause negation;
    for (sat::Lit l : c) negation.push_back(~l);
    omega.add(negation);
  }
  for (const auto& c : gen.carriedClauses) omega.add(c);
  EXPECT_EQ(sat::solveFormula(omega), sat::SolveStatus::Unsat);

  std::istringstream in(out.str());
  const auto replay = smsccl::testing::replayClauseLog(b.formula, in);
  EXPECT_TRUE(replay.ok) << replay.error;
  EXPECT_TRUE(replay.derivedEmpty);
}

TEST(GenerateCubes, KsSeventeenCubesContainTheCandidate) {
  const auto b = encodings::encodeKsExistential(17);
  ccl::Color010Checker checker(b.edgeMap, *b.triangleMap);
  cube::CubeGenOptions options;
  options.threshold = 40;
  const auto gen = cube::generateCubes(b, checker, options);
  EXPECT_FALSE(gen.cubes.empty());
  const cube::CheckerFactory make = [&b]() -> std::unique_ptr<ccl::CoNPChecker> {
    return std::make_unique<ccl::Color010Checker>(b.edgeMap, *b.triangleMap);
  };
  EXPECT_EQ(cube::dedupMerge(cube::solveCubes(b, gen.cubes, make, 2)).size(), 1u);
}
