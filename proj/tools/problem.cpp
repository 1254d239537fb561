#include "problem.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "smsccl/sat/dimacs.hpp"
#include "smsccl/symmetry/minimality.hpp"

namespace smsccl::cli {

namespace {

bool hasFourCycle(const graph::PartialGraph& g) {
  const int n = g.order();
  for (int a = 1; a <= n; ++a) {
    for (int c = a + 1; c <= n; ++c) {
      int common = 0;
      for (int v = 1; v <= n; ++v) common += v != a && v != c && g.present(a, v) && g.present(c, v);
      if (common >= 2) return true;
    }
  }
  return false;
}

bool onTriangle(const graph::PartialGraph& g, int v) {
  const auto nb = g.neighbors(v);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    for (std::size_t j = i + 1; j < nb.size(); ++j) {
      if (g.present(nb[i], nb[j])) return true;
    }
  }
  return false;
}

bool hasTriangle(const graph::PartialGraph& g) {
  for (int v = 1; v <= g.order(); ++v) {
    if (onTriangle(g, v)) return true;
  }
  return false;
}

sat::Clause sorted(sat::Clause c) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

}  // namespace

const std::vector<std::string>& problemNames() {
  static const std::vector<std::string> names{"triangle-free", "triangle-free-noncolorable", "ks-existential",
                                              "ks-candidates", "dimacs"};
  return names;
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Problem::Problem(const ProblemConfig& config) : config_(config) {
  const std::string& p = config.problem;
  if (p == "dimacs") {
    if (config.dimacsPath.empty() || config.mappingPath.empty()) {
      throw UsageError("--problem dimacs needs --dimacs and --mapping");
    }
    bundle_ = encodings::bundleFromMapping(sat::parseDimacs(readFile(config.dimacsPath)), readFile(config.mappingPath));
    if (config.n != 0 && config.n != bundle_.n) {
      throw UsageError("--n " + std::to_string(config.n) + " contradicts the mapping (" + std::to_string(bundle_.n) +
                       " vertices)");
    }
    if (config.checker == "kcolor") {
      checker_ = Checker::KColor;
    } else if (config.checker == "010") {
      if (!bundle_.triangleMap) throw UsageError("--checker 010 needs triangle variables in the mapping");
      checker_ = Checker::Color010;
    } else if (config.checker != "none") {
      throw UsageError("--checker must be none, kcolor or 010");
    }
  } else {
    if (!config.dimacsPath.empty() || !config.mappingPath.empty() || config.checker != "none") {
      throw UsageError("--dimacs, --mapping and --checker only apply to --problem dimacs");
    }
    if (config.n <= 0) throw UsageError("--n is required");
    if (p == "triangle-free") {
      bundle_ = encodings::encodeTriangleFree(config.n);
    } else if (p == "triangle-free-noncolorable") {
      bundle_ = encodings::encodeTriangleFree(config.n);
      checker_ = Checker::KColor;
    } else if (p == "ks-existential") {
      bundle_ = encodings::encodeKsExistential(config.n);
    } else if (p == "ks-candidates") {
      bundle_ = encodings::encodeKsExistential(config.n);
      checker_ = Checker::Color010;
    } else {
      throw UsageError("unknown problem '" + p + "'");
    }
  }
  if (checker_ == Checker::KColor && config.k < 1) throw UsageError("--k must be positive");
}

std::unique_ptr<ccl::CoNPChecker> Problem::makeChecker() const {
  switch (checker_) {
    case Checker::KColor:
      return std::make_unique<ccl::KColorChecker>(bundle_.edgeMap, config_.k);
    case Checker::Color010:
      return std::make_unique<ccl::Color010Checker>(bundle_.edgeMap, *bundle_.triangleMap, config_.frequencyGate);
    case Checker::None:
      break;
  }
  return std::make_unique<ccl::AcceptAllChecker>();
}

symmetry::SymmetryOptions Problem::symmetryOptions() const {
  symmetry::SymmetryOptions s;
  s.partialBudget = config_.partialBudget;
  s.checkPartial = config_.partialChecks;
  return s;
}

std::string Problem::bruteForceVerify(const graph::PartialGraph& g, int bruteForceLimit) const {
  if (g.order() != bundle_.n) return "graph has " + std::to_string(g.order()) + " vertices, expected " + std::to_string(bundle_.n);
  if (symmetry::checkMinimal(g).outcome != symmetry::CheckOutcome::Minimal) return "graph is not canonical";
  if (g.order() > bruteForceLimit) return "";
  const std::string& p = config_.problem;
  if ((p == "triangle-free" || p == "triangle-free-noncolorable") && hasTriangle(g)) return "graph has a triangle";
  if (p == "ks-existential" || p == "ks-candidates") {
    if (hasFourCycle(g)) return "graph has a 4-cycle";
    for (int v = 1; v <= g.order(); ++v) {
      if (g.degree(v) < 3) return "vertex " + std::to_string(v) + " has degree below 3";
      if (!onTriangle(g, v)) return "vertex " + std::to_string(v) + " is on no triangle";
    }
    if (!ccl::isKColorableBruteForce(g, 4)) return "graph is not 4-colorable";
  }
  if (checker_ == Checker::KColor && ccl::isKColorableBruteForce(g, config_.k)) {
    return "graph is " + std::to_string(config_.k) + "-colorable";
  }
  if (checker_ == Checker::Color010 && ccl::is010ColorableBruteForce(g)) return "graph is 010-colorable";
  return "";
}

std::string Problem::coloringRecordError(const std::string& kind, const std::vector<int>& values,
                                         const sat::Clause& clause) const {
  const int n = bundle_.n;
  if (kind == "col") {
    if (values.empty()) return "coloring record without color count";
    const int k = values.front();
    if (static_cast<int>(values.size()) != n + 1) return "coloring record has the wrong length";
    ccl::KColoring c{k, {0}};
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (values[i] < 1 || values[i] > k) return "color out of range";
      c.color.push_back(values[i]);
    }
    if (sorted(ccl::coloringClause(c, bundle_.edgeMap)) != sorted(clause)) return "clause does not match its coloring";
    return "";
  }
  if (!bundle_.triangleMap) return "010 record without triangle variables";
  if (static_cast<int>(values.size()) != n) return "010 record has the wrong length";
  ccl::Coloring010 c{{0}};
  for (int v : values) {
    if (v != 0 && v != 1) return "010 label out of range";
    c.value.push_back(static_cast<uint8_t>(v));
  }
  if (sorted(ccl::blockingClause010(c, bundle_.edgeMap, *bundle_.triangleMap)) != sorted(clause)) {
    return "clause does not match its 010-coloring";
  }
  return "";
}

}  // namespace smsccl::cli
