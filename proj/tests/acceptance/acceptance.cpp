// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Usage: smsccl_acceptance [--extended] [criterion numbers...]

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rup_checker.hpp"
#include "smsccl/ccl/checkers.hpp"
#include "smsccl/ccl/engine.hpp"
#include "smsccl/cube/cube.hpp"
#include "smsccl/embed/embed.hpp"
#include "smsccl/encodings/encodings.hpp"
#include "smsccl/graph/graph6.hpp"
#include "smsccl/sat/clause_log.hpp"
#include "smsccl/symmetry/minimality.hpp"

using namespace smsccl;
using graph::PartialGraph;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects mismatches; the first few are reported in the detail line.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) failed_ << (failures_ > 1 ? "; " : "") << what;
  }
  void note(const std::string& text) { notes_ << (notes_.tellp() > 0 ? ", " : "") << text; }
  Outcome outcome() const {
    if (failures_ == 0) return {true, notes_.str()};
    return {false, std::to_string(failures_) + " mismatch(es): " + failed_.str()};
  }

 private:
  int failures_ = 0;
  std::ostringstream failed_;
  std::ostringstream notes_;
};

bool extended = false;

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

PartialGraph randomGraph(int n, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(std::uniform_real_distribution<double>(0.1, 0.9)(rng));
  PartialGraph g = PartialGraph::empty(n);
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (coin(rng)) g.addEdge(u, v);
    }
  }
  return g;
}

// Edge and triangle variable values induced by a fully defined graph.
std::vector<sat::LBool> graphAssignment(const PartialGraph& g, const graph::EdgeVarMap& e,
                                        const encodings::TriangleVarMap* t) {
  const int last = t ? t->lastVar() : e.lastVar();
  std::vector<sat::LBool> a(last + 1, sat::LBool::Undef);
  for (int v = e.firstVar(); v <= e.lastVar(); ++v) {
    auto [x, y] = e.pair(v);
    a[v] = sat::toLBool(g.present(x, y));
  }
  if (t) {
    for (int v = t->firstVar(); v <= t->lastVar(); ++v) {
      const auto& [x, y, z] = t->triple(v);
      a[v] = sat::toLBool(g.present(x, y) && g.present(y, z) && g.present(x, z));
    }
  }
  return a;
}

std::size_t countSolutions(const encodings::EncodingBundle& b, ccl::CoNPChecker& checker) {
  return ccl::runSearch(b.formula, b.edgeMap, checker).solutions.size();
}

std::vector<std::string> solutionSet(const std::vector<PartialGraph>& graphs) {
  std::set<std::string> s;
  for (const auto& g : graphs) s.insert(graph::toGraph6(g));
  return {s.begin(), s.end()};
}

Outcome criterion1() {
  Tally t;
  for (auto [n, expected] : {std::pair{10, std::size_t{12172}}, std::pair{11, std::size_t{105071}}}) {
    ccl::AcceptAllChecker all;
    const std::size_t got = countSolutions(encodings::encodeTriangleFree(n), all);
    t.expect(got == expected, "n=" + std::to_string(n) + " gave " + std::to_string(got));
    t.note("n=" + std::to_string(n) + ": " + std::to_string(got));
  }
  return t.outcome();
}

Outcome criterion2() {
  Tally t;
  for (int n = 3; n <= 10; ++n) {
    const auto b = encodings::encodeTriangleFree(n);
    ccl::KColorChecker checker(b.edgeMap, 3);
    const std::size_t got = countSolutions(b, checker);
    t.expect(got == 0, "n=" + std::to_string(n) + " gave " + std::to_string(got));
  }
  const auto b = encodings::encodeTriangleFree(11);
  ccl::KColorChecker checker(b.edgeMap, 3);
  const auto solutions = ccl::runSearch(b.formula, b.edgeMap, checker).solutions;
  t.expect(!solutions.empty(), "n=11 has no solution");
  for (const auto& g : solutions) {
    t.expect(!ccl::isKColorableBruteForce(g, 3), graph::toGraph6(g) + " is 3-colorable");
  }
  t.note("n<=10: 0, n=11: " + std::to_string(solutions.size()) + " (brute-force verified)");
  return t.outcome();
}

Outcome criterion3() {
  Tally t;
  const std::map<int, std::size_t> expected{{13, 34}, {14, 216}, {15, 2352}, {16, 27394}};
  for (auto [n, count] : expected) {
    ccl::AcceptAllChecker all;
    const std::size_t got = countSolutions(encodings::encodeKsExistential(n), all);
    t.expect(got == count, "n=" + std::to_string(n) + " gave " + std::to_string(got));
    t.note("n=" + std::to_string(n) + ": " + std::to_string(got));
  }
  return t.outcome();
}

Outcome criterion4() {
  Tally t;
  std::map<int, std::size_t> expected{{17, 1}, {18, 0}};
  if (extended) expected[19] = 8;
  for (auto [n, count] : expected) {
    const auto b = encodings::encodeKsExistential(n);
    ccl::Color010Checker checker(b.edgeMap, *b.triangleMap);
    const auto start = std::chrono::steady_clock::now();
    const auto solutions = ccl::runSearch(b.formula, b.edgeMap, checker).solutions;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    t.expect(solutions.size() == count, "n=" + std::to_string(n) + " gave " + std::to_string(solutions.size()));
    for (const auto& g : solutions) t.expect(!ccl::is010ColorableBruteForce(g), graph::toGraph6(g) + " is 010-colorable");
    t.expect(secs <= 1800, "n=" + std::to_string(n) + " exceeded 30 minutes");
    std::ostringstream s;
    s << "n=" << n << ": " << solutions.size() << " in " << std::fixed << std::setprecision(1) << secs << "s";
    t.note(s.str());
  }
  return t.outcome();
}

Outcome criterion5() {
  Tally t;
  const std::map<int, int> classes{{4, 11}, {5, 34}, {6, 156}};
  for (int n = 2; n <= 6; ++n) {
    const int cells = n * (n - 1) / 2;
    int minimal = 0;
    for (uint64_t mask = 0; mask < (uint64_t{1} << cells); ++mask) {
      const PartialGraph g = fromMask(n, mask);
      const bool fast = symmetry::checkMinimal(g).outcome == symmetry::CheckOutcome::Minimal;
      const bool brute = graph::isLexMinBruteForce(g);
      t.expect(fast == brute, "disagreement on " + graph::toGraph6(g));
      minimal += fast;
    }
    if (classes.count(n)) {
      t.expect(minimal == classes.at(n), "n=" + std::to_string(n) + " has " + std::to_string(minimal) + " classes");
      t.note("n=" + std::to_string(n) + ": " + std::to_string(minimal));
    }
  }
  return t.outcome();
}

// Symmetry clauses from real runs, their permutations taken from the log.
struct LoggedSymmetryClause {
  graph::Permutation pi;
  sat::Clause clause;
};

std::vector<LoggedSymmetryClause> symmetryClausesFromLog(const std::string& text) {
  std::vector<LoggedSymmetryClause> out;
  std::istringstream in(text);
  std::string line;
  std::optional<graph::Permutation> pending;
  while (std::getline(in, line)) {
    if (line.rfind("c perm ", 0) == 0) {
      std::istringstream fields(line.substr(7));
      std::vector<int> images;
      for (int v; fields >> v;) images.push_back(v);
      pending = graph::Permutation(images);
      continue;
    }
    if (line.empty() || line[0] == 'c') continue;
    if (pending) {
      std::istringstream fields(line);
      sat::Clause clause;
      for (int v; fields >> v && v != 0;) clause.push_back(sat::Lit::fromDimacs(v));
      out.push_back({*pending, clause});
      pending.reset();
    }
  }
  return out;
}

Outcome criterion6() {
  Tally t;
  std::mt19937_64 rng(6);
  std::size_t clauses = 0;
  std::size_t samples = 0;
  for (int n = 4; n <= 6; ++n) {
    const graph::EdgeVarMap map(n);
    for (bool triangleFree : {false, true}) {
      sat::Formula f;
      f.variableCount = map.lastVar();
      if (triangleFree) f = encodings::encodeTriangleFree(n).formula;
      std::ostringstream logText;
      sat::ClauseLog log(logText);
      ccl::AcceptAllChecker all;
      ccl::SearchOptions options;
      options.log = &log;
      ccl::runSearch(f, map, all, options);
      log.flush();
      for (const auto& [pi, clause] : symmetryClausesFromLog(logText.str())) {
        ++clauses;
        std::vector<sat::LBool> fixed(map.lastVar() + 1, sat::LBool::Undef);
        for (sat::Lit l : clause) fixed[l.var()] = sat::toLBool(l.isNegative());
        std::vector<int> open;
        for (int v = 1; v <= map.lastVar(); ++v) {
          if (fixed[v] == sat::LBool::Undef) open.push_back(v);
        }
        const uint64_t completions = uint64_t{1} << open.size();
        const uint64_t count = std::min<uint64_t>(completions, 64);
        for (uint64_t s = 0; s < count; ++s) {
          const uint64_t bits = completions <= 64 ? s : std::uniform_int_distribution<uint64_t>(0, completions - 1)(rng);
          PartialGraph g = PartialGraph::empty(n);
          for (int v = 1; v <= map.lastVar(); ++v) {
            bool present = fixed[v] == sat::LBool::True;
            if (fixed[v] == sat::LBool::Undef) {
              const auto pos = std::find(open.begin(), open.end(), v) - open.begin();
              present = (bits >> pos) & 1;
            }
            if (present) {
              auto [x, y] = map.pair(v);
              g.addEdge(x, y);
            }
          }
          ++samples;
          t.expect(!graph::isLexMinBruteForce(g), "clause falsified by canonical " + graph::toGraph6(g));
          t.expect(graph::lexCompare(graph::applyPermutation(g, pi.inverse()), g).order == graph::LexOrder::Less,
                   "permutation does not reduce " + graph::toGraph6(g));
        }
        t.expect(!symmetry::verifySymmetryClause(clause, pi, map).has_value(), "clause verifier rejected a logged clause");
      }
    }
  }
  t.expect(clauses > 0, "no symmetry clauses were logged");

  // Coloring clauses: every graph on four vertices, every 3-coloring.
  const graph::EdgeVarMap map4(4);
  std::size_t pairs = 0;
  for (uint64_t mask = 0; mask < 64; ++mask) {
    const PartialGraph g = fromMask(4, mask);
    const auto a = graphAssignment(g, map4, nullptr);
    for (int code = 0; code < 81; ++code) {
      ccl::KColoring c{3, {0, 0, 0, 0, 0}};
      for (int v = 1, x = code; v <= 4; ++v, x /= 3) c.color[v] = x % 3 + 1;
      const bool falsified = sat::evaluate(ccl::coloringClause(c, map4), a) == sat::LBool::False;
      t.expect(falsified == ccl::isValidKColoring(g, c), "coloring clause mismatch on " + graph::toGraph6(g));
      ++pairs;
    }
  }

  // 010 blocking clauses: every graph on four vertices, every labeling.
  const encodings::TriangleVarMap tri4(4, map4.lastVar() + 1);
  for (uint64_t mask = 0; mask < 64; ++mask) {
    const PartialGraph g = fromMask(4, mask);
    const auto a = graphAssignment(g, map4, &tri4);
    for (int code = 0; code < 16; ++code) {
      ccl::Coloring010 c{{0, 0, 0, 0, 0}};
      for (int v = 1; v <= 4; ++v) c.value[v] = (code >> (v - 1)) & 1;
      const bool falsified = sat::evaluate(ccl::blockingClause010(c, map4, tri4), a) == sat::LBool::False;
      t.expect(falsified == ccl::isValid010Coloring(g, c), "010 clause mismatch on " + graph::toGraph6(g));
      ++pairs;
    }
  }
  t.note(std::to_string(clauses) + " symmetry clauses, " + std::to_string(samples) + " falsifying samples, " +
         std::to_string(pairs) + " coloring pairs");
  return t.outcome();
}

Outcome criterion7() {
  Tally t;
  struct Instance {
    std::string name;
    encodings::EncodingBundle bundle;
    bool ks;
  };
  std::vector<Instance> instances;
  instances.push_back({"ks17", encodings::encodeKsExistential(17), true});
  instances.push_back({"tf10", encodings::encodeTriangleFree(10), false});
  for (const auto& inst : instances) {
    const auto& b = inst.bundle;
    const cube::CheckerFactory make = [&]() -> std::unique_ptr<ccl::CoNPChecker> {
      if (inst.ks) return std::make_unique<ccl::Color010Checker>(b.edgeMap, *b.triangleMap);
      return std::make_unique<ccl::AcceptAllChecker>();
    };
    auto mono = make();
    const auto expected = solutionSet(ccl::runSearch(b.formula, b.edgeMap, *mono).solutions);
    for (int threshold : {20, 40}) {
      auto generator = make();
      cube::CubeGenOptions options;
      options.threshold = threshold;
      const auto gen = cube::generateCubes(b, *generator, options);
      for (int jobs : {1, 4}) {
        const auto reports = cube::solveCubes(b, gen.cubes, make, jobs);
        bool failed = false;
        for (const auto& r : reports) failed |= r.status != cube::CubeStatus::Solved;
        const auto merged = cube::dedupMerge(reports);
        const std::string tag = inst.name + " threshold " + std::to_string(threshold) + " jobs " + std::to_string(jobs);
        t.expect(!failed, tag + " had a failed cube");
        t.expect(merged == expected, tag + " gave " + std::to_string(merged.size()) + " solutions");
      }
      t.note(inst.name + "/" + std::to_string(threshold) + ": " + std::to_string(gen.cubes.size()) + " cubes");
    }
    t.note(inst.name + " solutions: " + std::to_string(expected.size()));
  }
  return t.outcome();
}

Outcome criterion8() {
  Tally t;
  using embed::Rational;
  t.expect(embed::dot(embed::Vector3Q{-1, 2, 1}, embed::Vector3Q{2, 0, 2}) == Rational(0), "dot product is not zero");

  const PartialGraph k3 = PartialGraph::complete(3);
  const PartialGraph ten = embed::tenVertexUnembeddable();
  for (const PartialGraph* g : {&k3, &ten}) {
    const auto choice = embed::findCover(*g);
    const auto c = embed::emitConstraints(*g, choice);
    t.expect(c.unknowns == 3 * (static_cast<int>(choice.cover.free.size()) - 2), "unknown count");
  }

  if (std::system("command -v z3 >/dev/null 2>&1") != 0) {
    t.note("dot product exact, unknown counts hold; solver checks skipped (z3 absent)");
    return t.outcome();
  }
  const auto dir = std::filesystem::temp_directory_path() / "smsccl_acceptance_embed";
  std::filesystem::create_directories(dir);
  embed::PipelineOptions options;
  options.solverCommand = "z3 {file}";
  options.workDir = dir.string();
  options.timeoutSeconds = 120;
  const auto k3Result = embed::runPipeline(k3, {}, options, "k3");
  t.expect(k3Result.verdict == embed::EmbedVerdict::Embeddable, "K3: " + embed::toString(k3Result.verdict));
  if (k3Result.model) t.expect(embed::verifyEmbedding(k3, *k3Result.model, 1e-9).valid, "K3 model invalid");
  const auto tenResult = embed::runPipeline(ten, {}, options, "ten");
  t.expect(tenResult.verdict == embed::EmbedVerdict::UnembeddableBySolver, "ten-vertex: " + embed::toString(tenResult.verdict));
  t.note("dot product exact, K3 sat, ten-vertex graph unsat (z3)");
  return t.outcome();
}

Outcome criterion9() {
  Tally t;
  std::size_t graphs = 0;
  auto compare = [&](const PartialGraph& g, ccl::EdgeFrequencyTable& freq) {
    const bool brute = ccl::is010ColorableBruteForce(g);
    const auto plain = ccl::color010Check(g);
    const auto guided = ccl::color010Check(g, &freq);
    t.expect(plain.has_value() == brute, "plain check disagrees on " + graph::toGraph6(g));
    t.expect(guided.has_value() == brute, "guided check disagrees on " + graph::toGraph6(g));
    if (plain) t.expect(ccl::isValid010Coloring(g, *plain), "invalid coloring on " + graph::toGraph6(g));
    if (guided) t.expect(ccl::isValid010Coloring(g, *guided), "invalid coloring on " + graph::toGraph6(g));
    freq.update(g);
    ++graphs;
  };
  for (int n = 1; n <= 6; ++n) {
    ccl::EdgeFrequencyTable freq(n);
    const int cells = n * (n - 1) / 2;
    for (uint64_t mask = 0; mask < (uint64_t{1} << cells); ++mask) compare(fromMask(n, mask), freq);
  }
  std::mt19937_64 rng(9);
  for (int n : {7, 8}) {
    ccl::EdgeFrequencyTable freq(n);
    for (int i = 0; i < 10000; ++i) compare(randomGraph(n, rng), freq);
  }
  t.note(std::to_string(graphs) + " graphs (all n<=6, 10^4 random each for n=7,8)");
  return t.outcome();
}

Outcome criterion10() {
  Tally t;
  const auto b = encodings::encodeKsExistential(13);
  ccl::AcceptAllChecker all;
  const auto models = ccl::runSearch(b.formula, b.edgeMap, all).solutions;
  t.expect(models.size() == 34, "expected 34 models, got " + std::to_string(models.size()));

  sat::Formula blocked = b.formula;
  for (const auto& g : models) blocked.add(graph::edgeBlockingClause(g, b.edgeMap));
  std::ostringstream logText;
  sat::ClauseLog log(logText);
  ccl::SearchOptions options;
  options.log = &log;
  const auto result = ccl::runSearch(blocked, b.edgeMap, all, options);
  log.flush();
  t.expect(result.solutions.empty(), "blocked instance still has solutions");

  std::istringstream in(logText.str());
  const auto replay = smsccl::testing::replayClauseLog(blocked, in);
  t.expect(replay.ok, "replay failed: " + replay.error);
  t.expect(replay.derivedEmpty, "log does not derive the empty clause");
  t.note(std::to_string(replay.checked) + " clauses checked by unit propagation, " + std::to_string(replay.axioms) +
         " symmetry axioms");
  return t.outcome();
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"triangle-free isomorphism class counts", criterion1},
      {"triangle-free non-3-colorable graphs", criterion2},
      {"KS existential counts", criterion3},
      {"KS candidate counts", criterion4},
      {"canonicity oracle equivalence", criterion5},
      {"clause soundness properties", criterion6},
      {"cube equivalence", criterion7},
      {"embeddability verification", criterion8},
      {"010-checker oracle", criterion9},
      {"clause log replay", criterion10},
  };

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--extended") {
      extended = true;
      continue;
    }
    try {
      const int id = std::stoi(arg);
      if (id < 1 || id > static_cast<int>(criteria.size())) throw std::out_of_range(arg);
      selected.insert(id);
    } catch (const std::exception&) {
      std::cerr << "usage: smsccl_acceptance [--extended] [criterion numbers 1-10...]\n";
      return 2;
    }
  }

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::cout << "criterion " << std::setw(2) << id << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first
              << " [" << std::fixed << std::setprecision(1) << secs << "s] " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
