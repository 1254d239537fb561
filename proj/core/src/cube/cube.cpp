#include "smsccl/cube/cube.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <chrono>
#include <iomanip>
#include <istream>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "smsccl/graph/graph6.hpp"

namespace smsccl::cube {

namespace {

using Clock = std::chrono::steady_clock;

class CubeGenerator : public ccl::CclPropagator {
 public:
  CubeGenerator(const graph::EdgeVarMap& map, ccl::CoNPChecker& checker, const CubeGenOptions& options)
      : CclPropagator(map, checker, ccl::SearchMode::All, options.symmetry),
        threshold_(options.threshold),
        prerun_(options.prerunSeconds),
        start_(Clock::now()) {}

  std::optional<sat::Injection> check(const sat::Solver& solver, sat::CheckPoint point) override {
    auto injection = CclPropagator::check(solver, point);
    if (injection && (injection->note.starts_with("perm") || injection->note.starts_with("col"))) {
      carried_.push_back(injection->clause);
    }
    return injection;
  }

  std::vector<Cube>& cubes() { return cubes_; }
  std::vector<sat::Clause>& carried() { return carried_; }

 protected:
  std::optional<sat::Injection> onPartial(const sat::Solver& solver, const graph::PartialGraph&) override {
    if (solver.assignedObserved() < threshold_) return std::nullopt;
    if (std::chrono::duration<double>(Clock::now() - start_).count() < prerun_) return std::nullopt;
    Cube cube;
    sat::Clause negation;
    for (int v = map().firstVar(); v <= map().lastVar(); ++v) {
      const sat::LBool b = solver.value(v);
      if (b == sat::LBool::Undef) continue;
      const sat::Lit l = sat::Lit::make(v, b == sat::LBool::False);
      cube.push_back(l);
      negation.push_back(~l);
    }
    cubes_.push_back(std::move(cube));
    return sat::Injection{std::move(negation), "cube"};
  }

 private:
  int threshold_;
  double prerun_;
  Clock::time_point start_;
  std::vector<Cube> cubes_;
  std::vector<sat::Clause> carried_;
};

}  // namespace

CubeGenResult generateCubes(const encodings::EncodingBundle& bundle, ccl::CoNPChecker& checker,
                            const CubeGenOptions& options) {
  const auto& map = bundle.edgeMap;
  if (options.threshold <= 0) throw std::invalid_argument("cube threshold must be positive");
  if (options.threshold > map.count()) {
    throw std::invalid_argument("cube threshold " + std::to_string(options.threshold) + " exceeds the " +
                                std::to_string(map.count()) + " edge variables");
  }
  const auto start = Clock::now();
  sat::Solver solver(bundle.formula.variableCount);
  if (options.log) solver.setClauseLog(options.log);
  solver.addFormula(bundle.formula);

  CubeGenerator hook(map, checker, options);
  sat::HookPolicy policy;
  policy.observedFirst = map.firstVar();
  policy.observedLast = map.lastVar();
  policy.conflictInterval = options.symmetry.checkPartial ? options.conflictInterval : 0;
  policy.observedThreshold = options.threshold;
  policy.branchOrder = options.branchOrder;
  solver.setPropagator(&hook, policy);
  if (solver.solve() == sat::SolveStatus::InternalError) {
    throw std::logic_error("solver reported an internal error: " + solver.lastError());
  }
  if (options.log) options.log->flush();

  CubeGenResult result;
  result.cubes = std::move(hook.cubes());
  result.carriedClauses = std::move(hook.carried());
  result.solutions = hook.solutions();
  for (const auto& g : result.solutions) {
    Cube full;
    for (sat::Lit l : graph::edgeBlockingClause(g, map)) full.push_back(~l);
    result.cubes.push_back(std::move(full));
  }
  result.stats = hook.stats();
  result.stats.solver = solver.stats();
  result.stats.symmetry = hook.symmetryStats();
  result.stats.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

CubeReport solveCube(const encodings::EncodingBundle& bundle, const Cube& cube, std::size_t id,
                     ccl::CoNPChecker& checker, const CubeSolveOptions& options) {
  const auto start = Clock::now();
  CubeReport report;
  report.id = id;
  try {
    ccl::SearchOptions search;
    search.mode = ccl::SearchMode::All;
    search.symmetry = options.symmetry;
    search.conflictInterval = options.conflictInterval;
    const auto result = ccl::runSearch(bundle.formula, bundle.edgeMap, checker, search, cube);
    for (const auto& g : result.solutions) report.solutions.push_back(graph::toGraph6(g));
  } catch (const std::exception& e) {
    report.status = CubeStatus::Failed;
    report.error = e.what();
  }
  report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

std::vector<CubeReport> solveCubes(const encodings::EncodingBundle& bundle, const std::vector<Cube>& cubes,
                                   const CheckerFactory& makeChecker, int jobs, const CubeSolveOptions& options) {
  if (jobs < 1) throw std::invalid_argument("at least one job is required");
  std::vector<CubeReport> reports;
  reports.reserve(cubes.size());
  std::mutex collector;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t id = next.fetch_add(1);
      if (id >= cubes.size()) return;
      CubeReport report;
      try {
        auto checker = makeChecker();
        report = solveCube(bundle, cubes[id], id, *checker, options);
      } catch (const std::exception& e) {
        report.id = id;
        report.status = CubeStatus::Failed;
        report.error = e.what();
      }
      std::lock_guard lock(collector);
      reports.push_back(std::move(report));
    }
  };
  std::vector<std::thread> pool;
  const int threads = static_cast<int>(std::min<std::size_t>(jobs, std::max<std::size_t>(cubes.size(), 1)));
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  std::sort(reports.begin(), reports.end(), [](const CubeReport& a, const CubeReport& b) { return a.id < b.id; });
  return reports;
}

std::vector<std::string> dedupMerge(const std::vector<CubeReport>& reports) {
  std::set<std::string> unique;
  for (const auto& r : reports) unique.insert(r.solutions.begin(), r.solutions.end());
  return {unique.begin(), unique.end()};
}

void writeCubes(std::ostream& out, const std::vector<Cube>& cubes) {
  for (const Cube& cube : cubes) {
    out << 'a';
    for (sat::Lit l : cube) out << ' ' << l.toDimacs();
    out << " 0\n";
  }
  if (!out) throw std::runtime_error("failed to write cube file");
}

std::vector<Cube> readCubes(std::istream& in) {
  std::vector<Cube> cubes;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::istringstream fields(line);
    std::string head;
    if (!(fields >> head) || head == "c") continue;
    auto fail = [&](const std::string& what) {
      return std::runtime_error("cube file line " + std::to_string(lineNo) + ": " + what);
    };
    if (head != "a") throw fail("expected an 'a' line");
    Cube cube;
    long long value = 0;
    bool terminated = false;
    while (fields >> value) {
      if (value == 0) {
        terminated = true;
        break;
      }
      if (value > INT32_MAX / 2 || value < -(INT32_MAX / 2)) throw fail("literal out of range");
      cube.push_back(sat::Lit::fromDimacs(static_cast<int>(value)));
    }
    std::string rest;
    if (!terminated) throw fail("missing terminating 0");
    if (fields >> rest) throw fail("trailing data after 0");
    std::vector<sat::Lit> sorted = cube;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (sorted[i].var() == sorted[i - 1].var() && sorted[i] != sorted[i - 1]) {
        throw fail("complementary literals on variable " + std::to_string(sorted[i].var()));
      }
    }
    cubes.push_back(std::move(cube));
  }
  return cubes;
}

void writeReports(std::ostream& out, const std::vector<CubeReport>& reports) {
  for (const auto& r : reports) {
    out << "cube " << r.id << ' ' << (r.status == CubeStatus::Solved ? "solved" : "failed") << ' '
        << r.solutions.size() << ' ' << std::fixed << std::setprecision(3) << r.seconds;
    if (!r.error.empty()) out << " # " << r.error;
    out << '\n';
  }
}

}  // namespace smsccl::cube
