#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "problem.hpp"
#include "smsccl/ccl/engine.hpp"
#include "smsccl/cube/cube.hpp"
#include "smsccl/embed/embed.hpp"
#include "smsccl/graph/graph6.hpp"
#include "smsccl/sat/clause_log.hpp"
#include "smsccl/sat/dimacs.hpp"
#include "smsccl/symmetry/minimality.hpp"

using namespace smsccl;
using cli::Problem;
using cli::ProblemConfig;
using cli::UsageError;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitVerification = 3;

class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Output target: "-" is stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string readInput(const std::string& path) {
  if (path != "-") return cli::readFile(path);
  std::ostringstream buffer;
  buffer << std::cin.rdbuf();
  return buffer.str();
}

std::string seconds(double s) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << s;
  return out.str();
}

void addProblemOptions(CLI::App* cmd, ProblemConfig& config, bool withChecker = true) {
  cmd->add_option("--problem", config.problem, "Problem to encode")
      ->required()
      ->check(CLI::IsMember(cli::problemNames()));
  cmd->add_option("--n", config.n, "Number of vertices")->check(CLI::Range(1, 63));
  cmd->add_option("--dimacs", config.dimacsPath, "CNF file (problem dimacs)");
  cmd->add_option("--mapping", config.mappingPath, "Variable mapping file (problem dimacs)");
  if (!withChecker) return;
  cmd->add_option("--k", config.k, "Colors for the coloring checker")->check(CLI::Range(1, 63));
  cmd->add_option("--checker", config.checker, "Checker for problem dimacs: none, kcolor or 010")
      ->check(CLI::IsMember({"none", "kcolor", "010"}));
  cmd->add_flag("!--no-frequency-gate", config.frequencyGate, "Disable frequency-guided 010 color order");
  cmd->add_option("--budget", config.partialBudget, "Node budget of partial minimality checks");
  cmd->add_flag("!--no-partial-checks", config.partialChecks, "Check minimality on full assignments only");
}

void printSummary(const ccl::SearchStats& s, std::ostream& out) {
  out << "c solutions " << s.solutions << " candidates " << s.candidates << " co-certificates " << s.coCertificates
      << " symmetry-clauses " << s.symmetry.witnesses << " conflicts " << s.solver.conflicts << " decisions "
      << s.solver.decisions << " time " << seconds(s.seconds) << '\n';
}

// --- enumerate -------------------------------------------------------------

struct EnumerateArgs {
  ProblemConfig problem;
  std::string mode = "all";
  std::string output = "-";
  std::string log;
};

int runEnumerate(const EnumerateArgs& args) {
  const Problem problem(args.problem);
  auto checker = problem.makeChecker();
  Output out(args.output);
  std::unique_ptr<sat::ClauseLog> log;
  if (!args.log.empty()) log = std::make_unique<sat::ClauseLog>(args.log);

  ccl::SearchOptions options;
  options.mode = args.mode == "first" ? ccl::SearchMode::First : ccl::SearchMode::All;
  options.symmetry = problem.symmetryOptions();
  options.log = log.get();
  options.onSolution = [&out](const graph::PartialGraph& g) { out.stream() << graph::toGraph6(g) << '\n' << std::flush; };
  const auto result = ccl::runSearch(problem.bundle().formula, problem.bundle().edgeMap, *checker, options);
  if (log) log->flush();
  printSummary(result.stats, std::cerr);
  return 0;
}

// --- encode ----------------------------------------------------------------

struct EncodeArgs {
  ProblemConfig problem;
  std::string output = "-";
  std::string mappingOutput;
};

int runEncode(const EncodeArgs& args) {
  if (args.problem.problem == "dimacs") throw UsageError("encode needs a built-in problem");
  const Problem problem(args.problem);
  Output out(args.output);
  out.stream() << sat::emitDimacs(problem.bundle().formula);
  if (!args.mappingOutput.empty()) {
    Output mapping(args.mappingOutput);
    mapping.stream() << encodings::mappingText(problem.bundle());
  }
  return 0;
}

// --- cube-gen --------------------------------------------------------------

struct CubeGenArgs {
  ProblemConfig problem;
  int threshold = 120;
  double prerun = 0.0;
  std::string cubes;
  std::string log;
};

int runCubeGen(const CubeGenArgs& args) {
  const Problem problem(args.problem);
  const int edges = problem.bundle().edgeMap.count();
  if (args.threshold < 1 || args.threshold > edges) {
    throw UsageError("--threshold must lie in 1.." + std::to_string(edges));
  }
  auto checker = problem.makeChecker();
  std::unique_ptr<sat::ClauseLog> log;
  if (!args.log.empty()) log = std::make_unique<sat::ClauseLog>(args.log);
  cube::CubeGenOptions options;
  options.threshold = args.threshold;
  options.prerunSeconds = args.prerun;
  options.symmetry = problem.symmetryOptions();
  options.log = log.get();
  const auto result = cube::generateCubes(problem.bundle(), *checker, options);
  if (log) log->flush();
  Output out(args.cubes);
  cube::writeCubes(out.stream(), result.cubes);
  std::cerr << "c cubes " << result.cubes.size() << " generator-solutions " << result.solutions.size()
            << " carried-clauses " << result.carriedClauses.size() << " time " << seconds(result.stats.seconds) << '\n';
  return 0;
}

// --- cube-solve ------------------------------------------------------------

struct CubeSolveArgs {
  ProblemConfig problem;
  std::string cubes;
  std::string range;
  int jobs = 1;
  std::string output = "-";
  std::string report;
};

std::pair<std::size_t, std::size_t> parseRange(const std::string& text, std::size_t count) {
  if (text.empty()) return {0, count};
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--range must look like FIRST:END");
  try {
    const std::size_t first = colon == 0 ? 0 : std::stoull(text.substr(0, colon));
    const std::size_t end = colon + 1 == text.size() ? count : std::stoull(text.substr(colon + 1));
    if (first > end || end > count) {
      throw UsageError("--range " + text + " is outside the " + std::to_string(count) + " cubes");
    }
    return {first, end};
  } catch (const std::logic_error&) {
    throw UsageError("--range must look like FIRST:END");
  }
}

int runCubeSolve(const CubeSolveArgs& args) {
  const Problem problem(args.problem);
  std::ifstream in(args.cubes);
  if (!in) throw std::runtime_error("cannot open cube file " + args.cubes);
  const auto all = cube::readCubes(in);
  const auto [first, end] = parseRange(args.range, all.size());
  const std::vector<cube::Cube> shard(all.begin() + static_cast<std::ptrdiff_t>(first),
                                      all.begin() + static_cast<std::ptrdiff_t>(end));

  cube::CubeSolveOptions options;
  options.symmetry = problem.symmetryOptions();
  auto reports = cube::solveCubes(
      problem.bundle(), shard, [&problem] { return problem.makeChecker(); }, args.jobs, options);
  for (auto& r : reports) r.id += first;

  Output out(args.output);
  for (const auto& r : reports) {
    for (const auto& s : r.solutions) out.stream() << s << '\n';
  }
  std::unique_ptr<Output> reportFile;
  if (!args.report.empty()) reportFile = std::make_unique<Output>(args.report);
  std::ostream& rep = reportFile ? reportFile->stream() : std::cerr;
  cube::writeReports(rep, reports);
  double maxTime = 0.0;
  std::size_t failed = 0;
  for (const auto& r : reports) {
    maxTime = std::max(maxTime, r.seconds);
    if (r.status == cube::CubeStatus::Failed) {
      ++failed;
      std::cerr << "c cube " << r.id << " failed: " << r.error << '\n';
    }
  }
  rep << "c cubes " << reports.size() << " failed " << failed << " max-time " << seconds(maxTime) << '\n';
  return failed == 0 ? 0 : kExitRuntime;
}

// --- merge -----------------------------------------------------------------

struct MergeArgs {
  std::vector<std::string> inputs;
  std::string output = "-";
};

int runMerge(const MergeArgs& args) {
  std::vector<cube::CubeReport> reports;
  for (const auto& path : args.inputs) {
    cube::CubeReport r;
    std::istringstream in(cli::readFile(path));
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
      ++lineNo;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == 'c') continue;
      try {
        graph::fromGraph6(line);
      } catch (const std::exception& e) {
        throw std::runtime_error(path + " line " + std::to_string(lineNo) + ": " + e.what());
      }
      r.solutions.push_back(line);
    }
    reports.push_back(std::move(r));
  }
  Output out(args.output);
  const auto merged = cube::dedupMerge(reports);
  for (const auto& s : merged) out.stream() << s << '\n';
  std::cerr << "c merged " << merged.size() << '\n';
  return 0;
}

// --- embed -----------------------------------------------------------------

struct EmbedArgs {
  std::string input = "-";
  std::string output = "-";
  std::vector<std::string> libraries;
  bool builtinLibrary = true;
  std::string solver;
  double timeout = 10.0;
  int retries = 3;
  std::string workDir = ".";
};

int runEmbed(const EmbedArgs& args, uint64_t seed) {
  embed::UnembeddableLibrary lib;
  if (args.builtinLibrary) lib = embed::UnembeddableLibrary::builtin();
  for (const auto& path : args.libraries) lib.append(embed::UnembeddableLibrary::fromFile(path));

  embed::PipelineOptions options;
  if (!args.solver.empty()) {
    if (args.solver.find("{file}") == std::string::npos) throw UsageError("--solver needs a {file} placeholder");
    options.solverCommand = args.solver;
  }
  options.timeoutSeconds = args.timeout;
  options.retryBudget = args.retries;
  options.workDir = args.workDir;
  options.seed = seed;

  const auto graphs = graph::readGraph6Lines(readInput(args.input));
  Output out(args.output);
  std::size_t index = 0;
  for (const auto& g : graphs) {
    const auto r = embed::runPipeline(g, lib, options, "graph" + std::to_string(index));
    out.stream() << index << ' ' << graph::toGraph6(g) << ' ' << embed::toString(r.verdict);
    if (!r.detail.empty()) out.stream() << " (" << r.detail << ')';
    if (!r.constraintFile.empty()) out.stream() << " file=" << r.constraintFile;
    out.stream() << '\n';
    ++index;
  }
  return 0;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  ProblemConfig problem;
  std::string log;
  int bruteForceLimit = 12;
};

int runVerify(const VerifyArgs& args) {
  const Problem problem(args.problem);
  const auto& map = problem.bundle().edgeMap;
  std::istringstream in(cli::readFile(args.log));
  std::string line;
  std::string pendingNote;
  int pendingLine = 0;
  int lineNo = 0;
  std::map<std::string, std::size_t> counts;
  auto fail = [&](int at, const std::string& why) {
    throw VerificationFailure("line " + std::to_string(at) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty()) continue;
    if (line[0] == 'c') {
      std::istringstream fields(line);
      std::string c;
      std::string tag;
      fields >> c >> tag;
      if (tag == "perm" || tag == "col" || tag == "col010" || tag == "sol" || tag == "cube") {
        if (!pendingNote.empty()) fail(pendingLine, "witness without a clause");
        pendingNote = line.substr(2);
        pendingLine = lineNo;
      }
      continue;
    }
    sat::Clause clause;
    {
      std::istringstream fields(line);
      int value = 0;
      bool terminated = false;
      while (fields >> value) {
        if (value == 0) {
          terminated = true;
          break;
        }
        clause.push_back(sat::Lit::fromDimacs(value));
      }
      if (!terminated) fail(lineNo, "clause without terminating 0");
    }
    if (pendingNote.empty()) {
      ++counts["unchecked"];
      continue;
    }
    std::istringstream note(pendingNote);
    std::string tag;
    note >> tag;
    pendingNote.clear();
    if (tag == "perm") {
      std::vector<int> images;
      for (int v; note >> v;) images.push_back(v);
      std::optional<std::string> error;
      try {
        error = symmetry::verifySymmetryClause(clause, graph::Permutation(images), map);
      } catch (const std::exception& e) {
        error = e.what();
      }
      if (error) fail(lineNo, "symmetry clause: " + *error);
    } else if (tag == "col" || tag == "col010") {
      std::vector<int> values;
      for (int v; note >> v;) values.push_back(v);
      const std::string error = problem.coloringRecordError(tag, values, clause);
      if (!error.empty()) fail(lineNo, error);
    } else if (tag == "sol") {
      std::string g6;
      note >> g6;
      graph::PartialGraph g;
      try {
        g = graph::fromGraph6(g6);
      } catch (const std::exception& e) {
        fail(pendingLine, std::string("solution record: ") + e.what());
      }
      if (g.order() == map.order()) {
        auto expected = graph::edgeBlockingClause(g, map);
        auto got = clause;
        std::sort(expected.begin(), expected.end());
        std::sort(got.begin(), got.end());
        if (expected != got) fail(lineNo, "clause does not block its solution");
      }
      const std::string error = problem.bruteForceVerify(g, args.bruteForceLimit);
      if (!error.empty()) fail(lineNo, "solution " + g6 + ": " + error);
    }
    ++counts[tag];
  }
  if (!pendingNote.empty()) fail(pendingLine, "witness without a clause");
  std::cout << "verify: pass";
  for (const auto& [tag, count] : counts) std::cout << ' ' << tag << '=' << count;
  std::cout << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SAT modulo symmetries with co-certificate learning"};
  app.require_subcommand(1);
  uint64_t seed = 1;
  app.add_option("--seed", seed, "Seed for all randomized choices")->capture_default_str();

  EnumerateArgs enumerate;
  auto* enumerateCmd = app.add_subcommand("enumerate", "Enumerate canonical solutions");
  addProblemOptions(enumerateCmd, enumerate.problem);
  enumerateCmd->add_option("--mode", enumerate.mode, "first or all")->check(CLI::IsMember({"first", "all"}));
  enumerateCmd->add_option("-o,--output", enumerate.output, "graph6 output file");
  enumerateCmd->add_option("--log", enumerate.log, "Clause log (DRAT additions with witness comments)");

  EncodeArgs encode;
  auto* encodeCmd = app.add_subcommand("encode", "Write the DIMACS encoding and variable mapping");
  addProblemOptions(encodeCmd, encode.problem, false);
  encodeCmd->add_option("-o,--output", encode.output, "DIMACS output file");
  encodeCmd->add_option("--mapping-output", encode.mappingOutput, "Mapping output file");

  CubeGenArgs cubeGen;
  auto* cubeGenCmd = app.add_subcommand("cube-gen", "Split the search into cubes");
  addProblemOptions(cubeGenCmd, cubeGen.problem);
  cubeGenCmd->add_option("--threshold", cubeGen.threshold, "Assigned edge variables per cube")->capture_default_str();
  cubeGenCmd->add_option("--prerun", cubeGen.prerun, "Seconds of search before cubing")->check(CLI::NonNegativeNumber);
  cubeGenCmd->add_option("--cubes", cubeGen.cubes, "Cube output file")->required();
  cubeGenCmd->add_option("--log", cubeGen.log, "Clause log");

  CubeSolveArgs cubeSolve;
  auto* cubeSolveCmd = app.add_subcommand("cube-solve", "Solve cubes with a worker pool");
  addProblemOptions(cubeSolveCmd, cubeSolve.problem);
  cubeSolveCmd->add_option("--cubes", cubeSolve.cubes, "Cube file")->required();
  cubeSolveCmd->add_option("--range", cubeSolve.range, "Cube ids FIRST:END (end exclusive)");
  cubeSolveCmd->add_option("--jobs", cubeSolve.jobs, "Worker threads")->check(CLI::Range(1, 1024));
  cubeSolveCmd->add_option("-o,--output", cubeSolve.output, "graph6 output file");
  cubeSolveCmd->add_option("--report", cubeSolve.report, "Per-cube report file (default stderr)");

  MergeArgs merge;
  auto* mergeCmd = app.add_subcommand("merge", "Merge graph6 solution files without duplicates");
  mergeCmd->add_option("inputs", merge.inputs, "Solution files")->required()->check(CLI::ExistingFile);
  mergeCmd->add_option("-o,--output", merge.output, "Merged output file");

  EmbedArgs embedArgs;
  auto* embedCmd = app.add_subcommand("embed", "Decide embeddability of graph6 graphs");
  embedCmd->add_option("-i,--input", embedArgs.input, "graph6 input (default stdin)");
  embedCmd->add_option("-o,--output", embedArgs.output, "Verdict output");
  embedCmd->add_option("--library", embedArgs.libraries, "Additional unembeddable graphs (graph6)")
      ->check(CLI::ExistingFile);
  embedCmd->add_flag("!--no-builtin-library", embedArgs.builtinLibrary, "Start from an empty library");
  embedCmd->add_option("--solver", embedArgs.solver, "QF_NRA solver command with {file}, e.g. \"z3 {file}\"");
  embedCmd->add_option("--timeout", embedArgs.timeout, "Solver timeout in seconds")->check(CLI::PositiveNumber);
  embedCmd->add_option("--retries", embedArgs.retries, "Extra attempts with another cover")->check(CLI::NonNegativeNumber);
  embedCmd->add_option("--workdir", embedArgs.workDir, "Directory for constraint files")->check(CLI::ExistingDirectory);

  VerifyArgs verify;
  auto* verifyCmd = app.add_subcommand("verify", "Check the witnesses recorded in a clause log");
  addProblemOptions(verifyCmd, verify.problem);
  verifyCmd->add_option("--log", verify.log, "Clause log")->required()->check(CLI::ExistingFile);
  verifyCmd->add_option("--brute-force-limit", verify.bruteForceLimit, "Largest order for brute-force solution checks")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*enumerateCmd) return runEnumerate(enumerate);
    if (*encodeCmd) return runEncode(encode);
    if (*cubeGenCmd) return runCubeGen(cubeGen);
    if (*cubeSolveCmd) return runCubeSolve(cubeSolve);
    if (*mergeCmd) return runMerge(merge);
    if (*embedCmd) return runEmbed(embedArgs, seed);
    if (*verifyCmd) return runVerify(verify);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const VerificationFailure& e) {
    std::cerr << "verify: FAIL " << e.what() << '\n';
    return kExitVerification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
