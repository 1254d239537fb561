#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>

#include "smsccl/embed/embed.hpp"
#include "smsccl/graph/graph6.hpp"

namespace smsccl::embed {

std::string toString(EmbedVerdict v) {
  switch (v) {
    case EmbedVerdict::UnembeddableBySubgraph:
      return "unembeddable-by-subgraph";
    case EmbedVerdict::UnembeddableBySolver:
      return "unembeddable-by-solver";
    case EmbedVerdict::Embeddable:
      return "embeddable";
    case EmbedVerdict::Unknown:
      return "unknown";
  }
  return "unknown";
}

CommandResult runCommand(const std::string& command, double timeoutSeconds) {
  int fds[2];
  if (pipe(fds) != 0) throw std::runtime_error(std::string("pipe failed: ") + std::strerror(errno));
  const pid_t pid = fork();
  if (pid < 0) {
    close(fds[0]);
    close(fds[1]);
    throw std::runtime_error(std::string("fork failed: ") + std::strerror(errno));
  }
  if (pid == 0) {
    setpgid(0, 0);
    dup2(fds[1], STDOUT_FILENO);
    dup2(fds[1], STDERR_FILENO);
    close(fds[0]);
    close(fds[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(fds[1]);
  CommandResult result;
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(timeoutSeconds);
  char buffer[4096];
  for (;;) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      result.timedOut = true;
      break;
    }
    pollfd pfd{fds[0], POLLIN, 0};
    const int ready = poll(&pfd, 1, static_cast<int>(std::min<long long>(left.count(), 1000)));
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (ready == 0) continue;
    const ssize_t got = read(fds[0], buffer, sizeof buffer);
    if (got <= 0) break;
    result.output.append(buffer, static_cast<std::size_t>(got));
  }
  close(fds[0]);
  if (result.timedOut) kill(-pid, SIGKILL);
  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  result.exitStatus = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
  return result;
}

namespace {

uint64_t fnv1a(const std::string& text) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string substitute(std::string command, const std::string& file) {
  const std::string key = "{file}";
  std::size_t at = command.find(key);
  if (at == std::string::npos) return command + " " + file;
  while (at != std::string::npos) {
    command.replace(at, key.size(), file);
    at = command.find(key, at + file.size());
  }
  return command;
}

std::string firstToken(const std::string& text) {
  std::size_t b = text.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  std::size_t e = text.find_first_of(" \t\r\n()", b);
  return text.substr(b, e == std::string::npos ? std::string::npos : e - b);
}

}  // namespace

PipelineResult runPipeline(const graph::PartialGraph& g, const UnembeddableLibrary& lib,
                           const PipelineOptions& options, const std::string& label) {
  PipelineResult result;
  if (auto hit = subgraphFilter(g, lib)) {
    result.verdict = EmbedVerdict::UnembeddableBySubgraph;
    result.detail = "contains " + lib.names[hit->index] + " (";
    for (std::size_t u = 1; u < hit->mapping.size(); ++u) {
      if (u > 1) result.detail += ' ';
      result.detail += std::to_string(u) + "->" + std::to_string(hit->mapping[u]);
    }
    result.detail += ")";
    return result;
  }

  const auto edges = g.edges();
  const uint64_t graphHash = fnv1a(graph::toGraph6(g));
  for (int attempt = 0; attempt <= options.retryBudget; ++attempt) {
    CoverOptions coverOptions;
    if (attempt > 0 && !edges.empty()) {
      std::mt19937_64 rng(options.seed ^ graphHash ^ (0x9e3779b97f4a7c15ull * static_cast<uint64_t>(attempt)));
      coverOptions.seedEdge = edges[std::uniform_int_distribution<std::size_t>(0, edges.size() - 1)(rng)];
      coverOptions.tieSeed = rng();
    }
    CoverChoice choice;
    try {
      choice = findCover(g, coverOptions);
    } catch (const std::invalid_argument& e) {
      result.detail = e.what();
      return result;
    }
    const Constraints constraints = emitConstraints(g, choice);
    const std::filesystem::path path =
        std::filesystem::path(options.workDir) / (label + "-" + std::to_string(attempt) + ".smt2");
    {
      std::ofstream out(path);
      out << constraints.smtlib;
      if (!out) throw std::runtime_error("cannot write constraint file " + path.string());
    }
    result.constraintFile = path.string();
    result.attempts = attempt + 1;
    if (!options.solverCommand) {
      result.detail = "no solver configured; constraints written to " + path.string();
      return result;
    }
    const CommandResult run = runCommand(substitute(*options.solverCommand, path.string()), options.timeoutSeconds);
    if (run.timedOut) {
      result.detail = "solver timed out after " + std::to_string(attempt + 1) + " attempt(s)";
      continue;
    }
    const std::string answer = firstToken(run.output);
    if (answer == "unsat") {
      result.verdict = EmbedVerdict::UnembeddableBySolver;
      result.detail = "solver reported unsat";
      return result;
    }
    if (answer == "sat") {
      try {
        auto model = modelFromSolverOutput(run.output, g, choice);
        if (!model) throw std::runtime_error("unreadable model");
        const Verdict v = verifyEmbedding(g, *model, 1e-6);
        if (!v.valid) {
          result.detail = "solver model failed verification: " + v.violation;
          return result;
        }
        result.verdict = EmbedVerdict::Embeddable;
        result.model = std::move(model);
        result.detail = "solver model verified";
      } catch (const std::exception& e) {
        result.detail = std::string("could not read solver model: ") + e.what();
      }
      return result;
    }
    if (answer == "unknown") {
      result.detail = "solver answered unknown";
      continue;
    }
    result.detail = "solver failed (exit " + std::to_string(run.exitStatus) + "): " + run.output.substr(0, 200);
    return result;
  }
  return result;
}

}  // namespace smsccl::embed
