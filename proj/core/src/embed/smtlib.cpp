#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string_view>
#include <sstream>
#include <stdexcept>

#include "smsccl/embed/embed.hpp"

namespace smsccl::embed {

using graph::PartialGraph;

namespace {

std::string comp(char axis, int v) { return std::string("p") + axis + std::to_string(v); }

std::string crossComponent(char axis, int a, int b) {
  // (a x b)_x = a_y b_z - a_z b_y, and cyclically.
  char s = 'y', t = 'z';
  if (axis == 'y') {
    s = 'z';
    t = 'x';
  } else if (axis == 'z') {
    s = 'x';
    t = 'y';
  }
  return "(- (* " + comp(s, a) + " " + comp(t, b) + ") (* " + comp(t, a) + " " + comp(s, b) + "))";
}

}  // namespace

Constraints emitConstraints(const PartialGraph& g, const CoverChoice& choice) {
  const auto& cover = choice.cover;
  if (std::string reason = verifyCover(g, cover); !reason.empty()) {
    throw std::invalid_argument("invalid cross-product cover: " + reason);
  }
  const auto [v1, v2] = choice.freeEdge;
  auto isFree = [&](int v) { return std::find(cover.free.begin(), cover.free.end(), v) != cover.free.end(); };
  if (!isFree(v1) || !isFree(v2)) throw std::invalid_argument("fixed edge endpoints must both be free");
  if (!g.present(v1, v2)) throw std::invalid_argument("fixed pair is not an edge");

  const int n = g.order();
  std::ostringstream out;
  Constraints result;
  out << "(set-logic QF_NRA)\n";
  for (int v : cover.free) {
    if (v == v1 || v == v2) continue;
    for (char axis : {'x', 'y', 'z'}) out << "(declare-const " << axis << v << " Real)\n";
    result.unknowns += 3;
  }
  auto defineVector = [&](int v, const std::string& x, const std::string& y, const std::string& z) {
    out << "(define-fun " << comp('x', v) << " () Real " << x << ")\n";
    out << "(define-fun " << comp('y', v) << " () Real " << y << ")\n";
    out << "(define-fun " << comp('z', v) << " () Real " << z << ")\n";
  };
  defineVector(v1, "1.0", "0.0", "0.0");
  defineVector(v2, "0.0", "1.0", "0.0");
  for (int v : cover.free) {
    if (v == v1 || v == v2) continue;
    const std::string id = std::to_string(v);
    defineVector(v, "x" + id, "y" + id, "z" + id);
  }
  for (int v : cover.order) {
    const auto [a, b] = cover.w[v];
    defineVector(v, crossComponent('x', a, b), crossComponent('y', a, b), crossComponent('z', a, b));
  }
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      out << "(assert (or";
      for (char axis : {'x', 'y', 'z'}) out << " (not (= " << crossComponent(axis, u, v) << " 0.0))";
      out << "))\n";
    }
  }
  for (auto [u, v] : g.edges()) {
    out << "(assert (= (+ (* " << comp('x', u) << ' ' << comp('x', v) << ") (* " << comp('y', u) << ' '
        << comp('y', v) << ") (* " << comp('z', u) << ' ' << comp('z', v) << ")) 0.0))\n";
  }
  out << "(check-sat)\n(get-model)\n";
  result.smtlib = out.str();
  const int expected = 3 * (static_cast<int>(cover.free.size()) - 2);
  if (result.unknowns != expected) throw std::logic_error("unknown count differs from 3(|S|-2)");
  return result;
}

namespace {

struct SExpr {
  std::string atom;
  std::vector<SExpr> list;
  bool isList = false;
};

class SExprParser {
 public:
  explicit SExprParser(std::string_view text) : text_(text) {}

  std::optional<SExpr> next() {
    skip();
    if (pos_ >= text_.size()) return std::nullopt;
    return parse();
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  SExpr parse() {
    skip();
    if (pos_ >= text_.size()) throw std::runtime_error("unexpected end of solver output");
    SExpr e;
    if (text_[pos_] == '(') {
      ++pos_;
      e.isList = true;
      for (;;) {
        skip();
        if (pos_ >= text_.size()) throw std::runtime_error("unbalanced parentheses in solver output");
        if (text_[pos_] == ')') {
          ++pos_;
          return e;
        }
        e.list.push_back(parse());
      }
    }
    if (text_[pos_] == ')') throw std::runtime_error("unexpected ')' in solver output");
    if (text_[pos_] == '"') {
      const std::size_t end = text_.find('"', pos_ + 1);
      if (end == std::string_view::npos) throw std::runtime_error("unterminated string in solver output");
      e.atom = std::string(text_.substr(pos_, end + 1 - pos_));
      pos_ = end + 1;
      return e;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')') {
      ++pos_;
    }
    e.atom = std::string(text_.substr(start, pos_ - start));
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

using Poly = std::vector<double>;  // coefficients, lowest degree first

Poly polyAdd(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Poly polyMul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Poly toPoly(const SExpr& e) {
  if (!e.isList) {
    if (e.atom == "x") return {0.0, 1.0};
    return {std::stod(e.atom)};
  }
  if (e.list.empty()) throw std::runtime_error("empty expression in root-obj");
  const std::string& op = e.list[0].atom;
  if (op == "^") {
    const Poly base = toPoly(e.list.at(1));
    const int k = std::stoi(e.list.at(2).atom);
    Poly r{1.0};
    for (int i = 0; i < k; ++i) r = polyMul(r, base);
    return r;
  }
  if (op == "+" || op == "*") {
    Poly r = toPoly(e.list.at(1));
    for (std::size_t i = 2; i < e.list.size(); ++i) r = op == "+" ? polyAdd(r, toPoly(e.list[i])) : polyMul(r, toPoly(e.list[i]));
    return r;
  }
  if (op == "-") {
    Poly r = toPoly(e.list.at(1));
    if (e.list.size() == 2) {
      for (double& c : r) c = -c;
      return r;
    }
    for (std::size_t i = 2; i < e.list.size(); ++i) {
      Poly s = toPoly(e.list[i]);
      for (double& c : s) c = -c;
      r = polyAdd(r, s);
    }
    return r;
  }
  if (op == "/") {
    const Poly d = toPoly(e.list.at(2));
    if (d.size() != 1 || d[0] == 0.0) throw std::runtime_error("non-constant divisor in root-obj");
    Poly r = toPoly(e.list.at(1));
    for (double& c : r) c /= d[0];
    return r;
  }
  throw std::runtime_error("unsupported operator '" + op + "' in root-obj");
}

double polyEval(const Poly& p, double x) {
  double r = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

// k-th real root (1-based, ascending) of a square-free polynomial.
double realRoot(Poly p, int k) {
  while (p.size() > 1 && p.back() == 0.0) p.pop_back();
  if (p.size() < 2) throw std::runtime_error("constant polynomial in root-obj");
  double bound = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) bound = std::max(bound, std::abs(p[i] / p.back()));
  bound += 1.0;
  const int samples = 200000;
  int found = 0;
  double prevX = -bound;
  double prevY = polyEval(p, prevX);
  for (int i = 1; i <= samples; ++i) {
    const double x = -bound + 2.0 * bound * i / samples;
    const double y = polyEval(p, x);
    if (prevY == 0.0 || (prevY < 0) != (y < 0)) {
      if (++found == k) {
        double lo = prevX, hi = x;
        if (prevY == 0.0) return prevX;
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double ym = polyEval(p, mid);
          if ((ym < 0) == (prevY < 0)) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        return 0.5 * (lo + hi);
      }
    }
    prevX = x;
    prevY = y;
  }
  throw std::runtime_error("root-obj index exceeds the number of real roots");
}

double evalValue(const SExpr& e) {
  if (!e.isList) return std::stod(e.atom);
  if (e.list.empty()) throw std::runtime_error("empty value expression");
  const std::string& op = e.list[0].atom;
  if (op == "root-obj") return realRoot(toPoly(e.list.at(1)), std::stoi(e.list.at(2).atom));
  if (op == "-") {
    double r = evalValue(e.list.at(1));
    if (e.list.size() == 2) return -r;
    for (std::size_t i = 2; i < e.list.size(); ++i) r -= evalValue(e.list[i]);
    return r;
  }
  if (op == "+") {
    double r = 0.0;
    for (std::size_t i = 1; i < e.list.size(); ++i) r += evalValue(e.list[i]);
    return r;
  }
  if (op == "*") {
    double r = 1.0;
    for (std::size_t i = 1; i < e.list.size(); ++i) r *= evalValue(e.list[i]);
    return r;
  }
  if (op == "/") return evalValue(e.list.at(1)) / evalValue(e.list.at(2));
  throw std::runtime_error("unsupported value expression '" + op + "'");
}

}  // namespace

std::optional<std::vector<Vector3D>> modelFromSolverOutput(const std::string& output, const PartialGraph& g,
                                                           const CoverChoice& choice) {
  SExprParser parser(output);
  auto status = parser.next();
  if (!status || status->isList || status->atom != "sat") return std::nullopt;
  auto model = parser.next();
  if (!model || !model->isList) throw std::runtime_error("solver output has no model");
  // Solvers may also print the vector macros; only the declared unknowns
  // are read.
  std::map<std::string, const SExpr*> definitions;
  for (const SExpr& item : model->list) {
    if (item.isList && item.list.size() == 5 && !item.list[0].isList && item.list[0].atom == "define-fun") {
      definitions[item.list[1].atom] = &item.list[4];
    }
  }
  const int n = g.order();
  std::vector<Vector3D> p(n + 1);
  const auto [v1, v2] = choice.freeEdge;
  for (int v : choice.cover.free) {
    if (v == v1) {
      p[v] = {1.0, 0.0, 0.0};
    } else if (v == v2) {
      p[v] = {0.0, 1.0, 0.0};
    } else {
      const std::string id = std::to_string(v);
      auto get = [&](const std::string& name) {
        auto it = definitions.find(name);
        if (it == definitions.end()) throw std::runtime_error("model lacks a value for " + name);
        return evalValue(*it->second);
      };
      p[v] = {get("x" + id), get("y" + id), get("z" + id)};
    }
  }
  for (int v : choice.cover.order) {
    const auto [a, b] = choice.cover.w[v];
    p[v] = cross(p[a], p[b]);
  }
  return p;
}

}  // namespace smsccl::embed
