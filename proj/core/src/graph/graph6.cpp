#include "smsccl/graph/graph6.hpp"

namespace smsccl::graph {

std::string toGraph6(const PartialGraph& g) {
  const int n = g.order();
  if (n > 62) throw Graph6Error("only short-form graph6 (n <= 62) is supported");
  if (!g.isFullyDefined()) throw Graph6Error("graph6 needs a fully defined graph");
  std::string out(1, static_cast<char>(n + 63));
  int bits = 0;
  int acc = 0;
  for (int j = 2; j <= n; ++j) {
    for (int i = 1; i < j; ++i) {
      acc = (acc << 1) | (g.present(i, j) ? 1 : 0);
      if (++bits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        bits = 0;
      }
    }
  }
  if (bits > 0) out.push_back(static_cast<char>((acc << (6 - bits)) + 63));
  return out;
}

PartialGraph fromGraph6(std::string_view text) {
  if (text.empty()) throw Graph6Error("empty graph6 string");
  if (text.front() == '>') throw Graph6Error("graph6 header ('>>graph6<<') is not supported");
  for (char ch : text) {
    if (ch < 63 || ch > 126) throw Graph6Error(std::string("invalid graph6 character '") + ch + "'");
  }
  const int n = text[0] - 63;
  if (n > 62) throw Graph6Error("only short-form graph6 (n <= 62) is supported");
  const std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
  const std::size_t bytes = (pairs + 5) / 6;
  if (text.size() - 1 < bytes) throw Graph6Error("truncated graph6 bit vector");
  if (text.size() - 1 > bytes) throw Graph6Error("trailing data after graph6 bit vector");
  PartialGraph g = PartialGraph::empty(n);
  std::size_t k = 0;
  for (int j = 2; j <= n; ++j) {
    for (int i = 1; i < j; ++i, ++k) {
      const int byte = text[1 + k / 6] - 63;
      if ((byte >> (5 - k % 6)) & 1) g.addEdge(i, j);
    }
  }
  return g;
}

std::vector<PartialGraph> readGraph6Lines(std::string_view text) {
  std::vector<PartialGraph> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(fromGraph6(line));
    pos = end + 1;
  }
  return out;
}

}  // namespace smsccl::graph
