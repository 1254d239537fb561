#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "smsccl/graph/partial_graph.hpp"

namespace smsccl::graph {

class Graph6Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Short-form graph6 (n <= 62): one byte n+63, then the upper triangle in
/// column order (x(0,1), x(0,2), x(1,2), x(0,3), ...), six bits per byte,
/// each byte offset by 63.
std::string toGraph6(const PartialGraph& g);
PartialGraph fromGraph6(std::string_view text);

/// Reads one graph per non-empty line; a trailing '\r' is ignored.
std::vector<PartialGraph> readGraph6Lines(std::string_view text);

}  // namespace smsccl::graph
