#pragma once

#include <optional>
#include <string>

#include "hurstlab/exponent.hpp"

namespace hurstlab {

// Graph file format:
// {"vertices":["v0","v1"],
//  "q":[{"v":"v0","slot":2,"w":2}],
//  "theta":[{"u":"v0","uslot":2,"v":"v1","vslot":2,"w":2}]}
WeightedGraph graph_from_json(const std::string& text);
std::string graph_to_json(const WeightedGraph& g);

// Report as JSON; value_at_h is included when h is supplied.
std::string exponent_report_to_json(const ExponentReport& report, std::optional<double> h);

// Fixed-width table for human consumption.
std::string exponent_report_table(const ExponentReport& report, std::optional<double> h);

}  // namespace hurstlab
