#pragma once

#include "dipent/entanglement.hpp"
#include "dipent/geometry.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace dipent::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCompute = 1;
inline constexpr int kExitUsage = 2;

/// Resolves "pair", "chain:N", "circle:N" or "file:PATH".
SpinCluster resolve_system(const std::string& spec);

/// Parses "m,n".
SpinPair parse_pair(const std::string& text);

/// Parses "all" (empty result) or "m,n;m,n;...".
std::vector<SpinPair> parse_pairs(const std::string& text);

/// Runs the tool on `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dipent::cli
