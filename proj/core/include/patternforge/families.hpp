#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "patternforge/pattern.hpp"

namespace patternforge {

/// First column plus superdiagonal: the companion-matrix pattern.
ZeroPattern companion_pattern(int n);
/// Loops at 1..n-1 on the Hamilton cycle 1 -> 2 -> ... -> n -> 1.
ZeroPattern an_pattern(int n);
/// Tridiagonal path with a single loop at alpha.
ZeroPattern path_pattern(int n, int alpha);
/// Tridiagonal path with loops at both ends.
ZeroPattern t_pattern(int n);
/// t_pattern(n - 1) bordered by the 2-cycle between n - 1 and n.
ZeroPattern w_pattern(int n);

struct NamedPattern {
  std::string name;
  ZeroPattern pattern;
};

/// Patterns of a transcribed digraph group: "C4", "Y", "D", "notIAP", "J",
/// "SAP3", "RIAP3", "H". Throws std::invalid_argument for an unknown group.
std::vector<NamedPattern> figure_group(std::string_view group);

/// Named constructor. Families C, A, T, W take the order n; P takes n and
/// param = alpha; Y431 takes no parameters; the digraph groups (figureC4,
/// figureY, figureD, notIAP, J, SAP3, RIAP3, H) take param = 1-based index.
/// Throws std::invalid_argument for an unknown family or invalid order.
ZeroPattern builtin_pattern(std::string_view family, int n = 0, int param = 0);

/// Short names such as "C5", "A4", "P4,2", "T3", "W5", "Y431", "J3",
/// "C4-2", "Y-2", "D", "notIAP-1", "SAP3-4", "RIAP3-3", "H1".
ZeroPattern pattern_from_name(std::string_view name);

}  // namespace patternforge
