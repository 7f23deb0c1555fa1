// JSON reports and SVG diagrams. Exact values serialize as decimal strings
// ("p/q" for rationals); keys are emitted in fixed (alphabetical) order so
// identical inputs and seed produce byte-identical output.
#pragma once

#include "mori/numerical_surface.hpp"
#include "mori/sarkisov.hpp"

#include <string>

namespace mori {

inline constexpr const char* kToolVersion = "0.1.0";

struct ReportMeta {
    std::string digest;  // fnv1a64 hex of the raw input bytes
    std::string seed;
};

ReportMeta make_meta(const std::string& input_bytes, std::uint64_t seed);

std::string fan_report(const Fan& fan, const ReportMeta& meta);
std::string surface_report(const ToricSurface& x, const ReportMeta& meta);
std::string trace_report(const MMPTrace& trace, const ReportMeta& meta);
std::string decomposition_report(const Decomposition& d, const ReportMeta& meta);
std::string chain_report(const LinkChain& chain, const ReportMeta& meta);

std::string error_report(const std::string& code, const std::string& message);

// 800 x 800 canvas; chambers filled by model-id hash color, the boundary of
// E stroked, the traced walk highlighted when a chain is given.
std::string decomposition_svg(const Decomposition& d, const LinkChain* chain = nullptr);

}  // namespace mori
