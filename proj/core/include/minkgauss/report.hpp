#pragma once

#include <map>
#include <string>

#include "minkgauss/analyzer.hpp"
#include "minkgauss/surface.hpp"

namespace minkgauss {

inline constexpr const char* kToolName = "minkgauss";
inline constexpr const char* kToolVersion = "0.4.0";

// Wall-clock phases in milliseconds, keyed by phase name.
using Timings = std::map<std::string, double>;

// JSON report with a stable field order. Timings vary run to run, so they
// are written only when given.
std::string report_json(const SurfaceDef& surface, const Analysis& analysis,
                        const Timings* timings = nullptr);

// Header s,t,det_g,K,KD,H_norm,lap_nu_norm; one row per grid node, with nan
// fields for excluded nodes.
std::string fields_csv(const GridSamples& samples);

}  // namespace minkgauss
