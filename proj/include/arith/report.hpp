#pragma once

#include "arith/classes.hpp"
#include "arith/lattice.hpp"
#include "arith/measure.hpp"

#include <span>
#include <string>
#include <vector>

namespace arith {

// 17 significant digits: round-trips exactly through decimal.
std::string fmt17(double v);

std::string sigma_profile_csv(std::span<const SigmaEntry> profile);
std::string sigma_profile_json(const TargetVector& alpha, std::span<const SigmaEntry> profile);

std::string verdict_json(const ClassVerdict& v);

std::string density_csv(const DensityCurve& curve);
std::string density_svg(const DensityCurve& curve);

std::string bounds_csv(std::span<const BoundReport> reports);

struct FlowPoint {
    double t = 0.0;
    DeltaResult delta;
};
std::string flow_csv(std::span<const FlowPoint> trajectory);

struct LemmaCheckRow {
    int k = 0;
    IntVec i;
    double a = 0.0;
    LemmaPair pair;
    DeltaResult delta;
    bool satisfied = false;
};
std::string lemma_csv(std::span<const LemmaCheckRow> rows);

// Ball B(alpha, r) with the candidate bands drawn as strips (n == 2 only).
std::string bands_svg(std::span<const double> alpha, double r, std::span<const Band> bands);

void write_file(const std::string& path, const std::string& content);

} // namespace arith
