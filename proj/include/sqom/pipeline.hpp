#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqom/gaussian.hpp"
#include "sqom/model.hpp"
#include "sqom/moments.hpp"
#include "sqom/steadystate.hpp"

namespace sqom {

enum class PointStatus {
    ok,
    invalid,
    unstable,
    nonconvergence,
    pole_proximity,
    degenerate_denominator,
    singular,
    non_hermitian,
    non_physical,
};

std::string_view to_string(PointStatus s);

// Full chain for one parameter point and drive direction:
// derive -> mean field (physical mode) -> drift -> stability gate -> moments -> CM -> measures.
struct PointResult {
    Direction direction = Direction::ccw;
    PointStatus status = PointStatus::ok;
    std::string message;
    bool stable = false;
    std::optional<double> spectral_abscissa;
    std::optional<OperatingPoint> op;
    std::optional<MomentVector> moments;
    std::optional<CovarianceMatrix> cm;
    std::optional<MeasureReport> measures;
    std::vector<DriftDiscrepancy> discrepancies;
};

// Never throws for physics failures; they are recorded in status/message.
// with_state=false stops after the closed-form quantities.
PointResult evaluate_point(const ModelParams& p, Direction d, const Tolerances& tol = {},
                           bool with_state = true, bool with_measures = true);

} // namespace sqom
