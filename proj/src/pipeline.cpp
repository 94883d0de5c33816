#include "sqom/pipeline.hpp"

#include "sqom/errors.hpp"

namespace sqom {

std::string_view to_string(PointStatus s) {
    switch (s) {
    case PointStatus::ok: return "ok";
    case PointStatus::invalid: return "invalid";
    case PointStatus::unstable: return "unstable";
    case PointStatus::nonconvergence: return "nonconvergence";
    case PointStatus::pole_proximity: return "pole-proximity";
    case PointStatus::degenerate_denominator: return "degenerate-denominator";
    case PointStatus::singular: return "singular";
    case PointStatus::non_hermitian: return "non-hermitian";
    case PointStatus::non_physical: return "non-physical";
    }
    return "?";
}

PointResult evaluate_point(const ModelParams& p, Direction d, const Tolerances& tol, bool with_state,
                           bool with_measures) {
    PointResult r;
    r.direction = d;
    auto fail = [&](PointStatus s, const std::exception& e) {
        r.status = s;
        r.message = e.what();
        r.measures.reset();
    };
    try {
        check_invariants(p);
        r.op = operating_point(p, d, tol);
        DriftSystem sys = assemble_drift(drift_inputs(p, *r.op), tol);
        r.discrepancies = std::move(sys.discrepancies);
        r.spectral_abscissa = sys.spectral_abscissa;
        r.stable = sys.stable;
        if (!sys.stable) throw Unstable(sys.spectral_abscissa);
        if (!with_state) return r;
        r.moments = steady_moments(sys, tol);
        r.cm = assemble_cm(*r.moments, tol.hermiticity);
        if (with_measures) r.measures = evaluate_measures(*r.cm, tol);
    } catch (const InvalidParameter& e) {
        fail(PointStatus::invalid, e);
    } catch (const Unstable& e) {
        fail(PointStatus::unstable, e);
    } catch (const NonConvergence& e) {
        fail(PointStatus::nonconvergence, e);
    } catch (const PoleProximity& e) {
        fail(PointStatus::pole_proximity, e);
    } catch (const DegenerateDenominator& e) {
        fail(PointStatus::degenerate_denominator, e);
    } catch (const SingularSystem& e) {
        fail(PointStatus::singular, e);
    } catch (const NonHermitianMoments& e) {
        fail(PointStatus::non_hermitian, e);
    } catch (const NonPhysicalReduced& e) {
        fail(PointStatus::non_physical, e);
    }
    return r;
}

} // namespace sqom
