#include "sqom/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "sqom/errors.hpp"
#include "sqom/units.hpp"

namespace sqom {

std::string_view to_string(DirectionSet d) {
    switch (d) {
    case DirectionSet::cw: return "cw";
    case DirectionSet::ccw: return "ccw";
    case DirectionSet::both: return "both";
    }
    return "?";
}

std::vector<Direction> expand(DirectionSet d) {
    switch (d) {
    case DirectionSet::cw: return {Direction::cw};
    case DirectionSet::ccw: return {Direction::ccw};
    case DirectionSet::both: return {Direction::ccw, Direction::cw};
    }
    return {};
}

SweepAxis SweepAxis::linspace(std::string name, double lo, double hi, int points) {
    if (points < 2) throw InvalidParameter("axis " + name + " needs at least 2 points");
    SweepAxis ax{std::move(name), {}};
    ax.values.resize(points);
    for (int k = 0; k < points; ++k)
        ax.values[k] = k == points - 1 ? hi : lo + (hi - lo) * k / (points - 1);
    return ax;
}

SweepAxis SweepAxis::list(std::string name, std::vector<double> values) {
    return {std::move(name), std::move(values)};
}

const std::vector<std::string_view>& axis_names() {
    static const std::vector<std::string_view> names{
        "delta_c",       "r_d",           "theta_d",        "kappa",
        "lambda_hop",    "gamma_m",       "q_m",            "nbar_m",
        "temperature_mk", "omega_m2",     "delta_r_cw",     "delta_theta_cw",
        "delta_r_ccw",   "delta_theta_ccw", "g1",           "g2",
        "drive_scale",   "epsilon_d",
    };
    return names;
}

void apply_axis(ModelParams& p, std::string_view name, double value, double omega_m1_mhz) {
    auto both = [&](std::array<double, 2>& a, double v) { a = {v, v}; };
    if (name == "delta_c") p.delta_c = value;
    else if (name == "r_d") p.r_d = value;
    else if (name == "theta_d") p.theta_d = value;
    else if (name == "kappa") p.kappa = value;
    else if (name == "lambda_hop") p.lambda_hop = value;
    else if (name == "gamma_m") both(p.gamma_m, value);
    else if (name == "q_m") p.gamma_m = {p.omega_m[0] / value, p.omega_m[1] / value};
    else if (name == "nbar_m") both(p.nbar_m, value);
    else if (name == "temperature_mk") {
        for (int j = 0; j < 2; ++j)
            p.nbar_m[j] = units::thermal_occupancy(
                units::mhz_to_angular(p.omega_m[j] * omega_m1_mhz), value * 1e-3);
    } else if (name == "omega_m2") p.omega_m[1] = value;
    else if (name == "delta_r_cw") p.mismatch(Direction::cw).delta_r = value;
    else if (name == "delta_theta_cw") p.mismatch(Direction::cw).delta_theta = value;
    else if (name == "delta_r_ccw") p.mismatch(Direction::ccw).delta_r = value;
    else if (name == "delta_theta_ccw") p.mismatch(Direction::ccw).delta_theta = value;
    else if (name == "g1" || name == "g2") {
        const int j = name == "g1" ? 0 : 1;
        if (auto* eff = std::get_if<EffectiveDrive>(&p.drive)) eff->g_eff[j] = value;
        else std::get<PhysicalDrive>(p.drive).g_bare[j] = value;
    } else if (name == "drive_scale") {
        if (auto* eff = std::get_if<EffectiveDrive>(&p.drive)) {
            eff->g_eff[0] *= value;
            eff->g_eff[1] *= value;
        } else {
            std::get<PhysicalDrive>(p.drive).epsilon_d *= value;
        }
    } else if (name == "epsilon_d") {
        auto* phys = std::get_if<PhysicalDrive>(&p.drive);
        if (!phys) throw InvalidParameter("axis epsilon_d requires the physical drive mode");
        phys->epsilon_d = value;
    } else {
        throw InvalidParameter("unknown sweep axis: " + std::string(name));
    }
}

void validate_spec(const SweepSpec& spec) {
    if (spec.axes.size() > 2) throw InvalidParameter("a sweep takes at most 2 axes");
    const auto& names = axis_names();
    for (const SweepAxis& ax : spec.axes) {
        if (std::find(names.begin(), names.end(), ax.name) == names.end())
            throw InvalidParameter("unknown sweep axis: " + ax.name);
        if (ax.values.empty()) throw InvalidParameter("axis " + ax.name + " has no points");
        for (double v : ax.values)
            if (!std::isfinite(v)) throw InvalidParameter("axis " + ax.name + " has a non-finite value");
    }
    if (spec.axes.size() == 2 && spec.axes[0].name == spec.axes[1].name)
        throw InvalidParameter("duplicate sweep axis: " + spec.axes[0].name);
}

std::size_t grid_size(const SweepSpec& spec) {
    std::size_t n = 1;
    for (const SweepAxis& ax : spec.axes) n *= ax.values.size();
    return n;
}

namespace {

// Axis values of grid point `index`, first axis outermost.
std::vector<double> grid_point(const SweepSpec& spec, std::size_t index) {
    std::vector<double> vals(spec.axes.size());
    for (std::size_t k = spec.axes.size(); k-- > 0;) {
        const auto& v = spec.axes[k].values;
        vals[k] = v[index % v.size()];
        index /= v.size();
    }
    return vals;
}

SweepRow make_row(const SweepSpec& spec, const std::vector<double>& vals, Direction d) {
    ModelParams p = spec.base;
    SweepRow row;
    row.axis_values = vals;
    row.direction = d;
    try {
        for (std::size_t k = 0; k < vals.size(); ++k)
            apply_axis(p, spec.axes[k].name, vals[k], spec.omega_m1_mhz);
    } catch (const Error& e) {
        row.status = PointStatus::invalid;
        row.message = e.what();
        return row;
    }
    const MeasureSet& m = spec.measures;
    PointResult r = evaluate_point(p, d, spec.tol, m.needs_state(), m.needs_measures());
    row.status = r.status;
    row.message = std::move(r.message);
    row.stable = r.stable;
    row.spectral_abscissa = r.spectral_abscissa;
    if (r.op) row.derived = r.op->derived;
    if (r.status == PointStatus::ok) row.measures = std::move(r.measures);
    // A CM that fails the uncertainty bound is still reported.
    if (m.cm && (r.status == PointStatus::ok || r.status == PointStatus::non_physical))
        row.cm = std::move(r.cm);
    return row;
}

} // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int workers) {
    validate_spec(spec);
    const std::vector<Direction> dirs = expand(spec.directions);
    const std::size_t points = grid_size(spec);
    const std::size_t tasks = points * dirs.size();
    std::vector<SweepRow> rows(tasks);

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t t; (t = next.fetch_add(1)) < tasks;)
            rows[t] = make_row(spec, grid_point(spec, t / dirs.size()), dirs[t % dirs.size()]);
    };
    const int n = std::max(1, std::min<int>(workers, static_cast<int>(tasks)));
    if (n == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n);
        for (int k = 0; k < n; ++k) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    if (dirs.size() == 2 && spec.measures.entanglement) {
        for (std::size_t pt = 0; pt < points; ++pt) {
            SweepRow& ccw = rows[2 * pt];
            SweepRow& cw = rows[2 * pt + 1];
            if (!ccw.measures || !cw.measures) continue;
            for (int j = 0; j < 2; ++j) {
                const auto ij = asymmetry_ratio(ccw.measures->e_n[j], cw.measures->e_n[j]);
                ccw.asymmetry[j] = cw.asymmetry[j] = ij;
            }
        }
    }
    return rows;
}

std::optional<double> asymmetry_ratio(double e_ccw, double e_cw) {
    if (!(e_ccw > 0.0)) return std::nullopt;
    return (e_ccw - e_cw) / e_ccw;
}

TransitionReport classify_transition(const std::vector<double>& r_values,
                                     const std::vector<Regime>& regimes) {
    if (r_values.size() != regimes.size())
        throw InvalidParameter("classify_transition: size mismatch");
    TransitionReport rep;
    for (std::size_t k = 0; k < regimes.size(); ++k) {
        if (rep.sequence.empty() || rep.sequence.back() != regimes[k]) {
            if (!rep.sequence.empty()) rep.thresholds.push_back(0.5 * (r_values[k - 1] + r_values[k]));
            rep.sequence.push_back(regimes[k]);
        }
    }
    return rep;
}

AxisRegimes regimes_along_axis(const SweepSpec& spec, const std::vector<SweepRow>& rows,
                               std::string_view axis, int bipartition, Direction d,
                               double zero_threshold) {
    int ax = -1;
    for (std::size_t k = 0; k < spec.axes.size(); ++k)
        if (spec.axes[k].name == axis) ax = static_cast<int>(k);
    if (ax < 0) throw InvalidParameter("sweep has no axis " + std::string(axis));
    std::map<double, Regime> best;
    for (const SweepRow& row : rows) {
        if (row.direction != d || !row.measures) continue;
        const SteeringPair& sp = row.measures->steering.at(bipartition);
        const Regime r = classify_steering(sp.forward, sp.backward, zero_threshold);
        auto [it, inserted] = best.emplace(row.axis_values[ax], r);
        if (!inserted && static_cast<int>(r) > static_cast<int>(it->second)) it->second = r;
    }
    AxisRegimes out;
    for (const auto& [v, r] : best) {
        out.values.push_back(v);
        out.regimes.push_back(r);
    }
    return out;
}

} // namespace sqom
