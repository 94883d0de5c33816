#include "sqom/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "sqom/units.hpp"

namespace sqom {

ConfigError::ConfigError(std::string source_, int line_, std::string key_, const std::string& what)
    : Error([&] {
          std::string msg = source_;
          if (line_ > 0) msg += ":" + std::to_string(line_);
          if (!key_.empty()) msg += ": key '" + key_ + "'";
          return msg + ": " + what;
      }()),
      source(std::move(source_)),
      line(line_),
      key(std::move(key_)) {}

namespace {

struct Entry {
    std::string value;
    int line = 0;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s{
        {"model",
         {"omega_m", "omega_m2", "kappa", "gamma_m", "gamma_m2", "q_m", "q_m2", "nbar_m", "nbar_m2",
          "temperature", "lambda_hop", "delta_c", "r_d", "theta_d", "direction"}},
        {"drive",
         {"mode", "g1", "g2", "g1_phase", "g2_phase", "beta_s", "bare_g1", "bare_g2", "epsilon_d",
          "epsilon_phase"}},
        {"reservoir.cw", {"delta_r", "delta_theta", "r_e", "theta_e"}},
        {"reservoir.ccw", {"delta_r", "delta_theta", "r_e", "theta_e"}},
        {"tolerances",
         {"solver_tol", "max_iter", "mixing", "pole_guard", "stability", "zero", "monogamy",
          "hermiticity", "bona_fide", "residual", "rcond"}},
        {"sweep", {"directions", "measures", "axis1", "axis2"}},
        {"output", {"path", "workers", "timestamp"}},
    };
    return s;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string t; is >> t;) out.push_back(t);
    return out;
}

class Resolver {
public:
    Resolver(std::string source, std::map<std::string, Section> sections)
        : source_(std::move(source)), sections_(std::move(sections)) {}

    [[noreturn]] void fail(const std::string& section, const std::string& key,
                           const std::string& what) const {
        int line = 0;
        if (const Entry* e = find(section, key)) line = e->line;
        throw ConfigError(source_, line, key, what);
    }

    const Entry* find(const std::string& section, const std::string& key) const {
        auto s = sections_.find(section);
        if (s == sections_.end()) return nullptr;
        auto k = s->second.find(key);
        return k == s->second.end() ? nullptr : &k->second;
    }

    bool has(const std::string& section, const std::string& key) const {
        return find(section, key) != nullptr;
    }
    bool has_section(const std::string& section) const { return sections_.count(section) > 0; }

    std::string text(const std::string& section, const std::string& key) const {
        return find(section, key)->value;
    }

    double number(const std::string& section, const std::string& key, const std::string& token) const {
        double v = 0.0;
        const char* b = token.data();
        const char* e = b + token.size();
        if (!token.empty() && *b == '+') ++b;
        auto res = std::from_chars(b, e, v);
        if (res.ec != std::errc{} || res.ptr != e || !std::isfinite(v))
            fail(section, key, "not a number: '" + token + "'");
        return v;
    }

    // "<number> [unit]" split into value and unit (possibly empty).
    std::pair<double, std::string> quantity(const std::string& section, const std::string& key) const {
        const auto parts = split_ws(text(section, key));
        if (parts.empty()) fail(section, key, "empty value");
        if (parts.size() > 2) fail(section, key, "expected '<number> [unit]'");
        if (parts.size() == 1 && parts[0] == "pi") return {1.0, "pi"};
        return {number(section, key, parts[0]), parts.size() == 2 ? parts[1] : std::string{}};
    }

    double dimensionless(const std::string& section, const std::string& key) const {
        auto [v, unit] = quantity(section, key);
        if (!unit.empty()) fail(section, key, "takes no unit (got '" + unit + "')");
        return v;
    }

    int integer(const std::string& section, const std::string& key) const {
        const double v = dimensionless(section, key);
        if (v != std::floor(v) || v < 0 || v > 1e9) fail(section, key, "expected a non-negative integer");
        return static_cast<int>(v);
    }

    // Frequency in units of omega_m1. reference_mhz may be absent only if
    // every frequency is given in wm.
    double frequency(const std::string& section, const std::string& key,
                     std::optional<double> reference_mhz) const {
        auto [v, unit] = quantity(section, key);
        if (unit.empty())
            fail(section, key, "missing unit annotation (use MHz, kHz, Hz or wm)");
        if (unit == "wm") return v;
        double f_mhz = 0.0;
        if (unit == "MHz") f_mhz = v;
        else if (unit == "kHz") f_mhz = v * 1e-3;
        else if (unit == "Hz") f_mhz = v * 1e-6;
        else fail(section, key, "unknown frequency unit '" + unit + "'");
        if (!reference_mhz) fail(section, key, "MHz-based value requires [model] omega_m in MHz");
        return f_mhz / *reference_mhz;
    }

    double frequency_mhz(const std::string& section, const std::string& key) const {
        auto [v, unit] = quantity(section, key);
        if (unit == "MHz") return v;
        if (unit == "kHz") return v * 1e-3;
        if (unit == "Hz") return v * 1e-6;
        if (unit.empty()) fail(section, key, "missing unit annotation (use MHz, kHz or Hz)");
        fail(section, key, "unit must be MHz, kHz or Hz");
    }

    double angle(const std::string& section, const std::string& key) const {
        auto [v, unit] = quantity(section, key);
        if (unit == "rad") return v;
        if (unit == "deg") return v * units::pi / 180.0;
        if (unit == "pi") return v * units::pi;
        if (unit.empty()) fail(section, key, "missing unit annotation (use rad, deg or pi)");
        fail(section, key, "unknown angle unit '" + unit + "'");
    }

    double temperature_k(const std::string& section, const std::string& key) const {
        auto [v, unit] = quantity(section, key);
        if (unit == "K") return v;
        if (unit == "mK") return v * 1e-3;
        if (unit == "uK") return v * 1e-6;
        if (unit.empty()) fail(section, key, "missing unit annotation (use K, mK or uK)");
        fail(section, key, "unknown temperature unit '" + unit + "'");
    }

    bool boolean(const std::string& section, const std::string& key) const {
        const std::string v = trim(text(section, key));
        if (v == "true" || v == "yes" || v == "1") return true;
        if (v == "false" || v == "no" || v == "0") return false;
        fail(section, key, "expected true or false");
    }

    RunConfig resolve() const {
        RunConfig cfg;
        ModelParams& p = cfg.params;
        const std::string M = "model";

        std::optional<double> ref;
        if (has(M, "omega_m")) {
            auto [v, unit] = quantity(M, "omega_m");
            if (unit == "wm") {
                if (v != 1.0) fail(M, "omega_m", "omega_m defines the unit; in wm it must be 1");
            } else {
                ref = frequency_mhz(M, "omega_m");
                if (!(*ref > 0.0)) fail(M, "omega_m", "must be > 0");
                cfg.omega_m1_mhz = *ref;
            }
        }
        auto freq = [&](const std::string& s, const std::string& k) { return frequency(s, k, ref); };

        if (!has(M, "kappa")) throw ConfigError(source_, 0, "kappa", "required key missing in [model]");
        p.kappa = freq(M, "kappa");
        p.omega_m = {1.0, 1.0};
        if (has(M, "omega_m2")) p.omega_m[1] = freq(M, "omega_m2");

        if (has(M, "gamma_m") && has(M, "q_m")) fail(M, "q_m", "give either gamma_m or q_m");
        if (has(M, "gamma_m")) p.gamma_m = {freq(M, "gamma_m"), freq(M, "gamma_m")};
        if (has(M, "q_m")) {
            const double q = dimensionless(M, "q_m");
            p.gamma_m = {p.omega_m[0] / q, p.omega_m[1] / q};
        }
        if (has(M, "gamma_m2") && has(M, "q_m2")) fail(M, "q_m2", "give either gamma_m2 or q_m2");
        if (has(M, "gamma_m2")) p.gamma_m[1] = freq(M, "gamma_m2");
        if (has(M, "q_m2")) p.gamma_m[1] = p.omega_m[1] / dimensionless(M, "q_m2");

        if (has(M, "nbar_m") && has(M, "temperature"))
            fail(M, "temperature", "give either nbar_m or temperature");
        if (has(M, "nbar_m")) p.nbar_m = {dimensionless(M, "nbar_m"), dimensionless(M, "nbar_m")};
        if (has(M, "temperature")) {
            if (!ref) fail(M, "temperature", "requires [model] omega_m in MHz");
            const double t = temperature_k(M, "temperature");
            if (!(t > 0.0)) fail(M, "temperature", "must be > 0");
            for (int j = 0; j < 2; ++j)
                p.nbar_m[j] = units::thermal_occupancy(units::mhz_to_angular(p.omega_m[j] * *ref), t);
        }
        if (has(M, "nbar_m2")) p.nbar_m[1] = dimensionless(M, "nbar_m2");

        if (has(M, "lambda_hop")) p.lambda_hop = freq(M, "lambda_hop");
        if (has(M, "delta_c")) p.delta_c = freq(M, "delta_c");
        if (has(M, "r_d")) p.r_d = dimensionless(M, "r_d");
        if (has(M, "theta_d")) p.theta_d = angle(M, "theta_d");
        if (has(M, "direction")) {
            auto d = parse_direction(trim(text(M, "direction")));
            if (!d) fail(M, "direction", "expected cw or ccw");
            p.direction = *d;
        }

        resolve_drive(p, freq);
        for (Direction d : {Direction::cw, Direction::ccw}) resolve_reservoir(p, d);
        resolve_tolerances(cfg.tol);
        if (has_section("sweep")) cfg.sweep = resolve_sweep(cfg);
        resolve_output(cfg);

        try {
            check_invariants(p);
        } catch (const InvalidParameter& e) {
            throw ConfigError(source_, 0, "", e.what());
        }
        cfg.warnings = validity_warnings(p);
        return cfg;
    }

private:
    template <class Freq>
    void resolve_drive(ModelParams& p, Freq&& freq) const {
        const std::string D = "drive";
        std::string mode = has(D, "mode") ? trim(text(D, "mode")) : "effective";
        const std::set<std::string> eff_keys{"g1", "g2", "g1_phase", "g2_phase", "beta_s"};
        const std::set<std::string> phys_keys{"bare_g1", "bare_g2", "epsilon_d", "epsilon_phase"};
        auto reject = [&](const std::set<std::string>& keys) {
            for (const auto& k : keys)
                if (has(D, k)) fail(D, k, "not valid for drive mode '" + mode + "'");
        };
        if (mode == "effective") {
            reject(phys_keys);
            EffectiveDrive e;
            for (int j = 0; j < 2; ++j) {
                const std::string g = "g" + std::to_string(j + 1);
                const double mag = has(D, g) ? freq(D, g) : 0.0;
                const double ph = has(D, g + "_phase") ? angle(D, g + "_phase") : 0.0;
                e.g_eff[j] = std::polar(mag, ph);
            }
            if (has(D, "beta_s")) e.beta_s = freq(D, "beta_s");
            p.drive = e;
        } else if (mode == "physical") {
            reject(eff_keys);
            PhysicalDrive ph;
            if (has(D, "bare_g1")) ph.g_bare[0] = freq(D, "bare_g1");
            if (has(D, "bare_g2")) ph.g_bare[1] = freq(D, "bare_g2");
            const double eps = has(D, "epsilon_d") ? freq(D, "epsilon_d") : 0.0;
            const double phase = has(D, "epsilon_phase") ? angle(D, "epsilon_phase") : 0.0;
            ph.epsilon_d = std::polar(eps, phase);
            p.drive = ph;
        } else {
            fail(D, "mode", "expected effective or physical");
        }
    }

    void resolve_reservoir(ModelParams& p, Direction d) const {
        const std::string S = "reservoir." + std::string(to_string(d));
        ReservoirMismatch& m = p.mismatch(d);
        if (has(S, "delta_r") && has(S, "r_e")) fail(S, "r_e", "give either delta_r or r_e");
        if (has(S, "delta_theta") && has(S, "theta_e"))
            fail(S, "theta_e", "give either delta_theta or theta_e");
        if (has(S, "delta_r")) m.delta_r = dimensionless(S, "delta_r");
        if (has(S, "r_e")) m.delta_r = dimensionless(S, "r_e") - p.r_d;
        if (has(S, "delta_theta")) m.delta_theta = angle(S, "delta_theta");
        if (has(S, "theta_e")) m.delta_theta = angle(S, "theta_e") - p.theta_d;
    }

    void resolve_tolerances(Tolerances& t) const {
        const std::string T = "tolerances";
        auto set = [&](const char* k, double& dst) {
            if (has(T, k)) dst = dimensionless(T, k);
        };
        set("solver_tol", t.solver_tol);
        if (has(T, "max_iter")) t.max_iter = integer(T, "max_iter");
        set("mixing", t.mixing);
        set("pole_guard", t.pole_guard);
        set("stability", t.stability);
        set("zero", t.zero);
        set("monogamy", t.monogamy);
        set("hermiticity", t.hermiticity);
        set("bona_fide", t.bona_fide);
        set("residual", t.residual);
        set("rcond", t.rcond);
        if (!(t.mixing > 0.0 && t.mixing <= 1.0)) fail(T, "mixing", "must lie in (0, 1]");
    }

    SweepSpec resolve_sweep(const RunConfig& cfg) const {
        const std::string S = "sweep";
        SweepSpec spec;
        spec.name = "config";
        spec.base = cfg.params;
        spec.tol = cfg.tol;
        spec.omega_m1_mhz = cfg.omega_m1_mhz;
        if (has(S, "directions")) {
            const std::string d = trim(text(S, "directions"));
            if (d == "cw") spec.directions = DirectionSet::cw;
            else if (d == "ccw") spec.directions = DirectionSet::ccw;
            else if (d == "both") spec.directions = DirectionSet::both;
            else fail(S, "directions", "expected cw, ccw or both");
        }
        if (has(S, "measures")) {
            std::string list = text(S, "measures");
            std::replace(list.begin(), list.end(), ',', ' ');
            spec.measures = MeasureSet{};
            for (const std::string& m : split_ws(list)) {
                if (m == "all") spec.measures = MeasureSet::all();
                else if (m == "none") spec.measures = MeasureSet{};
                else if (m == "entanglement") spec.measures.entanglement = true;
                else if (m == "steering") spec.measures.steering = true;
                else if (m == "contangle") spec.measures.contangle = true;
                else if (m == "enhancement") spec.measures.enhancement = true;
                else if (m == "noise") spec.measures.noise = true;
                else if (m == "cm") spec.measures.cm = true;
                else fail(S, "measures", "unknown measure '" + m + "'");
            }
        }
        for (const char* key : {"axis1", "axis2"}) {
            if (!has(S, key)) continue;
            const auto parts = split_ws(text(S, key));
            const auto& names = axis_names();
            if (parts.size() < 3) fail(S, key, "expected '<name> linspace <lo> <hi> <n>' or '<name> list <v>...'");
            if (std::find(names.begin(), names.end(), parts[0]) == names.end())
                fail(S, key, "unknown sweep axis '" + parts[0] + "'");
            if (parts[1] == "linspace") {
                if (parts.size() != 5) fail(S, key, "linspace takes <lo> <hi> <n>");
                const double n = number(S, key, parts[4]);
                if (n < 2 || n != std::floor(n)) fail(S, key, "point count must be an integer >= 2");
                spec.axes.push_back(SweepAxis::linspace(parts[0], number(S, key, parts[2]),
                                                        number(S, key, parts[3]), static_cast<int>(n)));
            } else if (parts[1] == "list") {
                std::vector<double> v;
                for (std::size_t k = 2; k < parts.size(); ++k) v.push_back(number(S, key, parts[k]));
                spec.axes.push_back(SweepAxis::list(parts[0], std::move(v)));
            } else {
                fail(S, key, "axis kind must be linspace or list");
            }
        }
        if (has(S, "axis2") && !has(S, "axis1")) fail(S, "axis2", "axis2 given without axis1");
        try {
            validate_spec(spec);
        } catch (const InvalidParameter& e) {
            throw ConfigError(source_, 0, "", e.what());
        }
        return spec;
    }

    void resolve_output(RunConfig& cfg) const {
        const std::string O = "output";
        if (has(O, "path")) cfg.out = trim(text(O, "path"));
        if (has(O, "workers")) {
            cfg.workers = integer(O, "workers");
            if (*cfg.workers < 1) fail(O, "workers", "must be >= 1");
        }
        if (has(O, "timestamp")) cfg.timestamp = boolean(O, "timestamp");
    }

    std::string source_;
    std::map<std::string, Section> sections_;
};

} // namespace

RunConfig parse_config(std::istream& in, const std::string& source) {
    std::map<std::string, Section> sections;
    std::string current;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find_first_of("#;");
        const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError(source, line, "", "malformed section header");
            current = trim(s.substr(1, s.size() - 2));
            if (!schema().count(current))
                throw ConfigError(source, line, "", "unknown section [" + current + "]");
            sections[current];
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError(source, line, "", "expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (current.empty()) throw ConfigError(source, line, key, "key outside of any section");
        if (!schema().at(current).count(key))
            throw ConfigError(source, line, key, "unknown key in [" + current + "]");
        if (value.empty()) throw ConfigError(source, line, key, "empty value");
        auto [it, inserted] = sections[current].emplace(key, Entry{value, line});
        if (!inserted) throw ConfigError(source, line, key, "duplicate key");
    }
    return Resolver(source, std::move(sections)).resolve();
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, 0, "", "cannot open file");
    return parse_config(in, path);
}

} // namespace sqom
