#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sqom/config.hpp"
#include "sqom/errors.hpp"
#include "sqom/gaussian.hpp"
#include "sqom/model.hpp"
#include "sqom/moments.hpp"
#include "sqom/pipeline.hpp"
#include "sqom/sweep.hpp"
#include "sqom/units.hpp"

namespace py = pybind11;
using namespace sqom;

namespace {

CovarianceMatrix to_cm(const Matrix6& v) {
    CovarianceMatrix cm;
    cm.v = v;
    return cm;
}

py::dict measures_dict(const MeasureReport& m) {
    py::dict d;
    py::dict en, steer;
    for (int k = 0; k < 3; ++k) {
        const std::string name(bipartition_name(k));
        en[name.c_str()] = m.e_n[k];
        steer[name.c_str()] = py::make_tuple(m.steering[k].forward, m.steering[k].backward,
                                             std::string(to_string(m.steering[k].regime)));
    }
    d["e_n"] = en;
    d["steering"] = steer;
    d["e_tau_one_vs_two"] = m.e_tau_one_vs_two;
    d["contangle_residuals"] = m.contangle.residuals;
    d["r_tau_min"] = m.contangle.r_tau_min;
    d["r_tau_raw"] = m.contangle.raw_min;
    d["monogamy_violation"] = m.contangle.monogamy_violation;
    return d;
}

SweepSpec spec_for(const py::object& what) {
    if (py::isinstance<py::str>(what)) return figure_preset(what.cast<std::string>());
    return what.cast<SweepSpec>();
}

} // namespace

PYBIND11_MODULE(_sqom, m) {
    m.doc() = "Steady-state Gaussian correlations of a squeezed three-mode optomechanical system";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidParameter>(m, "InvalidParameter", error.ptr());
    py::register_exception<NonConvergence>(m, "NonConvergence", error.ptr());
    py::register_exception<Unstable>(m, "Unstable", error.ptr());
    py::register_exception<SingularSystem>(m, "SingularSystem", error.ptr());
    py::register_exception<StepTooLarge>(m, "StepTooLarge", error.ptr());
    py::register_exception<NonHermitianMoments>(m, "NonHermitianMoments", error.ptr());
    py::register_exception<NonPhysicalReduced>(m, "NonPhysicalReduced", error.ptr());
    py::register_exception<UnknownPreset>(m, "UnknownPreset", error.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", error.ptr());

    py::enum_<Direction>(m, "Direction").value("cw", Direction::cw).value("ccw", Direction::ccw);
    py::enum_<Mode>(m, "Mode").value("a", Mode::a).value("q1", Mode::q1).value("q2", Mode::q2);

    py::class_<ReservoirMismatch>(m, "ReservoirMismatch")
        .def(py::init<>())
        .def(py::init([](double dr, double dth) { return ReservoirMismatch{dr, dth}; }),
             py::arg("delta_r"), py::arg("delta_theta"))
        .def_readwrite("delta_r", &ReservoirMismatch::delta_r)
        .def_readwrite("delta_theta", &ReservoirMismatch::delta_theta);

    py::class_<Tolerances>(m, "Tolerances")
        .def(py::init<>())
        .def_readwrite("solver_tol", &Tolerances::solver_tol)
        .def_readwrite("max_iter", &Tolerances::max_iter)
        .def_readwrite("mixing", &Tolerances::mixing)
        .def_readwrite("pole_guard", &Tolerances::pole_guard)
        .def_readwrite("stability", &Tolerances::stability)
        .def_readwrite("zero", &Tolerances::zero)
        .def_readwrite("monogamy", &Tolerances::monogamy)
        .def_readwrite("hermiticity", &Tolerances::hermiticity)
        .def_readwrite("bona_fide", &Tolerances::bona_fide)
        .def_readwrite("residual", &Tolerances::residual)
        .def_readwrite("rcond", &Tolerances::rcond);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def_readwrite("kappa", &ModelParams::kappa)
        .def_readwrite("omega_m", &ModelParams::omega_m)
        .def_readwrite("gamma_m", &ModelParams::gamma_m)
        .def_readwrite("nbar_m", &ModelParams::nbar_m)
        .def_readwrite("lambda_hop", &ModelParams::lambda_hop)
        .def_readwrite("delta_c", &ModelParams::delta_c)
        .def_readwrite("r_d", &ModelParams::r_d)
        .def_readwrite("theta_d", &ModelParams::theta_d)
        .def_readwrite("direction", &ModelParams::direction)
        .def("mismatch", [](const ModelParams& p, Direction d) { return p.mismatch(d); })
        .def("set_mismatch", [](ModelParams& p, Direction d, const ReservoirMismatch& r) { p.mismatch(d) = r; })
        .def("set_effective_drive",
             [](ModelParams& p, cd g1, cd g2, double beta_s) { p.drive = EffectiveDrive{{g1, g2}, beta_s}; },
             py::arg("g1"), py::arg("g2"), py::arg("beta_s") = 0.0)
        .def("set_physical_drive",
             [](ModelParams& p, double g1, double g2, cd eps) { p.drive = PhysicalDrive{{g1, g2}, eps}; },
             py::arg("bare_g1"), py::arg("bare_g2"), py::arg("epsilon_d"))
        .def("apply_axis", [](ModelParams& p, const std::string& name, double v, double mhz) {
                 apply_axis(p, name, v, mhz);
             },
             py::arg("name"), py::arg("value"), py::arg("omega_m1_mhz") = 16.0);

    m.def("check_invariants", &check_invariants);
    m.def("validity_warnings", &validity_warnings);
    m.def("pump_from_squeezing", &pump_from_squeezing, py::arg("delta_c"), py::arg("r_d"));
    m.def("squeezing_from_pump", &squeezing_from_pump, py::arg("delta_c"), py::arg("xi_d"));
    m.def("effective_frequency", &effective_frequency, py::arg("delta_c"), py::arg("r_d"));
    m.def("reservoir_noise",
          [](double r_d, double theta_d, double r_e, double theta_e) {
              const ReservoirNoise n = reservoir_noise(r_d, theta_d, r_e, theta_e);
              return py::make_tuple(n.n_s, n.m_s);
          },
          py::arg("r_d"), py::arg("theta_d"), py::arg("r_e"), py::arg("theta_e"));
    m.def("effective_coupling",
          [](cd g, double r_d, double theta_d) {
              const Coupling c = effective_coupling(g, r_d, theta_d);
              return py::make_tuple(c.lambda_eff, c.pi_factor);
          },
          py::arg("g_eff"), py::arg("r_d"), py::arg("theta_d"));
    m.def("derive",
          [](const ModelParams& p, Direction d) {
              const DerivedQuantities q = derive(p, d);
              py::dict out;
              out["xi_d"] = q.xi_d;
              out["omega_s"] = q.omega_s;
              out["n_s"] = q.n_s;
              out["m_s"] = q.m_s;
              out["lambda_eff"] = q.lambda_eff;
              out["pi_factor"] = q.pi_factor;
              out["delta_r"] = q.delta_r;
              out["delta_theta"] = q.delta_theta;
              return out;
          },
          py::arg("params"), py::arg("direction"));

    m.def("evaluate_point",
          [](const ModelParams& p, Direction d, const Tolerances& tol) {
              PointResult r;
              {
                  py::gil_scoped_release release;
                  r = evaluate_point(p, d, tol);
              }
              py::dict out;
              out["direction"] = r.direction;
              out["status"] = std::string(to_string(r.status));
              out["message"] = r.message;
              out["stable"] = r.stable;
              out["spectral_abscissa"] = r.spectral_abscissa;
              out["cm"] = r.cm ? py::cast(r.cm->v) : py::none();
              out["moments"] = r.moments ? py::cast(Eigen::VectorXcd(r.moments->x)) : py::none();
              out["measures"] = r.measures ? py::object(measures_dict(*r.measures)) : py::none();
              return out;
          },
          py::arg("params"), py::arg("direction") = Direction::ccw, py::arg("tol") = Tolerances{});

    m.def("drift_matrix",
          [](const ModelParams& p, Direction d) {
              const DriftSystem s = assemble_drift(drift_inputs(p, operating_point(p, d)));
              return py::make_tuple(Eigen::MatrixXcd(s.a_matrix), Eigen::VectorXcd(s.b_vector),
                                    s.spectral_abscissa);
          },
          py::arg("params"), py::arg("direction") = Direction::ccw);

    m.def("symplectic_spectrum", &symplectic_spectrum);
    m.def("is_bona_fide", &is_bona_fide, py::arg("v"), py::arg("tol") = 1e-8);
    m.def("log_negativity",
          [](const Matrix6& v, Mode mu, Mode nu) { return log_negativity(to_cm(v), mu, nu); });
    m.def("steering_pair", [](const Matrix6& v, Mode mu, Mode nu) {
        const SteeringPair s = steering_pair(to_cm(v), mu, nu);
        return py::make_tuple(s.forward, s.backward, std::string(to_string(s.regime)));
    });
    m.def("evaluate_measures", [](const Matrix6& v) { return measures_dict(evaluate_measures(to_cm(v))); });
    m.def("asymmetry_ratio", &asymmetry_ratio, py::arg("e_ccw"), py::arg("e_cw"));

    py::class_<SweepSpec>(m, "SweepSpec")
        .def_readwrite("name", &SweepSpec::name)
        .def_readwrite("base", &SweepSpec::base)
        .def_readwrite("tol", &SweepSpec::tol)
        .def_property_readonly("axes", [](const SweepSpec& s) {
            py::list out;
            for (const auto& a : s.axes) out.append(py::make_tuple(a.name, a.values));
            return out;
        })
        .def("set_axes", [](SweepSpec& s, const std::vector<std::pair<std::string, std::vector<double>>>& axes) {
            s.axes.clear();
            for (const auto& [name, values] : axes) s.axes.push_back(SweepAxis::list(name, values));
            validate_spec(s);
        });

    m.def("preset_names", [] {
        std::vector<std::string> out;
        for (auto n : preset_names()) out.emplace_back(n);
        return out;
    });
    m.def("figure_preset", [](const std::string& name) { return figure_preset(name); });
    m.def("sweep_csv",
          [](const py::object& what, int workers, bool timestamp) {
              const SweepSpec spec = spec_for(what);
              std::ostringstream os;
              {
                  py::gil_scoped_release release;
                  write_csv(os, spec, run_sweep(spec, workers), timestamp);
              }
              return os.str();
          },
          py::arg("spec"), py::arg("workers") = 1, py::arg("timestamp") = false,
          "Run a sweep (a SweepSpec or a preset name) and return the CSV text.");

    m.def("parse_config", [](const std::string& text) {
        std::istringstream is(text);
        const RunConfig c = parse_config(is, "<string>");
        return py::make_tuple(c.params, c.tol);
    });
    m.def("thermal_occupancy", &units::thermal_occupancy, py::arg("omega"), py::arg("temperature"));
    m.attr("CSV_SCHEMA") = std::string(kCsvSchema);
}
