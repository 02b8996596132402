#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "thermodwell/dynamics.hpp"
#include "thermodwell/errors.hpp"
#include "thermodwell/ladder.hpp"
#include "thermodwell/model.hpp"
#include "thermodwell/stationary.hpp"
#include "thermodwell/sweep.hpp"
#include "thermodwell/weakmeas.hpp"

namespace py = pybind11;
using namespace thermodwell;

namespace {

py::dict observables_dict(const std::vector<Observables>& rows) {
    std::vector<double> t, re_sp, im_sp, sz, trace, min_eig;
    for (const auto& r : rows) {
        t.push_back(r.t);
        re_sp.push_back(r.sp.real());
        im_sp.push_back(r.sp.imag());
        sz.push_back(r.sz);
        trace.push_back(r.trace);
        min_eig.push_back(r.min_eigenvalue);
    }
    py::dict d;
    d["t"] = t;
    d["re_sp"] = re_sp;
    d["im_sp"] = im_sp;
    d["sz"] = sz;
    d["trace"] = trace;
    d["min_eigenvalue"] = min_eig;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Thermal decay constant and weak-value dwell time of a driven two-level system";

    auto parameter_error = py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
    (void)parameter_error;

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<double, double, double>(), py::arg("omega"), py::arg("delta"), py::arg("g"))
        .def_property_readonly("omega", &SystemParams::omega)
        .def_property_readonly("delta", &SystemParams::delta)
        .def_property_readonly("g", &SystemParams::g);

    py::class_<DriveField>(m, "DriveField")
        .def(py::init<double, double>(), py::arg("lambda_re"), py::arg("lambda_im"))
        .def_property_readonly("re", &DriveField::re)
        .def_property_readonly("im", &DriveField::im)
        .def_property_readonly("norm2", &DriveField::norm2);

    py::class_<BathParams>(m, "BathParams")
        .def(py::init<double>(), py::arg("temperature"))
        .def_static("from_z", &BathParams::from_z, py::arg("z"), py::arg("sys"))
        .def_property_readonly("temperature", &BathParams::temperature);

    m.def("planck_occupation", py::overload_cast<double, double>(&planck_occupation),
          py::arg("omega"), py::arg("temperature"));
    m.def("thermal_weight", py::overload_cast<double, double>(&thermal_weight),
          py::arg("omega"), py::arg("temperature"));

    py::class_<BlochState>(m, "BlochState")
        .def(py::init([](std::complex<double> sp, double sz) { return BlochState{sp, sz}; }),
             py::arg("sp"), py::arg("sz"))
        .def_readwrite("sp", &BlochState::sp)
        .def_readwrite("sz", &BlochState::sz)
        .def_property_readonly("radius", &BlochState::radius)
        .def("is_physical", &BlochState::is_physical, py::arg("tol") = kPositivityTol);

    py::class_<DecayBreakdown>(m, "DecayBreakdown")
        .def_readonly("gamma", &DecayBreakdown::gamma)
        .def_readonly("alpha", &DecayBreakdown::alpha)
        .def_readonly("pi_th", &DecayBreakdown::pi_th)
        .def_readonly("pi_q", &DecayBreakdown::pi_q);

    m.def("stationary_state", &stationary_state, py::arg("sys"), py::arg("bath"), py::arg("drive"));
    m.def("decay_constant", &decay_constant, py::arg("sys"), py::arg("bath"), py::arg("drive"));
    m.def("zero_temperature_decay", &zero_temperature_decay, py::arg("sys"), py::arg("drive"));
    m.def("evolution_exponent", &evolution_exponent, py::arg("sys"), py::arg("bath"),
          py::arg("drive"), py::arg("t"));

    py::class_<ConsistencyReport>(m, "ConsistencyReport")
        .def_readonly("closed_form", &ConsistencyReport::closed_form)
        .def_readonly("fixed_point", &ConsistencyReport::fixed_point)
        .def_readonly("abs_diff_sp", &ConsistencyReport::abs_diff_sp)
        .def_readonly("abs_diff_sz", &ConsistencyReport::abs_diff_sz)
        .def_readonly("settled", &ConsistencyReport::settled)
        .def_readonly("driven", &ConsistencyReport::driven);
    m.def("consistency_report", &consistency_report, py::arg("sys"), py::arg("bath"),
          py::arg("drive"), py::arg("horizon"), py::arg("steps") = 0);

    m.def(
        "evolve",
        [](const std::string& initial, const SystemParams& sys, const BathParams& bath,
           const DriveField& drive, double t_max, int steps, const std::string& dissipator,
           const std::string& representation) {
            EvolutionConfig cfg;
            cfg.t_max = t_max;
            cfg.steps = steps;
            cfg.mode = parse_dissipator_mode(dissipator);
            DensityMatrix rho0 = DensityMatrix::maximally_mixed();
            if (initial == "ground") rho0 = DensityMatrix::ground();
            else if (initial == "excited") rho0 = DensityMatrix::excited();
            else if (initial == "xplus") rho0 = bloch_to_density(BlochState{0.5, 0.0});
            else if (initial != "mixed") throw ParameterError("unknown initial state '" + initial + "'");
            if (representation == "bloch")
                return observables_dict(observables(evolve(density_to_bloch(rho0), sys, bath, drive, cfg)));
            if (representation != "density")
                throw ParameterError("unknown representation '" + representation + "'");
            return observables_dict(observables(evolve(rho0, sys, bath, drive, cfg)));
        },
        py::arg("initial"), py::arg("sys"), py::arg("bath"), py::arg("drive"), py::arg("t_max"),
        py::arg("steps"), py::arg("dissipator") = "standard", py::arg("representation") = "density");

    py::class_<MeasurementWindow>(m, "MeasurementWindow")
        .def(py::init<double, double, int, double>(), py::arg("t_i"), py::arg("t_f"),
             py::arg("k") = 0, py::arg("delta_e") = 0.0)
        .def_property_readonly("tau_m", &MeasurementWindow::tau_m);

    m.def("weak_projection", &weak_projection, py::arg("t"), py::arg("window"), py::arg("gamma"));
    m.def("u00", &u00, py::arg("t"), py::arg("gamma"));
    m.def("un0", &un0, py::arg("t"), py::arg("n"), py::arg("gamma"), py::arg("delta_e"),
          py::arg("coupling"));
    m.def("dwell_integral", &dwell_integral, py::arg("window"), py::arg("gamma"));
    m.def("dwell_closed", &dwell_closed, py::arg("gamma"), py::arg("tau_m"));
    m.def("dwell_approx", &dwell_approx, py::arg("gamma"), py::arg("tau_m"));
    m.def("dwell_resonant", &dwell_resonant, py::arg("sys"), py::arg("gamma"));
    m.def("dwell_thermal", &dwell_thermal, py::arg("sys"), py::arg("bath"), py::arg("drive"));
    m.def("dwell_zero_temperature_printed", &dwell_zero_temperature_printed, py::arg("sys"),
          py::arg("drive"));

    py::class_<LadderConfig>(m, "LadderConfig")
        .def(py::init<>())
        .def_readwrite("n_levels", &LadderConfig::n_levels)
        .def_readwrite("delta_e", &LadderConfig::delta_e)
        .def_readwrite("coupling", &LadderConfig::coupling)
        .def_readwrite("t_max", &LadderConfig::t_max)
        .def_readwrite("steps", &LadderConfig::steps)
        .def_readwrite("sample_every", &LadderConfig::sample_every)
        .def_readwrite("allow_recurrence", &LadderConfig::allow_recurrence);

    py::class_<LadderResult>(m, "LadderResult")
        .def_readonly("decay_rate", &LadderResult::decay_rate)
        .def_readonly("amplitude_rate", &LadderResult::amplitude_rate)
        .def_readonly("r_squared", &LadderResult::r_squared)
        .def_readonly("max_probability_drift", &LadderResult::max_probability_drift)
        .def_readonly("continuum_regime", &LadderResult::continuum_regime);

    m.def("ladder_decay", &ladder_decay, py::arg("cfg"));
    m.def("golden_rule_rate", &golden_rule_rate, py::arg("coupling"), py::arg("delta_e"));

    m.def(
        "run_sweep",
        [](const SystemParams& sys, const DriveField& drive, double z_min, double z_max, int points,
           const std::string& spacing) {
            SweepConfig cfg{z_min, z_max, points, parse_spacing(spacing), sys, drive};
            py::list rows;
            for (const auto& r : run_sweep(cfg)) {
                py::dict d;
                d["z"] = r.z;
                d["temperature"] = r.temperature;
                d["occupation"] = r.occupation;
                d["pi_th"] = r.pi_th;
                d["pi_q"] = r.pi_q;
                d["gamma"] = r.gamma;
                d["tau_d"] = r.tau_d;
                d["f"] = r.f;
                rows.append(d);
            }
            return rows;
        },
        py::arg("sys"), py::arg("drive"), py::arg("z_min") = 0.0, py::arg("z_max") = 100.0,
        py::arg("points") = 200, py::arg("spacing") = "linear");
}
