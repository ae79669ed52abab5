#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dsr/analytic.hpp"
#include "dsr/config.hpp"
#include "dsr/energy.hpp"
#include "dsr/experiments.hpp"
#include "dsr/io.hpp"
#include "dsr/rigid.hpp"

namespace py = pybind11;

namespace {

py::dict trace_to_dict(const dsr::SimulationTrace& trace) {
    py::dict out;
    py::dict columns;
    for (const std::string& name : trace.column_names()) {
        if (name.rfind("v_", 0) == 0) continue;  // the field is returned whole below
        columns[py::str(name)] = trace.column(name);
    }
    out["columns"] = columns;
    out["model"] = trace.meta.model;
    out["scheme"] = trace.meta.scheme;
    out["samples"] = trace.samples.size();
    if (trace.has_fluid) {
        out["radii"] = trace.radii;
        out["field"] = trace.field;
    }
    return out;
}

py::dict mode_to_dict(const dsr::EigenMode& m) {
    py::dict d;
    d["index"] = m.index;
    d["kappa"] = m.kappa;
    d["lambda"] = m.lambda;
    d["mixing_ratio"] = m.mixing_ratio;
    d["forcing_m"] = m.forcing_m;
    d["forcing_l"] = m.forcing_l;
    return d;
}

dsr::AnnulusFluid make_fluid(double density, double viscosity, double inner, double outer) {
    dsr::AnnulusFluid fluid{density, viscosity, inner, outer};
    fluid.validate();
    return fluid;
}

}  // namespace

PYBIND11_MODULE(_dsr, m) {
    m.doc() = "stool-wheel self-recovery toolkit: configs in, traces and damping estimates out";

    m.def("preset_names", &dsr::preset_names);
    m.def(
        "render_preset",
        [](const std::string& name) { return dsr::render_config(dsr::load_preset(name)); },
        py::arg("name"), "Built-in preset as config text.");
    m.def(
        "normalize_config",
        [](const std::string& text) { return dsr::render_config(dsr::parse_config(text)); },
        py::arg("text"), "Parse config text and render it back in canonical form.");

    m.def(
        "run_experiment",
        [](const std::string& config_text) {
            return trace_to_dict(dsr::run_experiment(dsr::parse_config(config_text)));
        },
        py::arg("config_text"),
        "Run the experiment described by config text; returns columns keyed by name.");

    m.def(
        "boundedness_report",
        [](const std::string& config_text) {
            dsr::ExperimentConfig cfg = dsr::parse_config(config_text);
            dsr::SimulationTrace trace = dsr::run_experiment(cfg);
            dsr::BoundednessResult r =
                dsr::detect_boundedness(trace, cfg.rate_tolerance, cfg.hold_window);
            py::dict d;
            d["settled"] = r.settled;
            d["angle"] = r.angle;
            d["time"] = r.time;
            d["predicted_magnitude"] =
                dsr::boundedness_angle(cfg.inertias, cfg.profile.steady_rate, cfg.fluid);
            return d;
        },
        py::arg("config_text"),
        "Run the experiment and report where the stool settles, with the quasi-static prediction.");

    m.def(
        "effective_damping",
        [](double density, double viscosity, double inner, double outer) {
            return dsr::effective_damping(make_fluid(density, viscosity, inner, outer));
        },
        py::arg("density"), py::arg("kinematic_viscosity"), py::arg("inner_radius"),
        py::arg("outer_radius"), "Narrow-gap damping constant of the annular film.");

    m.def(
        "exact_annular_damping",
        [](double density, double viscosity, double inner, double outer) {
            return dsr::exact_annular_damping(make_fluid(density, viscosity, inner, outer));
        },
        py::arg("density"), py::arg("kinematic_viscosity"), py::arg("inner_radius"),
        py::arg("outer_radius"), "Steady-profile damping constant of the annular film.");

    m.def(
        "boundedness_angle",
        [](double wheel_inertia, double stool_inertia, double wheel_rate, double density,
           double viscosity, double inner, double outer) {
            dsr::InertiaParams inertias{wheel_inertia, stool_inertia};
            inertias.validate();
            return dsr::boundedness_angle(inertias, wheel_rate,
                                          make_fluid(density, viscosity, inner, outer));
        },
        py::arg("wheel_inertia"), py::arg("stool_inertia"), py::arg("wheel_rate"),
        py::arg("density"), py::arg("kinematic_viscosity"), py::arg("inner_radius"),
        py::arg("outer_radius"),
        "Quasi-static bound on the stool deflection while the wheel holds a steady rate.");

    m.def(
        "eigenvalues",
        [](double density, double viscosity, double inner, double outer, int count) {
            auto modes = dsr::eigenvalues(make_fluid(density, viscosity, inner, outer), count);
            py::list out;
            for (const dsr::EigenMode& mode : modes) out.append(mode_to_dict(mode));
            return out;
        },
        py::arg("density"), py::arg("kinematic_viscosity"), py::arg("inner_radius"),
        py::arg("outer_radius"), py::arg("count") = 6, "Decay modes of the clamped annulus film.");

    m.def(
        "validation_table",
        [](const std::string& config_text, const std::vector<std::pair<double, double>>& pairs_cm,
           int jobs) {
            auto rows =
                dsr::run_validation_table(dsr::parse_config(config_text), pairs_cm, jobs);
            py::list out;
            for (const dsr::ValidationRow& r : rows) {
                py::dict d;
                d["inner_cm"] = r.inner_cm;
                d["outer_cm"] = r.outer_cm;
                d["gap_percent"] = r.gap_percent;
                d["angle_pde"] = r.angle_pde;
                d["angle_keff"] = r.angle_keff;
                d["percent_error"] = r.percent_error;
                d["settled"] = r.settled;
                out.append(d);
            }
            return out;
        },
        py::arg("config_text"), py::arg("pairs_cm"), py::arg("jobs") = 1,
        "Settled-angle sweep over radius pairs, compared with the quasi-static prediction.");

    m.def(
        "min_average_fluid_speed",
        [](double bearing_inner_radius, double bearing_thickness, double bearing_height,
           double wheel_inertia, double stool_inertia, double stool_rate, double density) {
            dsr::BearingGeometry bearing{bearing_inner_radius, bearing_thickness, bearing_height};
            dsr::InertiaParams inertias{wheel_inertia, stool_inertia};
            return dsr::min_average_fluid_speed(bearing, inertias, stool_rate, density);
        },
        py::arg("bearing_inner_radius"), py::arg("bearing_thickness"), py::arg("bearing_height"),
        py::arg("wheel_inertia"), py::arg("stool_inertia"), py::arg("stool_rate"),
        py::arg("density"),
        "Average film speed needed to absorb the rig's momentum at the given stool rate.");
}
