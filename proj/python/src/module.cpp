#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "memcap/io.hpp"
#include "memcap/logic.hpp"
#include "memcap/run.hpp"

#include <sstream>

namespace py = pybind11;
using namespace memcap;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bistable membrane memcapacitor circuit simulator";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<CollapseError>(m, "CollapseError", PyExc_RuntimeError);
    py::register_exception<SimulationError>(m, "SimulationError", PyExc_RuntimeError);

    py::enum_<LogicBit>(m, "LogicBit")
        .value("ZERO", LogicBit::Zero)
        .value("ONE", LogicBit::One)
        .value("UNSETTLED", LogicBit::Unsettled);

    py::enum_<Topology>(m, "Topology")
        .value("SINGLE", Topology::Single)
        .value("REDUCED", Topology::Reduced)
        .value("TRIPLE", Topology::Triple);

    py::class_<PhysicalParams>(m, "PhysicalParams")
        .def(py::init<>())
        .def_readwrite("omega0", &PhysicalParams::omega0)
        .def_readwrite("gamma", &PhysicalParams::gamma)
        .def_readwrite("mass", &PhysicalParams::mass)
        .def_readwrite("d", &PhysicalParams::d)
        .def_readwrite("z0", &PhysicalParams::z0)
        .def_readwrite("c0", &PhysicalParams::c0)
        .def_readwrite("r", &PhysicalParams::r);

    py::class_<DeviceParams>(m, "DeviceParams")
        .def(py::init<double, double, double>(), py::arg("gamma") = 0.7,
             py::arg("y0") = 0.2, py::arg("rho") = 0.0)
        .def_readwrite("gamma", &DeviceParams::gamma)
        .def_readwrite("y0", &DeviceParams::y0)
        .def_readwrite("rho", &DeviceParams::rho)
        .def("__repr__", [](const DeviceParams& p) {
            std::ostringstream os;
            os << "DeviceParams(gamma=" << p.gamma << ", y0=" << p.y0
               << ", rho=" << p.rho << ")";
            return os.str();
        });

    py::class_<Dimensionless>(m, "Dimensionless")
        .def_readonly("params", &Dimensionless::params)
        .def_readonly("beta0", &Dimensionless::beta0);

    py::class_<MembraneState>(m, "MembraneState")
        .def(py::init<double, double, double>(), py::arg("y") = 0.0,
             py::arg("v") = 0.0, py::arg("u") = 0.0)
        .def_readwrite("y", &MembraneState::y)
        .def_readwrite("v", &MembraneState::v)
        .def_readwrite("u", &MembraneState::u);

    py::class_<PulseSpec>(m, "PulseSpec")
        .def(py::init<double, double, double>(), py::arg("beta") = 0.0,
             py::arg("tau_on") = 0.0, py::arg("tau_off") = 0.0)
        .def_readwrite("beta", &PulseSpec::beta)
        .def_readwrite("tau_on", &PulseSpec::tau_on)
        .def_readwrite("tau_off", &PulseSpec::tau_off);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("dtau", &SimConfig::dtau)
        .def_readwrite("tau_end", &SimConfig::tau_end)
        .def_readwrite("relax_extend", &SimConfig::relax_extend)
        .def_readwrite("max_extensions", &SimConfig::max_extensions)
        .def_readwrite("record_every", &SimConfig::record_every)
        .def_readwrite("tol_v", &SimConfig::tol_v)
        .def_readwrite("tol_y", &SimConfig::tol_y);

    py::class_<CircuitState>(m, "CircuitState")
        .def(py::init<Topology, const DeviceParams&>())
        .def_readwrite("devices", &CircuitState::devices)
        .def_readwrite("params", &CircuitState::params)
        .def_readwrite("c0_scale", &CircuitState::c0_scale);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_readonly("y", &Trajectory::y)
        .def_readonly("v", &Trajectory::v)
        .def_readonly("beta_c", &Trajectory::beta_c)
        .def_readonly("final_state", &Trajectory::final_state)
        .def_readonly("settled", &Trajectory::settled)
        .def_readonly("tau_final", &Trajectory::tau_final)
        .def_readonly("extensions_used", &Trajectory::extensions_used);

    py::class_<TruthTableResult>(m, "TruthTableResult")
        .def_readonly("finals", &TruthTableResult::finals)
        .def_readonly("codes", &TruthTableResult::codes)
        .def_readonly("names", &TruthTableResult::names)
        .def_readonly("diagnostics", &TruthTableResult::diagnostics);

    py::class_<OperationMap>(m, "OperationMap")
        .def_readonly("beta1_axis", &OperationMap::beta1_axis)
        .def_readonly("beta2_axis", &OperationMap::beta2_axis)
        .def_readonly("codes", &OperationMap::codes)
        .def_readonly("sensitivity", &OperationMap::sensitivity)
        .def_readonly("failed_cells", &OperationMap::failed_cells)
        .def("code_at", &OperationMap::code_at, py::arg("device"), py::arg("i1"),
             py::arg("i2"))
        .def_property_readonly("output_device", &OperationMap::output_device);

    py::class_<NotCurvePoint>(m, "NotCurvePoint")
        .def_readonly("width", &NotCurvePoint::width)
        .def_readonly("y_diff", &NotCurvePoint::y_diff)
        .def_readonly("valid", &NotCurvePoint::valid);

    m.attr("UNSETTLED_MARK") = kUnsettledMark;

    m.def("to_dimensionless", &to_dimensionless, py::arg("physical"));
    m.def("capacitance", &capacitance, py::arg("y"));
    m.def("rhs",
          [](const MembraneState& s, double beta_c, const DeviceParams& p) {
              const Deriv2 d = rhs(s, beta_c, p);
              return py::make_tuple(d.dy, d.dv);
          },
          py::arg("state"), py::arg("beta_c"), py::arg("params"));
    m.def("rhs_resistive",
          [](const MembraneState& s, double beta_src, const DeviceParams& p) {
              const Deriv3 d = rhs_resistive(s, beta_src, p);
              return py::make_tuple(d.dy, d.dv, d.du);
          },
          py::arg("state"), py::arg("beta_src"), py::arg("params"));
    m.def("potential_energy", &potential_energy, py::arg("y"), py::arg("params"));
    m.def("init_state", &init_state, py::arg("bit"), py::arg("params"));
    m.def("binarize",
          py::overload_cast<const MembraneState&, const DeviceParams&>(&binarize),
          py::arg("state"), py::arg("params"));
    m.def("binarize",
          py::overload_cast<const MembraneState&, const DeviceParams&, double,
                            double>(&binarize),
          py::arg("state"), py::arg("params"), py::arg("tol_y"), py::arg("tol_v"));

    m.def("divider_triple", &divider_triple, py::arg("y1"), py::arg("y2"),
          py::arg("y3"), py::arg("b1"), py::arg("b2"), py::arg("s1") = 1.0,
          py::arg("s2") = 1.0, py::arg("s3") = 1.0);
    m.def("divider_reduced", &divider_reduced, py::arg("y1"), py::arg("y2"),
          py::arg("b1"), py::arg("b2"), py::arg("s1") = 1.0, py::arg("s2") = 1.0);

    m.def("pulse_value", &pulse_value, py::arg("pulse"), py::arg("tau"));
    m.def("integrate", &integrate, py::arg("state"), py::arg("pulses"),
          py::arg("topology"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("single_shot", &single_shot, py::arg("bits"), py::arg("pulses"),
          py::arg("topology"), py::arg("config"), py::arg("params"),
          py::call_guard<py::gil_scoped_release>());

    m.def("compute_code", &compute_code, py::arg("finals"));
    m.def("code_name", &code_name, py::arg("code"));
    m.def("truth_table", &truth_table, py::arg("beta1"), py::arg("beta2"),
          py::arg("width"), py::arg("topology"), py::arg("params"),
          py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("sweep_map", &sweep_map, py::arg("beta1_min"), py::arg("beta1_max"),
          py::arg("beta2_min"), py::arg("beta2_max"), py::arg("n1"), py::arg("n2"),
          py::arg("width"), py::arg("topology"), py::arg("params"),
          py::arg("config"), py::arg("workers") = 0,
          py::call_guard<py::gil_scoped_release>());
    m.def("sensitivity_flags", &sensitivity_flags, py::arg("map"),
          py::arg("eight_neighborhood") = false);
    m.def("not_search", &not_search, py::arg("beta"), py::arg("t_min"),
          py::arg("t_max"), py::arg("samples"), py::arg("tau_obs"),
          py::arg("params"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
}
