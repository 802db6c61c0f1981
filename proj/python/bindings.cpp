#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli/commands.hpp"
#include "curved_nbody/dynamics.hpp"
#include "curved_nbody/format.hpp"
#include "curved_nbody/integrator.hpp"
#include "curved_nbody/verify.hpp"

namespace py = pybind11;
using namespace curved_nbody;

namespace {

using Rows = std::vector<std::vector<double>>;

Vec to_vec(const std::vector<double>& v) {
  Vec out(static_cast<int>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) out[static_cast<int>(k)] = v[k];
  return out;
}

std::vector<double> from_vec(const Vec& v) { return {v.coords().begin(), v.coords().end()}; }

SystemState make_state(const std::string& space, const std::vector<double>& masses, const Rows& pos,
                       const Rows& vel, double time) {
  if (masses.size() != pos.size() || masses.size() != vel.size())
    throw InvalidArgument("masses, positions and velocities must have the same length");
  std::vector<Body> bodies;
  for (std::size_t k = 0; k < masses.size(); ++k) bodies.push_back({masses[k], to_vec(pos[k]), to_vec(vel[k])});
  return checked_state(SpaceSpec::parse(space), std::move(bodies), time);
}

py::dict state_dict(const SystemState& s) {
  Rows pos, vel;
  std::vector<double> masses;
  for (const Body& b : s.bodies) {
    masses.push_back(b.mass);
    pos.push_back(from_vec(b.position));
    vel.push_back(from_vec(b.velocity));
  }
  py::dict d;
  d["space"] = s.space.name();
  d["time"] = s.time;
  d["masses"] = masses;
  d["positions"] = pos;
  d["velocities"] = vel;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Curved N-body dynamics on S2, S3, H2 and H3";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "Error");
  py::register_exception<SingularPair>(m, "SingularPair");
  py::register_exception<DomainExit>(m, "DomainExit");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

  m.def("inner", [](const std::vector<double>& a, const std::vector<double>& b, const std::string& space) {
    return inner(to_vec(a), to_vec(b), SpaceSpec::parse(space));
  }, py::arg("a"), py::arg("b"), py::arg("space"));

  m.def("acceleration", [](const std::string& space, const std::vector<double>& masses, const Rows& pos,
                           const Rows& vel) {
    Rows out;
    for (const Vec& a : acceleration(make_state(space, masses, pos, vel, 0.0))) out.push_back(from_vec(a));
    return out;
  }, py::arg("space"), py::arg("masses"), py::arg("positions"), py::arg("velocities"));

  m.def("total_energy", [](const std::string& space, const std::vector<double>& masses, const Rows& pos,
                           const Rows& vel) { return total_energy(make_state(space, masses, pos, vel, 0.0)); },
        py::arg("space"), py::arg("masses"), py::arg("positions"), py::arg("velocities"));

  m.def("angular_momentum", [](const std::string& space, const std::vector<double>& masses, const Rows& pos,
                               const Rows& vel) { return angular_momentum(make_state(space, masses, pos, vel, 0.0)); },
        py::arg("space"), py::arg("masses"), py::arg("positions"), py::arg("velocities"));

  m.def("family_state", [](const std::string& config_json) {
    const auto j = nlohmann::json::parse(config_json);
    const LiftedState ls = initial_state(cli::parse_family(cli::Section(j, "family")));
    return state_dict(ls.state);
  }, py::arg("family_json"), "Initial state of a family given as a JSON object with a \"name\" key.");

  m.def("integrate", [](const std::string& space, const std::vector<double>& masses, const Rows& pos,
                        const Rows& vel, double t_end, const std::string& method, double dt, double tol,
                        double sample_dt) {
    IntegratorConfig cfg;
    cfg.method = parse_method(method);
    cfg.dt_initial = dt;
    cfg.abs_tol = cfg.rel_tol = tol;
    cfg.sample_dt = sample_dt;
    const Trajectory tr = integrate(make_state(space, masses, pos, vel, 0.0), t_end, cfg);
    py::list samples;
    for (const Sample& s : tr.samples) samples.append(state_dict(s.state));
    py::dict diag;
    diag["max_constraint_drift"] = tr.diagnostics.max_constraint_drift;
    diag["max_energy_drift_rel"] = tr.diagnostics.max_energy_drift_rel;
    diag["steps_accepted"] = tr.diagnostics.steps_accepted;
    diag["singular_termination"] = static_cast<bool>(tr.diagnostics.singular_termination);
    py::dict out;
    out["samples"] = samples;
    out["diagnostics"] = diag;
    return out;
  }, py::arg("space"), py::arg("masses"), py::arg("positions"), py::arg("velocities"), py::arg("t_end"),
     py::arg("method") = "rk45_adaptive", py::arg("dt") = 1e-3, py::arg("tol") = 1e-10,
     py::arg("sample_dt") = 0.0);

  m.def("det_A_cartesian", &det_A_cartesian, py::arg("alpha"), py::arg("beta"));
  m.def("det_A_polar", [](double a, double b) { return det_A_polar(a, b); }, py::arg("alpha"), py::arg("beta"));
  m.def("releq_2d_mismatch", &releq_2d_mismatch, py::arg("alpha"), py::arg("r"), py::arg("sigma"),
        py::arg("m"));
  m.def("pe_identity_residual", &pe_identity_residual, py::arg("theta"), py::arg("z"), py::arg("gamma"),
        py::arg("m"));
  m.def("ne_identity_residual", &ne_identity_residual, py::arg("theta"), py::arg("y"), py::arg("gamma"),
        py::arg("m"));
  m.def("nh_identity_residual", [](double phi, double eta, double mass, const std::string& reading) {
    return nh_identity_residual(phi, eta, mass, parse_reading(reading));
  }, py::arg("phi"), py::arg("eta"), py::arg("m"), py::arg("reading") = "cosh-inside");
  m.def("neh_identity_residual", [](double phi, double r, double mass, const std::string& reading) {
    return neh_identity_residual(phi, r, mass, parse_reading(reading));
  }, py::arg("phi"), py::arg("r"), py::arg("m"), py::arg("reading") = "cosh-inside");

  m.def("verify_json", [](const std::string& theorem, const std::vector<std::string>& grid,
                          const std::vector<std::string>& tol, const std::string& reading) {
    const TheoremId id = parse_theorem(theorem);
    ScanGrid g = default_grid(id);
    for (const std::string& o : grid) apply_grid_override(g, o);
    Tolerances t = default_tolerances(id);
    for (const std::string& o : tol) apply_tolerance_override(t, o);
    TheoremOptions opts;
    if (!reading.empty()) opts.reading = parse_reading(reading);
    py::gil_scoped_release release;
    return run_theorem(id, g, t, opts).to_json().dump();
  }, py::arg("theorem"), py::arg("grid") = std::vector<std::string>{},
     py::arg("tol") = std::vector<std::string>{}, py::arg("reading") = "");

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::vector<std::string> full{"curved-nbody"};
    full.insert(full.end(), args.begin(), args.end());
    std::ostringstream out, err;
    const int code = cli::run_cli(full, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command line; returns (exit_code, stdout, stderr).");
}
