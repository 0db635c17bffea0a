// Python bindings: states as numpy arrays in, numpy arrays out.

#include "eqsim/circuits.hpp"
#include "eqsim/cli.hpp"
#include "eqsim/embedding.hpp"
#include "eqsim/noise.hpp"
#include "eqsim/optics.hpp"
#include "eqsim/tomography.hpp"
#include "eqsim/verify.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace eqsim;

namespace {

StateVector to_state(const CVector& amplitudes) {
  return StateVector(qubits_for_dimension(static_cast<std::size_t>(amplitudes.size())), amplitudes);
}

DensityMatrix to_density(const CMatrix& m) {
  return DensityMatrix(qubits_for_dimension(static_cast<std::size_t>(m.rows())), m);
}

py::dict estimate_dict(double value, double sigma) {
  py::dict d;
  d["value"] = value;
  d["sigma"] = sigma;
  return d;
}

py::list records_list(const std::vector<CountRecord>& records) {
  py::list out;
  for (const auto& r : records) out.append(py::make_tuple(r.setting.str(), r.counts, r.total_shots));
  return out;
}

std::vector<CountRecord> records_from(const std::vector<std::tuple<std::string, std::uint64_t, std::uint64_t>>& rows) {
  std::vector<CountRecord> out;
  out.reserve(rows.size());
  for (const auto& [setting, counts, shots] : rows) out.push_back({ProjectionSetting::parse(setting), counts, shots});
  return out;
}

cli::ExperimentConfig make_config(const std::string& mode, const std::vector<double>& gt, std::optional<double> epsilon,
                                  std::optional<double> pump, std::uint64_t shots, std::uint64_t seed, int jobs) {
  cli::ExperimentConfig cfg;
  cfg.mode = cli::parse_mode(mode);
  cfg.gt_grid = gt;
  cfg.epsilon = epsilon;
  cfg.pump_percent = pump;
  cfg.shots = shots;
  cfg.seed = seed;
  cfg.jobs = jobs;
  cli::validate(cfg);
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_eqsim, m) {
  m.doc() = "Embedded quantum simulation of entanglement dynamics";

  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_ValueError);
  py::register_exception<cli::ConfigError>(m, "ConfigError", PyExc_ValueError);

  // states and observables
  m.def("expectation", [](const CVector& psi, const std::string& pauli) {
    return expectation(to_state(psi), PauliString::parse(pauli));
  }, py::arg("psi"), py::arg("pauli"));
  m.def("expectation_density", [](const CMatrix& rho, const std::string& pauli) {
    return expectation(to_density(rho), PauliString::parse(pauli));
  }, py::arg("rho"), py::arg("pauli"));
  m.def("pauli_matrix", [](const std::string& pauli) { return pauli_matrix(PauliString::parse(pauli)).matrix(); });
  m.def("product_state", [](const std::string& labels) { return StateVector::product(labels).amplitudes(); });

  // embedding
  m.def("embed", [](const CVector& psi) { return embed(to_state(psi)).state().amplitudes(); }, py::arg("psi"));
  m.def("decode", [](const CVector& big) { return decode(EmbeddedState(to_state(big))).amplitudes(); }, py::arg("big"));
  m.def("conjugate_via_gate", [](const CVector& big) {
    return conjugate_via_gate(EmbeddedState(to_state(big))).amplitudes();
  }, py::arg("big"));
  m.def("embed_hamiltonian", [](const CMatrix& h) {
    return embed_hamiltonian(SimulatedHamiltonian(1.0, h)).matrix();
  }, py::arg("h"));
  m.def("concurrence_pure", [](const CVector& psi) { return concurrence_pure(to_state(psi)); }, py::arg("psi"));
  m.def("concurrence_embedded", [](const CVector& big) {
    return concurrence_embedded(EmbeddedState(to_state(big)));
  }, py::arg("big"));
  m.def("concurrence_from_observables", &concurrence_from_observables, py::arg("zyy"), py::arg("xyy"));
  m.def("protocol_state", [](double gt) { return protocol_state(gt).amplitudes(); }, py::arg("gt"));
  m.def("embedded_protocol_state", [](double gt) { return embedded_protocol_state(gt).state().amplitudes(); },
        py::arg("gt"));

  // circuits
  m.def("full_circuit_unitary", [](double phi) { return circuit_unitary(full_circuit(phi)).matrix(); },
        py::arg("phi"));
  m.def("reduced_circuit_unitary", [](double phi) { return circuit_unitary(reduced_circuit(phi)).matrix(); },
        py::arg("phi"));
  m.def("run_full_circuit", [](double phi, const CVector& input) {
    return run_circuit(full_circuit(phi), to_state(input)).amplitudes();
  }, py::arg("phi"), py::arg("input"));
  m.def("run_reduced_circuit", [](double phi, const CVector& input) {
    return run_circuit(reduced_circuit(phi), to_state(input)).amplitudes();
  }, py::arg("phi"), py::arg("input"));

  // optics
  m.def("optics_transfer_matrix", [](double phi) {
    return optics::postselected_transfer_matrix(optics::build_eqs_optics(phi));
  }, py::arg("phi") = 0.0);
  m.def("cz_pair_signs", &optics::expected_cz_pair_signs);
  m.def("run_optics", [](double phi, const CVector& input) {
    const auto ps = optics::run_eqs_optics(phi, to_state(input));
    py::dict d;
    d["amplitudes"] = ps.amplitudes;
    d["success_probability"] = ps.success_probability;
    d["state"] = ps.state ? py::cast(ps.state->amplitudes()) : py::none();
    return d;
  }, py::arg("phi"), py::arg("input"));

  // noise and counting
  m.def("apply_white_noise", [](const CMatrix& rho, double epsilon) {
    return noise::apply_white_noise(to_density(rho), noise::WhiteNoiseModel(epsilon)).matrix();
  }, py::arg("rho"), py::arg("epsilon"));
  m.def("embedded_concurrence", [](const CMatrix& rho) { return noise::embedded_concurrence(to_density(rho)); },
        py::arg("rho"));
  m.def("sample_observable", [](const CMatrix& rho, const std::string& pauli, std::uint64_t shots, std::uint64_t seed) {
    const auto s = noise::sample_observable(to_density(rho), PauliString::parse(pauli), shots, seed);
    py::dict d = estimate_dict(s.estimate.value, s.estimate.sigma);
    d["records"] = records_list(s.records);
    return d;
  }, py::arg("rho"), py::arg("pauli"), py::arg("shots"), py::arg("seed"));
  m.def("concurrence_from_counts", [](const std::vector<std::tuple<std::string, std::uint64_t, std::uint64_t>>& rows,
                                      std::uint64_t seed) {
    const auto e = noise::concurrence_from_counts(records_from(rows), seed);
    return estimate_dict(e.value, e.sigma);
  }, py::arg("records"), py::arg("seed") = 0);
  m.def("werner_concurrence", &noise::werner_concurrence, py::arg("epsilon"));
  m.def("werner_epsilon_for_concurrence", &noise::werner_epsilon_for_concurrence, py::arg("concurrence"));
  m.def("pump_fits", [] {
    py::dict d;
    for (const auto& [name, pts] : {std::pair{"tomography", noise::tomography_pump_points()},
                                    std::pair{"simulator", noise::simulator_pump_points()}}) {
      const auto f = noise::pump_model_fit(pts);
      d[name] = py::make_tuple(f.intercept, f.slope);
    }
    return d;
  });
  m.def("rates", [](double pump_percent) {
    const double f = pump_percent / 100.0;
    py::dict d;
    d["two_photon"] = noise::rate_pipeline_evaluate(noise::RatePipeline::two_photon(f));
    d["three_photon"] = noise::rate_pipeline_evaluate(noise::RatePipeline::three_photon(f));
    return d;
  }, py::arg("pump_percent") = 100.0);

  // tomography
  m.def("concurrence_mixed", [](const CMatrix& rho) { return tomography::concurrence_mixed(to_density(rho)); },
        py::arg("rho"));
  m.def("simulate_tomography_counts", [](const CMatrix& rho, std::uint64_t shots, std::uint64_t seed) {
    return records_list(tomography::simulate_tomography_counts(to_density(rho), shots, seed));
  }, py::arg("rho"), py::arg("shots_per_setting"), py::arg("seed"));
  m.def("reconstruct", [](const std::vector<std::tuple<std::string, std::uint64_t, std::uint64_t>>& rows) {
    const auto records = records_from(rows);
    return tomography::linear_inversion(tomography::expectations_from_counts(records)).density().matrix();
  }, py::arg("records"));
  m.def("concurrence_from_tomography", [](const std::vector<std::tuple<std::string, std::uint64_t, std::uint64_t>>& rows,
                                          int resamples, std::uint64_t seed) {
    const auto e = tomography::concurrence_from_tomography(records_from(rows), resamples, seed);
    py::dict d = estimate_dict(e.value, e.sigma);
    d["projected"] = e.projected;
    return d;
  }, py::arg("records"), py::arg("resamples") = cli::kTomographyResamples, py::arg("seed") = 0);

  // experiment drivers
  m.def("concurrence_sweep", [](const std::vector<double>& gt, const std::string& mode, std::optional<double> epsilon,
                                std::optional<double> pump, std::uint64_t shots, std::uint64_t seed, int jobs) {
    py::list rows;
    for (const auto& r : cli::concurrence_sweep(make_config(mode, gt, epsilon, pump, shots, seed, jobs))) {
      py::dict d;
      d["gt"] = r.gt;
      d["epsilon"] = r.epsilon;
      d["c_exact"] = r.c_exact;
      d["c_estimate"] = r.c_estimate;
      d["c_sigma"] = r.c_sigma;
      d["shots"] = r.shots;
      d["seed"] = r.seed;
      d["c_reference"] = r.c_reference;
      rows.append(d);
    }
    return rows;
  }, py::arg("gt"), py::arg("mode") = "exact", py::arg("epsilon") = py::none(), py::arg("pump") = py::none(),
     py::arg("shots") = 0, py::arg("seed") = 1, py::arg("jobs") = 1);
  m.def("tomography_run", [](const std::vector<double>& gt, std::optional<double> epsilon, std::optional<double> pump,
                             std::uint64_t shots, std::uint64_t seed, int jobs) {
    const auto result = cli::tomography_run(make_config("tomography", gt, epsilon, pump, shots, seed, jobs));
    py::list rows;
    for (const auto& r : result.rows) {
      py::dict d;
      d["gt"] = r.gt;
      d["epsilon"] = r.epsilon;
      d["c_exact"] = r.c_exact;
      d["c_estimate"] = r.c_estimate;
      d["c_sigma"] = r.c_sigma;
      d["projected"] = r.projected;
      d["seed"] = r.seed;
      d["c_reference"] = r.c_reference;
      rows.append(d);
    }
    py::dict fit;
    fit["werner_epsilon"] = result.fit.werner_epsilon;
    fit["amplitude"] = result.fit.amplitude;
    fit["proportional_amplitude"] = result.fit.proportional_amplitude;
    fit["rms_residual"] = result.fit.rms_residual;
    py::dict out;
    out["rows"] = rows;
    out["fit"] = fit;
    return out;
  }, py::arg("gt"), py::arg("epsilon") = py::none(), py::arg("pump") = py::none(), py::arg("shots") = 100000,
     py::arg("seed") = 1, py::arg("jobs") = 1);
  m.def("verify", [] {
    py::list out;
    for (const auto& c : run_invariant_suite()) out.append(py::make_tuple(c.name, c.passed, c.detail));
    return out;
  });
  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
