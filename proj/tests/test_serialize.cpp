#include "eqsim/random.hpp"
#include "eqsim/serialize.hpp"

#include <doctest.h>

#include <numbers>

using namespace eqsim;
using namespace eqsim::io;

TEST_SUITE("serialize") {

TEST_CASE("state JSON layout and round trip") {
  Rng rng(71);
  const StateVector psi = random_state(2, rng);
  const json j = to_json(psi);
  CHECK(j.at("n_qubits") == 2);
  CHECK(j.at("re").size() == 4);
  CHECK(j.at("im").size() == 4);
  const StateVector back = state_from_json(json::parse(j.dump()));
  CHECK((back.amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("matrices are row-major") {
  CMatrix m(2, 2);
  m << 1, 2, 3, Complex(0, 4);
  const json j = to_json(m, 1);
  CHECK(j.at("re") == json::array({1.0, 2.0, 3.0, 0.0}));
  CHECK(j.at("im") == json::array({0.0, 0.0, 0.0, 4.0}));
  CHECK(matrix_from_json(j) == m);
}

TEST_CASE("density and unitary round trips validate") {
  Rng rng(72);
  const DensityMatrix rho = random_density(2, rng);
  CHECK(density_from_json(to_json(rho)).matrix() == rho.matrix());
  const UnitaryMatrix u = random_unitary(3, rng);
  CHECK(unitary_from_json(to_json(u)).matrix() == u.matrix());
  json bad = to_json(rho);
  bad["re"][0] = 5.0;
  CHECK_THROWS_AS(density_from_json(bad), InvariantError);
  json wrong = to_json(u);
  wrong["n_qubits"] = 2;
  CHECK_THROWS(unitary_from_json(wrong));
}

TEST_CASE("circuit JSON") {
  const Circuit c = full_circuit(0.25);
  const json j = to_json(c);
  REQUIRE(j.size() == 5);
  CHECK(j[0].at("gate") == "CZ");
  CHECK(j[0].at("qubits") == json::array({0, 2}));
  CHECK(j[2].at("gate") == "RY");
  CHECK(j[2].at("angle") == 0.25);
  const Circuit back = circuit_from_json(json::parse(j.dump()));
  CHECK(back.n_qubits() == 3);
  CHECK(back.gates() == c.gates());
  CHECK(circuit_from_json(j, 4).n_qubits() == 4);
  CHECK_THROWS(circuit_from_json(json::parse(R"([{"gate":"CNOT","qubits":[0,1]}])")));
  CHECK_THROWS(circuit_from_json(json::parse(R"([{"gate":"CZ","qubits":[0]}])")));
}

TEST_CASE("optical circuit JSON") {
  optics::OpticalCircuit c = optics::build_eqs_optics(0.6);
  c.push_back(optics::LinearOpticalElement::beam_splitter(0.5, 0.25, 0, 1));
  c.push_back(optics::LinearOpticalElement::glan_taylor(1, 3));
  const json j = to_json(c);
  CHECK(j[0].at("kind") == "HWP");
  CHECK(j[0].contains("ports"));
  CHECK(j[0].contains("theta"));
  const auto back = optical_circuit_from_json(json::parse(j.dump()));
  CHECK(back == c);
  CHECK_THROWS(optical_circuit_from_json(json::parse(R"([{"kind":"PRISM","ports":[0],"theta":0}])")));
}

TEST_CASE("Fock map JSON") {
  const auto out = optics::propagate(optics::dual_rail_encode(StateVector::product("h++"), 5), optics::build_eqs_optics(0.3));
  const json j = to_json(out);
  CHECK(j.is_array());
  CHECK(j[0].at("occupations").is_object());
  const auto back = fock_map_from_json(json::parse(j.dump()), 5);
  CHECK(back.entries() == out.entries());
}

}
