#include "eqsim/serialize.hpp"

#include <algorithm>
#include <stdexcept>

namespace eqsim::io {

namespace {

void check_n_qubits(const json& j, std::size_t elements, int power) {
  const int n = j.at("n_qubits").get<int>();
  if (n < 1 || elements != (std::size_t{1} << (power * n))) {
    throw std::invalid_argument("JSON array length does not match n_qubits");
  }
}

std::vector<Complex> read_complex(const json& j) {
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != im.size()) throw std::invalid_argument("re and im arrays differ in length");
  std::vector<Complex> out(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) out[i] = {re[i], im[i]};
  return out;
}

optics::LinearOpticalElement::Kind parse_kind(const std::string& s) {
  using K = optics::LinearOpticalElement::Kind;
  if (s == "PPBS1") return K::PPBS1;
  if (s == "PPBS2") return K::PPBS2;
  if (s == "BS") return K::BeamSplitter;
  if (s == "HWP") return K::HWP;
  if (s == "GT") return K::GlanTaylor;
  throw std::invalid_argument("unknown optical element kind '" + s + "'");
}

}  // namespace

json to_json(const CVector& v, int n_qubits) {
  json j;
  j["n_qubits"] = n_qubits;
  std::vector<double> re(static_cast<std::size_t>(v.size()));
  std::vector<double> im(re.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re[static_cast<std::size_t>(i)] = v(i).real();
    im[static_cast<std::size_t>(i)] = v(i).imag();
  }
  j["re"] = re;
  j["im"] = im;
  return j;
}

json to_json(const CMatrix& m, int n_qubits) {
  json j;
  j["n_qubits"] = n_qubits;
  std::vector<double> re;
  std::vector<double> im;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  }
  j["re"] = re;
  j["im"] = im;
  return j;
}

json to_json(const StateVector& psi) { return to_json(psi.amplitudes(), psi.n_qubits()); }
json to_json(const DensityMatrix& rho) { return to_json(rho.matrix(), rho.n_qubits()); }
json to_json(const UnitaryMatrix& u) { return to_json(u.matrix(), u.n_qubits()); }

json to_json(const Circuit& c) {
  json out = json::array();
  for (const Gate& g : c.gates()) out.push_back({{"gate", g.name()}, {"qubits", g.qubits()}, {"angle", g.angle}});
  return out;
}

json to_json(const optics::OpticalCircuit& c) {
  using K = optics::LinearOpticalElement::Kind;
  json out = json::array();
  for (const auto& e : c) {
    json j = {{"kind", e.kind_name()}, {"ports", e.ports()}, {"theta", e.theta()}};
    if (e.kind() == K::BeamSplitter) {
      j["t_h"] = e.t_h();
      j["t_v"] = e.t_v();
    }
    out.push_back(std::move(j));
  }
  return out;
}

json to_json(const optics::FockAmplitudeMap& m) {
  json out = json::array();
  for (const auto& [occ, amp] : m.entries()) {
    json occupations = json::object();
    for (std::size_t k = 0; k < occ.size(); ++k) {
      if (occ[k] == 0) continue;
      const optics::OpticalMode mode{static_cast<int>(k / 2), k % 2 == 0 ? optics::Polarization::H
                                                                          : optics::Polarization::V};
      occupations[mode.label()] = occ[k];
    }
    out.push_back({{"occupations", occupations}, {"re", amp.real()}, {"im", amp.imag()}});
  }
  return out;
}

CVector vector_from_json(const json& j) {
  const auto values = read_complex(j);
  check_n_qubits(j, values.size(), 1);
  CVector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
  return v;
}

CMatrix matrix_from_json(const json& j) {
  const auto values = read_complex(j);
  check_n_qubits(j, values.size(), 2);
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << j.at("n_qubits").get<int>());
  CMatrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = values[static_cast<std::size_t>(r * d + c)];
  }
  return m;
}

StateVector state_from_json(const json& j) { return {j.at("n_qubits").get<int>(), vector_from_json(j)}; }
DensityMatrix density_from_json(const json& j) { return {j.at("n_qubits").get<int>(), matrix_from_json(j)}; }
UnitaryMatrix unitary_from_json(const json& j) { return UnitaryMatrix(matrix_from_json(j)); }

Circuit circuit_from_json(const json& j, int n_qubits) {
  std::vector<Gate> gates;
  int max_qubit = -1;
  for (const auto& g : j) {
    const auto name = g.at("gate").get<std::string>();
    const auto qubits = g.at("qubits").get<std::vector<int>>();
    const double angle = g.value("angle", 0.0);
    const std::size_t arity = name == "CZ" ? 2 : 1;
    if (qubits.size() != arity) throw std::invalid_argument("gate " + name + " expects " + std::to_string(arity) + " qubits");
    for (int q : qubits) max_qubit = std::max(max_qubit, q);
    if (name == "CZ") gates.push_back(Gate::cz(qubits[0], qubits[1]));
    else if (name == "RY") gates.push_back(Gate::ry(qubits[0], angle));
    else if (name == "X") gates.push_back(Gate::x(qubits[0]));
    else if (name == "Z") gates.push_back(Gate::z(qubits[0]));
    else throw std::invalid_argument("unknown gate '" + name + "'");
  }
  return {n_qubits > 0 ? n_qubits : max_qubit + 1, std::move(gates)};
}

optics::OpticalCircuit optical_circuit_from_json(const json& j) {
  using E = optics::LinearOpticalElement;
  using K = E::Kind;
  optics::OpticalCircuit out;
  for (const auto& e : j) {
    const K kind = parse_kind(e.at("kind").get<std::string>());
    const auto ports = e.at("ports").get<std::vector<int>>();
    const std::size_t arity = kind == K::HWP ? 1 : 2;
    if (ports.size() != arity) throw std::invalid_argument("optical element has the wrong number of ports");
    switch (kind) {
      case K::PPBS1: out.push_back(E::ppbs(optics::PpbsType::Type1, ports[0], ports[1])); break;
      case K::PPBS2: out.push_back(E::ppbs(optics::PpbsType::Type2, ports[0], ports[1])); break;
      case K::BeamSplitter:
        out.push_back(E::beam_splitter(e.at("t_h").get<double>(), e.at("t_v").get<double>(), ports[0], ports[1]));
        break;
      case K::HWP: out.push_back(E::hwp(ports[0], e.value("theta", 0.0))); break;
      case K::GlanTaylor: out.push_back(E::glan_taylor(ports[0], ports[1])); break;
    }
  }
  return out;
}

optics::FockAmplitudeMap fock_map_from_json(const json& j, int n_spatial) {
  optics::FockAmplitudeMap out(n_spatial);
  for (const auto& entry : j) {
    optics::Occupation occ(static_cast<std::size_t>(out.n_modes()), 0);
    for (const auto& [label, count] : entry.at("occupations").items()) {
      if (label.size() < 2) throw std::invalid_argument("bad mode label '" + label + "'");
      const int spatial = std::stoi(label.substr(0, label.size() - 1));
      const char pol = label.back();
      if (pol != 'h' && pol != 'v') throw std::invalid_argument("bad polarization in '" + label + "'");
      const optics::OpticalMode mode{spatial, pol == 'h' ? optics::Polarization::H : optics::Polarization::V};
      if (spatial < 0 || spatial >= n_spatial) throw std::invalid_argument("mode '" + label + "' outside the map");
      occ[static_cast<std::size_t>(mode.index())] = count.get<std::uint8_t>();
    }
    out.add(occ, {entry.at("re").get<double>(), entry.at("im").get<double>()});
  }
  return out;
}

}  // namespace eqsim::io
