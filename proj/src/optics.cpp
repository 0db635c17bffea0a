#include "eqsim/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace eqsim::optics {

namespace {

int mode_index(int spatial, Polarization pol) { return OpticalMode{spatial, pol}.index(); }

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

int photons_in(const Occupation& occ) { return std::accumulate(occ.begin(), occ.end(), 0); }

}  // namespace

std::string OpticalMode::label() const {
  return std::to_string(spatial) + (pol == Polarization::H ? "h" : "v");
}

bool ModeTransform::is_unitary(double tolerance) const {
  const auto n = matrix.rows();
  return max_abs_diff(matrix.adjoint() * matrix, CMatrix::Identity(n, n)) <= tolerance;
}

std::pair<double, double> ppbs_transmittances(PpbsType type) {
  return type == PpbsType::Type1 ? std::pair{1.0, 1.0 / 3.0} : std::pair{1.0 / 3.0, 1.0};
}

ModeTransform beam_splitter_transform(double t_h, double t_v, int port_i, int port_j, PpbsSign sign) {
  if (port_i == port_j) throw std::invalid_argument("beam splitter needs distinct ports");
  for (double t : {t_h, t_v}) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("transmittance must lie in [0, 1]");
  }
  ModeTransform out;
  out.modes = {mode_index(port_i, Polarization::H), mode_index(port_j, Polarization::H),
               mode_index(port_i, Polarization::V), mode_index(port_j, Polarization::V)};
  out.matrix = CMatrix::Zero(4, 4);
  const double reflected_sign = sign == PpbsSign::ReflectedMinus ? -1.0 : 1.0;
  for (int block = 0; block < 2; ++block) {
    const double t = block == 0 ? t_h : t_v;
    const double st = std::sqrt(t);
    const double sr = std::sqrt(1.0 - t);
    const int o = 2 * block;
    out.matrix(o + 0, o + 0) = st;
    out.matrix(o + 1, o + 0) = sr;
    out.matrix(o + 0, o + 1) = sr;
    out.matrix(o + 1, o + 1) = reflected_sign * st;
  }
  return out;
}

ModeTransform ppbs_mode_transform(PpbsType type, int port_i, int port_j, PpbsSign sign) {
  const auto [t_h, t_v] = ppbs_transmittances(type);
  return beam_splitter_transform(t_h, t_v, port_i, port_j, sign);
}

ModeTransform hwp_mode_transform(int spatial, double theta) {
  const double c = std::cos(2.0 * theta);
  const double s = std::sin(2.0 * theta);
  ModeTransform out;
  out.modes = {mode_index(spatial, Polarization::H), mode_index(spatial, Polarization::V)};
  out.matrix.resize(2, 2);
  out.matrix << c, s, s, -c;
  return out;
}

// ---- LinearOpticalElement -------------------------------------------------

LinearOpticalElement::LinearOpticalElement(Kind kind, std::vector<int> ports, double theta, double t_h, double t_v,
                                           PpbsSign sign)
    : kind_(kind), ports_(std::move(ports)), theta_(theta), t_h_(t_h), t_v_(t_v), sign_(sign) {
  for (int p : ports_) {
    if (p < 0) throw std::invalid_argument("optical port labels must be non-negative");
  }
  if (ports_.size() == 2 && ports_[0] == ports_[1]) {
    throw std::invalid_argument("two-port element needs distinct ports");
  }
}

LinearOpticalElement LinearOpticalElement::ppbs(PpbsType type, int port_i, int port_j, PpbsSign sign) {
  const auto [t_h, t_v] = ppbs_transmittances(type);
  return {type == PpbsType::Type1 ? Kind::PPBS1 : Kind::PPBS2, {port_i, port_j}, 0.0, t_h, t_v, sign};
}

LinearOpticalElement LinearOpticalElement::beam_splitter(double t_h, double t_v, int port_i, int port_j) {
  return {Kind::BeamSplitter, {port_i, port_j}, 0.0, t_h, t_v, PpbsSign::ReflectedMinus};
}

LinearOpticalElement LinearOpticalElement::hwp(int spatial, double theta) {
  return {Kind::HWP, {spatial}, theta, 1.0, 1.0, PpbsSign::ReflectedMinus};
}

LinearOpticalElement LinearOpticalElement::glan_taylor(int spatial, int loss_port) {
  return {Kind::GlanTaylor, {spatial, loss_port}, 0.0, 1.0, 0.0, PpbsSign::ReflectedMinus};
}

std::string LinearOpticalElement::kind_name() const {
  switch (kind_) {
    case Kind::PPBS1: return "PPBS1";
    case Kind::PPBS2: return "PPBS2";
    case Kind::BeamSplitter: return "BS";
    case Kind::HWP: return "HWP";
    case Kind::GlanTaylor: return "GT";
  }
  return "?";
}

ModeTransform LinearOpticalElement::transform() const {
  if (kind_ == Kind::HWP) return hwp_mode_transform(ports_[0], theta_);
  return beam_splitter_transform(t_h_, t_v_, ports_[0], ports_[1], sign_);
}

int required_spatial_modes(std::span<const LinearOpticalElement> circuit) {
  int n = 0;
  for (const auto& e : circuit) {
    for (int p : e.ports()) n = std::max(n, p + 1);
  }
  return n;
}

// ---- FockAmplitudeMap -----------------------------------------------------

FockAmplitudeMap::FockAmplitudeMap(int n_spatial) : n_spatial_(n_spatial) {
  if (n_spatial_ < 1) throw std::invalid_argument("FockAmplitudeMap needs at least one spatial mode");
}

FockAmplitudeMap FockAmplitudeMap::monomial(int n_spatial, std::span<const OpticalMode> photons,
                                            Complex coefficient) {
  FockAmplitudeMap out(n_spatial);
  Occupation occ(static_cast<std::size_t>(out.n_modes()), 0);
  for (const OpticalMode& m : photons) {
    if (m.spatial < 0 || m.spatial >= n_spatial) throw std::invalid_argument("photon mode outside the map");
    ++occ[static_cast<std::size_t>(m.index())];
  }
  // (a^dagger)^n |0> = sqrt(n!) |n>
  double weight = 1.0;
  for (auto n : occ) weight *= factorial(n);
  out.add(occ, coefficient * std::sqrt(weight));
  return out;
}

void FockAmplitudeMap::add(const Occupation& occupation, Complex amplitude) {
  if (occupation.size() != static_cast<std::size_t>(n_modes())) {
    throw std::invalid_argument("occupation vector length does not match the mode count");
  }
  const int n = photons_in(occupation);
  if (photon_number_ < 0) {
    photon_number_ = n;
  } else if (n != photon_number_) {
    throw std::invalid_argument("photon number " + std::to_string(n) + " differs from " +
                                std::to_string(photon_number_));
  }
  entries_[occupation] += amplitude;
}

Complex FockAmplitudeMap::amplitude(const Occupation& occupation) const {
  auto it = entries_.find(occupation);
  return it == entries_.end() ? Complex{} : it->second;
}

double FockAmplitudeMap::total_probability() const {
  double p = 0.0;
  for (const auto& [occ, amp] : entries_) p += std::norm(amp);
  return p;
}

void FockAmplitudeMap::prune(double min_probability) {
  std::erase_if(entries_, [&](const auto& kv) { return std::norm(kv.second) < min_probability; });
}

FockAmplitudeMap& FockAmplitudeMap::operator+=(const FockAmplitudeMap& other) {
  if (other.n_spatial_ != n_spatial_) throw std::invalid_argument("mode count mismatch");
  for (const auto& [occ, amp] : other.entries_) add(occ, amp);
  return *this;
}

FockAmplitudeMap dual_rail_encode(const StateVector& psi, int n_spatial) {
  const int n = psi.n_qubits();
  if (n_spatial < n) throw std::invalid_argument("not enough spatial modes for the register");
  FockAmplitudeMap out(n_spatial);
  for (std::size_t idx = 0; idx < psi.dim(); ++idx) {
    if (psi[idx] == Complex{}) continue;
    Occupation occ(static_cast<std::size_t>(out.n_modes()), 0);
    for (int q = 0; q < n; ++q) {
      const auto pol = ((idx >> (n - 1 - q)) & 1U) ? Polarization::V : Polarization::H;
      occ[static_cast<std::size_t>(mode_index(q, pol))] = 1;
    }
    out.add(occ, psi[idx]);
  }
  return out;
}

// ---- propagation ----------------------------------------------------------

FockAmplitudeMap apply_transform(const FockAmplitudeMap& state, const ModeTransform& transform) {
  const auto k = static_cast<int>(transform.modes.size());
  for (int m : transform.modes) {
    if (m < 0 || m >= state.n_modes()) {
      throw std::invalid_argument("element port outside the state's spatial modes");
    }
  }
  FockAmplitudeMap out(state.n_spatial());
  std::vector<int> photon_columns;
  std::vector<int> choice;
  for (const auto& [occ, amp] : state.entries()) {
    Occupation base = occ;
    photon_columns.clear();
    double input_weight = 1.0;
    for (int c = 0; c < k; ++c) {
      const auto m = static_cast<std::size_t>(transform.modes[static_cast<std::size_t>(c)]);
      for (int r = 0; r < occ[m]; ++r) photon_columns.push_back(c);
      input_weight *= factorial(occ[m]);
      base[m] = 0;
    }
    if (photon_columns.empty()) {
      out.add(occ, amp);
      continue;
    }
    // |n> = prod (a^dagger)^n / sqrt(n!) |0>; substitute each a^dagger and
    // re-normalize the output monomial with sqrt(m!).
    const Complex prefactor = amp / std::sqrt(input_weight);
    const auto n_photons = photon_columns.size();
    choice.assign(n_photons, 0);
    while (true) {
      Complex coeff = prefactor;
      for (std::size_t p = 0; p < n_photons && coeff != Complex{}; ++p) {
        coeff *= transform.matrix(choice[p], photon_columns[p]);
      }
      if (coeff != Complex{}) {
        Occupation o = base;
        for (std::size_t p = 0; p < n_photons; ++p) {
          ++o[static_cast<std::size_t>(transform.modes[static_cast<std::size_t>(choice[p])])];
        }
        double output_weight = 1.0;
        for (int m : transform.modes) output_weight *= factorial(o[static_cast<std::size_t>(m)]);
        out.add(o, coeff * std::sqrt(output_weight));
      }
      std::size_t p = 0;
      while (p < n_photons && ++choice[p] == k) choice[p++] = 0;
      if (p == n_photons) break;
    }
  }
  out.prune();
  return out;
}

FockAmplitudeMap propagate(const FockAmplitudeMap& state, std::span<const LinearOpticalElement> elements) {
  if (state.photon_number() > kMaxPhotons) {
    throw std::invalid_argument("photon number " + std::to_string(state.photon_number()) + " exceeds the bound of " +
                                std::to_string(kMaxPhotons));
  }
  if (required_spatial_modes(elements) > state.n_spatial()) {
    throw std::invalid_argument("optical circuit addresses spatial modes beyond the state");
  }
  FockAmplitudeMap current = state;
  for (const auto& e : elements) current = apply_transform(current, e.transform());
  return current;
}

PostSelection postselect_coincidence(const FockAmplitudeMap& state, int n_lines) {
  if (n_lines < 1 || n_lines > state.n_spatial()) throw std::invalid_argument("invalid number of detection lines");
  PostSelection out;
  out.amplitudes = CVector::Zero(Eigen::Index{1} << n_lines);
  for (const auto& [occ, amp] : state.entries()) {
    std::size_t index = 0;
    bool keep = true;
    for (int line = 0; line < n_lines && keep; ++line) {
      const int h = occ[static_cast<std::size_t>(mode_index(line, Polarization::H))];
      const int v = occ[static_cast<std::size_t>(mode_index(line, Polarization::V))];
      keep = h + v == 1;
      index = (index << 1U) | static_cast<std::size_t>(v);
    }
    if (keep && photons_in(occ) == n_lines) out.amplitudes(static_cast<Eigen::Index>(index)) += amp;
  }
  out.success_probability = out.amplitudes.squaredNorm();
  if (out.success_probability > 0.0) out.state = StateVector::normalized(out.amplitudes);
  return out;
}

// ---- the simulator network ------------------------------------------------

OpticalCircuit cz_pair_network(PpbsSign sign) {
  using E = LinearOpticalElement;
  const double quarter = std::numbers::pi / 4.0;
  // Mode 0 (control) v-rail meets mode 1 at the first PPBS1. After the X plate
  // the control's h-rail meets mode 2 at the second PPBS1; the final Z plate on
  // mode 2 turns (-1)^{(1-b) d} into (-1)^{b d}. PPBS2's against vacuum ports
  // 3 and 4 balance the targets' h amplitudes to 1/sqrt(3).
  return {
      E::ppbs(PpbsType::Type1, 0, 1, sign),
      E::ppbs(PpbsType::Type2, 1, 3, sign),
      E::hwp(0, quarter),
      E::ppbs(PpbsType::Type1, 0, 2, sign),
      E::ppbs(PpbsType::Type2, 2, 4, sign),
      E::hwp(0, quarter),
      E::hwp(2, 0.0),
  };
}

OpticalCircuit ry_plates(double phi) {
  return {LinearOpticalElement::hwp(0, 0.0), LinearOpticalElement::hwp(0, phi / 2.0)};
}

OpticalCircuit build_eqs_optics(double phi, PpbsSign sign) {
  OpticalCircuit c = ry_plates(phi);
  const OpticalCircuit cz = cz_pair_network(sign);
  c.insert(c.end(), cz.begin(), cz.end());
  return c;
}

CMatrix postselected_transfer_matrix(std::span<const LinearOpticalElement> circuit, int n_lines) {
  const int n_spatial = std::max(required_spatial_modes(circuit), n_lines);
  const auto d = Eigen::Index{1} << n_lines;
  CMatrix t(d, d);
  for (Eigen::Index col = 0; col < d; ++col) {
    const auto input = dual_rail_encode(StateVector::basis(n_lines, static_cast<std::size_t>(col)), n_spatial);
    t.col(col) = postselect_coincidence(propagate(input, circuit), n_lines).amplitudes;
  }
  return t;
}

std::array<int, 8> expected_cz_pair_signs() {
  std::array<int, 8> signs{};
  for (int idx = 0; idx < 8; ++idx) {
    const int b = (idx >> 2) & 1;
    const int c = (idx >> 1) & 1;
    const int d = idx & 1;
    signs[static_cast<std::size_t>(idx)] = (b * (c + d)) % 2 == 0 ? 1 : -1;
  }
  return signs;
}

PostSelection run_eqs_optics(double phi, const StateVector& input, PpbsSign sign) {
  if (input.n_qubits() != 3) throw DimensionError("run_eqs_optics needs a 3-qubit input");
  const OpticalCircuit circuit = build_eqs_optics(phi, sign);
  const auto fock = dual_rail_encode(input, required_spatial_modes(circuit));
  return postselect_coincidence(propagate(fock, circuit), 3);
}

}  // namespace eqsim::optics
