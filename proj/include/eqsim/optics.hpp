#pragma once

// Fock-space simulation of polarization-encoded linear optics.
//
// A photonic qubit k lives in spatial mode k with |h> == |0>, |v> == |1>.
// Elements act linearly on creation operators:
//   a_in^dagger(modes[c]) -> sum_r matrix(r, c) a_out^dagger(modes[r])
// and multi-photon amplitudes follow from expanding creation-operator
// monomials through those substitutions.

#include "eqsim/qstate.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace eqsim::optics {

enum class Polarization : std::uint8_t { H = 0, V = 1 };

struct OpticalMode {
  int spatial;
  Polarization pol;

  int index() const { return 2 * spatial + static_cast<int>(pol); }
  std::string label() const;  // e.g. "0h", "3v"

  friend auto operator<=>(const OpticalMode&, const OpticalMode&) = default;
};

/// Linear substitution on a subset of modes, columns are images of input modes.
struct ModeTransform {
  std::vector<int> modes;  // mode indices (OpticalMode::index)
  CMatrix matrix;

  bool is_unitary(double tolerance = tol::kConstruction) const;
};

enum class PpbsType { Type1, Type2 };

/// Sign convention of the reflected port. Unsigned exists only to inject faults.
enum class PpbsSign { ReflectedMinus, Unsigned };

/// Transmittances (t_h, t_v): type 1 = (1, 1/3), type 2 = (1/3, 1).
std::pair<double, double> ppbs_transmittances(PpbsType type);

/// Per polarization p with transmittance t:
///   a_out(i) = sqrt(t) a_in(i) + sqrt(1-t) a_in(j)
///   a_out(j) = sqrt(1-t) a_in(i) - sqrt(t) a_in(j)
/// The 2x2 block is symmetric and self-inverse, so it also maps inputs to outputs.
ModeTransform beam_splitter_transform(double t_h, double t_v, int port_i, int port_j,
                                      PpbsSign sign = PpbsSign::ReflectedMinus);
ModeTransform ppbs_mode_transform(PpbsType type, int port_i, int port_j,
                                  PpbsSign sign = PpbsSign::ReflectedMinus);

/// h -> cos 2theta h + sin 2theta v,  v -> sin 2theta h - cos 2theta v.
/// A reflection: hwp(theta) = Ry(2 theta) * Z in qubit language.
ModeTransform hwp_mode_transform(int spatial, double theta);

class LinearOpticalElement {
 public:
  enum class Kind { PPBS1, PPBS2, BeamSplitter, HWP, GlanTaylor };

  static LinearOpticalElement ppbs(PpbsType type, int port_i, int port_j,
                                   PpbsSign sign = PpbsSign::ReflectedMinus);
  static LinearOpticalElement beam_splitter(double t_h, double t_v, int port_i, int port_j);
  static LinearOpticalElement hwp(int spatial, double theta);
  /// Transmits h; v is routed into loss_port.
  static LinearOpticalElement glan_taylor(int spatial, int loss_port);

  Kind kind() const { return kind_; }
  const std::vector<int>& ports() const { return ports_; }
  double theta() const { return theta_; }
  double t_h() const { return t_h_; }
  double t_v() const { return t_v_; }
  PpbsSign sign() const { return sign_; }
  std::string kind_name() const;

  ModeTransform transform() const;

  friend bool operator==(const LinearOpticalElement&, const LinearOpticalElement&) = default;

 private:
  LinearOpticalElement(Kind kind, std::vector<int> ports, double theta, double t_h, double t_v, PpbsSign sign);

  Kind kind_;
  std::vector<int> ports_;
  double theta_ = 0.0;
  double t_h_ = 1.0;
  double t_v_ = 1.0;
  PpbsSign sign_ = PpbsSign::ReflectedMinus;
};

using OpticalCircuit = std::vector<LinearOpticalElement>;

/// Number of spatial modes touched by the circuit (max port + 1).
int required_spatial_modes(std::span<const LinearOpticalElement> circuit);

using Occupation = std::vector<std::uint8_t>;

/// Sparse amplitudes over photon-occupation patterns with a fixed photon number.
class FockAmplitudeMap {
 public:
  explicit FockAmplitudeMap(int n_spatial);

  /// coefficient * prod_k a^dagger(photons[k]) |vac>, expressed in the normalized occupation basis.
  static FockAmplitudeMap monomial(int n_spatial, std::span<const OpticalMode> photons, Complex coefficient = 1.0);

  int n_spatial() const { return n_spatial_; }
  int n_modes() const { return 2 * n_spatial_; }
  /// -1 while empty.
  int photon_number() const { return photon_number_; }
  const std::map<Occupation, Complex>& entries() const { return entries_; }

  /// Accumulates into an occupation pattern; throws if its photon number differs.
  void add(const Occupation& occupation, Complex amplitude);
  Complex amplitude(const Occupation& occupation) const;
  double total_probability() const;
  void prune(double min_probability = 1e-30);

  FockAmplitudeMap& operator+=(const FockAmplitudeMap& other);

 private:
  int n_spatial_;
  int photon_number_ = -1;
  std::map<Occupation, Complex> entries_;
};

/// One photon per qubit: qubit k in spatial mode k, polarization from its bit.
FockAmplitudeMap dual_rail_encode(const StateVector& psi, int n_spatial);

inline constexpr int kMaxPhotons = 4;

FockAmplitudeMap apply_transform(const FockAmplitudeMap& state, const ModeTransform& transform);

/// Throws std::invalid_argument above kMaxPhotons photons or on ports outside the state's modes.
FockAmplitudeMap propagate(const FockAmplitudeMap& state, std::span<const LinearOpticalElement> elements);

struct PostSelection {
  /// Unnormalized amplitudes of the kept terms, indexed as qubit basis states.
  CVector amplitudes;
  double success_probability = 0.0;
  /// Renormalized conditional state; empty when nothing survives.
  std::optional<StateVector> state;
};

/// Keeps terms with exactly one photon in each of the spatial modes 0..n_lines-1.
PostSelection postselect_coincidence(const FockAmplitudeMap& state, int n_lines = 3);

/// Two concatenated CZ gates, both controlled by mode 0, with loss ports 3 and 4.
OpticalCircuit cz_pair_network(PpbsSign sign = PpbsSign::ReflectedMinus);

/// Plates realizing Ry(phi) on mode 0: a theta=0 plate then one at phi/2.
OpticalCircuit ry_plates(double phi);

/// ry_plates(phi) followed by cz_pair_network.
OpticalCircuit build_eqs_optics(double phi, PpbsSign sign = PpbsSign::ReflectedMinus);

/// 8x8 matrix of post-selected output amplitudes for each computational-basis input.
CMatrix postselected_transfer_matrix(std::span<const LinearOpticalElement> circuit, int n_lines = 3);

/// Signs of the ideal two-CZ transformation b_x c_y d_z -> +-b_x c_y d_z, basis order hhh..vvv.
std::array<int, 8> expected_cz_pair_signs();

/// Conditional output state of build_eqs_optics(phi) for a 3-qubit polarization input.
PostSelection run_eqs_optics(double phi, const StateVector& input, PpbsSign sign = PpbsSign::ReflectedMinus);

}  // namespace eqsim::optics
