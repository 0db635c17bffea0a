#pragma once

// Projective measurement settings and Poissonian count records.

#include "eqsim/qstate.hpp"
#include "eqsim/random.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eqsim {

/// Single-qubit projector labels: d=(h+v)/sqrt2, a=(h-v)/sqrt2, r=(h+iv)/sqrt2, l=(h-iv)/sqrt2.
enum class Projector : char { h = 'h', v = 'v', d = 'd', a = 'a', r = 'r', l = 'l' };

Projector parse_projector(char c);
CVector projector_ket(Projector p);

/// The two eigenprojectors of a single-qubit Pauli (I is measured in the h/v basis),
/// listed as (+1 eigenvector, -1 eigenvector).
std::pair<Projector, Projector> eigenbasis(Pauli p);

class ProjectionSetting {
 public:
  explicit ProjectionSetting(std::vector<Projector> labels);
  static ProjectionSetting parse(std::string_view text);  // "hd", "drr"

  std::size_t size() const { return labels_.size(); }
  Projector operator[](std::size_t i) const { return labels_[i]; }
  std::span<const Projector> labels() const { return labels_; }
  std::string str() const;

  CVector ket() const;
  double born_probability(const DensityMatrix& rho) const;

  friend auto operator<=>(const ProjectionSetting&, const ProjectionSetting&) = default;

 private:
  std::vector<Projector> labels_;
};

/// Counts registered for one projection setting. total_shots is the exposure:
/// the expected count for a projector with unit Born probability.
struct CountRecord {
  ProjectionSetting setting;
  std::uint64_t counts = 0;
  std::uint64_t total_shots = 1;

  double fraction() const { return static_cast<double>(counts) / static_cast<double>(total_shots); }
  /// Poisson: variance equals the observed count.
  double variance() const { return static_cast<double>(counts); }
};

/// The 2^n eigenprojector settings of a Pauli string and the eigenvalue (+1/-1) of each.
std::vector<std::pair<ProjectionSetting, int>> eigenprojector_settings(const PauliString& p);

/// +1/-1 eigenvalue of p for a setting built from its eigenbases; 0 if the setting does not measure p.
int eigenvalue_sign(const ProjectionSetting& setting, const PauliString& p);

std::uint64_t draw_poisson(double mean, Rng& rng);

/// CSV with header setting_q1,...,setting_qn,counts,shots.
void write_counts_csv(std::ostream& os, std::span<const CountRecord> records);
std::vector<CountRecord> read_counts_csv(std::istream& is);

}  // namespace eqsim
