#include "eqsim/counts.hpp"

#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace eqsim {

Projector parse_projector(char c) {
  switch (c) {
    case 'h': case 'H': return Projector::h;
    case 'v': case 'V': return Projector::v;
    case 'd': case 'D': return Projector::d;
    case 'a': case 'A': return Projector::a;
    case 'r': case 'R': return Projector::r;
    case 'l': case 'L': return Projector::l;
    default: throw std::invalid_argument(std::string("unknown projector label '") + c + "'");
  }
}

CVector projector_ket(Projector p) {
  return StateVector::product(std::string(1, static_cast<char>(p))).amplitudes();
}

std::pair<Projector, Projector> eigenbasis(Pauli p) {
  switch (p) {
    case Pauli::X: return {Projector::d, Projector::a};
    case Pauli::Y: return {Projector::r, Projector::l};
    case Pauli::I:
    case Pauli::Z: return {Projector::h, Projector::v};
  }
  throw std::logic_error("unhandled Pauli");
}

ProjectionSetting::ProjectionSetting(std::vector<Projector> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw std::invalid_argument("projection setting needs at least one label");
}

ProjectionSetting ProjectionSetting::parse(std::string_view text) {
  std::vector<Projector> labels;
  for (char c : text) labels.push_back(parse_projector(c));
  return ProjectionSetting(std::move(labels));
}

std::string ProjectionSetting::str() const {
  std::string s;
  for (Projector p : labels_) s.push_back(static_cast<char>(p));
  return s;
}

CVector ProjectionSetting::ket() const {
  CVector k = projector_ket(labels_.front());
  for (std::size_t i = 1; i < labels_.size(); ++i) k = tensor(k, projector_ket(labels_[i]));
  return k;
}

double ProjectionSetting::born_probability(const DensityMatrix& rho) const {
  if (static_cast<int>(labels_.size()) != rho.n_qubits()) {
    throw DimensionError("projection setting size does not match the state");
  }
  const CVector k = ket();
  return std::max(0.0, k.dot(rho.matrix() * k).real());
}

std::vector<std::pair<ProjectionSetting, int>> eigenprojector_settings(const PauliString& p) {
  const std::size_t n = p.size();
  std::vector<std::pair<ProjectionSetting, int>> out;
  for (std::size_t outcome = 0; outcome < (std::size_t{1} << n); ++outcome) {
    std::vector<Projector> labels;
    int sign = 1;
    for (std::size_t q = 0; q < n; ++q) {
      const bool minus = (outcome >> (n - 1 - q)) & 1U;
      const auto [plus_proj, minus_proj] = eigenbasis(p[q]);
      labels.push_back(minus ? minus_proj : plus_proj);
      if (minus && p[q] != Pauli::I) sign = -sign;
    }
    out.emplace_back(ProjectionSetting(std::move(labels)), sign);
  }
  return out;
}

int eigenvalue_sign(const ProjectionSetting& setting, const PauliString& p) {
  if (setting.size() != p.size()) return 0;
  int sign = 1;
  for (std::size_t q = 0; q < p.size(); ++q) {
    const auto [plus_proj, minus_proj] = eigenbasis(p[q]);
    if (setting[q] == minus_proj) {
      if (p[q] != Pauli::I) sign = -sign;
    } else if (setting[q] != plus_proj) {
      return 0;
    }
  }
  return sign;
}

std::uint64_t draw_poisson(double mean, Rng& rng) {
  if (mean < 0.0) throw std::invalid_argument("Poisson mean must be non-negative");
  if (mean == 0.0) return 0;
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(rng);
}

void write_counts_csv(std::ostream& os, std::span<const CountRecord> records) {
  const std::size_t n = records.empty() ? 2 : records.front().setting.size();
  for (std::size_t q = 1; q <= n; ++q) os << "setting_q" << q << ',';
  os << "counts,shots\n";
  for (const auto& r : records) {
    if (r.setting.size() != n) throw std::invalid_argument("mixed setting sizes in one count table");
    for (Projector p : r.setting.labels()) os << static_cast<char>(p) << ',';
    os << r.counts << ',' << r.total_shots << '\n';
  }
}

std::vector<CountRecord> read_counts_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("empty count table");
  std::size_t columns = 1;
  for (char c : line) columns += c == ',' ? 1 : 0;
  if (columns < 3 || line.rfind("setting_q1", 0) != 0) throw std::invalid_argument("bad count table header");
  const std::size_t n = columns - 2;
  std::vector<CountRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<Projector> labels;
    for (std::size_t q = 0; q < n; ++q) {
      std::getline(ss, cell, ',');
      if (cell.size() != 1) throw std::invalid_argument("bad projector cell '" + cell + "'");
      labels.push_back(parse_projector(cell[0]));
    }
    CountRecord r{ProjectionSetting(std::move(labels)), 0, 1};
    std::getline(ss, cell, ',');
    r.counts = std::stoull(cell);
    std::getline(ss, cell, ',');
    r.total_shots = std::stoull(cell);
    if (r.total_shots == 0) throw std::invalid_argument("shots must be positive");
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace eqsim
