#include "eqsim/qstate.hpp"
#include "eqsim/random.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace eqsim;

namespace {
const double s2 = 1.0 / std::numbers::sqrt2;
}

TEST_SUITE("qstate") {

TEST_CASE("tensor of Z with Z on basis states") {
  const CMatrix zz = tensor(single_pauli(Pauli::Z), single_pauli(Pauli::Z));
  CHECK(oracle::max_abs(zz * StateVector::basis(2, 0).amplitudes(), StateVector::basis(2, 0).amplitudes()) == 0.0);
  CHECK(oracle::max_abs(zz * StateVector::basis(2, 1).amplitudes(), -StateVector::basis(2, 1).amplitudes()) == 0.0);
}

TEST_CASE("tensor of |0> and |+>") {
  const StateVector s = tensor(StateVector::product("0"), StateVector::product("+"));
  CVector want(4);
  want << s2, s2, 0, 0;
  CHECK(oracle::max_abs(s.amplitudes(), want) < 1e-15);
}

TEST_CASE("tensor matches the index-by-index Kronecker product and is associative") {
  Rng rng(7);
  for (int k = 0; k < 20; ++k) {
    const CMatrix a = random_hermitian(1, rng);
    const CMatrix b = random_hermitian(2, rng);
    const CMatrix c = random_hermitian(1, rng);
    CHECK(oracle::max_abs(tensor(a, b), oracle::kron(a, b)) < 1e-15);
    CHECK(oracle::max_abs(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) < 1e-14);
  }
}

TEST_CASE("pauli_matrix single labels") {
  CMatrix z(2, 2);
  z << 1, 0, 0, -1;
  CHECK(oracle::max_abs(pauli_matrix(PauliString::parse("Z")).matrix(), z) == 0.0);
  CMatrix y(2, 2);
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  CHECK(oracle::max_abs(pauli_matrix(PauliString::parse("Y")).matrix(), y) == 0.0);
}

TEST_CASE("every Pauli string squares to identity and is traceless unless identity") {
  const char labels[] = {'I', 'X', 'Y', 'Z'};
  for (int code = 0; code < 64; ++code) {
    std::string s{labels[code & 3], labels[(code >> 2) & 3], labels[(code >> 4) & 3]};
    const PauliString p = PauliString::parse(s);
    const CMatrix m = pauli_matrix(p).matrix();
    CHECK(oracle::max_abs(m * m, CMatrix::Identity(8, 8)) == 0.0);
    CHECK(is_hermitian(m));
    CHECK(oracle::max_abs(m, oracle::pauli_string(s)) == 0.0);
    if (p.is_identity()) {
      CHECK(std::abs(m.trace() - 8.0) == 0.0);
    } else {
      CHECK(std::abs(m.trace()) == 0.0);
    }
  }
}

TEST_CASE("PauliString parsing") {
  CHECK(PauliString::parse("x y y").str() == "XYY");
  CHECK_THROWS_AS(PauliString::parse("XQ"), std::invalid_argument);
  CHECK_THROWS_AS(PauliString::parse(""), std::invalid_argument);
}

TEST_CASE("expectation examples") {
  CHECK(expectation(StateVector::product("+"), PauliString::parse("X")) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(expectation(DensityMatrix::maximally_mixed(2), PauliString::parse("ZZ")) == 0.0);
  CHECK_THROWS_AS(expectation(StateVector::product("+"), PauliString::parse("XX")), DimensionError);
}

TEST_CASE("expectation on random density matrices is real") {
  Rng rng(11);
  for (int k = 0; k < 100; ++k) {
    const DensityMatrix rho = random_density(3, rng);
    CHECK_NOTHROW(expectation(rho, PauliString::parse("XYZ")));
    const Complex direct = (rho.matrix() * oracle::pauli_string("XYZ")).trace();
    CHECK(std::abs(direct.imag()) < 1e-10);
  }
}

TEST_CASE("apply_unitary examples") {
  Rng rng(3);
  const StateVector psi = random_state(2, rng);
  CHECK(oracle::max_abs(apply_unitary(UnitaryMatrix::identity(2), psi).amplitudes(), psi.amplitudes()) == 0.0);
  CHECK(oracle::max_abs(apply_unitary(pauli_matrix(PauliString::parse("X")), StateVector::basis(1, 0)).amplitudes(),
                        StateVector::basis(1, 1).amplitudes()) == 0.0);

  // cos(pi/4) |0++> - i sin(pi/4) YZZ |0++> with Y|0> = i|1>, Z|+> = |->
  const StateVector out =
      apply_unitary(pauli_exponential(PauliString::parse("YZZ"), std::numbers::pi / 4), StateVector::product("0++"));
  const CVector want = s2 * (StateVector::product("0++").amplitudes() + StateVector::product("1--").amplitudes());
  CHECK(oracle::max_abs(out.amplitudes(), want) < 1e-15);
  CHECK_THROWS_AS(apply_unitary(UnitaryMatrix::identity(3), psi), DimensionError);
}

TEST_CASE("apply_unitary preserves the norm") {
  Rng rng(5);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const StateVector out = apply_unitary(random_unitary(3, rng), random_state(3, rng));
    worst = std::max(worst, std::abs(out.amplitudes().squaredNorm() - 1.0));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("pauli_exponential closed form") {
  const PauliString yzz = PauliString::parse("YZZ");
  CHECK(oracle::max_abs(pauli_exponential(yzz, 0.0).matrix(), CMatrix::Identity(8, 8)) == 0.0);
  for (const char* s : {"X", "YY", "ZXI"}) {
    const PauliString p = PauliString::parse(s);
    const CMatrix m = pauli_matrix(p).matrix();
    CHECK(oracle::max_abs(pauli_exponential(p, std::numbers::pi / 2).matrix(), Complex(0, -1) * m) < 1e-15);
  }
  Rng rng(9);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  for (int k = 0; k < 50; ++k) {
    const double gt = angle(rng);
    CHECK(oracle::max_abs(pauli_exponential(yzz, gt).matrix(),
                          oracle::expm_evolution(oracle::pauli_string("YZZ"), gt)) < 1e-12);
  }
}

TEST_CASE("hermitian_evolution agrees with the Pade exponential") {
  Rng rng(13);
  for (int k = 0; k < 20; ++k) {
    const CMatrix h = random_hermitian(3, rng);
    CHECK(oracle::max_abs(hermitian_evolution(h, 0.7).matrix(), oracle::expm_evolution(h, 0.7)) < 1e-12);
  }
  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_evolution(bad, 1.0), InvariantError);
}

TEST_CASE("constructors enforce invariants") {
  CVector v(4);
  v << 1, 0, 0, 0;
  CHECK_THROWS_AS(StateVector(3, v), DimensionError);
  CHECK_THROWS_AS(StateVector(2, 1.001 * v), InvariantError);
  CHECK_NOTHROW(StateVector(2, (1.0 + 1e-13) * v));
  CHECK_THROWS_AS(StateVector::normalized(CVector::Zero(4)), InvariantError);
  CHECK_THROWS_AS(StateVector::normalized(CVector::Ones(3)), DimensionError);

  CMatrix m = CMatrix::Identity(4, 4) / 4.0;
  CHECK_NOTHROW(DensityMatrix(2, m));
  CMatrix not_herm = m;
  not_herm(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix(2, not_herm), InvariantError);
  CHECK_THROWS_AS(DensityMatrix(2, 2.0 * m), InvariantError);
  CMatrix negative = CMatrix::Zero(4, 4);
  negative.diagonal() << 1.2, -0.2, 0, 0;
  CHECK_THROWS_AS(DensityMatrix(2, negative), InvariantError);

  CHECK_THROWS_AS(UnitaryMatrix(CMatrix::Identity(3, 3)), DimensionError);
  CHECK_THROWS_AS(UnitaryMatrix(1.001 * CMatrix::Identity(2, 2)), InvariantError);
  CHECK_THROWS_AS(qubits_for_dimension(6), DimensionError);
}

TEST_CASE("product labels") {
  CHECK(oracle::max_abs(StateVector::product("r").amplitudes(), (CVector(2) << s2, Complex(0, s2)).finished()) < 1e-15);
  CHECK(oracle::max_abs(StateVector::product("hv").amplitudes(), StateVector::basis(2, 1).amplitudes()) == 0.0);
  CHECK_THROWS_AS(StateVector::product("0q"), std::invalid_argument);
}

TEST_CASE("phase-insensitive comparison") {
  Rng rng(17);
  const StateVector a = random_state(2, rng);
  const StateVector b(2, std::polar(1.0, 0.7) * a.amplitudes());
  CHECK(equal_up_to_phase(a, b));
  CHECK(max_diff_up_to_phase(a.amplitudes(), b.amplitudes()) < 1e-15);
  CHECK_FALSE(equal_up_to_phase(StateVector::product("00"), StateVector::product("0+")));
  CHECK(max_diff_up_to_phase(StateVector::product("00").amplitudes(), StateVector::product("0+").amplitudes()) > 0.1);
}

}
