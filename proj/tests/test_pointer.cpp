#include <doctest.h>

#include <numbers>
#include <random>

#include "fieldlab/pointer.hpp"
#include "test_helpers.hpp"

using namespace fieldlab;
using density::DensityMatrix;
using fock::Complex;
using pointer_cat::PointerMeasurement;
using pointer_cat::TransitionModel;

namespace {

DensityMatrix random_density(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  }
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace();
  std::vector<std::string> labels(dim);
  for (int i = 0; i < dim; ++i) labels[i] = "s" + std::to_string(i);
  return DensityMatrix(labels, rho);
}

TransitionModel random_transition(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd t(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) t(i, j) = Complex(gauss(rng), gauss(rng));
  }
  return TransitionModel(2, 2, 2, 2, t);
}

std::vector<waves::WaveMode> direction_basis(int points) {
  const waves::Grid1D grid{0.0, 2.0 * std::numbers::pi * (points - 1.0) / points, points};
  std::vector<std::complex<double>> phi0(points), phi1(points);
  for (int k = 0; k < points; ++k) {
    phi0[k] = 1.0;
    phi1[k] = std::sqrt(2.0) * std::cos(grid.x(k));
  }
  return {waves::WaveMode::normalized(grid, phi0, "phi0"),
          waves::WaveMode::normalized(grid, phi1, "phi1")};
}

}  // namespace

TEST_CASE("final state density: structural zeros for diagonal sigma") {
  const auto t = TransitionModel::class_selective(2, 2);
  const auto sigma = DensityMatrix::diagonal({"p+", "p-"}, Eigen::Vector2d(0.6, 0.4));
  const auto beta = DensityMatrix::diagonal({"k0", "k1"}, Eigen::Vector2d(0.5, 0.5));
  const auto rho = pointer_cat::final_state_density(t, sigma, beta);

  // the u-d off-block vanishes identically, not approximately
  for (int l1 = 0; l1 < 2; ++l1) {
    for (int l2 = 0; l2 < 2; ++l2) {
      CHECK(std::abs(rho.matrix()(0 * 2 + l1, 1 * 2 + l2)) == 0.0);
      CHECK(std::abs(rho.matrix()(1 * 2 + l1, 0 * 2 + l2)) == 0.0);
    }
  }
  CHECK(rho.matrix()(0, 0).real() + rho.matrix()(1, 1).real() ==
        doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("off-diagonal sigma revives the u-d coherences") {
  const auto t = TransitionModel::class_selective(2, 2);
  Eigen::MatrixXcd sigma(2, 2);
  sigma << 0.5, 0.5, 0.5, 0.5;  // pure (|+> + |->)/sqrt(2) polarization
  const auto sigma_rho = DensityMatrix({"p+", "p-"}, sigma);
  const auto beta = DensityMatrix::diagonal({"k0", "k1"}, Eigen::Vector2d(0.5, 0.5));
  const auto rho = pointer_cat::final_state_density(t, sigma_rho, beta);

  double off_block = 0.0;
  for (int l1 = 0; l1 < 2; ++l1) {
    for (int l2 = 0; l2 < 2; ++l2) off_block += std::abs(rho.matrix()(l1, 2 + l2));
  }
  CHECK(off_block > 0.1);
}

TEST_CASE("pure inputs through unitary blocks stay pure") {
  const auto t = TransitionModel::class_selective(2, 2);
  Eigen::VectorXcd pol(2);
  pol << 1.0, 0.0;
  Eigen::VectorXcd recoil(2);
  recoil << std::sqrt(0.5), std::sqrt(0.5);
  const auto rho = pointer_cat::final_state_density(
      t, DensityMatrix::pure({"p+", "p-"}, pol), DensityMatrix::pure({"k0", "k1"}, recoil));
  CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("final state density is a valid density matrix for random inputs") {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = random_transition(rng);
    const auto sigma = random_density(2, rng);
    const auto beta = random_density(2, rng);
    // the constructor enforces hermiticity, unit trace, positivity
    CHECK_NOTHROW(pointer_cat::final_state_density(t, sigma, beta));
  }
}

TEST_CASE("dimension mismatches are rejected") {
  const auto t = TransitionModel::class_selective(2, 2);
  const auto sigma3 = DensityMatrix::diagonal({"a", "b", "c"},
                                              Eigen::Vector3d(0.3, 0.3, 0.4));
  const auto beta = DensityMatrix::diagonal({"k0", "k1"}, Eigen::Vector2d(0.5, 0.5));
  CHECK_THROWS_AS(pointer_cat::final_state_density(t, sigma3, beta), domain_error);
  CHECK_THROWS_AS(TransitionModel(2, 2, 2, 2, Eigen::MatrixXcd::Zero(3, 4)), domain_error);
}

TEST_CASE("measure_pointer: delta kernel keeps only the class-diagonal terms") {
  const auto t = TransitionModel::class_selective(2, 2);
  Eigen::MatrixXcd sigma(2, 2);
  sigma << 0.5, 0.5, 0.5, 0.5;
  const auto rho = pointer_cat::final_state_density(
      t, DensityMatrix({"p+", "p-"}, sigma),
      DensityMatrix::diagonal({"k0", "k1"}, Eigen::Vector2d(0.5, 0.5)));

  PointerMeasurement m;
  m.emission_waves = direction_basis(256);
  const auto reading = pointer_cat::measure_pointer(rho, m, 2, 2);

  // u-d coherences of the input contribute nothing: the same scan on the
  // class-pinched state is identical
  DensityMatrix pinched = reading.reduced;
  const auto reading2 = pointer_cat::measure_pointer(pinched, m, 2, 2);
  for (std::size_t k = 0; k < reading.direction_probability.size(); ++k) {
    CHECK(reading.direction_probability[k] ==
          doctest::Approx(reading2.direction_probability[k]).epsilon(1e-12));
  }
  // and the reduced state has no u-d block left
  for (int l1 = 0; l1 < 2; ++l1) {
    for (int l2 = 0; l2 < 2; ++l2) {
      CHECK(std::abs(reading.reduced.matrix()(l1, 2 + l2)) == 0.0);
    }
  }
}

TEST_CASE("measure_pointer: probabilities are non-negative and sum to one") {
  std::mt19937_64 rng(107);
  PointerMeasurement m;
  m.emission_waves = direction_basis(256);
  const double dtheta = m.emission_waves.front().grid().dx();
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = random_density(4, rng);
    const auto reading = pointer_cat::measure_pointer(rho, m, 2, 2);
    double total = 0.0;
    for (double p : reading.direction_probability) {
      CHECK(p >= 0.0);
      total += p * dtheta;
    }
    // the direction basis is orthonormal on the grid, so the scan
    // integrates to the surviving trace (= 1 for the delta kernel)
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("single-channel state scans as the channel intensity times its weight") {
  PointerMeasurement m;
  m.emission_waves = direction_basis(128);
  // state concentrated in (class u, channel 1)
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
  rho(1, 1) = 1.0;
  const auto state = DensityMatrix({"ul0", "ul1", "dl0", "dl1"}, rho);
  const auto reading = pointer_cat::measure_pointer(state, m, 2, 2);
  for (int k = 0; k < 128; ++k) {
    CHECK(reading.direction_probability[k] ==
          doctest::Approx(std::norm(m.emission_waves[1].value(k))).epsilon(1e-12));
  }
}

TEST_CASE("interference between channels inside one class block") {
  PointerMeasurement m;
  m.emission_waves = direction_basis(128);
  // coherent (l0 + l1)/sqrt(2) inside class u
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(4);
  amp(0) = std::sqrt(0.5);
  amp(1) = std::sqrt(0.5);
  const auto coherent = DensityMatrix::pure({"ul0", "ul1", "dl0", "dl1"}, amp);
  const auto reading = pointer_cat::measure_pointer(coherent, m, 2, 2);

  // the cross term survives: P(theta) != |phi0|^2/2 + |phi1|^2/2 somewhere
  double max_cross = 0.0;
  for (int k = 0; k < 128; ++k) {
    const double incoherent =
        0.5 * std::norm(m.emission_waves[0].value(k)) + 0.5 * std::norm(m.emission_waves[1].value(k));
    max_cross = std::max(max_cross, std::abs(reading.direction_probability[k] - incoherent));
  }
  CHECK(max_cross > 0.1);

  // removing the upstream coherence removes the cross term
  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(4, 4);
  diag(0, 0) = 0.5;
  diag(1, 1) = 0.5;
  const auto mixed = DensityMatrix({"ul0", "ul1", "dl0", "dl1"}, diag);
  const auto flat = pointer_cat::measure_pointer(mixed, m, 2, 2);
  for (int k = 0; k < 128; ++k) {
    const double incoherent =
        0.5 * std::norm(m.emission_waves[0].value(k)) + 0.5 * std::norm(m.emission_waves[1].value(k));
    CHECK(flat.direction_probability[k] == doctest::Approx(incoherent).epsilon(1e-12));
  }
}

TEST_CASE("cat verdict: classical mixture at large N, suspended at N = 0") {
  Eigen::VectorXcd amp(2);
  amp << std::sqrt(0.5), std::sqrt(0.5);
  const auto system = DensityMatrix::pure({"live", "dead"}, amp);

  const auto outcome =
      decoherence::measure_with_chain(system, decoherence::EnvironmentModel::uniform(0.5, 30));
  const auto cat = pointer_cat::cat_verdict(outcome);
  CHECK(cat.p_live == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cat.p_dead == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cat.off_diagonal <= 4.7e-10);
  CHECK(cat.classical);

  // no environment: the coherence survives untouched and the verdict is
  // "not yet classical"
  const decoherence::MeasurementOutcome bare{system, {1.0, 1.0}, {0.5, 0.5},
                                             std::abs(system.matrix()(0, 1))};
  const auto suspended = pointer_cat::cat_verdict(bare);
  CHECK(suspended.off_diagonal == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_FALSE(suspended.classical);

  // certain survival
  Eigen::VectorXd alive(2);
  alive << 1.0, 0.0;
  const auto certain = DensityMatrix::diagonal({"live", "dead"}, alive);
  const auto safe_outcome =
      decoherence::measure_with_chain(certain, decoherence::EnvironmentModel::uniform(0.5, 5));
  const auto safe = pointer_cat::cat_verdict(safe_outcome);
  CHECK(safe.p_live == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(safe.off_diagonal == 0.0);
}

TEST_CASE("cat off-diagonal decreases monotonically with environment size") {
  Eigen::VectorXcd amp(2);
  amp << std::sqrt(0.5), std::sqrt(0.5);
  const auto system = DensityMatrix::pure({"live", "dead"}, amp);
  double previous = 1.0;
  for (int n = 1; n <= 40; ++n) {
    const auto outcome =
        decoherence::measure_with_chain(system, decoherence::EnvironmentModel::uniform(0.6, n));
    const auto cat = pointer_cat::cat_verdict(outcome);
    CHECK(cat.off_diagonal < previous);
    previous = cat.off_diagonal;
  }
}
