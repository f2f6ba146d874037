#include <doctest.h>

#include <numbers>
#include <random>

#include "fieldlab/decoherence.hpp"
#include "fieldlab/oracle.hpp"
#include "test_helpers.hpp"

using namespace fieldlab;
using decoherence::ChainStep;
using decoherence::EnvironmentModel;
using density::DensityMatrix;
using fock::Complex;

namespace {

Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  }
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  return qr.householderQ();
}

DensityMatrix random_pure(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd amp(dim);
  for (int i = 0; i < dim; ++i) amp(i) = Complex(gauss(rng), gauss(rng));
  std::vector<std::string> labels(dim);
  for (int i = 0; i < dim; ++i) labels[i] = "c" + std::to_string(i);
  return DensityMatrix::pure(labels, amp);
}

}  // namespace

TEST_CASE("chain evolution: identity, group property, purity") {
  std::mt19937_64 rng(89);
  const auto rho = random_pure(4, rng);

  const ChainStep id{Eigen::MatrixXcd::Identity(4, 4), {}, std::nullopt};
  const std::vector<ChainStep> ids{id, id, id};
  const auto same = decoherence::evolve_chain(rho, ids);
  CHECK((same.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-14);

  const auto u1 = random_unitary(4, rng);
  const auto u2 = random_unitary(4, rng);
  const std::vector<ChainStep> two{{u1, {}, std::nullopt}, {u2, {}, std::nullopt}};
  const std::vector<ChainStep> one{{(u2 * u1).eval(), {}, std::nullopt}};
  const auto via_two = decoherence::evolve_chain(rho, two);
  const auto via_one = decoherence::evolve_chain(rho, one);
  CHECK((via_two.matrix() - via_one.matrix()).cwiseAbs().maxCoeff() < 1e-12);

  // unitary steps keep a pure state pure and preserve the trace
  CHECK(via_two.purity() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(via_two.matrix().trace().real() - 1.0) < 1e-12);

  Eigen::MatrixXcd not_unitary = Eigen::MatrixXcd::Identity(4, 4) * 0.9;
  const std::vector<ChainStep> bad{{not_unitary, {}, std::nullopt}};
  CHECK_THROWS_AS(decoherence::evolve_chain(rho, bad), domain_error);
}

TEST_CASE("trace and hermiticity are preserved at every step") {
  std::mt19937_64 rng(97);
  auto rho = random_pure(5, rng);
  for (int step = 0; step < 8; ++step) {
    const std::vector<ChainStep> s{{random_unitary(5, rng), {}, std::nullopt}};
    rho = decoherence::evolve_chain(rho, s);
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-12);
    CHECK((rho.matrix() - rho.matrix().adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("branch truncation zeroes one row and column of coherences") {
  // three-branch pure superposition; decouple branch 2
  Eigen::VectorXcd amp(3);
  amp << std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2);
  const auto rho = DensityMatrix::pure({"c0", "c1", "c2"}, amp);
  const auto truncated = decoherence::branch_truncate(rho, 2);

  CHECK(std::abs(truncated.matrix()(0, 2)) == 0.0);
  CHECK(std::abs(truncated.matrix()(1, 2)) == 0.0);
  CHECK(std::abs(truncated.matrix()(2, 0)) == 0.0);
  CHECK(testing::cdist(truncated.matrix()(0, 1), rho.matrix()(0, 1)) == 0.0);
  CHECK(testing::cdist(truncated.matrix()(2, 2), rho.matrix()(2, 2)) == 0.0);

  // against the explicit side-chain construction: branch 2 couples to an
  // orthogonal environment state, branches 0 and 1 share theirs
  Eigen::VectorXcd joint = Eigen::VectorXcd::Zero(6);  // (branch, env)
  joint(0 * 2 + 0) = amp(0);
  joint(1 * 2 + 0) = amp(1);
  joint(2 * 2 + 1) = amp(2);
  const auto joint_rho = DensityMatrix::pure({"00", "01", "10", "11", "20", "21"}, joint);
  const auto traced = density::partial_trace(joint_rho, 3, 2, true);
  CHECK((traced.matrix() - truncated.matrix()).cwiseAbs().maxCoeff() < 1e-12);

  // truncating a branch with no weight changes nothing
  Eigen::VectorXcd amp2(3);
  amp2 << std::sqrt(0.5), std::sqrt(0.5), 0.0;
  const auto rho2 = DensityMatrix::pure({"c0", "c1", "c2"}, amp2);
  const auto t2 = decoherence::branch_truncate(rho2, 2);
  CHECK((t2.matrix() - rho2.matrix()).cwiseAbs().maxCoeff() == 0.0);

  // truncating every branch leaves the fully diagonal matrix
  auto all = rho;
  for (int b = 0; b < 3; ++b) all = decoherence::branch_truncate(all, b);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j) CHECK(std::abs(all.matrix()(i, j)) == 0.0);
    }
  }

  CHECK_THROWS_AS(decoherence::branch_truncate(rho, 5), domain_error);

  // the chain-step form reads the decoupled branch off the step
  const ChainStep step{Eigen::MatrixXcd::Identity(3, 3), {0, 1}, 2};
  const auto via_step = decoherence::branch_truncate(rho, step);
  CHECK((via_step.matrix() - truncated.matrix()).cwiseAbs().maxCoeff() == 0.0);
  const ChainStep no_branch{Eigen::MatrixXcd::Identity(3, 3), {}, std::nullopt};
  CHECK_THROWS_AS(decoherence::branch_truncate(rho, no_branch), domain_error);
}

TEST_CASE("environment off-diagonal product and bound") {
  const auto env = EnvironmentModel::uniform(0.9, 100);
  const auto decay = decoherence::offdiagonal_suppression(env);
  CHECK(decay.realized == doctest::Approx(std::pow(0.9, 100)).epsilon(1e-12));
  CHECK(decay.bound == doctest::Approx(2.6561e-5).epsilon(1e-3));
  CHECK(decay.realized <= decay.bound * (1.0 + 1e-12));

  // orthogonal environment states decohere in one step
  const auto instant = decoherence::offdiagonal_suppression(EnvironmentModel::uniform(0.0, 1));
  CHECK(instant.realized == 0.0);

  // the diagonal branch survives for every N
  for (int n : {1, 10, 1000}) {
    const auto diag = decoherence::offdiagonal_suppression(EnvironmentModel::uniform(0.7, n), true);
    CHECK(diag.realized == 1.0);
  }

  // strictly decreasing in N for c < 1
  double previous = 1.0;
  for (int n = 1; n <= 50; ++n) {
    const auto d = decoherence::offdiagonal_suppression(EnvironmentModel::uniform(0.9, n));
    CHECK(d.realized < previous);
    previous = d.realized;
  }

  CHECK_THROWS_AS(EnvironmentModel::uniform(1.0, 3), invariant_violation);
  CHECK_THROWS_AS(EnvironmentModel::uniform(0.5, 0), domain_error);
}

TEST_CASE("measurement outcome matches the exact environment trace for N <= 10") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 1; n <= 10; ++n) {
    // scalar model
    {
      Eigen::VectorXcd amp(2);
      amp << std::sqrt(0.5), std::sqrt(0.5);
      const auto system = DensityMatrix::pure({"1", "2"}, amp);
      const auto outcome =
          decoherence::measure_with_chain(system, EnvironmentModel::uniform(0.6, n));
      const auto exact = oracle::environment_traced_pointer(0.5, 0.5, 0.0, 0.6, n);
      CHECK((outcome.reduced.matrix() - exact).cwiseAbs().maxCoeff() < 1e-10);
    }
    // randomized per-factor overlaps and a complex relative phase
    {
      const double p1 = 0.2 + 0.6 * u(rng);
      const double phase = 2.0 * std::numbers::pi * u(rng);
      std::vector<double> overlaps;
      for (int m = 0; m < n; ++m) overlaps.push_back(0.95 * u(rng));
      Eigen::VectorXcd amp(2);
      amp << std::sqrt(p1), std::polar(std::sqrt(1.0 - p1), phase);
      const auto system = DensityMatrix::pure({"1", "2"}, amp);
      const auto outcome = decoherence::measure_with_chain(
          system, EnvironmentModel::with_overlaps(overlaps));
      const auto exact = oracle::environment_traced_pointer(p1, 1.0 - p1, phase, overlaps);
      CHECK((outcome.reduced.matrix() - exact).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("pointer off-diagonal equals the coherence times the overlap product") {
  Eigen::VectorXcd amp(2);
  amp << std::sqrt(0.5), std::sqrt(0.5);
  const auto system = DensityMatrix::pure({"1", "2"}, amp);
  const auto outcome =
      decoherence::measure_with_chain(system, EnvironmentModel::uniform(0.5, 30));
  CHECK(outcome.off_diagonal_magnitude ==
        doctest::Approx(0.5 * std::pow(0.5, 30)).epsilon(1e-12));
  CHECK(outcome.off_diagonal_magnitude <= 4.7e-10);

  // already-diagonal system: pointer exactly diagonal for any N
  Eigen::VectorXd w(2);
  w << 0.3, 0.7;
  const auto mixed = DensityMatrix::diagonal({"1", "2"}, w);
  const auto diag_out = decoherence::measure_with_chain(mixed, EnvironmentModel::uniform(0.99, 1));
  CHECK(diag_out.off_diagonal_magnitude == 0.0);
  CHECK(diag_out.reduced.matrix()(0, 0).real() == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("decoherence accumulates multiplicatively along the chain") {
  Eigen::VectorXcd amp(2);
  amp << std::sqrt(0.5), std::sqrt(0.5);
  const auto system = DensityMatrix::pure({"1", "2"}, amp);

  const auto first = decoherence::measure_with_chain(system, EnvironmentModel::uniform(0.8, 4));
  const auto second =
      decoherence::measure_with_chain(first.reduced, EnvironmentModel::uniform(0.7, 3));
  const auto combined = decoherence::measure_with_chain(
      system, EnvironmentModel::with_overlaps({0.8, 0.8, 0.8, 0.8, 0.7, 0.7, 0.7}));
  CHECK(std::abs(second.off_diagonal_magnitude - combined.off_diagonal_magnitude) < 1e-12);
}

TEST_CASE("efficiencies reweight the branches") {
  Eigen::VectorXcd amp(2);
  amp << std::sqrt(0.5), std::sqrt(0.5);
  const auto system = DensityMatrix::pure({"1", "2"}, amp);
  const auto outcome =
      decoherence::measure_with_chain(system, EnvironmentModel::uniform(0.5, 5), 1.0, 0.25);
  // E1 P1 : E2 P2 = 0.5 : 0.125 -> normalized 0.8 : 0.2
  CHECK(outcome.reduced.matrix()(0, 0).real() == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(outcome.reduced.matrix()(1, 1).real() == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(outcome.efficiency[1] == 0.25);
  CHECK(outcome.branch_probability[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(
      decoherence::measure_with_chain(system, EnvironmentModel::uniform(0.5, 5), 1.5, 1.0),
      domain_error);
}

TEST_CASE("entropy increases from a pure channel through a two-branch measurement") {
  Eigen::VectorXd ready(1);
  ready << 1.0;
  const auto initial = DensityMatrix::diagonal({"incoming"}, ready);

  Eigen::VectorXcd amp(2);
  amp << std::sqrt(0.5), std::sqrt(0.5);
  const auto system = DensityMatrix::pure({"1", "2"}, amp);
  const auto outcome =
      decoherence::measure_with_chain(system, EnvironmentModel::uniform(0.5, 40));

  const auto check = decoherence::entropy_increase_check(initial, outcome.reduced);
  CHECK(check.initial == 0.0);
  CHECK(check.final_ == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(check.delta > 0.0);
  CHECK(check.non_decreasing);

  // deterministic channel: a single branch keeps zero entropy
  Eigen::VectorXd sure(2);
  sure << 1.0, 0.0;
  const auto one_branch = DensityMatrix::diagonal({"1", "2"}, sure);
  const auto det =
      decoherence::measure_with_chain(one_branch, EnvironmentModel::uniform(0.5, 10));
  const auto no_gain = decoherence::entropy_increase_check(initial, det.reduced);
  CHECK(no_gain.delta == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(no_gain.non_decreasing);
}
