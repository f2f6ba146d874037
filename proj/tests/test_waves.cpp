#include <doctest.h>

#include <numbers>

#include "fieldlab/quadrature.hpp"
#include "fieldlab/waves.hpp"
#include "test_helpers.hpp"

using namespace fieldlab;
using waves::Grid1D;
using waves::SlitGeometry;
using waves::WaveMode;
using waves::WeylPacket;

namespace {

const SlitGeometry kGeometry{1.0, 0.2, 50.0, 100.0};
const Grid1D kScreen{-0.5, 0.5, 2001};

double grid_norm(const std::vector<std::complex<double>>& v, const Grid1D& g) {
  double n = 0.0;
  for (const auto& x : v) n += std::norm(x);
  return n * g.dx();
}

}  // namespace

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  // degree 2n-1 exactness
  const auto& rule = gauss_legendre(5);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    sum += rule.weights[i] * (x * x * x * x * x * x * x * x * x);  // x^9, odd
  }
  CHECK(std::abs(sum) < 1e-15);
  const double integral = integrate([](double x) { return x * x; }, 0.0, 2.0, 16);
  CHECK(integral == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("slit patterns are normalized and peak at the center") {
  const auto two = waves::slit_pattern(kGeometry, 2, kScreen);
  const auto one = waves::slit_pattern(kGeometry, 1, kScreen);
  CHECK(std::abs(two.norm_sq() - 1.0) < 1e-9);
  CHECK(std::abs(one.norm_sq() - 1.0) < 1e-9);

  const int center = kScreen.nearest_index(0.0);
  for (int k = 0; k < kScreen.points; ++k) {
    CHECK(std::norm(two.value(k)) <= std::norm(two.value(center)) + 1e-15);
  }
}

TEST_CASE("first fringe zero sits where the cosine factor vanishes") {
  // root-found on the sampled closed form, then compared to asin(pi/(p d))
  const double measured = [&] {
    double lo = 0.0, hi = 0.0;
    double prev = waves::two_slit_amplitude(kGeometry, 0.0);
    for (int k = 1; k < kScreen.points; ++k) {
      const double theta = kScreen.x(kScreen.nearest_index(0.0) + k);
      const double cur = waves::two_slit_amplitude(kGeometry, theta);
      if (prev * cur <= 0.0) {
        hi = theta;
        lo = kScreen.x(kScreen.nearest_index(0.0) + k - 1);
        break;
      }
      prev = cur;
    }
    for (int i = 0; i < 100; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (waves::two_slit_amplitude(kGeometry, lo) * waves::two_slit_amplitude(kGeometry, mid) <= 0.0) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return 0.5 * (lo + hi);
  }();
  CHECK(measured == doctest::Approx(waves::first_fringe_zero_angle(kGeometry)).epsilon(1e-9));
  CHECK(waves::first_fringe_zero_angle(kGeometry) ==
        doctest::Approx(std::asin(std::numbers::pi / 50.0)).epsilon(1e-12));
}

TEST_CASE("two-slit zeros occur exactly at the cosine-factor zeros") {
  // sign changes of the sampled amplitude match zeros of cos(p d sin/2)
  const auto two = waves::slit_pattern(kGeometry, 2, kScreen);
  int sign_changes = 0;
  for (int k = 1; k < kScreen.points; ++k) {
    const double a = two.value(k - 1).real();
    const double b = two.value(k).real();
    if (a * b < 0.0) {
      ++sign_changes;
      const double theta = 0.5 * (kScreen.x(k - 1) + kScreen.x(k));
      const double cosine = std::cos(0.5 * kGeometry.wavenumber * kGeometry.slit_separation *
                                     std::sin(theta));
      CHECK(std::abs(cosine) < 2e-2);  // zero lies within the bracketing cell
    }
  }
  CHECK(sign_changes > 4);
}

TEST_CASE("one-slit over two-slit intensity ratio at fringe minima") {
  // at the cosine zero the two-slit intensity vanishes, the envelope does not
  const double theta0 = waves::first_fringe_zero_angle(kGeometry);
  const double i2 = std::pow(waves::two_slit_amplitude(kGeometry, theta0), 2);
  const double i1 = std::pow(waves::one_slit_amplitude(kGeometry, theta0), 2);
  CHECK(i1 > 1e-2);
  CHECK(i2 / i1 < 1e-25);
}

TEST_CASE("slit geometry validation") {
  CHECK_THROWS_AS(waves::slit_pattern({0.1, 0.2, 50.0, 100.0}, 2, kScreen), domain_error);
  CHECK_THROWS_AS(waves::slit_pattern(kGeometry, 3, kScreen), domain_error);
  CHECK(kGeometry.far_field_valid());
}

TEST_CASE("weyl packet validation") {
  WeylPacket bad{1.25, 0.3, 1.0, 0.0, +1, 64};  // E - dE < m
  CHECK_THROWS_AS(bad.validate(), domain_error);
  WeylPacket coarse{1.25, 0.1, 1.0, 0.0, +1, 2};
  CHECK_THROWS_AS(coarse.validate(), domain_error);
  WeylPacket good{1.25, 0.1, 1.0, 0.0, +1, 64};
  CHECK_NOTHROW(good.validate());
  CHECK(good.central_momentum() == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(good.group_velocity() == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(good.phase_velocity() == doctest::Approx(1.0 / 0.6).epsilon(1e-12));
}

TEST_CASE("weyl packet peaks at x=0 at the emission time") {
  const WeylPacket p{1.25, 0.1, 1.0, 2.5, +1, 64};
  const Grid1D grid{-30.0, 30.0, 3001};
  const auto mode = waves::weyl_mode(p, grid, p.t0);
  CHECK(std::abs(waves::packet_peak_position(mode)) < 0.05);
}

TEST_CASE("massive packet propagates at the group velocity") {
  const WeylPacket p{1.25, 0.1, 1.0, 0.0, +1, 64};
  const Grid1D grid{-40.0, 50.0, 4501};
  const double x0 = waves::packet_peak_position(waves::weyl_mode(p, grid, 0.0));
  const double x1 = waves::packet_peak_position(waves::weyl_mode(p, grid, 10.0));
  CHECK(std::abs(x1 - 6.0) < 0.2);  // peak at t0 + 10
  const double v = (x1 - x0) / 10.0;
  CHECK(std::abs(v - p.group_velocity()) / p.group_velocity() < 0.03);
}

TEST_CASE("massless packet moves at exactly the speed of light") {
  const WeylPacket p{1.0, 0.4, 0.0, 0.0, +1, 64};
  const Grid1D grid{-40.0, 50.0, 4501};
  const double x0 = waves::packet_peak_position(waves::weyl_mode(p, grid, 0.0));
  const double x1 = waves::packet_peak_position(waves::weyl_mode(p, grid, 10.0));
  CHECK(std::abs((x1 - x0) / 10.0 - 1.0) < 1e-3);
}

TEST_CASE("weyl norm is conserved under free evolution") {
  // massless: the snapshot translates rigidly; a grid symmetric about the
  // trajectory midpoint with a shift commensurate to dx conserves the
  // grid norm to machine precision
  {
    const WeylPacket p{1.0, 0.4, 0.0, 0.0, +1, 64};
    const double shift = 10.0;
    const Grid1D grid{-60.0, 60.0 + shift, static_cast<int>((120.0 + shift) / 0.05) + 1};
    const double nc = waves::weyl_norm_constant(p, grid);
    const double n0 = grid_norm(waves::weyl_snapshot(p, grid, 0.0, nc), grid);
    const double n1 = grid_norm(waves::weyl_snapshot(p, grid, shift, nc), grid);
    CHECK(std::abs(n0 - 1.0) < 1e-12);
    CHECK(std::abs(n1 - n0) < 1e-12);
  }
  // massive: dispersion spreads the packet; a wide grid keeps the moving
  // tails inside and the drift below 1e-6
  {
    const WeylPacket p{1.25, 0.1, 1.0, 0.0, +1, 256};
    const double span = 600.0;
    const Grid1D grid{-span, span + 6.0, static_cast<int>((2 * span + 6.0) / 0.1) + 1};
    const double nc = waves::weyl_norm_constant(p, grid);
    const double n0 = grid_norm(waves::weyl_snapshot(p, grid, 0.0, nc), grid);
    const double n1 = grid_norm(waves::weyl_snapshot(p, grid, 10.0, nc), grid);
    CHECK(std::abs(n0 - 1.0) < 1e-12);
    CHECK(std::abs(n1 - n0) < 1e-6);
  }
}

TEST_CASE("completeness: the full plane-wave basis resolves the grid delta") {
  const Grid1D grid{0.0, 1.0, 64};
  const auto basis = waves::plane_wave_basis(grid);
  REQUIRE(basis.size() == 64);
  CHECK(waves::completeness_defect(basis) < 1e-9);

  // half the modes: incomplete, deviation O(1/dx) reported, not an error
  const std::vector<WaveMode> half(basis.begin(), basis.begin() + 32);
  const double defect = waves::completeness_defect(half);
  CHECK(defect > 1.0);

  // a single orthonormal pair on a 2-point grid is already complete
  const Grid1D tiny{0.0, 1.0, 2};
  const auto pair = waves::plane_wave_basis(tiny);
  CHECK(waves::completeness_defect(pair) < 1e-12);
}

TEST_CASE("completeness rejects mismatched grids") {
  const auto a = waves::plane_wave_basis({0.0, 1.0, 8});
  auto b = waves::plane_wave_basis({0.0, 2.0, 8});
  std::vector<WaveMode> mixed{a.front(), b.front()};
  CHECK_THROWS_AS(waves::completeness_defect(mixed), domain_error);
}

TEST_CASE("overlap matrix: identity, rotation, completeness rows") {
  const Grid1D grid{0.0, 1.0, 32};
  const auto basis = waves::plane_wave_basis(grid);
  const std::vector<WaveMode> a(basis.begin(), basis.begin() + 2);

  // basisA == basisB -> identity
  const auto self = waves::overlap_matrix(a, a);
  CHECK((self.matrix() - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  // explicit 2-d rotation between bases
  const double chi = 0.7;
  std::vector<std::complex<double>> f1(grid.points), f2(grid.points);
  for (int k = 0; k < grid.points; ++k) {
    f1[k] = std::cos(chi) * a[0].value(k) - std::sin(chi) * a[1].value(k);
    f2[k] = std::sin(chi) * a[0].value(k) + std::cos(chi) * a[1].value(k);
  }
  const std::vector<WaveMode> b{WaveMode(grid, f1, "r1"), WaveMode(grid, f2, "r2")};
  const auto c = waves::overlap_matrix(a, b);
  CHECK(testing::cdist(c.matrix()(0, 0), std::cos(chi)) < 1e-12);
  CHECK(testing::cdist(c.matrix()(0, 1), std::sin(chi)) < 1e-12);
  CHECK(testing::cdist(c.matrix()(1, 0), -std::sin(chi)) < 1e-12);
  CHECK(testing::cdist(c.matrix()(1, 1), std::cos(chi)) < 1e-12);
  CHECK(c.max_magnitude() <= 1.0 + 1e-9);

  // rows against the complete set have unit norm
  const auto full = waves::overlap_matrix(a, basis);
  const auto rows = full.row_norms_sq();
  for (Eigen::Index i = 0; i < rows.size(); ++i) {
    CHECK(std::abs(rows(i) - 1.0) < 1e-6);
  }
}

TEST_CASE("overlap matrix rejects non-orthonormal input naming the pair") {
  const Grid1D grid{0.0, 1.0, 16};
  const auto basis = waves::plane_wave_basis(grid);
  std::vector<WaveMode> bad{basis[0], basis[0]};  // duplicated -> <0|1> = 1
  try {
    waves::overlap_matrix(bad, bad);
    FAIL("expected domain_error");
  } catch (const domain_error& e) {
    CHECK(std::string(e.what()).find("(0,1)") != std::string::npos);
  }
}

TEST_CASE("overlap magnitudes stay below one for random basis rotations") {
  const Grid1D grid{0.0, 1.0, 24};
  const auto basis = waves::plane_wave_basis(grid);
  const std::vector<WaveMode> a(basis.begin(), basis.begin() + 4);

  std::mt19937_64 rng(131);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXcd g(4, 4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) g(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    }
    const Eigen::MatrixXcd u = Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
    std::vector<WaveMode> b;
    for (int i = 0; i < 4; ++i) {
      std::vector<std::complex<double>> values(grid.points, 0.0);
      for (int j = 0; j < 4; ++j) {
        for (int k = 0; k < grid.points; ++k) values[k] += u(j, i) * a[j].value(k);
      }
      b.emplace_back(grid, values, "rot" + std::to_string(i));
    }
    const auto c = waves::overlap_matrix(a, b);
    CHECK(c.max_magnitude() <= 1.0 + 1e-9);
    const auto rows = c.row_norms_sq();
    for (Eigen::Index i = 0; i < rows.size(); ++i) {
      CHECK(rows(i) == doctest::Approx(1.0).epsilon(1e-9));  // b spans a here
    }
  }
}

TEST_CASE("leftward packets propagate to negative x") {
  const WeylPacket p{1.25, 0.1, 1.0, 0.0, -1, 64};
  const Grid1D grid{-50.0, 40.0, 4501};
  const double x0 = waves::packet_peak_position(waves::weyl_mode(p, grid, 0.0));
  const double x1 = waves::packet_peak_position(waves::weyl_mode(p, grid, 10.0));
  CHECK(std::abs(x1 + 6.0) < 0.2);
  CHECK(std::abs(x0) < 0.05);
}

TEST_CASE("wave modes enforce L2 normalization") {
  const Grid1D grid{0.0, 1.0, 4};
  std::vector<std::complex<double>> values{1.0, 1.0, 1.0, 1.0};
  CHECK_THROWS_AS(WaveMode(grid, values, "raw"), invariant_violation);
  CHECK_NOTHROW(WaveMode::normalized(grid, values, "ok"));
}
