#include "fieldlab/waves.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fieldlab/quadrature.hpp"

namespace fieldlab::waves {

namespace {

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

}  // namespace

void Grid1D::validate() const {
  if (points < 2) throw domain_error("Grid1D: need at least 2 points");
  if (!(x_max > x_min)) throw domain_error("Grid1D: x_max must exceed x_min");
}

int Grid1D::nearest_index(double x) const {
  validate();
  if (!contains(x)) throw domain_error("Grid1D: position outside grid");
  const int k = static_cast<int>(std::lround((x - x_min) / dx()));
  return std::clamp(k, 0, points - 1);
}

WaveMode::WaveMode(Grid1D grid, std::vector<Complex> values, std::string label)
    : grid_(grid), values_(std::move(values)), label_(std::move(label)) {
  grid_.validate();
  if (values_.size() != static_cast<std::size_t>(grid_.points))
    throw domain_error("WaveMode: sample count does not match grid");
  const double n = norm_sq();
  if (std::abs(n - 1.0) > 1e-9)
    throw invariant_violation("WaveMode: not L2-normalized (norm^2 = " + std::to_string(n) + ")");
}

WaveMode WaveMode::normalized(Grid1D grid, std::vector<Complex> values, std::string label) {
  grid.validate();
  double n = 0.0;
  for (const auto& v : values) n += std::norm(v);
  n *= grid.dx();
  if (n <= 0.0) throw domain_error("WaveMode: cannot normalize zero samples");
  const double scale = 1.0 / std::sqrt(n);
  for (auto& v : values) v *= scale;
  return WaveMode(grid, std::move(values), std::move(label));
}

double WaveMode::norm_sq() const {
  double n = 0.0;
  for (const auto& v : values_) n += std::norm(v);
  return n * grid_.dx();
}

void SlitGeometry::validate() const {
  if (!(slit_separation > slit_width && slit_width > 0.0))
    throw domain_error("SlitGeometry: require d > a > 0");
  if (!(wavenumber > 0.0)) throw domain_error("SlitGeometry: wavenumber must be positive");
  if (!(screen_distance > 0.0)) throw domain_error("SlitGeometry: screen distance must be positive");
}

double two_slit_amplitude(const SlitGeometry& g, double theta) {
  const double s = std::sin(theta);
  return std::cos(0.5 * g.wavenumber * g.slit_separation * s) *
         sinc(0.5 * g.wavenumber * g.slit_width * s);
}

double one_slit_amplitude(const SlitGeometry& g, double theta) {
  return sinc(0.5 * g.wavenumber * g.slit_width * std::sin(theta));
}

WaveMode slit_pattern(const SlitGeometry& g, int k, const Grid1D& screen) {
  g.validate();
  screen.validate();
  if (k != 1 && k != 2) throw domain_error("slit_pattern: k must be 1 or 2");
  std::vector<Complex> values(screen.points);
  for (int i = 0; i < screen.points; ++i) {
    const double theta = screen.x(i);
    values[i] = k == 2 ? two_slit_amplitude(g, theta) : one_slit_amplitude(g, theta);
  }
  return WaveMode::normalized(screen, std::move(values),
                              k == 2 ? "two_slit" : "one_slit");
}

double first_fringe_zero_angle(const SlitGeometry& g) {
  g.validate();
  const double s = std::numbers::pi / (g.wavenumber * g.slit_separation);
  if (s >= 1.0) throw domain_error("first_fringe_zero_angle: no zero below theta = pi/2");
  return std::asin(s);
}

void WeylPacket::validate() const {
  if (!(half_width > 0.0)) throw domain_error("WeylPacket: half width must be positive");
  if (!(mass >= 0.0)) throw domain_error("WeylPacket: mass must be non-negative");
  if (!(energy - half_width > mass))
    throw domain_error("WeylPacket: require E_k - dE > m so the momentum stays real");
  if (direction != 1 && direction != -1) throw domain_error("WeylPacket: direction must be +-1");
  if (quadrature_points < 3) throw domain_error("WeylPacket: need at least 3 quadrature points");
}

double WeylPacket::central_momentum() const {
  return std::sqrt(energy * energy - mass * mass);
}

double WeylPacket::phase_velocity() const { return energy / central_momentum(); }

double WeylPacket::group_velocity() const { return central_momentum() / energy; }

Complex weyl_raw(const WeylPacket& p, double x, double t) {
  p.validate();
  const double dir = static_cast<double>(p.direction);
  return integrate(
      [&](double e) {
        const double momentum = dir * std::sqrt(e * e - p.mass * p.mass);
        const double phase = momentum * x - e * (t - p.t0);
        return Complex(std::cos(phase), std::sin(phase));
      },
      p.energy - p.half_width, p.energy + p.half_width, p.quadrature_points);
}

double weyl_norm_constant(const WeylPacket& p, const Grid1D& grid) {
  grid.validate();
  double n = 0.0;
  for (int k = 0; k < grid.points; ++k) n += std::norm(weyl_raw(p, grid.x(k), p.t0));
  n *= grid.dx();
  if (n <= 0.0) throw domain_error("weyl_norm_constant: zero norm on grid");
  return 1.0 / std::sqrt(n);
}

Complex weyl_evaluate(const WeylPacket& p, double x, double t, double norm_constant) {
  return norm_constant * weyl_raw(p, x, t);
}

std::vector<Complex> weyl_snapshot(const WeylPacket& p, const Grid1D& grid, double t,
                                   double norm_constant) {
  grid.validate();
  std::vector<Complex> values(grid.points);
  for (int k = 0; k < grid.points; ++k) values[k] = norm_constant * weyl_raw(p, grid.x(k), t);
  return values;
}

WaveMode weyl_mode(const WeylPacket& p, const Grid1D& grid, double t) {
  return WaveMode::normalized(grid, weyl_snapshot(p, grid, t, 1.0), "weyl");
}

double packet_peak_position(const WaveMode& mode) {
  const auto& v = mode.values();
  std::size_t best = 0;
  double best_val = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double a = std::norm(v[k]);
    if (a > best_val) {
      best_val = a;
      best = k;
    }
  }
  if (best == 0 || best + 1 == v.size()) return mode.grid().x(static_cast<int>(best));
  // parabolic refinement on |amplitude|^2
  const double ym = std::norm(v[best - 1]);
  const double y0 = std::norm(v[best]);
  const double yp = std::norm(v[best + 1]);
  const double denom = ym - 2.0 * y0 + yp;
  double shift = 0.0;
  if (denom != 0.0) shift = 0.5 * (ym - yp) / denom;
  return mode.grid().x(static_cast<int>(best)) + shift * mode.grid().dx();
}

double completeness_defect(const std::vector<WaveMode>& modes) {
  if (modes.empty()) throw domain_error("completeness_defect: no modes");
  const Grid1D grid = modes.front().grid();
  for (const auto& m : modes) {
    if (!(m.grid() == grid)) throw domain_error("completeness_defect: grid mismatch");
  }
  if (modes.size() > static_cast<std::size_t>(grid.points))
    throw domain_error("completeness_defect: more modes than grid points");

  const double inv_dx = 1.0 / grid.dx();
  double defect = 0.0;
  for (int x = 0; x < grid.points; ++x) {
    for (int y = 0; y < grid.points; ++y) {
      Complex sum = 0.0;
      for (const auto& m : modes) sum += std::conj(m.value(x)) * m.value(y);
      const Complex target = x == y ? Complex(inv_dx) : Complex(0.0);
      defect = std::max(defect, std::abs(sum - target));
    }
  }
  return defect;
}

std::vector<WaveMode> plane_wave_basis(const Grid1D& grid) {
  grid.validate();
  const int n = grid.points;
  const double scale = 1.0 / std::sqrt(n * grid.dx());
  std::vector<WaveMode> basis;
  basis.reserve(n);
  for (int mode = 0; mode < n; ++mode) {
    std::vector<Complex> values(n);
    for (int k = 0; k < n; ++k) {
      const double phase = 2.0 * std::numbers::pi * mode * k / n;
      values[k] = scale * Complex(std::cos(phase), std::sin(phase));
    }
    basis.emplace_back(grid, std::move(values), "pw" + std::to_string(mode));
  }
  return basis;
}

OverlapMatrix::OverlapMatrix(Eigen::MatrixXcd c) : c_(std::move(c)) {
  const double max = max_magnitude();
  if (max > 1.0 + 1e-9)
    throw invariant_violation("OverlapMatrix: |C| = " + std::to_string(max) + " exceeds 1");
}

double OverlapMatrix::max_magnitude() const {
  double max = 0.0;
  for (Eigen::Index i = 0; i < c_.rows(); ++i) {
    for (Eigen::Index j = 0; j < c_.cols(); ++j) max = std::max(max, std::abs(c_(i, j)));
  }
  return max;
}

Eigen::VectorXd OverlapMatrix::row_norms_sq() const {
  return c_.rowwise().squaredNorm();
}

namespace {

void require_orthonormal(const std::vector<WaveMode>& basis, const char* name, double tol) {
  const double dx = basis.front().grid().dx();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      Complex sum = 0.0;
      for (int k = 0; k < basis.front().grid().points; ++k)
        sum += std::conj(basis[i].value(k)) * basis[j].value(k);
      sum *= dx;
      const Complex target = i == j ? Complex(1.0) : Complex(0.0);
      if (std::abs(sum - target) > tol) {
        throw domain_error(std::string("overlap_matrix: basis ") + name + " not orthonormal at pair (" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

}  // namespace

OverlapMatrix overlap_matrix(const std::vector<WaveMode>& basis_a,
                             const std::vector<WaveMode>& basis_b,
                             double orthonormality_tol) {
  if (basis_a.empty() || basis_b.empty()) throw domain_error("overlap_matrix: empty basis");
  const Grid1D grid = basis_a.front().grid();
  for (const auto& m : basis_a) {
    if (!(m.grid() == grid)) throw domain_error("overlap_matrix: grid mismatch in basis A");
  }
  for (const auto& m : basis_b) {
    if (!(m.grid() == grid)) throw domain_error("overlap_matrix: grid mismatch in basis B");
  }
  require_orthonormal(basis_a, "A", orthonormality_tol);
  require_orthonormal(basis_b, "B", orthonormality_tol);

  Eigen::MatrixXcd c(basis_a.size(), basis_b.size());
  for (std::size_t a = 0; a < basis_a.size(); ++a) {
    for (std::size_t b = 0; b < basis_b.size(); ++b) {
      Complex sum = 0.0;
      for (int k = 0; k < grid.points; ++k)
        sum += std::conj(basis_a[a].value(k)) * basis_b[b].value(k);
      c(a, b) = sum * grid.dx();
    }
  }
  return OverlapMatrix(std::move(c));
}

}  // namespace fieldlab::waves
