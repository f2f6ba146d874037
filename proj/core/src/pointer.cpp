#include "fieldlab/pointer.hpp"

#include <cmath>

namespace fieldlab::pointer_cat {

TransitionModel::TransitionModel(int classes, int channels, int polarizations, int recoils,
                                 Eigen::MatrixXcd elements)
    : classes_(classes), channels_(channels), polarizations_(polarizations), recoils_(recoils),
      t_(std::move(elements)) {
  if (classes_ < 1 || channels_ < 1 || polarizations_ < 1 || recoils_ < 1)
    throw domain_error("TransitionModel: index sets must be non-empty");
  if (t_.rows() != static_cast<Eigen::Index>(classes_) * channels_ ||
      t_.cols() != static_cast<Eigen::Index>(polarizations_) * recoils_)
    throw domain_error("TransitionModel: element matrix does not match the index sets");
}

TransitionModel TransitionModel::class_selective(int channels, int recoils) {
  if (channels != recoils)
    throw domain_error("TransitionModel: class-selective blocks need channels == recoils");
  const int classes = 2, polarizations = 2;
  Eigen::MatrixXcd t =
      Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(classes) * channels,
                             static_cast<Eigen::Index>(polarizations) * recoils);
  for (int p = 0; p < polarizations; ++p) {
    for (int k = 0; k < recoils; ++k) {
      // class n = p, identity block from recoil to channel
      t(p * channels + k, p * recoils + k) = 1.0;
    }
  }
  return TransitionModel(classes, channels, polarizations, recoils, std::move(t));
}

DensityMatrix final_state_density(const TransitionModel& t, const DensityMatrix& sigma,
                                  const DensityMatrix& beta) {
  if (sigma.dim() != t.polarizations())
    throw domain_error("final_state_density: sigma dimension mismatch");
  if (beta.dim() != t.recoils())
    throw domain_error("final_state_density: beta dimension mismatch");

  // rho = T (sigma (x) beta) T^dagger, then normalized
  const Eigen::Index in_dim = t.elements().cols();
  Eigen::MatrixXcd in(in_dim, in_dim);
  for (int p1 = 0; p1 < t.polarizations(); ++p1) {
    for (int k1 = 0; k1 < t.recoils(); ++k1) {
      for (int p2 = 0; p2 < t.polarizations(); ++p2) {
        for (int k2 = 0; k2 < t.recoils(); ++k2) {
          in(p1 * t.recoils() + k1, p2 * t.recoils() + k2) =
              sigma.matrix()(p1, p2) * beta.matrix()(k1, k2);
        }
      }
    }
  }
  Eigen::MatrixXcd rho = t.elements() * in * t.elements().adjoint();
  const double trace = rho.real().trace();
  if (trace <= 0.0) throw invariant_violation("final_state_density: vanishing trace");
  rho /= trace;
  rho = 0.5 * (rho + rho.adjoint()).eval();

  std::vector<std::string> labels;
  labels.reserve(rho.rows());
  for (int n = 0; n < t.classes(); ++n) {
    for (int l = 0; l < t.channels(); ++l) {
      labels.push_back((n == 0 ? "u" : n == 1 ? "d" : "n" + std::to_string(n)) + "l" +
                       std::to_string(l));
    }
  }
  return DensityMatrix(std::move(labels), std::move(rho));
}

void PointerMeasurement::validate(int classes, int channels) const {
  if (emission_waves.size() != static_cast<std::size_t>(channels))
    throw domain_error("PointerMeasurement: one emission wave per channel required");
  for (const auto& m : emission_waves) {
    if (!(m.grid() == emission_waves.front().grid()))
      throw domain_error("PointerMeasurement: emission waves on different grids");
  }
  auto check_kernel = [&](const Eigen::MatrixXcd& k, const char* name) {
    if (k.size() == 0) return;
    if (k.rows() != classes || k.cols() != classes)
      throw domain_error(std::string("PointerMeasurement: ") + name + " kernel size mismatch");
    if ((k - k.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw domain_error(std::string("PointerMeasurement: ") + name + " kernel not hermitian");
  };
  check_kernel(tau, "tau");
  check_kernel(kappa, "kappa");
  check_kernel(recoil_overlap, "recoil overlap");
}

PointerReading measure_pointer(const DensityMatrix& rho, const PointerMeasurement& m,
                               int classes, int channels) {
  if (rho.dim() != static_cast<Eigen::Index>(classes) * channels)
    throw domain_error("measure_pointer: state dimension does not factor as classes x channels");
  m.validate(classes, channels);

  const Eigen::MatrixXcd tau =
      m.tau.size() == 0 ? Eigen::MatrixXcd::Identity(classes, classes).eval() : m.tau;
  const Eigen::MatrixXcd kappa =
      m.kappa.size() == 0 ? Eigen::MatrixXcd::Ones(classes, classes).eval() : m.kappa;
  const Eigen::MatrixXcd chi =
      m.recoil_overlap.size() == 0 ? Eigen::MatrixXcd::Identity(classes, classes).eval()
                                   : m.recoil_overlap;

  // effective class-sector weight: tau restricted by the recoil overlaps
  Eigen::MatrixXcd weight(classes, classes);
  for (int n1 = 0; n1 < classes; ++n1) {
    for (int n2 = 0; n2 < classes; ++n2)
      weight(n1, n2) = tau(n1, n2) * kappa(n1, n2) * chi(n1, n2);
  }

  const waves::Grid1D grid = m.emission_waves.front().grid();
  PointerReading out{std::vector<double>(grid.points, 0.0),
                     DensityMatrix({"x"}, Eigen::MatrixXcd::Identity(1, 1))};

  for (int g = 0; g < grid.points; ++g) {
    Complex p = 0.0;
    for (int n1 = 0; n1 < classes; ++n1) {
      for (int n2 = 0; n2 < classes; ++n2) {
        if (weight(n1, n2) == Complex(0.0)) continue;
        for (int l1 = 0; l1 < channels; ++l1) {
          for (int l2 = 0; l2 < channels; ++l2) {
            p += weight(n1, n2) * std::conj(m.emission_waves[l1].value(g)) *
                 m.emission_waves[l2].value(g) *
                 rho.matrix()(n1 * channels + l1, n2 * channels + l2);
          }
        }
      }
    }
    if (p.real() < -1e-10)
      throw invariant_violation("measure_pointer: negative direction probability");
    out.direction_probability[g] = std::max(0.0, p.real());
  }

  // post-measurement state: class-sector pinching by the weight pattern
  Eigen::MatrixXcd reduced = rho.matrix();
  for (int n1 = 0; n1 < classes; ++n1) {
    for (int n2 = 0; n2 < classes; ++n2) {
      if (n1 == n2) continue;
      if (weight(n1, n2) != Complex(0.0)) continue;
      for (int l1 = 0; l1 < channels; ++l1) {
        for (int l2 = 0; l2 < channels; ++l2) {
          reduced(n1 * channels + l1, n2 * channels + l2) = 0.0;
        }
      }
    }
  }
  out.reduced = DensityMatrix(rho.basis(), std::move(reduced));
  return out;
}

CatState cat_verdict(const decoherence::MeasurementOutcome& chain_output) {
  const Eigen::MatrixXcd& rho = chain_output.reduced.matrix();
  CatState cat{DensityMatrix({"live", "dead"}, rho),
               rho(0, 0).real(),
               rho(1, 1).real(),
               std::abs(rho(0, 1)),
               false};
  cat.classical = cat.off_diagonal <= kClassicalOffdiagonal;
  return cat;
}

}  // namespace fieldlab::pointer_cat
