#pragma once

#include <vector>

namespace fieldlab {

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre nodes and weights, cached per order.
const QuadratureRule& gauss_legendre(int order);

/// Integrate f over [a, b] with a composite Gauss-Legendre rule using at
/// least `points` evaluations split into panels of at most 64 nodes.
template <typename F>
auto integrate(F&& f, double a, double b, int points) -> decltype(f(0.0)) {
  const int panels = (points + 63) / 64;
  const int per_panel = (points + panels - 1) / panels;
  const auto& rule = gauss_legendre(per_panel);
  const double h = (b - a) / panels;
  decltype(f(0.0)) sum{};
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      sum += (0.5 * h * rule.weights[i]) * f(mid + 0.5 * h * rule.nodes[i]);
    }
  }
  return sum;
}

}  // namespace fieldlab
