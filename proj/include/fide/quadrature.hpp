#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace fide {

// Gauss-Legendre rule on [0, 1]. Nodes are strictly increasing and interior,
// weights positive and summing to 1, node[i] + node[n-1-i] == 1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Builds the n-point rule without touching the cache.
QuadratureRule build_legendre_gauss(std::size_t n);

/// Cached n-point rule. The returned reference stays valid for the lifetime of
/// the process; concurrent first use is safe.
const QuadratureRule& legendre_gauss(std::size_t n);

template <typename F>
double integrate(const QuadratureRule& rule, F&& f) {
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) sum += rule.weights[k] * f(rule.nodes[k]);
  return sum;
}

/// (f, g)_{N,0,0}: the discrete Legendre inner product on [0, 1].
template <typename F, typename G>
double discrete_inner(const QuadratureRule& rule, F&& f, G&& g) {
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double v = rule.nodes[k];
    sum += rule.weights[k] * f(v) * g(v);
  }
  return sum;
}

}  // namespace fide
