#pragma once

#include <vector>

namespace nestres {

struct GaussRule {
    std::vector<double> nodes;    ///< on [-1, 1], ascending
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, nodes from Newton iteration on P_n.
GaussRule gauss_legendre(int n);

/// Integral of f over [a, b] with the given rule.
template <class F>
auto integrate(const GaussRule& rule, double a, double b, F&& f) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    decltype(f(a)) sum{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

}  // namespace nestres
