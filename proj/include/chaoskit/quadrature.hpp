#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace chaoskit {

/// Gauss-Hermite rule for the standard normal weight: sum_i w_i f(y_i)
/// approximates E[f(Y)], Y ~ N(0, 1), exactly for polynomials of degree
/// < 2 n. Weights are also kept as logs since they underflow for large n.
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> log_weights;

    std::size_t size() const noexcept { return nodes.size(); }
};

/// n-point rule (n >= 1). Rules are cached; the returned reference stays valid
/// for the lifetime of the program. Thread-safe.
const GaussHermiteRule& gauss_hermite(std::size_t n);

/// Gauss-Legendre rule on [-1, 1]. Cached and thread-safe.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre(std::size_t n);

/// E[f(X)] for X ~ N(0, t I_d) by the tensor product of n-point rules.
double gaussian_expectation(std::size_t d, double t, std::size_t n,
                            const std::function<double(std::span<const double>)>& f);

/// Visits every node of the tensor rule with its weight. The callback receives
/// the point x (already scaled to variance t) and the product weight.
void for_each_tensor_node(std::size_t d, double t, const GaussHermiteRule& rule,
                          const std::function<void(std::span<const double>, double)>& visit);

/// Integral of f over [a, b] using panels of width at most max_width, each
/// integrated by an n-point Gauss-Legendre rule after a quintic smoothstep
/// change of variables. The substitution flattens algebraic endpoint
/// singularities such as |x - r|^p at panel boundaries, so breakpoints should
/// be placed at the non-smooth points of f.
double panel_integral(const std::function<double(double)>& f, std::span<const double> breakpoints,
                      double max_width, std::size_t n);

/// Paired results of an n-point and a 2n-point rule on the same partition.
struct RefinedIntegral {
    double coarse = 0.0;
    double fine = 0.0;
};

/// Adaptive counterpart of panel_integral. Smoothstep-mapped panels are
/// bisected (up to max_depth times) until the n- and 2n-point rules applied to
/// f(x, true) agree within the panel's share of rel_tol * total. On the final
/// partition `fine` is the 2n-point sum of f(x, true) and `coarse` the n-point
/// sum of f(x, false), so a caller whose f uses a finer inner rule when the
/// flag is set gets a complete doubling comparison.
RefinedIntegral adaptive_panel_integral(const std::function<double(double, bool)>& f,
                                        std::span<const double> breakpoints, double max_width, std::size_t n,
                                        double rel_tol, unsigned max_depth = 16);

/// Pairwise summation, fixed association order for a given length.
double pairwise_sum(std::span<const double> values);

}  // namespace chaoskit
