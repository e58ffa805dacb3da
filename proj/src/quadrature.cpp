#include "chaoskit/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace chaoskit {

namespace {

// Orthonormal Hermite polynomials for N(0,1): psi_0 = 1,
// psi_{k+1} = (y psi_k - sqrt(k) psi_{k-1}) / sqrt(k+1).
// Returns log|psi_{n-1}(y)| and the ratio psi_n(y) / psi_{n-1}(y); the pair is
// renormalized as it grows so no overflow occurs for large n and |y|.
struct PsiTail {
    double log_abs_prev;
    double ratio;
};

PsiTail orthonormal_tail(std::size_t n, double y) {
    double prev = 1.0;  // psi_{k-1}
    double cur = y;     // psi_k, starting at k = 1
    double log_scale = 0.0;
    if (n == 1) return {0.0, y};
    for (std::size_t k = 1; k + 1 <= n - 1; ++k) {
        const double next = (y * cur - std::sqrt(static_cast<double>(k)) * prev) /
                            std::sqrt(static_cast<double>(k + 1));
        prev = cur;
        cur = next;
        const double mag = std::max(std::abs(prev), std::abs(cur));
        if (mag > 0x1p+400) {
            int e = 0;
            std::frexp(mag, &e);
            prev = std::ldexp(prev, -e);
            cur = std::ldexp(cur, -e);
            log_scale += e * std::numbers::ln2;
        }
    }
    // cur = psi_{n-1}, prev = psi_{n-2}
    const double k = static_cast<double>(n - 1);
    const double next = (y * cur - std::sqrt(k) * prev) / std::sqrt(k + 1.0);
    return {std::log(std::abs(cur)) + log_scale, next / cur};
}

std::unique_ptr<GaussHermiteRule> build_gauss_hermite(std::size_t n) {
    auto rule = std::make_unique<GaussHermiteRule>();
    rule->nodes.resize(n);
    rule->weights.resize(n);
    rule->log_weights.resize(n);
    if (n == 1) {
        rule->nodes[0] = 0.0;
        rule->weights[0] = 1.0;
        rule->log_weights[0] = 0.0;
        return rule;
    }
    // Golub-Welsch starting values from the Jacobi matrix, then Newton polish.
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    Eigen::VectorXd sub(static_cast<Eigen::Index>(n - 1));
    for (std::size_t k = 1; k < n; ++k) sub[static_cast<Eigen::Index>(k - 1)] = std::sqrt(static_cast<double>(k));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("gauss_hermite: eigen solver failed");
    const auto& ev = solver.eigenvalues();

    const double sqrt_n = std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < n / 2 + n % 2; ++i) {
        // Polish the nonnegative half and mirror.
        const std::size_t j = n - 1 - i;
        double y = std::abs(ev[static_cast<Eigen::Index>(j)]);
        if (n % 2 == 1 && i == n / 2) y = 0.0;
        for (int it = 0; it < 8 && y != 0.0; ++it) {
            const PsiTail tail = orthonormal_tail(n, y);
            // psi_n' = sqrt(n) psi_{n-1}
            const double step = tail.ratio / sqrt_n;
            y -= step;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(y))) break;
        }
        const PsiTail tail = orthonormal_tail(n, y);
        const double log_w = -std::log(static_cast<double>(n)) - 2.0 * tail.log_abs_prev;
        rule->nodes[j] = y;
        rule->nodes[i] = -y;
        rule->log_weights[i] = rule->log_weights[j] = log_w;
        rule->weights[i] = rule->weights[j] = std::exp(log_w);
    }
    return rule;
}

std::unique_ptr<GaussLegendreRule> build_gauss_legendre(std::size_t n) {
    auto rule = std::make_unique<GaussLegendreRule>();
    rule->nodes.resize(n);
    rule->weights.resize(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule->nodes[i] = -x;
        rule->nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule->weights[i] = rule->weights[n - 1 - i] = w;
    }
    return rule;
}

template <class Rule, class Build>
const Rule& cached(std::size_t n, Build build) {
    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<Rule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = build(n);
    return *slot;
}

}  // namespace

const GaussHermiteRule& gauss_hermite(std::size_t n) {
    if (n == 0) throw std::invalid_argument("gauss_hermite: n must be >= 1");
    return cached<GaussHermiteRule>(n, build_gauss_hermite);
}

const GaussLegendreRule& gauss_legendre(std::size_t n) {
    if (n == 0) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    return cached<GaussLegendreRule>(n, build_gauss_legendre);
}

void for_each_tensor_node(std::size_t d, double t, const GaussHermiteRule& rule,
                          const std::function<void(std::span<const double>, double)>& visit) {
    const std::size_t n = rule.size();
    const double scale = std::sqrt(t);
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> x(d);
    while (true) {
        double w = 1.0;
        for (std::size_t k = 0; k < d; ++k) {
            x[k] = scale * rule.nodes[idx[k]];
            w *= rule.weights[idx[k]];
        }
        visit(x, w);
        std::size_t k = 0;
        while (k < d && ++idx[k] == n) idx[k++] = 0;
        if (k == d) break;
    }
}

double gaussian_expectation(std::size_t d, double t, std::size_t n,
                            const std::function<double(std::span<const double>)>& f) {
    const auto& rule = gauss_hermite(n);
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(std::pow(static_cast<double>(n), static_cast<double>(d))));
    for_each_tensor_node(d, t, rule, [&](std::span<const double> x, double w) {
        if (w > 0.0) terms.push_back(w * f(x));
    });
    return pairwise_sum(terms);
}

double panel_integral(const std::function<double(double)>& f, std::span<const double> breakpoints,
                      double max_width, std::size_t n) {
    if (breakpoints.size() < 2) return 0.0;
    const auto& gl = gauss_legendre(n);
    std::vector<double> terms;
    for (std::size_t s = 0; s + 1 < breakpoints.size(); ++s) {
        const double a = breakpoints[s];
        const double b = breakpoints[s + 1];
        if (!(b > a)) continue;
        const auto panels = static_cast<std::size_t>(std::ceil((b - a) / max_width));
        const double h = (b - a) / static_cast<double>(panels);
        for (std::size_t p = 0; p < panels; ++p) {
            const double lo = a + h * static_cast<double>(p);
            double acc = 0.0;
            for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
                const double u = 0.5 * (gl.nodes[i] + 1.0);
                // quintic smoothstep s(u) = u^3 (10 - 15 u + 6 u^2)
                const double sm = u * u * u * (10.0 - 15.0 * u + 6.0 * u * u);
                const double dsm = 30.0 * u * u * (1.0 - u) * (1.0 - u);
                acc += gl.weights[i] * 0.5 * dsm * f(lo + h * sm);
            }
            terms.push_back(h * acc);
        }
    }
    return pairwise_sum(terms);
}

namespace {

struct PanelPiece {
    double lo, h;      // panel [lo, lo + h] in x
    double u0, u1;     // sub-interval of the smoothstep variable
    double coarse, fine;  // n- and 2n-point values, both with f(x, true)
};

double mapped_rule(const std::function<double(double, bool)>& f, bool fine, const GaussLegendreRule& gl, double lo,
                   double h, double u0, double u1) {
    double acc = 0.0;
    const double half = 0.5 * (u1 - u0);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double u = u0 + half * (gl.nodes[i] + 1.0);
        const double sm = u * u * u * (10.0 - 15.0 * u + 6.0 * u * u);
        const double dsm = 30.0 * u * u * (1.0 - u) * (1.0 - u);
        if (dsm != 0.0) acc += gl.weights[i] * dsm * f(lo + h * sm, fine);
    }
    return h * half * acc;
}

}  // namespace

RefinedIntegral adaptive_panel_integral(const std::function<double(double, bool)>& f,
                                        std::span<const double> breakpoints, double max_width, std::size_t n,
                                        double rel_tol, unsigned max_depth) {
    const auto& gl_n = gauss_legendre(n);
    const auto& gl_2n = gauss_legendre(2 * n);
    auto evaluate = [&](PanelPiece& piece) {
        piece.coarse = mapped_rule(f, true, gl_n, piece.lo, piece.h, piece.u0, piece.u1);
        piece.fine = mapped_rule(f, true, gl_2n, piece.lo, piece.h, piece.u0, piece.u1);
    };
    std::vector<PanelPiece> pieces;
    for (std::size_t s = 0; s + 1 < breakpoints.size(); ++s) {
        const double a = breakpoints[s];
        const double b = breakpoints[s + 1];
        if (!(b > a)) continue;
        const auto panels = static_cast<std::size_t>(std::ceil((b - a) / max_width));
        const double h = (b - a) / static_cast<double>(panels);
        for (std::size_t p = 0; p < panels; ++p) {
            PanelPiece piece{a + h * static_cast<double>(p), h, 0.0, 1.0, 0.0, 0.0};
            evaluate(piece);
            pieces.push_back(piece);
        }
    }
    double scale = 0.0;
    for (const auto& piece : pieces) scale += std::abs(piece.fine);
    const double budget = rel_tol * scale;
    const double span_total = breakpoints.empty() ? 0.0 : breakpoints.back() - breakpoints.front();

    std::vector<double> coarse_terms, fine_terms;
    // Depth-first bisection in u; a piece's share of the budget is its
    // x-width fraction of the whole range.
    std::function<void(PanelPiece, unsigned)> settle = [&](PanelPiece piece, unsigned depth) {
        const double width = piece.h * (piece.u1 - piece.u0);
        const double share = span_total > 0.0 ? budget * width / span_total : budget;
        // the relative floor stops bisection once the two rules agree to
        // rounding, which the share alone would not for tiny pieces
        const double diff = std::abs(piece.coarse - piece.fine);
        if (diff <= share || diff <= 1e-13 * std::abs(piece.fine) || depth >= max_depth) {
            coarse_terms.push_back(mapped_rule(f, false, gl_n, piece.lo, piece.h, piece.u0, piece.u1));
            fine_terms.push_back(piece.fine);
            return;
        }
        const double mid = 0.5 * (piece.u0 + piece.u1);
        PanelPiece left{piece.lo, piece.h, piece.u0, mid, 0.0, 0.0};
        PanelPiece right{piece.lo, piece.h, mid, piece.u1, 0.0, 0.0};
        evaluate(left);
        evaluate(right);
        settle(left, depth + 1);
        settle(right, depth + 1);
    };
    for (const auto& piece : pieces) settle(piece, 0);
    return {pairwise_sum(coarse_terms), pairwise_sum(fine_terms)};
}

double pairwise_sum(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace chaoskit
