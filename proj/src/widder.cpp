#include "chaoskit/widder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "chaoskit/hermite.hpp"
#include "chaoskit/quadrature.hpp"

namespace chaoskit {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Phi(b) - Phi(a) for a <= b, using the tail that avoids cancellation.
double normal_interval(double a, double b) {
    constexpr double r = std::numbers::sqrt2;
    if (a >= 0.0) return 0.5 * (std::erfc(a / r) - std::erfc(b / r));
    if (b <= 0.0) return 0.5 * (std::erfc(-b / r) - std::erfc(-a / r));
    return 1.0 - 0.5 * std::erfc(-a / r) - 0.5 * std::erfc(b / r);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace

double widder_martingale(const SignedAtomicMeasure& mu, double t, std::span<const double> x) {
    if (x.size() != mu.dim()) throw std::invalid_argument("widder_martingale: dimension mismatch");
    if (mu.empty()) return 0.0;
    double top = -INFINITY;
    std::vector<double> expo(mu.size());
    for (std::size_t j = 0; j < mu.size(); ++j) {
        const auto& v = mu.atoms()[j].location;
        expo[j] = dot(v, x) - 0.5 * dot(v, v) * t;
        top = std::max(top, expo[j]);
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < mu.size(); ++j) sum += mu.atoms()[j].weight * std::exp(expo[j] - top);
    return sum * std::exp(top);
}

double pollard_closed_form(double t, double x) { return std::exp(0.5 * x * x / (t + 1.0)) / std::sqrt(t + 1.0); }

MartingaleSpec widder_martingale_spec(const SignedAtomicMeasure& mu, double p, double horizon, std::string label) {
    auto g = [mu](double t, std::span<const double> x) { return widder_martingale(mu, t, x); };
    MartingaleSpec m = make_martingale(std::move(label), g, mu.dim(), p, horizon, Provenance::measure_backed);
    m.measure = mu;
    return m;
}

MartingaleSpec pollard_spec(double p, double horizon) {
    auto g = [](double t, std::span<const double> x) { return pollard_closed_form(t, x[0]); };
    return make_martingale("pollard", g, 1, p, horizon, Provenance::closed_form);
}

AnalyticFunction laplace_function(const SignedAtomicMeasure& mu) {
    return [mu](std::span<const std::complex<double>> z) {
        if (z.size() != mu.dim()) throw std::invalid_argument("laplace_function: dimension mismatch");
        std::complex<double> sum = 0.0;
        for (const auto& atom : mu.atoms()) {
            std::complex<double> e = 0.0;
            for (std::size_t i = 0; i < z.size(); ++i) e += atom.location[i] * z[i];
            sum += atom.weight * std::exp(e);
        }
        return sum;
    };
}

NormResult widder_l1_norm(const SignedAtomicMeasure& mu, double t, std::size_t nodes) {
    if (!(t > 0.0)) throw std::invalid_argument("widder_l1_norm: t must be > 0");
    NormResult r;
    if (mu.dim() != 1) {
        auto run = [&](std::size_t n) {
            std::vector<double> terms;
            for_each_tensor_node(mu.dim(), t, gauss_hermite(n), [&](std::span<const double> x, double w) {
                terms.push_back(w * std::abs(widder_martingale(mu, t, x)));
            });
            return pairwise_sum(terms);
        };
        const double a = run(nodes), b = run(2 * nodes);
        r.value = b;
        r.relative_change = std::abs(a - b) / std::max(b, 1e-300);
        r.converged = r.relative_change < 1e-9;
        r.method = "gauss-hermite";
        return r;
    }
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& atom : mu.atoms()) {
        lo = std::min(lo, atom.location[0] * t);
        hi = std::max(hi, atom.location[0] * t);
    }
    const double sd = std::sqrt(t);
    lo -= 12.0 * sd;
    hi += 12.0 * sd;
    // the density has the sign of g; scan for sign changes then bisect
    auto sign_at = [&](double x) {
        const double v = widder_martingale(mu, t, std::span<const double>(&x, 1));
        return (v > 0.0) - (v < 0.0);
    };
    std::vector<double> breaks{lo, hi};
    const std::size_t scan = 4000;
    double xa = lo;
    int sa = sign_at(xa);
    for (std::size_t k = 1; k <= scan; ++k) {
        const double xb = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(scan);
        const int sb = sign_at(xb);
        if (sb == 0) {
            breaks.push_back(xb);
            xa = xb;
            sa = 0;
            continue;
        }
        if (sa != 0 && sa != sb) {
            double a = xa, b = xb;
            for (int it = 0; it < 200 && b - a > 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(a)); ++it) {
                const double mid = 0.5 * (a + b);
                (sign_at(mid) == sa ? a : b) = mid;
            }
            breaks.push_back(0.5 * (a + b));
        }
        xa = xb;
        sa = sb;
    }
    std::sort(breaks.begin(), breaks.end());
    const double norm = 1.0 / (sd * std::sqrt(2.0 * std::numbers::pi));
    auto density = [&](double x) {
        double s = 0.0;
        for (const auto& atom : mu.atoms()) {
            const double u = (x - atom.location[0] * t) / sd;
            s += atom.weight * std::exp(-0.5 * u * u);
        }
        return std::abs(s) * norm;
    };
    const std::size_t order = std::max<std::size_t>(16, nodes / 2);
    const double a = panel_integral(density, breaks, 0.5 * sd, order);
    const double b = panel_integral(density, breaks, 0.5 * sd, 2 * order);
    r.value = b;
    r.relative_change = std::abs(a - b) / std::max(b, 1e-300);
    r.converged = r.relative_change < 1e-9;
    r.method = "sign-split";
    return r;
}

// Integral of min(a phi(u), b phi(u - D)) over the line, D >= 0 in standard
// deviations. Since min(sum P, sum N) <= sum min(P_i, N_j), summing it over
// atom pairs bounds the cancellation between the Jordan parts.
namespace {
double gaussian_overlap(double a, double b, double D) {
    if (D <= 0.0) return std::min(a, b);
    const double u = 0.5 * D + std::log(b / a) / D;
    return a * normal_cdf(-u) + b * normal_cdf(u - D);
}
}  // namespace

WidderReport check_l1_norm_identity(const SignedAtomicMeasure& mu, std::span<const double> t_grid,
                                    double terminal_tolerance, std::size_t nodes) {
    if (t_grid.empty()) throw std::invalid_argument("check_l1_norm_identity: empty t grid");
    WidderReport report{"l1-norm-identity", {}};
    const double tv = total_variation(mu);
    double mass = 0.0;
    for (const auto& atom : mu.atoms()) mass += atom.weight;
    const auto parts = jordan_decompose(mu);
    const double t_max = *std::max_element(t_grid.begin(), t_grid.end());
    for (double t : t_grid) {
        const auto inputs = std::vector<std::pair<std::string, std::string>>{
            {"t", fmt(t)}, {"atoms", std::to_string(mu.size())}, {"d", std::to_string(mu.dim())}};
        auto push = [&](CheckRecord r, const NormResult* n) {
            r.inputs = inputs;
            if (n && !n->converged) {
                r.status = Status::unconverged;
                r.note = "refinement change " + fmt(n->relative_change);
            }
            report.records.push_back(std::move(r));
        };
        // E[g(t, X_t)] = mu(R^d): the integrand is exp(v . x) against N(0, tI)
        std::vector<double> terms;
        for_each_tensor_node(mu.dim(), t, gauss_hermite(mu.dim() == 1 ? 128 : 64),
                             [&](std::span<const double> x, double w) { terms.push_back(w * widder_martingale(mu, t, x)); });
        push(record_close("unit-mean", pairwise_sum(terms), mass, 1e-10 * std::max(1.0, tv), 1e-10), nullptr);

        const NormResult l1 = widder_l1_norm(mu, t, nodes);
        push(record_le("l1-bounded", l1.value, tv, 1.0 + 1e-10), &l1);
        if (mu.is_positive()) push(record_close("l1-equality", l1.value, tv, 0.0, 1e-10), &l1);

        double bound = 0.0;
        for (const auto& a : parts.positive.atoms())
            for (const auto& b : parts.negative.atoms()) {
                double dist2 = 0.0;
                for (std::size_t i = 0; i < mu.dim(); ++i) dist2 += (a.location[i] - b.location[i]) * (a.location[i] - b.location[i]);
                bound += 2.0 * gaussian_overlap(a.weight, b.weight, std::sqrt(dist2 * t));
            }
        CheckRecord sep = record_le("separation-rate", tv - l1.value, bound + 1e-12);
        sep.note = "gap <= 2 sum over (+, -) atom pairs of the overlap of w+ phi+ and w- phi-";
        push(std::move(sep), &l1);

        if (t == t_max && std::isfinite(terminal_tolerance))
            push(record_le("terminal-gap", tv - l1.value, terminal_tolerance), &l1);
    }
    return report;
}

CfRecovery recover_measure_cf(const MartingaleSpec& m, double t, std::span<const double> u, std::size_t nodes) {
    if (!(t > 0.0)) throw std::invalid_argument("recover_measure_cf: t must be > 0");
    if (u.size() != m.dim) throw std::invalid_argument("recover_measure_cf: dimension mismatch");
    if (m.measure && !m.measure->is_positive())
        throw std::invalid_argument("recover_measure_cf: the martingale must be positive");
    const std::vector<double> origin(m.dim, 0.0);
    if (std::abs(m.g(0.0, origin) - 1.0) > 1e-9)
        throw std::invalid_argument("recover_measure_cf: need g(0, 0) = 1");
    const double u2 = dot(u, u);
    auto run = [&](double tt, std::size_t n) {
        std::vector<double> re, im;
        for_each_tensor_node(m.dim, tt, gauss_hermite(n), [&](std::span<const double> x, double w) {
            const double gx = w * m.g(tt, x);
            const double phase = dot(u, x) / tt;
            re.push_back(gx * std::cos(phase));
            im.push_back(gx * std::sin(phase));
        });
        return std::complex<double>(pairwise_sum(re), pairwise_sum(im)) * std::exp(0.5 * u2 / tt);
    };
    CfRecovery r;
    const auto coarse = run(t, nodes);
    r.value = run(t, 2 * nodes);
    r.value_2t = run(2.0 * t, 2 * nodes);
    r.relative_change = std::abs(coarse - r.value) / std::max(std::abs(r.value), 1e-300);
    r.converged = std::abs(coarse - r.value) < 1e-9 * std::max(1.0, std::abs(r.value));
    return r;
}

namespace {

/// Intervals of A = {sin(k y) < -c} within [-R, R].
std::vector<std::pair<double, double>> separation_set(double k, double c, double R) {
    const double shift = std::asin(c);
    const double period = 2.0 * std::numbers::pi / k;
    std::vector<std::pair<double, double>> out;
    const auto j_lo = static_cast<long>(std::floor(-R / period)) - 1;
    const auto j_hi = static_cast<long>(std::ceil(R / period)) + 1;
    for (long j = j_lo; j <= j_hi; ++j) {
        const double a = (2.0 * std::numbers::pi * static_cast<double>(j) + std::numbers::pi + shift) / k;
        const double b = (2.0 * std::numbers::pi * static_cast<double>(j) + 2.0 * std::numbers::pi - shift) / k;
        if (b < -R || a > R) continue;
        out.emplace_back(std::max(a, -R), std::min(b, R));
    }
    return out;
}

struct SeparationValue {
    double value;
    double relative_change;
    double probability;
};

SeparationValue separation_value(double k, double T, double t) {
    if (!(k > 0.0) || !(T > 0.0) || !(t > 0.0) || t > T)
        throw std::invalid_argument("separation_example: need k > 0 and 0 < t <= T");
    const double c = std::exp(-0.5 * k * k * T);
    const double sdT = std::sqrt(T);
    const auto A = separation_set(k, c, 14.0 * sdT);
    double PA = 0.0;
    for (const auto& [a, b] : A) PA += normal_interval(a / sdT, b / sdT);
    if (PA < 1e-12) throw std::invalid_argument("separation_example: P(A) below 1e-12");
    const double sd = std::sqrt(t);
    auto phi_t = [sd](double x) { return std::exp(-0.5 * x * x / (sd * sd)) / (sd * std::sqrt(2.0 * std::numbers::pi)); };

    double coarse = 0.0, fine = 0.0;
    if (t >= T) {
        auto f = [&](double x) { return std::sin(k * x) * phi_t(x); };
        for (const auto& [a, b] : A) {
            const double br[2] = {a, b};
            coarse += panel_integral(f, br, 0.25 * sd, 24);
            fine += panel_integral(f, br, 0.25 * sd, 48);
        }
    } else {
        const double sigma = std::sqrt(T - t);
        auto m = [&](double x) {
            double s = 0.0;
            for (const auto& [a, b] : A) s += normal_interval((a - x) / sigma, (b - x) / sigma);
            return s;
        };
        auto f = [&](double x) { return std::sin(k * x) * m(x) * phi_t(x); };
        const double R = 14.0 * sd;
        const double br[2] = {-R, R};
        const double width = 0.25 * std::min({sd, sigma, 1.0 / k});
        coarse = panel_integral(f, br, width, 24);
        fine = panel_integral(f, br, width, 48);
    }
    return {fine / PA, std::abs(fine - coarse) / std::max(std::abs(fine), 1e-300), PA};
}

}  // namespace

double separation_indicator_value(double k, double T, double t) { return separation_value(k, T, t).value; }

WidderReport separation_example(double k, double T, double t, std::span<const SignedAtomicMeasure> measures,
                                std::size_t nodes) {
    const SeparationValue sv = separation_value(k, T, t);
    WidderReport report{"separation", {}};
    const double bound = -std::exp(-0.5 * k * k * t);
    auto inputs = [&] {
        return std::vector<std::pair<std::string, std::string>>{{"k", fmt(k)}, {"T", fmt(T)}, {"t", fmt(t)}};
    };
    for (std::size_t i = 0; i < measures.size(); ++i) {
        const auto& mu = measures[i];
        if (mu.dim() != 1 || !mu.is_probability())
            throw std::invalid_argument("separation_example: sample measures must be probability measures on R");
        auto run = [&](std::size_t n) {
            std::vector<double> terms;
            for_each_tensor_node(1, t, gauss_hermite(n), [&](std::span<const double> x, double w) {
                terms.push_back(w * std::sin(k * x[0]) * widder_martingale(mu, t, x));
            });
            return pairwise_sum(terms);
        };
        const double a = run(nodes), b = run(2 * nodes);
        CheckRecord r = record_ge("widder-side", b, bound, 1e-9);
        r.inputs = inputs();
        r.inputs.emplace_back("measure", std::to_string(i));
        r.inputs.emplace_back("atoms", std::to_string(mu.size()));
        if (std::abs(a - b) > 1e-12) {
            r.status = Status::unconverged;
            r.note = "refinement change " + fmt(std::abs(a - b));
        }
        report.records.push_back(std::move(r));
    }
    CheckRecord r = record_lt("indicator-side", sv.value, bound);
    r.inputs = inputs();
    r.inputs.emplace_back("P(A)", fmt(sv.probability));
    r.note = "margin " + fmt(bound - sv.value);
    if (!(sv.relative_change < 1e-9)) {
        r.status = Status::unconverged;
        r.note += "; refinement change " + fmt(sv.relative_change);
    }
    report.records.push_back(std::move(r));
    return report;
}

HermiteSeries coefficients_from_measure(const SignedAtomicMeasure& mu, unsigned cutoff, double t) {
    HermiteSeries s(t, mu.dim());
    for (const MultiIndex& alpha : enumerate_multi_indices(mu.dim(), cutoff)) {
        const double b = moment(mu, alpha) * std::exp(-alpha.log_factorial());
        if (b != 0.0) s.set(alpha, b);
    }
    return s;
}

double second_moment_constant(const SignedAtomicMeasure& mu, double t) {
    double c = 0.0;
    for (const auto& a : mu.atoms())
        for (const auto& b : mu.atoms()) c += a.weight * b.weight * std::exp(t * dot(a.location, b.location));
    return c;
}

WidderReport check_moment_characterization(const SignedAtomicMeasure& mu, std::span<const double> t_list,
                                           std::span<const double> K_list) {
    if (!mu.is_positive()) throw std::invalid_argument("check_moment_characterization: measure must be positive");
    WidderReport report{"moment-characterization", {}};
    const std::size_t d = mu.dim();
    const auto& atoms = mu.atoms();
    for (double t : t_list) {
        const double C = second_moment_constant(mu, t);
        {
            std::vector<double> terms;
            const std::size_t n = d == 1 ? 160 : 80;
            for_each_tensor_node(d, t, gauss_hermite(n), [&](std::span<const double> x, double w) {
                const double g = widder_martingale(mu, t, x);
                terms.push_back(w * g * g);
            });
            CheckRecord r = record_close("second-moment-identity", pairwise_sum(terms), C, 0.0, 1e-8);
            r.inputs = {{"t", fmt(t)}, {"atoms", std::to_string(mu.size())}, {"d", std::to_string(d)}};
            report.records.push_back(std::move(r));
        }
        for (double K : K_list) {
            auto inputs = std::vector<std::pair<std::string, std::string>>{
                {"t", fmt(t)}, {"K", fmt(K)}, {"atoms", std::to_string(mu.size())}, {"d", std::to_string(d)}};
            double pairs = 0.0;
            for (const auto& a : atoms)
                for (const auto& b : atoms)
                    if (dot(a.location, b.location) > K) pairs += a.weight * b.weight;
            CheckRecord r1 = record_le("pair-tail", pairs, C * std::exp(-t * K));
            r1.inputs = inputs;
            report.records.push_back(std::move(r1));

            // worst coordinate/orthant combination
            double worst_ratio = -1.0, worst_mass = 0.0;
            std::string worst;
            const double orthant_bound = std::sqrt(C) * std::exp(-0.5 * t * K);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
                    double mass = 0.0;
                    for (const auto& a : atoms) {
                        if (!(std::abs(a.location[i]) > std::sqrt(K))) continue;
                        bool inside = true;
                        for (std::size_t j = 0; j < d && inside; ++j) {
                            const bool negative = a.location[j] < 0.0;  // sign(0) = +1
                            inside = negative == static_cast<bool>((mask >> j) & 1u);
                        }
                        if (inside) mass += a.weight;
                    }
                    if (mass / orthant_bound > worst_ratio) {
                        worst_ratio = mass / orthant_bound;
                        worst_mass = mass;
                        worst = "i=" + std::to_string(i) + " orthant=" + std::to_string(mask);
                    }
                }
            CheckRecord r2 = record_le("orthant-tail", worst_mass, orthant_bound);
            r2.inputs = inputs;
            r2.note = "worst " + worst;
            report.records.push_back(std::move(r2));

            double tail = tail_mass(mu, K);
            const double dd = static_cast<double>(d);
            CheckRecord r3 = record_le("norm-tail", tail, dd * std::pow(2.0, dd) * std::sqrt(C) * std::exp(-t * K / (2.0 * dd)));
            r3.inputs = inputs;
            report.records.push_back(std::move(r3));
        }
    }
    return report;
}

double pollard_l1_term(double t, unsigned k) {
    HermiteSeries h(t, 1);
    h.set(MultiIndex{2 * k}, 1.0);
    const NormResult n = lp_norm_hermite_functional(h, 1.0);
    if (!n.converged) throw std::runtime_error("pollard_l1_term: L1 norm did not converge");
    const double kk = k;
    return n.value * std::exp(-kk * std::log(2.0) - std::lgamma(kk + 1.0));
}

WidderReport check_pollard_divergence(double t, unsigned k_lo, unsigned k_hi) {
    if (!(t > 0.0) || k_lo >= k_hi) throw std::invalid_argument("check_pollard_divergence: need t > 0, k_lo < k_hi");
    WidderReport report{"pollard", {}};
    const bool applicable = t > std::numbers::e;
    std::vector<double> a;
    std::vector<NormResult> norms;
    for (unsigned k = k_lo; k <= k_hi; ++k) {
        HermiteSeries h(t, 1);
        h.set(MultiIndex{2 * k}, 1.0);
        norms.push_back(lp_norm_hermite_functional(h, 1.0));
        const double kk = k;
        const double log_b = -kk * std::log(2.0) - std::lgamma(kk + 1.0);
        a.push_back(norms.back().value * std::exp(log_b));
        // ||H_2k||_1 >= e^{-k} sqrt((2k)! t^{2k})
        const double lower = std::exp(log_b - kk + 0.5 * (std::lgamma(2.0 * kk + 1.0) + 2.0 * kk * std::log(t)));
        CheckRecord r = record_le("l1-lower-bound", lower, a.back(), 1.0 + 1e-9);
        r.inputs = {{"t", fmt(t)}, {"k", std::to_string(k)}};
        if (!norms.back().converged) r.status = Status::unconverged;
        report.records.push_back(std::move(r));
    }
    auto claim = [&](CheckRecord r) {
        if (!applicable) {
            r.status = Status::inapplicable;
            r.note = "t <= e; no divergence claim";
        }
        report.records.push_back(std::move(r));
    };
    for (std::size_t i = 1; i < a.size(); ++i) {
        CheckRecord r = record_lt("l1-family-increasing", a[i - 1], a[i]);
        r.inputs = {{"t", fmt(t)}, {"k", std::to_string(k_lo + i)}};
        claim(std::move(r));
    }
    CheckRecord growth = record_lt("l1-family-growth", 1e6, a.back() / a.front());
    growth.inputs = {{"t", fmt(t)}, {"k_lo", std::to_string(k_lo)}, {"k_hi", std::to_string(k_hi)}};
    claim(std::move(growth));

    // the Gaussian measure has no quadratic exponential moment at lambda = 1/2
    const RefinementProbe probe = gaussian_quad_exp_moment_probe(1.0, 0.5, 64);
    CheckRecord div;
    div.name = "quad-exp-moment-divergence";
    div.inputs = {{"lambda", "0.5"}, {"nodes", "64"}};
    div.left = probe.relative_change;
    div.relation = ">";
    div.right = 1e-6;
    div.status = probe.converged ? Status::fail : Status::pass;
    div.note = "coarse " + fmt(probe.coarse) + ", fine " + fmt(probe.fine);
    report.records.push_back(std::move(div));

    const RefinementProbe control = gaussian_quad_exp_moment_probe(1.0, 0.25, 64);
    CheckRecord ctl = record_close("quad-exp-moment-control", control.fine, std::sqrt(2.0), 0.0, 1e-6);
    ctl.inputs = {{"lambda", "0.25"}, {"nodes", "64"}};
    if (!control.converged) ctl.status = Status::unconverged;
    report.records.push_back(std::move(ctl));
    return report;
}

WidderReport check_pollard_closed_form(std::span<const double> t_grid, std::span<const double> x_grid,
                                       std::size_t nodes) {
    const double zero = 0.0, one = 1.0;
    const std::size_t n = nodes;
    const SignedAtomicMeasure gauss = discretize_gaussian(std::span(&zero, 1), std::span(&one, 1), std::span(&n, 1));
    WidderReport report{"pollard", {}};
    for (double t : t_grid)
        for (double x : x_grid) {
            const double closed = pollard_closed_form(t, x);
            CheckRecord r = record_close("pollard-closed-form", widder_martingale(gauss, t, std::span(&x, 1)), closed,
                                         0.0, 1e-6);
            r.inputs = {{"t", fmt(t)}, {"x", fmt(x)}, {"nodes", std::to_string(nodes)}};
            report.records.push_back(std::move(r));
        }
    return report;
}

}  // namespace chaoskit
