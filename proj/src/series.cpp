#include "chaoskit/series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "chaoskit/hermite.hpp"
#include "chaoskit/parallel.hpp"
#include "chaoskit/quadrature.hpp"
#include "chaoskit/rng.hpp"

namespace chaoskit {

std::string_view to_string(Provenance p) noexcept {
    switch (p) {
        case Provenance::measure_backed: return "measure-backed";
        case Provenance::closed_form: return "closed-form";
        case Provenance::conditional_quadrature: return "conditional-quadrature";
    }
    return "unknown";
}

namespace {

double gh_abs_moment(const MartingaleSpec& m, double t, double p, std::size_t n) {
    std::vector<double> terms;
    for_each_tensor_node(m.dim, t, gauss_hermite(n), [&](std::span<const double> x, double w) {
        const double v = std::abs(m.g(t, x));
        terms.push_back(v == 0.0 ? 0.0 : w * std::pow(v, p));
    });
    return pairwise_sum(terms);
}

double rel_change(double a, double b) {
    if (a == b) return 0.0;
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

}  // namespace

MartingaleSpec make_martingale(std::string label, std::function<double(double, std::span<const double>)> g,
                               std::size_t dim, double p, double horizon, Provenance provenance, std::size_t nodes) {
    if (dim == 0) throw std::invalid_argument("make_martingale: dimension must be >= 1");
    if (!(p > 1.0)) throw std::invalid_argument("make_martingale: integrability exponent must be > 1");
    if (!(horizon > 0.0)) throw std::invalid_argument("make_martingale: horizon must be > 0");
    MartingaleSpec m;
    m.g = std::move(g);
    m.dim = dim;
    m.p = p;
    m.horizon = horizon;
    m.provenance = provenance;
    m.label = std::move(label);
    const std::vector<double> times =
        std::isfinite(horizon) ? std::vector<double>{horizon / 4.0, horizon / 2.0, horizon} : std::vector<double>{1.0, 4.0};
    m.moment_certified = true;
    for (double t : times) {
        const double a = gh_abs_moment(m, t, p, nodes);
        const double b = gh_abs_moment(m, t, p, 2 * nodes);
        const double change = std::isfinite(a) && std::isfinite(b) ? rel_change(a, b) : INFINITY;
        m.moment_relative_change = std::max(m.moment_relative_change, change);
        if (!(change < 1e-6)) m.moment_certified = false;
    }
    return m;
}

MartingaleSpec conditional_martingale(std::string label, std::function<double(std::span<const double>)> terminal,
                                      std::size_t dim, double p, double horizon, std::size_t nodes) {
    if (!std::isfinite(horizon)) throw std::invalid_argument("conditional_martingale: horizon must be finite");
    auto g = [terminal = std::move(terminal), dim, horizon, nodes](double t, std::span<const double> x) {
        if (t >= horizon) return terminal(x);
        std::vector<double> shifted(dim);
        std::vector<double> terms;
        for_each_tensor_node(dim, horizon - t, gauss_hermite(nodes), [&](std::span<const double> y, double w) {
            for (std::size_t i = 0; i < dim; ++i) shifted[i] = x[i] + y[i];
            terms.push_back(w * terminal(shifted));
        });
        return pairwise_sum(terms);
    };
    return make_martingale(std::move(label), std::move(g), dim, p, horizon, Provenance::conditional_quadrature);
}

namespace {

/// Contracts the tensor of g values against w_j H_k(t, x_j) along every axis.
/// Returns the (N+1)^d tensor of E[g H_alpha] (row-major, axis 0 outermost)
/// and E[g^2].
std::pair<std::vector<double>, double> hermite_moments(const MartingaleSpec& m, double t, unsigned cutoff,
                                                       std::size_t n) {
    const auto& rule = gauss_hermite(n);
    const std::size_t d = m.dim;
    const std::size_t K = cutoff + 1;
    const double sd = std::sqrt(t);

    std::vector<double> kernel(K * n);  // kernel[k * n + j] = w_j H_k(t, x_j)
    std::vector<double> table(K);
    for (std::size_t j = 0; j < n; ++j) {
        hermite_table(t, sd * rule.nodes[j], table);
        for (std::size_t k = 0; k < K; ++k) kernel[k * n + j] = rule.weights[j] * table[k];
    }

    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= n;
    std::vector<double> tensor(total);
    std::vector<double> squares(total);
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> x(d);
    for (std::size_t flat = 0; flat < total; ++flat) {
        // row-major with axis 0 outermost
        std::size_t rem = flat;
        double w = 1.0;
        for (std::size_t i = d; i-- > 0;) {
            idx[i] = rem % n;
            rem /= n;
            x[i] = sd * rule.nodes[idx[i]];
            w *= rule.weights[idx[i]];
        }
        tensor[flat] = m.g(t, x);
        squares[flat] = w * tensor[flat] * tensor[flat];
    }
    const double second_moment = pairwise_sum(squares);

    std::vector<std::size_t> dims(d, n);
    for (std::size_t axis = 0; axis < d; ++axis) {
        std::size_t outer = 1, inner = 1;
        for (std::size_t i = 0; i < axis; ++i) outer *= dims[i];
        for (std::size_t i = axis + 1; i < d; ++i) inner *= dims[i];
        std::vector<double> next(outer * K * inner, 0.0);
        for (std::size_t o = 0; o < outer; ++o)
            for (std::size_t k = 0; k < K; ++k) {
                double* dst = next.data() + (o * K + k) * inner;
                for (std::size_t j = 0; j < n; ++j) {
                    const double c = kernel[k * n + j];
                    const double* src = tensor.data() + (o * n + j) * inner;
                    for (std::size_t r = 0; r < inner; ++r) dst[r] += c * src[r];
                }
            }
        tensor = std::move(next);
        dims[axis] = K;
    }
    return {std::move(tensor), second_moment};
}

std::size_t tensor_offset(const MultiIndex& alpha, std::size_t K) {
    std::size_t off = 0;
    for (std::size_t i = 0; i < alpha.dim(); ++i) off = off * K + alpha[i];
    return off;
}

}  // namespace

CoefficientResult coefficients_from_martingale(const MartingaleSpec& m, double t, unsigned cutoff, std::size_t nodes) {
    if (!(t > 0.0)) throw std::invalid_argument("coefficients_from_martingale: t must be > 0");
    if (t > m.horizon) throw std::invalid_argument("coefficients_from_martingale: t beyond the horizon");
    if (nodes == 0) nodes = 2 * static_cast<std::size_t>(cutoff) + 40;
    const auto [coarse, m2_coarse] = hermite_moments(m, t, cutoff, nodes);
    const auto [fine, m2_fine] = hermite_moments(m, t, cutoff, 2 * nodes);
    const double scale = std::sqrt(std::max(m2_fine, 0.0));
    const std::size_t K = cutoff + 1;
    const double log_t = std::log(t);

    CoefficientResult result{HermiteSeries(t, m.dim), 0.0, false};
    for (const MultiIndex& alpha : enumerate_multi_indices(m.dim, cutoff)) {
        const std::size_t off = tensor_offset(alpha, K);
        const double log_norm2 = alpha.log_factorial() + alpha.degree() * log_t;
        const double b = fine[off] * std::exp(-log_norm2);
        const double b_coarse = coarse[off] * std::exp(-log_norm2);
        // |b_alpha| sqrt(alpha! t^|alpha|) <= ||M_t||_2, so this is the natural unit
        const double change = std::abs(b - b_coarse) * std::exp(0.5 * log_norm2);
        result.relative_change = std::max(result.relative_change, scale > 0.0 ? change / scale : change);
        // entries below the quadrature noise floor are exact zeros (parity)
        if (std::abs(b) * std::exp(0.5 * log_norm2) > 1e-15 * scale) result.series.set(alpha, b);
    }
    result.converged = std::isfinite(result.relative_change) && result.relative_change < 1e-10 &&
                       std::isfinite(m2_coarse) && rel_change(m2_coarse, m2_fine) < 1e-10;
    return result;
}

NormResult martingale_lp_norm(const MartingaleSpec& m, double t, double p, std::size_t nodes) {
    const double a = std::pow(gh_abs_moment(m, t, p, nodes), 1.0 / p);
    const double b = std::pow(gh_abs_moment(m, t, p, 2 * nodes), 1.0 / p);
    NormResult r;
    r.value = b;
    r.relative_change = rel_change(a, b);
    r.converged = std::isfinite(b) && r.relative_change < 1e-9;
    r.method = "gauss-hermite";
    return r;
}

double series_tail_bound(std::size_t d, double p, double t, double K, unsigned cutoff, double z_norm) {
    if (z_norm == 0.0 || K == 0.0) return 0.0;
    const double c = std::max(1.0 / (p - 1.0), 1.0);
    const double log_a = std::log(static_cast<double>(d) * std::sqrt(c / t) * z_norm);
    const double log_K = std::log(K);
    double sum = 0.0;
    // terms peak near n = a^2, then decay faster than geometrically
    const double peak = std::exp(2.0 * log_a);
    for (unsigned n = cutoff + 1;; ++n) {
        const double term = std::exp(log_K + n * log_a - 0.5 * std::lgamma(n + 1.0));
        sum += term;
        if (static_cast<double>(n) > peak + 1.0 && term <= 1e-17 * sum) break;
        if (n > cutoff + 100000) return INFINITY;
    }
    return sum;
}

unsigned choose_truncation(std::size_t d, double p, double t, double K, double z_norm, double tolerance) {
    unsigned n = 24;
    while (series_tail_bound(d, p, t, K, n, z_norm) > tolerance) {
        n += 4;
        if (n > 2000) throw std::runtime_error("choose_truncation: no admissible degree below 2000");
    }
    return n;
}

std::complex<double> analytic_eval(const HermiteSeries& series, std::span<const std::complex<double>> z) {
    if (z.size() != series.dim()) throw std::invalid_argument("analytic_eval: dimension mismatch");
    const unsigned deg = series.max_degree();
    const std::size_t d = series.dim();
    std::vector<std::complex<double>> powers(d * (deg + 1));
    for (std::size_t i = 0; i < d; ++i) {
        powers[i * (deg + 1)] = 1.0;
        for (unsigned k = 1; k <= deg; ++k) powers[i * (deg + 1) + k] = powers[i * (deg + 1) + k - 1] * z[i];
    }
    std::complex<double> sum = 0.0;
    for (const auto& [alpha, b] : series.terms()) {
        std::complex<double> term = b;
        for (std::size_t i = 0; i < d; ++i) term *= powers[i * (deg + 1) + alpha[i]];
        sum += term;
    }
    return sum;
}

AnalyticValue analytic_eval(const HermiteSeries& series, std::span<const std::complex<double>> z,
                            const TailModel& tail) {
    AnalyticValue v;
    v.value = analytic_eval(series, z);
    double norm2 = 0.0;
    for (const auto& zi : z) norm2 += std::norm(zi);
    v.tail_bound = series_tail_bound(series.dim(), tail.p, series.time(), tail.K,
                                     tail.cutoff.value_or(series.max_degree()), std::sqrt(norm2));
    v.tail_ok = v.tail_bound <= tail.tolerance;
    return v;
}

ComplexQuadrature analytic_eval_integral(const MartingaleSpec& m, double t, std::span<const std::complex<double>> z,
                                         std::size_t nodes) {
    if (!(t > 0.0) || t > m.horizon) throw std::invalid_argument("analytic_eval_integral: t must lie in (0, T]");
    if (z.size() != m.dim) throw std::invalid_argument("analytic_eval_integral: dimension mismatch");
    std::complex<double> zz = 0.0;
    for (const auto& zi : z) zz += zi * zi;
    auto run = [&](std::size_t n) {
        std::vector<double> re, im;
        for_each_tensor_node(m.dim, t, gauss_hermite(n), [&](std::span<const double> x, double w) {
            std::complex<double> zx = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) zx += z[i] * x[i];
            const std::complex<double> v = w * m.g(t, x) * std::exp((zx - 0.5 * zz) / t);
            re.push_back(v.real());
            im.push_back(v.imag());
        });
        return std::complex<double>(pairwise_sum(re), pairwise_sum(im));
    };
    const auto a = run(nodes);
    const auto b = run(2 * nodes);
    ComplexQuadrature q;
    q.value = b;
    q.relative_change = std::abs(a - b) / std::max(std::abs(b), 1e-300);
    q.converged = std::isfinite(q.relative_change) && (q.relative_change < 1e-10 || std::abs(a - b) < 1e-14);
    return q;
}

AnalyticFunction series_function(HermiteSeries series) {
    return [s = std::move(series)](std::span<const std::complex<double>> z) { return analytic_eval(s, z); };
}

namespace {

std::string point_string(std::span<const std::complex<double>> z) {
    std::string s = "(";
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (i) s += ", ";
        s += fmt(z[i].real()) + (z[i].imag() < 0 ? "-" : "+") + fmt(std::abs(z[i].imag())) + "i";
    }
    return s + ")";
}

std::string point_string(std::span<const double> x) {
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + fmt(x[i]);
    return s + ")";
}

}  // namespace

CheckReport check_growth_order(const MartingaleSpec& m, double t, double p,
                               std::span<const std::vector<std::complex<double>>> z_grid, std::size_t nodes) {
    if (!(p > 1.0)) throw std::invalid_argument("check_growth_order: p must be > 1");
    CheckReport report{"growth-order", {}};
    const NormResult K = martingale_lp_norm(m, t, p, nodes);
    double zmax = 0.0;
    for (const auto& z : z_grid) {
        double n2 = 0.0;
        for (const auto& zi : z) n2 += std::norm(zi);
        zmax = std::max(zmax, std::sqrt(n2));
    }
    TailModel tail{p, K.value, 1e-10 * std::max(1.0, K.value), {}};
    const unsigned cutoff = choose_truncation(m.dim, p, t, K.value, zmax, tail.tolerance);
    tail.cutoff = cutoff;
    const CoefficientResult coeffs = coefficients_from_martingale(m, t, cutoff);
    const double pstar = p / (p - 1.0);
    const double c = std::max(pstar - 1.0, 1.0);
    for (const auto& z : z_grid) {
        const AnalyticValue f = analytic_eval(coeffs.series, z, tail);
        double re2 = 0.0, im2 = 0.0;
        for (const auto& zi : z) {
            re2 += zi.real() * zi.real();
            im2 += zi.imag() * zi.imag();
        }
        const double lhs = std::abs(f.value) + f.tail_bound;
        CheckRecord sharp =
            record_le("growth-holder", lhs, K.value * std::exp(((pstar - 1.0) * re2 + im2) / (2.0 * t)), 1.0 + 1e-9);
        CheckRecord coarse = record_le("growth-order-two", lhs, K.value * std::exp(c * (re2 + im2) / (2.0 * t)), 1.0 + 1e-9);
        for (CheckRecord* r : {&sharp, &coarse}) {
            r->inputs = {{"martingale", m.label}, {"t", fmt(t)}, {"p", fmt(p)}, {"z", point_string(z)},
                         {"N", std::to_string(cutoff)}};
            if (!K.converged || !coeffs.converged || !f.tail_ok) {
                r->status = Status::unconverged;
                r->note = "norm change " + fmt(K.relative_change) + ", coefficient change " + fmt(coeffs.relative_change) +
                          ", tail " + fmt(f.tail_bound);
            }
            report.records.push_back(std::move(*r));
        }
    }
    return report;
}

CheckReport check_f_projection(const MartingaleSpec& m, const AnalyticFunction& f, double s, double p,
                               const McConfig& config, const FProjectionOptions& options) {
    if (!(s > 0.0)) throw std::invalid_argument("check_f_projection: s must be > 0");
    if (!(p > 1.0)) throw std::invalid_argument("check_f_projection: p must be > 1");
    const double pstar = p / (p - 1.0);
    if (std::isfinite(m.horizon)) {
        const double limit = 0.9 * m.horizon / std::max(p, pstar);
        if (s > limit * (1.0 + 1e-12))
            throw std::invalid_argument("check_f_projection: s = " + fmt(s) + " exceeds 0.9 T / max(p, p*) = " +
                                        fmt(limit));
    }
    config.validate();
    const std::size_t d = m.dim;
    CheckReport report{"f-projection", {}};

    for (const auto& x : options.x_grid) {
        if (x.size() != d) throw std::invalid_argument("check_f_projection: grid point has wrong dimension");
        std::vector<double> re, im;
        std::vector<std::complex<double>> z(d);
        for_each_tensor_node(d, s, gauss_hermite(options.y_nodes), [&](std::span<const double> y, double w) {
            for (std::size_t i = 0; i < d; ++i) z[i] = {x[i], y[i]};
            const auto v = f(z);
            re.push_back(w * v.real());
            im.push_back(w * v.imag());
        });
        const double g = m.g(s, x);
        const double scale = std::max(1.0, std::abs(g));
        CheckRecord r = record_close("f-projection-exact", pairwise_sum(re), g, options.tolerance * scale, 0.0);
        r.inputs = {{"martingale", m.label}, {"s", fmt(s)}, {"x", point_string(x)}};
        report.records.push_back(std::move(r));
        CheckRecord ri = record_close("f-projection-exact-imaginary", pairwise_sum(im), 0.0, options.tolerance * scale, 0.0);
        ri.inputs = {{"martingale", m.label}, {"s", fmt(s)}, {"x", point_string(x)}};
        report.records.push_back(std::move(ri));
    }

    if (options.monte_carlo) {
        const auto key = stream(config.master_seed, StreamTag::f_projection);
        const std::size_t outer = config.n_outer;
        const std::size_t inner = config.n_paths;
        const double sd = std::sqrt(s);
        std::vector<CheckRecord> records(2 * outer);
        parallel_for(outer, config.workers, [&](std::size_t o) {
            rng::Philox gx(key.child(o).child(static_cast<std::uint64_t>(StreamTag::x_path)));
            rng::Philox gy(key.child(o).child(static_cast<std::uint64_t>(StreamTag::y_path)));
            std::vector<double> x(d);
            for (auto& xi : x) xi = sd * gx.normal();
            std::vector<double> re(inner), im(inner);
            std::vector<std::complex<double>> z(d);
            for (std::size_t j = 0; j < inner; ++j) {
                for (std::size_t i = 0; i < d; ++i) z[i] = {x[i], sd * gy.normal()};
                const auto v = f(z);
                re[j] = v.real();
                im[j] = v.imag();
            }
            auto mean_se = [&](const std::vector<double>& v) {
                const double mean = pairwise_sum(v) / static_cast<double>(inner);
                std::vector<double> dev(inner);
                for (std::size_t j = 0; j < inner; ++j) dev[j] = (v[j] - mean) * (v[j] - mean);
                const double var = pairwise_sum(dev) / static_cast<double>(inner - 1);
                return std::pair{mean, std::sqrt(var / static_cast<double>(inner))};
            };
            const auto [mr, sr] = mean_se(re);
            const auto [mi, si] = mean_se(im);
            records[2 * o] = record_stat("f-projection-mc", mr, m.g(s, x), sr, config.confidence);
            records[2 * o + 1] = record_stat("f-projection-mc-imaginary", mi, 0.0, si, config.confidence);
            for (std::size_t k = 0; k < 2; ++k)
                records[2 * o + k].inputs = {{"martingale", m.label}, {"s", fmt(s)}, {"x", point_string(x)},
                                             {"resamples", std::to_string(inner)}};
        });
        report.records.insert(report.records.end(), records.begin(), records.end());
    }
    return report;
}

CheckReport check_l1_to_lp_transfer(const HermiteSeries& series, double p, double s) {
    if (!(p >= 1.0)) throw std::invalid_argument("check_l1_to_lp_transfer: p must be >= 1");
    if (!(s > 0.0)) throw std::invalid_argument("check_l1_to_lp_transfer: s must be > 0");
    const double t = series.time();
    const auto d = static_cast<double>(series.dim());
    const double r = std::exp(0.5 * p) * d * std::sqrt(s / t);
    const double s_max = t / (d * d * std::exp(p));
    const bool applicable = s < s_max;
    CheckReport report{"l1-lp-transfer", {}};
    auto base_inputs = [&] {
        return std::vector<std::pair<std::string, std::string>>{
            {"t", fmt(t)}, {"s", fmt(s)}, {"p", fmt(p)}, {"d", std::to_string(series.dim())}, {"s_max", fmt(s_max)}};
    };

    // single-coordinate norms are shared across multi-indices
    std::map<std::pair<unsigned, bool>, NormResult> cache;
    auto single_norm = [&](unsigned k, bool at_s) -> const NormResult& {
        auto key = std::pair{k, at_s};
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        HermiteSeries h(at_s ? s : t, 1);
        h.set(MultiIndex{k}, 1.0);
        return cache.emplace(key, lp_norm_hermite_functional(h, at_s ? p : 1.0)).first->second;
    };
    bool converged = true;
    auto norm_of = [&](const MultiIndex& alpha, bool at_s) {
        double v = 1.0;
        for (std::size_t i = 0; i < alpha.dim(); ++i) {
            const NormResult& n = single_norm(alpha[i], at_s);
            converged = converged && n.converged;
            v *= n.value;
        }
        return v;
    };

    double K = 0.0;
    const unsigned deg = series.max_degree();
    std::vector<double> block(deg + 1, 0.0);
    for (const auto& [alpha, b] : series.terms()) {
        K = std::max(K, std::abs(b) * norm_of(alpha, false));
        block[alpha.degree()] += std::abs(b) * norm_of(alpha, true);
    }

    auto finish = [&](CheckRecord rec) {
        rec.inputs = base_inputs();
        if (!applicable) {
            rec.status = Status::inapplicable;
            rec.note = "s >= t / (d^2 e^p); no claim";
        } else if (!converged) {
            rec.status = Status::unconverged;
        }
        report.records.push_back(std::move(rec));
    };

    finish(record_lt("geometric-ratio", r, 1.0));
    double partial = 0.0, majorant = 0.0;
    for (unsigned n = 0; n <= deg; ++n) {
        partial += block[n];
        majorant += K * std::pow(r, n);
        CheckRecord b = record_le("degree-block", block[n], K * std::pow(r, n), 1.0 + 1e-9);
        finish(std::move(b));
        report.records.back().inputs.emplace_back("n", std::to_string(n));
        CheckRecord ps = record_le("partial-sum", partial, majorant, 1.0 + 1e-9);
        finish(std::move(ps));
        report.records.back().inputs.emplace_back("n", std::to_string(n));
    }
    if (applicable) {
        CheckRecord total = record_le("absolute-sum", partial, K / (1.0 - r), 1.0 + 1e-9);
        finish(std::move(total));
    }
    return report;
}

std::vector<double> l2_truncation_residuals(const MartingaleSpec& m, double t, const HermiteSeries& series,
                                            std::size_t nodes) {
    std::vector<double> squares;
    for_each_tensor_node(m.dim, t, gauss_hermite(nodes), [&](std::span<const double> x, double w) {
        const double v = m.g(t, x);
        squares.push_back(w * v * v);
    });
    const double total = pairwise_sum(squares);
    const unsigned deg = series.max_degree();
    std::vector<double> energy(deg + 1, 0.0);
    const double log_t = std::log(t);
    for (const auto& [alpha, b] : series.terms())
        energy[alpha.degree()] += b * b * std::exp(alpha.log_factorial() + alpha.degree() * log_t);
    std::vector<double> residuals(deg + 1);
    double acc = 0.0;
    for (unsigned n = 0; n <= deg; ++n) {
        acc += energy[n];
        residuals[n] = total - acc;
    }
    return residuals;
}

}  // namespace chaoskit
