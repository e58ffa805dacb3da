#include "chaoskit/suites.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "chaoskit/chaos.hpp"
#include "chaoskit/hermite.hpp"
#include "chaoskit/parallel.hpp"
#include "chaoskit/projection.hpp"
#include "chaoskit/quadrature.hpp"
#include "chaoskit/rng.hpp"
#include "chaoskit/series.hpp"
#include "chaoskit/widder.hpp"

namespace chaoskit {

namespace {

// Child tags that keep the seeded batteries of different suites apart.
enum class SuiteTag : std::uint64_t {
    projection_mc = 1,
    exponential_mc = 2,
    hyper_series = 3,
    test_measures = 4,
    f_projection = 5,
    widder_eval = 6,
    l1_identity = 7,
    cf = 8,
    separation = 9,
    moment = 10,
};

std::uint64_t derive_seed(std::uint64_t seed, SuiteTag tag, std::uint64_t index) {
    return rng::StreamKey(seed).child(static_cast<std::uint64_t>(tag)).child(index).value();
}

std::string vector_string(std::span<const double> x) {
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + fmt(x[i]);
    return s + ")";
}

std::string complex_string(std::span<const std::complex<double>> z) {
    std::string s = "(";
    for (std::size_t i = 0; i < z.size(); ++i) s += (i ? ", " : "") + fmt(z[i].real()) + (z[i].imag() < 0 ? "-" : "+") +
                                                   fmt(std::abs(z[i].imag())) + "i";
    return s + ")";
}

std::string measure_label(const SignedAtomicMeasure& mu, const std::string& name) {
    return name + " (d=" + std::to_string(mu.dim()) + ", atoms=" + std::to_string(mu.size()) + ")";
}

SignedAtomicMeasure two_atom() {
    const double v[] = {-1.0, 1.0};
    const double w[] = {0.5, 0.5};
    return SignedAtomicMeasure::from_points_1d(v, w);
}

// Tensor grid of `points` per coordinate on [-radius, radius].
std::vector<std::vector<double>> tensor_grid(std::size_t d, std::size_t points, double radius) {
    std::vector<double> axis(points);
    for (std::size_t k = 0; k < points; ++k)
        axis[k] = points == 1 ? 0.0 : -radius + 2.0 * radius * static_cast<double>(k) / static_cast<double>(points - 1);
    std::vector<std::vector<double>> grid{{}};
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<std::vector<double>> next;
        for (const auto& g : grid)
            for (double a : axis) {
                auto h = g;
                h.push_back(a);
                next.push_back(std::move(h));
            }
        grid = std::move(next);
    }
    return grid;
}

void add_input(CheckReport& r, std::pair<std::string, std::string> input) {
    for (auto& rec : r.records) rec.inputs.insert(rec.inputs.begin(), input);
}

void push_group(SuiteResult& out, CheckReport report) {
    for (auto& g : out)
        if (g.name == report.name) {
            g.append(report);
            return;
        }
    out.push_back(std::move(report));
}

// Points z with |z| <= radius on a polar grid: d = 1 walks circles, d = 2
// splits the modulus between the coordinates.
std::vector<std::vector<std::complex<double>>> polar_grid(std::size_t d, double radius) {
    std::vector<std::vector<std::complex<double>>> grid;
    const double radii[] = {0.25, 0.5, 0.75, 1.0};
    const std::size_t angles = 8;
    for (double rr : radii) {
        const double r = rr * radius;
        for (std::size_t k = 0; k < angles; ++k) {
            const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(angles);
            if (d == 1) {
                grid.push_back({std::polar(r, th)});
            } else if (d == 2) {
                const double phi = std::numbers::pi * (static_cast<double>(k % 3) + 1.0) / 8.0;
                grid.push_back({std::polar(r * std::cos(phi), th), std::polar(r * std::sin(phi), 0.5 * th + 0.3)});
            } else {
                std::vector<std::complex<double>> z(d, std::polar(r / std::sqrt(static_cast<double>(d)), th));
                grid.push_back(std::move(z));
            }
        }
    }
    return grid;
}

}  // namespace

std::vector<std::pair<double, double>> ExponentGrid::pairs() const {
    std::vector<std::pair<double, double>> out;
    for (double p : p_list)
        for (double q : q_list)
            if (q > p && q <= 6.0) out.emplace_back(p, q);
    return out;
}

SuiteResult run_projection_suite(const ProjectionSuite& s) {
    SuiteResult out;
    std::vector<MultiIndex> alphas = s.alphas;
    if (alphas.empty())
        for (std::size_t d = 1; d <= s.max_dim; ++d)
            for (const MultiIndex& a : enumerate_multi_indices(d, s.max_degree)) alphas.push_back(a);

    // Exact identity, one record per (alpha, t) holding the worst point of the grid.
    CheckReport exact{"power-projection-exact", {}};
    for (const MultiIndex& alpha : alphas) {
        const auto grid = tensor_grid(alpha.dim(), s.grid_points, s.grid_radius);
        for (double t : s.t_list) {
            double worst = 0.0;
            std::size_t worst_at = 0;
            for (std::size_t k = 0; k < grid.size(); ++k) {
                const double h = hermite_multi(alpha, t, grid[k]);
                const double diff = std::abs(complex_power_expectation(alpha, t, grid[k]) - h);
                const double scale = std::max(std::abs(h), hermite_magnitude(alpha, t, grid[k]));
                const double rel = diff == 0.0 ? 0.0 : diff / scale;
                if (!(rel <= worst)) {
                    worst = rel;
                    worst_at = k;
                }
            }
            CheckRecord r = record_le("power-exact-worst", worst, 1e-10);
            r.inputs = {{"alpha", alpha.to_string()}, {"t", fmt(t)}, {"points", std::to_string(grid.size())},
                        {"worst_x", vector_string(grid[worst_at])}};
            r.note = "relative to max(|H_alpha|, M)";
            exact.records.push_back(std::move(r));
        }
    }
    out.push_back(std::move(exact));

    if (!s.monte_carlo) return out;
    CheckReport power{"power-projection-mc", {}};
    std::uint64_t index = 0;
    for (const MultiIndex& alpha : s.mc_alphas)
        for (double t : s.t_list) {
            McConfig c = s.mc;
            c.master_seed = derive_seed(s.mc.master_seed, SuiteTag::projection_mc, index++);
            CheckReport r = check_power_projection(alpha, t, {}, c, true);
            power.append(r);
        }
    out.push_back(std::move(power));

    CheckReport expo{"exponential-projection", {}};
    index = 0;
    for (const auto& a : s.a_list)
        for (double t : s.t_list) {
            McConfig c = s.mc;
            c.master_seed = derive_seed(s.mc.master_seed, SuiteTag::exponential_mc, index++);
            expo.append(check_exponential_projection(a, t, c));
        }
    out.push_back(std::move(expo));
    return out;
}

SuiteResult run_integral_suite(const IntegralSuite& s) {
    if (s.degree) return {check_integral_projection(*s.degree, s.t, s.mc)};
    return {check_integral_projection_family(s.max_degree, s.t, s.mc)};
}

SuiteResult run_hyper_suite(const HyperSuite& s) {
    const auto pairs = s.grid.pairs();
    if (pairs.empty() || s.grid.t_list.empty()) throw std::invalid_argument("hyper: empty exponent grid");
    if (s.max_dim == 0 || s.max_degree == 0 || s.max_terms == 0) throw std::invalid_argument("hyper: empty series family");
    const std::size_t groups = 4;
    std::vector<CheckReport> parts(groups * s.series);
    parallel_for(s.series, s.workers, [&](std::size_t i) {
        const std::size_t d = 1 + i % s.max_dim;
        const unsigned degree = 1 + static_cast<unsigned>((i / s.max_dim) % s.max_degree);
        const std::size_t terms = 1 + i % s.max_terms;
        const double t = s.grid.t_list[i % s.grid.t_list.size()];
        const auto [p, q] = pairs[i % pairs.size()];
        const double threshold = 0.5 * std::log((q - 1.0) / (p - 1.0));
        const HermiteSeries F = random_series(derive_seed(s.seed, SuiteTag::hyper_series, i), t, d, degree, terms);
        const std::pair<std::string, std::string> tag{"series", std::to_string(i)};

        CheckReport hyper = check_hypercontractivity(F, p, q, threshold, s.nodes);
        hyper.name = "hypercontractivity";
        add_input(hyper, tag);
        parts[groups * i] = std::move(hyper);

        // Parseval: the exact Gaussian second moment against sum b^2 alpha! t^|alpha|
        std::function<double(std::span<const double>)> square = [&](std::span<const double> x) {
            const double v = F.evaluate(x);
            return v * v;
        };
        const std::size_t n = F.max_degree() + 2;
        CheckRecord parseval = record_close("parseval", gaussian_expectation(d, t, n, square), F.l2_norm_squared(),
                                            0.0, 1e-10);
        parseval.inputs = {tag, {"t", fmt(t)}, {"d", std::to_string(d)}};
        parts[groups * i + 1] = CheckReport{"parseval", {std::move(parseval)}};

        const NormResult np = lp_norm_hermite_functional(F, p, s.nodes);
        const NormResult nq = lp_norm_hermite_functional(F, q, s.nodes);
        CheckRecord mono = record_le("norm-monotonicity", np.value, nq.value, 1.0 + 1e-9);
        mono.inputs = {tag, {"p", fmt(p)}, {"q", fmt(q)}};
        if (!np.converged || !nq.converged) mono.status = Status::unconverged;
        parts[groups * i + 2] = CheckReport{"norm-monotonicity", {std::move(mono)}};

        CheckReport lemmas = check_chaos_norm_lemmas(chaos_project(F, F.max_degree()), p, q, s.nodes);
        lemmas.name = "chaos-norm-bounds";
        add_input(lemmas, tag);
        parts[groups * i + 3] = std::move(lemmas);
    });
    SuiteResult out;
    for (auto& part : parts) push_group(out, std::move(part));
    return out;
}

SuiteResult run_chaos_norm_suite(const ChaosNormSuite& s) {
    std::vector<MultiIndex> alphas;
    for (std::size_t d = 1; d <= s.max_dim; ++d)
        for (const MultiIndex& a : enumerate_multi_indices(d, s.max_degree)) alphas.push_back(a);
    const auto pairs = s.grid.pairs();
    std::vector<CheckReport> parts(alphas.size());
    parallel_for(alphas.size(), s.workers, [&](std::size_t k) {
        CheckReport acc{"chaos-norm-bounds", {}};
        for (double t : s.grid.t_list) {
            HermiteSeries h(t, alphas[k].dim());
            h.set(alphas[k], 1.0);
            for (const auto& [p, q] : pairs) acc.append(check_chaos_norm_lemmas(h, p, q, s.nodes));
        }
        add_input(acc, {"alpha", alphas[k].to_string()});
        parts[k] = std::move(acc);
    });
    CheckReport all{"chaos-norm-bounds", {}};
    for (const auto& p : parts) all.append(p);
    return {std::move(all)};
}

std::vector<SignedAtomicMeasure> series_test_measures(std::uint64_t seed, std::size_t random) {
    std::vector<SignedAtomicMeasure> out{two_atom()};
    for (std::size_t j = 0; j < random; ++j)
        out.push_back(random_measure(derive_seed(seed, SuiteTag::test_measures, j), 1 + j % 2, 4, 1.5, false));
    return out;
}

SuiteResult run_series_suite(const SeriesSuite& s) {
    if (s.t_list.empty()) throw std::invalid_argument("series: empty t list");
    CheckReport coeff{"series-coefficients", {}};
    CheckReport analytic{"analytic-function", {}};
    CheckReport growth{"growth-order", {}};
    CheckReport l2{"l2-truncation", {}};
    const auto measures = series_test_measures(s.seed, s.random_measures);
    for (std::size_t m = 0; m < measures.size(); ++m) {
        const SignedAtomicMeasure& mu = measures[m];
        const std::string label = measure_label(mu, m == 0 ? "two-atom" : "random-" + std::to_string(m));
        const MartingaleSpec spec = widder_martingale_spec(mu, s.p, std::numeric_limits<double>::infinity(), label);
        const HermiteSeries reference = coefficients_from_measure(mu, s.cutoff);

        // quadrature coefficients at each t against the measure moments
        std::vector<HermiteSeries> per_t;
        for (double t : s.t_list) {
            const CoefficientResult c = coefficients_from_martingale(spec, t, s.cutoff, s.nodes);
            double worst = 0.0;
            for (const MultiIndex& a : enumerate_multi_indices(mu.dim(), s.cutoff)) {
                const double ref = reference.coefficient(a);
                worst = std::max(worst, std::abs(c.series.coefficient(a) - ref) / std::max(1.0, std::abs(ref)));
            }
            CheckRecord r = record_le("coefficients-match-moments", worst, s.coefficient_tolerance);
            r.inputs = {{"martingale", label}, {"t", fmt(t)}, {"cutoff", std::to_string(s.cutoff)}};
            r.note = "worst |b - m_alpha/alpha!| / max(1, |m_alpha/alpha!|)";
            if (!c.converged) {
                r.status = Status::unconverged;
                r.note += ", node change " + fmt(c.relative_change);
            }
            coeff.records.push_back(std::move(r));
            per_t.push_back(c.series);
        }
        double spread = 0.0;
        for (const MultiIndex& a : enumerate_multi_indices(mu.dim(), s.cutoff))
            for (std::size_t k = 1; k < per_t.size(); ++k) {
                const double b0 = per_t[0].coefficient(a);
                spread = std::max(spread, std::abs(per_t[k].coefficient(a) - b0) / std::max(1.0, std::abs(b0)));
            }
        CheckRecord indep = record_le("coefficients-time-independent", spread, s.coefficient_tolerance);
        indep.inputs = {{"martingale", label}, {"times", std::to_string(s.t_list.size())}};
        coeff.records.push_back(std::move(indep));

        // analytic function against the conditional integral, with a certified truncation
        const double t = 1.0;
        const NormResult K = martingale_lp_norm(spec, t, s.p);
        const auto zs = polar_grid(mu.dim(), s.z_radius);
        TailModel tail{s.p, K.value, 1e-10 * std::max(1.0, K.value), {}};
        const unsigned N = choose_truncation(mu.dim(), s.p, t, K.value, s.z_radius, tail.tolerance);
        tail.cutoff = N;
        const CoefficientResult big = coefficients_from_martingale(spec, t, N);
        double worst = 0.0;
        std::string worst_z;
        bool ok = K.converged && big.converged;
        for (const auto& z : zs) {
            const AnalyticValue f = analytic_eval(big.series, z, tail);
            const ComplexQuadrature I = analytic_eval_integral(spec, t, z, s.nodes);
            ok = ok && f.tail_ok && I.converged;
            const double rel = std::abs(f.value - I.value) / std::max(1.0, std::abs(I.value));
            if (!(rel <= worst)) {
                worst = rel;
                worst_z = complex_string(z);
            }
        }
        CheckRecord ar = record_le("series-vs-integral-worst", worst, s.analytic_tolerance);
        ar.inputs = {{"martingale", label}, {"t", fmt(t)}, {"N", std::to_string(N)},
                     {"points", std::to_string(zs.size())}, {"worst_z", worst_z}};
        ar.note = "relative to max(1, |integral|)";
        if (!ok) ar.status = Status::unconverged;
        analytic.records.push_back(std::move(ar));

        growth.append(check_growth_order(spec, t, s.p, zs));

        // L2 truncation error sum_{|alpha| > N} b^2 alpha! t^|alpha| decreases to 0
        const std::vector<double> res = l2_truncation_residuals(spec, t, big.series);
        const double total = res.empty() ? 0.0 : res.front();
        bool monotone = true;
        for (std::size_t k = 1; k < res.size(); ++k) monotone = monotone && res[k] <= res[k - 1] + 1e-12 * std::max(1.0, total);
        CheckRecord mono = record_le("residual-nonincreasing", monotone ? 0.0 : 1.0, 0.0);
        mono.inputs = {{"martingale", label}, {"N", std::to_string(N)}};
        l2.records.push_back(std::move(mono));
        if (!res.empty()) {
            CheckRecord last = record_le("residual-at-cutoff", res.back(), 1e-8 * std::max(1.0, total));
            last.inputs = {{"martingale", label}, {"N", std::to_string(N)}, {"E[M^2]", fmt(total)}};
            l2.records.push_back(std::move(last));
        }
    }
    SuiteResult out{std::move(coeff), std::move(analytic), std::move(growth), std::move(l2)};

    // L1 to Lp transfer on the cosh martingale
    const SignedAtomicMeasure cosh_measure = two_atom();
    const double t = 1.0;
    const HermiteSeries cosh_series = coefficients_from_measure(cosh_measure, s.transfer_cutoff, t);
    const double transfer_s = 0.9 * t / std::exp(s.p);
    CheckReport transfer = check_l1_to_lp_transfer(cosh_series, s.p, transfer_s);
    add_input(transfer, {"martingale", "cosh"});
    out.push_back(std::move(transfer));
    return out;
}

SuiteResult run_f_projection_suite(const FProjectionSuite& s) {
    CheckReport report{"f-projection", {}};
    const double pstar = s.p / (s.p - 1.0);
    const auto measures = series_test_measures(derive_seed(s.mc.master_seed, SuiteTag::f_projection, 0),
                                               s.random_measures);
    std::uint64_t index = 0;
    for (std::size_t m = 0; m < measures.size(); ++m) {
        const SignedAtomicMeasure& mu = measures[m];
        const std::size_t d = mu.dim();
        const std::string name = measure_label(mu, m == 0 ? "two-atom" : "random-" + std::to_string(m));
        FProjectionOptions opt;
        for (double x : s.x_grid) opt.x_grid.push_back(std::vector<double>(d, x / std::sqrt(static_cast<double>(d))));

        // finite horizon: f from the Hermite series; the Laplace form in d >= 2
        // where the certified truncation would need too many terms
        {
            const MartingaleSpec spec = widder_martingale_spec(mu, s.p, s.horizon, name);
            const double fs = 0.4 * s.horizon / std::max(s.p, pstar);
            AnalyticFunction f;
            std::string form;
            std::string unconverged;
            if (d == 1) {
                const GaussHermiteRule& rule = gauss_hermite(opt.y_nodes);
                double xmax = 0.0;
                for (const auto& x : opt.x_grid) xmax = std::max(xmax, std::abs(x[0]));
                const double zmax = std::hypot(xmax, std::sqrt(fs) * rule.nodes.back());
                const NormResult K = martingale_lp_norm(spec, s.horizon, s.p);
                const unsigned N = choose_truncation(d, s.p, s.horizon, K.value, zmax);
                const CoefficientResult c = coefficients_from_martingale(spec, s.horizon, N);
                if (!c.converged || !K.converged)
                    unconverged = "coefficient change " + fmt(c.relative_change) + ", norm change " +
                                  fmt(K.relative_change);
                f = series_function(c.series);
                form = "series N=" + std::to_string(N);
            } else {
                f = laplace_function(mu);
                form = "laplace";
            }
            McConfig c = s.mc;
            c.master_seed = derive_seed(s.mc.master_seed, SuiteTag::f_projection, ++index);
            CheckReport r = check_f_projection(spec, f, fs, s.p, c, opt);
            if (!unconverged.empty())
                for (auto& rec : r.records) {
                    rec.status = Status::unconverged;
                    rec.note = unconverged;
                }
            add_input(r, {"form", form});
            add_input(r, {"horizon", fmt(s.horizon)});
            report.append(r);
        }
        // infinite horizon: every s is admissible
        const MartingaleSpec spec = widder_martingale_spec(mu, s.p, std::numeric_limits<double>::infinity(), name);
        const AnalyticFunction f = laplace_function(mu);
        for (double fs : s.infinite_horizon_s) {
            McConfig c = s.mc;
            c.master_seed = derive_seed(s.mc.master_seed, SuiteTag::f_projection, ++index);
            CheckReport r = check_f_projection(spec, f, fs, s.p, c, opt);
            add_input(r, {"form", "laplace"});
            add_input(r, {"horizon", "inf"});
            report.append(r);
        }
    }
    return {std::move(report)};
}

SuiteResult run_widder_eval_suite(const WidderEvalSuite& s) {
    CheckReport closed{"widder-closed-form", {}};
    CheckReport mean{"widder-unit-mean", {}};
    const double zero[] = {0.0};
    const double one[] = {1.0};
    const SignedAtomicMeasure delta0 = SignedAtomicMeasure::from_points_1d(zero, one);
    const SignedAtomicMeasure cosh_measure = two_atom();
    for (double t : s.t_list)
        for (double x : s.x_grid) {
            const double xs[] = {x};
            CheckRecord a = record_close("delta-zero", widder_martingale(delta0, t, xs), 1.0, 0.0, 1e-15);
            a.inputs = {{"t", fmt(t)}, {"x", fmt(x)}};
            closed.records.push_back(std::move(a));
            CheckRecord b = record_close("two-atom-cosh", widder_martingale(cosh_measure, t, xs),
                                         std::exp(-0.5 * t) * std::cosh(x), 0.0, 1e-14);
            b.inputs = {{"t", fmt(t)}, {"x", fmt(x)}};
            closed.records.push_back(std::move(b));
        }

    std::vector<std::pair<std::string, SignedAtomicMeasure>> battery;
    if (s.measure) battery.emplace_back(measure_label(*s.measure, "given"), *s.measure);
    for (std::size_t j = 0; j < s.random_measures; ++j) {
        auto mu = random_measure(derive_seed(s.seed, SuiteTag::widder_eval, j), 1 + j % 2, 6, 2.0, false);
        battery.emplace_back(measure_label(mu, "random-" + std::to_string(j)), std::move(mu));
    }
    for (const auto& [name, mu] : battery) {
        // E[g(t, X_t)] = mu(R^d) for every t, and g(0, 0) = mu(R^d)
        double mass = 0.0;
        for (const Atom& a : mu.atoms()) mass += a.weight;
        const std::vector<double> origin(mu.dim(), 0.0);
        CheckRecord init = record_close("initial-value", widder_martingale(mu, 0.0, origin), mass,
                                        1e-12 * total_variation(mu), 1e-12);
        init.inputs = {{"measure", name}};
        mean.records.push_back(std::move(init));
        for (double t : s.t_list) {
            if (!(t > 0.0)) continue;
            std::function<double(std::span<const double>)> g = [&](std::span<const double> x) {
                return widder_martingale(mu, t, x);
            };
            CheckRecord r = record_close("unit-mean", gaussian_expectation(mu.dim(), t, 64, g), mass,
                                         1e-10 * total_variation(mu), 1e-10);
            r.inputs = {{"measure", name}, {"t", fmt(t)}};
            mean.records.push_back(std::move(r));
        }
    }
    return {std::move(closed), std::move(mean)};
}

SuiteResult run_l1_identity_suite(const L1IdentitySuite& s) {
    SignedAtomicMeasure named = [&] {
        if (s.measure) return *s.measure;
        const double v[] = {1.0, -1.0};
        const double w[] = {1.0, -1.0};
        return SignedAtomicMeasure::from_points_1d(v, w);
    }();
    CheckReport report = check_l1_norm_identity(named, s.t_grid, s.terminal_tolerance, s.nodes);
    report.name = "l1-identity";
    add_input(report, {"measure", measure_label(named, s.measure ? "given" : "dipole")});
    // random battery: signed measures in d = 1, positive measures in d = 1, 2;
    // the terminal gap of a random measure is not asserted. Tensor quadrature
    // in d = 2 needs |v| sqrt(t) <= 6 over the grid, hence the smaller radius.
    for (std::size_t j = 0; j < s.random_measures; ++j) {
        const bool signed_weights = j % 2 == 0;
        const std::size_t d = signed_weights ? 1 : 1 + (j / 2) % 2;
        const auto mu = random_measure(derive_seed(s.seed, SuiteTag::l1_identity, j), d, 5, d == 1 ? 2.0 : 0.8,
                                       signed_weights);
        CheckReport r = check_l1_norm_identity(mu, s.t_grid, std::numeric_limits<double>::infinity(), s.nodes);
        add_input(r, {"measure", measure_label(mu, "random-" + std::to_string(j))});
        report.append(r);
    }
    return {std::move(report)};
}

SuiteResult run_cf_suite(const CfSuite& s) {
    CheckReport report{"cf-recovery", {}};
    std::vector<double> u_grid = s.u_grid;
    if (u_grid.empty())
        for (int k = -10; k <= 10; ++k) u_grid.push_back(0.5 * k);

    auto check = [&](const SignedAtomicMeasure& mu, const std::string& name, const std::vector<std::vector<double>>& us) {
        const MartingaleSpec spec = widder_martingale_spec(mu, 2.0, std::numeric_limits<double>::infinity(), name);
        for (const auto& u : us) {
            std::complex<double> expected = 0.0;
            for (const Atom& a : mu.atoms()) {
                double phase = 0.0;
                for (std::size_t i = 0; i < u.size(); ++i) phase += u[i] * a.location[i];
                expected += a.weight * std::polar(1.0, phase);
            }
            const CfRecovery r = recover_measure_cf(spec, s.t, u, s.nodes);
            const std::pair<std::string, std::string> inputs[] = {{"measure", name}, {"u", vector_string(u)}};
            auto push = [&](std::string check_name, double left, double right, const std::string& at) {
                CheckRecord rec = record_close(std::move(check_name), left, right, s.tolerance, 0.0);
                rec.inputs = {inputs[0], inputs[1], {"t", at}};
                if (!r.converged) {
                    rec.status = Status::unconverged;
                    rec.note += ", node change " + fmt(r.relative_change);
                }
                report.records.push_back(std::move(rec));
            };
            push("cf-real", r.value.real(), expected.real(), fmt(s.t));
            push("cf-imaginary", r.value.imag(), expected.imag(), fmt(s.t));
            push("cf-real", r.value_2t.real(), expected.real(), fmt(2.0 * s.t));
            push("cf-imaginary", r.value_2t.imag(), expected.imag(), fmt(2.0 * s.t));
        }
    };

    const SignedAtomicMeasure named = s.measure ? *s.measure : two_atom();
    if (!named.is_positive()) throw std::invalid_argument("cf: the measure must be positive");
    std::vector<std::vector<double>> us;
    for (double u : u_grid) {
        std::vector<double> v(named.dim(), 0.0);
        v[0] = u;
        if (named.dim() > 1) v[1] = -0.5 * u;
        us.push_back(std::move(v));
    }
    check(named, measure_label(named, s.measure ? "given" : "two-atom"), us);

    const double small[] = {-2.0, -0.5, 0.7, 1.5, 3.0};
    for (std::size_t j = 0; j < s.random_measures; ++j) {
        const std::size_t d = 1 + j % 2;
        const auto mu = random_measure(derive_seed(s.seed, SuiteTag::cf, j), d, 5, 1.5, false);
        std::vector<std::vector<double>> rus;
        for (double u : small) rus.push_back(d == 1 ? std::vector<double>{u} : std::vector<double>{u, -0.5 * u});
        check(mu, measure_label(mu, "random-" + std::to_string(j)), rus);
    }
    return {std::move(report)};
}

SuiteResult run_separation_suite(const SeparationSuite& s) {
    std::vector<SignedAtomicMeasure> measures;
    const double zero[] = {0.0};
    const double one[] = {1.0};
    measures.push_back(SignedAtomicMeasure::from_points_1d(zero, one));
    for (std::size_t j = 0; j < s.random_measures; ++j)
        measures.push_back(random_measure(derive_seed(s.seed, SuiteTag::separation, j), 1, 5, 2.0, false));
    CheckReport report{"separation", {}};
    for (double t : s.t_list) report.append(separation_example(s.k, s.horizon, t, measures, s.nodes));
    return {std::move(report)};
}

SuiteResult run_moment_suite(const MomentSuite& s) {
    CheckReport report{"moment-characterization", {}};
    if (s.measure) {
        CheckReport r = check_moment_characterization(*s.measure, s.t_list, s.K_list);
        add_input(r, {"measure", measure_label(*s.measure, "given")});
        report.append(r);
    }
    for (std::size_t j = 0; j < s.random_measures; ++j) {
        const auto mu = random_measure(derive_seed(s.seed, SuiteTag::moment, j), 1 + j % 2, 5, 2.0, false);
        CheckReport r = check_moment_characterization(mu, s.t_list, s.K_list);
        add_input(r, {"measure", measure_label(mu, "random-" + std::to_string(j))});
        report.append(r);
    }
    return {std::move(report)};
}

SuiteResult run_pollard_suite(const PollardSuite& s) {
    CheckReport closed = check_pollard_closed_form(s.closed_form_t, s.closed_form_x, s.nodes);
    closed.name = "pollard-closed-form";
    CheckReport divergence = check_pollard_divergence(s.t, s.k_min, s.k_max);
    divergence.name = "pollard-divergence";
    return {std::move(closed), std::move(divergence)};
}

}  // namespace chaoskit
