#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "chaoskit/measures.hpp"
#include "chaoskit/multi_index.hpp"
#include "chaoskit/report.hpp"
#include "chaoskit/stochastic.hpp"

namespace chaoskit {

// One suite per runner subcommand. Defaults reproduce the documented
// acceptance runs; every suite returns report groups in a fixed order, and
// parallel work is merged by index so results do not depend on `workers`.

using SuiteResult = std::vector<CheckReport>;

inline constexpr std::uint64_t kDefaultSeed = 20111223;

/// Powers and exponentials of Z_t projected on X.
struct ProjectionSuite {
    /// Exact sweep: every alpha with |alpha| <= max_degree and d <= max_dim,
    /// unless `alphas` is non-empty.
    std::vector<MultiIndex> alphas;
    unsigned max_degree = 8;
    std::size_t max_dim = 3;
    std::vector<double> t_list{0.5, 1.0, 2.0};
    std::size_t grid_points = 11;  // per coordinate, evenly spaced in [-radius, radius]
    double grid_radius = 5.0;
    std::vector<MultiIndex> mc_alphas{MultiIndex{2}, MultiIndex{3}, MultiIndex{1, 2}};
    std::vector<std::vector<double>> a_list{{0.0}, {1.0}, {0.5, -0.3}};
    bool monte_carlo = true;
    McConfig mc = [] {
        McConfig c;
        c.n_paths = 100000;
        c.n_outer = 16;
        return c;
    }();
};
SuiteResult run_projection_suite(const ProjectionSuite& s);

/// Stochastic integrals of Z^{n-1} projected on X.
struct IntegralSuite {
    unsigned max_degree = 5;
    std::optional<unsigned> degree;  // a single n instead of 1..max_degree
    double t = 1.0;
    McConfig mc = [] {
        McConfig c;
        c.n_paths = 1000;
        c.n_outer = 200;
        c.dt = 1e-3;
        return c;
    }();
};
SuiteResult run_integral_suite(const IntegralSuite& s);

/// Shared (p, q) grid: q in q_list with p < q <= 6.
struct ExponentGrid {
    std::vector<double> t_list{0.5, 1.0, 2.0};
    std::vector<double> p_list{1.25, 2.0, 3.0, 4.0};
    std::vector<double> q_list{1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0};
    std::vector<std::pair<double, double>> pairs() const;
};

/// Hypercontractivity at the threshold time, Parseval, and the chaos bounds
/// on the top homogeneous part, over seeded random series.
struct HyperSuite {
    std::size_t series = 200;
    unsigned max_degree = 8;
    std::size_t max_dim = 2;
    std::size_t max_terms = 5;
    ExponentGrid grid;
    std::uint64_t seed = kDefaultSeed;
    unsigned workers = 1;
    std::size_t nodes = 0;  // 0: default rule
};
SuiteResult run_hyper_suite(const HyperSuite& s);

/// Chaos norm bounds and the two single-term estimates for every
/// H_alpha with |alpha| <= max_degree, d <= max_dim, over the exponent grid.
struct ChaosNormSuite {
    unsigned max_degree = 12;
    std::size_t max_dim = 2;
    ExponentGrid grid;
    unsigned workers = 1;
    std::size_t nodes = 0;
};
SuiteResult run_chaos_norm_suite(const ChaosNormSuite& s);

/// Seeded test measures: the two-atom measure (delta_{-1} + delta_1) / 2
/// followed by `random` seeded probability measures in d = 1, 2, 1, ...
std::vector<SignedAtomicMeasure> series_test_measures(std::uint64_t seed, std::size_t random);

/// Coefficients, the analytic function, the growth bound, L2 truncation, and
/// the L1 to Lp transfer for the cosh martingale.
struct SeriesSuite {
    std::size_t random_measures = 2;
    double p = 2.0;
    std::vector<double> t_list{0.5, 1.0, 2.0};
    unsigned cutoff = 16;
    double z_radius = 2.0;
    double coefficient_tolerance = 1e-8;
    double analytic_tolerance = 1e-6;
    unsigned transfer_cutoff = 20;
    std::uint64_t seed = kDefaultSeed;
    std::size_t nodes = 64;
};
SuiteResult run_series_suite(const SeriesSuite& s);

/// E[f(x + i Y_s)] = g(s, x): the series f at s = 0.4 T / max(p, p*) for a
/// finite horizon, and the Laplace form on the infinite horizon.
struct FProjectionSuite {
    std::size_t random_measures = 2;
    double p = 2.0;
    double horizon = 2.0;
    std::vector<double> infinite_horizon_s{1.0, 4.0, 16.0};
    std::vector<double> x_grid{-3.0, -1.5, 0.0, 0.7, 2.0, 3.0};
    McConfig mc = [] {
        McConfig c;
        c.n_paths = 20000;
        c.n_outer = 8;
        return c;
    }();
};
SuiteResult run_f_projection_suite(const FProjectionSuite& s);

/// Closed forms and unit mean of measure-backed martingales.
struct WidderEvalSuite {
    std::optional<SignedAtomicMeasure> measure;  // evaluated in addition to the built-in cases
    std::vector<double> t_list{0.0, 0.5, 1.0, 2.0, 4.0};
    std::vector<double> x_grid{-3.0, -1.0, 0.0, 0.5, 2.0};
    std::size_t random_measures = 20;
    std::uint64_t seed = kDefaultSeed;
};
SuiteResult run_widder_eval_suite(const WidderEvalSuite& s);

/// L1 norm identity; the terminal gap is asserted for the named measure only.
struct L1IdentitySuite {
    std::optional<SignedAtomicMeasure> measure;  // default delta_1 - delta_{-1}
    std::vector<double> t_grid{0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0};
    double terminal_tolerance = 1e-6;
    std::size_t random_measures = 20;
    std::uint64_t seed = kDefaultSeed;
    std::size_t nodes = 64;
};
SuiteResult run_l1_identity_suite(const L1IdentitySuite& s);

struct CfSuite {
    std::optional<SignedAtomicMeasure> measure;  // default (delta_{-1} + delta_1) / 2
    double t = 1.0;
    std::vector<double> u_grid;                  // empty: 21 points on [-5, 5]
    double tolerance = 1e-6;
    std::size_t random_measures = 20;
    std::uint64_t seed = kDefaultSeed;
    std::size_t nodes = 64;
};
SuiteResult run_cf_suite(const CfSuite& s);

struct SeparationSuite {
    double k = 2.0;
    double horizon = 1.0;
    std::vector<double> t_list{1.0};
    std::size_t random_measures = 20;
    std::uint64_t seed = kDefaultSeed;
    std::size_t nodes = 64;
};
SuiteResult run_separation_suite(const SeparationSuite& s);

struct MomentSuite {
    std::optional<SignedAtomicMeasure> measure;
    std::vector<double> t_list{0.5, 1.0, 2.0};
    std::vector<double> K_list{0.5, 1.0, 2.0, 4.0, 8.0};
    std::size_t random_measures = 20;
    std::uint64_t seed = kDefaultSeed;
};
SuiteResult run_moment_suite(const MomentSuite& s);

struct PollardSuite {
    double t = 8.0;
    unsigned k_min = 5;
    unsigned k_max = 30;
    std::vector<double> closed_form_t{0.25, 0.5, 1.0, 2.0, 4.0};
    std::vector<double> closed_form_x{-3.0, -2.0, -1.0, 0.0, 0.5, 1.0, 2.0, 3.0};
    std::size_t nodes = 64;
};
SuiteResult run_pollard_suite(const PollardSuite& s);

}  // namespace chaoskit
