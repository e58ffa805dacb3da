#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "chaoskit/multi_index.hpp"

namespace chaoskit {

struct JordanDecomposition;

struct Atom {
    std::vector<double> location;
    double weight = 0.0;
};

/// Finite signed measure sum_j w_j delta_{v_j} on R^d. Immutable once built.
///
/// Invariants: locations pairwise distinct, weights finite and nonzero, and at
/// least one atom. The two parts returned by jordan_decompose() are the only
/// way to obtain an empty measure.
class SignedAtomicMeasure {
public:
    /// Validates the atoms; throws std::invalid_argument on an empty list,
    /// mixed dimensions, zero or non-finite weights, or repeated locations.
    explicit SignedAtomicMeasure(std::vector<Atom> atoms);

    /// Convenience for d = 1.
    static SignedAtomicMeasure from_points_1d(std::span<const double> locations,
                                              std::span<const double> weights);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return atoms_.size(); }
    bool empty() const noexcept { return atoms_.empty(); }
    const std::vector<Atom>& atoms() const noexcept { return atoms_; }

    bool is_positive() const noexcept;
    /// All weights positive and summing to 1 within 1e-12.
    bool is_probability() const noexcept;

    /// Text format: one atom per line `w v_1 ... v_d`; `#` starts a comment
    /// line. The dimension is fixed by the first atom.
    static SignedAtomicMeasure read(std::istream& in);
    static SignedAtomicMeasure load(const std::filesystem::path& path);
    void write(std::ostream& out) const;

private:
    struct EmptyTag {};
    SignedAtomicMeasure(EmptyTag, std::size_t dim) : dim_(dim) {}
    friend JordanDecomposition jordan_decompose(const SignedAtomicMeasure& mu);

    std::vector<Atom> atoms_;
    std::size_t dim_ = 0;
};

struct JordanDecomposition {
    SignedAtomicMeasure positive;
    SignedAtomicMeasure negative;
};

/// ||mu|| = sum_j |w_j|.
double total_variation(const SignedAtomicMeasure& mu);

/// mu = positive - negative with disjoint supports; either part may be empty.
JordanDecomposition jordan_decompose(const SignedAtomicMeasure& mu);

/// sum_j w_j v_j^alpha.
double moment(const SignedAtomicMeasure& mu, const MultiIndex& alpha);

/// sum_j |w_j| exp(lambda |v_j|^2). Throws std::overflow_error when the value
/// is not representable; use log_quad_exp_moment() in that regime.
double quad_exp_moment(const SignedAtomicMeasure& mu, double lambda);

/// Natural log of quad_exp_moment, computed with a log-sum-exp.
double log_quad_exp_moment(const SignedAtomicMeasure& mu, double lambda);

/// sum of w_j over atoms with |v_j|^2 > K. Requires a positive measure.
double tail_mass(const SignedAtomicMeasure& mu, double K);

/// Tensor Gauss-Hermite discretization of N(mean, diag(variance)). Atoms whose
/// weight underflows to zero are dropped.
SignedAtomicMeasure discretize_gaussian(std::span<const double> mean, std::span<const double> variance,
                                        std::span<const std::size_t> nodes);

/// Refinement probe for quadratic exponential moments of a Gaussian:
/// quad_exp_moment of the n-node and 2n-node discretizations of N(0, variance)
/// (d = 1). A relative change above `tolerance` means the moment is not
/// resolved, which for lambda >= 1 / (2 variance) reflects divergence.
struct RefinementProbe {
    double coarse = 0.0;
    double fine = 0.0;
    double relative_change = 0.0;
    bool converged = false;
};
RefinementProbe gaussian_quad_exp_moment_probe(double variance, double lambda, std::size_t nodes,
                                               double tolerance = 1e-6);

/// Seeded random positive (or signed) measure: up to max_atoms atoms with
/// |v| <= radius, used by sweeps. Positive weights are normalized to mass 1.
SignedAtomicMeasure random_measure(std::uint64_t seed, std::size_t dim, std::size_t max_atoms, double radius,
                                   bool signed_weights = false);

}  // namespace chaoskit
