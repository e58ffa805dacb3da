#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "chaoskit/rng.hpp"

namespace chaoskit {

/// Strictly increasing times 0 = t_0 < t_1 < ... < t_m.
class TimeGrid {
public:
    explicit TimeGrid(std::vector<double> times);
    /// m = max(1, round(horizon / dt)) equal steps over [0, horizon].
    static TimeGrid uniform(double horizon, double dt);

    std::size_t steps() const noexcept { return times_.size() - 1; }
    std::size_t size() const noexcept { return times_.size(); }
    double operator[](std::size_t k) const { return times_[k]; }
    double step(std::size_t k) const { return times_[k + 1] - times_[k]; }
    double horizon() const noexcept { return times_.back(); }
    std::span<const double> times() const noexcept { return times_; }

private:
    std::vector<double> times_;
};

/// Brownian motion sampled on a grid, values stored row-major (time, coordinate).
class BrownianPath {
public:
    BrownianPath(std::shared_ptr<const TimeGrid> grid, std::size_t dim);

    const TimeGrid& grid() const noexcept { return *grid_; }
    const std::shared_ptr<const TimeGrid>& grid_ptr() const noexcept { return grid_; }
    std::size_t dim() const noexcept { return dim_; }
    std::span<const double> at(std::size_t k) const { return {values_.data() + k * dim_, dim_}; }
    std::span<double> at(std::size_t k) { return {values_.data() + k * dim_, dim_}; }
    double at(std::size_t k, std::size_t i) const { return values_[k * dim_ + i]; }
    std::span<const double> terminal() const { return at(grid_->steps()); }

    /// Overwrites the path with exact N(0, dt_k) increments from `key`.
    void resample(rng::StreamKey key);

private:
    std::shared_ptr<const TimeGrid> grid_;
    std::size_t dim_;
    std::vector<double> values_;
};

/// Z = X + iY with X, Y independent and on the same grid.
struct ConformalPath {
    BrownianPath x;
    BrownianPath y;

    std::complex<double> z(std::size_t k, std::size_t i) const { return {x.at(k, i), y.at(k, i)}; }
};

/// Monte Carlo settings. `n_paths` is the number of inner (Y) resamples per
/// conditioning point and `n_outer` the number of sampled X outcomes.
struct McConfig {
    std::size_t n_paths = 100000;
    std::uint64_t master_seed = 20111223;
    double dt = 1e-3;
    double confidence = 4.0;
    std::size_t n_outer = 64;
    unsigned workers = 1;

    /// Throws std::invalid_argument unless n_paths >= 100 and dt > 0.
    void validate() const;
};

/// Substream tags; every stochastic routine derives keys from the master seed
/// with one of these so different checks never share random numbers.
enum class StreamTag : std::uint64_t {
    x_path = 1,
    y_path = 2,
    power_projection = 10,
    exponential_projection = 11,
    integral_projection = 12,
    integral_calibration = 13,
    f_projection = 14,
    retry = 99,
};

rng::StreamKey stream(std::uint64_t master_seed, StreamTag tag);

BrownianPath sample_bm(std::size_t d, std::shared_ptr<const TimeGrid> grid, rng::StreamKey key);
ConformalPath sample_conformal(std::size_t d, std::shared_ptr<const TimeGrid> grid, rng::StreamKey key);

/// exp(a . x - |a|^2 t / 2).
double stochastic_exponential(std::span<const double> a, std::span<const double> x, double t);

/// Left-endpoint sum sum_k H_{t_k} . (W_{t_{k+1}} - W_{t_k}). The integrand
/// holds steps() * dim() values, row-major (time, coordinate).
double ito_integral(std::span<const double> integrand, const BrownianPath& driver);

/// Left-endpoint sum against dZ = dX + i dY, integrand laid out as above.
std::complex<double> conformal_integral(std::span<const std::complex<double>> integrand, const ConformalPath& z);

}  // namespace chaoskit
