#include "chaoskit/stochastic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chaoskit {

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
    if (times_.size() < 2) throw std::invalid_argument("TimeGrid: need at least two times");
    if (times_.front() != 0.0) throw std::invalid_argument("TimeGrid: first time must be 0");
    for (std::size_t k = 1; k < times_.size(); ++k)
        if (!(times_[k] > times_[k - 1])) throw std::invalid_argument("TimeGrid: times must be strictly increasing");
}

TimeGrid TimeGrid::uniform(double horizon, double dt) {
    if (!(horizon > 0.0) || !(dt > 0.0)) throw std::invalid_argument("TimeGrid::uniform: horizon and dt must be > 0");
    const auto m = static_cast<std::size_t>(std::max(1.0, std::round(horizon / dt)));
    std::vector<double> times(m + 1);
    for (std::size_t k = 0; k <= m; ++k) times[k] = horizon * static_cast<double>(k) / static_cast<double>(m);
    return TimeGrid(std::move(times));
}

BrownianPath::BrownianPath(std::shared_ptr<const TimeGrid> grid, std::size_t dim)
    : grid_(std::move(grid)), dim_(dim), values_(grid_->size() * dim, 0.0) {
    if (dim == 0) throw std::invalid_argument("BrownianPath: dimension must be >= 1");
}

void BrownianPath::resample(rng::StreamKey key) {
    rng::Philox gen(key);
    const std::size_t m = grid_->steps();
    for (std::size_t i = 0; i < dim_; ++i) values_[i] = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double sd = std::sqrt(grid_->step(k));
        const double* prev = values_.data() + k * dim_;
        double* next = values_.data() + (k + 1) * dim_;
        for (std::size_t i = 0; i < dim_; ++i) next[i] = prev[i] + sd * gen.normal();
    }
}

void McConfig::validate() const {
    if (n_paths < 100) throw std::invalid_argument("McConfig: n_paths must be >= 100");
    if (!(dt > 0.0)) throw std::invalid_argument("McConfig: dt must be > 0");
    if (!(confidence > 0.0)) throw std::invalid_argument("McConfig: confidence multiplier must be > 0");
    if (n_outer == 0) throw std::invalid_argument("McConfig: n_outer must be >= 1");
}

rng::StreamKey stream(std::uint64_t master_seed, StreamTag tag) {
    return rng::StreamKey(master_seed).child(static_cast<std::uint64_t>(tag));
}

BrownianPath sample_bm(std::size_t d, std::shared_ptr<const TimeGrid> grid, rng::StreamKey key) {
    BrownianPath path(std::move(grid), d);
    path.resample(key);
    return path;
}

ConformalPath sample_conformal(std::size_t d, std::shared_ptr<const TimeGrid> grid, rng::StreamKey key) {
    auto x = sample_bm(d, grid, key.child(static_cast<std::uint64_t>(StreamTag::x_path)));
    auto y = sample_bm(d, grid, key.child(static_cast<std::uint64_t>(StreamTag::y_path)));
    return {std::move(x), std::move(y)};
}

double stochastic_exponential(std::span<const double> a, std::span<const double> x, double t) {
    if (a.size() != x.size()) throw std::invalid_argument("stochastic_exponential: dimension mismatch");
    double dot = 0.0;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * x[i];
        norm2 += a[i] * a[i];
    }
    return std::exp(dot - 0.5 * norm2 * t);
}

double ito_integral(std::span<const double> integrand, const BrownianPath& driver) {
    const std::size_t m = driver.grid().steps();
    const std::size_t d = driver.dim();
    if (integrand.size() != m * d)
        throw std::invalid_argument("ito_integral: integrand has " + std::to_string(integrand.size()) +
                                    " values, expected " + std::to_string(m * d));
    double sum = 0.0;
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < d; ++i) sum += integrand[k * d + i] * (driver.at(k + 1, i) - driver.at(k, i));
    return sum;
}

std::complex<double> conformal_integral(std::span<const std::complex<double>> integrand, const ConformalPath& z) {
    const std::size_t m = z.x.grid().steps();
    const std::size_t d = z.x.dim();
    if (z.y.dim() != d || z.y.grid().size() != z.x.grid().size())
        throw std::invalid_argument("conformal_integral: X and Y paths differ in shape");
    if (integrand.size() != m * d)
        throw std::invalid_argument("conformal_integral: integrand has " + std::to_string(integrand.size()) +
                                    " values, expected " + std::to_string(m * d));
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < d; ++i) sum += integrand[k * d + i] * (z.z(k + 1, i) - z.z(k, i));
    return sum;
}

}  // namespace chaoskit
