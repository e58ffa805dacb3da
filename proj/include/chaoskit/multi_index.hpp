#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace chaoskit {

/// Exponent vector alpha in N^d. Indexes Hermite products and monomials.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<unsigned> components);
    MultiIndex(std::initializer_list<unsigned> components);

    /// The zero index of dimension d.
    static MultiIndex zero(std::size_t d);

    std::size_t dim() const noexcept { return components_.size(); }
    unsigned operator[](std::size_t i) const { return components_[i]; }
    std::span<const unsigned> components() const noexcept { return components_; }

    /// |alpha| = sum of components.
    unsigned degree() const noexcept { return degree_; }

    /// log(alpha!) = sum_i log(alpha_i!).
    double log_factorial() const;
    /// alpha! as a double; overflows to +inf beyond roughly |alpha| = 170.
    double factorial() const;

    std::string to_string() const;

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    /// Graded order: total degree first, then lexicographic (reversed so that
    /// (1,0) precedes (0,1)).
    friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

private:
    std::vector<unsigned> components_;
    unsigned degree_ = 0;
};

/// All multi-indices of dimension d with |alpha| <= max_degree, graded order.
std::vector<MultiIndex> enumerate_multi_indices(std::size_t d, unsigned max_degree);

/// All multi-indices of dimension d with |alpha| == degree.
std::vector<MultiIndex> enumerate_homogeneous(std::size_t d, unsigned degree);

/// Number of multi-indices of dimension d with |alpha| == n, i.e. C(n+d-1, d-1).
double count_homogeneous(std::size_t d, unsigned n);

/// z^alpha = prod_i z_i^alpha_i for real points.
double monomial(const MultiIndex& alpha, std::span<const double> z);

}  // namespace chaoskit
