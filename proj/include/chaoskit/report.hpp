#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chaoskit {

enum class Status {
    pass,
    fail,
    inapplicable,  // hypothesis of the claim not met; nothing asserted
    unconverged,   // a quadrature refinement check failed
    straggler,     // outside its band, but inside the report's declared 1% outlier budget
};

std::string_view to_string(Status s) noexcept;

/// One asserted identity or inequality with both sides at full precision.
struct CheckRecord {
    std::string name;
    std::vector<std::pair<std::string, std::string>> inputs;
    double left = 0.0;
    std::string relation;  // "<=", ">=", "==", "<", ">"
    double right = 0.0;
    std::optional<double> std_error;
    Status status = Status::pass;
    std::string note;
};

/// A named batch of records produced by one check routine.
struct CheckReport {
    std::string name;
    std::vector<CheckRecord> records;

    /// True when no record failed or failed to converge.
    bool passed() const noexcept;
    std::size_t count(Status s) const noexcept;
    void append(const CheckReport& other);
};

/// Formats a double with 17 significant digits.
std::string fmt(double v);

// Record builders. Tolerances are explicit at each call site.

/// |left - right| <= abs_tol + rel_tol * |right|.
CheckRecord record_close(std::string name, double left, double right, double abs_tol, double rel_tol);
/// left <= right * factor  (factor = 1 + tolerance).
CheckRecord record_le(std::string name, double left, double right, double factor = 1.0);
/// left >= right - abs_tol.
CheckRecord record_ge(std::string name, double left, double right, double abs_tol = 0.0);
/// left < right, strictly.
CheckRecord record_lt(std::string name, double left, double right);
/// |left - right| <= c * std_error + allowance.
CheckRecord record_stat(std::string name, double left, double right, double std_error, double c,
                        double allowance = 0.0);

}  // namespace chaoskit
