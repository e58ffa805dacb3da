#include "chaoskit/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace chaoskit {

std::string_view to_string(Status s) noexcept {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::inapplicable: return "inapplicable";
        case Status::unconverged: return "unconverged";
        case Status::straggler: return "straggler";
    }
    return "unknown";
}

bool CheckReport::passed() const noexcept {
    return std::none_of(records.begin(), records.end(), [](const CheckRecord& r) {
        return r.status == Status::fail || r.status == Status::unconverged;
    });
}

std::size_t CheckReport::count(Status s) const noexcept {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [s](const CheckRecord& r) { return r.status == s; }));
}

void CheckReport::append(const CheckReport& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

Status verdict(bool ok, double left, double right) {
    if (!std::isfinite(left) || !std::isfinite(right)) return Status::fail;
    return ok ? Status::pass : Status::fail;
}

}  // namespace

CheckRecord record_close(std::string name, double left, double right, double abs_tol, double rel_tol) {
    CheckRecord r;
    r.name = std::move(name);
    r.left = left;
    r.right = right;
    r.relation = "==";
    r.status = verdict(std::abs(left - right) <= abs_tol + rel_tol * std::abs(right), left, right);
    r.note = "tol abs " + fmt(abs_tol) + " rel " + fmt(rel_tol);
    return r;
}

CheckRecord record_le(std::string name, double left, double right, double factor) {
    CheckRecord r;
    r.name = std::move(name);
    r.left = left;
    r.right = right;
    r.relation = "<=";
    r.status = verdict(left <= right * factor, left, right);
    if (factor != 1.0) r.note = "factor " + fmt(factor);
    return r;
}

CheckRecord record_ge(std::string name, double left, double right, double abs_tol) {
    CheckRecord r;
    r.name = std::move(name);
    r.left = left;
    r.right = right;
    r.relation = ">=";
    r.status = verdict(left >= right - abs_tol, left, right);
    if (abs_tol != 0.0) r.note = "tol abs " + fmt(abs_tol);
    return r;
}

CheckRecord record_lt(std::string name, double left, double right) {
    CheckRecord r;
    r.name = std::move(name);
    r.left = left;
    r.right = right;
    r.relation = "<";
    r.status = verdict(left < right, left, right);
    return r;
}

CheckRecord record_stat(std::string name, double left, double right, double std_error, double c,
                        double allowance) {
    CheckRecord r;
    r.name = std::move(name);
    r.left = left;
    r.right = right;
    r.relation = "==";
    r.std_error = std_error;
    r.status = verdict(std::abs(left - right) <= c * std_error + allowance, left, right);
    r.note = "c " + fmt(c);
    if (allowance != 0.0) r.note += " allowance " + fmt(allowance);
    return r;
}

}  // namespace chaoskit
