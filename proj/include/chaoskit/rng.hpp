#pragma once

#include <array>
#include <cstdint>

namespace chaoskit::rng {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Philox4x32-10 block function (Salmon et al., Random123).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// Hierarchical substream identifier. A key is a hash of its parent and a
/// tag, so StreamKey(seed).child(kTag).child(i) names one path's stream
/// independently of how paths are scheduled.
class StreamKey {
public:
    explicit constexpr StreamKey(std::uint64_t master_seed) noexcept : value_(master_seed) {}
    StreamKey child(std::uint64_t tag) const noexcept;
    constexpr std::uint64_t value() const noexcept { return value_; }

private:
    std::uint64_t value_;
};

/// Counter-based generator: Philox keyed by a StreamKey, counting through
/// blocks. Copyable and cheap to construct.
class Philox {
public:
    explicit Philox(StreamKey key) noexcept;

    std::uint32_t next_u32() noexcept;
    std::uint64_t next_u64() noexcept;
    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() noexcept;
    /// Standard normal via Box-Muller; values come in cached pairs.
    double normal() noexcept;

private:
    std::array<std::uint32_t, 2> key_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    unsigned used_ = 4;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace chaoskit::rng
