#pragma once

#include "selfauth/error.hpp"
#include "selfauth/plane.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace selfauth {

/// Secret parameter driving the per-byte slot rotation. Valid range [2, 7].
class EmbedKey {
public:
    static constexpr int min_value = 2;
    static constexpr int max_value = 7;
    static constexpr int default_value = 4;

    constexpr EmbedKey() = default;
    explicit EmbedKey(int s) : s_(s) {
        if (s < min_value || s > max_value)
            throw Error(ErrorCode::InvalidKey, "key must be in [2, 7], got " + std::to_string(s));
    }

    constexpr int value() const noexcept { return s_; }
    constexpr bool operator==(const EmbedKey&) const = default;

private:
    int s_ = default_value;
};

/// Serialized LL bytes: red row-major, then green row-major.
using Payload = std::vector<std::uint8_t>;

struct BitPosition {
    std::size_t pixel_offset;
    unsigned nibble_slot;

    constexpr bool operator==(const BitPosition&) const = default;
};

/// Bit k (k = 0 is the LSB) of payload byte i lands in blue pixel 2i + k/4,
/// at low-nibble bit ((k mod 4) + (i mod s)) mod 4.
constexpr BitPosition bit_position(std::size_t byte_index, unsigned bit_index, EmbedKey key) noexcept {
    const auto rotation = static_cast<unsigned>(byte_index % static_cast<std::size_t>(key.value()));
    return {2 * byte_index + bit_index / 4, ((bit_index % 4) + rotation) % 4};
}

/// Blue pixels needed to carry a payload of the given length.
constexpr std::size_t carrier_pixels_for(std::size_t payload_bytes) noexcept { return payload_bytes * 2; }

/// Payload length produced by a W x H image (two LL planes of (W/2) x (H/2)).
constexpr std::size_t payload_bytes_for(std::size_t width, std::size_t height) noexcept {
    return 2 * (width / 2) * (height / 2);
}

namespace detail {

// Nibble stored in the carrier pixel for bits [4*half, 4*half+3] of `byte`.
constexpr std::uint8_t scatter_nibble(std::uint8_t byte, unsigned half, unsigned rotation) noexcept {
    std::uint8_t nibble = 0;
    for (unsigned k = 0; k < 4; ++k) {
        const unsigned bit = (byte >> (4 * half + k)) & 1u;
        nibble = static_cast<std::uint8_t>(nibble | (bit << ((k + rotation) % 4)));
    }
    return nibble;
}

constexpr std::uint8_t gather_nibble(std::uint8_t nibble, unsigned rotation) noexcept {
    std::uint8_t bits = 0;
    for (unsigned k = 0; k < 4; ++k) bits = static_cast<std::uint8_t>(bits | (((nibble >> ((k + rotation) % 4)) & 1u) << k));
    return bits;
}

} // namespace detail

/// Overwrites every low-nibble bit of the blue plane with payload bits; the
/// high nibble of each pixel is untouched.
inline std::vector<std::uint8_t> embed(std::span<const std::uint8_t> blue, std::span<const std::uint8_t> payload,
                                       EmbedKey key) {
    if (blue.size() != carrier_pixels_for(payload.size()))
        throw Error(ErrorCode::CapacityMismatch, "blue plane holds " + std::to_string(blue.size() * 4) +
                                                     " bits but payload has " + std::to_string(payload.size() * 8));
    std::vector<std::uint8_t> out(blue.begin(), blue.end());
    const auto s = static_cast<std::size_t>(key.value());
    for (std::size_t i = 0; i < payload.size(); ++i) {
        const auto rotation = static_cast<unsigned>(i % s);
        for (unsigned half = 0; half < 2; ++half) {
            auto& px = out[2 * i + half];
            px = static_cast<std::uint8_t>((px & 0xF0u) | detail::scatter_nibble(payload[i], half, rotation));
        }
    }
    return out;
}

inline Payload extract(std::span<const std::uint8_t> blue, EmbedKey key) {
    if (blue.size() % 2 != 0) throw Error(ErrorCode::OddPlaneLength, "blue plane length must be even");
    Payload out(blue.size() / 2);
    const auto s = static_cast<std::size_t>(key.value());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto rotation = static_cast<unsigned>(i % s);
        const auto lo = detail::gather_nibble(blue[2 * i] & 0x0Fu, rotation);
        const auto hi = detail::gather_nibble(blue[2 * i + 1] & 0x0Fu, rotation);
        out[i] = static_cast<std::uint8_t>(lo | (hi << 4));
    }
    return out;
}

template <typename T>
Payload serialize_ll(const Plane<T>& ll_red, const Plane<T>& ll_green) {
    if (ll_red.width != ll_green.width || ll_red.height != ll_green.height || ll_red.size() != ll_green.size())
        throw Error(ErrorCode::DimensionMismatch, "LL planes differ in size");
    Payload out;
    out.reserve(ll_red.size() + ll_green.size());
    for (const auto* plane : {&ll_red, &ll_green}) {
        for (const T v : plane->data) {
            const auto wide = static_cast<long long>(v);
            if (wide < 0 || wide > 255) throw Error(ErrorCode::RangeViolation, "LL sample outside [0, 255]");
            out.push_back(static_cast<std::uint8_t>(v));
        }
    }
    return out;
}

} // namespace selfauth
