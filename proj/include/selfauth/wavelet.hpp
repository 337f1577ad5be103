#pragma once

#include "selfauth/error.hpp"
#include "selfauth/plane.hpp"

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

namespace selfauth::wavelet {

/*
 Integer Haar (S-transform) on one pair:

   low  = floor((a + b) / 2)
   high = a - b

   a = low + floor((high + 1) / 2)
   b = a - high

 floor((a+b)/2) = a - ceil(high/2), so the inverse is exact for all integers.
*/

template <std::signed_integral T>
constexpr T floor_half(T v) noexcept {
    return static_cast<T>(v >> 1); // arithmetic shift rounds toward -inf
}

template <std::signed_integral T>
constexpr std::pair<T, T> forward_pair(T a, T b) noexcept {
    return {floor_half(static_cast<T>(a + b)), static_cast<T>(a - b)};
}

template <std::signed_integral T>
constexpr std::pair<T, T> inverse_pair(T low, T high) noexcept {
    const T a = static_cast<T>(low + floor_half(static_cast<T>(high + 1)));
    return {a, static_cast<T>(a - high)};
}

/// One-level decomposition of a W x H plane into four (W/2) x (H/2) planes.
/// ll/lh come from the horizontal low half, hl/hh from the horizontal high half.
struct SubbandSet {
    std::size_t half_width = 0;
    std::size_t half_height = 0;
    CoeffPlane ll;
    CoeffPlane hl;
    CoeffPlane lh;
    CoeffPlane hh;

    bool operator==(const SubbandSet&) const = default;
};

/// Rows then columns.
template <std::integral Sample>
SubbandSet forward_2d(std::span<const Sample> plane, std::size_t width, std::size_t height) {
    if (width % 2 != 0 || height % 2 != 0)
        throw Error(ErrorCode::OddDimensions, "wavelet transform requires even dimensions");
    if (plane.size() != width * height)
        throw Error(ErrorCode::DimensionMismatch, "plane length does not match width x height");

    const std::size_t hw = width / 2;
    const std::size_t hh = height / 2;
    CoeffPlane low(hw, height), high(hw, height);
    for (std::size_t y = 0; y < height; ++y) {
        const Sample* row = plane.data() + y * width;
        for (std::size_t c = 0; c < hw; ++c) {
            auto [l, h] = forward_pair<std::int16_t>(static_cast<std::int16_t>(row[2 * c]),
                                                     static_cast<std::int16_t>(row[2 * c + 1]));
            low(y, c) = l;
            high(y, c) = h;
        }
    }

    SubbandSet out{hw, hh, CoeffPlane(hw, hh), CoeffPlane(hw, hh), CoeffPlane(hw, hh), CoeffPlane(hw, hh)};
    for (std::size_t r = 0; r < hh; ++r) {
        for (std::size_t c = 0; c < hw; ++c) {
            auto [ll, lh] = forward_pair(low(2 * r, c), low(2 * r + 1, c));
            auto [hl, hhv] = forward_pair(high(2 * r, c), high(2 * r + 1, c));
            out.ll(r, c) = ll;
            out.lh(r, c) = lh;
            out.hl(r, c) = hl;
            out.hh(r, c) = hhv;
        }
    }
    return out;
}

template <std::integral Sample>
SubbandSet forward_2d(const Plane<Sample>& plane) {
    return forward_2d<Sample>(plane.span(), plane.width, plane.height);
}

/// Columns then rows. Samples outside [0, 255] mean the subbands did not come
/// from a byte plane; they are reported as RangeViolation.
inline BytePlane inverse_2d(const SubbandSet& sb) {
    const std::size_t hw = sb.half_width;
    const std::size_t hh = sb.half_height;
    const std::size_t n = hw * hh;
    for (const CoeffPlane* p : {&sb.ll, &sb.hl, &sb.lh, &sb.hh}) {
        if (p->width != hw || p->height != hh || p->size() != n)
            throw Error(ErrorCode::DimensionMismatch, "subband dimensions are inconsistent");
    }

    const std::size_t width = hw * 2;
    const std::size_t height = hh * 2;
    CoeffPlane low(hw, height), high(hw, height);
    for (std::size_t r = 0; r < hh; ++r) {
        for (std::size_t c = 0; c < hw; ++c) {
            auto [l0, l1] = inverse_pair(sb.ll(r, c), sb.lh(r, c));
            auto [h0, h1] = inverse_pair(sb.hl(r, c), sb.hh(r, c));
            low(2 * r, c) = l0;
            low(2 * r + 1, c) = l1;
            high(2 * r, c) = h0;
            high(2 * r + 1, c) = h1;
        }
    }

    BytePlane out(width, height);
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t c = 0; c < hw; ++c) {
            auto [a, b] = inverse_pair(low(y, c), high(y, c));
            if (a < 0 || a > 255 || b < 0 || b > 255)
                throw Error(ErrorCode::RangeViolation, "reconstructed sample outside [0, 255]");
            out(y, 2 * c) = static_cast<std::uint8_t>(a);
            out(y, 2 * c + 1) = static_cast<std::uint8_t>(b);
        }
    }
    return out;
}

} // namespace selfauth::wavelet
