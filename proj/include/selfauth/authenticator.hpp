#pragma once

#include "selfauth/embedding.hpp"
#include "selfauth/error.hpp"
#include "selfauth/image_io.hpp"
#include "selfauth/plane.hpp"
#include "selfauth/wavelet.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace selfauth {

enum class Channel { Red, Green };

constexpr char channel_letter(Channel c) noexcept { return c == Channel::Red ? 'R' : 'G'; }

/// One payload byte that failed to match: its source 2x2 block and the two
/// blue pixels (row-major indices) that carry it.
struct MismatchedBlock {
    Channel channel;
    std::size_t block_row;
    std::size_t block_col;
    std::array<std::size_t, 2> carrier_pixels;

    bool operator==(const MismatchedBlock&) const = default;
};

struct VerificationReport {
    bool authentic = true;
    std::size_t total_payload_bytes = 0;
    std::size_t mismatched_bytes = 0;
    BytePlane tamper_map; // 1 = suspect pixel
    std::vector<MismatchedBlock> mismatched_blocks;

    bool operator==(const VerificationReport&) const = default;
};

namespace detail {

inline void require_even(const RgbImage& img) {
    if (!img.is_consistent()) throw Error(ErrorCode::DimensionMismatch, "image planes do not match dimensions");
    if (!img.has_even_dimensions())
        throw Error(ErrorCode::OddDimensions, "authentication requires even dimensions, got " +
                                                  std::to_string(img.width) + "x" + std::to_string(img.height));
}

inline Payload expected_payload(const RgbImage& img, bool check_reconstruction) {
    const auto red = wavelet::forward_2d<std::uint8_t>(img.red, img.width, img.height);
    const auto green = wavelet::forward_2d<std::uint8_t>(img.green, img.width, img.height);
    if (check_reconstruction) {
        if (wavelet::inverse_2d(red).data != img.red || wavelet::inverse_2d(green).data != img.green)
            throw std::logic_error("inverse wavelet did not reproduce the red/green planes");
    }
    return serialize_ll(red.ll, green.ll);
}

} // namespace detail

/// Hides the LL digest of red and green in the blue plane's low nibbles.
/// Red and green are returned bit-identical.
inline RgbImage encode(const RgbImage& cover, EmbedKey key) {
    detail::require_even(cover);
    const Payload payload = detail::expected_payload(cover, true);
    RgbImage out = cover;
    out.blue = embed(cover.blue, payload, key);
    return out;
}

/// Recomputes the digest from red/green and compares it bytewise with the one
/// extracted from blue. Each mismatch marks its source block and both carriers.
inline VerificationReport verify(const RgbImage& candidate, EmbedKey key) {
    detail::require_even(candidate);
    const Payload expected = detail::expected_payload(candidate, false);
    const Payload actual = extract(candidate.blue, key);

    const std::size_t hw = candidate.width / 2;
    const std::size_t per_channel = hw * (candidate.height / 2);

    VerificationReport report;
    report.total_payload_bytes = expected.size();
    report.tamper_map = BytePlane(candidate.width, candidate.height, std::uint8_t{0});
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (expected[i] == actual[i]) continue;
        const Channel channel = i < per_channel ? Channel::Red : Channel::Green;
        const std::size_t j = i < per_channel ? i : i - per_channel;
        const std::size_t row = j / hw;
        const std::size_t col = j % hw;
        report.mismatched_blocks.push_back({channel, row, col, {2 * i, 2 * i + 1}});

        auto& map = report.tamper_map;
        map(2 * row, 2 * col) = 1;
        map(2 * row, 2 * col + 1) = 1;
        map(2 * row + 1, 2 * col) = 1;
        map(2 * row + 1, 2 * col + 1) = 1;
        map.data[2 * i] = 1;
        map.data[2 * i + 1] = 1;
    }
    report.mismatched_bytes = report.mismatched_blocks.size();
    report.authentic = report.mismatched_bytes == 0;
    return report;
}

/// P5 mask, 255 where the report marks a pixel as suspect.
inline std::vector<std::uint8_t> tamper_mask_to_pgm(const VerificationReport& report) {
    BytePlane mask = report.tamper_map;
    for (auto& v : mask.data) v = v ? 255 : 0;
    return write_pgm(mask);
}

} // namespace selfauth
