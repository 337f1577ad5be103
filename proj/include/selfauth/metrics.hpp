#pragma once

#include "selfauth/error.hpp"
#include "selfauth/image_io.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>

namespace selfauth::metrics {

constexpr double peak_value = 255.0;

struct QualityMetrics {
    double mse = 0.0;
    double psnr = std::numeric_limits<double>::infinity();
    double image_fidelity = 1.0;
    double std_dev_original = 0.0;
    double std_dev_stego = 0.0;
};

namespace detail {

inline void require_same_shape(const RgbImage& a, const RgbImage& b) {
    if (!a.is_consistent() || !b.is_consistent() || a.width != b.width || a.height != b.height)
        throw Error(ErrorCode::DimensionMismatch, "images differ in dimensions");
}

// Integer accumulation keeps the sums exact and order-independent.
inline std::uint64_t squared_error(const RgbImage& a, const RgbImage& b) {
    std::uint64_t sum = 0;
    auto add = [&sum](const std::vector<std::uint8_t>& x, const std::vector<std::uint8_t>& y) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            const std::int64_t d = static_cast<std::int64_t>(x[i]) - y[i];
            sum += static_cast<std::uint64_t>(d * d);
        }
    };
    add(a.red, b.red);
    add(a.green, b.green);
    add(a.blue, b.blue);
    return sum;
}

} // namespace detail

/// Mean squared error over all three channels: divides by 3*W*H.
inline double mse(const RgbImage& orig, const RgbImage& stego) {
    detail::require_same_shape(orig, stego);
    const std::size_t samples = 3 * orig.pixel_count();
    if (samples == 0) return 0.0;
    return static_cast<double>(detail::squared_error(orig, stego)) / static_cast<double>(samples);
}

inline double psnr(double mse_value) {
    if (mse_value <= 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(peak_value * peak_value / mse_value);
}

/// 1 - sum(diff^2) / sum(orig^2), all channels.
inline double image_fidelity(const RgbImage& orig, const RgbImage& stego) {
    detail::require_same_shape(orig, stego);
    std::uint64_t energy = 0;
    for (const auto* plane : {&orig.red, &orig.green, &orig.blue})
        for (const std::uint8_t v : *plane) energy += static_cast<std::uint64_t>(v) * v;
    if (energy == 0) throw Error(ErrorCode::ZeroReference, "image fidelity undefined for an all-zero original");
    return 1.0 - static_cast<double>(detail::squared_error(orig, stego)) / static_cast<double>(energy);
}

/// Population standard deviation over all 3*W*H samples.
inline double std_dev(const RgbImage& img) {
    std::uint64_t sum = 0, sum_sq = 0;
    std::size_t n = 0;
    for (const auto* plane : {&img.red, &img.green, &img.blue}) {
        for (const std::uint8_t v : *plane) {
            sum += v;
            sum_sq += static_cast<std::uint64_t>(v) * v;
        }
        n += plane->size();
    }
    if (n == 0) return 0.0;
    // n*sum_sq - sum^2 is exact in 128-bit for any image that fits in memory.
    const auto num = static_cast<unsigned __int128>(n) * sum_sq - static_cast<unsigned __int128>(sum) * sum;
    const double variance = static_cast<double>(num) / (static_cast<double>(n) * static_cast<double>(n));
    return std::sqrt(variance);
}

inline QualityMetrics measure(const RgbImage& orig, const RgbImage& stego) {
    QualityMetrics m;
    m.mse = mse(orig, stego);
    m.psnr = psnr(m.mse);
    m.image_fidelity = image_fidelity(orig, stego);
    m.std_dev_original = std_dev(orig);
    m.std_dev_stego = std_dev(stego);
    return m;
}

} // namespace selfauth::metrics
