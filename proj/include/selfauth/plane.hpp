#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace selfauth {

/// Row-major 2D array of samples. Used for byte planes, signed wavelet
/// coefficients and binary masks alike.
template <typename T>
struct Plane {
    using value_type = T;

    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<T> data;

    Plane() = default;
    Plane(std::size_t w, std::size_t h, T fill = T{}) : width(w), height(h), data(w * h, fill) {}
    Plane(std::size_t w, std::size_t h, std::vector<T> samples)
        : width(w), height(h), data(std::move(samples)) {}

    T& operator()(std::size_t row, std::size_t col) { return data[row * width + col]; }
    const T& operator()(std::size_t row, std::size_t col) const { return data[row * width + col]; }

    std::size_t size() const noexcept { return data.size(); }
    std::span<T> span() noexcept { return data; }
    std::span<const T> span() const noexcept { return data; }

    bool operator==(const Plane&) const = default;
};

using BytePlane = Plane<std::uint8_t>;
using CoeffPlane = Plane<std::int16_t>;

} // namespace selfauth
