#pragma once

#include "selfauth/error.hpp"
#include "selfauth/plane.hpp"

#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace selfauth {

/// Three 8-bit planes of equal dimensions.
struct RgbImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> red;
    std::vector<std::uint8_t> green;
    std::vector<std::uint8_t> blue;

    RgbImage() = default;
    RgbImage(std::size_t w, std::size_t h)
        : width(w), height(h), red(w * h), green(w * h), blue(w * h) {}

    std::size_t pixel_count() const noexcept { return width * height; }
    bool has_even_dimensions() const noexcept {
        return width >= 2 && height >= 2 && width % 2 == 0 && height % 2 == 0;
    }
    bool is_consistent() const noexcept {
        const auto n = pixel_count();
        return red.size() == n && green.size() == n && blue.size() == n;
    }

    bool operator==(const RgbImage&) const = default;
};

enum class PpmFormat { P6, P3 };

namespace detail {

class HeaderCursor {
public:
    explicit HeaderCursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    void skip_whitespace_and_comments() {
        while (pos_ < bytes_.size()) {
            const auto c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else if (std::isspace(c)) {
                ++pos_;
            } else {
                return;
            }
        }
    }

    // Reads one unsigned decimal token. Returns false at end of input.
    bool next_number(std::size_t& value, ErrorCode bad_token) {
        skip_whitespace_and_comments();
        if (pos_ >= bytes_.size()) return false;
        const auto* first = reinterpret_cast<const char*>(bytes_.data()) + pos_;
        const auto* last = reinterpret_cast<const char*>(bytes_.data()) + bytes_.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || (ptr != last && !std::isspace(static_cast<unsigned char>(*ptr)) && *ptr != '#'))
            throw Error(bad_token, "invalid numeric token in PPM stream");
        pos_ += static_cast<std::size_t>(ptr - first);
        return true;
    }

    std::size_t position() const noexcept { return pos_; }
    void advance(std::size_t n) noexcept { pos_ += n; }
    std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

inline void append_ascii(std::vector<std::uint8_t>& out, std::string_view s) {
    out.insert(out.end(), s.begin(), s.end());
}

inline std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(ErrorCode::Io, "read failed: " + path.string());
    return bytes;
}

inline void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

} // namespace detail

/// Parses a binary (P6) or ASCII (P3) pixmap with maxval 255.
inline RgbImage read_ppm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P')
        throw Error(ErrorCode::UnsupportedFormat, "not a PPM stream (missing P3/P6 magic)");
    PpmFormat format;
    if (bytes[1] == '6') {
        format = PpmFormat::P6;
    } else if (bytes[1] == '3') {
        format = PpmFormat::P3;
    } else {
        throw Error(ErrorCode::UnsupportedFormat,
                    std::string("unsupported netpbm magic P") + static_cast<char>(bytes[1]));
    }
    if (bytes.size() > 2 && !std::isspace(bytes[2]) && bytes[2] != '#')
        throw Error(ErrorCode::MalformedHeader, "magic number must be followed by whitespace");

    detail::HeaderCursor cursor(bytes);
    cursor.advance(2);
    std::size_t width = 0, height = 0, maxval = 0;
    if (!cursor.next_number(width, ErrorCode::MalformedHeader) ||
        !cursor.next_number(height, ErrorCode::MalformedHeader) ||
        !cursor.next_number(maxval, ErrorCode::MalformedHeader))
        throw Error(ErrorCode::MalformedHeader, "incomplete PPM header");
    if (width == 0 || height == 0) throw Error(ErrorCode::MalformedHeader, "PPM dimensions must be positive");
    if (maxval != 255) throw Error(ErrorCode::UnsupportedFormat, "only maxval 255 is supported");
    constexpr auto limit = std::numeric_limits<std::size_t>::max() / 3;
    if (height > limit / width) throw Error(ErrorCode::MalformedHeader, "PPM dimensions overflow");

    const std::size_t pixels = width * height;
    const std::size_t samples = pixels * 3;
    std::vector<std::uint8_t> interleaved;

    if (format == PpmFormat::P6) {
        // Exactly one whitespace byte separates maxval from the raster.
        if (cursor.remaining() == 0 || !std::isspace(bytes[cursor.position()]))
            throw Error(ErrorCode::Truncated, "missing raster after PPM header");
        cursor.advance(1);
        if (cursor.remaining() < samples) throw Error(ErrorCode::Truncated, "PPM raster shorter than header promises");
        const auto raster = bytes.subspan(cursor.position(), samples);
        interleaved.assign(raster.begin(), raster.end());
    } else {
        if (cursor.remaining() < samples) throw Error(ErrorCode::Truncated, "PPM raster shorter than header promises");
        interleaved.reserve(samples);
        for (std::size_t i = 0; i < samples; ++i) {
            std::size_t v = 0;
            if (!cursor.next_number(v, ErrorCode::MalformedData))
                throw Error(ErrorCode::Truncated, "PPM raster shorter than header promises");
            if (v > 255) throw Error(ErrorCode::MalformedData, "sample exceeds maxval 255");
            interleaved.push_back(static_cast<std::uint8_t>(v));
        }
    }

    RgbImage img(width, height);
    for (std::size_t p = 0; p < pixels; ++p) {
        img.red[p] = interleaved[3 * p];
        img.green[p] = interleaved[3 * p + 1];
        img.blue[p] = interleaved[3 * p + 2];
    }
    return img;
}

/// Canonical writer: "P6\n<w> <h>\n255\n" then interleaved samples. P3 puts
/// one pixel per line.
inline std::vector<std::uint8_t> write_ppm(const RgbImage& img, PpmFormat format = PpmFormat::P6) {
    if (!img.is_consistent()) throw Error(ErrorCode::DimensionMismatch, "image planes do not match dimensions");
    std::vector<std::uint8_t> out;
    const std::string header = std::string(format == PpmFormat::P6 ? "P6" : "P3") + "\n" +
                               std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    detail::append_ascii(out, header);
    const std::size_t pixels = img.pixel_count();
    if (format == PpmFormat::P6) {
        out.reserve(out.size() + pixels * 3);
        for (std::size_t p = 0; p < pixels; ++p) {
            out.push_back(img.red[p]);
            out.push_back(img.green[p]);
            out.push_back(img.blue[p]);
        }
    } else {
        for (std::size_t p = 0; p < pixels; ++p) {
            detail::append_ascii(out, std::to_string(img.red[p]) + " " + std::to_string(img.green[p]) + " " +
                                          std::to_string(img.blue[p]) + "\n");
        }
    }
    return out;
}

/// Binary graymap (P5, maxval 255).
inline std::vector<std::uint8_t> write_pgm(const BytePlane& plane) {
    std::vector<std::uint8_t> out;
    detail::append_ascii(out, "P5\n" + std::to_string(plane.width) + " " + std::to_string(plane.height) + "\n255\n");
    out.insert(out.end(), plane.data.begin(), plane.data.end());
    return out;
}

inline RgbImage load_ppm(const std::filesystem::path& path) { return read_ppm(detail::read_file(path)); }

inline void save_ppm(const std::filesystem::path& path, const RgbImage& img, PpmFormat format = PpmFormat::P6) {
    detail::write_file(path, write_ppm(img, format));
}

} // namespace selfauth
