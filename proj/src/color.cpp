#include "prid/color.hpp"

#include <algorithm>

#include "prid/errors.hpp"

namespace prid {

std::string to_string(ColorSpace space) {
    return space == ColorSpace::RGB ? "RGB" : "HSV";
}

ColorSpace color_space_from_string(const std::string& name) {
    if (name == "RGB" || name == "rgb") {
        return ColorSpace::RGB;
    }
    if (name == "HSV" || name == "hsv") {
        return ColorSpace::HSV;
    }
    throw ConfigError("unknown color space: \"" + name + "\"");
}

std::array<double, 3> rgb_to_hsv(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8) {
    const double r = r8 / 255.0;
    const double g = g8 / 255.0;
    const double b = b8 / 255.0;
    const double maxc = std::max({r, g, b});
    const double minc = std::min({r, g, b});
    const double delta = maxc - minc;

    double h = 0.0;
    if (delta > 0.0) {
        if (maxc == r) {
            h = 60.0 * ((g - b) / delta);
        } else if (maxc == g) {
            h = 60.0 * (2.0 + (b - r) / delta);
        } else {
            h = 60.0 * (4.0 + (r - g) / delta);
        }
        if (h < 0.0) {
            h += 360.0;
        }
        if (h >= 360.0) {
            h -= 360.0;
        }
    }
    const double s = maxc > 0.0 ? delta / maxc : 0.0;
    return {h, s, maxc};
}

std::vector<std::array<double, 3>> convert_color_space(const PersonImage& image, ColorSpace space) {
    const std::size_t n = static_cast<std::size_t>(image.width) * image.height;
    std::vector<std::array<double, 3>> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint8_t r = image.pixels[i * 3 + 0];
        const std::uint8_t g = image.pixels[i * 3 + 1];
        const std::uint8_t b = image.pixels[i * 3 + 2];
        if (space == ColorSpace::RGB) {
            out[i] = {static_cast<double>(r), static_cast<double>(g), static_cast<double>(b)};
        } else {
            out[i] = rgb_to_hsv(r, g, b);
        }
    }
    return out;
}

std::array<double, 3> channel_ranges(ColorSpace space) {
    if (space == ColorSpace::RGB) {
        return {256.0, 256.0, 256.0};
    }
    return {360.0, 1.0, 1.0};
}

}  // namespace prid
