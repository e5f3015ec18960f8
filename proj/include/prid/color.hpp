#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "prid/image.hpp"

namespace prid {

enum class ColorSpace { RGB, HSV };

std::string to_string(ColorSpace space);
ColorSpace color_space_from_string(const std::string& name);

// Hexcone conversion. H in [0,360), S and V in [0,1]; achromatic
// pixels get hue 0.
std::array<double, 3> rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b);

// Per-pixel channel triples in the target space. RGB -> RGB is the
// identity (byte values as doubles).
std::vector<std::array<double, 3>> convert_color_space(const PersonImage& image, ColorSpace space);

// Upper end of each channel's value range in the given space, used for
// equal-width binning. RGB channels span [0,256); HSV spans
// [0,360) x [0,1] x [0,1].
std::array<double, 3> channel_ranges(ColorSpace space);

}  // namespace prid
