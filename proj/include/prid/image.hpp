#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace prid {

// Decoded RGB image, 8 bits per channel, row-major.
struct PersonImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // width * height * 3

    bool operator==(const PersonImage&) const = default;
};

// Decodes a JPEG or PNG. Grayscale inputs are expanded to RGB by
// channel replication. Throws IoError on missing files and DataError
// on undecodable or zero-dimension payloads.
PersonImage load_image(const std::filesystem::path& path);

// Lossless PNG write (round-trips bit-identically through load_image).
void save_png(const PersonImage& image, const std::filesystem::path& path);

}  // namespace prid
