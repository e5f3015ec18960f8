#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "prid/image.hpp"
#include "prid/schema.hpp"

namespace prid {

// Per-pixel class indices, row-major, same geometry as the paired image.
struct LabelMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> labels;  // width * height
    LabelSchema schema;

    bool operator==(const LabelMap&) const = default;
};

// Reads a single-channel PNG where pixel value = class index and
// validates every label against the schema. A label >= class_count
// raises SchemaViolationError naming the value and coordinate.
LabelMap load_label_map(const std::filesystem::path& path, const LabelSchema& schema);

// Writes the mask back as a single-channel PNG.
void save_label_map(const LabelMap& mask, const std::filesystem::path& path);

// Succeeds iff the image and mask dimensions match exactly. No
// resampling is ever performed; a mismatch is a user error.
void validate_pair(const PersonImage& image, const LabelMap& mask);

}  // namespace prid
