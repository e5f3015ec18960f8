#include "prid/label_map.hpp"

#include <opencv2/imgcodecs.hpp>

#include "prid/errors.hpp"

namespace prid {

LabelMap load_label_map(const std::filesystem::path& path, const LabelSchema& schema) {
    if (!std::filesystem::exists(path)) {
        throw IoError("label map not found: " + path.string());
    }
    cv::Mat raw = cv::imread(path.string(), cv::IMREAD_GRAYSCALE);
    if (raw.empty()) {
        throw DataError("undecodable label map: " + path.string());
    }
    LabelMap m;
    m.width = raw.cols;
    m.height = raw.rows;
    m.schema = schema;
    m.labels.resize(static_cast<std::size_t>(m.width) * m.height);
    for (int y = 0; y < m.height; ++y) {
        const auto* row = raw.ptr<std::uint8_t>(y);
        for (int x = 0; x < m.width; ++x) {
            std::uint8_t v = row[x];
            if (v >= schema.class_count) {
                throw SchemaViolationError(
                    "label " + std::to_string(v) + " at (" + std::to_string(x) + "," +
                    std::to_string(y) + ") exceeds schema \"" + schema.name + "\" class count " +
                    std::to_string(schema.class_count) + " in " + path.string());
            }
            m.labels[static_cast<std::size_t>(y) * m.width + x] = v;
        }
    }
    return m;
}

void save_label_map(const LabelMap& mask, const std::filesystem::path& path) {
    cv::Mat gray(mask.height, mask.width, CV_8UC1);
    for (int y = 0; y < mask.height; ++y) {
        auto* row = gray.ptr<std::uint8_t>(y);
        for (int x = 0; x < mask.width; ++x) {
            row[x] = mask.labels[static_cast<std::size_t>(y) * mask.width + x];
        }
    }
    if (!cv::imwrite(path.string(), gray)) {
        throw IoError("cannot write label map: " + path.string());
    }
}

void validate_pair(const PersonImage& image, const LabelMap& mask) {
    if (image.width != mask.width || image.height != mask.height) {
        throw DimensionMismatchError(
            "image is " + std::to_string(image.width) + "x" + std::to_string(image.height) +
            " but mask is " + std::to_string(mask.width) + "x" + std::to_string(mask.height));
    }
}

}  // namespace prid
