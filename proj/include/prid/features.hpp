#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "prid/color.hpp"
#include "prid/image.hpp"
#include "prid/label_map.hpp"
#include "prid/merge.hpp"

namespace prid {

// Fixes the analytical feature model: which channels are histogrammed,
// how finely, and over which merged classes.
struct ExtractionConfig {
    ColorSpace color_space = ColorSpace::HSV;
    std::size_t bins_per_channel = 32;
    ClassMergeMap merge_map = default_merge_map();
    double min_area_fraction = 0.005;

    void validate() const;
    bool operator==(const ExtractionConfig&) const = default;
};

// Normalized histogram over one color channel of one merged class.
// All-zero bins mean the class is absent.
struct ChannelHistogram {
    std::vector<double> bins;

    bool operator==(const ChannelHistogram&) const = default;
};

struct ClassFeature {
    bool present = false;
    double area_fraction = 0.0;  // of foreground pixels
    std::vector<ChannelHistogram> histograms;

    bool operator==(const ClassFeature&) const = default;
};

// The unit of transmission and comparison: per merged class, one
// histogram per channel plus the class's share of foreground area.
struct FeatureVector {
    std::uint64_t config_digest = 0;
    std::vector<ClassFeature> classes;

    bool operator==(const FeatureVector&) const = default;
};

// Stable digest of everything that changes feature semantics. Two
// vectors are comparable iff their digests match.
std::uint64_t config_digest(const ExtractionConfig& config);

// Bin index for a channel value under equal-width binning over
// [0, range); the final bin is closed so value == range still lands.
std::size_t bin_index(double value, double range, std::size_t bins);

// Computes per-class channel histograms over the merged mask. The mask
// must be in the merged schema (see merge_classes) and pass
// validate_pair against the image. Classes whose foreground share is
// below min_area_fraction are marked absent. Throws NoForegroundError
// when every pixel is DISCARD.
FeatureVector extract_features(const PersonImage& image, const LabelMap& mask,
                               const ExtractionConfig& config);

// Canonical JSON form (fixed key order).
nlohmann::ordered_json feature_vector_to_json(const FeatureVector& fv);
FeatureVector feature_vector_from_json(const nlohmann::json& j);

}  // namespace prid
