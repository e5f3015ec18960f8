#include "prid/features.hpp"

#include <cstdio>

#include "prid/errors.hpp"

namespace prid {

void ExtractionConfig::validate() const {
    if (bins_per_channel < 2) {
        throw ConfigError("bins_per_channel must be >= 2");
    }
    if (bins_per_channel > 0xFFFF) {
        throw ConfigError("bins_per_channel exceeds wire field width");
    }
    if (min_area_fraction < 0.0 || min_area_fraction >= 1.0) {
        throw ConfigError("min_area_fraction must be in [0,1)");
    }
    merge_map.validate();
}

static std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t config_digest(const ExtractionConfig& config) {
    char frac[32];
    std::snprintf(frac, sizeof(frac), "%.17g", config.min_area_fraction);
    std::string canon = "prid-features-v1|" + to_string(config.color_space) + "|" +
                        std::to_string(config.bins_per_channel) + "|" + frac + "|" +
                        config.merge_map.source_schema.name + ":" +
                        std::to_string(config.merge_map.source_schema.class_count) + "|";
    for (const auto& n : config.merge_map.merged_names) {
        canon += n;
        canon += ',';
    }
    canon += '|';
    for (auto v : config.merge_map.mapping) {
        canon += std::to_string(v);
        canon += ',';
    }
    return fnv1a64(canon);
}

std::size_t bin_index(double value, double range, std::size_t bins) {
    if (value <= 0.0) {
        return 0;
    }
    auto idx = static_cast<std::size_t>(value / range * static_cast<double>(bins));
    return idx >= bins ? bins - 1 : idx;
}

FeatureVector extract_features(const PersonImage& image, const LabelMap& mask,
                               const ExtractionConfig& config) {
    config.validate();
    validate_pair(image, mask);

    const std::size_t class_count = config.merge_map.merged_names.size();
    const std::uint8_t discard = merged_discard_label(config.merge_map);
    if (mask.schema.class_count != class_count + 1) {
        throw SchemaViolationError("mask is not in the merged schema (got \"" +
                                   mask.schema.name + "\")");
    }

    const auto channels = convert_color_space(image, config.color_space);
    const auto ranges = channel_ranges(config.color_space);
    const std::size_t bins = config.bins_per_channel;

    // Integer bin counts first; normalization is a single division so
    // the result is a pure function of the per-class count multiset.
    std::vector<std::uint64_t> class_pixels(class_count, 0);
    std::vector<std::vector<std::uint64_t>> counts(class_count,
                                                   std::vector<std::uint64_t>(3 * bins, 0));
    std::uint64_t foreground = 0;
    for (std::size_t i = 0; i < mask.labels.size(); ++i) {
        const std::uint8_t label = mask.labels[i];
        if (label == discard) {
            continue;
        }
        ++foreground;
        ++class_pixels[label];
        for (std::size_t c = 0; c < 3; ++c) {
            counts[label][c * bins + bin_index(channels[i][c], ranges[c], bins)]++;
        }
    }
    if (foreground == 0) {
        throw NoForegroundError("no person pixels: every pixel is DISCARD");
    }

    FeatureVector fv;
    fv.config_digest = config_digest(config);
    fv.classes.resize(class_count);
    for (std::size_t k = 0; k < class_count; ++k) {
        ClassFeature& cf = fv.classes[k];
        cf.histograms.assign(3, ChannelHistogram{std::vector<double>(bins, 0.0)});
        const double area = static_cast<double>(class_pixels[k]) / static_cast<double>(foreground);
        if (class_pixels[k] == 0 || area < config.min_area_fraction) {
            continue;
        }
        cf.present = true;
        cf.area_fraction = area;
        for (std::size_t c = 0; c < 3; ++c) {
            for (std::size_t b = 0; b < bins; ++b) {
                cf.histograms[c].bins[b] = static_cast<double>(counts[k][c * bins + b]) /
                                           static_cast<double>(class_pixels[k]);
            }
        }
    }
    return fv;
}

nlohmann::ordered_json feature_vector_to_json(const FeatureVector& fv) {
    nlohmann::ordered_json j;
    char digest[24];
    std::snprintf(digest, sizeof(digest), "%016llx",
                  static_cast<unsigned long long>(fv.config_digest));
    j["config_digest"] = digest;
    j["classes"] = nlohmann::ordered_json::array();
    for (const auto& cf : fv.classes) {
        nlohmann::ordered_json jc;
        jc["present"] = cf.present;
        jc["area_fraction"] = cf.area_fraction;
        jc["histograms"] = nlohmann::ordered_json::array();
        for (const auto& h : cf.histograms) {
            jc["histograms"].push_back(h.bins);
        }
        j["classes"].push_back(std::move(jc));
    }
    return j;
}

FeatureVector feature_vector_from_json(const nlohmann::json& j) {
    try {
        FeatureVector fv;
        fv.config_digest = std::stoull(j.at("config_digest").get<std::string>(), nullptr, 16);
        for (const auto& jc : j.at("classes")) {
            ClassFeature cf;
            cf.present = jc.at("present").get<bool>();
            cf.area_fraction = jc.at("area_fraction").get<double>();
            for (const auto& jh : jc.at("histograms")) {
                cf.histograms.push_back({jh.get<std::vector<double>>()});
            }
            fv.classes.push_back(std::move(cf));
        }
        return fv;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed feature vector JSON: ") + e.what());
    }
}

}  // namespace prid
