#include "prid/pipeline.hpp"

#include <chrono>

#include "prid/errors.hpp"
#include "prid/label_map.hpp"
#include "prid/market.hpp"
#include "prid/merge.hpp"

namespace prid {

IdentityAnnotation annotation_for_stem(const std::string& stem) {
    try {
        return parse_market_filename(stem);
    } catch (const FilenameParseError&) {
        return IdentityAnnotation{};  // junk annotation
    }
}

ExtractStats extract_directory(const std::vector<DatasetPair>& pairs,
                               const ExtractionConfig& config, std::uint32_t device_id,
                               std::vector<FeatureMessage>& out,
                               const std::function<void(const std::string&)>& on_error) {
    config.validate();
    ExtractStats stats;
    const auto now_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count());
    for (const auto& pair : pairs) {
        try {
            const PersonImage image = load_image(pair.image_path);
            const LabelMap raw_mask = load_label_map(pair.mask_path, config.merge_map.source_schema);
            validate_pair(image, raw_mask);
            const LabelMap merged = merge_classes(raw_mask, config.merge_map);

            FeatureMessage msg;
            msg.device_id = device_id;
            msg.capture_timestamp = now_ms;
            msg.annotation = annotation_for_stem(pair.stem);
            msg.features = extract_features(image, merged, config);
            out.push_back(std::move(msg));
            ++stats.extracted;
        } catch (const Error& e) {
            ++stats.failed;
            if (on_error) {
                on_error(pair.stem + ": " + e.what());
            }
        }
    }
    return stats;
}

}  // namespace prid
