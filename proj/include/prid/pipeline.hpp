#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "prid/dataset.hpp"
#include "prid/features.hpp"
#include "prid/wire.hpp"

namespace prid {

struct ExtractStats {
    std::size_t extracted = 0;
    std::size_t failed = 0;
};

// Runs load -> validate -> merge -> extract over every pair and
// produces one FeatureMessage per success. Annotations come from the
// Market1501 filename convention; non-matching stems fall back to a
// junk annotation (person_id -1). Per-file failures are reported via
// on_error and skipped.
ExtractStats extract_directory(const std::vector<DatasetPair>& pairs,
                               const ExtractionConfig& config, std::uint32_t device_id,
                               std::vector<FeatureMessage>& out,
                               const std::function<void(const std::string&)>& on_error = {});

// Annotation for one stem: parsed when market-style, junk otherwise.
IdentityAnnotation annotation_for_stem(const std::string& stem);

}  // namespace prid
