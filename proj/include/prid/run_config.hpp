#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "prid/features.hpp"
#include "prid/similarity.hpp"

namespace prid {

// Flag values that may override the config file. Unset optionals keep
// the file (or default) value.
struct ConfigOverrides {
    std::optional<std::string> color_space;
    std::optional<std::size_t> bins;
    std::optional<std::string> distance;
    std::optional<std::string> weighting;
    std::optional<std::string> missing_class;
    std::optional<double> min_area_fraction;
    std::optional<std::string> dataset;
    std::optional<std::string> masks;
    std::optional<std::string> out;
};

// Fully resolved run configuration: defaults, then the config file,
// then flag overrides. Unknown keys in the file are rejected.
struct RunConfig {
    ExtractionConfig extraction;
    SimilarityConfig similarity;
    std::filesystem::path dataset_root;
    std::filesystem::path mask_root;
    std::filesystem::path out_path;
};

RunConfig resolve_run_config(const std::filesystem::path& config_file,
                             const ConfigOverrides& overrides);

}  // namespace prid
