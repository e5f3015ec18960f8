#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace prid {

// Names and count of the classes a human parser emits.
struct LabelSchema {
    std::string name;
    std::size_t class_count = 0;
    std::vector<std::string> class_names;
    std::size_t background_index = 0;

    bool operator==(const LabelSchema&) const = default;
};

// The 20-class LIP schema (background + 19 body/clothing parts).
const LabelSchema& lip_schema();

// Loads {name, class_count, class_names[], background_index} from JSON.
LabelSchema load_schema(const std::filesystem::path& path);

}  // namespace prid
