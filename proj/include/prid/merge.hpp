#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "prid/label_map.hpp"
#include "prid/schema.hpp"

namespace prid {

// Sentinel for pixels excluded from feature extraction (background
// plus any source class deliberately dropped).
inline constexpr std::int32_t kDiscard = -1;

// Collapses semantically similar parser classes into feature classes.
// `mapping[src]` is a merged class index or kDiscard; it is total over
// the source schema and background always maps to kDiscard.
struct ClassMergeMap {
    LabelSchema source_schema;
    std::vector<std::string> merged_names;
    std::vector<std::int32_t> mapping;

    bool operator==(const ClassMergeMap&) const = default;
    void validate() const;
};

// Default grouping over LIP: torso, legs-clothes, head, arms,
// legs-skin, feet. Groups classes a parser plausibly confuses.
const ClassMergeMap& default_merge_map();

// Loads {source_schema, merged_names[], mapping[]} from JSON; -1 in
// mapping means DISCARD.
ClassMergeMap load_merge_map(const std::filesystem::path& path);

// Relabels every pixel through the merge map. Geometry is unchanged;
// the output mask uses the merged schema with DISCARD stored as the
// background class (merged_names.size() slot reserved for it).
// The merged mask represents labels as merged index, with DISCARD
// pixels given label = merged_names.size().
LabelMap merge_classes(const LabelMap& mask, const ClassMergeMap& merge_map);

// Label value used for DISCARD pixels in a merged mask.
std::uint8_t merged_discard_label(const ClassMergeMap& merge_map);

// Schema describing a merged mask (merged classes + trailing DISCARD).
LabelSchema merged_schema(const ClassMergeMap& merge_map);

}  // namespace prid
