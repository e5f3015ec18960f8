#include "prid/merge.hpp"

#include <fstream>
#include <map>

#include <json.hpp>

#include "prid/errors.hpp"

namespace prid {

void ClassMergeMap::validate() const {
    if (mapping.size() != source_schema.class_count) {
        throw ConfigError("merge map is not total over schema \"" + source_schema.name + "\" (" +
                          std::to_string(mapping.size()) + " entries for " +
                          std::to_string(source_schema.class_count) + " classes)");
    }
    if (mapping[source_schema.background_index] != kDiscard) {
        throw ConfigError("merge map must send background to DISCARD");
    }
    for (std::size_t i = 0; i < mapping.size(); ++i) {
        if (mapping[i] != kDiscard &&
            (mapping[i] < 0 || static_cast<std::size_t>(mapping[i]) >= merged_names.size())) {
            throw ConfigError("merge map entry " + std::to_string(i) + " -> " +
                              std::to_string(mapping[i]) + " is out of range");
        }
    }
    if (merged_names.size() > 254) {
        throw ConfigError("too many merged classes");
    }
}

const ClassMergeMap& default_merge_map() {
    static const ClassMergeMap map = [] {
        ClassMergeMap m;
        m.source_schema = lip_schema();
        m.merged_names = {"torso", "legs-clothes", "head", "arms", "legs-skin", "feet"};
        const std::map<std::string, std::int32_t> groups = {
            {"UpperClothes", 0}, {"Coat", 0},      {"Dress", 0},     {"Jumpsuits", 0},
            {"Pants", 1},        {"Skirt", 1},     {"Hat", 2},       {"Hair", 2},
            {"Face", 2},         {"Sunglasses", 2}, {"Scarf", 2},    {"Left-arm", 3},
            {"Right-arm", 3},    {"Glove", 3},     {"Left-leg", 4},  {"Right-leg", 4},
            {"Socks", 4},        {"Left-shoe", 5}, {"Right-shoe", 5}};
        m.mapping.resize(m.source_schema.class_count, kDiscard);
        for (std::size_t i = 0; i < m.source_schema.class_count; ++i) {
            auto it = groups.find(m.source_schema.class_names[i]);
            if (it != groups.end()) {
                m.mapping[i] = it->second;
            }
        }
        m.validate();
        return m;
    }();
    return map;
}

ClassMergeMap load_merge_map(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open merge map: " + path.string());
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("invalid merge map JSON in " + path.string() + ": " + e.what());
    }
    ClassMergeMap m;
    try {
        const auto& s = j.at("source_schema");
        m.source_schema.name = s.at("name").get<std::string>();
        m.source_schema.class_count = s.at("class_count").get<std::size_t>();
        m.source_schema.class_names = s.at("class_names").get<std::vector<std::string>>();
        m.source_schema.background_index = s.at("background_index").get<std::size_t>();
        m.merged_names = j.at("merged_names").get<std::vector<std::string>>();
        m.mapping = j.at("mapping").get<std::vector<std::int32_t>>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed merge map in " + path.string() + ": " + e.what());
    }
    m.validate();
    return m;
}

std::uint8_t merged_discard_label(const ClassMergeMap& merge_map) {
    return static_cast<std::uint8_t>(merge_map.merged_names.size());
}

LabelSchema merged_schema(const ClassMergeMap& merge_map) {
    LabelSchema s;
    s.name = merge_map.source_schema.name + "-merged";
    s.class_names = merge_map.merged_names;
    s.class_names.push_back("DISCARD");
    s.class_count = s.class_names.size();
    s.background_index = s.class_count - 1;
    return s;
}

LabelMap merge_classes(const LabelMap& mask, const ClassMergeMap& merge_map) {
    if (mask.schema != merge_map.source_schema) {
        throw SchemaViolationError("mask schema \"" + mask.schema.name +
                                   "\" does not match merge map schema \"" +
                                   merge_map.source_schema.name + "\"");
    }
    merge_map.validate();
    const std::uint8_t discard = merged_discard_label(merge_map);
    LabelMap out;
    out.width = mask.width;
    out.height = mask.height;
    out.schema = merged_schema(merge_map);
    out.labels.resize(mask.labels.size());
    for (std::size_t i = 0; i < mask.labels.size(); ++i) {
        std::int32_t merged = merge_map.mapping[mask.labels[i]];
        out.labels[i] = merged == kDiscard ? discard : static_cast<std::uint8_t>(merged);
    }
    return out;
}

}  // namespace prid
