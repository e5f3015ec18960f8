#include "prid/schema.hpp"

#include <fstream>

#include <json.hpp>

#include "prid/errors.hpp"

namespace prid {

const LabelSchema& lip_schema() {
    static const LabelSchema schema{
        "LIP",
        20,
        {"Background", "Hat",       "Hair",      "Glove",     "Sunglasses",
         "UpperClothes", "Dress",   "Coat",      "Socks",     "Pants",
         "Jumpsuits",  "Scarf",     "Skirt",     "Face",      "Left-arm",
         "Right-arm",  "Left-leg",  "Right-leg", "Left-shoe", "Right-shoe"},
        0};
    return schema;
}

LabelSchema load_schema(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open schema file: " + path.string());
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("invalid schema JSON in " + path.string() + ": " + e.what());
    }

    LabelSchema s;
    try {
        s.name = j.at("name").get<std::string>();
        s.class_count = j.at("class_count").get<std::size_t>();
        s.class_names = j.at("class_names").get<std::vector<std::string>>();
        s.background_index = j.at("background_index").get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed schema in " + path.string() + ": " + e.what());
    }
    if (s.class_names.size() != s.class_count) {
        throw ConfigError("schema " + s.name + ": class_names length != class_count");
    }
    if (s.background_index >= s.class_count) {
        throw ConfigError("schema " + s.name + ": background_index out of range");
    }
    return s;
}

}  // namespace prid
