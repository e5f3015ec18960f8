#include "prid/run_config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "prid/errors.hpp"
#include "prid/merge.hpp"

namespace prid {

using nlohmann::json;

static void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                                const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError("unknown key \"" + key + "\" in " + where);
        }
    }
}

RunConfig resolve_run_config(const std::filesystem::path& config_file,
                             const ConfigOverrides& overrides) {
    RunConfig rc;  // defaults

    if (!config_file.empty()) {
        std::ifstream in(config_file);
        if (!in) {
            throw IoError("cannot open config file: " + config_file.string());
        }
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw ConfigError("invalid config JSON: " + std::string(e.what()));
        }
        reject_unknown_keys(j, {"extraction", "similarity", "paths"}, "config");
        try {
            if (j.contains("extraction")) {
                const auto& e = j["extraction"];
                reject_unknown_keys(
                    e, {"color_space", "bins_per_channel", "min_area_fraction", "merge_map"},
                    "config.extraction");
                if (e.contains("color_space")) {
                    rc.extraction.color_space =
                        color_space_from_string(e["color_space"].get<std::string>());
                }
                if (e.contains("bins_per_channel")) {
                    rc.extraction.bins_per_channel = e["bins_per_channel"].get<std::size_t>();
                }
                if (e.contains("min_area_fraction")) {
                    rc.extraction.min_area_fraction = e["min_area_fraction"].get<double>();
                }
                if (e.contains("merge_map")) {
                    rc.extraction.merge_map = load_merge_map(e["merge_map"].get<std::string>());
                }
            }
            if (j.contains("similarity")) {
                const auto& s = j["similarity"];
                reject_unknown_keys(s, {"distance_kind", "class_weighting", "missing_class_policy"},
                                    "config.similarity");
                if (s.contains("distance_kind")) {
                    rc.similarity.distance_kind =
                        distance_kind_from_string(s["distance_kind"].get<std::string>());
                }
                if (s.contains("class_weighting")) {
                    rc.similarity.class_weighting =
                        class_weighting_from_string(s["class_weighting"].get<std::string>());
                }
                if (s.contains("missing_class_policy")) {
                    rc.similarity.missing_class_policy = missing_class_policy_from_string(
                        s["missing_class_policy"].get<std::string>());
                }
            }
            if (j.contains("paths")) {
                const auto& p = j["paths"];
                reject_unknown_keys(p, {"dataset", "masks", "out"}, "config.paths");
                if (p.contains("dataset")) {
                    rc.dataset_root = p["dataset"].get<std::string>();
                }
                if (p.contains("masks")) {
                    rc.mask_root = p["masks"].get<std::string>();
                }
                if (p.contains("out")) {
                    rc.out_path = p["out"].get<std::string>();
                }
            }
        } catch (const json::exception& e) {
            throw ConfigError("malformed config value: " + std::string(e.what()));
        }
    }

    if (overrides.color_space) {
        rc.extraction.color_space = color_space_from_string(*overrides.color_space);
    }
    if (overrides.bins) {
        rc.extraction.bins_per_channel = *overrides.bins;
    }
    if (overrides.min_area_fraction) {
        rc.extraction.min_area_fraction = *overrides.min_area_fraction;
    }
    if (overrides.distance) {
        rc.similarity.distance_kind = distance_kind_from_string(*overrides.distance);
    }
    if (overrides.weighting) {
        rc.similarity.class_weighting = class_weighting_from_string(*overrides.weighting);
    }
    if (overrides.missing_class) {
        rc.similarity.missing_class_policy =
            missing_class_policy_from_string(*overrides.missing_class);
    }
    if (overrides.dataset) {
        rc.dataset_root = *overrides.dataset;
    }
    if (overrides.masks) {
        rc.mask_root = *overrides.masks;
    }
    if (overrides.out) {
        rc.out_path = *overrides.out;
    }

    rc.extraction.validate();
    return rc;
}

}  // namespace prid
