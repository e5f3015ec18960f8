#include "prid/dataset.hpp"

#include <algorithm>

#include "prid/errors.hpp"

namespace prid {

namespace fs = std::filesystem;

static bool is_image_file(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".jpg" || ext == ".jpeg" || ext == ".png";
}

std::vector<DatasetPair> list_pairs(const fs::path& images_dir, const fs::path& masks_dir,
                                    std::vector<std::string>* unmatched) {
    if (!fs::is_directory(images_dir)) {
        throw IoError("not a directory: " + images_dir.string());
    }
    if (!fs::is_directory(masks_dir)) {
        throw IoError("not a directory: " + masks_dir.string());
    }
    std::vector<DatasetPair> pairs;
    for (const auto& entry : fs::directory_iterator(images_dir)) {
        if (!entry.is_regular_file() || !is_image_file(entry.path())) {
            continue;
        }
        std::string stem = entry.path().stem().string();
        fs::path mask = masks_dir / (stem + ".png");
        if (!fs::exists(mask)) {
            if (unmatched) {
                unmatched->push_back(stem);
            }
            continue;
        }
        pairs.push_back({stem, entry.path(), mask});
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const DatasetPair& a, const DatasetPair& b) { return a.stem < b.stem; });
    return pairs;
}

fs::path resolve_images_dir(const fs::path& root) {
    fs::path sub = root / "images";
    return fs::is_directory(sub) ? sub : root;
}

fs::path resolve_masks_dir(const fs::path& root, const fs::path& override_dir) {
    if (!override_dir.empty()) {
        return override_dir;
    }
    return root / "masks";
}

}  // namespace prid
