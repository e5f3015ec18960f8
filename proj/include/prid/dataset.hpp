#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace prid {

// One image/mask pair, matched by identical file stem.
struct DatasetPair {
    std::string stem;
    std::filesystem::path image_path;
    std::filesystem::path mask_path;
};

// Scans `images_dir` for *.jpg/*.jpeg/*.png and pairs each with
// `<masks_dir>/<stem>.png`. Pairs are returned sorted by stem; images
// without a mask are reported in `unmatched` and skipped.
std::vector<DatasetPair> list_pairs(const std::filesystem::path& images_dir,
                                    const std::filesystem::path& masks_dir,
                                    std::vector<std::string>* unmatched = nullptr);

// Resolves the standard layout `<root>/images`, `<root>/masks`. If
// `<root>/images` does not exist, `root` itself is treated as the
// image directory (Market1501-style flat folders).
std::filesystem::path resolve_images_dir(const std::filesystem::path& root);
std::filesystem::path resolve_masks_dir(const std::filesystem::path& root,
                                        const std::filesystem::path& override_dir);

}  // namespace prid
