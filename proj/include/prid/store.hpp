#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>
#include <vector>

#include "prid/ranking.hpp"
#include "prid/wire.hpp"

namespace prid {

// Append-only log of length-prefixed (u32 LE) FeatureMessages plus an
// in-memory index rebuilt at open. A torn trailing record (partial
// length or payload) is discarded on recovery, so a crash loses at
// most the in-flight message. Entry ids are zero-padded record
// indices, which makes the ranking tie-break stable across restarts.
class GalleryStore {
public:
    // Opens or creates the log, replaying every complete record.
    explicit GalleryStore(const std::filesystem::path& path);

    // Serialized append: writes the record and flushes before indexing.
    std::string append(const FeatureMessage& msg);

    const std::vector<GalleryEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    const std::filesystem::path& path() const { return path_; }

    static std::string entry_id_for(std::size_t index);

    // Reads all complete records of a log without keeping it open.
    static std::vector<FeatureMessage> read_log(const std::filesystem::path& path);

    // Appends records to a log file (creating it if needed).
    static void write_log(const std::filesystem::path& path,
                          const std::vector<FeatureMessage>& messages);

private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::vector<GalleryEntry> entries_;
    std::mutex mutex_;
};

}  // namespace prid
