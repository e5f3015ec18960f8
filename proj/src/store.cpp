#include "prid/store.hpp"

#include <cstdio>

#include "prid/errors.hpp"

namespace prid {

namespace fs = std::filesystem;

static std::vector<FeatureMessage> scan_log(const fs::path& path) {
    std::vector<FeatureMessage> records;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return records;
    }
    while (true) {
        std::uint8_t len_bytes[4];
        in.read(reinterpret_cast<char*>(len_bytes), 4);
        if (in.gcount() != 4) {
            break;  // torn or absent length prefix
        }
        const std::uint32_t len = static_cast<std::uint32_t>(len_bytes[0]) |
                                  (static_cast<std::uint32_t>(len_bytes[1]) << 8) |
                                  (static_cast<std::uint32_t>(len_bytes[2]) << 16) |
                                  (static_cast<std::uint32_t>(len_bytes[3]) << 24);
        std::vector<std::uint8_t> payload(len);
        in.read(reinterpret_cast<char*>(payload.data()), len);
        if (in.gcount() != static_cast<std::streamsize>(len)) {
            break;  // torn payload
        }
        records.push_back(decode_feature_message(payload));
    }
    return records;
}

static void append_record(std::ofstream& out, const std::vector<std::uint8_t>& bytes) {
    const auto len = static_cast<std::uint32_t>(bytes.size());
    const std::uint8_t len_bytes[4] = {
        static_cast<std::uint8_t>(len), static_cast<std::uint8_t>(len >> 8),
        static_cast<std::uint8_t>(len >> 16), static_cast<std::uint8_t>(len >> 24)};
    out.write(reinterpret_cast<const char*>(len_bytes), 4);
    out.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
    out.flush();
}

std::string GalleryStore::entry_id_for(std::size_t index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "g%08zu", index);
    return buf;
}

GalleryStore::GalleryStore(const fs::path& path) : path_(path) {
    const auto records = scan_log(path);
    entries_.reserve(records.size());
    for (const auto& msg : records) {
        entries_.push_back({entry_id_for(entries_.size()), msg.annotation, msg.features});
    }
    // Truncate any torn tail by rewriting complete records if the file
    // length disagrees with what was replayed.
    std::uint64_t replayed_bytes = 0;
    for (const auto& msg : records) {
        replayed_bytes += 4 + encode_feature_message(msg).size();
    }
    if (fs::exists(path) && fs::file_size(path) != replayed_bytes) {
        fs::resize_file(path, replayed_bytes);
    }
    out_.open(path, std::ios::binary | std::ios::app);
    if (!out_) {
        throw IoError("cannot open gallery log for append: " + path.string());
    }
}

std::string GalleryStore::append(const FeatureMessage& msg) {
    std::lock_guard lock(mutex_);
    append_record(out_, encode_feature_message(msg));
    if (!out_) {
        throw IoError("write failure on gallery log: " + path_.string());
    }
    std::string id = entry_id_for(entries_.size());
    entries_.push_back({id, msg.annotation, msg.features});
    return id;
}

std::vector<FeatureMessage> GalleryStore::read_log(const fs::path& path) {
    if (!fs::exists(path)) {
        throw IoError("gallery log not found: " + path.string());
    }
    return scan_log(path);
}

void GalleryStore::write_log(const fs::path& path, const std::vector<FeatureMessage>& messages) {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) {
        throw IoError("cannot open gallery log for append: " + path.string());
    }
    for (const auto& msg : messages) {
        append_record(out, encode_feature_message(msg));
    }
    if (!out) {
        throw IoError("write failure on gallery log: " + path.string());
    }
}

}  // namespace prid
