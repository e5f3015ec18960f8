#include "prid/wire.hpp"

#include <bit>
#include <cstring>

#include "prid/errors.hpp"

namespace prid {

namespace {

constexpr std::uint8_t kMagic[4] = {'P', 'R', 'I', 'D'};

void put_u8(std::vector<std::uint8_t>& out, std::uint8_t v) { out.push_back(v); }

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
}

void put_f32(std::vector<std::uint8_t>& out, float v) {
    put_le(out, std::bit_cast<std::uint32_t>(v));
}

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : data_(bytes) {}

    std::uint8_t u8() { return take(1)[0]; }

    template <typename T>
    T le() {
        auto b = take(sizeof(T));
        T v = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i) {
            v |= static_cast<T>(static_cast<T>(b[i]) << (8 * i));
        }
        return v;
    }

    float f32() { return std::bit_cast<float>(le<std::uint32_t>()); }

    std::span<const std::uint8_t> take(std::size_t n) {
        if (pos_ + n > data_.size()) {
            throw WireError(WireError::Kind::Truncated,
                            "message truncated at byte " + std::to_string(pos_));
        }
        auto out = data_.subspan(pos_, n);
        pos_ += n;
        return out;
    }

    std::size_t remaining() const { return data_.size() - pos_; }

private:
    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_feature_message(const FeatureMessage& msg) {
    const auto& fv = msg.features;
    if (fv.classes.size() > 0xFFFF) {
        throw WireError(WireError::Kind::FieldOverflow, "class count exceeds u16");
    }
    std::vector<std::uint8_t> out;
    out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
    put_u8(out, kWireVersion);
    put_le(out, msg.device_id);
    put_le(out, msg.capture_timestamp);
    put_le(out, static_cast<std::uint32_t>(msg.annotation.person_id));
    put_le(out, msg.annotation.camera_id);
    put_le(out, msg.annotation.sequence_id);
    put_le(out, msg.annotation.frame_index);
    put_le(out, fv.config_digest);
    put_le(out, static_cast<std::uint16_t>(fv.classes.size()));
    for (const auto& cf : fv.classes) {
        if (cf.histograms.size() > 0xFF) {
            throw WireError(WireError::Kind::FieldOverflow, "channel count exceeds u8");
        }
        put_u8(out, cf.present ? 1 : 0);
        put_f32(out, static_cast<float>(cf.area_fraction));
        put_u8(out, static_cast<std::uint8_t>(cf.histograms.size()));
        for (const auto& hist : cf.histograms) {
            if (hist.bins.size() > 0xFFFF) {
                throw WireError(WireError::Kind::FieldOverflow, "bin count exceeds u16");
            }
            put_le(out, static_cast<std::uint16_t>(hist.bins.size()));
            for (double b : hist.bins) {
                put_f32(out, static_cast<float>(b));
            }
        }
    }
    return out;
}

FeatureMessage decode_feature_message(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    auto magic = r.take(4);
    if (std::memcmp(magic.data(), kMagic, 4) != 0) {
        throw WireError(WireError::Kind::BadMagic, "bad magic");
    }
    const std::uint8_t version = r.u8();
    if (version != kWireVersion) {
        throw WireError(WireError::Kind::UnsupportedVersion,
                        "unsupported version " + std::to_string(version));
    }
    FeatureMessage msg;
    msg.device_id = r.le<std::uint32_t>();
    msg.capture_timestamp = r.le<std::uint64_t>();
    msg.annotation.person_id = static_cast<std::int32_t>(r.le<std::uint32_t>());
    msg.annotation.camera_id = r.le<std::uint16_t>();
    msg.annotation.sequence_id = r.le<std::uint16_t>();
    msg.annotation.frame_index = r.le<std::uint32_t>();
    msg.features.config_digest = r.le<std::uint64_t>();
    const std::uint16_t class_count = r.le<std::uint16_t>();
    msg.features.classes.resize(class_count);
    for (auto& cf : msg.features.classes) {
        cf.present = r.u8() != 0;
        cf.area_fraction = r.f32();
        const std::uint8_t channel_count = r.u8();
        cf.histograms.resize(channel_count);
        for (auto& hist : cf.histograms) {
            const std::uint16_t bin_count = r.le<std::uint16_t>();
            hist.bins.resize(bin_count);
            for (auto& b : hist.bins) {
                b = r.f32();
            }
        }
    }
    if (r.remaining() != 0) {
        throw WireError(WireError::Kind::LengthMismatch,
                        std::to_string(r.remaining()) + " trailing bytes");
    }
    return msg;
}

}  // namespace prid
