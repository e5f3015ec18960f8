#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "prid/features.hpp"
#include "prid/market.hpp"

namespace prid {

// Bit-exact wire envelope for one FeatureVector plus capture metadata.
// Layout (little-endian):
//   magic "PRID" | version u8=1 | device_id u32 | capture_timestamp u64
//   person_id i32 | camera_id u16 | sequence_id u16 | frame_index u32
//   config_digest u64 | class_count u16
//   per class: present u8 | area_fraction f32 | channel_count u8
//     per channel: bin_count u16 | bins f32 * bin_count
struct FeatureMessage {
    std::uint32_t device_id = 0;
    std::uint64_t capture_timestamp = 0;  // ms since Unix epoch
    IdentityAnnotation annotation;
    FeatureVector features;

    bool operator==(const FeatureMessage&) const = default;
};

inline constexpr std::uint8_t kWireVersion = 1;

// Histogram weights and area fractions are carried as f32; encoding a
// vector whose doubles are not f32-exact quantizes them.
std::vector<std::uint8_t> encode_feature_message(const FeatureMessage& msg);

// Strict decode: magic, version, and exact length are all enforced; a
// single trailing byte is a LengthMismatch. Each fault is a distinct
// WireError kind.
FeatureMessage decode_feature_message(std::span<const std::uint8_t> bytes);

}  // namespace prid
