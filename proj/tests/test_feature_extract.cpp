#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "helpers.hpp"
#include "prid/errors.hpp"
#include "prid/features.hpp"
#include "prid/merge.hpp"

using namespace prid;
using namespace prid_test;

static ExtractionConfig small_config(ColorSpace space, std::size_t bins) {
    ExtractionConfig c;
    c.color_space = space;
    c.bins_per_channel = bins;
    c.min_area_fraction = 0.0;
    return c;
}

TEST_CASE("default merge map groups UpperClothes and Coat into torso") {
    const auto& map = default_merge_map();
    const auto& lip = lip_schema();
    const auto idx_of = [&](const std::string& n) {
        return std::size_t(std::find(lip.class_names.begin(), lip.class_names.end(), n) -
                           lip.class_names.begin());
    };
    CHECK(map.mapping[idx_of("UpperClothes")] == 0);
    CHECK(map.mapping[idx_of("Coat")] == 0);
    CHECK(map.merged_names[0] == "torso");
    CHECK(map.mapping[lip.background_index] == kDiscard);

    LabelMap mask;
    mask.width = 2;
    mask.height = 1;
    mask.schema = lip;
    mask.labels = {std::uint8_t(idx_of("UpperClothes")), std::uint8_t(idx_of("Coat"))};
    const LabelMap merged = merge_classes(mask, map);
    CHECK(merged.labels == std::vector<std::uint8_t>{0, 0});
}

TEST_CASE("merge_classes sends all-background to all-DISCARD") {
    LabelMap mask;
    mask.width = 2;
    mask.height = 2;
    mask.schema = lip_schema();
    mask.labels.assign(4, 0);
    const LabelMap merged = merge_classes(mask, default_merge_map());
    const std::uint8_t discard = merged_discard_label(default_merge_map());
    CHECK(std::all_of(merged.labels.begin(), merged.labels.end(),
                      [&](std::uint8_t l) { return l == discard; }));
}

TEST_CASE("merge_classes rejects schema mismatch") {
    LabelMap mask;
    mask.width = 1;
    mask.height = 1;
    mask.labels = {0};
    mask.schema = lip_schema();
    mask.schema.name = "NotLIP";
    CHECK_THROWS_AS(merge_classes(mask, default_merge_map()), SchemaViolationError);
}

TEST_CASE("identity merge map keeps labels") {
    ClassMergeMap idmap;
    idmap.source_schema = lip_schema();
    for (std::size_t i = 0; i < idmap.source_schema.class_count; ++i) {
        idmap.merged_names.push_back(idmap.source_schema.class_names[i]);
        idmap.mapping.push_back(i == idmap.source_schema.background_index
                                    ? kDiscard
                                    : std::int32_t(i));
    }
    LabelMap mask;
    mask.width = 3;
    mask.height = 1;
    mask.schema = lip_schema();
    mask.labels = {5, 9, 13};
    const LabelMap merged = merge_classes(mask, idmap);
    CHECK(merged.labels == mask.labels);
}

TEST_CASE("rgb_to_hsv known values") {
    CHECK(rgb_to_hsv(255, 0, 0) == std::array<double, 3>{0.0, 1.0, 1.0});
    CHECK(rgb_to_hsv(0, 0, 0) == std::array<double, 3>{0.0, 0.0, 0.0});
    const auto gray = rgb_to_hsv(128, 128, 128);
    CHECK(gray[0] == 0.0);
    CHECK(gray[1] == 0.0);
    CHECK(gray[2] == doctest::Approx(0.502).epsilon(1e-3));
    CHECK(gray[2] == 128.0 / 255.0);
    // green and blue primaries
    CHECK(rgb_to_hsv(0, 255, 0)[0] == 120.0);
    CHECK(rgb_to_hsv(0, 0, 255)[0] == 240.0);
}

TEST_CASE("hue stays in [0,360)") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> byte(0, 255);
    for (int i = 0; i < 2000; ++i) {
        const auto hsv = rgb_to_hsv(byte(rng), byte(rng), byte(rng));
        CHECK(hsv[0] >= 0.0);
        CHECK(hsv[0] < 360.0);
        CHECK(hsv[1] >= 0.0);
        CHECK(hsv[1] <= 1.0);
        CHECK(hsv[2] >= 0.0);
        CHECK(hsv[2] <= 1.0);
    }
}

TEST_CASE("convert_color_space RGB is the identity") {
    PersonImage img{1, 2, {10, 20, 30, 200, 100, 50}};
    const auto out = convert_color_space(img, ColorSpace::RGB);
    CHECK(out[0] == std::array<double, 3>{10, 20, 30});
    CHECK(out[1] == std::array<double, 3>{200, 100, 50});
}

static LabelMap uniform_merged_mask(int w, int h, std::uint8_t label) {
    LabelMap m;
    m.width = w;
    m.height = h;
    m.schema = merged_schema(default_merge_map());
    m.labels.assign(std::size_t(w) * h, label);
    return m;
}

TEST_CASE("single-color torso gives delta histograms") {
    PersonImage img{2, 2, std::vector<std::uint8_t>{255, 0, 0, 255, 0, 0, 255, 0, 0, 255, 0, 0}};
    const LabelMap mask = uniform_merged_mask(2, 2, 0);
    const ExtractionConfig config = small_config(ColorSpace::HSV, 4);
    const FeatureVector fv = extract_features(img, mask, config);
    REQUIRE(fv.classes[0].present);
    CHECK(fv.classes[0].area_fraction == 1.0);
    CHECK(fv.classes[0].histograms[0].bins == std::vector<double>{1, 0, 0, 0});  // hue 0
    CHECK(fv.classes[0].histograms[1].bins == std::vector<double>{0, 0, 0, 1});  // sat 1
    CHECK(fv.classes[0].histograms[2].bins == std::vector<double>{0, 0, 0, 1});  // val 1
    for (std::size_t k = 1; k < fv.classes.size(); ++k) {
        CHECK_FALSE(fv.classes[k].present);
    }
}

TEST_CASE("all-DISCARD mask raises the no-person error") {
    PersonImage img{2, 2, std::vector<std::uint8_t>(12, 255)};
    const LabelMap mask =
        uniform_merged_mask(2, 2, merged_discard_label(default_merge_map()));
    CHECK_THROWS_AS(extract_features(img, mask, small_config(ColorSpace::HSV, 4)),
                    NoForegroundError);
}

TEST_CASE("extract_features matches the per-pixel brute-force oracle") {
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> dim(1, 8);
    std::uniform_int_distribution<int> bins(2, 32);
    for (int i = 0; i < 200; ++i) {
        const int w = dim(rng), h = dim(rng);
        const PersonImage img = random_image(rng, w, h);
        const LabelMap mask = random_merged_mask(rng, w, h, default_merge_map());
        const ExtractionConfig config =
            small_config(i % 2 ? ColorSpace::HSV : ColorSpace::RGB, std::size_t(bins(rng)));
        const bool empty = std::all_of(mask.labels.begin(), mask.labels.end(), [&](auto l) {
            return l == merged_discard_label(config.merge_map);
        });
        if (empty) {
            continue;
        }
        const FeatureVector got = extract_features(img, mask, config);
        const FeatureVector want = oracle_extract(img, mask, config);
        CHECK(got == want);
    }
}

TEST_CASE("histogram normalization within 1e-9") {
    std::mt19937 rng(77);
    for (int i = 0; i < 100; ++i) {
        const PersonImage img = random_image(rng, 6, 6);
        const LabelMap mask = random_merged_mask(rng, 6, 6, default_merge_map());
        try {
            const FeatureVector fv =
                extract_features(img, mask, small_config(ColorSpace::HSV, 8));
            for (const auto& cf : fv.classes) {
                for (const auto& h : cf.histograms) {
                    const double sum =
                        std::accumulate(h.bins.begin(), h.bins.end(), 0.0);
                    if (cf.present) {
                        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
                    } else {
                        CHECK(sum == 0.0);
                    }
                }
            }
        } catch (const NoForegroundError&) {
        }
    }
}

TEST_CASE("pixel shuffle leaves the FeatureVector bit-identical") {
    std::mt19937 rng(31);
    const int w = 6, h = 4;
    const PersonImage img = random_image(rng, w, h);
    LabelMap mask = random_merged_mask(rng, w, h, default_merge_map());
    mask.labels[0] = 0;  // keep foreground
    const ExtractionConfig config = small_config(ColorSpace::HSV, 16);
    const FeatureVector base = extract_features(img, mask, config);

    std::vector<std::size_t> perm(std::size_t(w) * h);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    PersonImage simg = img;
    LabelMap smask = mask;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        for (int c = 0; c < 3; ++c) {
            simg.pixels[i * 3 + c] = img.pixels[perm[i] * 3 + c];
        }
        smask.labels[i] = mask.labels[perm[i]];
    }
    CHECK(extract_features(simg, smask, config) == base);
}

TEST_CASE("changing one class A pixel only touches class A") {
    std::mt19937 rng(57);
    const int w = 4, h = 4;
    const PersonImage img = random_image(rng, w, h);
    LabelMap mask = random_merged_mask(rng, w, h, default_merge_map());
    mask.labels[3] = 0;
    mask.labels[7] = 1;  // both torso and legs exist
    const ExtractionConfig config = small_config(ColorSpace::RGB, 8);
    const FeatureVector base = extract_features(img, mask, config);

    PersonImage mutated = img;
    mutated.pixels[3 * 3 + 0] ^= 0x80;  // flip a torso pixel's red channel
    const FeatureVector changed = extract_features(mutated, mask, config);
    for (std::size_t k = 1; k < base.classes.size(); ++k) {
        CHECK(changed.classes[k] == base.classes[k]);
    }
    CHECK(changed.classes[0].area_fraction == base.classes[0].area_fraction);
}

TEST_CASE("class areas conserve foreground mass exactly") {
    // Rational check on pixel counts rather than float sums.
    std::mt19937 rng(91);
    const int w = 8, h = 8;
    const LabelMap mask = random_merged_mask(rng, w, h, default_merge_map());
    const std::uint8_t discard = merged_discard_label(default_merge_map());
    std::uint64_t foreground = 0;
    std::vector<std::uint64_t> per_class(default_merge_map().merged_names.size(), 0);
    for (auto l : mask.labels) {
        if (l != discard) {
            ++foreground;
            ++per_class[l];
        }
    }
    CHECK(std::accumulate(per_class.begin(), per_class.end(), std::uint64_t(0)) == foreground);
}

TEST_CASE("min_area_fraction suppresses tiny classes") {
    // 1 of 64 pixels in class 1 -> area 1/64 < 0.05 threshold
    PersonImage img{8, 8, std::vector<std::uint8_t>(8 * 8 * 3, 100)};
    LabelMap mask = uniform_merged_mask(8, 8, 0);
    mask.labels[5] = 1;
    ExtractionConfig config = small_config(ColorSpace::HSV, 4);
    config.min_area_fraction = 0.05;
    const FeatureVector fv = extract_features(img, mask, config);
    CHECK(fv.classes[0].present);
    CHECK_FALSE(fv.classes[1].present);
    CHECK(fv.classes[1].area_fraction == 0.0);
}

TEST_CASE("config digest is stable and sensitive") {
    const ExtractionConfig a;
    ExtractionConfig b;
    CHECK(config_digest(a) == config_digest(b));
    b.bins_per_channel = 16;
    CHECK(config_digest(a) != config_digest(b));
    ExtractionConfig c;
    c.color_space = ColorSpace::RGB;
    CHECK(config_digest(a) != config_digest(c));
}

TEST_CASE("feature vector JSON round-trip") {
    std::mt19937 rng(3);
    const FeatureVector fv = random_feature_vector(rng, 0xABCDEF);
    CHECK(feature_vector_from_json(feature_vector_to_json(fv)) == fv);
}
