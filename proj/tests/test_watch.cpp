#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "prid/errors.hpp"
#include "prid/watch.hpp"

using namespace prid;
using namespace prid_test;

namespace {

struct Fixture {
    ExtractionConfig ext;
    SimilarityConfig sim;
    WatchFrame frame;
    FeatureVector frame_features;

    Fixture() {
        ext.min_area_fraction = 0.0;
        std::mt19937 rng(12);
        frame.image = random_image(rng, 8, 8);
        frame.mask = random_merged_mask(rng, 8, 8, ext.merge_map);
        frame.mask.labels[0] = 0;  // guarantee foreground
        frame.device_id = 42;
        frame.capture_timestamp = 1700000000123ULL;
        frame_features = extract_features(frame.image, frame.mask, ext);
    }
};

}  // namespace

TEST_CASE("a frame matching a watchlist entry alerts with score 1") {
    Fixture fx;
    const std::vector<WatchlistEntry> list{{"w0", "target", fx.frame_features}};
    const auto alerts = watch_frame(fx.frame, list, 0.9, fx.ext, fx.sim);
    REQUIRE(alerts.size() == 1);
    CHECK(alerts[0].watch_id == "w0");
    CHECK(alerts[0].label == "target");
    CHECK(alerts[0].score == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(alerts[0].device_id == 42);
    CHECK(alerts[0].capture_timestamp == 1700000000123ULL);
    CHECK(alerts[0].message_digest.size() == 16);
}

TEST_CASE("empty watchlist never alerts") {
    Fixture fx;
    CHECK(watch_frame(fx.frame, {}, 0.0, fx.ext, fx.sim).empty());
}

TEST_CASE("threshold 0 alerts on every entry, best match first") {
    Fixture fx;
    std::mt19937 rng(13);
    std::vector<WatchlistEntry> list;
    const std::uint64_t digest = fx.frame_features.config_digest;
    for (int i = 0; i < 4; ++i) {
        list.push_back(
            {"w" + std::to_string(i), "p",
             random_feature_vector(rng, digest, 6, 3, fx.ext.bins_per_channel)});
    }
    const auto alerts = watch_frame(fx.frame, list, 0.0, fx.ext, fx.sim);
    REQUIRE(alerts.size() == 4);
    for (std::size_t i = 1; i < alerts.size(); ++i) {
        CHECK(alerts[i - 1].score >= alerts[i].score);
    }
}

TEST_CASE("extraction failure skips the frame and the stream continues") {
    Fixture fx;
    WatchFrame bad = fx.frame;
    bad.mask.labels.assign(bad.mask.labels.size(), merged_discard_label(fx.ext.merge_map));
    const std::vector<WatchlistEntry> list{{"w0", "target", fx.frame_features}};
    std::size_t alerts = 0, errors = 0;
    watch(
        list, {bad, fx.frame}, 0.9, fx.ext, fx.sim, [&](const MatchAlert&) { ++alerts; },
        [&](const std::string&) { ++errors; });
    CHECK(alerts == 1);
    CHECK(errors == 1);
}

TEST_CASE("alerts for a frame do not depend on other frames") {
    Fixture fx;
    const std::vector<WatchlistEntry> list{{"w0", "target", fx.frame_features}};
    std::vector<MatchAlert> alone, paired;
    watch(list, {fx.frame}, 0.5, fx.ext, fx.sim,
          [&](const MatchAlert& a) { alone.push_back(a); });
    std::mt19937 rng(14);
    WatchFrame other = fx.frame;
    other.image = random_image(rng, 8, 8);
    watch(list, {other, fx.frame}, 0.5, fx.ext, fx.sim,
          [&](const MatchAlert& a) { paired.push_back(a); });
    REQUIRE(!alone.empty());
    const MatchAlert& last = paired.back();
    CHECK(last.score == alone[0].score);
    CHECK(last.message_digest == alone[0].message_digest);
}

TEST_CASE("invalid threshold is rejected") {
    Fixture fx;
    CHECK_THROWS_AS(watch_frame(fx.frame, {}, 1.5, fx.ext, fx.sim), ConfigError);
}

TEST_CASE("alert JSON carries exactly the MatchAlert fields") {
    MatchAlert a{"w1", "lost person", 0.97, 3, 123456, "00ff00ff00ff00ff"};
    const auto j = alert_to_json(a);
    CHECK(j.size() == 6);
    CHECK(j["watch_id"] == "w1");
    CHECK(j["score"] == 0.97);
    CHECK(j["message_digest"] == "00ff00ff00ff00ff");
}
