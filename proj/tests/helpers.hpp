#pragma once

// Test-only oracles and generators. Everything here recomputes results
// through an independent path (naive loops, rational counts) so it can
// check the library without sharing its accumulation code.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "prid/color.hpp"
#include "prid/features.hpp"
#include "prid/image.hpp"
#include "prid/label_map.hpp"
#include "prid/merge.hpp"
#include "prid/ranking.hpp"
#include "prid/similarity.hpp"
#include "prid/wire.hpp"

namespace prid_test {

using namespace prid;

// ---------------------------------------------------------------------------
// Brute-force feature extraction: one pass per (class, channel), binning
// each pixel on its own and normalizing from integer counts.
inline FeatureVector oracle_extract(const PersonImage& image, const LabelMap& mask,
                                    const ExtractionConfig& config) {
    const std::size_t class_count = config.merge_map.merged_names.size();
    const std::uint8_t discard = merged_discard_label(config.merge_map);
    const std::size_t bins = config.bins_per_channel;
    const auto ranges = channel_ranges(config.color_space);

    std::uint64_t foreground = 0;
    for (std::uint8_t label : mask.labels) {
        if (label != discard) {
            ++foreground;
        }
    }

    FeatureVector fv;
    fv.config_digest = config_digest(config);
    fv.classes.resize(class_count);
    for (std::size_t k = 0; k < class_count; ++k) {
        ClassFeature& cf = fv.classes[k];
        cf.histograms.assign(3, ChannelHistogram{std::vector<double>(bins, 0.0)});
        std::uint64_t pixels = 0;
        std::vector<std::array<std::uint64_t, 3>> counts(bins, {0, 0, 0});
        for (std::size_t i = 0; i < mask.labels.size(); ++i) {
            if (mask.labels[i] != k) {
                continue;
            }
            ++pixels;
            const std::uint8_t r = image.pixels[i * 3], g = image.pixels[i * 3 + 1],
                               b = image.pixels[i * 3 + 2];
            std::array<double, 3> v;
            if (config.color_space == ColorSpace::RGB) {
                v = {double(r), double(g), double(b)};
            } else {
                v = rgb_to_hsv(r, g, b);
            }
            for (std::size_t c = 0; c < 3; ++c) {
                auto bin = static_cast<std::size_t>(v[c] / ranges[c] * double(bins));
                if (bin >= bins) {
                    bin = bins - 1;
                }
                counts[bin][c]++;
            }
        }
        const double area =
            foreground > 0 ? double(pixels) / double(foreground) : 0.0;
        if (pixels == 0 || area < config.min_area_fraction) {
            continue;
        }
        cf.present = true;
        cf.area_fraction = area;
        for (std::size_t c = 0; c < 3; ++c) {
            for (std::size_t bi = 0; bi < bins; ++bi) {
                cf.histograms[c].bins[bi] = double(counts[bi][c]) / double(pixels);
            }
        }
    }
    return fv;
}

// ---------------------------------------------------------------------------
// Naive reference evaluator: per-query filtering, stable sort, manual
// CMC scan and AP summation.
struct OracleReport {
    double rank_1 = 0, rank_5 = 0, rank_10 = 0, mAP = 0;
    std::size_t query_count = 0, skipped = 0;
};

inline OracleReport oracle_evaluate(const std::vector<QueryRecord>& queries,
                                    const std::vector<GalleryEntry>& gallery,
                                    const SimilarityConfig& config) {
    OracleReport rep;
    double s1 = 0, s5 = 0, s10 = 0, sap = 0;
    for (const auto& q : queries) {
        bool has_positive = false;
        for (const auto& g : gallery) {
            if (g.annotation.person_id == q.annotation.person_id &&
                g.annotation.person_id != -1 &&
                g.annotation.camera_id != q.annotation.camera_id) {
                has_positive = true;
            }
        }
        if (!has_positive) {
            ++rep.skipped;
            continue;
        }
        struct Scored {
            std::string id;
            double score;
            bool positive;
            bool ignored;
        };
        std::vector<Scored> scored;
        std::size_t total_positives = 0;
        for (const auto& g : gallery) {
            const bool junk = g.annotation.person_id == -1;
            const bool same_id = g.annotation.person_id == q.annotation.person_id;
            const bool same_cam = g.annotation.camera_id == q.annotation.camera_id;
            Scored s;
            s.id = g.entry_id;
            s.score = similarity_score(q.features, g.features, config);
            s.ignored = junk || (same_id && same_cam);
            s.positive = !junk && same_id && !same_cam;
            if (s.positive) {
                ++total_positives;
            }
            scored.push_back(std::move(s));
        }
        std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
            if (a.score != b.score) {
                return a.score > b.score;
            }
            return a.id < b.id;
        });
        std::size_t pos = 0, hits = 0, first_hit_pos = 0;
        double ap = 0;
        for (const auto& s : scored) {
            if (s.ignored) {
                continue;
            }
            ++pos;
            if (s.positive) {
                ++hits;
                ap += double(hits) / double(pos);
                if (first_hit_pos == 0) {
                    first_hit_pos = pos;
                }
            }
        }
        s1 += first_hit_pos >= 1 && first_hit_pos <= 1 ? 1 : 0;
        s5 += first_hit_pos >= 1 && first_hit_pos <= 5 ? 1 : 0;
        s10 += first_hit_pos >= 1 && first_hit_pos <= 10 ? 1 : 0;
        sap += ap / double(total_positives);
        ++rep.query_count;
    }
    if (rep.query_count > 0) {
        const double n = double(rep.query_count);
        rep.rank_1 = s1 / n;
        rep.rank_5 = s5 / n;
        rep.rank_10 = s10 / n;
        rep.mAP = sap / n;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Generators.

inline PersonImage random_image(std::mt19937& rng, int w, int h) {
    PersonImage img;
    img.width = w;
    img.height = h;
    img.pixels.resize(std::size_t(w) * h * 3);
    std::uniform_int_distribution<int> byte(0, 255);
    for (auto& p : img.pixels) {
        p = std::uint8_t(byte(rng));
    }
    return img;
}

// Random mask in the merged schema of `map`, biased to leave some
// foreground but allowed to hit any class.
inline LabelMap random_merged_mask(std::mt19937& rng, int w, int h, const ClassMergeMap& map) {
    LabelMap m;
    m.width = w;
    m.height = h;
    m.schema = merged_schema(map);
    m.labels.resize(std::size_t(w) * h);
    std::uniform_int_distribution<int> label(0, int(map.merged_names.size()));  // incl. discard
    for (auto& l : m.labels) {
        l = std::uint8_t(label(rng));
    }
    return m;
}

// Random histogram over dyadic rationals k/4096: every bin value is
// f32-exact and the bins sum to exactly 1.0 in double arithmetic.
inline std::vector<double> random_dyadic_histogram(std::mt19937& rng, std::size_t bins) {
    constexpr int kUnits = 4096;
    std::uniform_int_distribution<int> cut(0, kUnits);
    std::vector<int> cuts{0, kUnits};
    for (std::size_t i = 1; i < bins; ++i) {
        cuts.push_back(cut(rng));
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> out(bins);
    for (std::size_t i = 0; i < bins; ++i) {
        out[i] = double(cuts[i + 1] - cuts[i]) / kUnits;
    }
    return out;
}

// Valid FeatureVector whose doubles are all f32-exact, so wire
// round-trips are identities, and whose histograms sum to exactly 1.
inline FeatureVector random_feature_vector(std::mt19937& rng, std::uint64_t digest,
                                           std::size_t class_count = 6,
                                           std::size_t channels = 3, std::size_t bins = 8) {
    std::uniform_real_distribution<float> unit(0.0f, 1.0f);
    std::uniform_int_distribution<int> coin(0, 1);
    FeatureVector fv;
    fv.config_digest = digest;
    fv.classes.resize(class_count);
    bool any_present = false;
    for (auto& cf : fv.classes) {
        cf.histograms.assign(channels, ChannelHistogram{std::vector<double>(bins, 0.0)});
        cf.present = coin(rng) == 1;
        if (!cf.present) {
            continue;
        }
        any_present = true;
        cf.area_fraction = double(unit(rng));
        for (auto& h : cf.histograms) {
            h.bins = random_dyadic_histogram(rng, bins);
        }
    }
    if (!any_present) {
        fv.classes[0].present = true;
        fv.classes[0].area_fraction = 1.0;
        for (auto& h : fv.classes[0].histograms) {
            h.bins[0] = 1.0;
        }
    }
    return fv;
}

inline IdentityAnnotation random_annotation(std::mt19937& rng, int max_id, int cameras) {
    std::uniform_int_distribution<int> id(-1, max_id);
    std::uniform_int_distribution<int> cam(1, cameras);
    IdentityAnnotation ann;
    ann.person_id = id(rng);
    ann.camera_id = std::uint16_t(cam(rng));
    ann.sequence_id = 1;
    ann.frame_index = std::uniform_int_distribution<int>(0, 99999)(rng);
    return ann;
}

// ---------------------------------------------------------------------------
// HSV -> RGB used by the synthetic identity dataset.
inline std::array<std::uint8_t, 3> hsv_to_rgb(double h, double s, double v) {
    h = std::fmod(std::fmod(h, 360.0) + 360.0, 360.0);
    const double c = v * s;
    const double x = c * (1.0 - std::fabs(std::fmod(h / 60.0, 2.0) - 1.0));
    const double m = v - c;
    double r = 0, g = 0, b = 0;
    if (h < 60) {
        r = c; g = x;
    } else if (h < 120) {
        r = x; g = c;
    } else if (h < 180) {
        g = c; b = x;
    } else if (h < 240) {
        g = x; b = c;
    } else if (h < 300) {
        r = x; b = c;
    } else {
        r = c; b = x;
    }
    auto to_byte = [m](double u) {
        return std::uint8_t(std::lround(std::clamp((u + m) * 255.0, 0.0, 255.0)));
    };
    return {to_byte(r), to_byte(g), to_byte(b)};
}

// Synthetic separable mini-dataset: per-identity torso/legs hue combo,
// bounded per-pixel hue jitter, per-camera brightness shift.
struct SyntheticSample {
    PersonImage image;
    LabelMap merged_mask;  // merged schema
    LabelMap lip_mask;     // same geometry in the LIP source schema
    IdentityAnnotation annotation;
    std::string stem;      // market-style filename stem
};

inline std::vector<SyntheticSample> synthetic_dataset(std::mt19937& rng, int identities,
                                                      int cameras,
                                                      const ClassMergeMap& map) {
    const int w = 24, h = 48;
    const std::uint8_t discard = merged_discard_label(map);
    std::uniform_real_distribution<double> jitter(-15.0, 15.0);

    std::vector<SyntheticSample> out;
    for (int id = 0; id < identities; ++id) {
        const double torso_hue = (id % 6) * 60.0;
        const double legs_hue = ((id / 6) % 5) * 72.0 + 36.0;
        for (int cam = 1; cam <= cameras; ++cam) {
            const double value = cam == 1 ? 0.92 : 0.72;  // brightness shift
            SyntheticSample s;
            s.image.width = w;
            s.image.height = h;
            s.image.pixels.resize(std::size_t(w) * h * 3);
            s.merged_mask.width = w;
            s.merged_mask.height = h;
            s.merged_mask.schema = merged_schema(map);
            s.merged_mask.labels.assign(std::size_t(w) * h, discard);
            s.lip_mask.width = w;
            s.lip_mask.height = h;
            s.lip_mask.schema = lip_schema();
            s.lip_mask.labels.assign(std::size_t(w) * h, 0);  // background
            // merged class -> a representative LIP class
            const std::uint8_t lip_for_merged[6] = {5 /*UpperClothes*/, 9 /*Pants*/,
                                                    13 /*Face*/,        14 /*Left-arm*/,
                                                    16 /*Left-leg*/,    18 /*Left-shoe*/};
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    // 2-pixel background margin left/right
                    const std::size_t i = std::size_t(y) * w + x;
                    if (x < 2 || x >= w - 2) {
                        continue;
                    }
                    std::uint8_t label;
                    double hue, sat = 0.9;
                    if (y < 10) {
                        label = 2;  // head: fixed skin-ish hue
                        hue = 30.0;
                        sat = 0.4;
                    } else if (y < 28) {
                        label = 0;  // torso
                        hue = torso_hue + jitter(rng);
                    } else if (y < 42) {
                        label = 1;  // legs-clothes
                        hue = legs_hue + jitter(rng);
                    } else {
                        label = 5;  // feet
                        hue = 0.0;
                        sat = 0.05;
                    }
                    s.merged_mask.labels[i] = label;
                    s.lip_mask.labels[i] = lip_for_merged[label];
                    const auto rgb = hsv_to_rgb(hue, sat, value);
                    s.image.pixels[i * 3] = rgb[0];
                    s.image.pixels[i * 3 + 1] = rgb[1];
                    s.image.pixels[i * 3 + 2] = rgb[2];
                }
            }
            s.annotation.person_id = id + 1;
            s.annotation.camera_id = std::uint16_t(cam);
            s.annotation.sequence_id = 1;
            s.annotation.frame_index = std::uint32_t(id * 10 + cam);
            char stem[64];
            std::snprintf(stem, sizeof(stem), "%04d_c%ds1_%06u_00", id + 1, cam,
                          s.annotation.frame_index);
            s.stem = stem;
            out.push_back(std::move(s));
        }
    }
    return out;
}

}  // namespace prid_test
