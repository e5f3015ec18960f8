#include "prid/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "prid/errors.hpp"

namespace prid {

std::string to_string(DistanceKind kind) {
    switch (kind) {
        case DistanceKind::Intersection: return "intersection";
        case DistanceKind::Bhattacharyya: return "bhattacharyya";
        case DistanceKind::ChiSquare: return "chi_square";
        case DistanceKind::L1: return "l1";
    }
    return "?";
}

DistanceKind distance_kind_from_string(const std::string& name) {
    if (name == "intersection") return DistanceKind::Intersection;
    if (name == "bhattacharyya") return DistanceKind::Bhattacharyya;
    if (name == "chi_square") return DistanceKind::ChiSquare;
    if (name == "l1") return DistanceKind::L1;
    throw ConfigError("unknown distance kind: \"" + name + "\"");
}

std::string to_string(ClassWeighting weighting) {
    return weighting == ClassWeighting::Uniform ? "uniform" : "area_weighted";
}

ClassWeighting class_weighting_from_string(const std::string& name) {
    if (name == "uniform") return ClassWeighting::Uniform;
    if (name == "area_weighted") return ClassWeighting::AreaWeighted;
    throw ConfigError("unknown class weighting: \"" + name + "\"");
}

std::string to_string(MissingClassPolicy policy) {
    return policy == MissingClassPolicy::Skip ? "skip" : "penalize";
}

MissingClassPolicy missing_class_policy_from_string(const std::string& name) {
    if (name == "skip") return MissingClassPolicy::Skip;
    if (name == "penalize") return MissingClassPolicy::Penalize;
    throw ConfigError("unknown missing class policy: \"" + name + "\"");
}

double histogram_affinity(const ChannelHistogram& a, const ChannelHistogram& b,
                          DistanceKind kind) {
    if (a.bins.size() != b.bins.size()) {
        throw DataError("histogram bin counts differ: " + std::to_string(a.bins.size()) +
                        " vs " + std::to_string(b.bins.size()));
    }
    double acc = 0.0;
    switch (kind) {
        case DistanceKind::Intersection:
            for (std::size_t i = 0; i < a.bins.size(); ++i) {
                acc += std::min(a.bins[i], b.bins[i]);
            }
            return std::min(acc, 1.0);
        case DistanceKind::Bhattacharyya:
            for (std::size_t i = 0; i < a.bins.size(); ++i) {
                acc += std::sqrt(a.bins[i] * b.bins[i]);
            }
            return std::min(acc, 1.0);
        case DistanceKind::ChiSquare:
            for (std::size_t i = 0; i < a.bins.size(); ++i) {
                const double s = a.bins[i] + b.bins[i];
                if (s > 0.0) {
                    const double d = a.bins[i] - b.bins[i];
                    acc += d * d / s;
                }
            }
            return 1.0 / (1.0 + acc);
        case DistanceKind::L1:
            for (std::size_t i = 0; i < a.bins.size(); ++i) {
                acc += std::abs(a.bins[i] - b.bins[i]);
            }
            return 1.0 / (1.0 + acc);
    }
    return 0.0;
}

double similarity_score(const FeatureVector& f1, const FeatureVector& f2,
                        const SimilarityConfig& config) {
    if (f1.config_digest != f2.config_digest) {
        throw DigestMismatchError("feature vectors carry different config digests");
    }
    if (f1.classes.size() != f2.classes.size()) {
        throw DigestMismatchError("feature vectors carry different class counts");
    }

    double weighted_sum = 0.0;
    double weight_total = 0.0;
    for (std::size_t c = 0; c < f1.classes.size(); ++c) {
        const ClassFeature& a = f1.classes[c];
        const ClassFeature& b = f2.classes[c];
        if (a.present && b.present) {
            const std::size_t channels = std::min(a.histograms.size(), b.histograms.size());
            double aff = 0.0;
            for (std::size_t ch = 0; ch < channels; ++ch) {
                aff += histogram_affinity(a.histograms[ch], b.histograms[ch],
                                          config.distance_kind);
            }
            aff = channels > 0 ? aff / static_cast<double>(channels) : 0.0;
            const double w = config.class_weighting == ClassWeighting::Uniform
                                 ? 1.0
                                 : (a.area_fraction + b.area_fraction) / 2.0;
            weighted_sum += w * aff;
            weight_total += w;
        } else if ((a.present || b.present) &&
                   config.missing_class_policy == MissingClassPolicy::Penalize) {
            // Affinity 0, weighted by the side that has the class.
            const double area = a.present ? a.area_fraction : b.area_fraction;
            weight_total += config.class_weighting == ClassWeighting::Uniform ? 1.0 : area;
        }
    }
    if (weight_total <= 0.0) {
        return 0.0;
    }
    return std::clamp(weighted_sum / weight_total, 0.0, 1.0);
}

}  // namespace prid
