#pragma once

#include <string>

#include "prid/features.hpp"

namespace prid {

enum class DistanceKind { Intersection, Bhattacharyya, ChiSquare, L1 };
enum class ClassWeighting { Uniform, AreaWeighted };
enum class MissingClassPolicy { Skip, Penalize };

std::string to_string(DistanceKind kind);
DistanceKind distance_kind_from_string(const std::string& name);
std::string to_string(ClassWeighting weighting);
ClassWeighting class_weighting_from_string(const std::string& name);
std::string to_string(MissingClassPolicy policy);
MissingClassPolicy missing_class_policy_from_string(const std::string& name);

struct SimilarityConfig {
    DistanceKind distance_kind = DistanceKind::Intersection;
    ClassWeighting class_weighting = ClassWeighting::AreaWeighted;
    MissingClassPolicy missing_class_policy = MissingClassPolicy::Skip;

    bool operator==(const SimilarityConfig&) const = default;
};

// Affinity in [0,1] between two equal-length histograms; 1 for
// identical normalized inputs. Intersection and Bhattacharyya are
// native affinities; chi-square and L1 distances map through 1/(1+d).
double histogram_affinity(const ChannelHistogram& a, const ChannelHistogram& b,
                          DistanceKind kind);

// Aggregated score in [0,1]: per shared present class the mean channel
// affinity, combined across classes per the configured weighting.
// area_weighted uses the mean of the two area fractions so the score
// is symmetric. Throws DigestMismatchError when the vectors were
// extracted under different configs.
double similarity_score(const FeatureVector& f1, const FeatureVector& f2,
                        const SimilarityConfig& config);

}  // namespace prid
