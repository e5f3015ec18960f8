#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "prid/features.hpp"
#include "prid/market.hpp"
#include "prid/similarity.hpp"

namespace prid {

struct GalleryEntry {
    std::string entry_id;  // unique within a gallery
    IdentityAnnotation annotation;
    FeatureVector features;
};

// Full gallery ordering for one query: descending score, ties broken
// by ascending entry_id.
struct RankedList {
    std::string query_id;
    std::vector<std::pair<std::string, double>> entries;
};

struct EvalReport {
    double rank_1 = 0.0;
    double rank_5 = 0.0;
    double rank_10 = 0.0;
    double mAP = 0.0;
    std::size_t query_count = 0;
    std::size_t skipped_queries = 0;  // queries with no valid positives
};

struct ValidSet {
    std::unordered_set<std::size_t> positives;  // gallery indices
    std::unordered_set<std::size_t> ignored;
};

RankedList rank_gallery(const FeatureVector& query, const std::vector<GalleryEntry>& gallery,
                        const SimilarityConfig& config, const std::string& query_id = "query");

// Market1501 single-query protocol: junk entries (person_id -1) and
// same-id/same-camera entries are ignored; same-id/other-camera
// entries are positives; the rest are valid negatives.
ValidSet market_valid_set(const IdentityAnnotation& query,
                          const std::vector<IdentityAnnotation>& gallery);

// 1 iff a positive appears among the first k after deleting ignored
// entries from the ranking.
int cmc_at_k(const RankedList& ranked, const std::unordered_set<std::string>& positives,
             const std::unordered_set<std::string>& ignored, std::size_t k);

// AP = (1/|positives|) * sum over positive hits at filtered 1-based
// position p_i of (i / p_i). Caller must skip empty positive sets.
double average_precision(const RankedList& ranked,
                         const std::unordered_set<std::string>& positives,
                         const std::unordered_set<std::string>& ignored);

struct QueryRecord {
    IdentityAnnotation annotation;
    FeatureVector features;
};

// Mean CMC and AP over queries with at least one valid positive;
// queries without positives are counted in skipped_queries. Summation
// order is fixed, so results are bit-identical across runs.
EvalReport evaluate(const std::vector<QueryRecord>& queries,
                    const std::vector<GalleryEntry>& gallery, const SimilarityConfig& config);

nlohmann::ordered_json eval_report_to_json(const EvalReport& report);
std::string eval_report_table(const EvalReport& report);

}  // namespace prid
