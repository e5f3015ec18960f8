#include "prid/ranking.hpp"

#include <algorithm>
#include <cstdio>

#include "prid/errors.hpp"

namespace prid {

RankedList rank_gallery(const FeatureVector& query, const std::vector<GalleryEntry>& gallery,
                        const SimilarityConfig& config, const std::string& query_id) {
    RankedList out;
    out.query_id = query_id;
    out.entries.reserve(gallery.size());
    for (const auto& entry : gallery) {
        out.entries.emplace_back(entry.entry_id, similarity_score(query, entry.features, config));
    }
    std::sort(out.entries.begin(), out.entries.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) {
            return a.second > b.second;
        }
        return a.first < b.first;
    });
    return out;
}

ValidSet market_valid_set(const IdentityAnnotation& query,
                          const std::vector<IdentityAnnotation>& gallery) {
    ValidSet vs;
    for (std::size_t i = 0; i < gallery.size(); ++i) {
        const auto& g = gallery[i];
        if (g.person_id == -1) {
            vs.ignored.insert(i);
        } else if (g.person_id == query.person_id) {
            if (g.camera_id == query.camera_id) {
                vs.ignored.insert(i);
            } else {
                vs.positives.insert(i);
            }
        }
    }
    return vs;
}

int cmc_at_k(const RankedList& ranked, const std::unordered_set<std::string>& positives,
             const std::unordered_set<std::string>& ignored, std::size_t k) {
    std::size_t seen = 0;
    for (const auto& [id, score] : ranked.entries) {
        if (ignored.contains(id)) {
            continue;
        }
        ++seen;
        if (seen > k) {
            break;
        }
        if (positives.contains(id)) {
            return 1;
        }
    }
    return 0;
}

double average_precision(const RankedList& ranked,
                         const std::unordered_set<std::string>& positives,
                         const std::unordered_set<std::string>& ignored) {
    std::size_t position = 0;  // 1-based position in the filtered list
    std::size_t hits = 0;
    double ap = 0.0;
    for (const auto& [id, score] : ranked.entries) {
        if (ignored.contains(id)) {
            continue;
        }
        ++position;
        if (positives.contains(id)) {
            ++hits;
            ap += static_cast<double>(hits) / static_cast<double>(position);
        }
    }
    if (positives.empty()) {
        throw DataError("average_precision requires a non-empty positive set");
    }
    return ap / static_cast<double>(positives.size());
}

EvalReport evaluate(const std::vector<QueryRecord>& queries,
                    const std::vector<GalleryEntry>& gallery, const SimilarityConfig& config) {
    if (queries.empty()) {
        throw DataError("empty query list");
    }
    std::vector<IdentityAnnotation> gallery_ann;
    gallery_ann.reserve(gallery.size());
    for (const auto& g : gallery) {
        gallery_ann.push_back(g.annotation);
    }

    EvalReport report;
    double sum1 = 0.0, sum5 = 0.0, sum10 = 0.0, sum_ap = 0.0;
    for (const auto& q : queries) {
        const ValidSet vs = market_valid_set(q.annotation, gallery_ann);
        if (vs.positives.empty()) {
            ++report.skipped_queries;
            continue;
        }
        std::unordered_set<std::string> pos_ids, ign_ids;
        for (std::size_t i : vs.positives) {
            pos_ids.insert(gallery[i].entry_id);
        }
        for (std::size_t i : vs.ignored) {
            ign_ids.insert(gallery[i].entry_id);
        }
        const RankedList ranked = rank_gallery(q.features, gallery, config);
        sum1 += cmc_at_k(ranked, pos_ids, ign_ids, 1);
        sum5 += cmc_at_k(ranked, pos_ids, ign_ids, 5);
        sum10 += cmc_at_k(ranked, pos_ids, ign_ids, 10);
        sum_ap += average_precision(ranked, pos_ids, ign_ids);
        ++report.query_count;
    }
    if (report.query_count > 0) {
        const auto n = static_cast<double>(report.query_count);
        report.rank_1 = sum1 / n;
        report.rank_5 = sum5 / n;
        report.rank_10 = sum10 / n;
        report.mAP = sum_ap / n;
    }
    return report;
}

nlohmann::ordered_json eval_report_to_json(const EvalReport& report) {
    nlohmann::ordered_json j;
    j["rank_1"] = report.rank_1;
    j["rank_5"] = report.rank_5;
    j["rank_10"] = report.rank_10;
    j["mAP"] = report.mAP;
    j["query_count"] = report.query_count;
    j["skipped_queries"] = report.skipped_queries;
    return j;
}

std::string eval_report_table(const EvalReport& report) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "metric     value\n"
                  "---------  ------\n"
                  "rank-1     %6.4f\n"
                  "rank-5     %6.4f\n"
                  "rank-10    %6.4f\n"
                  "mAP        %6.4f\n"
                  "queries    %zu\n"
                  "skipped    %zu\n",
                  report.rank_1, report.rank_5, report.rank_10, report.mAP, report.query_count,
                  report.skipped_queries);
    return buf;
}

}  // namespace prid
