#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "prid/dataset.hpp"
#include "prid/errors.hpp"
#include "prid/net.hpp"
#include "prid/pipeline.hpp"
#include "prid/ranking.hpp"
#include "prid/run_config.hpp"
#include "prid/server.hpp"
#include "prid/store.hpp"
#include "prid/watch.hpp"

using nlohmann::json;
using namespace prid;

namespace {

struct CommonOpts {
    std::string config_file;
    ConfigOverrides overrides;
};

void add_common_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_file, "JSON config file");
    auto opt_str = [cmd](const char* flag, std::optional<std::string>& dst, const char* help) {
        cmd->add_option_function<std::string>(
            flag, [&dst](const std::string& v) { dst = v; }, help);
    };
    opt_str("--color-space", opts.overrides.color_space, "RGB or HSV");
    opt_str("--distance", opts.overrides.distance,
            "intersection | bhattacharyya | chi_square | l1");
    opt_str("--weighting", opts.overrides.weighting, "uniform | area_weighted");
    opt_str("--missing-class", opts.overrides.missing_class, "skip | penalize");
    opt_str("--dataset", opts.overrides.dataset, "dataset root (images/ + masks/)");
    opt_str("--masks", opts.overrides.masks, "mask directory override");
    opt_str("--out", opts.overrides.out, "output path");
    cmd->add_option_function<std::size_t>(
        "--bins", [&opts](std::size_t v) { opts.overrides.bins = v; }, "bins per channel");
    cmd->add_option_function<double>(
        "--min-area",
        [&opts](double v) { opts.overrides.min_area_fraction = v; },
        "minimum class area fraction");
}

RunConfig resolve(const CommonOpts& opts) {
    return resolve_run_config(opts.config_file, opts.overrides);
}

std::vector<DatasetPair> scan_dataset(const RunConfig& rc,
                                      std::vector<std::string>* unmatched) {
    if (rc.dataset_root.empty()) {
        throw ConfigError("--dataset is required");
    }
    const auto images = resolve_images_dir(rc.dataset_root);
    const auto masks = resolve_masks_dir(rc.dataset_root, rc.mask_root);
    return list_pairs(images, masks, unmatched);
}

std::vector<GalleryEntry> load_gallery(const std::filesystem::path& path) {
    std::vector<GalleryEntry> entries;
    for (const auto& msg : GalleryStore::read_log(path)) {
        entries.push_back({GalleryStore::entry_id_for(entries.size()), msg.annotation,
                           msg.features});
    }
    return entries;
}

int cmd_extract(const CommonOpts& opts) {
    const RunConfig rc = resolve(opts);
    if (rc.out_path.empty()) {
        throw ConfigError("--out is required");
    }
    std::vector<std::string> unmatched;
    const auto pairs = scan_dataset(rc, &unmatched);
    for (const auto& stem : unmatched) {
        std::cerr << "warning: no mask for " << stem << "\n";
    }
    if (pairs.empty()) {
        throw DataError("no image/mask pairs found under " + rc.dataset_root.string());
    }
    std::vector<FeatureMessage> messages;
    const ExtractStats stats = extract_directory(
        pairs, rc.extraction, 0, messages,
        [](const std::string& e) { std::cerr << "warning: " << e << "\n"; });
    if (stats.extracted == 0) {
        throw DataError("extraction failed for every pair");
    }
    GalleryStore::write_log(rc.out_path, messages);
    std::cout << "extracted " << stats.extracted << " feature vectors (" << stats.failed
              << " failures) -> " << rc.out_path.string() << "\n";
    return 0;
}

int cmd_rank(const CommonOpts& opts, const std::string& query_path,
             const std::string& gallery_path, const std::string& server_endpoint,
             std::size_t top_k, bool as_json) {
    const RunConfig rc = resolve(opts);
    const auto queries = GalleryStore::read_log(query_path);
    if (queries.empty()) {
        throw DataError("query archive is empty: " + query_path);
    }
    json out = json::array();
    if (!server_endpoint.empty()) {
        auto [host, port] = parse_endpoint(server_endpoint);
        Socket sock = Socket::connect_to(host, port);
        for (std::size_t qi = 0; qi < queries.size(); ++qi) {
            json hits = json::array();
            for (const auto& hit : query_ranking(sock, queries[qi], top_k)) {
                hits.push_back({{"entry_id", hit.entry_id}, {"score", hit.score}});
            }
            out.push_back({{"query", qi}, {"results", hits}});
        }
    } else {
        if (gallery_path.empty()) {
            throw ConfigError("either --gallery or --server is required");
        }
        const auto gallery = load_gallery(gallery_path);
        for (std::size_t qi = 0; qi < queries.size(); ++qi) {
            const RankedList ranked =
                rank_gallery(queries[qi].features, gallery, rc.similarity,
                             "q" + std::to_string(qi));
            json hits = json::array();
            for (std::size_t i = 0; i < ranked.entries.size() && i < top_k; ++i) {
                hits.push_back({{"entry_id", ranked.entries[i].first},
                                {"score", ranked.entries[i].second}});
            }
            out.push_back({{"query", qi}, {"results", hits}});
        }
    }
    if (as_json) {
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& q : out) {
            std::cout << "query " << q["query"].get<std::size_t>() << ":\n";
            for (const auto& r : q["results"]) {
                std::cout << "  " << r["entry_id"].get<std::string>() << "  "
                          << r["score"].get<double>() << "\n";
            }
        }
    }
    return 0;
}

int cmd_evaluate(const CommonOpts& opts, const std::string& query_path,
                 const std::string& gallery_path, bool as_json) {
    const RunConfig rc = resolve(opts);
    std::vector<QueryRecord> queries;
    for (const auto& msg : GalleryStore::read_log(query_path)) {
        queries.push_back({msg.annotation, msg.features});
    }
    const auto gallery = load_gallery(gallery_path);
    const EvalReport report = evaluate(queries, gallery, rc.similarity);
    if (as_json) {
        std::cout << eval_report_to_json(report).dump(2) << "\n";
    } else {
        std::cout << eval_report_table(report);
    }
    if (!rc.out_path.empty()) {
        std::ofstream f(rc.out_path);
        f << eval_report_to_json(report).dump(2) << "\n";
    }
    return 0;
}

int cmd_serve(const CommonOpts& opts, const std::string& bind, const std::string& store_path,
              std::size_t top_k) {
    const RunConfig rc = resolve(opts);
    auto store = std::make_shared<GalleryStore>(store_path);
    RankingServer server(store, rc.similarity, top_k);
    auto [host, port] = parse_endpoint(bind);
    const std::uint16_t bound = server.start(host, port);
    std::cout << "serving on " << (host.empty() ? "0.0.0.0" : host) << ":" << bound << " with "
              << store->size() << " gallery entries\n"
              << std::flush;
    // Runs until killed.
    while (true) {
        std::this_thread::sleep_for(std::chrono::seconds(1));
    }
}

int cmd_agent(const CommonOpts& opts, const std::string& server_endpoint,
              std::uint32_t device_id) {
    const RunConfig rc = resolve(opts);
    std::vector<std::string> unmatched;
    const auto pairs = scan_dataset(rc, &unmatched);
    if (pairs.empty()) {
        throw DataError("no image/mask pairs found under " + rc.dataset_root.string());
    }
    std::vector<FeatureMessage> messages;
    extract_directory(pairs, rc.extraction, device_id, messages,
                      [](const std::string& e) { std::cerr << "warning: " << e << "\n"; });
    if (messages.empty()) {
        throw DataError("extraction failed for every pair");
    }
    auto [host, port] = parse_endpoint(server_endpoint);
    Socket sock = Socket::connect_to(host, port);
    for (const auto& msg : messages) {
        submit_feature(sock, msg);
    }
    std::cout << "submitted " << messages.size() << " feature vectors to " << server_endpoint
              << "\n";
    return 0;
}

int cmd_watch(const CommonOpts& opts, const std::string& watchlist_path, double threshold,
              std::uint32_t device_id) {
    const RunConfig rc = resolve(opts);
    std::vector<WatchlistEntry> watchlist;
    for (const auto& msg : GalleryStore::read_log(watchlist_path)) {
        char id[16];
        std::snprintf(id, sizeof(id), "w%04zu", watchlist.size());
        watchlist.push_back({id, "person_" + std::to_string(msg.annotation.person_id),
                             msg.features});
    }
    std::vector<std::string> unmatched;
    const auto pairs = scan_dataset(rc, &unmatched);
    std::ofstream sink_file;
    std::ostream* sink = &std::cout;
    if (!rc.out_path.empty()) {
        sink_file.open(rc.out_path);
        if (!sink_file) {
            throw IoError("cannot open alert sink: " + rc.out_path.string());
        }
        sink = &sink_file;
    }
    const auto now_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count());
    std::vector<WatchFrame> frames;
    for (const auto& pair : pairs) {
        try {
            WatchFrame frame;
            frame.image = load_image(pair.image_path);
            const LabelMap raw = load_label_map(pair.mask_path,
                                                rc.extraction.merge_map.source_schema);
            validate_pair(frame.image, raw);
            frame.mask = merge_classes(raw, rc.extraction.merge_map);
            frame.device_id = device_id;
            frame.capture_timestamp = now_ms;
            frames.push_back(std::move(frame));
        } catch (const Error& e) {
            std::cerr << "warning: " << pair.stem << ": " << e.what() << "\n";
        }
    }
    std::size_t alert_count = 0;
    watch(
        watchlist, frames, threshold, rc.extraction, rc.similarity,
        [&](const MatchAlert& alert) {
            *sink << alert_to_json(alert).dump() << "\n";
            ++alert_count;
        },
        [](const std::string& e) { std::cerr << "warning: " << e << "\n"; });
    std::cerr << alert_count << " alerts from " << frames.size() << " frames\n";
    return 0;
}

int cmd_bench(const CommonOpts& opts, const std::string& archive_path, std::size_t reps) {
    const RunConfig rc = resolve(opts);
    if (reps == 0) {
        throw ConfigError("--reps must be >= 1");
    }
    const auto raw = GalleryStore::read_log(archive_path);
    if (raw.empty()) {
        throw DataError("archive is empty: " + archive_path);
    }
    std::vector<std::vector<std::uint8_t>> encoded;
    for (const auto& msg : raw) {
        encoded.push_back(encode_feature_message(msg));
    }
    std::vector<GalleryEntry> gallery;
    for (const auto& msg : raw) {
        gallery.push_back({GalleryStore::entry_id_for(gallery.size()), msg.annotation,
                           msg.features});
    }
    const FeatureVector& probe = raw.front().features;

    auto time_ms = [](auto&& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        return std::chrono::duration<double, std::milli>(t1 - t0).count();
    };
    std::vector<double> t_extract, t_score, t_rank;
    for (std::size_t r = 0; r < reps; ++r) {
        t_extract.push_back(time_ms([&] {
            for (const auto& bytes : encoded) {
                volatile auto n = decode_feature_message(bytes).features.classes.size();
                (void)n;
            }
        }));
        t_score.push_back(time_ms([&] {
            double acc = 0.0;
            for (const auto& entry : gallery) {
                acc += similarity_score(probe, entry.features, rc.similarity);
            }
            volatile double sink = acc;
            (void)sink;
        }));
        t_rank.push_back(time_ms(
            [&] { volatile auto n = rank_gallery(probe, gallery, rc.similarity).entries.size();
                  (void)n; }));
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const std::size_t n = v.size();
        return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
    };
    json out;
    out["vectors"] = raw.size();
    out["repetitions"] = reps;
    out["first_ms"] = {{"extract", t_extract.front()},
                       {"score", t_score.front()},
                       {"rank", t_rank.front()}};
    out["median_ms"] = {{"extract", median(t_extract)},
                        {"score", median(t_score)},
                        {"rank", median(t_rank)}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parsing-driven person re-identification toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string query_path, gallery_path, server_endpoint, bind = "0.0.0.0:7401";
    std::string store_path, watchlist_path, archive_path;
    std::size_t top_k = 10, reps = 10;
    std::uint32_t device_id = 0;
    double threshold = 0.85;
    bool as_json = false;

    auto* extract = app.add_subcommand("extract", "extract feature vectors to an archive");
    add_common_flags(extract, opts);

    auto* rank = app.add_subcommand("rank", "rank a gallery for each query vector");
    add_common_flags(rank, opts);
    rank->add_option("--query", query_path, "query feature archive")->required();
    rank->add_option("--gallery", gallery_path, "gallery feature archive");
    rank->add_option("--server", server_endpoint, "host:port of a ranking server");
    rank->add_option("--top-k", top_k, "results per query");
    rank->add_flag("--json", as_json, "emit JSON");

    auto* evaluate_cmd = app.add_subcommand("evaluate", "CMC/mAP evaluation of an archive pair");
    add_common_flags(evaluate_cmd, opts);
    evaluate_cmd->add_option("--query", query_path, "query feature archive")->required();
    evaluate_cmd->add_option("--gallery", gallery_path, "gallery feature archive")->required();
    evaluate_cmd->add_flag("--json", as_json, "emit JSON");

    auto* serve = app.add_subcommand("serve", "run the ranking server");
    add_common_flags(serve, opts);
    serve->add_option("--bind", bind, "bind address host:port");
    serve->add_option("--store", store_path, "gallery log file")->required();
    serve->add_option("--top-k", top_k, "default results per query");

    auto* agent = app.add_subcommand("agent", "extract features and stream them to a server");
    add_common_flags(agent, opts);
    agent->add_option("--server", server_endpoint, "host:port of the ranking server")->required();
    agent->add_option("--device-id", device_id, "numeric device identifier");

    auto* watch_cmd = app.add_subcommand("watch", "scan frames against a watchlist");
    add_common_flags(watch_cmd, opts);
    watch_cmd->add_option("--watchlist", watchlist_path, "watchlist feature archive")->required();
    watch_cmd->add_option("--threshold", threshold, "alert threshold in [0,1]");
    watch_cmd->add_option("--device-id", device_id, "numeric device identifier");

    auto* bench = app.add_subcommand("bench", "time decode/score/rank over an archive");
    add_common_flags(bench, opts);
    bench->add_option("--archive", archive_path, "feature archive")->required();
    bench->add_option("--reps", reps, "repetitions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (extract->parsed()) return cmd_extract(opts);
        if (rank->parsed())
            return cmd_rank(opts, query_path, gallery_path, server_endpoint, top_k, as_json);
        if (evaluate_cmd->parsed()) return cmd_evaluate(opts, query_path, gallery_path, as_json);
        if (serve->parsed()) return cmd_serve(opts, bind, store_path, top_k);
        if (agent->parsed()) return cmd_agent(opts, server_endpoint, device_id);
        if (watch_cmd->parsed()) return cmd_watch(opts, watchlist_path, threshold, device_id);
        if (bench->parsed()) return cmd_bench(opts, archive_path, reps);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
