#include "prid/server.hpp"

#include <json.hpp>

#include "prid/errors.hpp"
#include "prid/ranking.hpp"

namespace prid {

using nlohmann::json;

static std::vector<std::uint8_t> json_frame(const json& j) {
    const std::string s = j.dump();
    return std::vector<std::uint8_t>(s.begin(), s.end());
}

static std::vector<std::uint8_t> error_response(const std::string& message) {
    return json_frame(json{{"status", "error"}, {"error", message}});
}

RankingServer::RankingServer(std::shared_ptr<GalleryStore> store, SimilarityConfig config,
                             std::size_t default_top_k)
    : store_(std::move(store)), config_(config), default_top_k_(default_top_k) {}

RankingServer::~RankingServer() { stop(); }

std::uint16_t RankingServer::start(const std::string& bind_addr, std::uint16_t port) {
    listener_ = std::make_unique<Listener>(bind_addr, port);
    port_ = listener_->port();
    running_ = true;
    accept_thread_ = std::thread([this] { accept_loop(); });
    return port_;
}

void RankingServer::stop() {
    if (!running_.exchange(false)) {
        return;
    }
    if (listener_) {
        listener_->close();
    }
    if (accept_thread_.joinable()) {
        accept_thread_.join();
    }
    std::lock_guard lock(workers_mutex_);
    for (auto& c : connections_) {
        c->shutdown();
    }
    for (auto& t : workers_) {
        if (t.joinable()) {
            t.join();
        }
    }
    workers_.clear();
    connections_.clear();
}

void RankingServer::accept_loop() {
    while (running_) {
        Socket client = listener_->accept_connection();
        if (!client.valid()) {
            break;  // listener closed
        }
        auto conn = std::make_shared<Socket>(std::move(client));
        std::lock_guard lock(workers_mutex_);
        connections_.push_back(conn);
        workers_.emplace_back([this, conn] { handle_connection(conn); });
    }
}

void RankingServer::handle_connection(const std::shared_ptr<Socket>& client) {
    try {
        while (running_) {
            auto frame = client->recv_frame();
            if (!frame) {
                break;  // peer closed
            }
            client->send_frame(handle_request(*frame));
        }
    } catch (const IoError&) {
        // Broken framing or dead peer; drop the connection.
    }
}

std::vector<std::uint8_t> RankingServer::handle_request(const std::vector<std::uint8_t>& payload) {
    if (payload.empty()) {
        return error_response("empty frame");
    }
    const std::uint8_t type = payload[0];
    std::span<const std::uint8_t> body(payload.data() + 1, payload.size() - 1);
    try {
        switch (type) {
            case kMsgSubmit: {
                const FeatureMessage msg = decode_feature_message(body);
                const std::string id = store_->append(msg);
                return json_frame(json{{"status", "ok"}, {"entry_id", id}});
            }
            case kMsgQuery: {
                if (body.size() < 2) {
                    throw WireError(WireError::Kind::Truncated, "query frame too short");
                }
                const std::uint16_t requested =
                    static_cast<std::uint16_t>(body[0]) |
                    (static_cast<std::uint16_t>(body[1]) << 8);
                const std::size_t top_k = requested == 0 ? default_top_k_ : requested;
                const FeatureMessage msg = decode_feature_message(body.subspan(2));
                const RankedList ranked =
                    rank_gallery(msg.features, store_->entries(), config_);
                json results = json::array();
                for (std::size_t i = 0; i < ranked.entries.size() && i < top_k; ++i) {
                    results.push_back({{"entry_id", ranked.entries[i].first},
                                       {"score", ranked.entries[i].second}});
                }
                return json_frame(json{{"status", "ok"}, {"results", results}});
            }
            case kMsgReserved:
                return error_response("reserved message type");
            default:
                return error_response("unknown message type " + std::to_string(type));
        }
    } catch (const IoError& e) {
        return error_response(std::string("store fault: ") + e.what());
    } catch (const Error& e) {
        return error_response(e.what());
    }
}

std::string submit_feature(Socket& sock, const FeatureMessage& msg) {
    std::vector<std::uint8_t> payload{kMsgSubmit};
    const auto bytes = encode_feature_message(msg);
    payload.insert(payload.end(), bytes.begin(), bytes.end());
    sock.send_frame(payload);
    auto reply = sock.recv_frame();
    if (!reply) {
        throw IoError("server closed connection");
    }
    const json j = json::parse(reply->begin(), reply->end());
    if (j.value("status", "") != "ok") {
        throw DataError("submit rejected: " + j.value("error", "unknown error"));
    }
    return j.at("entry_id").get<std::string>();
}

std::vector<QueryHit> query_ranking(Socket& sock, const FeatureMessage& msg, std::size_t top_k) {
    std::vector<std::uint8_t> payload{kMsgQuery,
                                      static_cast<std::uint8_t>(top_k & 0xFF),
                                      static_cast<std::uint8_t>((top_k >> 8) & 0xFF)};
    const auto bytes = encode_feature_message(msg);
    payload.insert(payload.end(), bytes.begin(), bytes.end());
    sock.send_frame(payload);
    auto reply = sock.recv_frame();
    if (!reply) {
        throw IoError("server closed connection");
    }
    const json j = json::parse(reply->begin(), reply->end());
    if (j.value("status", "") != "ok") {
        throw DataError("query rejected: " + j.value("error", "unknown error"));
    }
    std::vector<QueryHit> hits;
    for (const auto& r : j.at("results")) {
        hits.push_back({r.at("entry_id").get<std::string>(), r.at("score").get<double>()});
    }
    return hits;
}

}  // namespace prid
