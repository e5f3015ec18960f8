#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "prid/net.hpp"
#include "prid/similarity.hpp"
#include "prid/store.hpp"

namespace prid {

// Ranking service backed by a GalleryStore. SUBMIT appends a
// FeatureMessage to the log; QUERY scores the query against every
// stored entry and returns the top-k as JSON. A malformed message
// yields an error response and the connection stays open.
class RankingServer {
public:
    RankingServer(std::shared_ptr<GalleryStore> store, SimilarityConfig config,
                  std::size_t default_top_k = 10);
    ~RankingServer();

    // Binds and spawns the accept loop; returns the bound port.
    std::uint16_t start(const std::string& bind_addr, std::uint16_t port);
    void stop();

    std::uint16_t port() const { return port_; }

private:
    void accept_loop();
    void handle_connection(const std::shared_ptr<Socket>& client);
    std::vector<std::uint8_t> handle_request(const std::vector<std::uint8_t>& payload);

    std::shared_ptr<GalleryStore> store_;
    SimilarityConfig config_;
    std::size_t default_top_k_;
    std::unique_ptr<Listener> listener_;
    std::uint16_t port_ = 0;
    std::atomic<bool> running_{false};
    std::thread accept_thread_;
    std::vector<std::thread> workers_;
    std::vector<std::shared_ptr<Socket>> connections_;
    std::mutex workers_mutex_;
};

// Client-side helpers shared by the CLI agent and the tests.
struct QueryHit {
    std::string entry_id;
    double score = 0.0;
};

std::string submit_feature(Socket& sock, const FeatureMessage& msg);
std::vector<QueryHit> query_ranking(Socket& sock, const FeatureMessage& msg, std::size_t top_k);

}  // namespace prid
