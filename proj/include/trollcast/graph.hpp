#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "trollcast/corpus.hpp"

namespace trollcast {

using NodeId = uint32_t;

struct DirectedEdge {
    NodeId src = 0;
    NodeId dst = 0;
    uint64_t weight = 0;  // number of times src retweeted dst
};

// Who-retweeted-whom network. Node ids are dense and assigned by ascending
// user_id, so identical corpora always produce identical graphs. The
// undirected view (weight(i,j) = w(i->j) + w(j->i)) is materialized as CSR
// for propagation; directed edges are kept for reporting.
class RetweetGraph {
  public:
    RetweetGraph() = default;
    RetweetGraph(std::vector<UserId> node_users, std::vector<DirectedEdge> edges,
                 uint64_t self_loops_dropped);

    size_t node_count() const { return node_users_.size(); }
    const std::vector<UserId>& node_users() const { return node_users_; }
    UserId user_of(NodeId n) const { return node_users_[n]; }
    bool has_user(UserId u) const { return node_of_.count(u) > 0; }
    NodeId node_of(UserId u) const { return node_of_.at(u); }

    const std::vector<DirectedEdge>& directed_edges() const { return directed_; }
    uint64_t self_loops_dropped() const { return self_loops_dropped_; }
    uint64_t total_directed_weight() const { return total_directed_weight_; }

    // Undirected neighbors of n: pairs (neighbor, weight).
    struct NeighborRange {
        const NodeId* nbr_begin;
        const uint64_t* w_begin;
        size_t count;
    };
    NeighborRange neighbors(NodeId n) const {
        size_t b = undirected_offsets_[n];
        size_t e = undirected_offsets_[n + 1];
        return {undirected_nbrs_.data() + b, undirected_weights_.data() + b, e - b};
    }
    size_t undirected_edge_count() const { return undirected_nbrs_.size() / 2; }

    // Directed out-neighbors (users n retweeted) and in-neighbors (users who
    // retweeted n); used by the alternative directed voting modes.
    NeighborRange out_neighbors(NodeId n) const {
        size_t b = out_offsets_[n], e = out_offsets_[n + 1];
        return {out_nbrs_.data() + b, out_weights_.data() + b, e - b};
    }
    NeighborRange in_neighbors(NodeId n) const {
        size_t b = in_offsets_[n], e = in_offsets_[n + 1];
        return {in_nbrs_.data() + b, in_weights_.data() + b, e - b};
    }

    std::string edges_csv() const;

  private:
    std::vector<UserId> node_users_;
    std::unordered_map<UserId, NodeId> node_of_;
    std::vector<DirectedEdge> directed_;
    uint64_t self_loops_dropped_ = 0;
    uint64_t total_directed_weight_ = 0;

    std::vector<size_t> undirected_offsets_;
    std::vector<NodeId> undirected_nbrs_;
    std::vector<uint64_t> undirected_weights_;

    std::vector<size_t> out_offsets_, in_offsets_;
    std::vector<NodeId> out_nbrs_, in_nbrs_;
    std::vector<uint64_t> out_weights_, in_weights_;
};

// Nodes are users that appear as retweeter or retweetee; self-retweets are
// dropped and counted. Tweet order does not affect the result.
RetweetGraph build_retweet_graph(const CorpusIndex& index);

// Direct construction from weighted pairs, for synthetic benchmarks.
RetweetGraph graph_from_edges(const std::vector<std::tuple<UserId, UserId, uint64_t>>& edges);

}  // namespace trollcast
