#include "trollcast/graph.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "trollcast/util.hpp"

namespace trollcast {

namespace {

// Build CSR arrays from (src, dst, weight) triples, neighbors sorted per node.
void build_csr(size_t n_nodes, const std::vector<DirectedEdge>& edges, bool reverse,
               std::vector<size_t>& offsets, std::vector<NodeId>& nbrs,
               std::vector<uint64_t>& weights) {
    offsets.assign(n_nodes + 1, 0);
    for (const auto& e : edges) ++offsets[(reverse ? e.dst : e.src) + 1];
    for (size_t i = 1; i <= n_nodes; ++i) offsets[i] += offsets[i - 1];
    nbrs.resize(edges.size());
    weights.resize(edges.size());
    std::vector<size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& e : edges) {
        NodeId from = reverse ? e.dst : e.src;
        NodeId to = reverse ? e.src : e.dst;
        size_t pos = cursor[from]++;
        nbrs[pos] = to;
        weights[pos] = e.weight;
    }
    // Edges arrive sorted by (src, dst), so each CSR row is already sorted
    // when !reverse; sort rows explicitly for the reverse direction.
    if (reverse) {
        for (size_t v = 0; v < n_nodes; ++v) {
            size_t b = offsets[v], e = offsets[v + 1];
            std::vector<std::pair<NodeId, uint64_t>> row;
            row.reserve(e - b);
            for (size_t i = b; i < e; ++i) row.emplace_back(nbrs[i], weights[i]);
            std::sort(row.begin(), row.end());
            for (size_t i = b; i < e; ++i) {
                nbrs[i] = row[i - b].first;
                weights[i] = row[i - b].second;
            }
        }
    }
}

}  // namespace

RetweetGraph::RetweetGraph(std::vector<UserId> node_users, std::vector<DirectedEdge> edges,
                           uint64_t self_loops_dropped)
    : node_users_(std::move(node_users)),
      directed_(std::move(edges)),
      self_loops_dropped_(self_loops_dropped) {
    node_of_.reserve(node_users_.size() * 2);
    for (NodeId i = 0; i < node_users_.size(); ++i) node_of_.emplace(node_users_[i], i);

    std::sort(directed_.begin(), directed_.end(), [](const DirectedEdge& a, const DirectedEdge& b) {
        return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
    });
    for (const auto& e : directed_) total_directed_weight_ += e.weight;

    // Undirected view: merge w(i->j) and w(j->i).
    std::map<std::pair<NodeId, NodeId>, uint64_t> undirected;
    for (const auto& e : directed_) {
        auto key = std::minmax(e.src, e.dst);
        undirected[{key.first, key.second}] += e.weight;
    }
    std::vector<DirectedEdge> sym;
    sym.reserve(undirected.size() * 2);
    for (const auto& [key, w] : undirected) {
        sym.push_back({key.first, key.second, w});
        sym.push_back({key.second, key.first, w});
    }
    std::sort(sym.begin(), sym.end(), [](const DirectedEdge& a, const DirectedEdge& b) {
        return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
    });
    build_csr(node_users_.size(), sym, false, undirected_offsets_, undirected_nbrs_,
              undirected_weights_);

    build_csr(node_users_.size(), directed_, false, out_offsets_, out_nbrs_, out_weights_);
    build_csr(node_users_.size(), directed_, true, in_offsets_, in_nbrs_, in_weights_);
}

std::string RetweetGraph::edges_csv() const {
    std::string out = "src,dst,weight\n";
    for (const auto& e : directed_) {
        out += std::to_string(node_users_[e.src]);
        out += ',';
        out += std::to_string(node_users_[e.dst]);
        out += ',';
        out += std::to_string(e.weight);
        out += '\n';
    }
    return out;
}

RetweetGraph build_retweet_graph(const CorpusIndex& index) {
    // Count retweet pairs keyed by user ids; a std::map keeps everything
    // ordered so node numbering and edge order are input-order independent.
    std::map<std::pair<UserId, UserId>, uint64_t> pair_weights;
    uint64_t self_loops = 0;
    for (const TweetRecord& t : index.tweets()) {
        if (!t.is_retweet()) continue;
        UserId src = t.author_id;
        UserId dst = *t.retweeted_user_id;
        if (src == dst) {
            ++self_loops;
            continue;
        }
        ++pair_weights[{src, dst}];
    }

    std::vector<UserId> users;
    users.reserve(pair_weights.size());
    for (const auto& [key, _] : pair_weights) {
        users.push_back(key.first);
        users.push_back(key.second);
    }
    std::sort(users.begin(), users.end());
    users.erase(std::unique(users.begin(), users.end()), users.end());

    std::unordered_map<UserId, NodeId> node_of;
    node_of.reserve(users.size() * 2);
    for (NodeId i = 0; i < users.size(); ++i) node_of.emplace(users[i], i);

    std::vector<DirectedEdge> edges;
    edges.reserve(pair_weights.size());
    for (const auto& [key, w] : pair_weights)
        edges.push_back({node_of[key.first], node_of[key.second], w});

    return RetweetGraph(std::move(users), std::move(edges), self_loops);
}

RetweetGraph graph_from_edges(const std::vector<std::tuple<UserId, UserId, uint64_t>>& raw) {
    std::map<std::pair<UserId, UserId>, uint64_t> pair_weights;
    uint64_t self_loops = 0;
    for (const auto& [src, dst, w] : raw) {
        if (src == dst) {
            ++self_loops;
            continue;
        }
        pair_weights[{src, dst}] += w;
    }
    std::vector<UserId> users;
    for (const auto& [key, _] : pair_weights) {
        users.push_back(key.first);
        users.push_back(key.second);
    }
    std::sort(users.begin(), users.end());
    users.erase(std::unique(users.begin(), users.end()), users.end());
    std::unordered_map<UserId, NodeId> node_of;
    for (NodeId i = 0; i < users.size(); ++i) node_of.emplace(users[i], i);
    std::vector<DirectedEdge> edges;
    for (const auto& [key, w] : pair_weights)
        edges.push_back({node_of[key.first], node_of[key.second], w});
    return RetweetGraph(std::move(users), std::move(edges), self_loops);
}

}  // namespace trollcast
