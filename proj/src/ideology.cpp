#include "trollcast/ideology.hpp"

#include <algorithm>
#include <map>

#include "trollcast/errors.hpp"
#include "trollcast/folds.hpp"
#include "trollcast/util.hpp"

namespace trollcast {

void OutletList::add(const std::string& domain, Polarity polarity) {
    std::string key = domain_key(domain);
    auto it = table_.find(key);
    if (it != table_.end() && it->second != polarity)
        throw DataError("outlet list maps domain to both polarities: " + domain);
    table_[key] = polarity;
}

void OutletList::add_centrist(const std::string& domain) { centrist_[domain_key(domain)] = true; }

std::optional<Polarity> OutletList::polarity_of(const std::string& domain) const {
    std::string key = domain_key(domain);
    if (centrist_.count(key)) return std::nullopt;
    auto it = table_.find(key);
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

bool OutletList::is_centrist(const std::string& domain) const {
    return centrist_.count(domain_key(domain)) > 0;
}

OutletList OutletList::load_csv(const std::filesystem::path& path) {
    OutletList outlets;
    std::string contents = read_file(path);
    size_t line_no = 0;
    for (const std::string& raw : split(contents, '\n')) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        auto parts = split(line, ',');
        if (parts.size() < 2) throw DataError("outlet list: bad row at line " + std::to_string(line_no));
        std::string domain(trim(parts[0]));
        std::string pol = to_lower(trim(parts[1]));
        if (line_no == 1 && (pol == "polarity" || domain == "domain")) continue;  // header
        if (pol == "liberal" || pol == "left")
            outlets.add(domain, Polarity::Liberal);
        else if (pol == "conservative" || pol == "right")
            outlets.add(domain, Polarity::Conservative);
        else if (pol == "left_center" || pol == "leftcenter" || pol == "center" ||
                 pol == "right_center" || pol == "rightcenter")
            outlets.add_centrist(domain);
        else
            throw DataError("outlet list: unknown polarity '" + pol + "' at line " +
                            std::to_string(line_no));
    }
    if (outlets.empty()) throw DataError("outlet list has no partisan domains: " + path.string());
    return outlets;
}

std::vector<IdeologySeed> seed_users(const CorpusIndex& index, const OutletList& outlets) {
    if (outlets.empty()) throw DataError("seed_users: outlet list is empty");
    // user -> (liberal tweet count, conservative tweet count)
    std::map<UserId, std::pair<uint32_t, uint32_t>> counts;
    for (const TweetRecord& t : index.tweets()) {
        bool any_lib = false, any_con = false;
        for (const std::string& d : t.domains) {
            auto pol = outlets.polarity_of(d);
            if (!pol) continue;
            (*pol == Polarity::Liberal ? any_lib : any_con) = true;
        }
        if (!any_lib && !any_con) continue;
        auto& c = counts[t.author_id];
        if (any_lib) ++c.first;
        if (any_con) ++c.second;
    }
    std::vector<IdeologySeed> seeds;
    for (const auto& [uid, c] : counts) {
        if (c.first == c.second) continue;  // ties and zero counts excluded
        IdeologySeed s;
        s.user_id = uid;
        s.liberal_link_count = c.first;
        s.conservative_link_count = c.second;
        s.polarity = c.first > c.second ? Polarity::Liberal : Polarity::Conservative;
        seeds.push_back(s);
    }
    return seeds;
}

namespace {

constexpr int8_t kUnlabeled = -1;

struct SeedSet {
    std::vector<int8_t> label;   // per node: -1 / 0 / 1
    std::vector<uint8_t> frozen; // per node: 1 = seed
    uint64_t in_graph = 0;
    uint64_t liberal_in_graph = 0;
    uint64_t conservative_in_graph = 0;
};

SeedSet place_seeds(const RetweetGraph& graph, const std::vector<IdeologySeed>& seeds) {
    SeedSet s;
    s.label.assign(graph.node_count(), kUnlabeled);
    s.frozen.assign(graph.node_count(), 0);
    for (const auto& seed : seeds) {
        if (!graph.has_user(seed.user_id)) continue;
        NodeId n = graph.node_of(seed.user_id);
        s.label[n] = seed.polarity == Polarity::Liberal ? 0 : 1;
        s.frozen[n] = 1;
        ++s.in_graph;
        ++(seed.polarity == Polarity::Liberal ? s.liberal_in_graph : s.conservative_in_graph);
    }
    return s;
}

}  // namespace

PropagationResult propagate_labels(const RetweetGraph& graph,
                                   const std::vector<IdeologySeed>& seeds,
                                   const PropagationConfig& config) {
    if (config.max_iter < 1) throw UsageError("propagate_labels: max_iter must be >= 1");
    SeedSet state = place_seeds(graph, seeds);
    if (state.in_graph == 0) throw DataError("propagate_labels: no seeds present in the graph");
    if (state.liberal_in_graph == 0 || state.conservative_in_graph == 0)
        throw DataError("propagate_labels: seeds of only one polarity present in the graph");

    std::vector<NodeId> order(graph.node_count());
    for (NodeId i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(config.rng_seed);

    std::vector<int8_t>& label = state.label;
    uint32_t sweeps = 0;
    bool converged = false;
    while (sweeps < config.max_iter) {
        rng.shuffle(order);
        ++sweeps;
        uint64_t changes = 0;
        for (NodeId n : order) {
            if (state.frozen[n]) continue;
            uint64_t votes[2] = {0, 0};
            RetweetGraph::NeighborRange range =
                config.vote_mode == VoteMode::Undirected ? graph.neighbors(n)
                : config.vote_mode == VoteMode::Out      ? graph.out_neighbors(n)
                                                         : graph.in_neighbors(n);
            for (size_t i = 0; i < range.count; ++i) {
                int8_t nl = label[range.nbr_begin[i]];
                if (nl >= 0) votes[nl] += range.w_begin[i];
            }
            if (votes[0] == votes[1]) continue;  // tie or no votes: keep current
            int8_t winner = votes[0] > votes[1] ? 0 : 1;
            if (label[n] != winner) {
                label[n] = winner;
                ++changes;
            }
        }
        if (changes == 0) {
            converged = true;
            break;
        }
    }

    PropagationResult result;
    result.sweeps = sweeps;
    result.converged = converged;
    result.seeds_in_graph = state.in_graph;
    result.assignments.resize(graph.node_count());
    for (NodeId n = 0; n < graph.node_count(); ++n) {
        IdeologyAssignment& a = result.assignments[n];
        a.user_id = graph.user_of(n);
        if (label[n] == kUnlabeled) {
            a.label = IdeologyLabel::Unlabeled;
            a.source = LabelSource::None;
        } else {
            a.label = label[n] == 0 ? IdeologyLabel::Liberal : IdeologyLabel::Conservative;
            a.source = state.frozen[n] ? LabelSource::Seed : LabelSource::Propagated;
        }
    }
    return result;
}

namespace {

// Accumulates per-fold precision/recall; precision for a class is averaged
// only over folds where the class was predicted at least once.
struct FoldAverager {
    double precision_sum[2] = {0, 0};
    uint32_t precision_folds[2] = {0, 0};
    double recall_sum[2] = {0, 0};
    uint32_t recall_folds[2] = {0, 0};
    uint64_t support[2] = {0, 0};
    uint64_t scored = 0;
    uint64_t unlabeled = 0;

    void add_fold(const uint64_t tp[2], const uint64_t fp[2], const uint64_t truth[2],
                  uint64_t unl) {
        for (int c = 0; c < 2; ++c) {
            uint64_t predicted = tp[c] + fp[c];
            if (predicted > 0) {
                precision_sum[c] += static_cast<double>(tp[c]) / static_cast<double>(predicted);
                ++precision_folds[c];
            }
            if (truth[c] > 0) {
                recall_sum[c] += static_cast<double>(tp[c]) / static_cast<double>(truth[c]);
                ++recall_folds[c];
            }
            support[c] += truth[c];
            scored += truth[c];
        }
        unlabeled += unl;
    }

    ClassScore score(int c) const {
        ClassScore s;
        s.support = support[c];
        s.precision_defined = precision_folds[c] > 0;
        s.precision = s.precision_defined ? precision_sum[c] / precision_folds[c] : 0.0;
        s.recall = recall_folds[c] > 0 ? recall_sum[c] / recall_folds[c] : 0.0;
        return s;
    }
};

}  // namespace

PrecisionRecallReport holdout_validate(const RetweetGraph& graph,
                                       const std::vector<IdeologySeed>& seeds, uint32_t k,
                                       const PropagationConfig& config) {
    std::vector<uint8_t> polarity_labels(seeds.size());
    for (size_t i = 0; i < seeds.size(); ++i)
        polarity_labels[i] = static_cast<uint8_t>(seeds[i].polarity);
    std::vector<uint32_t> fold_of = stratified_kfold(polarity_labels, k, config.rng_seed);

    FoldAverager avg;
    for (uint32_t fold = 0; fold < k; ++fold) {
        std::vector<IdeologySeed> train;
        std::vector<const IdeologySeed*> held;
        for (size_t i = 0; i < seeds.size(); ++i) {
            if (fold_of[i] == fold)
                held.push_back(&seeds[i]);
            else
                train.push_back(seeds[i]);
        }
        PropagationConfig fold_config = config;
        fold_config.rng_seed = config.rng_seed ^ (0x51ed2701ULL + fold);
        PropagationResult prop = propagate_labels(graph, train, fold_config);

        uint64_t tp[2] = {0, 0}, fp[2] = {0, 0}, truth[2] = {0, 0};
        uint64_t unlabeled = 0;
        for (const IdeologySeed* s : held) {
            int c = static_cast<int>(s->polarity);
            ++truth[c];
            IdeologyLabel predicted = IdeologyLabel::Unlabeled;
            if (graph.has_user(s->user_id))
                predicted = prop.assignments[graph.node_of(s->user_id)].label;
            if (predicted == IdeologyLabel::Unlabeled) {
                ++unlabeled;
                continue;  // recall miss; no precision contribution
            }
            int pc = predicted == IdeologyLabel::Liberal ? 0 : 1;
            if (pc == c)
                ++tp[c];
            else
                ++fp[pc];
        }
        avg.add_fold(tp, fp, truth, unlabeled);
    }

    PrecisionRecallReport report;
    report.folds = k;
    report.liberal = avg.score(0);
    report.conservative = avg.score(1);
    report.scored_seeds = avg.scored;
    report.unlabeled_holdouts = avg.unlabeled;
    return report;
}

std::vector<IdeologySeed> hyperpartisan_users(const CorpusIndex& index,
                                              const OutletList& outlets) {
    std::vector<IdeologySeed> users;
    std::vector<UserId> ids = index.authors();
    for (UserId uid : ids) {
        const UserProfile* p = index.profile(uid);
        if (!p || !p->profile_url_domain) continue;
        auto pol = outlets.polarity_of(*p->profile_url_domain);
        if (!pol) continue;
        IdeologySeed s;
        s.user_id = uid;
        s.polarity = *pol;
        users.push_back(s);
    }
    return users;
}

PrecisionRecallReport score_against_truth(const std::vector<IdeologyAssignment>& assignments,
                                          const std::vector<IdeologySeed>& truth) {
    std::unordered_map<UserId, IdeologyLabel> predicted;
    predicted.reserve(assignments.size() * 2);
    for (const auto& a : assignments) predicted.emplace(a.user_id, a.label);

    uint64_t tp[2] = {0, 0}, fp[2] = {0, 0}, truth_count[2] = {0, 0};
    uint64_t unlabeled = 0;
    for (const auto& t : truth) {
        int c = static_cast<int>(t.polarity);
        ++truth_count[c];
        auto it = predicted.find(t.user_id);
        IdeologyLabel lab = it == predicted.end() ? IdeologyLabel::Unlabeled : it->second;
        if (lab == IdeologyLabel::Unlabeled) {
            ++unlabeled;
            continue;
        }
        int pc = lab == IdeologyLabel::Liberal ? 0 : 1;
        if (pc == c)
            ++tp[c];
        else
            ++fp[pc];
    }
    FoldAverager avg;
    avg.add_fold(tp, fp, truth_count, unlabeled);
    PrecisionRecallReport report;
    report.folds = 1;
    report.liberal = avg.score(0);
    report.conservative = avg.score(1);
    report.scored_seeds = avg.scored;
    report.unlabeled_holdouts = avg.unlabeled;
    return report;
}

std::vector<IdeologyAssignment> assignments_for_index(const CorpusIndex& index,
                                                      const RetweetGraph& graph,
                                                      const std::vector<IdeologySeed>& seeds,
                                                      const PropagationResult& propagation) {
    std::unordered_map<UserId, const IdeologyAssignment*> by_user;
    by_user.reserve(propagation.assignments.size() * 2);
    for (const auto& a : propagation.assignments) by_user.emplace(a.user_id, &a);
    std::unordered_map<UserId, Polarity> seed_polarity;
    for (const auto& s : seeds) seed_polarity.emplace(s.user_id, s.polarity);

    std::vector<IdeologyAssignment> out;
    out.reserve(index.authors().size());
    for (UserId uid : index.authors()) {
        IdeologyAssignment a;
        a.user_id = uid;
        if (auto sit = seed_polarity.find(uid); sit != seed_polarity.end()) {
            a.label = sit->second == Polarity::Liberal ? IdeologyLabel::Liberal
                                                       : IdeologyLabel::Conservative;
            a.source = LabelSource::Seed;
        } else if (auto git = by_user.find(uid); git != by_user.end()) {
            a.label = git->second->label;
            a.source = git->second->source;
        }
        out.push_back(a);
    }
    (void)graph;
    return out;
}

std::string assignments_csv(const std::vector<IdeologyAssignment>& assignments) {
    std::string out = "user_id,label,source\n";
    for (const auto& a : assignments) {
        out += std::to_string(a.user_id);
        out += ',';
        out += to_string(a.label);
        out += ',';
        out += to_string(a.source);
        out += '\n';
    }
    return out;
}

const char* to_string(IdeologyLabel label) {
    switch (label) {
        case IdeologyLabel::Liberal: return "liberal";
        case IdeologyLabel::Conservative: return "conservative";
        default: return "unlabeled";
    }
}

const char* to_string(LabelSource source) {
    switch (source) {
        case LabelSource::Seed: return "seed";
        case LabelSource::Propagated: return "propagated";
        default: return "none";
    }
}

}  // namespace trollcast
