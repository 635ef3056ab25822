#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "trollcast/corpus.hpp"
#include "trollcast/graph.hpp"

namespace trollcast {

enum class Polarity : uint8_t { Liberal = 0, Conservative = 1 };

enum class IdeologyLabel : uint8_t { Liberal = 0, Conservative = 1, Unlabeled = 2 };

enum class LabelSource : uint8_t { Seed = 0, Propagated = 1, None = 2 };

// Domain -> polarity table. Centrist categories (left_center, center,
// right_center) are kept only to exclude those domains from seeding.
class OutletList {
  public:
    void add(const std::string& domain, Polarity polarity);
    void add_centrist(const std::string& domain);

    // Polarity of a domain, nullopt when unknown or centrist. Matching is
    // case-insensitive and ignores a leading "www.".
    std::optional<Polarity> polarity_of(const std::string& domain) const;
    bool is_centrist(const std::string& domain) const;
    bool empty() const { return table_.empty(); }
    size_t size() const { return table_.size(); }

    // CSV rows "domain,polarity" with polarity one of liberal|left,
    // conservative|right, or left_center|center|right_center.
    static OutletList load_csv(const std::filesystem::path& path);

  private:
    std::unordered_map<std::string, Polarity> table_;  // keyed by domain_key
    std::unordered_map<std::string, bool> centrist_;
};

struct IdeologySeed {
    UserId user_id = 0;
    Polarity polarity = Polarity::Liberal;
    uint32_t liberal_link_count = 0;
    uint32_t conservative_link_count = 0;
};

struct IdeologyAssignment {
    UserId user_id = 0;
    IdeologyLabel label = IdeologyLabel::Unlabeled;
    LabelSource source = LabelSource::None;
};

// Majority rule over a user's tweets linking liberal vs conservative
// outlets; a tweet linking both sides counts toward both; tied or zero-count
// users are excluded.
std::vector<IdeologySeed> seed_users(const CorpusIndex& index, const OutletList& outlets);

enum class VoteMode : uint8_t {
    Undirected = 0,  // default: affinity in either direction
    Out = 1,         // votes from accounts this node retweeted
    In = 2,          // votes from accounts that retweeted this node
};

struct PropagationConfig {
    uint32_t max_iter = 100;
    uint64_t rng_seed = 1;
    VoteMode vote_mode = VoteMode::Undirected;
};

struct PropagationResult {
    std::vector<IdeologyAssignment> assignments;  // one per graph node, node order
    uint32_t sweeps = 0;
    bool converged = false;
    uint64_t seeds_in_graph = 0;
};

// Asynchronous weighted label propagation with frozen seeds. Node update
// order is a deterministic shuffle from rng_seed, reshuffled every sweep.
// Ties keep the current label (or stay Unlabeled); unlabeled neighbors cast
// no votes. Stops after a sweep with no change or after max_iter sweeps.
PropagationResult propagate_labels(const RetweetGraph& graph,
                                   const std::vector<IdeologySeed>& seeds,
                                   const PropagationConfig& config);

// Per-class precision/recall averaged over folds. Held-out seeds that end
// Unlabeled count as recall misses and never enter precision denominators.
struct ClassScore {
    double precision = 0.0;
    double recall = 0.0;
    bool precision_defined = false;
    uint64_t support = 0;
};

struct PrecisionRecallReport {
    ClassScore liberal;
    ClassScore conservative;
    uint32_t folds = 0;
    uint64_t scored_seeds = 0;
    uint64_t unlabeled_holdouts = 0;
};

PrecisionRecallReport holdout_validate(const RetweetGraph& graph,
                                       const std::vector<IdeologySeed>& seeds, uint32_t k,
                                       const PropagationConfig& config);

// Users whose profile link points at a listed outlet form a second labeled
// set, scored against a propagation run from the full seed list.
std::vector<IdeologySeed> hyperpartisan_users(const CorpusIndex& index, const OutletList& outlets);

PrecisionRecallReport score_against_truth(const std::vector<IdeologyAssignment>& assignments,
                                          const std::vector<IdeologySeed>& truth);

// Full per-user assignment for the whole index: seeds keep their polarity,
// graph nodes take the propagated label, everyone else is Unlabeled.
std::vector<IdeologyAssignment> assignments_for_index(const CorpusIndex& index,
                                                      const RetweetGraph& graph,
                                                      const std::vector<IdeologySeed>& seeds,
                                                      const PropagationResult& propagation);

std::string assignments_csv(const std::vector<IdeologyAssignment>& assignments);

const char* to_string(IdeologyLabel label);
const char* to_string(LabelSource source);

}  // namespace trollcast
