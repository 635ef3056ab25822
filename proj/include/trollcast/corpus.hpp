#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace trollcast {

using UserId = uint64_t;
using TweetId = uint64_t;

// Inclusive collection window, epoch seconds UTC.
struct TimeWindow {
    int64_t start = 0;
    int64_t end = 0;
    bool contains(int64_t t) const { return t >= start && t <= end; }
    double length_days() const { return static_cast<double>(end - start) / 86400.0; }
};

struct TweetRecord {
    TweetId tweet_id = 0;
    UserId author_id = 0;
    int64_t created_at = 0;
    uint32_t text_char_count = 0;
    uint32_t word_count = 0;
    uint32_t hashtag_count = 0;
    uint32_t mention_count = 0;
    uint32_t url_count = 0;
    std::vector<std::string> domains;
    std::optional<UserId> retweeted_user_id;
    std::optional<UserId> replied_to_user_id;
    std::optional<UserId> quoted_user_id;
    std::optional<TweetId> target_tweet_id;  // tweet engaged with, when known
    std::vector<UserId> mentioned_user_ids;
    std::vector<std::string> words;

    bool is_retweet() const { return retweeted_user_id.has_value(); }
};

struct UserProfile {
    UserId user_id = 0;
    uint64_t followers_count = 0;
    uint64_t friends_count = 0;
    uint64_t favourites_count = 0;
    uint64_t statuses_count = 0;
    uint64_t listed_count = 0;
    bool default_profile = false;
    bool geo_enabled = false;
    bool background_image = false;
    bool verified = false;
    int64_t account_created_at = 0;
    std::optional<std::string> self_reported_location;
    std::optional<std::string> profile_url_domain;
};

struct IngestReport {
    uint64_t tweet_lines_read = 0;
    uint64_t tweets_indexed = 0;
    uint64_t tweets_malformed = 0;
    uint64_t tweets_out_of_window = 0;
    uint64_t tweets_duplicate = 0;
    uint64_t profile_lines_read = 0;
    uint64_t profiles_indexed = 0;
    uint64_t profiles_malformed = 0;
    uint64_t profiles_duplicate = 0;
    uint64_t authors_without_profile = 0;
    uint64_t profile_age_violations = 0;  // account created after first observed tweet
    bool duplicate_rate_warning = false;
    // First few offending line numbers, for the skip report.
    std::vector<uint64_t> malformed_tweet_lines;
    std::vector<uint64_t> malformed_profile_lines;
};

// Immutable after construction; all downstream stages read it concurrently.
class CorpusIndex {
  public:
    CorpusIndex() = default;
    CorpusIndex(std::vector<TweetRecord> tweets, std::vector<UserProfile> profiles,
                std::unordered_set<UserId> troll_ids, TimeWindow window, IngestReport report);

    const std::vector<TweetRecord>& tweets() const { return tweets_; }
    const TimeWindow& window() const { return window_; }
    const IngestReport& ingest_report() const { return report_; }
    const std::unordered_set<UserId>& troll_ids() const { return troll_ids_; }
    bool is_troll(UserId u) const { return troll_ids_.count(u) > 0; }

    const UserProfile* profile(UserId u) const;
    size_t profile_count() const { return profiles_.size(); }

    // Distinct tweet authors, ascending. This is the user universe for
    // labeling, features and engagement.
    const std::vector<UserId>& authors() const { return authors_; }
    bool is_author(UserId u) const;

    // Indices into tweets() for one author; empty when the user posted nothing.
    const std::vector<uint32_t>& tweets_by_author(UserId u) const;

    const TweetRecord* tweet_by_id(TweetId id) const;

  private:
    std::vector<TweetRecord> tweets_;
    std::unordered_map<TweetId, uint32_t> by_id_;
    std::unordered_map<UserId, std::vector<uint32_t>> by_author_;
    std::unordered_map<UserId, UserProfile> profiles_;
    std::unordered_set<UserId> troll_ids_;
    std::vector<UserId> authors_;
    TimeWindow window_;
    IngestReport report_;
};

struct IngestOptions {
    double duplicate_warn_threshold = 0.10;
};

// Reads newline-delimited JSON tweets and profiles plus a plain-text troll
// list. Malformed records are skipped and counted; duplicate tweet ids keep
// the first occurrence. Unreadable files are fatal.
CorpusIndex ingest(const std::filesystem::path& corpus_path,
                   const std::filesystem::path& profiles_path,
                   const std::filesystem::path& troll_list_path, TimeWindow window,
                   const IngestOptions& options = {});

struct StatsReport {
    // Corpus-wide
    uint64_t tweets_total = 0;
    uint64_t retweets_total = 0;
    uint64_t distinct_users = 0;
    uint64_t tweets_with_url = 0;
    // Trolls
    uint64_t trolls_listed = 0;
    uint64_t trolls_present = 0;  // appear as author or referenced target
    uint64_t trolls_with_original_tweets = 0;
    uint64_t troll_original_tweets = 0;
    uint64_t troll_to_troll_retweets = 0;
    uint64_t troll_received_retweets_total = 0;
    std::map<UserId, uint64_t> troll_received_retweets;  // per troll
    // Spreaders
    uint64_t spreader_count = 0;
    uint64_t spreader_troll_retweets = 0;  // equals troll_received_retweets from non-trolls
    uint64_t spreaders_with_original_tweets = 0;
    uint64_t spreader_original_tweets = 0;
    uint64_t spreader_other_tweets = 0;  // retweets of non-trolls by spreaders
};

StatsReport descriptive_stats(const CorpusIndex& index);

std::string stats_report_json(const StatsReport& report, const IngestReport& ingest);

struct SpreaderLabel {
    UserId user_id = 0;
    bool is_spreader = false;
    uint32_t troll_retweet_count = 0;
};

// One label per non-troll author; requires a non-empty troll list.
std::vector<SpreaderLabel> label_spreaders(const CorpusIndex& index);

}  // namespace trollcast
