#include "trollcast/corpus.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "trollcast/errors.hpp"
#include "trollcast/parallel.hpp"
#include "trollcast/util.hpp"

namespace trollcast {

using nlohmann::json;

namespace {

constexpr size_t kMaxReportedLines = 20;

std::optional<uint64_t> to_id(const json& v) {
    if (v.is_number_unsigned()) return v.get<uint64_t>();
    if (v.is_number_integer()) {
        int64_t n = v.get<int64_t>();
        if (n < 0) return std::nullopt;
        return static_cast<uint64_t>(n);
    }
    if (v.is_string()) {
        const std::string& s = v.get_ref<const std::string&>();
        if (s.empty()) return std::nullopt;
        uint64_t n = 0;
        for (char c : s) {
            if (c < '0' || c > '9') return std::nullopt;
            n = n * 10 + static_cast<uint64_t>(c - '0');
        }
        return n;
    }
    return std::nullopt;
}

std::optional<uint64_t> get_id(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return to_id(*it);
}

std::optional<int64_t> get_timestamp(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (it->is_number_integer()) return it->get<int64_t>();
    if (it->is_number_unsigned()) return static_cast<int64_t>(it->get<uint64_t>());
    if (it->is_string()) return parse_timestamp(it->get_ref<const std::string&>());
    return std::nullopt;
}

bool get_bool(const json& j, const char* key, bool fallback = false) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return fallback;
    if (it->is_boolean()) return it->get<bool>();
    if (it->is_number_integer()) return it->get<int64_t>() != 0;
    return fallback;
}

uint64_t get_count(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return 0;
    if (it->is_number_unsigned()) return it->get<uint64_t>();
    if (it->is_number_integer()) return static_cast<uint64_t>(std::max<int64_t>(0, it->get<int64_t>()));
    return 0;
}

std::optional<TweetRecord> parse_tweet(std::string_view line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;

    TweetRecord rec;
    auto id = get_id(j, "id");
    auto user = get_id(j, "user_id");
    auto ts = get_timestamp(j, "created_at");
    if (!id || !user || !ts) return std::nullopt;
    if (!j.contains("text") || !j["text"].is_string()) return std::nullopt;
    rec.tweet_id = *id;
    rec.author_id = *user;
    rec.created_at = *ts;

    const std::string& text = j["text"].get_ref<const std::string&>();
    rec.text_char_count = static_cast<uint32_t>(text.size());
    rec.words = tokenize(text);
    rec.word_count = static_cast<uint32_t>(rec.words.size());

    rec.retweeted_user_id = get_id(j, "retweeted_user_id");
    rec.replied_to_user_id = get_id(j, "replied_to_user_id");
    rec.quoted_user_id = get_id(j, "quoted_user_id");
    rec.target_tweet_id = get_id(j, "target_tweet_id");

    if (auto it = j.find("mentioned_user_ids"); it != j.end() && it->is_array()) {
        for (const auto& m : *it)
            if (auto mid = to_id(m)) rec.mentioned_user_ids.push_back(*mid);
    }
    rec.mention_count = static_cast<uint32_t>(rec.mentioned_user_ids.size());

    if (auto it = j.find("hashtags"); it != j.end() && it->is_array())
        rec.hashtag_count = static_cast<uint32_t>(it->size());

    if (auto it = j.find("urls"); it != j.end() && it->is_array()) {
        rec.url_count = static_cast<uint32_t>(it->size());
        for (const auto& u : *it) {
            if (!u.is_string()) continue;
            if (auto dom = extract_domain(u.get_ref<const std::string&>()))
                rec.domains.push_back(std::move(*dom));
        }
    }
    return rec;
}

std::optional<UserProfile> parse_profile(std::string_view line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    auto id = get_id(j, "user_id");
    if (!id) return std::nullopt;

    UserProfile p;
    p.user_id = *id;
    p.followers_count = get_count(j, "followers_count");
    p.friends_count = get_count(j, "friends_count");
    p.favourites_count = get_count(j, "favourites_count");
    p.statuses_count = get_count(j, "statuses_count");
    p.listed_count = get_count(j, "listed_count");
    p.default_profile = get_bool(j, "default_profile");
    p.geo_enabled = get_bool(j, "geo_enabled");
    p.background_image = get_bool(j, "background_image");
    p.verified = get_bool(j, "verified");
    auto created = get_timestamp(j, "account_created_at");
    if (!created) return std::nullopt;
    p.account_created_at = *created;
    if (auto it = j.find("self_reported_location"); it != j.end() && it->is_string())
        p.self_reported_location = it->get<std::string>();
    if (auto it = j.find("profile_url_domain"); it != j.end() && it->is_string())
        p.profile_url_domain = to_lower(it->get_ref<const std::string&>());
    return p;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

}  // namespace

CorpusIndex::CorpusIndex(std::vector<TweetRecord> tweets, std::vector<UserProfile> profiles,
                         std::unordered_set<UserId> troll_ids, TimeWindow window,
                         IngestReport report)
    : tweets_(std::move(tweets)),
      troll_ids_(std::move(troll_ids)),
      window_(window),
      report_(std::move(report)) {
    by_id_.reserve(tweets_.size() * 2);
    by_author_.reserve(tweets_.size() / 2 + 16);
    for (uint32_t i = 0; i < tweets_.size(); ++i) {
        by_id_.emplace(tweets_[i].tweet_id, i);
        by_author_[tweets_[i].author_id].push_back(i);
    }
    authors_.reserve(by_author_.size());
    for (const auto& [uid, _] : by_author_) authors_.push_back(uid);
    std::sort(authors_.begin(), authors_.end());

    profiles_.reserve(profiles.size() * 2);
    for (auto& p : profiles) {
        UserId uid = p.user_id;
        profiles_.emplace(uid, std::move(p));
    }

    for (UserId uid : authors_) {
        auto it = profiles_.find(uid);
        if (it == profiles_.end()) {
            ++report_.authors_without_profile;
            continue;
        }
        const auto& idxs = by_author_.at(uid);
        int64_t first_tweet = tweets_[idxs.front()].created_at;
        for (uint32_t ti : idxs) first_tweet = std::min(first_tweet, tweets_[ti].created_at);
        if (it->second.account_created_at > first_tweet) ++report_.profile_age_violations;
    }
}

const UserProfile* CorpusIndex::profile(UserId u) const {
    auto it = profiles_.find(u);
    return it == profiles_.end() ? nullptr : &it->second;
}

bool CorpusIndex::is_author(UserId u) const { return by_author_.count(u) > 0; }

const std::vector<uint32_t>& CorpusIndex::tweets_by_author(UserId u) const {
    static const std::vector<uint32_t> empty;
    auto it = by_author_.find(u);
    return it == by_author_.end() ? empty : it->second;
}

const TweetRecord* CorpusIndex::tweet_by_id(TweetId id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &tweets_[it->second];
}

CorpusIndex ingest(const std::filesystem::path& corpus_path,
                   const std::filesystem::path& profiles_path,
                   const std::filesystem::path& troll_list_path, TimeWindow window,
                   const IngestOptions& options) {
    IngestReport report;

    // Troll list: one id per line, '#' comments.
    std::unordered_set<UserId> troll_ids;
    for (const std::string& raw : read_lines(troll_list_path)) {
        std::string_view line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        uint64_t v = 0;
        bool ok = !line.empty();
        for (char c : line) {
            if (c < '0' || c > '9') {
                ok = false;
                break;
            }
            v = v * 10 + static_cast<uint64_t>(c - '0');
        }
        if (ok) troll_ids.insert(v);
    }

    // Tweets: parse chunks in parallel, then merge in line order so that
    // duplicate resolution (first occurrence wins) is order-stable.
    std::vector<std::string> tweet_lines = read_lines(corpus_path);
    report.tweet_lines_read = tweet_lines.size();

    struct ChunkResult {
        std::vector<std::pair<uint64_t, TweetRecord>> records;  // line no -> record
        std::vector<uint64_t> malformed;
        uint64_t out_of_window = 0;
        uint64_t blank = 0;
    };
    size_t n_lines = tweet_lines.size();
    size_t n_chunks = std::max<size_t>(1, std::min<size_t>(static_cast<size_t>(max_threads()) * 4,
                                                           n_lines / 4096 + 1));
    size_t chunk_size = n_lines / n_chunks + 1;
    std::vector<ChunkResult> chunks(n_chunks);
    parallel_for(n_chunks, [&](size_t c) {
        size_t begin = c * chunk_size;
        size_t end = std::min(n_lines, begin + chunk_size);
        ChunkResult& out = chunks[c];
        for (size_t i = begin; i < end; ++i) {
            std::string_view line = trim(tweet_lines[i]);
            if (line.empty()) {
                ++out.blank;
                continue;
            }
            auto rec = parse_tweet(line);
            if (!rec) {
                out.malformed.push_back(i + 1);
                continue;
            }
            if (!window.contains(rec->created_at)) {
                ++out.out_of_window;
                continue;
            }
            out.records.emplace_back(i + 1, std::move(*rec));
        }
    });

    std::vector<TweetRecord> tweets;
    std::unordered_set<TweetId> seen;
    for (auto& chunk : chunks) {
        report.tweets_out_of_window += chunk.out_of_window;
        report.tweets_malformed += chunk.malformed.size();
        report.tweet_lines_read -= chunk.blank;  // blank lines are not records
        for (uint64_t ln : chunk.malformed)
            if (report.malformed_tweet_lines.size() < kMaxReportedLines)
                report.malformed_tweet_lines.push_back(ln);
        for (auto& [ln, rec] : chunk.records) {
            if (!seen.insert(rec.tweet_id).second) {
                ++report.tweets_duplicate;
                continue;
            }
            tweets.push_back(std::move(rec));
        }
    }
    report.tweets_indexed = tweets.size();
    if (report.tweet_lines_read > 0 &&
        static_cast<double>(report.tweets_duplicate) /
                static_cast<double>(report.tweet_lines_read) >
            options.duplicate_warn_threshold)
        report.duplicate_rate_warning = true;

    // Profiles.
    std::vector<UserProfile> profiles;
    std::unordered_set<UserId> seen_profiles;
    std::vector<std::string> profile_lines = read_lines(profiles_path);
    for (size_t i = 0; i < profile_lines.size(); ++i) {
        std::string_view line = trim(profile_lines[i]);
        if (line.empty()) continue;
        ++report.profile_lines_read;
        auto p = parse_profile(line);
        if (!p) {
            ++report.profiles_malformed;
            if (report.malformed_profile_lines.size() < kMaxReportedLines)
                report.malformed_profile_lines.push_back(i + 1);
            continue;
        }
        if (!seen_profiles.insert(p->user_id).second) {
            ++report.profiles_duplicate;
            continue;
        }
        profiles.push_back(std::move(*p));
    }
    report.profiles_indexed = profiles.size();

    return CorpusIndex(std::move(tweets), std::move(profiles), std::move(troll_ids), window,
                       std::move(report));
}

StatsReport descriptive_stats(const CorpusIndex& index) {
    StatsReport r;
    r.trolls_listed = index.troll_ids().size();
    r.tweets_total = index.tweets().size();

    std::unordered_set<UserId> present_trolls;
    std::unordered_map<UserId, uint64_t> troll_original;
    std::unordered_set<UserId> spreaders;

    auto note_if_troll = [&](std::optional<UserId> u) {
        if (u && index.is_troll(*u)) present_trolls.insert(*u);
    };

    for (const TweetRecord& t : index.tweets()) {
        if (t.is_retweet()) ++r.retweets_total;
        if (t.url_count > 0) ++r.tweets_with_url;

        bool author_is_troll = index.is_troll(t.author_id);
        if (author_is_troll) {
            present_trolls.insert(t.author_id);
            if (!t.is_retweet()) ++troll_original[t.author_id];
        }
        note_if_troll(t.retweeted_user_id);
        note_if_troll(t.replied_to_user_id);
        note_if_troll(t.quoted_user_id);
        for (UserId m : t.mentioned_user_ids) note_if_troll(m);

        if (t.is_retweet() && index.is_troll(*t.retweeted_user_id)) {
            ++r.troll_received_retweets_total;
            ++r.troll_received_retweets[*t.retweeted_user_id];
            if (author_is_troll)
                ++r.troll_to_troll_retweets;
            else
                spreaders.insert(t.author_id);
        }
    }

    r.distinct_users = index.authors().size();
    r.trolls_present = present_trolls.size();
    r.trolls_with_original_tweets = troll_original.size();
    for (const auto& [_, n] : troll_original) r.troll_original_tweets += n;

    r.spreader_count = spreaders.size();
    r.spreader_troll_retweets = r.troll_received_retweets_total - r.troll_to_troll_retweets;
    for (UserId s : spreaders) {
        uint64_t originals = 0, others = 0;
        for (uint32_t ti : index.tweets_by_author(s)) {
            const TweetRecord& t = index.tweets()[ti];
            if (!t.is_retweet())
                ++originals;
            else if (!index.is_troll(*t.retweeted_user_id))
                ++others;
        }
        if (originals > 0) ++r.spreaders_with_original_tweets;
        r.spreader_original_tweets += originals;
        r.spreader_other_tweets += others;
    }
    return r;
}

std::string stats_report_json(const StatsReport& report, const IngestReport& ingest) {
    json per_troll = json::object();
    for (const auto& [uid, n] : report.troll_received_retweets)
        per_troll[std::to_string(uid)] = n;

    json j = {
        {"tweets_total", report.tweets_total},
        {"retweets_total", report.retweets_total},
        {"distinct_users", report.distinct_users},
        {"tweets_with_url", report.tweets_with_url},
        {"trolls",
         {{"listed", report.trolls_listed},
          {"present", report.trolls_present},
          {"with_original_tweets", report.trolls_with_original_tweets},
          {"original_tweets", report.troll_original_tweets},
          {"troll_to_troll_retweets", report.troll_to_troll_retweets},
          {"received_retweets_total", report.troll_received_retweets_total},
          {"received_retweets_by_troll", per_troll}}},
        {"spreaders",
         {{"count", report.spreader_count},
          {"troll_retweets_total", report.spreader_troll_retweets},
          {"with_original_tweets", report.spreaders_with_original_tweets},
          {"original_tweets", report.spreader_original_tweets},
          {"other_tweets", report.spreader_other_tweets}}},
        {"ingest",
         {{"tweet_lines_read", ingest.tweet_lines_read},
          {"tweets_indexed", ingest.tweets_indexed},
          {"tweets_malformed", ingest.tweets_malformed},
          {"tweets_out_of_window", ingest.tweets_out_of_window},
          {"tweets_duplicate", ingest.tweets_duplicate},
          {"duplicate_rate_warning", ingest.duplicate_rate_warning},
          {"malformed_tweet_lines", ingest.malformed_tweet_lines},
          {"profile_lines_read", ingest.profile_lines_read},
          {"profiles_indexed", ingest.profiles_indexed},
          {"profiles_malformed", ingest.profiles_malformed},
          {"profiles_duplicate", ingest.profiles_duplicate},
          {"authors_without_profile", ingest.authors_without_profile},
          {"profile_age_violations", ingest.profile_age_violations}}},
    };
    return j.dump(2) + "\n";
}

std::vector<SpreaderLabel> label_spreaders(const CorpusIndex& index) {
    if (index.troll_ids().empty())
        throw DataError("label_spreaders: troll list is empty; spreader outcome undefined");
    std::vector<SpreaderLabel> labels;
    labels.reserve(index.authors().size());
    for (UserId uid : index.authors()) {
        if (index.is_troll(uid)) continue;
        SpreaderLabel label;
        label.user_id = uid;
        for (uint32_t ti : index.tweets_by_author(uid)) {
            const TweetRecord& t = index.tweets()[ti];
            if (t.is_retweet() && index.is_troll(*t.retweeted_user_id))
                ++label.troll_retweet_count;
        }
        label.is_spreader = label.troll_retweet_count >= 1;
        labels.push_back(label);
    }
    return labels;
}

}  // namespace trollcast
