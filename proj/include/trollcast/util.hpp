#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trollcast {

// Deterministic RNG used everywhere results must be reproducible across
// platforms and standard-library versions. std::shuffle and the std
// distributions are implementation-defined, so we roll our own on top of
// splitmix64.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n), n >= 1. Rejection sampling keeps it unbiased.
    uint64_t next_below(uint64_t n);

    bool next_bernoulli(double p) { return next_double() < p; }

    // Box-Muller; consumes two draws per pair, caches the spare.
    double next_normal();

    // Knuth for small lambda, normal approximation above 60.
    uint64_t next_poisson(double lambda);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Derive an independent stream, e.g. one per fold or per tree.
    Rng fork(uint64_t stream) const {
        Rng r(state_ ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
        r.next_u64();
        return r;
    }

  private:
    uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// ---- strings ----

std::string to_lower(std::string_view s);

// Lowercased tokens split on non-alphanumeric boundaries (ASCII).
std::vector<std::string> tokenize(std::string_view text);

std::vector<std::string> split(std::string_view s, char delim);

std::string_view trim(std::string_view s);

// ---- time ----

// Accepts epoch seconds ("1474000000") or ISO-8601
// ("2016-09-16T12:34:56Z", offset "+02:00", or space instead of 'T';
// a bare date-time is treated as UTC). Returns epoch seconds.
std::optional<int64_t> parse_timestamp(std::string_view s);

// UTC calendar day index of `t` relative to day 0 = `origin`'s day.
int64_t utc_day_index(int64_t t, int64_t origin);

// ---- urls ----

// Lowercased host part of a URL ("www." preserved); nullopt when no host
// can be found.
std::optional<std::string> extract_domain(std::string_view url);

// Case-insensitive domain equality treating "www." prefixes as optional
// on both sides.
bool domain_match(std::string_view a, std::string_view b);

// Canonical matching key: lowercased, leading "www." stripped.
std::string domain_key(std::string_view d);

// ---- numbers ----

// Shortest round-trip decimal representation; deterministic across runs.
std::string format_double(double v);

// ---- files ----

// Write then rename, so interrupted runs never leave half-written outputs.
void atomic_write_file(const std::filesystem::path& path, const std::string& contents);

std::string read_file(const std::filesystem::path& path);

// FNV-1a over a canonical string; used for config hashes in run records.
uint64_t fnv1a64(std::string_view s);

}  // namespace trollcast
