#include "trollcast/util.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "trollcast/errors.hpp"

namespace trollcast {

uint64_t Rng::next_below(uint64_t n) {
    if (n == 0) throw InternalError("Rng::next_below(0)");
    uint64_t threshold = (0 - n) % n;
    for (;;) {
        uint64_t x = next_u64();
        if (x >= threshold) return x % n;
    }
}

double Rng::next_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = next_double();
    } while (u1 <= 0.0);
    double u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

uint64_t Rng::next_poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    if (lambda < 60.0) {
        double limit = std::exp(-lambda);
        uint64_t k = 0;
        double prod = next_double();
        while (prod > limit) {
            ++k;
            prod *= next_double();
        }
        return k;
    }
    double v = lambda + std::sqrt(lambda) * next_normal();
    if (v < 0.0) return 0;
    return static_cast<uint64_t>(std::llround(v));
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

std::vector<std::string> split(std::string_view s, char delim) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(delim, start);
        if (pos == std::string_view::npos) {
            parts.emplace_back(s.substr(start));
            break;
        }
        parts.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

std::string_view trim(std::string_view s) {
    size_t b = 0;
    while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    size_t e = s.size();
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

namespace {

bool parse_int(std::string_view s, int64_t& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

// Days since epoch for a civil date; Howard Hinnant's algorithm.
int64_t days_from_civil(int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

}  // namespace

std::optional<int64_t> parse_timestamp(std::string_view sv) {
    sv = trim(sv);
    if (sv.empty()) return std::nullopt;

    // Pure integer => epoch seconds.
    int64_t epoch = 0;
    if (parse_int(sv, epoch)) return epoch;

    // ISO-8601: YYYY-MM-DD[T ]HH:MM:SS[.frac][Z|+HH:MM|-HH:MM]
    if (sv.size() < 19) return std::nullopt;
    int64_t year = 0, month = 0, day = 0, hh = 0, mm = 0, ss = 0;
    if (!parse_int(sv.substr(0, 4), year) || sv[4] != '-' ||
        !parse_int(sv.substr(5, 2), month) || sv[7] != '-' ||
        !parse_int(sv.substr(8, 2), day))
        return std::nullopt;
    char sep = sv[10];
    if (sep != 'T' && sep != ' ') return std::nullopt;
    if (!parse_int(sv.substr(11, 2), hh) || sv[13] != ':' ||
        !parse_int(sv.substr(14, 2), mm) || sv[16] != ':' ||
        !parse_int(sv.substr(17, 2), ss))
        return std::nullopt;
    if (month < 1 || month > 12 || day < 1 || day > 31 || hh > 23 || mm > 59 || ss > 60)
        return std::nullopt;

    size_t pos = 19;
    if (pos < sv.size() && sv[pos] == '.') {
        ++pos;
        while (pos < sv.size() && std::isdigit(static_cast<unsigned char>(sv[pos]))) ++pos;
    }
    int64_t offset = 0;
    if (pos < sv.size()) {
        char c = sv[pos];
        if (c == 'Z' && pos + 1 == sv.size()) {
            offset = 0;
        } else if ((c == '+' || c == '-') && pos + 6 == sv.size() && sv[pos + 3] == ':') {
            int64_t oh = 0, om = 0;
            if (!parse_int(sv.substr(pos + 1, 2), oh) || !parse_int(sv.substr(pos + 4, 2), om))
                return std::nullopt;
            offset = (oh * 3600 + om * 60) * (c == '+' ? 1 : -1);
        } else {
            return std::nullopt;
        }
    }

    int64_t days = days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
    return days * 86400 + hh * 3600 + mm * 60 + ss - offset;
}

int64_t utc_day_index(int64_t t, int64_t origin) {
    auto floor_div = [](int64_t a, int64_t b) {
        int64_t q = a / b;
        return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
    };
    return floor_div(t, 86400) - floor_div(origin, 86400);
}

std::optional<std::string> extract_domain(std::string_view url) {
    std::string_view s = trim(url);
    if (s.empty()) return std::nullopt;
    size_t scheme = s.find("://");
    if (scheme != std::string_view::npos) s = s.substr(scheme + 3);
    size_t at = s.find('@');
    size_t slash = s.find_first_of("/?#");
    if (at != std::string_view::npos && (slash == std::string_view::npos || at < slash))
        s = s.substr(at + 1);
    slash = s.find_first_of("/?#");
    if (slash != std::string_view::npos) s = s.substr(0, slash);
    size_t colon = s.find(':');
    if (colon != std::string_view::npos) s = s.substr(0, colon);
    if (s.empty() || s.find('.') == std::string_view::npos) return std::nullopt;
    return to_lower(s);
}

std::string domain_key(std::string_view d) {
    std::string low = to_lower(trim(d));
    if (low.rfind("www.", 0) == 0) low = low.substr(4);
    return low;
}

bool domain_match(std::string_view a, std::string_view b) {
    return domain_key(a) == domain_key(b);
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc()) throw InternalError("format_double failed");
    return std::string(buf.data(), ptr);
}

void atomic_write_file(const std::filesystem::path& path, const std::string& contents) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot open for writing: " + tmp.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw DataError("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace trollcast
