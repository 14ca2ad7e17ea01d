#pragma once

#include <cstdlib>
#include <string>

#include "moebius/pipeline.hpp"

namespace moebius {

struct RunConfig {
    u64 segment_size = u64(1) << 22;
    int workers = 0;               // 0 = auto
    u64 stride = 1000000;          // checkpoint stride
    std::string cache_dir;         // checkpoint directory
    std::string out_path;          // report/csv output
    bool shadow = false;           // extended-precision accumulators
    bool spot_checks = false;      // re-evaluate PASS reports at random points
    u64 lo_override = 0, hi_override = 0;

    StreamOptions stream() const {
        StreamOptions o;
        o.segment_size = segment_size;
        o.workers = workers;
        return o;
    }

    void validate() const {
        if (segment_size < 10000) throw std::invalid_argument("segment size must be >= 1e4");
        if (stride < 1) throw std::invalid_argument("stride must be >= 1");
    }

    std::string resolved_cache_dir() const {
        if (!cache_dir.empty()) return cache_dir;
        if (const char* env = std::getenv("MOEBIUS_CACHE_DIR")) return env;
        return ".moebius-cache";
    }
};

inline u64 fnv1a(const std::string& s) {
    u64 h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Semantic configuration hash: everything that can change results.  The
// worker count is deliberately excluded; results are contractually identical
// across worker counts.
inline std::string config_hash(const RunConfig& cfg, const std::string& task) {
    std::string s = "moebius-v1|" + task + "|seg=" + std::to_string(cfg.segment_size) +
                    "|stride=" + std::to_string(cfg.stride) +
                    "|prec=" + (cfg.shadow ? "shadow" : "standard") +
                    "|lo=" + std::to_string(cfg.lo_override) + "|hi=" + std::to_string(cfg.hi_override);
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(s)));
    return buf;
}

} // namespace moebius
