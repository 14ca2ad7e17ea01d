#pragma once

#include <algorithm>
#include <deque>
#include <future>
#include <thread>

#include "moebius/sieve.hpp"

namespace moebius {

struct StreamOptions {
    u64 segment_size = u64(1) << 22;
    int workers = 0;          // 0 = auto
    bool need_mu = true;
    bool need_lambda = true;

    int effective_workers() const {
        if (workers > 0) return workers;
        unsigned hw = std::thread::hardware_concurrency();
        return hw ? static_cast<int>(std::min(hw, 4u)) : 1;
    }
};

struct SegmentData {
    SegmentSpec spec;
    std::vector<i8> mu;             // present when need_mu
    std::vector<MangoldtEntry> pp;  // present when need_lambda
};

// Sieves segments ahead on worker threads; the consumer receives them
// strictly in order.  Segment contents are exact integers, so the worker
// count and the segment split never change what the consumer sees.
class SegmentPipeline {
public:
    SegmentPipeline(u64 first_n, u64 last_n, const StreamOptions& opt)
        : opt_(opt), next_lo_(first_n), last_(last_n) {
        base_primes_ = simple_sieve(isqrt(last_n));
        const int inflight = std::max(1, opt_.effective_workers());
        for (int i = 0; i < inflight && next_lo_ <= last_; ++i) enqueue();
    }

    bool next(SegmentData& out) {
        if (queue_.empty()) return false;
        out = queue_.front().get();
        queue_.pop_front();
        if (next_lo_ <= last_) enqueue();
        return true;
    }

    const std::vector<u32>& base_primes() const { return base_primes_; }

private:
    void enqueue() {
        const u64 lo = next_lo_;
        const u64 hi = std::min(last_, (last_ - lo >= opt_.segment_size) ? lo + opt_.segment_size - 1 : last_);
        next_lo_ = hi + 1;
        const SegmentSpec spec{lo, hi};
        auto task = [this, spec]() {
            SegmentData d;
            d.spec = spec;
            if (opt_.need_mu) d.mu = std::move(sieve_mu(spec, base_primes_, opt_.segment_size).mu);
            if (opt_.need_lambda) d.pp = sieve_mangoldt(spec, base_primes_, opt_.segment_size);
            return d;
        };
        queue_.push_back(std::async(
            opt_.effective_workers() <= 1 ? std::launch::deferred : std::launch::async, task));
    }

    StreamOptions opt_;
    std::vector<u32> base_primes_;
    u64 next_lo_;
    u64 last_;
    std::deque<std::future<SegmentData>> queue_;
};

} // namespace moebius
