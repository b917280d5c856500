#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>

#include "twistrt/quantum_inv.hpp"

namespace twistrt {

inline constexpr int kCacheVersion = 1;

struct CacheRecord {
    int p = 0, q = 0, r = 0;
    std::string rt_re, rt_im;       // %.17g, round-trips bit-exactly
    std::string log_abs, arg;       // same encoding; valid when rt overflows
    std::string log_max_term;
    int version = kCacheVersion;
    std::string timestamp;
};

std::string encode_double(double x);
double decode_double(const std::string& s);

CacheRecord make_record(int p, int q, const RTValue& v);
RTValue record_value(const CacheRecord& rec);

// Append-only JSONL store keyed by (p,q,r). Later lines win.
class RTCache {
public:
    explicit RTCache(std::string path);

    // returns number of records read; corrupt lines are skipped and counted
    size_t load();
    std::optional<RTValue> lookup(int p, int q, int r);
    void store(const CacheRecord& rec);

    size_t hits() const { return hits_; }
    size_t misses() const { return misses_; }
    size_t corrupt_lines() const { return corrupt_; }
    const std::string& path() const { return path_; }
    const std::map<std::tuple<int, int, int>, CacheRecord>& records() const { return records_; }

private:
    std::string path_;
    std::map<std::tuple<int, int, int>, CacheRecord> records_;
    size_t hits_ = 0, misses_ = 0, corrupt_ = 0;
};

// TWISTRT_CACHE if set, else twistrt_cache.jsonl; an explicit flag wins over both
std::string default_cache_path();

}  // namespace twistrt
