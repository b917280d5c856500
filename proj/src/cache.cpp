#include "twistrt/cache.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace twistrt {

std::string encode_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double decode_double(const std::string& s) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw DomainError("bad decimal: " + s);
    return v;
}

CacheRecord make_record(int p, int q, const RTValue& v) {
    CacheRecord rec;
    rec.p = p;
    rec.q = q;
    rec.r = v.r;
    rec.rt_re = encode_double(v.value.real());
    rec.rt_im = encode_double(v.value.imag());
    rec.log_abs = encode_double(v.log_abs);
    rec.arg = encode_double(v.arg);
    rec.log_max_term = encode_double(v.log_max_term);
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char ts[32];
    std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    rec.timestamp = ts;
    return rec;
}

RTValue record_value(const CacheRecord& rec) {
    RTValue v;
    v.value = {decode_double(rec.rt_re), decode_double(rec.rt_im)};
    v.log_abs = decode_double(rec.log_abs);
    v.arg = decode_double(rec.arg);
    v.log_max_term = decode_double(rec.log_max_term);
    v.r = rec.r;
    v.path = SumPath::lattice;
    return v;
}

RTCache::RTCache(std::string path) : path_(std::move(path)) {}

size_t RTCache::load() {
    records_.clear();
    corrupt_ = 0;
    if (std::filesystem::is_directory(path_)) throw DomainError("cache: unreadable path " + path_);
    std::ifstream in(path_);
    if (!in) {
        if (std::filesystem::exists(path_)) throw DomainError("cache: unreadable path " + path_);
        return 0;  // missing file is an empty cache
    }
    std::string line;
    size_t n = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            auto j = nlohmann::json::parse(line);
            CacheRecord rec;
            rec.p = j.at("p").get<int>();
            rec.q = j.at("q").get<int>();
            rec.r = j.at("r").get<int>();
            rec.rt_re = j.at("rt_re").get<std::string>();
            rec.rt_im = j.at("rt_im").get<std::string>();
            rec.log_abs = j.at("log_abs").get<std::string>();
            rec.arg = j.at("arg").get<std::string>();
            rec.log_max_term = j.value("log_max_term", std::string("0"));
            rec.version = j.at("version").get<int>();
            rec.timestamp = j.value("timestamp", std::string());
            record_value(rec);  // validates the decimals
            if (rec.version > kCacheVersion) throw DomainError("newer schema");
            records_[{rec.p, rec.q, rec.r}] = rec;
            ++n;
        } catch (const std::exception&) {
            ++corrupt_;
        }
    }
    return n;
}

std::optional<RTValue> RTCache::lookup(int p, int q, int r) {
    auto it = records_.find({p, q, r});
    if (it == records_.end()) {
        ++misses_;
        return std::nullopt;
    }
    ++hits_;
    return record_value(it->second);
}

void RTCache::store(const CacheRecord& rec) {
    nlohmann::json j = {{"p", rec.p},           {"q", rec.q},         {"r", rec.r},
                        {"rt_re", rec.rt_re},   {"rt_im", rec.rt_im}, {"log_abs", rec.log_abs},
                        {"arg", rec.arg},       {"log_max_term", rec.log_max_term},
                        {"version", rec.version}, {"timestamp", rec.timestamp}};
    std::ofstream out(path_, std::ios::app);
    if (!out) throw DomainError("cache: cannot open " + path_ + " for writing");
    out << j.dump() << '\n';
    records_[{rec.p, rec.q, rec.r}] = rec;
}

std::string default_cache_path() {
    const char* env = std::getenv("TWISTRT_CACHE");
    return (env && *env) ? std::string(env) : std::string("twistrt_cache.jsonl");
}

}  // namespace twistrt
