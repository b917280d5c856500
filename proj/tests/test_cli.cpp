#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "twistrt/cache.hpp"
#include "twistrt/cli.hpp"
#include "twistrt/potential.hpp"

using namespace twistrt;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "twistrt_test_cli";
    fs::create_directories(dir);
    fs::path p = dir / name;
    fs::remove_all(p);
    return p;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("verify csv format") {
    auto cache = scratch("csv.jsonl");
    Run r = run({"verify", "--p", "6", "--q", "27", "--r-min", "51", "--r-max", "201", "--step", "50", "--output", "csv",
                 "--cache-path", cache.string()});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "r,rt_re,rt_im,vol_est,err_vol,cs_est");
    int rows = 0;
    while (std::getline(in, line)) {
        CHECK(std::count(line.begin(), line.end(), ',') == 5);
        ++rows;
    }
    CHECK(rows == 4);
}

TEST_CASE("region-check outside S") {
    Run r = run({"region-check", "--p", "6", "--q", "26"});
    CHECK(r.code == 0);
    CHECK(r.out.find("in_S: false") != std::string::npos);
    Run j = run({"region-check", "--p", "6", "--q", "27", "--theta", "0,0.83,0.6", "--output", "json"});
    auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["in_S"] == true);
    CHECK(doc["in_D0"] == true);
    CHECK(doc["check_26"] == check_26({0, 0.83, 0.6}, {0, 0, 0}, {6, 27}));
}

TEST_CASE("potential-eval") {
    Run r = run({"potential-eval", "--theta", "0,0.8333333333333333,0.75", "--real", "--output", "json"});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(std::abs(doc["two_pi_v"].get<double>() - 3.552296) < 1e-5);

    Run c = run({"potential-eval", "--theta", "0,0.8270666460-0.1216893136i,0.600484", "--output", "json"});
    REQUIRE(c.code == 0);
    CHECK(std::abs(nlohmann::json::parse(c.out)["two_pi_re_V"].get<double>() - 3.563367) < 1e-5);

    CHECK(run({"potential-eval", "--theta", "0,0.8-0.1i,0.6", "--real"}).code == 2);
    CHECK(run({"potential-eval", "--theta", "0,0.8"}).code == 2);
    CHECK(run({"potential-eval", "--theta", "0,abc,0.6"}).code == 2);
}

TEST_CASE("rt cross-checks small levels") {
    Run r = run({"rt", "--p", "6", "--q", "27", "--r", "21", "--output", "json"});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["crosscheck_rel"].get<double>() < 1e-9);
    Run big = run({"rt", "--p", "6", "--q", "27", "--r", "41", "--output", "json"});
    CHECK_FALSE(nlohmann::json::parse(big.out).contains("crosscheck_rel"));
}

TEST_CASE("critical and volume reports") {
    Run c = run({"critical", "--p", "6", "--q", "27", "--output", "json"});
    REQUIRE(c.code == 0);
    auto doc = nlohmann::json::parse(c.out);
    CHECK(std::abs(doc["two_pi_zeta_re"].get<double>() - 3.564722320718) < 1e-9);
    CHECK(doc["version"] == kReportVersion);
    Run v = run({"volume", "--p", "6", "--q", "27"});
    REQUIRE(v.code == 0);
    CHECK(v.out.find("vol: 3.5647223207") != std::string::npos);
}

TEST_CASE("exit codes and error objects") {
    CHECK(run({"region-check", "--p", "6", "--q", "27"}).code == kExitOk);
    CHECK(run({"volume", "--p", "2", "--q", "2"}).code == kExitSolver);
    CHECK(run({"rt", "--p", "6", "--q", "27", "--r", "4"}).code == kExitArgs);
    CHECK(run({"rt", "--p", "6", "--q", "27"}).code == kExitArgs);
    CHECK(run({"nonsense"}).code == kExitArgs);
    CHECK(run({}).code == kExitArgs);
    CHECK(run({"verify", "--step", "3", "--cache-path", scratch("x.jsonl").string()}).code == kExitArgs);
    CHECK(run({"rt", "--r", "11", "--precision", "quad"}).code == kExitArgs);

    Run e = run({"volume", "--p", "2", "--q", "2", "--output", "json"});
    auto doc = nlohmann::json::parse(e.out);
    CHECK(doc["error"]["code"] == kExitSolver);
    CHECK_FALSE(doc["error"]["message"].get<std::string>().empty());
    Run a = run({"rt", "--r", "4", "--output", "json"});
    CHECK(nlohmann::json::parse(a.out)["error"]["code"] == kExitArgs);
    Run t = run({"rt", "--r", "4"});
    CHECK(t.out.empty());
    CHECK(t.err.find("error:") == 0);
}

TEST_CASE("cache records round-trip bit-exactly") {
    RTValue v = rt_lattice({6, 27}, RootData(51));
    RTValue back = record_value(make_record(6, 27, v));
    CHECK(back.value == v.value);
    CHECK(back.log_abs == v.log_abs);
    CHECK(back.arg == v.arg);
    CHECK(back.log_max_term == v.log_max_term);
    for (double x : {0.1, 1.0 / 3, -2.5e-300, 6.02214076e23, 5e-324})
        CHECK(decode_double(encode_double(x)) == x);
    CHECK_THROWS_AS(decode_double("1.5x"), DomainError);

    auto path = scratch("roundtrip.jsonl");
    {
        RTCache c(path.string());
        c.load();
        c.store(make_record(6, 27, v));
    }
    RTCache c(path.string());
    CHECK(c.load() == 1);
    auto hit = c.lookup(6, 27, 51);
    REQUIRE(hit.has_value());
    CHECK(hit->value == v.value);
    CHECK(hit->log_abs == v.log_abs);
    CHECK_FALSE(c.lookup(6, 27, 53).has_value());
    CHECK(c.hits() == 1);
    CHECK(c.misses() == 1);
}

TEST_CASE("duplicate key keeps the later record") {
    auto path = scratch("dup.jsonl");
    RTValue a = rt_lattice({6, 27}, RootData(21)), b = rt_lattice({6, 27}, RootData(23));
    b.r = 21;
    {
        RTCache c(path.string());
        c.store(make_record(6, 27, a));
        c.store(make_record(6, 27, b));
    }
    RTCache c(path.string());
    CHECK(c.load() == 2);
    CHECK(c.records().size() == 1);
    CHECK(c.lookup(6, 27, 21)->value == b.value);
}

TEST_CASE("corrupt lines are skipped and counted") {
    auto path = scratch("corrupt.jsonl");
    RTValue a = rt_lattice({6, 27}, RootData(21));
    {
        RTCache c(path.string());
        c.store(make_record(6, 27, a));
    }
    {
        std::ofstream out(path, std::ios::app);
        out << "{not json\n";
        out << R"({"p":6,"q":27,"r":23,"rt_re":"abc","rt_im":"0","log_abs":"0","arg":"0","version":1})" << '\n';
        out << R"({"p":6,"q":27,"r":25,"rt_re":"1","rt_im":"0","log_abs":"0","arg":"0","version":99})" << '\n';
    }
    RTCache c(path.string());
    CHECK(c.load() == 1);
    CHECK(c.corrupt_lines() == 3);

    Run r = run({"verify", "--r", "21", "--cache-path", path.string()});
    CHECK(r.code == 0);
    CHECK(r.err.find("skipped 3 corrupt cache lines") != std::string::npos);
}

TEST_CASE("unreadable cache path") {
    auto dir = scratch("a_directory");
    fs::create_directories(dir);
    RTCache c(dir.string());
    CHECK_THROWS_AS(c.load(), DomainError);
    CHECK_THROWS_AS(c.store(make_record(6, 27, rt_lattice({6, 27}, RootData(11)))), DomainError);
    CHECK(run({"verify", "--r", "11", "--cache-path", dir.string()}).code == kExitArgs);
    // a missing file is an empty cache
    RTCache missing(scratch("missing.jsonl").string());
    CHECK(missing.load() == 0);
}

TEST_CASE("second verify run is served from the cache") {
    auto path = scratch("reuse.jsonl");
    std::vector<std::string> args{"verify", "--p", "6", "--q", "27", "--r-min", "51", "--r-max", "201", "--step", "50",
                                  "--output", "json", "--cache-path", path.string()};
    Run first = run(args);
    REQUIRE(first.code == 0);
    CHECK(first.err.find("hits=0 misses=4 rows=4 computed=4") != std::string::npos);
    Run second = run(args);
    REQUIRE(second.code == 0);
    CHECK(second.err.find("hits=4 misses=0 rows=4 computed=0") != std::string::npos);
    CHECK(second.out == first.out);

    auto doc = nlohmann::json::parse(second.out);
    CHECK(doc["params"]["p"] == 6);
    for (const char* key : {"zeta_re", "zeta_im", "omega_re", "omega_im", "vol", "cs"}) CHECK(doc["constants"].contains(key));
    CHECK(doc["rows"].size() == 4);

    // fit reads the same cache
    Run f = run({"fit", "--p", "6", "--q", "27", "--depth", "1", "--output", "json", "--cache-path", path.string()});
    REQUIRE(f.code == 0);
    auto fd = nlohmann::json::parse(f.out);
    CHECK(fd["kappa"].size() == 1);
    CHECK(fd["residuals"].size() == 4);
    CHECK(run({"fit", "--depth", "3", "--cache-path", path.string()}).code == kExitArgs);
}

TEST_CASE("reports do not depend on the thread count") {
    std::vector<std::string> base{"verify", "--p", "7", "--q", "19", "--r-min", "31", "--r-max", "91", "--step", "20",
                                  "--output", "json"};
    auto a = base, b = base;
    a.insert(a.end(), {"--threads", "1", "--cache-path", scratch("t1.jsonl").string()});
    b.insert(b.end(), {"--threads", "3", "--cache-path", scratch("t3.jsonl").string()});
    Run ra = run(a), rb = run(b);
    REQUIRE(ra.code == 0);
    CHECK(ra.out == rb.out);
}

TEST_CASE("cache path from the environment") {
    const char* old = std::getenv("TWISTRT_CACHE");
    std::string saved = old ? old : "";
    ::setenv("TWISTRT_CACHE", "/tmp/somewhere.jsonl", 1);
    CHECK(default_cache_path() == "/tmp/somewhere.jsonl");
    ::unsetenv("TWISTRT_CACHE");
    CHECK(default_cache_path() == "twistrt_cache.jsonl");
    if (old) ::setenv("TWISTRT_CACHE", saved.c_str(), 1);

    // an explicit flag wins over the environment
    auto envpath = scratch("env.jsonl"), flagpath = scratch("flag.jsonl");
    ::setenv("TWISTRT_CACHE", envpath.string().c_str(), 1);
    CHECK(run({"verify", "--r", "11", "--cache-path", flagpath.string()}).code == 0);
    CHECK(fs::exists(flagpath));
    CHECK_FALSE(fs::exists(envpath));
    CHECK(run({"verify", "--r", "11"}).code == 0);
    CHECK(fs::exists(envpath));
    CHECK(read_file(envpath).find("\"r\":11") != std::string::npos);
    if (old)
        ::setenv("TWISTRT_CACHE", saved.c_str(), 1);
    else
        ::unsetenv("TWISTRT_CACHE");
}
