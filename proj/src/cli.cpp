#include "twistrt/cli.hpp"

#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "twistrt/asymptotics.hpp"
#include "twistrt/cache.hpp"

namespace twistrt {

namespace {

using json = nlohmann::ordered_json;

struct Config {
    int p = 6, q = 27;
    int r = 0;
    int r_min = 51, r_max = 201, step = 50;
    std::string output = "text";
    std::string precision = "double";
    int threads = 0;
    std::string cache_path;
    std::string theta;
    std::string m = "0,0,0";
    bool real = false;
    int depth = 1;
};

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// "0.8", "-0.1i", "0.808058-0.111315i"
cplx parse_complex(std::string s) {
    auto bad = [&] { return DomainError("cannot parse complex number '" + s + "'"); };
    if (s.empty()) throw bad();
    if (s.back() != 'i') {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw bad();
        return v;
    }
    std::string body = s.substr(0, s.size() - 1);
    size_t split = std::string::npos;
    for (size_t i = 1; i < body.size(); ++i)
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') split = i;
    double re = 0, im = 0;
    try {
        if (split == std::string::npos) {
            im = (body.empty() || body == "+") ? 1.0 : (body == "-" ? -1.0 : std::stod(body));
        } else {
            re = std::stod(body.substr(0, split));
            std::string ims = body.substr(split);
            im = ims == "+" ? 1.0 : (ims == "-" ? -1.0 : std::stod(ims));
        }
    } catch (const std::logic_error&) {
        throw bad();
    }
    return {re, im};
}

template <typename T>
std::vector<T> split_list(const std::string& s, auto conv) {
    std::vector<T> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(conv(tok));
    return out;
}

Theta3 parse_theta(const std::string& s) {
    auto v = split_list<cplx>(s, parse_complex);
    if (v.size() != 3) throw DomainError("--theta needs three comma-separated components");
    return {v[0], v[1], v[2]};
}

FourierIndex parse_m(const std::string& s) {
    auto v = split_list<int>(s, [](const std::string& t) { return std::stoi(t); });
    if (v.size() != 3) throw DomainError("--m needs three comma-separated integers");
    return {v[0], v[1], v[2]};
}

Precision parse_precision(const std::string& s) {
    if (s == "double") return Precision::double_;
    if (s == "extended") return Precision::extended;
    throw DomainError("--precision must be double or extended");
}

void check_r(int r) {
    if (r < 3 || r % 2 == 0) throw DomainError("r must be odd and >= 3");
}

std::vector<int> r_range(const Config& c) {
    if (c.r > 0) {
        check_r(c.r);
        return {c.r};
    }
    check_r(c.r_min);
    if (c.step <= 0 || c.step % 2 != 0) throw DomainError("--step must be positive and even");
    if (c.r_max < c.r_min) throw DomainError("--r-max below --r-min");
    std::vector<int> rs;
    for (int r = c.r_min; r <= c.r_max; r += c.step) rs.push_back(r);
    return rs;
}

// key/value emission shared by the non-tabular commands
void emit_kv(const json& j, const std::string& mode, std::ostream& out) {
    if (mode == "json") {
        out << j.dump(2) << '\n';
        return;
    }
    std::function<void(const std::string&, const json&)> walk = [&](const std::string& prefix, const json& v) {
        if (v.is_object()) {
            for (auto it = v.begin(); it != v.end(); ++it) walk(prefix.empty() ? it.key() : prefix + "." + it.key(), it.value());
        } else if (v.is_array()) {
            for (size_t i = 0; i < v.size(); ++i) walk(prefix + "[" + std::to_string(i) + "]", v[i]);
        } else {
            std::string val;
            if (v.is_number_float())
                val = fmt(v.get<double>());
            else if (v.is_string())
                val = v.get<std::string>();
            else
                val = v.dump();
            out << prefix << (mode == "csv" ? "," : ": ") << val << '\n';
        }
    };
    if (mode == "csv") out << "key,value\n";
    walk("", j);
}

json params_json(const Config& c) { return {{"p", c.p}, {"q", c.q}}; }

int cmd_rt(const Config& c, std::ostream& out) {
    check_r(c.r);
    SurgeryParams pq{c.p, c.q};
    RootData root(c.r);
    LatticeOptions lo;
    lo.threads = c.threads;
    lo.precision = parse_precision(c.precision);
    RTValue v = rt_lattice(pq, root, lo);
    json j = {{"version", kReportVersion}, {"params", params_json(c)}, {"r", c.r},
              {"rt_re", v.value.real()}, {"rt_im", v.value.imag()}, {"log_abs", v.log_abs}, {"arg", v.arg}};
    if (c.r <= 31) {
        RTValue d = rt_definitional(pq, root);
        j["definitional_re"] = d.value.real();
        j["definitional_im"] = d.value.imag();
        j["crosscheck_rel"] = std::abs(d.value - v.value) / std::abs(d.value);
    }
    emit_kv(j, c.output, out);
    return kExitOk;
}

int cmd_critical(const Config& c, std::ostream& out) {
    SurgeryParams pq{c.p, c.q};
    auto k = asymptotic_constants(pq);
    const auto& th = k.crit.theta;
    json j = {{"version", kReportVersion},
              {"params", params_json(c)},
              {"theta", {{"theta1_re", th[0].real()}, {"theta1_im", th[0].imag()}, {"theta2_re", th[1].real()},
                         {"theta2_im", th[1].imag()}, {"theta3_re", th[2].real()}, {"theta3_im", th[2].imag()}}},
              {"grad_norm", k.crit.grad_norm},
              {"zeta_re", k.zeta.real()},
              {"zeta_im", k.zeta.imag()},
              {"two_pi_zeta_re", 2 * kPi * k.zeta_R},
              {"omega_re", k.omega.real()},
              {"omega_im", k.omega.imag()},
              {"H_re", k.H_det.real()},
              {"H_im", k.H_det.imag()},
              {"in_S", in_S(pq)}};
    emit_kv(j, c.output, out);
    return kExitOk;
}

int cmd_volume(const Config& c, std::ostream& out) {
    SurgeryParams pq{c.p, c.q};
    auto cp = solve_critical(pq);
    auto s = solve_gluing(pq, cp);
    auto cv = complex_volume(pq, s);
    auto res = gluing_residuals(pq, s);
    json j = {{"version", kReportVersion},
              {"params", params_json(c)},
              {"shapes", {{"x_re", s.x.real()}, {"x_im", s.x.imag()}, {"y_re", s.y.real()}, {"y_im", s.y.imag()},
                          {"z_re", s.z.real()}, {"z_im", s.z.imag()}, {"w_re", s.w.real()}, {"w_im", s.w.imag()}}},
              {"max_residual", std::max({res[0], res[1], res[2], res[3]})},
              {"vol", cv.vol},
              {"cs", cv.cs},
              {"series_order2", volume_series(pq, 2)},
              {"series_order3", volume_series(pq, 3)},
              {"series_order4", volume_series(pq, 4)}};
    emit_kv(j, c.output, out);
    return kExitOk;
}

int cmd_verify(const Config& c, std::ostream& out, std::ostream& err) {
    SurgeryParams pq{c.p, c.q};
    auto rs = r_range(c);
    if (!in_S(pq)) err << "warning: (p,q) = (" << c.p << "," << c.q << ") is outside the admissible set S\n";
    RTCache cache(c.cache_path.empty() ? default_cache_path() : c.cache_path);
    cache.load();
    if (cache.corrupt_lines() > 0) err << "warning: skipped " << cache.corrupt_lines() << " corrupt cache lines\n";
    LatticeOptions lo;
    lo.threads = c.threads;
    lo.precision = parse_precision(c.precision);
    size_t computed = 0;
    VerifyOptions vo;
    vo.lattice = lo;
    vo.source = [&](int r) {
        if (auto hit = cache.lookup(c.p, c.q, r)) return *hit;
        RTValue v = rt_lattice(pq, RootData(r), lo);
        ++computed;
        cache.store(make_record(c.p, c.q, v));
        return v;
    };
    auto rep = verify_conjecture(pq, rs, vo);
    err << "cache: hits=" << cache.hits() << " misses=" << cache.misses() << " rows=" << rep.rows.size()
        << " computed=" << computed << '\n';

    if (c.output == "csv") {
        out << "r,rt_re,rt_im,vol_est,err_vol,cs_est\n";
        for (const auto& row : rep.rows)
            out << row.r << ',' << encode_double(row.rt.real()) << ',' << encode_double(row.rt.imag()) << ','
                << fmt(row.vol_est) << ',' << fmt(row.err_vol) << ',' << fmt(row.cs_est) << '\n';
        return kExitOk;
    }
    const auto& k = rep.constants;
    json rows = json::array();
    for (const auto& row : rep.rows)
        rows.push_back({{"r", row.r}, {"rt_re", row.rt.real()}, {"rt_im", row.rt.imag()}, {"log_abs", row.log_abs},
                        {"ratio_re", row.ratio.real()}, {"ratio_im", row.ratio.imag()}, {"vol_est", row.vol_est},
                        {"err_vol", row.err_vol}, {"cs_est", row.cs_est}});
    json j = {{"version", kReportVersion},
              {"params", params_json(c)},
              {"constants", {{"zeta_re", k.zeta.real()}, {"zeta_im", k.zeta.imag()}, {"omega_re", k.omega.real()},
                             {"omega_im", k.omega.imag()}, {"vol", rep.volume.vol}, {"cs", rep.volume.cs}}},
              {"rows", rows}};
    if (c.output == "json") {
        out << j.dump(2) << '\n';
    } else {
        out << "p=" << c.p << " q=" << c.q << " vol=" << fmt(rep.volume.vol) << " cs=" << fmt(rep.volume.cs) << '\n';
        for (const auto& row : rep.rows)
            out << "r=" << row.r << " |ratio|=" << fmt(std::abs(row.ratio)) << " vol_est=" << fmt(row.vol_est)
                << " err_vol=" << fmt(row.err_vol) << " cs_est=" << fmt(row.cs_est) << '\n';
    }
    return kExitOk;
}

int cmd_potential(const Config& c, std::ostream& out) {
    if (c.theta.empty()) throw DomainError("--theta is required");
    SurgeryParams pq{c.p, c.q};
    Theta3 th = parse_theta(c.theta);
    json j = {{"version", kReportVersion}, {"params", params_json(c)}};
    if (c.real) {
        for (const auto& t : th)
            if (t.imag() != 0.0) throw DomainError("--real needs real theta");
        double v = real_potential({th[0].real(), th[1].real(), th[2].real()});
        j["v"] = v;
        j["two_pi_v"] = 2 * kPi * v;
    } else {
        cplx V = potential(pq, th);
        j["V_re"] = V.real();
        j["V_im"] = V.imag();
        j["two_pi_re_V"] = 2 * kPi * V.real();
    }
    emit_kv(j, c.output, out);
    return kExitOk;
}

int cmd_region(const Config& c, std::ostream& out) {
    SurgeryParams pq{c.p, c.q};
    json j = {{"version", kReportVersion}, {"params", params_json(c)}, {"in_S", in_S(pq)}};
    if (!c.theta.empty()) {
        Theta3 th = parse_theta(c.theta);
        Real3 re{th[0].real(), th[1].real(), th[2].real()};
        j["in_D0"] = in_D0(re);
        j["in_DH"] = in_DH(re);
        j["check_26"] = check_26(re, parse_m(c.m), pq);
    }
    emit_kv(j, c.output, out);
    return kExitOk;
}

int cmd_fit(const Config& c, std::ostream& out, std::ostream& err) {
    SurgeryParams pq{c.p, c.q};
    RTCache cache(c.cache_path.empty() ? default_cache_path() : c.cache_path);
    cache.load();
    auto k = asymptotic_constants(pq);
    std::vector<ReportRow> rows;
    for (const auto& [key, rec] : cache.records()) {
        auto [p, q, r] = key;
        if (p != c.p || q != c.q) continue;
        if (r < c.r_min || r > c.r_max) continue;
        RTValue v = record_value(rec);
        ReportRow row;
        row.r = r;
        row.ratio = ratio_to_leading(v, predict_rt(pq, k, RootData(r)));
        rows.push_back(row);
    }
    err << "fit: " << rows.size() << " cached rows for (" << c.p << "," << c.q << ")\n";
    KappaFit fit = fit_kappa(rows, c.depth);
    json kap = json::array();
    for (const auto& x : fit.kappa) kap.push_back({{"re", x.real()}, {"im", x.imag()}});
    json res = json::array();
    for (size_t i = 0; i < rows.size(); ++i) res.push_back({{"r", rows[i].r}, {"residual", fit.residual[i]}});
    json j = {{"version", kReportVersion}, {"params", params_json(c)}, {"depth", c.depth},
              {"condition", fit.condition}, {"kappa", kap}, {"residuals", res}};
    emit_kv(j, c.output, out);
    return kExitOk;
}

void emit_error(int code, const std::string& msg, bool as_json, std::ostream& out, std::ostream& err) {
    if (as_json)
        out << json{{"error", {{"code", code}, {"message", msg}}}}.dump() << '\n';
    else
        err << "error: " << msg << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    bool as_json = false;
    for (size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--output" && args[i + 1] == "json") as_json = true;
    for (const auto& a : args)
        if (a == "--output=json") as_json = true;

    Config c;
    CLI::App app{"Reshetikhin-Turaev invariants of surgeries on twist knots"};
    app.require_subcommand(1);
    auto common = [&](CLI::App* s) {
        s->add_option("--p", c.p, "twist parameter p");
        s->add_option("--q", c.q, "surgery coefficient q");
        s->add_option("--output", c.output, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
        s->add_option("--threads", c.threads, "OpenMP threads (0: default)");
        s->add_option("--precision", c.precision, "double or extended")->check(CLI::IsMember({"double", "extended"}));
        s->add_option("--cache-path", c.cache_path, "JSONL cache (default: $TWISTRT_CACHE or twistrt_cache.jsonl)");
    };
    auto* rt = app.add_subcommand("rt", "RT_r via the lattice sum, cross-checked for r <= 31");
    auto* crit = app.add_subcommand("critical", "critical point, zeta, omega, H");
    auto* vol = app.add_subcommand("volume", "gluing solution and complex volume");
    auto* ver = app.add_subcommand("verify", "asymptotic verification sweep");
    auto* pot = app.add_subcommand("potential-eval", "evaluate V or v at theta");
    auto* reg = app.add_subcommand("region-check", "membership in S, D0, DH and the 26 inequalities");
    auto* fit = app.add_subcommand("fit", "fit kappa_i from cached RT values");
    for (auto* s : {rt, crit, vol, ver, pot, reg, fit}) common(s);
    rt->add_option("--r", c.r, "odd level r")->required();
    for (auto* s : {ver, fit}) {
        s->add_option("--r", c.r, "single odd level");
        s->add_option("--r-min", c.r_min, "first level");
        s->add_option("--r-max", c.r_max, "last level");
        s->add_option("--step", c.step, "even step");
    }
    fit->add_option("--depth", c.depth, "number of kappa_i to fit");
    for (auto* s : {pot, reg}) s->add_option("--theta", c.theta, "t1,t2,t3 (complex like 0.8-0.1i)");
    reg->add_option("--m", c.m, "Fourier index m1,m2,m3");
    pot->add_flag("--real", c.real, "evaluate the real potential v");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        emit_error(kExitArgs, e.what(), as_json, out, err);
        return kExitArgs;
    }

    try {
        if (*rt) return cmd_rt(c, out);
        if (*crit) return cmd_critical(c, out);
        if (*vol) return cmd_volume(c, out);
        if (*ver) return cmd_verify(c, out, err);
        if (*pot) return cmd_potential(c, out);
        if (*reg) return cmd_region(c, out);
        if (*fit) {
            if (c.r > 0) c.r_min = c.r_max = c.r;
            return cmd_fit(c, out, err);
        }
    } catch (const DomainError& e) {
        emit_error(kExitArgs, e.what(), as_json, out, err);
        return kExitArgs;
    } catch (const std::invalid_argument& e) {
        emit_error(kExitArgs, e.what(), as_json, out, err);
        return kExitArgs;
    } catch (const std::exception& e) {
        emit_error(kExitSolver, e.what(), as_json, out, err);
        return kExitSolver;
    }
    return kExitArgs;
}

}  // namespace twistrt
