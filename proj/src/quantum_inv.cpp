#include "twistrt/quantum_inv.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include <omp.h>

namespace twistrt {

double cancellation_rate(const RTValue& v) {
    return (v.log_max_term - v.log_abs) / ((v.r - 1) / 2);
}

int signature_framed(int q) {
    if (q == 0) throw DomainError("zero framing: linking matrix is singular");
    return q > 0 ? 1 : -1;
}

cplx unknot_bracket(const RootData& root) {
    double r = root.r;
    return std::exp(kI * (kPi * (-3.0 / r - (r + 1.0) / 4.0)));
}

namespace {

// prod tab[num] / prod tab[den], equal indices cancelled first
cplx pochhammer_ratio(const PochhammerTable& tab, std::array<int, 2> num, std::array<int, 3> den) {
    std::array<bool, 3> used{};
    cplx top = 1.0, bottom = 1.0;
    for (int n : num) {
        bool cancelled = false;
        for (int j = 0; j < 3 && !cancelled; ++j)
            if (!used[j] && den[j] == n) used[j] = cancelled = true;
        if (!cancelled && n > 0) top *= tab[n];
    }
    for (int j = 0; j < 3; ++j)
        if (!used[j] && den[j] > 0) bottom *= tab[den[j]];
    return top / bottom;
}

}  // namespace

cplx colored_jones_root(int p, int m, const PochhammerTable& tab) {
    const RootData& root = tab.root;
    const int r = root.r;
    if (m < 1 || m > r) throw DomainError("colored_jones_root: m outside 1..2N+1");
    const double h = root.half();
    const double sm = std::sin(m * kPi / h);
    cplx sum = 0.0;
    for (int k = 0; k < m; ++k) {
        if (m + k >= r) break;
        for (int l = 0; l <= k; ++l) {
            if (k + l + 1 >= r) continue;
            // 4 * ((p+1/2) l(l+1) - m(k+1/2) + k^2/2 + 3k/2 + 1/2)
            long long x4 = (4LL * p + 2) * l * (l + 1) - static_cast<long long>(m) * (4 * k + 2) + 2LL * k * k + 6LL * k + 2;
            double sgn = ((k + l) % 2 == 0) ? 1.0 : -1.0;
            double ratio = std::sin(kPi * (2 * l + 1) / h) / sm;
            sum += sgn * ratio * root.t_quarter_power(x4) * pochhammer_ratio(tab, {k, m + k}, {k + l + 1, k - l, m - k - 1});
        }
    }
    return sum;
}

cplx colored_jones_root(int p, int m, const RootData& root) {
    return colored_jones_root(p, m, pochhammer_table(root));
}

cplx kappa_r(int q, const RootData& root, int sigma_override) {
    int sigma = sigma_override != 0 ? sigma_override : signature_framed(q);
    double r = root.r;
    double s = std::sin(2.0 * kPi / r) / std::sqrt(r);
    return s * s * std::exp(kI * (sigma * (3.0 / r + (r + 1.0) / 4.0) * kPi));
}

RTValue rt_definitional(const SurgeryParams& params, const RootData& root, int sigma_override) {
    auto tab = pochhammer_table(root);
    const int r = root.r;
    cplx sum = 0.0;
    double max_term = 0.0;
    for (int m = 0; m <= r - 2; ++m) {
        double qi = quantum_integer(root, m + 1);
        double sgn = ((static_cast<long long>(params.q) * m) % 2 == 0) ? 1.0 : -1.0;
        cplx term = qi * qi * sgn * root.t_quarter_power(static_cast<long long>(params.q) * m * (m + 2)) *
                    colored_jones_root(params.p, m + 1, tab);
        max_term = std::max(max_term, std::abs(term));
        sum += term;
    }
    cplx k = kappa_r(params.q, root, sigma_override);
    RTValue out;
    out.value = k * sum;
    out.log_abs = std::log(std::abs(out.value));
    out.arg = std::arg(out.value);
    out.log_max_term = std::log(std::abs(k) * max_term);
    out.r = r;
    out.path = SumPath::definitional;
    return out;
}

namespace {

// Per-level tables for the log-space lattice sum.
// Every summand has the form exp(logmag) * e^{pi i M/(2r)} with integer M mod 4r.
template <typename Real>
struct LatticeTables {
    int r, N;
    std::vector<long double> L;   // log |(t)_n|, kept in long double: errors here scale with N
    std::vector<long long> P;     // phase of (t)_n in units of pi/(2r)
    std::vector<Real> cosM, sinM;  // e^{pi i M/(2r)}, M = 0..4r-1

    explicit LatticeTables(int r_) : r(r_), N((r_ - 1) / 2) {
        L.assign(2 * N + 1, 0.0L);
        P.assign(2 * N + 1, 0);
        long double acc = 0.0L;
        for (int n = 1; n <= 2 * N; ++n) {
            acc += std::log(2.0L * std::fabs(std::sin(2.0L * std::numbers::pi_v<long double> * n / r)));
            L[n] = acc;
            long long s = std::max(0, n - N);
            long long v = 2LL * n * (n + 1) - static_cast<long long>(n) * r + 2LL * r * s;
            P[n] = ((v % (4LL * r)) + 4LL * r) % (4LL * r);
        }
        cosM.resize(4 * r);
        sinM.resize(4 * r);
        for (int M = 0; M < 4 * r; ++M) {
            long double ang = std::numbers::pi_v<long double> * M / (2.0L * r);
            cosM[M] = static_cast<Real>(std::cos(ang));
            sinM[M] = static_cast<Real>(std::sin(ang));
        }
    }
};

template <typename Real>
struct Neumaier {
    Real sum = 0, comp = 0;
    void add(Real x) {
        Real t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    Real value() const { return sum + comp; }
};

template <typename Real>
struct Slice {
    long double logmax = -std::numeric_limits<long double>::infinity();
    Real re = 0, im = 0;  // sum scaled by e^{-logmax}
};

template <typename Real>
Slice<Real> lattice_slice(const SurgeryParams& pq, const LatticeTables<Real>& T, int a) {
    using LD = long double;
    const int r = T.r, N = T.N;
    const long long p = pq.p, q = pq.q;
    const long long four_r = 4LL * r;
    const LD h = LD(N) + 0.5L;
    const LD pi = std::numbers::pi_v<LD>;
    const int mp = N - a;

    LD sa = std::sin((LD(a) + 0.5L) * pi / h);
    LD lsa = std::log(std::fabs(sa));
    long long base_sign = q * (N - 1 - a) + (sa < 0 ? 1 : 0);
    long long qa = (q % four_r) * (((static_cast<long long>(N - 1 - a) * (N + 1 - a)) % four_r + four_r) % four_r);

    struct Term {
        LD logmag;
        int M;
    };
    std::vector<Term> terms;
    terms.reserve(static_cast<size_t>(mp) * (mp + 1) / 2);
    LD logmax = -std::numeric_limits<LD>::infinity();

    for (int k = 0; k < mp; ++k) {
        if (mp + k >= r) break;
        LD lk = T.L[k] + T.L[mp + k] - T.L[mp - k - 1] + lsa;
        long long pk = T.P[k] + T.P[mp + k] - T.P[mp - k - 1];
        for (int l = 0; l <= k; ++l) {
            if (k + l + 1 >= r) continue;
            LD sl = std::sin(2 * pi * (LD(l) + 0.5L) / h);
            LD logmag = lk + std::log(std::fabs(sl)) - T.L[k + l + 1] - T.L[k - l];
            long long x4 = qa + (4 * p + 2) * l * (l + 1) - static_cast<long long>(mp) * (4 * k + 2) + 2LL * k * k + 6LL * k + 2;
            long long sgn = base_sign + k + l + (sl < 0 ? 1 : 0);
            long long M = 2LL * r * (sgn & 1) + 2 * (x4 % four_r) + pk - T.P[k + l + 1] - T.P[k - l];
            M %= four_r;
            if (M < 0) M += four_r;
            terms.push_back({logmag, static_cast<int>(M)});
            logmax = std::max(logmax, logmag);
        }
    }
    Slice<Real> s;
    s.logmax = logmax;
    Neumaier<Real> re, im;
    for (const auto& t : terms) {
        Real w = std::exp(static_cast<Real>(t.logmag - logmax));
        re.add(w * T.cosM[t.M]);
        im.add(w * T.sinM[t.M]);
    }
    s.re = re.value();
    s.im = im.value();
    return s;
}

template <typename Real>
RTValue lattice_finish(const SurgeryParams& pq, const RootData& root, const std::vector<Slice<Real>>& slices) {
    long double gmax = -std::numeric_limits<long double>::infinity();
    for (const auto& s : slices) gmax = std::max(gmax, s.logmax);
    Neumaier<Real> re, im;
    // fixed a-order reduction, identical for serial and parallel runs
    for (const auto& s : slices) {
        if (!std::isfinite(s.logmax)) continue;
        Real w = std::exp(static_cast<Real>(s.logmax - gmax));
        re.add(w * s.re);
        im.add(w * s.im);
    }
    Real sr = re.value(), si = im.value();
    const int r = root.r;
    int sigma = signature_framed(pq.q);
    long long num = (12LL + static_cast<long long>(r) * (r + 1)) % (8LL * r);
    double pre_arg = sigma * kPi * static_cast<double>(num) / (4.0 * r);

    RTValue out;
    out.r = r;
    out.path = SumPath::lattice;
    double mag = static_cast<double>(std::log(std::hypot(sr, si)));
    out.log_abs = static_cast<double>(gmax) + mag - std::log(static_cast<double>(r));
    out.arg = std::remainder(pre_arg + static_cast<double>(std::atan2(si, sr)), 2.0 * kPi);
    out.log_max_term = static_cast<double>(gmax) - std::log(static_cast<double>(r));
    if (root.orientation < 0) out.arg = -out.arg;
    out.value = out.log_abs < 700.0 ? std::polar(std::exp(out.log_abs), out.arg)
                                    : cplx(std::numeric_limits<double>::infinity(), 0.0);
    return out;
}

template <typename Real>
RTValue lattice_impl(const SurgeryParams& pq, const RootData& root, bool parallel, int threads) {
    LatticeTables<Real> T(root.r);
    const int N = root.N;
    std::vector<Slice<Real>> slices(2 * N);
    if (parallel) {
        int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
        for (int a = -N; a <= N - 1; ++a) slices[a + N] = lattice_slice<Real>(pq, T, a);
    } else {
        for (int a = -N; a <= N - 1; ++a) slices[a + N] = lattice_slice<Real>(pq, T, a);
    }
    return lattice_finish<Real>(pq, root, slices);
}

}  // namespace

RTValue rt_lattice_serial(const SurgeryParams& params, const RootData& root, Precision prec) {
    return prec == Precision::extended ? lattice_impl<long double>(params, root, false, 1)
                                       : lattice_impl<double>(params, root, false, 1);
}

RTValue rt_lattice_parallel(const SurgeryParams& params, const RootData& root, Precision prec, int threads) {
    return prec == Precision::extended ? lattice_impl<long double>(params, root, true, threads)
                                       : lattice_impl<double>(params, root, true, threads);
}

RTValue rt_lattice(const SurgeryParams& params, const RootData& root, const LatticeOptions& opt) {
    return opt.parallel ? rt_lattice_parallel(params, root, opt.precision, opt.threads)
                        : rt_lattice_serial(params, root, opt.precision);
}

}  // namespace twistrt
