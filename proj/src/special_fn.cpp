#include "twistrt/special_fn.hpp"

#include <array>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bernoulli.hpp>

namespace twistrt {

RootData::RootData(int r_, int orientation_) : r(r_), N((r_ - 1) / 2), orientation(orientation_) {
    if (r < 3 || r % 2 == 0) throw DomainError("level r must be odd and >= 3");
    if (orientation != 1 && orientation != -1) throw DomainError("orientation must be +1 or -1");
}

cplx RootData::t() const { return t_quarter_power(4); }

cplx RootData::t_quarter_power(long long num) const {
    long long m = num % (2LL * r);
    if (m < 0) m += 2LL * r;
    if (m > r) m -= 2LL * r;  // angle in (-pi, pi]
    double ang = orientation * kPi * static_cast<double>(m) / r;
    return {std::cos(ang), std::sin(ang)};
}

namespace {

const std::array<double, 30>& b2n_table() {
    static const std::array<double, 30> tab = [] {
        std::array<double, 30> a{};
        for (int k = 0; k < 30; ++k) a[k] = boost::math::bernoulli_b2n<double>(k + 1);
        return a;
    }();
    return tab;
}

// |z| <= 1, Re z <= 1/2: sum B_n u^{n+1}/(n+1)! with u = -log(1-z)
cplx li2_core(cplx z) {
    cplx u = -std::log(1.0 - z);
    cplx u2 = u * u;
    cplx sum = u - 0.25 * u2;
    cplx pw = u;  // u^{2k+1}/(2k+1)!
    const auto& b = b2n_table();
    for (int k = 1; k <= 30; ++k) {
        pw *= u2 / static_cast<double>((2 * k) * (2 * k + 1));
        cplx term = b[k - 1] * pw;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace

cplx li2(cplx z) {
    const double pi2_6 = kPi * kPi / 6.0;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("li2: non-finite argument");
    if (z.imag() == 0.0 && z.real() > 1.0) throw DomainError("li2: argument on the branch cut (1,inf)");
    if (z == cplx(0.0)) return 0.0;
    if (z == cplx(1.0)) return pi2_6;
    if (std::abs(z) > 1.0) {
        cplx lz = std::log(-z);
        return -li2(1.0 / z) - pi2_6 - 0.5 * lz * lz;
    }
    if (z.real() > 0.5) return -li2_core(1.0 - z) + pi2_6 - std::log(z) * std::log(1.0 - z);
    return li2_core(z);
}

double lobachevsky(double theta) {
    double th = theta - std::floor(theta);
    if (th == 0.0) return 0.0;
    if (th > 0.5) return -lobachevsky(1.0 - th);
    return li2(expi2pi(th)).imag() / (2.0 * kPi);
}

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

cplx integrate_pieces(auto f, double a, double b) {
    cplx total = 0.0;
    double lo = a;
    while (lo < b) {
        double hi = std::min(b, lo < 4.0 ? lo + 1.0 : 2.0 * lo);
        total += GK::integrate(f, lo, hi, 12, 1e-14);
        lo = hi;
    }
    return total;
}

}  // namespace

cplx quantum_dilog(int n_level, cplx theta) {
    if (n_level < 1) throw DomainError("quantum_dilog: N must be >= 1");
    // the closed strip: at Re theta = 0 or 1 the tails still decay like e^{-|x|/h}
    if (!(theta.real() >= 0.0 && theta.real() <= 1.0)) throw DomainError("quantum_dilog: Re(theta) outside [0,1]");
    const double h = n_level + 0.5;
    const cplx c = 2.0 * theta - 1.0;

    // real pieces, written with expm1 so that x/h -> 0 keeps full precision
    auto real_piece = [&](double x) -> cplx {
        double ax = std::abs(x);
        double den = x * (-std::expm1(-2.0 * ax)) * (-std::expm1(-2.0 * ax / h));
        return std::exp(c * x - ax * (1.0 + 1.0 / h)) / den;
    };
    const double eps = 1e-15;
    double rate_pos = 2.0 * (1.0 - theta.real()) + 1.0 / h;
    double rate_neg = 2.0 * theta.real() + 1.0 / h;
    double t_pos = std::max(2.0, -std::log(eps) / rate_pos);
    double t_neg = std::max(2.0, -std::log(eps) / rate_neg);

    cplx right = integrate_pieces([&](double x) { return real_piece(x); }, 1.0, t_pos);
    cplx left = integrate_pieces([&](double u) { return real_piece(-u); }, 1.0, t_neg);

    auto arc = [&](double s) -> cplx {
        cplx x = std::exp(kI * s);
        return std::exp(c * x) / (4.0 * x * std::sinh(x) * std::sinh(x / h)) * kI * x;
    };
    // s runs from pi down to 0
    cplx mid = -GK::integrate(arc, 0.0, kPi, 12, 1e-14);
    return left + mid + right;
}

PochhammerTable pochhammer_table(const RootData& root) {
    PochhammerTable tab{root, {}};
    tab.values.resize(2 * root.N + 1);
    tab.values[0] = 1.0;
    for (int n = 1; n <= 2 * root.N; ++n) tab.values[n] = tab.values[n - 1] * (1.0 - root.t_quarter_power(4LL * n));
    return tab;
}

double quantum_integer(const RootData& root, int n) {
    return std::sin(2.0 * kPi * n / root.r) / std::sin(2.0 * kPi / root.r);
}

}  // namespace twistrt
