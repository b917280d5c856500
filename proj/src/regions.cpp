#include <algorithm>

#include "twistrt/potential.hpp"

namespace twistrt {

bool in_S(const SurgeryParams& pq) {
    const int p = pq.p, q = pq.q;
    if (p < 6) return false;
    int qmin;
    if (p == 6)
        qmin = 27;
    else if (p == 7)
        qmin = 19;
    else if (p == 8)
        qmin = 17;
    else if (p <= 10)
        qmin = 15;
    else if (p <= 13)
        qmin = 14;
    else if (p <= 32)
        qmin = 13;
    else
        qmin = 12;
    return q >= qmin;
}

// theta2 <= 1 + theta1 is the support of the lattice summand ((t)_n = 0 for n >= r); it makes D' symmetric in theta1
bool in_Dprime(const Real3& th) {
    const auto& [t1, t2, t3] = th;
    return -1 <= t1 && t1 <= 1 && 0 <= t3 && t3 <= t2 && t2 <= 1 - t1 && t2 <= 1 + t1;
}

bool in_D0(const Real3& th) {
    const auto& [t1, t2, t3] = th;
    if (!in_Dprime(th)) return false;
    if (!(0.5 < t2 && t2 < 1)) return false;  // D
    return 0.02 <= t2 - t3 && t2 - t3 <= 0.7 && 1.02 <= t2 + t3 && t2 + t3 <= 1.7 && 0.2 <= t3 && t3 <= 0.8 &&
           0.5 <= t2 && t2 <= 0.909;
}

bool in_DH(const Real3& th) {
    const auto& [t1, t2, t3] = th;
    if (!in_D0(th)) return false;
    auto open = [](double v, double lo, double hi) { return lo < v && v < hi; };
    return open(t2 + t1, 0.5, 1) && open(t2 - t1, 0.5, 1) && open(t2, 0.5, 1) && open(t2 + t3, 1, 1.5) &&
           open(t2 - t3, 0, 0.5);
}

// the 26 growth inequalities for the shifted potential at Fourier index m
bool check_26(const Real3& th, const FourierIndex& m, const SurgeryParams& pq) {
    const auto& [t1, t2, t3] = th;
    const double p = pq.p, h = pq.q / 2.0;
    const double m1 = m.m1, m2 = m.m2, m3 = m.m3;
    const bool ok[26] = {
        m2 + 1 > 0,
        (2 * p + 1) * t3 < p + m2 + m3 + 2.5,
        2 * p * t3 + t2 < p + m3 + 2,
        (2 * p - 1) * t3 - t2 < p - m2 + m3,
        t2 > m2 + 0.5,
        (2 * p - 1) * t3 + t2 > p + m2 + m3 + 1,
        2 * p * t3 - t2 > p + m3,
        (2 * p + 1) * t3 > p - m2 + m3 + 0.5,
        (2 * p + 1) * t3 + (h - 1) * t1 < p + m2 + m3 + m1 + 3,
        (h - 1) * t1 < m2 + m1 + 1.5,
        t2 - h * t1 > -m1,
        (2 * p + 1) * t3 - (h - 1) * t1 < p + m2 + m3 - m1 + 2,
        (h - 1) * t1 > -m2 + m1 - 0.5,
        t2 + h * t1 > m1 + 1,
        2 * p * t3 + h * t1 < p + m3 + m1 + 2,
        2 * p * t3 - h * t1 < p + m3 - m1 + 1,
        (2 * p - 1) * t3 - t2 + (h + 1) * t1 < p - m2 + m3 + m1 + 0.5,
        (2 * p - 1) * t3 - t2 - (h + 1) * t1 < p - m2 + m2 - m1 - 0.5,
        t2 - (h + 1) * t1 > m2 - m1,
        t2 + (h + 1) * t1 > m2 + m1 + 1,
        (2 * p - 1) * t3 + t2 - (h + 1) * t1 > p + m2 + m3 - m1 + 0.5,
        (2 * p - 1) * t3 + t2 + (h + 1) * t1 > p + m2 + m3 + m1 + 1.5,
        2 * p * t3 - h * t1 > p + m3 - m1,
        2 * p * t3 + h * t1 > p + m3 + m1 + 1,
        (2 * p + 1) * t3 - (h - 1) * t1 > p - m1 + m3 - m1,
        (2 * p + 1) * t3 + (h - 1) * t1 > p - m2 + m3 + m1 + 1,
    };
    return std::all_of(std::begin(ok), std::end(ok), [](bool b) { return b; });
}

double growth_F(const Real3& X, const Real3& th, const FourierIndex& m, const SurgeryParams& pq) {
    const auto& [x1, x2, x3] = X;
    const auto& [t1, t2, t3] = th;
    const double p = pq.p, q = pq.q;
    auto piece = [](double s, double slope) { return s >= 0 ? 0.0 : slope * s; };
    double F = piece(x2 + x3, t2 + t3 - 1.5) + piece(x2 - x3, t2 - t3 - 0.5) - piece(x2, t2 - 0.5) -
               piece(x2 + x1, t2 + t1 - 0.5) - piece(x2 - x1, t2 - t1 - 0.5);
    F += (-(q / 2 - 1) * t1 + m.m1 + 0.5) * x1 + (m.m2 + 1) * x2 + (p + 1.5 + m.m3 - (2 * p + 1) * t3) * x3;
    return F;
}

}  // namespace twistrt
