#include "twistrt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "twistrt/special_fn.hpp"

namespace twistrt {

std::array<double, 4> gluing_residuals(const SurgeryParams& pq, const ShapeParams& s) {
    const auto& [x, y, z, w] = std::array<cplx, 4>{s.x, s.y, s.z, s.w};
    double r1 = std::abs(x * y * z * w - 1.0);
    double r2 = std::abs((1.0 - w) * (1.0 - x) - (1.0 - y) * (1.0 - z));
    double r3 = std::abs(std::exp((2.0 * pq.p - 1) * std::log(x * z)) + (w - 1.0) / (z - 1.0));
    double r4 = std::abs(std::exp(double(pq.q) * std::log(-(w - 1.0) * x * y / (y - 1.0)) + 2.0 * std::log(x * y)) - 1.0);
    return {r1, r2, r3, r4};
}

std::array<cplx, 2> holonomy_windings(const SurgeryParams& pq, const ShapeParams& s) {
    const cplx tpi = 2.0 * kPi * kI;
    return {(double(pq.q) * s.u1 + s.v1 + tpi) / tpi, (s.u2 - double(pq.p) * s.v2 + tpi) / tpi};
}

namespace {

void fill_holonomies(ShapeParams& s) {
    using std::log;
    const cplx ipi = kPi * kI;
    s.u1 = log(s.w - 1.0) + log(s.x) + log(s.y) - log(s.y - 1.0) - ipi;
    s.v1 = 2.0 * log(s.x) + 2.0 * log(s.y) - 2.0 * ipi;
    s.u2 = log(s.w - 1.0) + log(s.x) + log(s.z) - log(s.z - 1.0) - ipi;
    s.v2 = 2.0 * log(s.x) + 2.0 * log(s.z) - 2.0 * ipi;
}

}  // namespace

ShapeParams shapes_from_critical(const SurgeryParams&, const Theta3& th) {
    const auto& [t1, t2, t3] = th;
    cplx z3 = expi2pi(t3);
    cplx B = std::exp(kI * kPi * (2.0 * t1 - 1.0)) * (1.0 - expi2pi(t2 - t1)) / (1.0 - expi2pi(t2 + t1));
    cplx c = std::exp(-kI * kPi * (2.0 * t1 + 1.0));
    cplx d = z3 * (1.0 - expi2pi(t2 - t3)) / (1.0 - expi2pi(t2 + t3));
    cplx K = d * z3 * c / B;
    ShapeParams s;
    s.x = (K * B - z3) / (K - 1.0);
    s.y = B / s.x;
    s.z = z3 / s.x;
    s.w = 1.0 + c * (B - s.x) / (s.x * B);
    fill_holonomies(s);
    return s;
}

ShapeParams solve_gluing(const SurgeryParams& pq, const CriticalPoint& cp) {
    ShapeParams seed = shapes_from_critical(pq, cp.theta);
    cplx corr = std::log(seed.x) + std::log(seed.z) - 2.0 * kPi * kI * (cp.theta[2] - 1.0);
    if (std::abs(corr) > 1e-3) throw SolverError("solve_gluing: seed branch mismatch");

    const double n = 2.0 * pq.p - 1, q = pq.q;
    cplx x = seed.x, z = seed.z;
    cplx lxz = 2.0 * kPi * kI * (cp.theta[2] - 1.0);  // tracked branch of log(xz)

    struct Eval {
        cplx E1, E2, A, Bq;
        Eigen::Matrix2cd J;
    };
    auto eval = [&](cplx x, cplx z, cplx lxz) {
        Eval e;
        cplx s = std::exp(n * lxz);
        cplx A = s * (x - 1.0) - 1.0, Bq = s * (z - 1.0) - 1.0;
        cplx Ax = n * s * (x - 1.0) / x + s, Az = n * s * (x - 1.0) / z;
        cplx Bx = n * s * (z - 1.0) / x, Bz = n * s * (z - 1.0) / z + s;
        e.E1 = A * Bq * x * z - 1.0;
        cplx U = -(z - 1.0) / (x - 1.0), Wv = -x * A;
        cplx Phi = std::exp(q * std::log(U) + (q + 2) * std::log(Wv));
        e.E2 = Phi - 1.0;
        cplx Ux = (z - 1.0) / ((x - 1.0) * (x - 1.0)), Uz = -1.0 / (x - 1.0);
        cplx Wx = -A - x * Ax, Wz = -x * Az;
        e.J(0, 0) = (Ax * Bq + A * Bx) * x * z + A * Bq * z;
        e.J(0, 1) = (Az * Bq + A * Bz) * x * z + A * Bq * x;
        e.J(1, 0) = Phi * (q * Ux / U + (q + 2) * Wx / Wv);
        e.J(1, 1) = Phi * (q * Uz / U + (q + 2) * Wz / Wv);
        e.A = A;
        e.Bq = Bq;
        return e;
    };

    Eval e = eval(x, z, lxz);
    int it = 0;
    double prev = std::numeric_limits<double>::infinity();
    for (; it < 60; ++it) {
        double res = std::hypot(std::abs(e.E1), std::abs(e.E2));
        // stop at round-off: the residual no longer shrinks by half
        if (res < 1e-14 || (res < 1e-8 && res > 0.5 * prev)) break;
        prev = res;
        Eigen::Vector2cd step = e.J.partialPivLu().solve(Eigen::Vector2cd(e.E1, e.E2));
        cplx xn = x - step(0), zn = z - step(1);
        lxz += std::log((xn * zn) / (x * z));
        x = xn;
        z = zn;
        e = eval(x, z, lxz);
    }
    ShapeParams s;
    s.x = x;
    s.z = z;
    s.y = -e.A;
    s.w = -e.Bq;
    s.iterations = it;
    fill_holonomies(s);
    // the q-th power in the last equation amplifies round-off of its base
    const double tol = 1e-10 * std::max(1.0, std::abs(double(pq.q)) / 100.0);
    for (double r : gluing_residuals(pq, s))
        if (!(r < tol)) throw SolverError("solve_gluing: gluing residual above tolerance");
    return s;
}

ShapeParams solve_gluing(const SurgeryParams& pq) { return solve_gluing(pq, solve_critical(pq)); }

cplx rogers(cplx x) {
    if (x.imag() == 0.0 && (x.real() <= 0.0 || x.real() >= 1.0)) throw DomainError("rogers: argument on a cut");
    return 0.5 * std::log(x) * std::log(1.0 - x) + li2(x);
}

double reduce_mod_pi2(double cs) {
    const double pi2 = kPi * kPi;
    double r = std::fmod(cs, pi2);
    if (r < 0) r += pi2;
    if (r >= pi2) r -= pi2;
    return r;
}

ComplexVolume complex_volume(const SurgeryParams& pq, const ShapeParams& s) {
    using std::log;
    const cplx ipi = kPi * kI;
    const double g1 = 1.0 / pq.p;
    cplx Rsum = rogers(s.w) + rogers(s.x) + rogers(1.0 / (1.0 - s.y)) + rogers(1.0 / (1.0 - s.z));
    cplx hol1 = log(s.w - 1.0) + log(s.x) + log(s.y) - log(s.y - 1.0) + ipi;
    cplx hol2 = log(s.w - 1.0) + log(s.x) + log(s.z) - log(s.z - 1.0) + ipi;
    cplx G = -Rsum / kI - kPi / 2 * (-2.0 * ipi - hol1 + g1 * (2.0 * ipi + hol2));
    return {G.real(), reduce_mod_pi2(G.imag()), G};
}

ComplexVolume complex_volume(const SurgeryParams& pq) { return complex_volume(pq, solve_gluing(pq)); }

double octahedron_volume() { return 8.0 * kPi * lobachevsky(0.25); }

double volume_series(double g1, double g2, int order) {
    if (order < 2 || order > 4) throw DomainError("volume_series: order must be 2, 3 or 4");
    const double pi2 = kPi * kPi, pi4 = pi2 * pi2;
    double v = octahedron_volume() - pi2 * (0.25 * g1 * g1 + 2 * g2 * g2);
    if (order >= 3) v += pi2 * (-g1 * g1 * g1 / 8 + 8 * g2 * g2 * g2);
    if (order >= 4)
        v += -(pi2 / 32 + pi4 / 192) * std::pow(g1, 4) - pi4 / 4 * g1 * g1 * g2 * g2 + (-16 * pi2 + pi4 / 3) * std::pow(g2, 4);
    return v;
}

double volume_series(const SurgeryParams& pq, int order) { return volume_series(1.0 / pq.p, 1.0 / pq.q, order); }

}  // namespace twistrt
