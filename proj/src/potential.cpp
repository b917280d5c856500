#include "twistrt/potential.hpp"

#include <cmath>

#include "twistrt/special_fn.hpp"

namespace twistrt {

namespace {

cplx polynomial_part(const SurgeryParams& pq, const Theta3& th) {
    const double p = pq.p, q = pq.q;
    const auto& [t1, t2, t3] = th;
    return kPi * kI * (1.5 * q + (q / 2 - 1) * t1 * t1 - t1 + (2 * p + 1) * t3 * t3 - (2 * p + 3) * t3 - 2.0 * t2);
}

// log(1 - e^{2 pi i u}), principal branch
cplx L1(cplx u) { return std::log(1.0 - expi2pi(u)); }

// e^{2 pi i u}/(1 - e^{2 pi i u})
cplx W(cplx u) {
    cplx z = expi2pi(u);
    return z / (1.0 - z);
}

}  // namespace

cplx potential(const SurgeryParams& pq, const Theta3& th) {
    const auto& [t1, t2, t3] = th;
    cplx dl = kPi * kPi / 6.0 + li2(expi2pi(t2 + t3)) + li2(expi2pi(t2 - t3)) - li2(expi2pi(t2 + t1)) -
              li2(expi2pi(t2)) - li2(expi2pi(t2 - t1));
    return polynomial_part(pq, th) + dl / (2.0 * kPi * kI);
}

double real_potential(const Real3& th) {
    const auto& [t1, t2, t3] = th;
    return lobachevsky(t2 + t3) + lobachevsky(t2 - t3) - lobachevsky(t2 + t1) - lobachevsky(t2) - lobachevsky(t2 - t1);
}

cplx potential_finite(const SurgeryParams& pq, int n_level, const Theta3& th) {
    const double p = pq.p, q = pq.q;
    const double h = n_level + 0.5;
    const auto& [t1, t2, t3] = th;
    cplx poly = kPi * kI *
                ((q / 2 - 1) * t1 * t1 - t1 + (2 * p + 1) * t3 * t3 - (2 * p + 3) * t3 - 2.0 * t2 + 1.5 * q - 1.0 / 12 +
                 2.0 * t2 / h + (p - 2 * q + kVNConstant) / h - (3 * (p + q) + 2) / (6 * h * h));
    cplx ph = quantum_dilog(n_level, t2 + t3 + 0.5 / h - 1.0) + quantum_dilog(n_level, t2 - t3 + 0.5 / h) -
              quantum_dilog(n_level, t2 + t1) - quantum_dilog(n_level, t2) - quantum_dilog(n_level, t2 - t1);
    return poly + ph / h;
}

cplx potential_shifted(const SurgeryParams& pq, const Theta3& th, const FourierIndex& m) {
    return potential(pq, th) - 2.0 * kPi * kI * (double(m.m1) * th[0] + double(m.m2) * th[1] + double(m.m3) * th[2]);
}

cplx potential_finite_shifted(const SurgeryParams& pq, int n_level, const Theta3& th, const FourierIndex& m) {
    return potential_finite(pq, n_level, th) -
           2.0 * kPi * kI * (double(m.m1) * th[0] + double(m.m2) * th[1] + double(m.m3) * th[2]);
}

std::array<cplx, 3> gradient(const SurgeryParams& pq, const Theta3& th) {
    const double p = pq.p, q = pq.q;
    const auto& [t1, t2, t3] = th;
    cplx lp1 = L1(t2 + t1), lm1 = L1(t2 - t1), lp3 = L1(t2 + t3), lm3 = L1(t2 - t3), l2 = L1(t2);
    return {kPi * kI * ((q - 2) * t1 - 1.0) + lp1 - lm1,
            -2.0 * kPi * kI - lp3 - lm3 + lp1 + l2 + lm1,
            kPi * kI * ((4 * p + 2) * t3 - (2 * p + 3)) - lp3 + lm3};
}

Mat3c hessian(const SurgeryParams& pq, const Theta3& th) {
    const double p = pq.p, q = pq.q;
    const auto& [t1, t2, t3] = th;
    const cplx T = 2.0 * kPi * kI;
    cplx wp = W(t2 + t1), wm = W(t2 - t1), up = W(t2 + t3), um = W(t2 - t3), w2 = W(t2);
    Mat3c H;
    H(0, 0) = (q - 2) * kPi * kI - T * wp - T * wm;
    H(0, 1) = H(1, 0) = -T * wp + T * wm;
    H(0, 2) = H(2, 0) = 0.0;
    H(1, 1) = T * (up + um - wp - w2 - wm);
    H(1, 2) = H(2, 1) = T * (up - um);
    H(2, 2) = kPi * kI * (4 * p + 2) + T * (up + um);
    return H;
}

HessFCoeffs hess_f_coeffs(const Real3& th, const Real3& X) {
    auto form = [](double t, double x) {
        double tp = 2 * kPi * t, xp = 2 * kPi * x;
        return std::sin(tp) / (std::exp(xp) + std::exp(-xp) - 2 * std::cos(tp));
    };
    const auto& [t1, t2, t3] = th;
    const auto& [x1, x2, x3] = X;
    return {-form(t2 - t1, x2 - x1), -form(t2, x2), -form(t2 + t1, x2 + x1), form(t2 + t3, x2 + x3),
            form(t2 - t3, x2 - x3)};
}

Eigen::Matrix3d hess_f(const Real3& theta, const Real3& X) {
    auto [a, b, c, d, e] = hess_f_coeffs(theta, X);
    Eigen::Matrix3d M;
    M << a + c, c - a, 0, c - a, a + b + c + d + e, d - e, 0, d - e, d + e;
    return 2 * kPi * M;
}

Theta3 critical_seed(const SurgeryParams& pq) {
    double g1 = 1.0 / pq.p, g2 = 1.0 / pq.q;
    return {g2 - 2.0 * cplx(1, 1) * g2 * g2, std::log(cplx(1, -2)) / (2.0 * kPi * kI) + 1.0, 0.5 + g1 / 2};
}

namespace {

double norm3(const std::array<cplx, 3>& g) { return std::sqrt(std::norm(g[0]) + std::norm(g[1]) + std::norm(g[2])); }

}  // namespace

CriticalPoint solve_critical_from(const SurgeryParams& pq, const Theta3& seed) {
    if (pq.p < 2 || pq.q < 2) throw DomainError("solve_critical requires p >= 2 and q >= 2");
    Theta3 th = seed;
    auto g = gradient(pq, th);
    double gn = norm3(g);
    int it = 0;
    int polish = 0;
    for (; it < 100; ++it) {
        if (gn < 1e-12 && ++polish > 2) break;
        Mat3c H = hessian(pq, th);
        Eigen::Vector3cd rhs(g[0], g[1], g[2]);
        Eigen::Vector3cd step = H.partialPivLu().solve(rhs);
        double lam = 1.0;
        Theta3 trial;
        std::array<cplx, 3> gt;
        double gtn = 0.0;
        // step halving until the gradient norm decreases
        for (int k = 0; k < 30; ++k) {
            for (int i = 0; i < 3; ++i) trial[i] = th[i] - lam * step(i);
            try {
                gt = gradient(pq, trial);
                gtn = norm3(gt);
            } catch (const DomainError&) {
                gtn = INFINITY;
            }
            if (std::isfinite(gtn) && (gtn < gn || gn < 1e-12)) break;
            lam *= 0.5;
        }
        if (!std::isfinite(gtn)) throw SolverError("solve_critical: line search left the branch domain");
        if (gn < 1e-12 && gtn >= gn) break;  // already at rounding level
        th = trial;
        g = gt;
        gn = gtn;
    }
    if (!(gn < 1e-12)) throw SolverError("solve_critical: no convergence after 100 iterations");
    Real3 re{th[0].real(), th[1].real(), th[2].real()};
    if (!in_D0(re) || !(re[2] > 0.5 && re[2] < 0.75)) throw SolverError("solve_critical: converged outside D0");
    CriticalPoint cp;
    cp.theta = th;
    for (int i = 0; i < 3; ++i) cp.z[i] = expi2pi(th[i]);
    cp.grad_norm = gn;
    cp.zeta = potential(pq, th);
    cp.iterations = it;
    return cp;
}

CriticalPoint solve_critical(const SurgeryParams& pq) { return solve_critical_from(pq, critical_seed(pq)); }

cplx H_function(const SurgeryParams& pq, const std::array<cplx, 3>& z) {
    const double p = pq.p, q = pq.q;
    const auto& [z1, z2, z3] = z;
    cplx A = z2 / (z1 - z2), B = z1 * z2 / (1.0 - z1 * z2), C = z2 / (1.0 - z2);
    cplx D = z2 * z3 / (1.0 - z2 * z3), E = z2 / (z3 - z2);
    double h = q / 2 - 1;
    return 4.0 * A * B * (D + E) - 4.0 * (A + B) * D * E + (A + B) * C * (D + E) + (8 * p + 4) * A * B +
           (2 * p + 1) * (A + B) * C - (2 * p + q / 2) * (A + B) * (D + E) - h * C * (D + E) + 4 * h * D * E -
           (2 * p + 1) * h * (A + B + C - D - E);
}

AsymptoticConstants asymptotic_constants(const SurgeryParams& pq) {
    AsymptoticConstants c;
    c.crit = solve_critical(pq);
    const auto& [z1, z2, z3] = c.crit.z;
    c.zeta = c.crit.zeta;
    c.zeta_R = c.zeta.real();
    c.H_det = H_function(pq, c.crit.z);
    if (std::abs(c.H_det) == 0.0) throw SolverError("degenerate Hessian: H = 0");
    cplx s1 = std::sqrt(z1);
    cplx num = z2 * (z3 - 1.0 / z3) * (s1 - 1.0 / s1);
    cplx den = std::sqrt((1.0 - z2 * z3) * (1.0 - z2 / z3)) * std::sqrt(c.H_det);
    c.omega_principal = num / den;
    c.omega = -c.omega_principal;
    return c;
}

}  // namespace twistrt
