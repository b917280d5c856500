#pragma once

#include <array>

#include <Eigen/Dense>

#include "twistrt/types.hpp"

namespace twistrt {

using Theta3 = std::array<cplx, 3>;
using Real3 = std::array<double, 3>;
using Mat3c = Eigen::Matrix<cplx, 3, 3>;

struct FourierIndex {
    int m1 = 0, m2 = 0, m3 = 0;
};

// Constant in the 1/(N+1/2) polynomial term of V_N, fixed by exact reproduction of the lattice summand.
inline constexpr double kVNConstant = 11.0 / 4.0;

// Numeric constants used in the complex-slice estimates.
inline constexpr double kC10 = 0.1225320;
inline constexpr double kC30 = 0.600484;

struct CriticalPoint {
    Theta3 theta;
    std::array<cplx, 3> z;
    double grad_norm = 0.0;
    cplx zeta;
    int iterations = 0;
};

struct AsymptoticConstants {
    cplx zeta;
    double zeta_R = 0.0;
    // omega with sqrt(H) on the branch Re < 0 (ratio RT/prediction -> +1)
    cplx omega;
    // omega with all three square roots principal
    cplx omega_principal;
    cplx H_det;
    CriticalPoint crit;
};

cplx potential(const SurgeryParams& pq, const Theta3& th);
double real_potential(const Real3& th);
cplx potential_finite(const SurgeryParams& pq, int n_level, const Theta3& th);
cplx potential_shifted(const SurgeryParams& pq, const Theta3& th, const FourierIndex& m);
cplx potential_finite_shifted(const SurgeryParams& pq, int n_level, const Theta3& th, const FourierIndex& m);

std::array<cplx, 3> gradient(const SurgeryParams& pq, const Theta3& th);
Mat3c hessian(const SurgeryParams& pq, const Theta3& th);

// the five Im-forms a..e at theta + iX; Hess(f) = 2 pi [[a+c, c-a, 0], [c-a, a+b+c+d+e, d-e], [0, d-e, d+e]]
struct HessFCoeffs {
    double a, b, c, d, e;
};
HessFCoeffs hess_f_coeffs(const Real3& theta, const Real3& X);
Eigen::Matrix3d hess_f(const Real3& theta, const Real3& X);

CriticalPoint solve_critical(const SurgeryParams& pq);
CriticalPoint solve_critical_from(const SurgeryParams& pq, const Theta3& seed);
Theta3 critical_seed(const SurgeryParams& pq);

cplx H_function(const SurgeryParams& pq, const std::array<cplx, 3>& z);
AsymptoticConstants asymptotic_constants(const SurgeryParams& pq);

// regions
bool in_S(const SurgeryParams& pq);
bool in_Dprime(const Real3& th);
bool in_D0(const Real3& th);
bool in_DH(const Real3& th);
bool check_26(const Real3& th, const FourierIndex& m, const SurgeryParams& pq);
double growth_F(const Real3& X, const Real3& th, const FourierIndex& m, const SurgeryParams& pq);

}  // namespace twistrt
