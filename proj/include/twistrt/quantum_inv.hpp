#pragma once

#include "twistrt/special_fn.hpp"

namespace twistrt {

enum class SumPath { definitional, lattice };
enum class Precision { double_, extended };

struct RTValue {
    cplx value;
    double log_abs = 0.0;  // log|RT|, valid even when value over/underflows
    double arg = 0.0;
    double log_max_term = 0.0;  // log of the largest summand magnitude (with prefactor)
    int r = 0;
    SumPath path = SumPath::lattice;
};

struct LatticeOptions {
    bool parallel = true;
    int threads = 0;  // 0: OpenMP default
    Precision precision = Precision::double_;
};

// Calibrated bound on (log max term - log|RT|)/N at (6,27), r <= 401 (largest measured rate 0.122).
inline constexpr double kCancellationRate = 0.13;

// (log max term - log|RT|) / N
double cancellation_rate(const RTValue& v);

int signature_framed(int q);

cplx unknot_bracket(const RootData& root);

// J_m(K_p; t); J_r vanishes identically (every Pochhammer numerator hits index >= r)
cplx colored_jones_root(int p, int m, const RootData& root);
cplx colored_jones_root(int p, int m, const PochhammerTable& tab);

// kappa_r = (sin(2pi/r)/sqrt r)^2 e^{sigma(3/r+(r+1)/4) pi i}
cplx kappa_r(int q, const RootData& root, int sigma_override = 0);

RTValue rt_definitional(const SurgeryParams& params, const RootData& root, int sigma_override = 0);
RTValue rt_lattice(const SurgeryParams& params, const RootData& root, const LatticeOptions& opt = {});

// reference implementations of the lattice kernel, exposed for the benchmark
RTValue rt_lattice_serial(const SurgeryParams& params, const RootData& root, Precision prec = Precision::double_);
RTValue rt_lattice_parallel(const SurgeryParams& params, const RootData& root, Precision prec = Precision::double_,
                            int threads = 0);

}  // namespace twistrt
