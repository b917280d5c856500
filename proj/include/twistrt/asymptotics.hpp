#pragma once

#include <functional>
#include <vector>

#include "twistrt/geometry.hpp"
#include "twistrt/potential.hpp"
#include "twistrt/quantum_inv.hpp"

namespace twistrt {

struct Prediction {
    int r = 0;
    cplx leading;      // may overflow for large r; log_leading is always valid
    cplx log_leading;  // continuous log: log(prefactor) + (N+1/2) zeta
    std::vector<cplx> kappa;
    cplx predicted;
};

struct ReportRow {
    int r = 0;
    cplx rt;
    double log_abs = 0.0, arg = 0.0;
    cplx ratio;  // RT / leading
    double vol_est = 0.0, cs_est = 0.0, err_vol = 0.0;
    double log_max_term = 0.0;
    bool from_cache = false;
};

struct AsymptoticReport {
    SurgeryParams params;
    AsymptoticConstants constants;
    ComplexVolume volume;
    bool admissible = true;
    std::vector<ReportRow> rows;
};

struct KappaFit {
    std::vector<cplx> kappa;
    double condition = 1.0;
    std::vector<double> residual;  // |ratio - 1 - sum kappa_i (4 pi i/r)^i| per input row
};

// (-1)^{p+1} i e^{sigma(3/r+(r+1)/4) pi i} omega / 2; the 1/2 collects the four symmetric saddles
cplx leading_prefactor(const SurgeryParams& pq, const AsymptoticConstants& c, const RootData& root);

// arg of leading_prefactor without reduction: the sigma (r+1)/4 pi part is kept whole,
// so (4 pi/r) times it stays continuous in r
double prefactor_phase(const SurgeryParams& pq, const AsymptoticConstants& c, const RootData& root);

Prediction predict_rt(const SurgeryParams& pq, const AsymptoticConstants& c, const RootData& root,
                      const std::vector<cplx>& kappa = {});

cplx ratio_to_leading(const RTValue& rt, const Prediction& pred);

KappaFit fit_kappa(const std::vector<ReportRow>& rows, int depth);

cplx saddle_leading(const Mat3c& A, double n_scale);

cplx t2_slice(double c1, double c3);
double slice_convexity(double c1, double c3, cplx theta2);

using RTSource = std::function<RTValue(int r)>;

struct VerifyOptions {
    LatticeOptions lattice;
    RTSource source;  // default: rt_lattice with the options above
    bool parallel_rows = false;
};

AsymptoticReport verify_conjecture(const SurgeryParams& pq, const std::vector<int>& r_values,
                                   const VerifyOptions& opt = {});

}  // namespace twistrt
