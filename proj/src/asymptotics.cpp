#include "twistrt/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace twistrt {

cplx leading_prefactor(const SurgeryParams& pq, const AsymptoticConstants& c, const RootData& root) {
    const double r = root.r;
    int sigma = signature_framed(pq.q);
    double sgn = (pq.p % 2 == 1) ? 1.0 : -1.0;  // (-1)^{p+1}
    return 0.5 * sgn * kI * std::exp(kI * (sigma * (3.0 / r + (r + 1.0) / 4.0) * kPi)) * c.omega;
}

double prefactor_phase(const SurgeryParams& pq, const AsymptoticConstants& c, const RootData& root) {
    const double r = root.r;
    int sigma = signature_framed(pq.q);
    double sgn = (pq.p % 2 == 1) ? 1.0 : -1.0;
    return sigma * (3.0 / r + (r + 1.0) / 4.0) * kPi + std::arg(0.5 * sgn * kI * c.omega);
}

Prediction predict_rt(const SurgeryParams& pq, const AsymptoticConstants& c, const RootData& root,
                      const std::vector<cplx>& kappa) {
    Prediction pr;
    pr.r = root.r;
    pr.log_leading = std::log(leading_prefactor(pq, c, root)) + root.half() * c.zeta;
    pr.leading = std::exp(pr.log_leading);
    pr.kappa = kappa;
    cplx corr = 1.0;
    cplx u = 4.0 * kPi * kI / double(root.r);
    cplx pw = 1.0;
    for (const auto& k : kappa) {
        pw *= u;
        corr += k * pw;
    }
    pr.predicted = pr.leading * corr;
    return pr;
}

cplx ratio_to_leading(const RTValue& rt, const Prediction& pred) {
    return std::exp(cplx(rt.log_abs, rt.arg) - pred.log_leading);
}

KappaFit fit_kappa(const std::vector<ReportRow>& rows, int depth) {
    if (depth < 0) throw DomainError("fit_kappa: negative depth");
    std::vector<int> rs;
    for (const auto& row : rows) rs.push_back(row.r);
    std::sort(rs.begin(), rs.end());
    if (std::unique(rs.begin(), rs.end()) - rs.begin() < depth + 2)
        throw DomainError("fit_kappa: need at least depth+2 distinct r values");
    KappaFit fit;
    const int n = static_cast<int>(rows.size());
    if (depth > 0) {
        Eigen::MatrixXcd A(n, depth);
        Eigen::VectorXcd b(n);
        for (int i = 0; i < n; ++i) {
            cplx u = 4.0 * kPi * kI / double(rows[i].r);
            cplx pw = 1.0;
            for (int j = 0; j < depth; ++j) {
                pw *= u;
                A(i, j) = pw;
            }
            b(i) = rows[i].ratio - 1.0;
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        fit.condition = sv(0) / sv(sv.size() - 1);
        if (!std::isfinite(fit.condition) || fit.condition > 1e14)
            throw SolverError("fit_kappa: ill-conditioned fit, condition " + std::to_string(fit.condition));
        Eigen::VectorXcd k = svd.solve(b);
        for (int j = 0; j < depth; ++j) fit.kappa.push_back(k(j));
    }
    for (const auto& row : rows) {
        cplx u = 4.0 * kPi * kI / double(row.r), pw = 1.0, model = 1.0;
        for (const auto& k : fit.kappa) {
            pw *= u;
            model += k * pw;
        }
        fit.residual.push_back(std::abs(row.ratio - model));
    }
    return fit;
}

cplx saddle_leading(const Mat3c& A, double n_scale) {
    cplx det = (-A).determinant();
    if (std::abs(det) == 0.0) throw DomainError("saddle_leading: singular matrix");
    return std::pow(kPi, 1.5) / (std::pow(n_scale, 1.5) * std::sqrt(det));
}

cplx t2_slice(double c1, double c3) {
    if (!(c1 >= 0 && c1 <= 0.25 && c3 >= 0.5 && c3 <= 0.75)) throw DomainError("t2_slice: (c1,c3) outside [0,1/4]x[1/2,3/4]");
    double s1 = std::sin(kPi * c1), s3 = std::sin(kPi * c3);
    cplx root = std::sqrt(cplx(std::pow(s1, 4) - s3 * s3, 0.0));
    cplx T2 = std::log(std::cos(2 * kPi * c1) - 2.0 * root) / (2.0 * kPi * kI) + 1.0;
    if (!(T2.real() > 0.5 && T2.real() < 1.0)) throw DomainError("t2_slice: Re T2 outside (1/2,1)");
    return T2;
}

double slice_convexity(double c1, double c3, cplx theta2) {
    if (!(theta2.real() > 0.5 && theta2.real() < 1 && c1 > 0 && c1 < 0.25 && c3 > 0.5 && c3 < 0.75 &&
          theta2.real() + c1 < 1))
        throw DomainError("slice_convexity: outside the slice domain");
    auto [a, b, c, d, e] = hess_f_coeffs({c1, theta2.real(), c3}, {0.0, theta2.imag(), 0.0});
    return 2 * kPi * (a + b + c + d + e);
}

AsymptoticReport verify_conjecture(const SurgeryParams& pq, const std::vector<int>& r_values, const VerifyOptions& opt) {
    AsymptoticReport rep;
    rep.params = pq;
    rep.admissible = in_S(pq);
    rep.constants = asymptotic_constants(pq);
    rep.volume = complex_volume(pq, solve_gluing(pq, rep.constants.crit));

    std::vector<int> rs = r_values;
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    for (int r : rs)
        if (r < 3 || r % 2 == 0) throw DomainError("verify: r values must be odd and >= 3");

    std::vector<RTValue> vals(rs.size());
    if (!opt.source && opt.parallel_rows) {
        LatticeOptions lo = opt.lattice;
        lo.parallel = false;
#pragma omp parallel for schedule(dynamic, 1)
        for (size_t i = 0; i < rs.size(); ++i) vals[i] = rt_lattice(pq, RootData(rs[i]), lo);
    } else {
        for (size_t i = 0; i < rs.size(); ++i)
            vals[i] = opt.source ? opt.source(rs[i]) : rt_lattice(pq, RootData(rs[i]), opt.lattice);
    }

    const auto& c = rep.constants;
    for (size_t i = 0; i < rs.size(); ++i) {
        RootData root(rs[i]);
        const RTValue& v = vals[i];
        Prediction pr = predict_rt(pq, c, root);
        ReportRow row;
        row.r = rs[i];
        row.rt = v.value;
        row.log_abs = v.log_abs;
        row.arg = v.arg;
        row.log_max_term = v.log_max_term;
        row.ratio = ratio_to_leading(v, pr);
        const double s = 4.0 * kPi / rs[i];
        cplx pref = leading_prefactor(pq, c, root);
        row.vol_est = s * (v.log_abs - std::log(std::abs(pref)));
        row.cs_est = reduce_mod_pi2(2.0 * kPi * c.zeta.imag() + s * (prefactor_phase(pq, c, root) + std::arg(row.ratio)));
        row.err_vol = std::abs(row.vol_est - rep.volume.vol);
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace twistrt
