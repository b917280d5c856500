#pragma once

#include <vector>

#include "twistrt/types.hpp"

namespace twistrt {

// Odd level r, N = (r-1)/2 and the root t = e^{4 pi i/r}.
// orientation = -1 selects the conjugate root.
struct RootData {
    int r = 3;
    int N = 1;
    int orientation = 1;

    explicit RootData(int r_, int orientation_ = 1);

    cplx t() const;
    // t^x for rational x = num/4, i.e. e^{pi i num / r}, reduced exactly mod 2r
    cplx t_quarter_power(long long num) const;
    double half() const { return N + 0.5; }
};

struct PochhammerTable {
    RootData root;
    std::vector<cplx> values;  // (t)_n, n = 0..2N

    const cplx& operator[](int n) const { return values[n]; }
};

cplx li2(cplx z);

// Lobachevsky function, normalised so that Li2(e^{2 pi i th}) = pi^2/6 + pi^2 th(th-1) + 2 pi i Lambda(th)
double lobachevsky(double theta);

// phi_N on the contour (-inf,-1] u upper semicircle u [1,inf); 0 <= Re theta <= 1
cplx quantum_dilog(int n_level, cplx theta);

PochhammerTable pochhammer_table(const RootData& root);

double quantum_integer(const RootData& root, int n);

}  // namespace twistrt
