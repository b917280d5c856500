#pragma once

#include <array>

#include "twistrt/potential.hpp"

namespace twistrt {

struct ShapeParams {
    cplx x, y, z, w;
    cplx u1, v1, u2, v2;  // log-holonomies, principal logs
    int iterations = 0;
};

struct ComplexVolume {
    double vol = 0.0;
    double cs = 0.0;  // in [0, pi^2)
    cplx raw;         // Vol + i CS before reduction
};

// residuals of xyzw = 1, (1-w)(1-x) = (1-y)(1-z), (xz)^{2p-1} = -(w-1)/(z-1),
// (-(w-1)xy/(y-1))^q (xy)^2 = 1
std::array<double, 4> gluing_residuals(const SurgeryParams& pq, const ShapeParams& s);

// q u1 + v1 + 2 pi i and u2 - p v2 + 2 pi i, each divided by 2 pi i
std::array<cplx, 2> holonomy_windings(const SurgeryParams& pq, const ShapeParams& s);

// shapes obtained from a critical point through the correspondence
ShapeParams shapes_from_critical(const SurgeryParams& pq, const Theta3& th);

ShapeParams solve_gluing(const SurgeryParams& pq);
ShapeParams solve_gluing(const SurgeryParams& pq, const CriticalPoint& cp);

cplx rogers(cplx x);

ComplexVolume complex_volume(const SurgeryParams& pq, const ShapeParams& s);
ComplexVolume complex_volume(const SurgeryParams& pq);

double reduce_mod_pi2(double cs);

// 8 Lambda(1/4) in the normalisation of lobachevsky()
double octahedron_volume();

double volume_series(const SurgeryParams& pq, int order);
double volume_series(double gamma1, double gamma2, int order);

}  // namespace twistrt
