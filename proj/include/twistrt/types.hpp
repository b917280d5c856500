#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace twistrt {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

// Base error; the CLI maps every subclass to an exit code.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the documented domain (branch cut, strip, index range).
struct DomainError : Error {
    using Error::Error;
};

// Nonlinear solver did not converge or left its admissible region.
struct SolverError : Error {
    using Error::Error;
};

struct SurgeryParams {
    int p = 6;
    int q = 27;
};

// e^{2 pi i x}
inline cplx expi2pi(cplx x) { return std::exp(2.0 * kPi * kI * x); }

}  // namespace twistrt
