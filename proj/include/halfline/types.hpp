#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace halfline {

using cplx = std::complex<double>;
using cplxl = std::complex<long double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double euler_gamma = 0.57721566490153286061;
inline constexpr cplx iu{0.0, 1.0};

// argument outside the principal domain, bad order, etc.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// gamma poles and resolvent poles (the latter carry the offending energy)
struct pole_error : std::domain_error {
    cplx where{};
    explicit pole_error(const std::string& msg, cplx w = {}) : std::domain_error(msg), where(w) {}
};

// parameters on the exceptional locus; transform-type operations refuse them
struct exceptional_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline double relerr(cplx got, cplx want) {
    double d = std::abs(got - want);
    double s = std::abs(want);
    return s > 0 ? d / s : d;
}

}  // namespace halfline
