#pragma once
// Parameter carriers shared by the library and the ODE oracle. Deliberately free
// of special-function dependencies.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "halfline/types.hpp"

namespace halfline {

// element of C u {inf} stored as num/den, scaled so that max(|num|, |den|) = 1
class ExtendedParam {
public:
    ExtendedParam() : num_(0.0), den_(1.0) {}
    ExtendedParam(cplx v) : num_(v), den_(1.0) { normalize(); }
    ExtendedParam(double v) : ExtendedParam(cplx(v, 0.0)) {}
    ExtendedParam(cplx num, cplx den) : num_(num), den_(den) {
        if (num == 0.0 && den == 0.0) throw domain_error("ExtendedParam: 0/0");
        normalize();
    }
    static ExtendedParam infinity() { return ExtendedParam(1.0, 0.0); }

    cplx num() const { return num_; }
    cplx den() const { return den_; }
    bool is_inf() const { return den_ == 0.0; }
    bool is_zero() const { return num_ == 0.0; }
    cplx value() const {
        if (is_inf()) throw domain_error("ExtendedParam: value of infinity");
        return num_ / den_;
    }
    ExtendedParam inverse() const { return ExtendedParam(den_, num_); }
    ExtendedParam conj() const { return ExtendedParam(std::conj(num_), std::conj(den_)); }
    ExtendedParam scaled(cplx s) const { return ExtendedParam(num_ * s, den_); }

    // chordal distance on the Riemann sphere
    friend double chordal(const ExtendedParam& a, const ExtendedParam& b) {
        double na = std::sqrt(std::norm(a.num_) + std::norm(a.den_));
        double nb = std::sqrt(std::norm(b.num_) + std::norm(b.den_));
        return std::abs(a.num_ * b.den_ - a.den_ * b.num_) / (na * nb);
    }

private:
    void normalize() {
        double s = std::max(std::abs(num_), std::abs(den_));
        num_ /= s;
        den_ /= s;
        // snap tiny components so 0 and inf are exact
        if (std::abs(den_) < 1e-300) den_ = 0.0;
        if (std::abs(num_) < 1e-300) num_ = 0.0;
    }
    cplx num_, den_;
};

enum class Family { Homogeneous, Kappa, Nu };

struct OperatorSpec {
    Family family = Family::Homogeneous;
    cplx m = 0.0;            // unused for Nu
    ExtendedParam kappa{};   // Kappa family
    ExtendedParam nu = ExtendedParam::infinity();  // Nu family

    static OperatorSpec homogeneous(cplx m) {
        OperatorSpec s;
        s.family = Family::Homogeneous;
        s.m = m;
        s.validate();
        return s;
    }
    static OperatorSpec kappa_family(cplx m, ExtendedParam k) {
        OperatorSpec s;
        s.family = Family::Kappa;
        s.m = m;
        s.kappa = k;
        s.validate();
        return s;
    }
    static OperatorSpec nu_family(ExtendedParam v) {
        OperatorSpec s;
        s.family = Family::Nu;
        s.nu = v;
        s.validate();
        return s;
    }

    void validate() const {
        if (!finite(m)) throw domain_error("operator spec: non-finite m");
        switch (family) {
            case Family::Homogeneous:
                if (!(m.real() > -1)) throw domain_error("H_m requires Re m > -1");
                break;
            case Family::Kappa:
                if (!(std::abs(m.real()) < 1)) throw domain_error("H_{m,kappa} requires |Re m| < 1");
                if (m == 0.0) throw domain_error("H_{m,kappa} requires m != 0 (use the nu family)");
                break;
            case Family::Nu:
                break;
        }
    }

    std::string describe() const;
};

inline std::string fmt_c(cplx z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
    return buf;
}

inline std::string fmt_e(const ExtendedParam& p) { return p.is_inf() ? "inf" : fmt_c(p.value()); }

inline std::string OperatorSpec::describe() const {
    switch (family) {
        case Family::Homogeneous: return "H_m(m=" + fmt_c(m) + ")";
        case Family::Kappa: return "H_m,kappa(m=" + fmt_c(m) + ", kappa=" + fmt_e(kappa) + ")";
        case Family::Nu: return "H_0^nu(nu=" + fmt_e(nu) + ")";
    }
    return "?";
}

}  // namespace halfline
