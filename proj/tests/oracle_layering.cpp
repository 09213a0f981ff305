// The shooting oracle has to stand on its own: it may not see the Bessel layer.
#include "halfline/oracle.hpp"

#ifdef HALFLINE_SPECFUN_HPP
#error "oracle.hpp pulls in specfun.hpp"
#endif

#include <cstdio>

int main() {
    using namespace halfline;
    // Dirichlet-like H_{1/2,-1}: the eigenvalue -1 is a root of the shooting residual
    auto s = OperatorSpec::kappa_family(0.5, ExtendedParam(-1.0));
    cplx r = oracle::eigen_residual(s, -1.0);
    std::printf("residual at z=-1: %.3e\n", std::abs(r));
    return std::abs(r) < 1e-7 ? 0 : 1;
}
