#pragma once
#include <gtest/gtest.h>

#include <complex>

inline ::testing::AssertionResult complex_close(std::complex<double> a, std::complex<double> b, double tol) {
    if (std::abs(a - b) <= tol) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "got " << a << " want " << b << " |diff| " << std::abs(a - b) << " > " << tol;
}

#define EXPECT_CNEAR(a, b, tol) EXPECT_TRUE(complex_close((a), (b), (tol)))
#define EXPECT_CREL(a, b, tol)                                \
    EXPECT_TRUE([&] {                                         \
        std::complex<double> b_ = (b);                        \
        return complex_close((a), b_, (tol) * std::abs(b_)); \
    }())
