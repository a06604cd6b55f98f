#pragma once

// Test-only extended-precision oracles. These recompute the library's
// quantities by plain ascending summation / multiplication in long double
// (64-bit mantissa on x86-64), independent of the peak-scaled log-domain
// paths used by the implementation.

#include <cmath>
#include <complex>

namespace oracle {

using ld = long double;
using cld = std::complex<ld>;

inline ld qq_n(ld q, int n) {
    ld p = 1.0L, qk = q;
    for (int k = 1; k <= n; ++k) {
        p *= (1.0L - qk);
        qk *= q;
    }
    return p;
}

inline cld qpoch_inf(cld a, ld q, ld cutoff = 1e-25L) {
    cld p = 1.0L;
    ld qk = 1.0L;
    for (int k = 0; k < 200000; ++k) {
        if (std::abs(a) * qk < cutoff) break;
        p *= (cld(1.0L) - a * qk);
        qk *= q;
    }
    return p;
}

// A_q(z) by direct ascending summation; terms stop once negligible at
// extended precision relative to the largest term seen.
inline cld aq(cld z, ld q, int max_terms = 20000) {
    cld sum = 0.0L, term = 1.0L;
    ld qq = 1.0L, qk = 1.0L, peak = 0.0L;
    for (int k = 0; k < max_terms; ++k) {
        sum += term;
        peak = std::max(peak, std::abs(term));
        // t_{k+1}/t_k = q^{2k+1} (-z) / (1 - q^{k+1})
        const ld q2k1 = qk * qk * q;
        qq = 1.0L - qk * q;
        term *= q2k1 * (-z) / qq;
        qk *= q;
        if (std::abs(term) < 1e-28L * peak && qk * qk * q * std::abs(z) < 0.5L)
            break;
    }
    return sum;
}

inline ld aq_real(ld z, ld q) { return aq(cld(z), q).real(); }

// ln |h_n(sinh xi_n | q)| via the scaled sum, evaluated at long double.
inline ld im_scaled_log_abs(int n, ld t, ld u, ld q) {
    const ld lnq = std::log(q);
    const ld w = std::exp(n * (2.0L * t - 1.0L) * lnq) / (u * u);
    cld sum = 0.0L;
    for (int k = 0; k <= n; ++k) {
        const ld binom = qq_n(q, n) / (qq_n(q, k) * qq_n(q, n - k));
        sum += binom * std::exp((ld)k * k * lnq) *
               std::pow(cld(-w), (ld)k);
    }
    return n * std::log(u) - (ld)n * n * t * lnq + std::log(std::abs(sum));
}

// ln |S_n(x_n(t,u);q)| via the reindexed scaled sum at long double.
inline ld sw_scaled_log_abs(int n, ld t, ld u, ld q) {
    const ld lnq = std::log(q);
    const ld w = std::exp(n * (t - 2.0L) * lnq) / u;
    cld sum = 0.0L;
    for (int k = 0; k <= n; ++k)
        sum += std::exp((ld)k * k * lnq) * std::pow(cld(-w), (ld)k) /
               (qq_n(q, k) * qq_n(q, n - k));
    return n * std::log(u) + (ld)n * n * (1.0L - t) * lnq +
           std::log(std::abs(sum));
}

// Euler product-form series sum_k q^{k(k-1)/2} (-z)^k / (q;q)_k.
inline cld euler_product_series(cld z, ld q, int terms = 400) {
    cld sum = 0.0L, term = 1.0L;
    ld qk = 1.0L;
    for (int k = 0; k < terms; ++k) {
        sum += term;
        term *= qk * (-z) / (1.0L - qk * q);
        qk *= q;
    }
    return sum;
}

}  // namespace oracle
