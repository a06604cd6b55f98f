#pragma once

#include <complex>

#include "qaudit/qcore.hpp"
#include "qaudit/ramanujan.hpp"

namespace qaudit {

/// Plancherel-Rotach scaling data for the Ismail-Masson family:
/// sinh xi_n = (q^{-nt} u - q^{nt} u^{-1}) / 2, u != 0.
struct IMScalingPoint {
    int n;
    double t;
    std::complex<double> u;
    std::complex<double> sinh_xi_n;

    IMScalingPoint(int n, double t, std::complex<double> u, const QParam& qp);
};

/// Scaling data for the Stieltjes-Wigert family: x_n = q^{-nt} u.
/// log_x_mag carries ln|x_n| exactly even when x_n overflows a double.
struct SWScalingPoint {
    int n;
    double t;
    std::complex<double> u;
    std::complex<double> x_n;
    double log_x_mag;

    SWScalingPoint(int n, double t, std::complex<double> u, const QParam& qp);
};

/// Weight evaluation carrying both the native value and its logarithm.
struct WeightValue {
    double value;
    double log_value;
};

/// h_n(sinh xi | q) summed directly from the defining q-binomial form.
/// Accurate for n <= 60; beyond that the alternating sum progressively
/// loses precision (the function still evaluates rather than refusing).
double im_eval_direct(int n, double xi, const QParam& qp);

/// h_n(sinh xi_n | q) = u^n q^{-n^2 t} sum_k [n k]_q q^{k^2} (-q^{n(2t-1)}/u^2)^k,
/// with the prefactor kept in log space. Well-defined at any n.
LogComplex im_eval_scaled(const IMScalingPoint& p, const QParam& qp);

/// w_IM(x|q) = sqrt(-2 q^{1/4} / (pi ln q)) exp( (2/ln q) asinh^2 x ).
WeightValue im_weight(double x, const QParam& qp);

/// Orthonormal h~_n(x|q) = q^{n(n+1)/4} / sqrt((q;q)_n) * h_n(x|q).
double im_orthonormal(int n, double x, const QParam& qp);

/// sqrt( (q;q)_n w_IM(sinh xi_n) / (q^{n/2} w_IM(sinh ln u)) ) h~_n(sinh xi_n)
/// at t = 1/2, u > 0. All q^{n^2}-scale exponents cancel before the single
/// final exponentiation, so the result is O(1) for any n. rel_err, when
/// given, receives a bound on the result's relative rounding error.
double im_orthonormal_scaled_bracket(const IMScalingPoint& p, const QParam& qp,
                                     double* rel_err = nullptr);

/// |h_n(sinh xi_n|q)| <= (|u|^n / q^{n^2 t}) A_q(-q^{n(2t-1)} / |u|^2).
BoundReport im_bound_check(const IMScalingPoint& p, const QParam& qp);

/// S_n(x;q) = sum_k q^{k^2} (-x)^k / ((q;q)_k (q;q)_{n-k}); same n <= 60
/// precision advisory as im_eval_direct.
std::complex<double> sw_eval_direct(int n, std::complex<double> x, const QParam& qp);
double sw_eval_direct(int n, double x, const QParam& qp);

/// S_n at the scaled argument x_n(t,u), via the k -> n-k reindex of the
/// defining sum with its (-1)^n factor kept explicit:
/// S_n = (-1)^n u^n q^{n^2(1-t)} sum_k q^{k^2} (-q^{n(t-2)}/u)^k / ((q;q)_k (q;q)_{n-k}).
LogComplex sw_eval_scaled(const SWScalingPoint& p, const QParam& qp);

/// w_SW(x;q) = sqrt(-1/(2 pi ln q)) exp( ln^2(x/sqrt q) / (2 ln q) ), x > 0.
WeightValue sw_weight(double x, const QParam& qp);

/// Orthonormal s~_n(x;q) = (-1)^n sqrt(q^n (q;q)_n) S_n(x;q).
double sw_orthonormal(int n, double x, const QParam& qp);

/// sqrt( q^{-2n} w_SW(q^{-2n} u) / ((q;q)_n w_SW(u)) ) s~_n(q^{-2n} u)
/// at t = 2, u > 0, assembled in log space like the IM bracket.
double sw_orthonormal_scaled_bracket(const SWScalingPoint& p, const QParam& qp,
                                     double* rel_err = nullptr);

/// |S_n(x_n(t,u);q)| <= |u|^n A_q(-q^{n(t-2)}/|u|) / ((q;q)_inf q^{n^2(t-1)}).
BoundReport sw_bound_check(const SWScalingPoint& p, const QParam& qp);

}  // namespace qaudit
