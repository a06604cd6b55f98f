#pragma once

#include <complex>

#include "qaudit/qcore.hpp"

namespace qaudit {

/// Outcome of comparing |A_q(z)| (or a scaled polynomial magnitude) against
/// a theorem bound. The comparison runs in log space so that arguments far
/// outside native double range still produce meaningful slack.
struct BoundReport {
    double log_lhs = 0.0;  // ln of the computed magnitude
    double log_rhs = 0.0;  // ln of the bound
    double slack = 0.0;    // log_rhs - log_lhs
    double margin = 0.0;   // certified numerical error of the comparison
    bool holds = false;    // slack >= -margin
};

/// A_q(z) in log-scaled form, for arguments whose value overflows a double.
struct AqLog {
    LogScaled value;
    double rel_tail = 0.0;  // bound on the relative error of value
    int terms = 1;
};

/// A_q(z) = sum_k q^{k^2} (-z)^k / (q;q)_k with certified absolute tail
/// bound <= tol. Entire in z, so this always terminates: once the term
/// ratio rho_k = q^{2k+1} |z| / (1-q^{k+1}) falls below 1 the remainder is
/// dominated by a geometric series.
CertifiedValue aq_eval(std::complex<double> z, const QParam& qp, double tol = 1e-12);

/// A_q(z) for real z passed as sign_z * exp(ln_abs_z). Computed with the
/// peak term factored out, so arguments with ln|z| in the thousands are
/// fine even though the value has |ln| of order ln^2|z| / (4 |ln q|).
AqLog aq_eval_log(double ln_abs_z, int sign_z, const QParam& qp,
                  double rel_tol = 1e-13);

/// ln |A_q(z)| for arbitrary complex z; optionally reports the relative
/// error of the underlying cancellation-prone sum.
double aq_log_abs(std::complex<double> z, const QParam& qp,
                  double* rel_err = nullptr);

/// Assembles a BoundReport from log-domain sides and their relative errors.
BoundReport make_bound_report(double log_lhs, double log_rhs, double rel_lhs,
                              double rel_rhs);

/// |A_q(z)| <= exp(q |z| / (1-q)) for every complex z.
BoundReport check_exp_bound(std::complex<double> z, const QParam& qp);

/// |A_q(z)| <= (|z|/sqrt(q))^{1/2} exp(-ln^2|z| / (4 ln q)) / (q;q)_inf
/// for z != 0; throws DomainError at z = 0.
BoundReport check_gauss_bound(std::complex<double> z, const QParam& qp);

/// |A_q((1-q) z) - exp(-z)|, which tends to 0 as q -> 1.
double q1_limit_error(std::complex<double> z, double q_value);

/// ln (q;q)_inf, computed as sum log1p(-q^k); finite for all q in (0,1).
double log_qq_infinite(const QParam& qp);

}  // namespace qaudit
