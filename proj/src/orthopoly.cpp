#include "qaudit/orthopoly.hpp"

#include <vector>

namespace qaudit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_nonzero_u(const std::complex<double>& u, const char* where) {
    if (u == std::complex<double>(0.0, 0.0))
        throw DomainError(std::string(where) + ": u must be nonzero");
}

// Prefactor (in log-polar pieces) plus the peak-scaled sum factor of a
// scaled polynomial evaluation.
struct ScaledEval {
    double pre_log;
    double pre_arg;
    ScaledSeriesSum core;
};

// h_n(sinh xi_n): sum_k [n k]_q q^{k^2} (-w)^k with w = q^{n(2t-1)} / u^2,
// prefactor u^n q^{-n^2 t}.
ScaledEval im_scaled_core(const IMScalingPoint& p, const QParam& qp) {
    const double n = p.n;
    const double ln_abs_u = std::log(std::abs(p.u));
    const double ln_w = n * (2.0 * p.t - 1.0) * qp.ln_q() - 2.0 * ln_abs_u;
    std::vector<double> lmag(p.n + 1), lscale(p.n + 1);
    for (int k = 0; k <= p.n; ++k) {
        const double k2lnq = static_cast<double>(k) * k * qp.ln_q();
        const double klnw = k * ln_w;
        lmag[k] = log_qbinomial(p.n, k, qp) + k2lnq + klnw;
        lscale[k] = std::abs(k2lnq) + std::abs(klnw) +
                    std::abs(log_qbinomial(p.n, k, qp));
    }
    // real u of either sign gives w > 0, so the phase step is exactly pi
    const double phase_step =
        (p.u.imag() == 0.0) ? M_PI : M_PI - 2.0 * std::arg(p.u);
    ScaledEval out;
    out.pre_log = n * ln_abs_u - n * n * p.t * qp.ln_q();
    out.pre_arg = n * std::arg(p.u);
    out.core = sum_log_terms(lmag, phase_step, lscale);
    return out;
}

// S_n(x_n(t,u)) after the k -> n-k reindex: prefactor (-1)^n u^n q^{n^2(1-t)}
// times sum_k q^{k^2} (-w)^k / ((q;q)_k (q;q)_{n-k}) with w = q^{n(t-2)} / u.
ScaledEval sw_scaled_core(const SWScalingPoint& p, const QParam& qp) {
    const double n = p.n;
    const double ln_abs_u = std::log(std::abs(p.u));
    const double ln_w = n * (p.t - 2.0) * qp.ln_q() - ln_abs_u;
    std::vector<double> lmag(p.n + 1), lscale(p.n + 1);
    for (int k = 0; k <= p.n; ++k) {
        const double k2lnq = static_cast<double>(k) * k * qp.ln_q();
        const double klnw = k * ln_w;
        lmag[k] = k2lnq + klnw - qp.log_qq(k) - qp.log_qq(p.n - k);
        lscale[k] = std::abs(k2lnq) + std::abs(klnw) +
                    std::abs(qp.log_qq(k)) + std::abs(qp.log_qq(p.n - k));
    }
    const double phase_step =
        (p.u.imag() == 0.0) ? (p.u.real() > 0.0 ? M_PI : 0.0)
                            : M_PI - std::arg(p.u);
    ScaledEval out;
    out.pre_log = n * ln_abs_u + n * n * (1.0 - p.t) * qp.ln_q();
    out.pre_arg = n * (std::arg(p.u) + M_PI);  // the explicit (-1)^n
    out.core = sum_log_terms(lmag, phase_step, lscale);
    return out;
}

LogComplex to_log_complex(const ScaledEval& e) {
    const double s = std::abs(e.core.sum);
    if (s == 0.0) return {kNegInf, 0.0};
    return {e.pre_log + e.core.log_scale + std::log(s),
            e.pre_arg + std::arg(e.core.sum)};
}

BoundReport bound_from(const ScaledEval& lhs, double rhs_extra_log,
                       const AqLog& aq, double rel_rhs_extra) {
    const double s = std::abs(lhs.core.sum);
    const double log_lhs =
        (s == 0.0) ? kNegInf : lhs.pre_log + lhs.core.log_scale + std::log(s);
    const double rel_lhs = (s == 0.0) ? 0.0 : lhs.core.err / s;
    const double log_rhs = lhs.pre_log + aq.value.log_mag + rhs_extra_log;
    return make_bound_report(log_lhs, log_rhs, rel_lhs,
                             aq.rel_tail + rel_rhs_extra);
}

}  // namespace

IMScalingPoint::IMScalingPoint(int n_, double t_, std::complex<double> u_,
                               const QParam& qp)
    : n(n_), t(t_), u(u_) {
    if (n < 0) throw OutOfRangeError("IMScalingPoint: n must be >= 0");
    if (!(t > 0.0)) throw DomainError("IMScalingPoint: t must be > 0");
    require_nonzero_u(u, "IMScalingPoint");
    const double s = std::exp(-n * t * qp.ln_q());  // q^{-nt}
    sinh_xi_n = 0.5 * (s * u - (1.0 / s) / u);
}

SWScalingPoint::SWScalingPoint(int n_, double t_, std::complex<double> u_,
                               const QParam& qp)
    : n(n_), t(t_), u(u_) {
    if (n < 0) throw OutOfRangeError("SWScalingPoint: n must be >= 0");
    if (!(t > 0.0)) throw DomainError("SWScalingPoint: t must be > 0");
    require_nonzero_u(u, "SWScalingPoint");
    log_x_mag = -n * t * qp.ln_q() + std::log(std::abs(u));
    x_n = std::exp(-n * t * qp.ln_q()) * u;
}

double im_eval_direct(int n, double xi, const QParam& qp) {
    if (n < 0) throw OutOfRangeError("im_eval_direct: n must be >= 0");
    CompensatedSum acc;
    for (int k = 0; k <= n; ++k) {
        const double lm = log_qbinomial(n, k, qp) +
                          static_cast<double>(k) * (k - n) * qp.ln_q() +
                          (n - 2.0 * k) * xi;
        acc.add((k % 2 == 0) ? std::exp(lm) : -std::exp(lm));
    }
    return acc.value();
}

LogComplex im_eval_scaled(const IMScalingPoint& p, const QParam& qp) {
    require_nonzero_u(p.u, "im_eval_scaled");
    return to_log_complex(im_scaled_core(p, qp));
}

WeightValue im_weight(double x, const QParam& qp) {
    const double a = std::asinh(x);
    const double log_pref =
        0.5 * (std::log(2.0) + 0.25 * qp.ln_q() - std::log(-M_PI * qp.ln_q()));
    const double lv = log_pref + (2.0 / qp.ln_q()) * a * a;
    return {std::exp(lv), lv};
}

double im_orthonormal(int n, double x, const QParam& qp) {
    const double log_norm =
        0.25 * n * (n + 1.0) * qp.ln_q() - 0.5 * qp.log_qq(n);
    return std::exp(log_norm) * im_eval_direct(n, std::asinh(x), qp);
}

double im_orthonormal_scaled_bracket(const IMScalingPoint& p, const QParam& qp,
                                     double* rel_err) {
    if (p.t != 0.5)
        throw DomainError("im_orthonormal_scaled_bracket: defined at t = 1/2");
    if (p.u.imag() != 0.0 || !(p.u.real() > 0.0))
        throw DomainError("im_orthonormal_scaled_bracket: u must be real > 0");
    const ScaledEval e = im_scaled_core(p, qp);
    if (rel_err)
        *rel_err = (e.core.sum.real() == 0.0)
                       ? std::numeric_limits<double>::infinity()
                       : e.core.err / std::abs(e.core.sum.real());
    const double n = p.n;
    const double ln_u = std::log(p.u.real());
    // sqrt of the weight ratio u^{-4nt} q^{2n^2 t^2} and of 1/q^{n/2},
    // the orthonormalisation q^{n(n+1)/4}/sqrt((q;q)_n), and the scaled
    // h_n prefactor u^n q^{-n^2 t}; the sqrt((q;q)_n) factors cancel
    // exactly and are omitted. At t = 1/2 both coefficients vanish
    // identically.
    const double a_ln_u = 0.5 * (-4.0 * n * p.t) + n;
    const double a_ln_q = 0.5 * (2.0 * n * n * p.t * p.t) - 0.25 * n +
                          0.25 * n * (n + 1.0) - n * n * p.t;
    return std::exp(a_ln_u * ln_u + a_ln_q * qp.ln_q() + e.core.log_scale) *
           e.core.sum.real();
}

BoundReport im_bound_check(const IMScalingPoint& p, const QParam& qp) {
    require_nonzero_u(p.u, "im_bound_check");
    const ScaledEval e = im_scaled_core(p, qp);
    const double ln_w = p.n * (2.0 * p.t - 1.0) * qp.ln_q() -
                        2.0 * std::log(std::abs(p.u));
    const AqLog aq = aq_eval_log(ln_w, -1, qp);
    return bound_from(e, 0.0, aq, 0.0);
}

std::complex<double> sw_eval_direct(int n, std::complex<double> x,
                                    const QParam& qp) {
    if (n < 0) throw OutOfRangeError("sw_eval_direct: n must be >= 0");
    CompensatedSum re, im;
    std::complex<double> term = 1.0 / qp.qq(n);  // k = 0
    double qk = 1.0;                             // q^k
    for (int k = 0;; ++k) {
        re.add(term.real());
        im.add(term.imag());
        if (k == n) break;
        // t_{k+1}/t_k = q^{2k+1} (-x) (1-q^{n-k}) / (1-q^{k+1})
        term *= qk * qk * qp.q() * (-x) *
                (1.0 - std::exp((n - k) * qp.ln_q())) / (1.0 - qk * qp.q());
        qk *= qp.q();
    }
    return {re.value(), im.value()};
}

double sw_eval_direct(int n, double x, const QParam& qp) {
    if (n < 0) throw OutOfRangeError("sw_eval_direct: n must be >= 0");
    CompensatedSum acc;
    double term = 1.0 / qp.qq(n);
    double qk = 1.0;
    for (int k = 0;; ++k) {
        acc.add(term);
        if (k == n) break;
        term *= qk * qk * qp.q() * (-x) *
                (1.0 - std::exp((n - k) * qp.ln_q())) / (1.0 - qk * qp.q());
        qk *= qp.q();
    }
    return acc.value();
}

LogComplex sw_eval_scaled(const SWScalingPoint& p, const QParam& qp) {
    require_nonzero_u(p.u, "sw_eval_scaled");
    return to_log_complex(sw_scaled_core(p, qp));
}

WeightValue sw_weight(double x, const QParam& qp) {
    if (!(x > 0.0)) throw DomainError("sw_weight: x must be > 0");
    const double y = std::log(x) - 0.5 * qp.ln_q();  // ln(x / sqrt q)
    const double log_pref = -0.5 * std::log(-2.0 * M_PI * qp.ln_q());
    const double lv = log_pref + y * y / (2.0 * qp.ln_q());
    return {std::exp(lv), lv};
}

double sw_orthonormal(int n, double x, const QParam& qp) {
    const double norm = std::exp(0.5 * (n * qp.ln_q() + qp.log_qq(n)));
    const double s = sw_eval_direct(n, x, qp);
    return (n % 2 == 0) ? norm * s : -norm * s;
}

double sw_orthonormal_scaled_bracket(const SWScalingPoint& p, const QParam& qp,
                                     double* rel_err) {
    if (p.t != 2.0)
        throw DomainError("sw_orthonormal_scaled_bracket: defined at t = 2");
    if (p.u.imag() != 0.0 || !(p.u.real() > 0.0))
        throw DomainError("sw_orthonormal_scaled_bracket: u must be real > 0");
    const ScaledEval e = sw_scaled_core(p, qp);
    if (rel_err)
        *rel_err = (e.core.sum.real() == 0.0)
                       ? std::numeric_limits<double>::infinity()
                       : e.core.err / std::abs(e.core.sum.real());
    const double n = p.n;
    const double ln_u = std::log(p.u.real());
    // sqrt(q^{-2n} * the weight ratio u^{-nt} q^{(n^2 t^2 + nt)/2} over
    // (q;q)_n), the orthonormalisation sqrt(q^n (q;q)_n), and the scaled
    // S_n prefactor u^n q^{n^2(1-t)}. The (q;q)_n halves cancel, as do
    // the (-1)^n of the orthonormalisation and of the reindexed sum; at
    // t = 2 the remaining coefficients vanish.
    const double a_ln_u = 0.5 * (-n * p.t) + n;
    const double a_ln_q = 0.5 * (-2.0 * n) +
                          0.25 * (n * n * p.t * p.t + n * p.t) + 0.5 * n +
                          n * n * (1.0 - p.t);
    return std::exp(a_ln_u * ln_u + a_ln_q * qp.ln_q() + e.core.log_scale) *
           e.core.sum.real();
}

BoundReport sw_bound_check(const SWScalingPoint& p, const QParam& qp) {
    require_nonzero_u(p.u, "sw_bound_check");
    const ScaledEval e = sw_scaled_core(p, qp);
    const double ln_w =
        p.n * (p.t - 2.0) * qp.ln_q() - std::log(std::abs(p.u));
    const AqLog aq = aq_eval_log(ln_w, -1, qp);
    return bound_from(e, -log_qq_infinite(qp), aq, 1e-14);
}

}  // namespace qaudit
