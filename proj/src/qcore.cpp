#include "qaudit/qcore.hpp"

#include <algorithm>

namespace qaudit {

QParam::QParam(double q, std::size_t cache_size) {
    if (!(q > 0.0) || !(q < 1.0))
        throw DomainError("QParam: q must lie in (0,1), got " + std::to_string(q));
    q_ = q;
    ln_q_ = std::log(q);
    qq_.resize(cache_size + 1);
    log_qq_.resize(cache_size + 1);
    qq_[0] = 1.0;
    log_qq_[0] = 0.0;
    double qk = 1.0;
    for (std::size_t k = 1; k <= cache_size; ++k) {
        qk *= q;
        qq_[k] = qq_[k - 1] * (1.0 - qk);
        log_qq_[k] = log_qq_[k - 1] + std::log1p(-qk);
    }
}

LogScaled log_add(const LogScaled& a, const LogScaled& b) {
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    const LogScaled& hi = (a.log_mag >= b.log_mag) ? a : b;
    const LogScaled& lo = (a.log_mag >= b.log_mag) ? b : a;
    const double d = lo.log_mag - hi.log_mag;  // <= 0
    if (hi.sign == lo.sign)
        return {hi.sign, hi.log_mag + std::log1p(std::exp(d))};
    const double m = -std::expm1(d);  // 1 - e^d in [0,1]
    if (m == 0.0) return {};          // exact cancellation
    return {hi.sign, hi.log_mag + std::log(m)};
}

LogScaled log_pow(const LogScaled& x, double p) {
    if (x.sign == 0) {
        if (p <= 0.0) throw DomainError("log_pow: 0 to a non-positive power");
        return {};
    }
    if (x.sign < 0) throw DomainError("log_pow: negative base");
    return {1, x.log_mag * p};
}

LogScaled LogComplex::to_log_scaled(double tol) const {
    const double s = std::sin(arg);
    if (std::abs(s) > tol)
        throw DomainError("LogComplex: value is not real (|sin arg| = " +
                          std::to_string(std::abs(s)) + ")");
    if (log_mag == -std::numeric_limits<double>::infinity()) return {};
    return {std::cos(arg) >= 0.0 ? +1 : -1, log_mag};
}

ScaledSeriesSum sum_log_terms(const std::vector<double>& log_mags,
                              double phase_step,
                              const std::vector<double>& arg_scales) {
    ScaledSeriesSum out;
    if (log_mags.empty()) return out;
    double peak = -std::numeric_limits<double>::infinity();
    for (double lm : log_mags) peak = std::max(peak, lm);
    out.log_scale = peak;

    const double r = std::remainder(phase_step, 2.0 * M_PI);
    const bool all_positive = (r == 0.0);
    const bool alternating = (std::abs(r) == M_PI);
    CompensatedSum re, im, abs_acc, err_acc;
    for (std::size_t k = 0; k < log_mags.size(); ++k) {
        const double t = std::exp(log_mags[k] - peak);
        abs_acc.add(t);
        const double scale = k < arg_scales.size() ? arg_scales[k] : 0.0;
        err_acc.add(t * (std::abs(log_mags[k] - peak) + std::abs(peak) + scale + 4.0));
        if (all_positive) {
            re.add(t);
        } else if (alternating) {
            re.add((k % 2 == 0) ? t : -t);
        } else {
            const double phase = static_cast<double>(k) * r;
            re.add(t * std::cos(phase));
            im.add(t * std::sin(phase));
        }
    }
    out.sum = {re.value(), im.value()};
    out.abs_sum = abs_acc.value();
    out.err = 2.0 * std::numeric_limits<double>::epsilon() * err_acc.value();
    return out;
}

std::complex<double> qpoch_finite(std::complex<double> a, const QParam& qp, int n) {
    if (n < 0) throw OutOfRangeError("qpoch_finite: n must be >= 0");
    std::complex<double> prod = 1.0;
    double qk = 1.0;
    for (int k = 0; k < n; ++k) {
        prod *= (1.0 - a * qk);
        qk *= qp.q();
    }
    return prod;
}

CertifiedValue qpoch_infinite(std::complex<double> a, const QParam& qp, double rel_tol) {
    if (!(rel_tol > 0.0)) throw DomainError("qpoch_infinite: rel_tol must be > 0");
    const double abs_a = std::abs(a);
    if (abs_a * qp.q() >= 1.0)
        throw NonConvergentError("qpoch_infinite: requires |a| < 1/q");
    if (abs_a == 0.0) return {1.0, 0.0, 1};

    // Dropped factors k >= K satisfy |prod_{k>=K}(1-aq^k) - 1| <= e^s - 1
    // with s = |a| q^K / (1-q); stop once e^s - 1 <= rel_tol.
    const double q = qp.q();
    std::complex<double> prod = 1.0;
    double qk = 1.0;
    int k = 0;
    const int k_cap = 1 << 24;
    while (k < k_cap) {
        const double s = abs_a * qk / (1.0 - q);
        if (std::expm1(s) <= rel_tol) break;
        prod *= (1.0 - a * qk);
        qk *= q;
        ++k;
    }
    if (k == k_cap) throw NonConvergentError("qpoch_infinite: factor cap reached");
    const double s = abs_a * qk / (1.0 - q);
    const double trunc_rel = std::expm1(s);
    // Each multiply contributes <= 2 eps relative roundoff.
    const double round_rel = 2.0 * k * std::numeric_limits<double>::epsilon();
    return {prod, std::abs(prod) * (trunc_rel + round_rel), std::max(k, 1)};
}

double qbinomial(int n, int k, const QParam& qp) {
    if (k < 0 || k > n)
        throw OutOfRangeError("qbinomial: requires 0 <= k <= n");
    return qp.qq(n) / (qp.qq(k) * qp.qq(n - k));
}

double log_qbinomial(int n, int k, const QParam& qp) {
    if (k < 0 || k > n)
        throw OutOfRangeError("log_qbinomial: requires 0 <= k <= n");
    return qp.log_qq(n) - qp.log_qq(k) - qp.log_qq(n - k);
}

CertifiedValue euler_expand(std::complex<double> z, const QParam& qp,
                            EulerSeries kind, double tol) {
    if (!(tol > 0.0)) throw DomainError("euler_expand: tol must be > 0");
    const double q = qp.q();
    const double abs_z = std::abs(z);
    if (kind == EulerSeries::ReciprocalSeries && abs_z >= 1.0)
        throw NonConvergentError("euler_expand: reciprocal series needs |z| < 1");
    if (abs_z == 0.0) return {1.0, 0.0, 1};

    CompensatedSum re, im, abs_acc;
    std::complex<double> term = 1.0;
    double abs_term = 1.0;
    double qk = 1.0;  // q^k
    int k = 0;
    double tail = 0.0;
    const int k_cap = 1 << 20;
    for (;; ++k) {
        re.add(term.real());
        im.add(term.imag());
        abs_acc.add(abs_term);
        // term ratio: product series  -q^k z / (1-q^{k+1})
        //             reciprocal          z / (1-q^{k+1})
        const double denom = 1.0 - qk * q;
        const double rho = (kind == EulerSeries::ProductSeries ? qk * abs_z : abs_z) / denom;
        if (rho < 1.0) {
            tail = abs_term * rho / (1.0 - rho);
            if (tail <= tol) break;
        }
        if (k >= k_cap) throw NonConvergentError("euler_expand: term cap reached");
        const std::complex<double> ratio =
            (kind == EulerSeries::ProductSeries ? -z * qk : z) / denom;
        term *= ratio;
        abs_term *= std::abs(ratio);
        qk *= q;
    }
    const double round =
        4.0 * std::numeric_limits<double>::epsilon() * abs_acc.value();
    return {{re.value(), im.value()}, tail + round, k + 1};
}

double qbinom_theorem_residual(std::complex<double> a, std::complex<double> z,
                               const QParam& qp, double tol) {
    const double abs_z = std::abs(z);
    if (abs_z >= 1.0)
        throw NonConvergentError("qbinom_theorem_residual: requires |z| < 1");

    const CertifiedValue num = qpoch_infinite(a * z, qp, tol);
    const CertifiedValue den = qpoch_infinite(z, qp, tol);
    const std::complex<double> lhs = num.value / den.value;

    // Series side: sum (a;q)_k z^k / (q;q)_k, with (a;q)_k built up
    // incrementally. |(a;q)_k| <= exp(|a|/(1-q)) =: P, so the dropped
    // tail is <= P |z|^{K+1} / ((q;q)_inf (1-|z|)).
    const double pbar = std::exp(std::abs(a) / (1.0 - qp.q()));
    const double qq_floor = qp.qq(qp.cache_size());
    CompensatedSum re, im;
    std::complex<double> apoch = 1.0;  // (a;q)_k
    std::complex<double> zk = 1.0;     // z^k
    double qk = 1.0;                   // q^k
    int k = 0;
    const int k_cap = 1 << 20;
    for (;; ++k) {
        const std::complex<double> term = apoch * zk / qp.qq(k);
        re.add(term.real());
        im.add(term.imag());
        const double tail =
            pbar * std::abs(zk) * abs_z / (qq_floor * (1.0 - abs_z));
        if (tail <= tol) break;
        if (k >= k_cap)
            throw NonConvergentError("qbinom_theorem_residual: term cap reached");
        apoch *= (1.0 - a * qk);
        zk *= z;
        qk *= qp.q();
    }
    return std::abs(lhs - std::complex<double>{re.value(), im.value()});
}

}  // namespace qaudit
