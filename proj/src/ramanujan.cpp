#include "qaudit/ramanujan.hpp"

#include <algorithm>
#include <vector>

namespace qaudit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Peak-scaled series state: A_q(z) = exp(log_scale) * scaled_sum.
struct AqCore {
    double log_scale = 0.0;
    std::complex<double> scaled_sum = 1.0;
    double scaled_abs = 1.0;  // sum of |t_k| e^{-E}
    double scaled_err = 0.0;  // truncation + roundoff, in units of e^E
    int terms = 1;
};

// Shared series driver. Terms t_k = q^{k^2} (-z)^k / (q;q)_k are handled
// through their log magnitudes L_k; the peak E = max L_k is factored out
// before any exponentiation. Stops once the geometric tail bound
// |t_K| rho/(1-rho) drops below the target:
//   absolute target      ln_tol                   (relative_to_peak = false)
//   peak-relative target ln_tol + E               (relative_to_peak = true)
AqCore aq_series(double ln_abs_z, double arg_z, const QParam& qp,
                 double ln_tol, bool relative_to_peak) {
    AqCore out;
    if (ln_abs_z == kNegInf) return out;  // z = 0: single term 1

    const double lnq = qp.ln_q();
    std::vector<double> lmag;    // L_k
    std::vector<double> lscale;  // constituent magnitudes of L_k
    double peak = kNegInf;
    double tail_log = kNegInf;
    int k = 0;
    const int k_cap = 1 << 20;
    for (;; ++k) {
        const double k2lnq = static_cast<double>(k) * k * lnq;
        const double klnz = k * ln_abs_z;
        const double lk = k2lnq + klnz - qp.log_qq(k);
        lmag.push_back(lk);
        lscale.push_back(std::abs(k2lnq) + std::abs(klnz) +
                         std::abs(qp.log_qq(k)));
        peak = std::max(peak, lk);
        // rho_k = q^{2k+1} |z| / (1 - q^{k+1}), strictly decreasing in k
        const double ln_rho = (2.0 * k + 1.0) * lnq + ln_abs_z -
                              std::log1p(-std::exp((k + 1.0) * lnq));
        if (ln_rho < 0.0) {
            const double rho = std::exp(ln_rho);
            tail_log = lk + ln_rho - std::log1p(-rho);
            const double target = relative_to_peak ? ln_tol + peak : ln_tol;
            if (tail_log <= target) break;
        }
        if (k >= k_cap) throw Error("aq_series: term cap reached");
    }

    const ScaledSeriesSum s = sum_log_terms(lmag, M_PI + arg_z, lscale);
    out.log_scale = s.log_scale;
    out.scaled_sum = s.sum;
    out.scaled_abs = s.abs_sum;
    out.scaled_err = std::exp(tail_log - s.log_scale) + s.err;
    out.terms = static_cast<int>(lmag.size());
    return out;
}

double safe_ln_abs(std::complex<double> z) {
    const double a = std::abs(z);
    return a == 0.0 ? kNegInf : std::log(a);
}

}  // namespace

CertifiedValue aq_eval(std::complex<double> z, const QParam& qp, double tol) {
    if (!(tol > 0.0)) throw DomainError("aq_eval: tol must be > 0");
    const AqCore c =
        aq_series(safe_ln_abs(z), std::arg(z), qp, std::log(tol), false);
    const double scale = std::exp(c.log_scale);
    return {scale * c.scaled_sum, scale * c.scaled_err, c.terms};
}

AqLog aq_eval_log(double ln_abs_z, int sign_z, const QParam& qp, double rel_tol) {
    if (sign_z != -1 && sign_z != 1 && sign_z != 0)
        throw DomainError("aq_eval_log: sign_z must be -1, 0, or +1");
    if (sign_z == 0) ln_abs_z = kNegInf;
    const AqCore c = aq_series(ln_abs_z, sign_z < 0 ? M_PI : 0.0, qp,
                               std::log(rel_tol), true);
    const double s = c.scaled_sum.real();
    AqLog out;
    out.terms = c.terms;
    if (s == 0.0) {
        out.value = LogScaled{};
        out.rel_tail = std::numeric_limits<double>::infinity();
        return out;
    }
    out.value = LogScaled{s > 0.0 ? +1 : -1, c.log_scale + std::log(std::abs(s))};
    out.rel_tail = c.scaled_err / std::abs(s);
    return out;
}

double aq_log_abs(std::complex<double> z, const QParam& qp, double* rel_err) {
    const AqCore c = aq_series(safe_ln_abs(z), std::arg(z), qp,
                               std::log(1e-13), true);
    const double s = std::abs(c.scaled_sum);
    if (rel_err) *rel_err = (s == 0.0) ? std::numeric_limits<double>::infinity()
                                       : c.scaled_err / s;
    return s == 0.0 ? kNegInf : c.log_scale + std::log(s);
}

BoundReport make_bound_report(double log_lhs, double log_rhs, double rel_lhs,
                              double rel_rhs) {
    BoundReport r;
    r.log_lhs = log_lhs;
    r.log_rhs = log_rhs;
    r.slack = log_rhs - log_lhs;
    double scale = 2.0;
    if (std::isfinite(log_lhs)) scale += std::abs(log_lhs);
    if (std::isfinite(log_rhs)) scale += std::abs(log_rhs);
    r.margin = rel_lhs + rel_rhs + 64.0 * kEps * scale;
    r.holds = r.slack >= -r.margin;
    return r;
}

BoundReport check_exp_bound(std::complex<double> z, const QParam& qp) {
    double rel = 0.0;
    const double log_lhs = aq_log_abs(z, qp, &rel);
    const double log_rhs = qp.q() * std::abs(z) / (1.0 - qp.q());
    return make_bound_report(log_lhs, log_rhs, rel, 0.0);
}

BoundReport check_gauss_bound(std::complex<double> z, const QParam& qp) {
    const double abs_z = std::abs(z);
    if (abs_z == 0.0) throw DomainError("check_gauss_bound: z must be nonzero");
    double rel = 0.0;
    const double log_lhs = aq_log_abs(z, qp, &rel);
    const double lz = std::log(abs_z);
    const double log_rhs = 0.5 * (lz - 0.5 * qp.ln_q()) -
                           lz * lz / (4.0 * qp.ln_q()) - log_qq_infinite(qp);
    return make_bound_report(log_lhs, log_rhs, rel, 1e-14);
}

double q1_limit_error(std::complex<double> z, double q_value) {
    const QParam qp(q_value);
    const CertifiedValue a = aq_eval((1.0 - q_value) * z, qp, 1e-14);
    return std::abs(a.value - std::exp(-z));
}

double log_qq_infinite(const QParam& qp) {
    CompensatedSum acc;
    const double q = qp.q();
    double qk = 1.0;
    for (int k = 1; k < (1 << 24); ++k) {
        qk *= q;
        if (qk < 1e-20 * (1.0 - q)) break;
        acc.add(std::log1p(-qk));
    }
    return acc.value();
}

}  // namespace qaudit
