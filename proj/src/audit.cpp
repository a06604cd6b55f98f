#include "qaudit/audit.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <ctime>
#include <functional>

#include "qaudit/orthopoly.hpp"
#include "qaudit/quadrature.hpp"
#include "qaudit/ramanujan.hpp"
#include "qaudit/version.hpp"

namespace qaudit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

std::string fmt_z(std::complex<double> z) {
    return fmt("%g%+gi", z.real(), z.imag());
}

CheckStatus two_sided_status(double measured, double expected, double tol) {
    return std::abs(measured - expected) <= tol ? CheckStatus::Pass
                                                : CheckStatus::Fail;
}

// Tolerance for an integral identity: requested relative part, the
// quadrature's own certified error, and a small absolute floor covering
// the double-precision noise of the cancellation-heavy integrand sums.
double integral_tolerance(double rel_tol, double expected,
                          const QuadratureResult& quad) {
    return rel_tol * std::abs(expected) + 4.0 * quad.error_estimate + 1e-11;
}

double quad_target(double rel_tol, double expected) {
    return std::max(rel_tol * std::abs(expected) / 4.0, 3e-13);
}

// A_q(u^-2)^2 w_IM((u - 1/u)/2 | q), evaluated in log space. Note
// (u - 1/u)/2 = sinh(ln u), so the weight argument keeps the Gaussian
// decay in ln u that cancels the growth of A_q^2.
double im_limit_integrand(double u, const QParam& qp) {
    const double v = std::log(u);
    const AqLog a = aq_eval_log(-2.0 * v, +1, qp);
    const double log_w = im_weight(std::sinh(v), qp).log_value;
    return std::exp(2.0 * a.value.log_mag + log_w);
}

// Literal-weight variant: w_IM(u|q) with no substitution in the argument.
double im_literal_integrand(double u, const QParam& qp) {
    const double v = std::log(u);
    const AqLog a = aq_eval_log(-2.0 * v, +1, qp);
    return std::exp(2.0 * a.value.log_mag + im_weight(u, qp).log_value);
}

double sw_limit_integrand(double u, const QParam& qp) {
    const double v = std::log(u);
    const AqLog a = aq_eval_log(-v, +1, qp);
    return std::exp(2.0 * a.value.log_mag + sw_weight(u, qp).log_value);
}

}  // namespace

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "PASS";
        case CheckStatus::Fail: return "FAIL";
        case CheckStatus::Inconclusive: return "INCONCLUSIVE";
    }
    return "FAIL";
}

CheckStatus check_status_from_string(const std::string& s) {
    if (s == "PASS") return CheckStatus::Pass;
    if (s == "INCONCLUSIVE") return CheckStatus::Inconclusive;
    if (s == "FAIL") return CheckStatus::Fail;
    throw Error("unknown check status: " + s);
}

bool AuditReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const AuditCheck& c) {
        return c.status == CheckStatus::Pass;
    });
}

std::uint64_t SampleRng::next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double SampleRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SampleRng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

int SampleRng::uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

AuditCheck audit_im_integral(const QParam& qp, double rel_tol) {
    // The substitution chain gives int bracket_n^2 (1 + q^n u^-2) W du
    // = 2 (q;q)_n exactly, but the two Jacobian halves carry equal mass
    // (u -> q^n/u maps one onto the other), and the q^n u^-2 half
    // concentrates near u ~ q^{n/2} as n grows. The limit integral
    // therefore equals (q;q)_inf, half of the chain constant; see the
    // companion .chain/.half checks for the finite-degree split.
    const double expected = std::exp(log_qq_infinite(qp));
    IntegrandSpec spec{[&qp](double u) { return im_limit_integrand(u, qp); },
                       -2.0 / qp.ln_q()};
    const QuadratureResult quad =
        integrate_log_axis(spec, quad_target(rel_tol, expected));
    AuditCheck c;
    c.id = fmt("integral.im.q=%.6g", qp.q());
    c.description =
        "int_0^inf A_q(u^-2)^2 w_IM((u-1/u)/2) du = (q;q)_inf; the "
        "doubled constant 2 (q;q)_inf counts both Jacobian halves of "
        "x = sinh xi_n and is not attained by this integral; " +
        fmt("quadrature error estimate %.3g, %d panels, radius %.2f",
            quad.error_estimate, quad.panels, quad.truncation_radius);
    c.measured = quad.value;
    c.expected = expected;
    c.tolerance = integral_tolerance(rel_tol, expected, quad);
    c.status = two_sided_status(c.measured, c.expected, c.tolerance);
    return c;
}

namespace {

// log |bracket_n(u)| at t = 1/2: the scaled h_n with its prefactor removed
// (the bracket's own factors cancel exactly at t = 1/2).
double im_bracket_log_abs(int n, double u, const QParam& qp) {
    const IMScalingPoint p(n, 0.5, u, qp);
    const LogComplex h = im_eval_scaled(p, qp);
    const double pre_log = n * std::log(u) - n * n * 0.5 * qp.ln_q();
    return h.log_mag - pre_log;
}

// ln(1 + e^a) without overflow.
double softplus(double a) {
    return a > 0.0 ? a + std::log1p(std::exp(-a)) : std::log1p(std::exp(a));
}

QuadratureResult im_bracket_measure_integral(int n, bool with_jacobian_half,
                                             const QParam& qp, double target) {
    IntegrandSpec spec{
        [n, with_jacobian_half, &qp](double u) {
            const double v = std::log(u);
            const double lb = im_bracket_log_abs(n, u, qp);
            const double log_w = im_weight(std::sinh(v), qp).log_value;
            const double extra =
                with_jacobian_half ? softplus(n * qp.ln_q() - 2.0 * v) : 0.0;
            return std::exp(2.0 * lb + log_w + extra);
        },
        -2.0 / qp.ln_q()};
    return integrate_log_axis(spec, target);
}

}  // namespace

AuditCheck audit_im_chain_identity(const QParam& qp, int n, double rel_tol) {
    const double expected = 2.0 * qp.qq(n);
    const QuadratureResult quad = im_bracket_measure_integral(
        n, true, qp, quad_target(rel_tol, expected));
    AuditCheck c;
    c.id = fmt("integral.im.chain.q=%.6g", qp.q());
    c.description = fmt(
        "exact substitution identity at degree %d: int bracket^2 "
        "(1 + q^n u^-2) w_IM((u-1/u)/2) du = 2 (q;q)_n; its limit is the "
        "doubled constant 2 (q;q)_inf",
        n);
    c.measured = quad.value;
    c.expected = expected;
    c.tolerance = integral_tolerance(rel_tol, expected, quad);
    c.status = two_sided_status(c.measured, c.expected, c.tolerance);
    return c;
}

AuditCheck audit_im_half_identity(const QParam& qp, int n, double rel_tol) {
    const double expected = qp.qq(n);
    const QuadratureResult quad = im_bracket_measure_integral(
        n, false, qp, quad_target(rel_tol, expected));
    AuditCheck c;
    c.id = fmt("integral.im.half.q=%.6g", qp.q());
    c.description = fmt(
        "half-mass identity at degree %d: int bracket^2 w_IM((u-1/u)/2) du "
        "= (q;q)_n exactly (u -> q^n/u maps the two Jacobian halves onto "
        "each other), so the limit integral is (q;q)_inf",
        n);
    c.measured = quad.value;
    c.expected = expected;
    c.tolerance = integral_tolerance(rel_tol, expected, quad);
    c.status = two_sided_status(c.measured, c.expected, c.tolerance);
    return c;
}

AuditCheck audit_im_weight_reading(const QParam& qp, double rel_tol) {
    const double expected = std::exp(log_qq_infinite(qp));
    IntegrandSpec canonical{
        [&qp](double u) { return im_limit_integrand(u, qp); },
        -2.0 / qp.ln_q()};
    const QuadratureResult quad =
        integrate_log_axis(canonical, quad_target(rel_tol, expected));
    double literal = std::numeric_limits<double>::quiet_NaN();
    std::string literal_note;
    try {
        IntegrandSpec lit{[&qp](double u) { return im_literal_integrand(u, qp); },
                          -2.0 / qp.ln_q()};
        literal = integrate_log_axis(lit, quad_target(rel_tol, expected)).value;
        literal_note = fmt("literal w_IM(u) reading gives %.17g", literal);
    } catch (const NoConvergenceError&) {
        literal_note = "literal w_IM(u) reading diverges (no convergence)";
    }
    const double err_canonical = std::abs(quad.value - expected);
    const double err_literal = std::isfinite(literal)
                                   ? std::abs(literal - expected)
                                   : std::numeric_limits<double>::infinity();
    AuditCheck c;
    c.id = fmt("integral.im.reading.q=%.6g", qp.q());
    c.description =
        "weight-argument adjudication: the sinh(ln u) reading converges and "
        "matches (q;q)_inf (" +
        fmt("%.17g vs %.17g", quad.value, expected) + "); " + literal_note +
        "; neither reading attains the displayed 2 (q;q)_inf";
    c.measured = (err_canonical < err_literal &&
                  err_canonical <= integral_tolerance(rel_tol, expected, quad))
                     ? 1.0
                     : 0.0;
    c.expected = 1.0;
    c.tolerance = 0.0;
    c.status = two_sided_status(c.measured, c.expected, c.tolerance);
    return c;
}

AuditCheck audit_im_jacobian_n0(const QParam& qp, double rel_tol) {
    const double expected = 2.0;
    IntegrandSpec spec{
        [&qp](double u) {
            const double v = std::log(u);
            const double log_w = im_weight(std::sinh(v), qp).log_value;
            return std::exp(log_w) * (1.0 + std::exp(-2.0 * v));
        },
        -2.0 / qp.ln_q()};
    const QuadratureResult quad =
        integrate_log_axis(spec, quad_target(rel_tol, expected));
    AuditCheck c;
    c.id = fmt("integral.im.n0_mass.q=%.6g", qp.q());
    c.description =
        "degree-0 substitution chain: int_0^inf w_IM((u-1/u)/2) (1+u^-2) du = 2";
    c.measured = quad.value;
    c.expected = expected;
    c.tolerance = integral_tolerance(rel_tol, expected, quad);
    c.status = two_sided_status(c.measured, c.expected, c.tolerance);
    return c;
}

AuditCheck audit_sw_integral(const QParam& qp, double rel_tol) {
    const double expected = std::exp(log_qq_infinite(qp));
    IntegrandSpec spec{[&qp](double u) { return sw_limit_integrand(u, qp); },
                       -0.5 / qp.ln_q()};
    const QuadratureResult quad =
        integrate_log_axis(spec, quad_target(rel_tol, expected));
    AuditCheck c;
    c.id = fmt("integral.sw.q=%.6g", qp.q());
    c.description =
        "int_0^inf A_q(u^-1)^2 w_SW(u) du = (q;q)_inf; " +
        fmt("quadrature error estimate %.3g, %d panels, radius %.2f",
            quad.error_estimate, quad.panels, quad.truncation_radius);
    c.measured = quad.value;
    c.expected = expected;
    c.tolerance = integral_tolerance(rel_tol, expected, quad);
    c.status = two_sided_status(c.measured, c.expected, c.tolerance);
    return c;
}

AuditCheck audit_sw_weight_norm(const QParam& qp, double rel_tol) {
    IntegrandSpec spec{[&qp](double u) { return sw_weight(u, qp).value; },
                       -0.5 / qp.ln_q()};
    const QuadratureResult quad =
        integrate_log_axis(spec, quad_target(rel_tol, 1.0));
    AuditCheck c;
    c.id = fmt("integral.sw.mass.q=%.6g", qp.q());
    c.description = "weight normalisation: int_0^inf w_SW(u) du = 1";
    c.measured = quad.value;
    c.expected = 1.0;
    c.tolerance = integral_tolerance(rel_tol, 1.0, quad);
    c.status = two_sided_status(c.measured, c.expected, c.tolerance);
    return c;
}

namespace {

// Envelope prefactors shared by the two bracket families.
struct EnvelopeData {
    double minus_q3_inf;  // (-q^3;q)_inf
    double qq_inf;        // (q;q)_inf
};

EnvelopeData envelope_data(const QParam& qp) {
    const double q3 = qp.q() * qp.q() * qp.q();
    return {qpoch_infinite(-q3, qp, 1e-14).real(),
            std::exp(log_qq_infinite(qp))};
}

AuditCheck residual_check(const std::string& id, const std::string& what,
                          double residual, double envelope, double margin) {
    AuditCheck c;
    c.id = id;
    c.description = what + fmt("; envelope %.6g, measurement margin %.3g",
                               envelope, margin);
    c.measured = residual;
    c.expected = 0.0;
    c.tolerance = envelope + margin;
    c.status = two_sided_status(residual, 0.0, c.tolerance);
    return c;
}

AuditCheck decay_check(const std::string& id, const QParam& qp,
                       double first_residual, double last_residual,
                       int n_first, int n_last) {
    // the envelope's leading term decays like q^{n/2}; 1e-3 is the pinned
    // requirement where that rate reaches it (q <= 0.5 over n = 4..40)
    const double rate = 4.0 * std::exp(0.5 * (n_last - n_first) * qp.ln_q());
    const double threshold = std::max(1e-3, rate);
    AuditCheck c;
    c.id = id;
    c.description = fmt(
        "residual decay: |r(n=%d)| = %.6g against |r(n=%d)| = %.6g, ratio "
        "bounded by max(1e-3, 4 q^{(n_last-n_first)/2}) = %.3g",
        n_last, last_residual, n_first, first_residual, threshold);
    c.measured = last_residual /
                 std::max(first_residual, std::numeric_limits<double>::min());
    c.expected = 0.0;
    c.tolerance = threshold;
    c.status = two_sided_status(c.measured, 0.0, c.tolerance);
    return c;
}

}  // namespace

std::vector<AuditCheck> audit_im_asymptotic(const std::vector<int>& n_list,
                                            double u, const QParam& qp) {
    const EnvelopeData env = envelope_data(qp);
    const CertifiedValue limit_cv = aq_eval(1.0 / (u * u), qp, 1e-14);
    const double limit = limit_cv.real();
    const double aq_neg = aq_eval(-1.0 / (u * u), qp, 1e-14).real();
    const double pref =
        4.0 * env.minus_q3_inf * aq_neg / (env.qq_inf * env.qq_inf);
    std::vector<AuditCheck> out;
    double r_first = 0.0, r_last = 0.0;
    for (int n : n_list) {
        const IMScalingPoint p(n, 0.5, u, qp);
        double bracket_rel = 0.0;
        const double bracket = im_orthonormal_scaled_bracket(p, qp, &bracket_rel);
        const double residual = std::abs(bracket - limit);
        const double envelope =
            pref * (std::exp(0.5 * n * qp.ln_q()) +
                    std::exp(0.25 * n * n * qp.ln_q()) *
                        std::pow(u, -2.0 * (n / 2) - 2.0));
        const double margin = bracket_rel * std::abs(bracket) +
                              limit_cv.tail_bound +
                              64.0 * kEps * (1.0 + std::abs(bracket) + std::abs(limit));
        out.push_back(residual_check(
            fmt("bracket.im.q=%.6g.u=%.2f.n=%02d", qp.q(), u, n),
            fmt("|bracket - A_q(u^-2)| at t=1/2, u=%.2f, n=%d", u, n), residual,
            envelope, margin));
        if (n == n_list.front()) r_first = residual;
        if (n == n_list.back()) r_last = residual;
    }
    // the thousandfold-decay requirement is defined over the full n range
    if (u > 1.0 && n_list.size() >= 2 && n_list.back() - n_list.front() >= 36)
        out.push_back(decay_check(fmt("bracket.im.decay.q=%.6g.u=%.2f", qp.q(), u),
                                  qp, r_first, r_last, n_list.front(),
                                  n_list.back()));
    return out;
}

std::vector<AuditCheck> audit_sw_asymptotic(const std::vector<int>& n_list,
                                            double u, const QParam& qp) {
    const EnvelopeData env = envelope_data(qp);
    const CertifiedValue aq_cv = aq_eval(1.0 / u, qp, 1e-14);
    const double limit = aq_cv.real() / env.qq_inf;
    const double aq_neg = aq_eval(-1.0 / u, qp, 1e-14).real();
    const double pref =
        2.0 * env.minus_q3_inf * aq_neg / (env.qq_inf * env.qq_inf);
    std::vector<AuditCheck> out;
    double r_first = 0.0, r_last = 0.0;
    for (int n : n_list) {
        const SWScalingPoint p(n, 2.0, u, qp);
        double bracket_rel = 0.0;
        const double bracket = sw_orthonormal_scaled_bracket(p, qp, &bracket_rel);
        const double residual = std::abs(bracket - limit);
        const double envelope =
            pref * (std::exp(0.5 * n * qp.ln_q()) +
                    std::exp(0.25 * n * n * qp.ln_q()) *
                        std::pow(u, -1.0 - (n / 2)));
        const double margin = bracket_rel * std::abs(bracket) +
                              aq_cv.tail_bound / env.qq_inf +
                              64.0 * kEps * (1.0 + std::abs(bracket) + std::abs(limit));
        out.push_back(residual_check(
            fmt("bracket.sw.q=%.6g.u=%.2f.n=%02d", qp.q(), u, n),
            fmt("|bracket - A_q(u^-1)/(q;q)_inf| at t=2, u=%.2f, n=%d", u, n),
            residual, envelope, margin));
        if (n == n_list.front()) r_first = residual;
        if (n == n_list.back()) r_last = residual;
    }
    if (u > 1.0 && n_list.size() >= 2 && n_list.back() - n_list.front() >= 36)
        out.push_back(decay_check(fmt("bracket.sw.decay.q=%.6g.u=%.2f", qp.q(), u),
                                  qp, r_first, r_last, n_list.front(),
                                  n_list.back()));
    return out;
}

namespace {

double sw_bracket_norm_integral(int n, const QParam& qp, double rel_tol,
                                double expected, QuadratureResult* quad_out) {
    IntegrandSpec spec{
        [n, &qp](double u) {
            const SWScalingPoint p(n, 2.0, u, qp);
            const double b = sw_orthonormal_scaled_bracket(p, qp);
            return b * b * sw_weight(u, qp).value;
        },
        -0.5 / qp.ln_q()};
    const QuadratureResult quad =
        integrate_log_axis(spec, quad_target(rel_tol, expected));
    if (quad_out) *quad_out = quad;
    return quad.value;
}

}  // namespace

std::vector<AuditCheck> audit_sw_normalization(const std::vector<int>& n_list,
                                               const QParam& qp, double rel_tol) {
    std::vector<AuditCheck> out;
    for (int n : n_list) {
        const double expected = 1.0 / qp.qq(n);
        QuadratureResult quad;
        const double value =
            sw_bracket_norm_integral(n, qp, rel_tol, expected, &quad);
        AuditCheck c;
        c.id = fmt("bracket.sw.norm.q=%.6g.n=%02d", qp.q(), n);
        c.description =
            fmt("int_0^inf bracket_%d(u)^2 w_SW(u) du = 1/(q;q)_%d", n, n);
        c.measured = value;
        c.expected = expected;
        c.tolerance = integral_tolerance(rel_tol, expected, quad);
        c.status = two_sided_status(value, expected, c.tolerance);
        out.push_back(std::move(c));
    }
    return out;
}

AuditCheck audit_sw_prefactor_reading(const QParam& qp, int n, double rel_tol) {
    const double expected = 1.0 / qp.qq(n);
    QuadratureResult quad;
    const double canonical =
        sw_bracket_norm_integral(n, qp, rel_tol, expected, &quad);
    // The q^{-n} prefactor variant scales the bracket by q^{n/2}, hence the
    // normalisation integral by q^n.
    const double variant = std::exp(n * qp.ln_q()) * canonical;
    const double err_canonical = std::abs(canonical - expected);
    const double err_variant = std::abs(variant - expected);
    AuditCheck c;
    c.id = fmt("integral.sw.prefactor.q=%.6g", qp.q());
    c.description = fmt(
        "bracket prefactor adjudication at n=%d: q^{-2n} variant integral "
        "%.17g vs q^{-n} variant %.17g, expected 1/(q;q)_n = %.17g",
        n, canonical, variant, expected);
    c.measured = (err_canonical < err_variant &&
                  err_canonical <= integral_tolerance(rel_tol, expected, quad))
                     ? 1.0
                     : 0.0;
    c.expected = 1.0;
    c.tolerance = 0.0;
    c.status = two_sided_status(c.measured, 1.0, 0.0);
    return c;
}

std::vector<AuditCheck> audit_orthonormality(Family family, int max_degree,
                                             const QParam& qp, double tol) {
    if (max_degree < 0 || max_degree > 8)
        throw OutOfRangeError("audit_orthonormality: max_degree must be in [0, 8]");
    const double quad_tol = std::min(tol / 8.0, 1e-9);
    double max_dev = 0.0;
    int worst_m = 0, worst_n = 0;
    for (int m = 0; m <= max_degree; ++m) {
        for (int n = m; n <= max_degree; ++n) {
            QuadratureResult quad;
            if (family == Family::IM) {
                IntegrandSpec spec{
                    [m, n, &qp](double x) {
                        return im_orthonormal(m, x, qp) *
                               im_orthonormal(n, x, qp) * im_weight(x, qp).value;
                    },
                    -2.0 / qp.ln_q()};
                quad = integrate_sinh_axis(spec, quad_tol);
            } else {
                IntegrandSpec spec{
                    [m, n, &qp](double x) {
                        return sw_orthonormal(m, x, qp) *
                               sw_orthonormal(n, x, qp) * sw_weight(x, qp).value;
                    },
                    -0.5 / qp.ln_q()};
                quad = integrate_log_axis(spec, quad_tol);
            }
            const double dev = std::abs(quad.value - (m == n ? 1.0 : 0.0));
            if (dev > max_dev) {
                max_dev = dev;
                worst_m = m;
                worst_n = n;
            }
        }
    }
    AuditCheck c;
    c.id = fmt("gram.%s.q=%.6g", family == Family::IM ? "im" : "sw", qp.q());
    c.description = fmt(
        "orthonormal Gram matrix up to degree %d equals identity; worst "
        "entry (%d,%d)",
        max_degree, worst_m, worst_n);
    c.measured = max_dev;
    c.expected = 0.0;
    c.tolerance = tol;
    c.status = two_sided_status(max_dev, 0.0, tol);
    return {c};
}

namespace {

struct SweepCounters {
    long violations = 0;     // slack < -margin: a definite counterexample
    long within_margin = 0;  // slack in [-margin, 0): holds modulo roundoff
    double min_slack = std::numeric_limits<double>::infinity();
};

void tally(SweepCounters& sc, const BoundReport& r) {
    if (!r.holds)
        ++sc.violations;
    else if (r.slack < 0.0)
        ++sc.within_margin;
    sc.min_slack = std::min(sc.min_slack, r.slack);
}

AuditCheck sweep_check(const std::string& id, const std::string& what,
                       const SweepCounters& sc, int samples,
                       std::uint64_t seed) {
    AuditCheck c;
    c.id = id;
    c.description =
        what + fmt("; %d samples, seed %llu, %ld violations, %ld held only "
                   "within the certified margin (near-tight cases), min "
                   "log-slack %.6g",
                   samples, static_cast<unsigned long long>(seed),
                   sc.violations, sc.within_margin, sc.min_slack);
    c.measured = static_cast<double>(sc.violations);
    c.expected = 0.0;
    c.tolerance = 0.0;
    c.status = sc.violations > 0 ? CheckStatus::Fail : CheckStatus::Pass;
    return c;
}

std::complex<double> sample_disk_log(SampleRng& rng, double lo_mag,
                                     double hi_mag) {
    const double mag = std::exp(rng.uniform(std::log(lo_mag), std::log(hi_mag)));
    const double phase = rng.uniform(-M_PI, M_PI);
    return std::polar(mag, phase);
}

}  // namespace

std::vector<AuditCheck> audit_inequalities(int sample_count, std::uint64_t seed,
                                           const std::vector<double>& q_grid) {
    if (sample_count < 1)
        throw OutOfRangeError("audit_inequalities: sample_count must be >= 1");
    std::vector<QParam> params;
    params.reserve(q_grid.size());
    for (double q : q_grid) params.emplace_back(q);

    SweepCounters exp_sc, gauss_sc, im_sc, sw_sc;
    SampleRng rng(seed);
    for (int i = 0; i < sample_count; ++i) {
        const QParam& qp = params[i % params.size()];
        // |A_q(z)| <= exp(q|z|/(1-q)); includes the z = 0 equality case.
        const std::complex<double> z_exp =
            (i == 0) ? 0.0 : sample_disk_log(rng, 1e-9, 1e3);
        tally(exp_sc, check_exp_bound(z_exp, qp));
        // Gaussian-type bound; |z| = 1 boundary where its exp factor is 1.
        const std::complex<double> z_gauss =
            (i == 0) ? 1.0 : sample_disk_log(rng, 1e-9, 1e3);
        tally(gauss_sc, check_gauss_bound(z_gauss, qp));
        // Scaled polynomial bounds over (n, t, u).
        {
            const int n = rng.uniform_int(0, 40);
            const double t = rng.uniform(0.1, 3.0);
            const std::complex<double> u = sample_disk_log(rng, 1e-3, 1e3);
            tally(im_sc, im_bound_check(IMScalingPoint(n, t, u, qp), qp));
        }
        {
            const int n = rng.uniform_int(0, 40);
            const double t = rng.uniform(0.1, 3.0);
            const std::complex<double> u = sample_disk_log(rng, 1e-3, 1e3);
            tally(sw_sc, sw_bound_check(SWScalingPoint(n, t, u, qp), qp));
        }
    }
    return {
        sweep_check("ineq.aq_exp", "|A_q(z)| <= exp(q|z|/(1-q))", exp_sc,
                    sample_count, seed),
        sweep_check("ineq.aq_gauss",
                    "|A_q(z)| <= (|z|/sqrt q)^{1/2} "
                    "exp(-ln^2|z|/(4 ln q))/(q;q)_inf",
                    gauss_sc, sample_count, seed),
        sweep_check("ineq.im_scaled",
                    "|h_n(sinh xi_n)| <= (|u|^n/q^{n^2 t}) A_q(-q^{n(2t-1)}/|u|^2)",
                    im_sc, sample_count, seed),
        sweep_check("ineq.sw_scaled",
                    "|S_n(x_n(t,u))| <= |u|^n A_q(-q^{n(t-2)}/|u|) / "
                    "((q;q)_inf q^{n^2(t-1)})",
                    sw_sc, sample_count, seed),
    };
}

std::vector<AuditCheck> audit_q1_limit(
    const std::vector<std::complex<double>>& z_list,
    const std::vector<double>& q_list) {
    std::vector<AuditCheck> out;
    for (const auto& z : z_list) {
        // relative to |exp(-z)|: the absolute gap scales with the limit
        // value itself (at z = -3 it is ~20x larger than at z = 1)
        const double scale = std::abs(std::exp(-z));
        std::vector<double> errors;
        errors.reserve(q_list.size());
        for (double q : q_list) errors.push_back(q1_limit_error(z, q) / scale);
        bool decreasing = true;
        for (std::size_t i = 1; i < errors.size(); ++i)
            if (!(errors[i] < errors[i - 1])) decreasing = false;
        AuditCheck c;
        c.id = "limit.q_to_1.z=" + fmt_z(z);
        std::string errs;
        for (double e : errors) errs += fmt(" %.6g", e);
        c.description =
            "|A_q((1-q)z) - exp(-z)| / |exp(-z)| decreasing along the q "
            "grid, final relative error < 1e-2; errors:" + errs;
        c.measured = errors.empty() ? 0.0 : errors.back();
        c.expected = 0.0;
        c.tolerance = 1e-2;
        c.status = (decreasing && c.measured < 1e-2) ? CheckStatus::Pass
                                                     : CheckStatus::Fail;
        out.push_back(std::move(c));
    }
    return out;
}

AuditReport run_full_audit(const AuditConfig& cfg) {
    AuditReport report;
    report.q_grid = cfg.q_grid;

    std::vector<int> n_list;
    for (int n = 4; n <= cfg.n_max; n += 4) n_list.push_back(n);
    if (n_list.empty()) n_list.push_back(0);

    // A numerical failure inside one check (e.g. quadrature that cannot
    // reach tolerance) becomes a FAIL entry rather than aborting the run.
    const auto add_one = [&report](const std::string& id,
                                   const std::function<AuditCheck()>& f) {
        try {
            report.checks.push_back(f());
        } catch (const Error& e) {
            AuditCheck c;
            c.id = id + ".error";
            c.description = e.what();
            c.measured = std::numeric_limits<double>::quiet_NaN();
            c.status = CheckStatus::Fail;
            report.checks.push_back(std::move(c));
        }
    };
    const auto add_many =
        [&report](const std::string& id,
                  const std::function<std::vector<AuditCheck>()>& f) {
            try {
                for (auto& c : f()) report.checks.push_back(std::move(c));
            } catch (const Error& e) {
                AuditCheck c;
                c.id = id + ".error";
                c.description = e.what();
                c.measured = std::numeric_limits<double>::quiet_NaN();
                c.status = CheckStatus::Fail;
                report.checks.push_back(std::move(c));
            }
        };

    for (double q : cfg.q_grid) {
        const QParam qp(q);
        const double rt = cfg.integral_rel_tol;
        add_one(fmt("integral.im.q=%.6g", q),
                [&] { return audit_im_integral(qp, rt); });
        add_one(fmt("integral.im.reading.q=%.6g", q),
                [&] { return audit_im_weight_reading(qp, rt); });
        add_one(fmt("integral.im.n0_mass.q=%.6g", q),
                [&] { return audit_im_jacobian_n0(qp, rt); });
        add_one(fmt("integral.im.chain.q=%.6g", q),
                [&] { return audit_im_chain_identity(qp, 8, rt); });
        add_one(fmt("integral.im.half.q=%.6g", q),
                [&] { return audit_im_half_identity(qp, 8, rt); });
        add_one(fmt("integral.sw.q=%.6g", q),
                [&] { return audit_sw_integral(qp, rt); });
        add_one(fmt("integral.sw.mass.q=%.6g", q),
                [&] { return audit_sw_weight_norm(qp, rt); });
        add_one(fmt("integral.sw.prefactor.q=%.6g", q),
                [&] { return audit_sw_prefactor_reading(qp, 4, rt); });
        for (double u : {1.0, 1.5, 2.0}) {
            add_many(fmt("bracket.im.q=%.6g.u=%.2f", q, u),
                     [&] { return audit_im_asymptotic(n_list, u, qp); });
            add_many(fmt("bracket.sw.q=%.6g.u=%.2f", q, u),
                     [&] { return audit_sw_asymptotic(n_list, u, qp); });
        }
        add_many(fmt("bracket.sw.norm.q=%.6g", q),
                 [&] { return audit_sw_normalization({0, 2, 4}, qp, rt); });
        for (Family fam : {Family::IM, Family::SW})
            add_many(fmt("gram.%s.q=%.6g", fam == Family::IM ? "im" : "sw", q),
                     [&] {
                         return audit_orthonormality(fam, cfg.max_degree, qp,
                                                     cfg.tol);
                     });
    }
    add_many("ineq", [&] {
        return audit_inequalities(cfg.sample_count, cfg.seed, cfg.q_grid);
    });
    add_many("limit.q_to_1", [&] {
        return audit_q1_limit({{1.0, 0.0}, {-3.0, 0.0}, {0.0, 2.0}},
                              {0.9, 0.99, 0.999});
    });

    std::sort(report.checks.begin(), report.checks.end(),
              [](const AuditCheck& a, const AuditCheck& b) { return a.id < b.id; });

    report.metadata.tool_version = kVersion;
    report.metadata.seed = cfg.seed;
    report.metadata.tol = cfg.tol;
    report.metadata.n_max = cfg.n_max;
    report.metadata.sample_count = cfg.sample_count;
    report.metadata.max_degree = cfg.max_degree;
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    report.metadata.timestamp = buf;
    return report;
}

}  // namespace qaudit
