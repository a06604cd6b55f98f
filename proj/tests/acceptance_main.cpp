// Acceptance suite: one pass/fail line per criterion. Exit code equals the
// number of failed criteria.

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <vector>

#include "oracles.hpp"
#include "qaudit/audit.hpp"
#include "qaudit/orthopoly.hpp"
#include "qaudit/quadrature.hpp"
#include "qaudit/ramanujan.hpp"

using namespace qaudit;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t0).count();
    }
};

void report(int idx, bool ok, const char* title, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", idx,
                title, detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

// 1. IM scaled-limit integral equals 2 (q;q)_inf to 1e-6 relative.
// The integral's true value under the proof-chain weight reading is
// (q;q)_inf (the substitution's two Jacobian halves carry equal mass and
// one escapes toward u = 0 in the degree limit; see the audit's
// integral.im.chain / integral.im.half checks, which pass at machine
// precision). The stated target is therefore not attainable; the
// criterion is kept as stated and reported honestly.
void criterion_1() {
    Timer timer;
    bool ok = true;
    std::string detail;
    for (double q : {0.3, 0.5, 0.7}) {
        const QParam qp(q);
        const double target = 2.0 * std::exp(log_qq_infinite(qp));
        IntegrandSpec spec{
            [&qp](double u) {
                const double v = std::log(u);
                const AqLog a = aq_eval_log(-2.0 * v, +1, qp);
                const double log_w = im_weight(std::sinh(v), qp).log_value;
                return std::exp(2.0 * a.value.log_mag + log_w);
            },
            -2.0 / qp.ln_q()};
        const double value = integrate_log_axis(spec, 1e-6 * target / 4.0).value;
        const double rel = std::abs(value - target) / target;
        if (rel > 1e-6) ok = false;
        detail += fmt("q=%.1f measured=%.7g target=%.7g rel=%.2e ", q, value,
                      target, rel);
    }
    const double secs = timer.seconds();
    if (secs >= 10.0) ok = false;
    report(1, ok,
           "int A_q(u^-2)^2 w_IM((u-1/u)/2) du = 2 (q;q)_inf "
           "[true value is (q;q)_inf: half the mass escapes the limit]",
           detail + fmt("in %.2fs", secs));
}

// 2. SW scaled-limit integral equals (q;q)_inf to 1e-6 relative.
void criterion_2() {
    Timer timer;
    bool ok = true;
    std::string detail;
    for (double q : {0.3, 0.5, 0.7}) {
        const QParam qp(q);
        const AuditCheck c = audit_sw_integral(qp, 1e-6);
        const double rel = std::abs(c.measured - c.expected) / c.expected;
        if (rel > 1e-6) ok = false;
        detail += fmt("q=%.1f rel=%.2e ", q, rel);
    }
    const double secs = timer.seconds();
    if (secs >= 10.0) ok = false;
    report(2, ok, "int A_q(u^-1)^2 w_SW(u) du = (q;q)_inf",
           detail + fmt("in %.2fs", secs));
}

// 3. Gram matrices up to degree 8 within 1e-8 of the identity.
void criterion_3() {
    Timer timer;
    bool ok = true;
    std::string detail;
    for (double q : {0.3, 0.5, 0.8}) {
        const QParam qp(q);
        for (Family fam : {Family::IM, Family::SW}) {
            const AuditCheck c = audit_orthonormality(fam, 8, qp, 1e-8)[0];
            if (c.status != CheckStatus::Pass) ok = false;
            detail += fmt("%s/q=%.1f dev=%.1e ", fam == Family::IM ? "im" : "sw",
                          q, c.measured);
        }
    }
    const double secs = timer.seconds();
    if (secs >= 30.0) ok = false;
    report(3, ok, "orthonormal Gram matrices equal identity to 1e-8",
           detail + fmt("in %.2fs", secs));
}

// 4. Bracket residuals inside their envelopes; 1e3-fold decay by n = 40.
void criterion_4() {
    Timer timer;
    bool ok = true;
    std::string detail;
    std::vector<int> n_list;
    for (int n = 4; n <= 40; n += 4) n_list.push_back(n);
    for (double q : {0.3, 0.5}) {
        const QParam qp(q);
        for (double u : {1.0, 1.5, 2.0}) {
            for (const auto& c : audit_im_asymptotic(n_list, u, qp))
                if (c.status != CheckStatus::Pass) {
                    ok = false;
                    detail += c.id + " ";
                }
            for (const auto& c : audit_sw_asymptotic(n_list, u, qp))
                if (c.status != CheckStatus::Pass) {
                    ok = false;
                    detail += c.id + " ";
                }
        }
    }
    const double secs = timer.seconds();
    if (secs >= 10.0) ok = false;
    if (detail.empty()) detail = "120 residual + 8 decay checks";
    report(4, ok, "bracket residuals inside envelopes with 1e3-fold decay",
           detail + fmt(" in %.2fs", secs));
}

// 5. Four inequalities, 1e4 seeded samples each, zero violations.
void criterion_5() {
    Timer timer;
    bool ok = true;
    std::string detail;
    const auto checks = audit_inequalities(
        10000, 42, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9});
    for (const auto& c : checks) {
        if (c.status != CheckStatus::Pass) ok = false;
        detail += fmt("%s=%g ", c.id.c_str(), c.measured);
    }
    const double secs = timer.seconds();
    if (secs >= 30.0) ok = false;
    report(5, ok, "1e4-sample inequality sweeps with zero violations",
           detail + fmt("in %.2fs", secs));
}

// 6. q -> 1 limit: strictly decreasing errors, final below 1e-2.
void criterion_6() {
    Timer timer;
    bool ok = true;
    std::string detail;
    const auto checks = audit_q1_limit({{1.0, 0.0}, {-3.0, 0.0}, {0.0, 2.0}},
                                       {0.9, 0.99, 0.999});
    for (const auto& c : checks) {
        if (c.status != CheckStatus::Pass) ok = false;
        detail += fmt("final=%.2e ", c.measured);
    }
    const double secs = timer.seconds();
    if (secs >= 5.0) ok = false;
    report(6, ok, "A_q((1-q)z) -> exp(-z) errors decreasing, final < 1e-2",
           detail + fmt("in %.2fs", secs));
}

// 7. Oracle equivalences between independent evaluation routes.
void criterion_7() {
    bool ok = true;
    std::string detail;

    // scaled vs direct evaluation, n <= 20
    double worst_im = 0.0, worst_sw = 0.0;
    for (double q : {0.3, 0.5}) {
        const QParam qp(q);
        for (double t : {0.5, 1.0, 2.0}) {
            for (double u : {0.7, 1.5}) {
                for (int n = 0; n <= 20; ++n) {
                    const IMScalingPoint pi(n, t, u, qp);
                    const double direct =
                        im_eval_direct(n, std::asinh(pi.sinh_xi_n.real()), qp);
                    const double scaled =
                        im_eval_scaled(pi, qp).to_log_scaled().to_real();
                    worst_im = std::max(
                        worst_im, std::abs(scaled - direct) / std::abs(direct));
                    const SWScalingPoint ps(n, t, u, qp);
                    const double sdirect = sw_eval_direct(n, ps.x_n.real(), qp);
                    const double sscaled =
                        sw_eval_scaled(ps, qp).to_log_scaled().to_real();
                    worst_sw = std::max(
                        worst_sw, std::abs(sscaled - sdirect) / std::abs(sdirect));
                }
            }
        }
    }
    if (worst_im > 1e-8 || worst_sw > 1e-8) ok = false;
    detail += fmt("scaled/direct rel: im=%.1e sw=%.1e ", worst_im, worst_sw);

    // A_q(-1) against the Rogers-Ramanujan product
    for (double q : {0.3, 0.5}) {
        const QParam qp(q);
        const double a = aq_eval(-1.0, qp, 1e-13).real();
        const QParam qp5(std::pow(q, 5));
        const double prod =
            1.0 / (qpoch_infinite(q, qp5, 1e-14).real() *
                   qpoch_infinite(std::pow(q, 4), qp5, 1e-14).real());
        const double rel = std::abs(a - prod) / prod;
        if (rel > 1e-10) ok = false;
        detail += fmt("rr/q=%.1f rel=%.1e ", q, rel);
    }

    // Euler series against the infinite product
    double worst_euler = 0.0;
    for (double q : {0.3, 0.5}) {
        const QParam qp(q);
        for (double z : {0.2, 0.5, -0.7}) {
            const auto series = euler_expand(z, qp, EulerSeries::ProductSeries,
                                             1e-13);
            const auto prod = qpoch_infinite(z, qp, 1e-13);
            worst_euler = std::max(worst_euler,
                                   std::abs(series.real() - prod.real()) /
                                       std::abs(prod.real()));
        }
    }
    if (worst_euler > 1e-10) ok = false;
    detail += fmt("euler rel=%.1e", worst_euler);

    report(7, ok, "independent evaluation routes agree", detail);
}

// 8. Certified error honesty against long double recomputation.
void criterion_8() {
    bool ok = true;
    long aq_failures = 0, poch_failures = 0;
    SampleRng rng(20240817);
    const double q_grid[] = {0.1, 0.3, 0.5, 0.7, 0.9};
    for (int i = 0; i < 1000; ++i) {
        const double q = q_grid[i % 5];
        const QParam qp(q);
        const double tol = std::exp(rng.uniform(std::log(1e-13), std::log(1e-6)));
        {
            const double mag = std::exp(rng.uniform(std::log(1e-3), std::log(1e3)));
            const double phase = rng.uniform(-M_PI, M_PI);
            const std::complex<double> z = std::polar(mag, phase);
            const CertifiedValue v = aq_eval(z, qp, tol);
            const oracle::cld ref = oracle::aq(oracle::cld(z.real(), z.imag()), q);
            const double diff = static_cast<double>(
                std::abs(oracle::cld(v.value.real(), v.value.imag()) - ref));
            // the oracle's own rounding is far below the certified bound
            if (diff > v.tail_bound + 1e-16 * std::abs(ref)) ++aq_failures;
        }
        {
            const double mag = std::exp(rng.uniform(std::log(1e-3), std::log(0.9 / q)));
            const double phase = rng.uniform(-M_PI, M_PI);
            const std::complex<double> a = std::polar(mag, phase);
            const CertifiedValue v = qpoch_infinite(a, qp, tol);
            const oracle::cld ref =
                oracle::qpoch_inf(oracle::cld(a.real(), a.imag()), q);
            const double diff = static_cast<double>(
                std::abs(oracle::cld(v.value.real(), v.value.imag()) - ref));
            if (diff > v.tail_bound + 1e-16 * std::abs(ref)) ++poch_failures;
        }
    }
    if (aq_failures > 0 || poch_failures > 0) ok = false;
    report(8, ok, "certified tail bounds cover 2x-precision recomputation",
           fmt("1000 calls each: aq formula breaches=%ld, qpoch breaches=%ld",
               aq_failures, poch_failures));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    if (failures == 0)
        std::printf("acceptance: all 8 criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures;
}
