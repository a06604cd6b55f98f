#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace qaudit {

class Error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
    using Error::Error;
};

/// Index argument outside its admissible range.
class OutOfRangeError : public Error {
    using Error::Error;
};

/// Series or product does not converge for the given argument.
class NonConvergentError : public Error {
    using Error::Error;
};

/// Quadrature failed to reach the requested tolerance.
class NoConvergenceError : public Error {
    using Error::Error;
};

/// Neumaier-compensated accumulator. Exact to O(eps^2) regardless of
/// whether incoming terms are larger than the running sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Validated base q in (0,1) with a precomputed table of (q;q)_k.
///
/// The table holds both (q;q)_k and ln (q;q)_k for k = 0..cache_size.
/// Lookups beyond the table clamp to the last entry; for q <= 0.95 the
/// table has already stabilised to (q;q)_inf at machine precision there,
/// so the clamp is exact in double arithmetic.
class QParam {
public:
    static constexpr std::size_t kDefaultCacheSize = 512;

    explicit QParam(double q, std::size_t cache_size = kDefaultCacheSize);

    double q() const { return q_; }
    double ln_q() const { return ln_q_; }
    std::size_t cache_size() const { return qq_.size() - 1; }

    /// (q;q)_k, clamped to the table tail for k past the cache.
    double qq(std::size_t k) const {
        return qq_[k < qq_.size() ? k : qq_.size() - 1];
    }
    /// ln (q;q)_k, same clamping.
    double log_qq(std::size_t k) const {
        return log_qq_[k < log_qq_.size() ? k : log_qq_.size() - 1];
    }

private:
    double q_;
    double ln_q_;
    std::vector<double> qq_;
    std::vector<double> log_qq_;
};

/// Sign plus log-magnitude representation for values such as q^{-n^2 t} u^n
/// that overflow native doubles. sign == 0 encodes an exact zero and
/// log_mag is ignored.
struct LogScaled {
    int sign = 0;
    double log_mag = -std::numeric_limits<double>::infinity();

    static LogScaled from_real(double x) {
        if (x == 0.0) return {};
        return {x > 0.0 ? +1 : -1, std::log(std::abs(x))};
    }
    static LogScaled from_log(int sign, double log_mag) {
        if (sign == 0) return {};
        return {sign, log_mag};
    }

    double to_real() const { return sign == 0 ? 0.0 : sign * std::exp(log_mag); }
    bool is_zero() const { return sign == 0; }

    LogScaled abs() const { return sign == 0 ? LogScaled{} : LogScaled{1, log_mag}; }
    LogScaled negate() const { return {-sign, log_mag}; }

    friend LogScaled operator*(const LogScaled& a, const LogScaled& b) {
        if (a.sign == 0 || b.sign == 0) return {};
        return {a.sign * b.sign, a.log_mag + b.log_mag};
    }
    friend LogScaled operator/(const LogScaled& a, const LogScaled& b) {
        if (b.sign == 0) throw DomainError("LogScaled: division by zero");
        if (a.sign == 0) return {};
        return {a.sign * b.sign, a.log_mag - b.log_mag};
    }
};

/// Signed addition in log space.
LogScaled log_add(const LogScaled& a, const LogScaled& b);

/// x^p for x >= 0 in log space (integer or real exponent).
LogScaled log_pow(const LogScaled& x, double p);

/// Complex value in log-polar form: value = exp(log_mag) * e^{i arg}.
struct LogComplex {
    double log_mag = -std::numeric_limits<double>::infinity();
    double arg = 0.0;

    std::complex<double> to_complex() const {
        return std::polar(std::exp(log_mag), arg);
    }
    /// Collapse to LogScaled for values known to be real (arg a multiple
    /// of pi within tol); throws DomainError otherwise.
    LogScaled to_log_scaled(double tol = 1e-9) const;
};

/// Result of summing terms given by log magnitude and a constant phase step,
/// with the peak magnitude factored out: total = exp(log_scale) * sum.
struct ScaledSeriesSum {
    double log_scale = 0.0;
    std::complex<double> sum = 0.0;
    double abs_sum = 0.0;  // sum of |terms| / e^{log_scale}
    double err = 0.0;      // roundoff bound, in units of e^{log_scale}
};

/// Sums term_k = exp(log_mags[k]) * e^{i k phase_step} without ever forming
/// a term natively. Phase steps congruent to 0 or pi (mod 2 pi) take an
/// exact real sign path. arg_scales, when given, holds the magnitude scale
/// of each log_mags entry's CONSTITUENTS (e.g. |k^2 ln q| + |k ln z|):
/// log_mags[k] carries rounding error of order eps * arg_scales[k] even
/// when the constituents cancel, and err must account for it.
ScaledSeriesSum sum_log_terms(const std::vector<double>& log_mags,
                              double phase_step,
                              const std::vector<double>& arg_scales = {});

/// Numeric value with a rigorous bound on |true - value| covering both the
/// dropped tail and the accumulated floating-point roundoff.
struct CertifiedValue {
    std::complex<double> value;
    double tail_bound = 0.0;
    int terms_used = 1;

    double real() const { return value.real(); }
};

/// (a;q)_n = prod_{k=0}^{n-1} (1 - a q^k); empty product for n = 0.
std::complex<double> qpoch_finite(std::complex<double> a, const QParam& qp, int n);

/// (a;q)_inf with relative tail bound <= rel_tol.
/// Requires |a| < 1/q; throws NonConvergentError otherwise.
CertifiedValue qpoch_infinite(std::complex<double> a, const QParam& qp,
                              double rel_tol = 1e-12);

/// Gaussian binomial [n k]_q = (q;q)_n / ((q;q)_k (q;q)_{n-k}).
/// Throws OutOfRangeError unless 0 <= k <= n.
double qbinomial(int n, int k, const QParam& qp);

/// ln [n k]_q, used by the log-domain evaluators.
double log_qbinomial(int n, int k, const QParam& qp);

enum class EulerSeries {
    ProductSeries,     // (z;q)_inf   = sum q^{k(k-1)/2} (-z)^k / (q;q)_k
    ReciprocalSeries,  // 1/(z;q)_inf = sum z^k / (q;q)_k, |z| < 1
};

CertifiedValue euler_expand(std::complex<double> z, const QParam& qp,
                            EulerSeries kind, double tol = 1e-12);

/// | (az;q)_inf / (z;q)_inf - sum_k (a;q)_k z^k / (q;q)_k | with both sides
/// truncated at tolerance tol. Requires |z| < 1.
double qbinom_theorem_residual(std::complex<double> a, std::complex<double> z,
                               const QParam& qp, double tol = 1e-12);

}  // namespace qaudit
