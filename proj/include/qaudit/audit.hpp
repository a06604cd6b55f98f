#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qaudit/qcore.hpp"

namespace qaudit {

enum class CheckStatus { Pass, Fail, Inconclusive };

std::string to_string(CheckStatus s);
CheckStatus check_status_from_string(const std::string& s);

/// One verified identity, bound, or limit. Pass means
/// |measured - expected| <= tolerance; Inconclusive is reserved for
/// comparisons whose certified numerical error straddles the margin.
struct AuditCheck {
    std::string id;
    std::string description;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    CheckStatus status = CheckStatus::Fail;
};

struct AuditMetadata {
    std::string tool_version;
    std::string timestamp;  // ISO-8601 UTC; the only run-dependent field
    std::uint64_t seed = 0;
    double tol = 0.0;
    int n_max = 0;
    int sample_count = 0;
    int max_degree = 0;
};

struct AuditReport {
    std::vector<double> q_grid;
    std::vector<AuditCheck> checks;  // sorted by id
    AuditMetadata metadata;

    bool all_passed() const;
};

enum class Family { IM, SW };

/// Deterministic, platform-independent uniform generator (splitmix64).
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64();
    double uniform();                      // [0, 1)
    double uniform(double lo, double hi);  // [lo, hi)
    int uniform_int(int lo, int hi);       // [lo, hi] inclusive

private:
    std::uint64_t state_;
};

/// integral_0^inf A_q^2(u^-2) w_IM((u - 1/u)/2 | q) du = (q;q)_inf, checked
/// at relative tolerance rel_tol (plus the quadrature's own certified
/// error). The weight argument follows the substitution x = sinh(ln u)
/// that derives the identity. Note the measured constant is HALF the
/// 2 (q;q)_inf one would expect from the finite-degree substitution
/// identity: the substitution's two Jacobian halves carry equal mass
/// (u -> q^n/u swaps them) and one half escapes toward u = 0 in the
/// degree limit. audit_im_chain_identity / audit_im_half_identity verify
/// both statements at finite degree.
AuditCheck audit_im_integral(const QParam& qp, double rel_tol);

/// Exact finite-degree substitution identity:
/// integral bracket_n^2 (1 + q^n u^-2) w_IM((u-1/u)/2) du = 2 (q;q)_n.
AuditCheck audit_im_chain_identity(const QParam& qp, int n, double rel_tol);

/// Exact half-mass identity:
/// integral bracket_n^2 w_IM((u-1/u)/2) du = (q;q)_n.
AuditCheck audit_im_half_identity(const QParam& qp, int n, double rel_tol);

/// Adjudicates the weight-argument reading of the scaled-limit integral:
/// it is also evaluated with w_IM(u|q) taken literally (which diverges),
/// and the check passes when the sinh(ln u) reading is the converging one
/// that matches (q;q)_inf.
AuditCheck audit_im_weight_reading(const QParam& qp, double rel_tol);

/// Degenerate n = 0 cross-check of the same substitution chain:
/// integral_0^inf w_IM((u - 1/u)/2) (1 + u^-2) du = 2.
AuditCheck audit_im_jacobian_n0(const QParam& qp, double rel_tol);

/// integral_0^inf A_q^2(u^-1) w_SW(u;q) du = (q;q)_inf.
AuditCheck audit_sw_integral(const QParam& qp, double rel_tol);

/// Sanity variant with A_q^2 replaced by 1: the weight normalisation
/// integral_0^inf w_SW(u;q) du = 1.
AuditCheck audit_sw_weight_norm(const QParam& qp, double rel_tol);

/// Scaled-bracket residuals |bracket_n(u) - A_q(u^-2)| against their
/// published envelope, for each n in n_list; adds a decay check (residual
/// at n_max at most 1e-3 of the residual at n_min) when u > 1.
std::vector<AuditCheck> audit_im_asymptotic(const std::vector<int>& n_list,
                                            double u, const QParam& qp);

/// Same for the Stieltjes-Wigert brackets against A_q(u^-1)/(q;q)_inf.
std::vector<AuditCheck> audit_sw_asymptotic(const std::vector<int>& n_list,
                                            double u, const QParam& qp);

/// integral_0^inf bracket_n(u)^2 w_SW(u) du = 1/(q;q)_n for each n.
std::vector<AuditCheck> audit_sw_normalization(const std::vector<int>& n_list,
                                               const QParam& qp, double rel_tol);

/// Adjudicates the bracket prefactor q^{-2n} against the q^{-n} variant:
/// only the former satisfies the normalisation integral above.
AuditCheck audit_sw_prefactor_reading(const QParam& qp, int n, double rel_tol);

/// Gram matrix of the orthonormal family under its weight; passes when
/// max |Gram - I| < tol. max_degree is capped at 8.
std::vector<AuditCheck> audit_orthonormality(Family family, int max_degree,
                                             const QParam& qp, double tol);

/// Seeded random sweep over the four magnitude inequalities (A_q
/// exponential and Gaussian-type bounds, scaled IM and SW polynomial
/// bounds). One aggregate check per inequality; zero violations expected.
std::vector<AuditCheck> audit_inequalities(int sample_count, std::uint64_t seed,
                                           const std::vector<double>& q_grid);

/// |A_q((1-q) z) - exp(-z)| / |exp(-z)| strictly decreasing along q_list
/// with final relative error below 1e-2, for each z.
std::vector<AuditCheck> audit_q1_limit(
    const std::vector<std::complex<double>>& z_list,
    const std::vector<double>& q_list);

struct AuditConfig {
    std::vector<double> q_grid = {0.1, 0.3, 0.5, 0.7, 0.9};
    double tol = 1e-8;              // absolute tolerance for Gram entries
    double integral_rel_tol = 1e-6; // relative tolerance for the integrals
    std::uint64_t seed = 42;
    int n_max = 40;
    int sample_count = 10000;
    int max_degree = 8;
};

AuditReport run_full_audit(const AuditConfig& cfg);

}  // namespace qaudit
