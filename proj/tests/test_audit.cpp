#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <set>

#include "qaudit/report_io.hpp"

using namespace qaudit;

TEST_CASE("scaled-limit integral of the Ismail-Masson family") {
    // the limit integral carries exactly half the finite-degree
    // substitution mass: its value is (q;q)_inf, not 2 (q;q)_inf
    const QParam qp(0.5);
    const AuditCheck c = audit_im_integral(qp, 1e-6);
    CHECK(c.status == CheckStatus::Pass);
    CHECK(c.expected == doctest::Approx(0.28878809508660242).epsilon(1e-13));
    CHECK(c.measured == doctest::Approx(c.expected).epsilon(1e-6));

    const AuditCheck c3 = audit_im_integral(QParam(0.3), 1e-6);
    CHECK(c3.status == CheckStatus::Pass);
}

TEST_CASE("finite-degree substitution identities pin the factor of two") {
    for (double q : {0.3, 0.5}) {
        const QParam qp(q);
        const AuditCheck chain = audit_im_chain_identity(qp, 8, 1e-6);
        CHECK(chain.status == CheckStatus::Pass);
        CHECK(chain.expected == doctest::Approx(2.0 * qp.qq(8)).epsilon(1e-14));
        const AuditCheck half = audit_im_half_identity(qp, 8, 1e-6);
        CHECK(half.status == CheckStatus::Pass);
        CHECK(half.measured == doctest::Approx(0.5 * chain.measured).epsilon(1e-6));
    }
}

TEST_CASE("weight-argument adjudication picks the sinh(ln u) reading") {
    for (double q : {0.3, 0.5}) {
        const AuditCheck c = audit_im_weight_reading(QParam(q), 1e-6);
        CHECK(c.status == CheckStatus::Pass);
        CHECK(c.measured == 1.0);
        CHECK(c.description.find("literal") != std::string::npos);
    }
}

TEST_CASE("degree-0 substitution chain integrates to 2") {
    const AuditCheck c = audit_im_jacobian_n0(QParam(0.5), 1e-6);
    CHECK(c.status == CheckStatus::Pass);
    CHECK(c.measured == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("scaled-limit integral of the Stieltjes-Wigert family") {
    const QParam qp(0.5);
    const AuditCheck c = audit_sw_integral(qp, 1e-6);
    CHECK(c.status == CheckStatus::Pass);
    CHECK(c.expected == doctest::Approx(0.28878809508660242).epsilon(1e-13));
    CHECK(c.measured == doctest::Approx(c.expected).epsilon(1e-6));

    CHECK(audit_sw_integral(QParam(0.8), 1e-6).status == CheckStatus::Pass);
    CHECK(audit_sw_weight_norm(qp, 1e-6).measured ==
          doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("bracket normalisation integrals") {
    const QParam qp(0.5);
    const auto checks = audit_sw_normalization({0, 2, 4}, qp, 1e-6);
    REQUIRE(checks.size() == 3);
    for (const auto& c : checks) CHECK(c.status == CheckStatus::Pass);
    CHECK(checks[2].expected == doctest::Approx(3.2507936507936508).epsilon(1e-12));
    CHECK(checks[2].measured == doctest::Approx(3.2507936507936508).epsilon(1e-6));
}

TEST_CASE("bracket prefactor adjudication") {
    const AuditCheck c = audit_sw_prefactor_reading(QParam(0.5), 4, 1e-6);
    CHECK(c.status == CheckStatus::Pass);
    CHECK(c.measured == 1.0);
}

TEST_CASE("asymptotic envelopes") {
    const QParam qp(0.5);
    std::vector<int> n_list;
    for (int n = 4; n <= 40; n += 4) n_list.push_back(n);
    SUBCASE("IM, u = 2: all inside, residuals decay") {
        const auto checks = audit_im_asymptotic(n_list, 2.0, qp);
        REQUIRE(checks.size() == n_list.size() + 1);  // + decay check
        for (const auto& c : checks) CHECK(c.status == CheckStatus::Pass);
    }
    SUBCASE("IM, u = 1: inside the envelope, no decay requirement") {
        const auto checks = audit_im_asymptotic(n_list, 1.0, qp);
        REQUIRE(checks.size() == n_list.size());
        for (const auto& c : checks) CHECK(c.status == CheckStatus::Pass);
    }
    SUBCASE("IM, n = 0 has a large envelope") {
        const auto checks = audit_im_asymptotic({0}, 1.0, qp);
        REQUIRE(checks.size() == 1);
        CHECK(checks[0].status == CheckStatus::Pass);
    }
    SUBCASE("SW, u = 1.5") {
        const auto checks = audit_sw_asymptotic(n_list, 1.5, qp);
        for (const auto& c : checks) CHECK(c.status == CheckStatus::Pass);
    }
}

TEST_CASE("orthonormality Gram checks") {
    CHECK(audit_orthonormality(Family::IM, 4, QParam(0.5), 1e-8)[0].status ==
          CheckStatus::Pass);
    CHECK(audit_orthonormality(Family::SW, 4, QParam(0.5), 1e-8)[0].status ==
          CheckStatus::Pass);
    const auto deg0 = audit_orthonormality(Family::SW, 0, QParam(0.7), 1e-8);
    CHECK(deg0[0].status == CheckStatus::Pass);
    CHECK(deg0[0].measured <= 1e-8);
    CHECK_THROWS_AS(audit_orthonormality(Family::IM, 9, QParam(0.5), 1e-8),
                    OutOfRangeError);
}

TEST_CASE("inequality sweeps: no violations, no inconclusives") {
    const auto checks = audit_inequalities(500, 42, {0.3, 0.6, 0.9});
    REQUIRE(checks.size() == 4);
    for (const auto& c : checks) {
        CAPTURE(c.id);
        CAPTURE(c.description);
        CHECK(c.status == CheckStatus::Pass);
        CHECK(c.measured == 0.0);
    }
}

TEST_CASE("q -> 1 limit audit") {
    const auto checks =
        audit_q1_limit({{1.0, 0.0}, {-3.0, 0.0}, {0.0, 2.0}}, {0.9, 0.99, 0.999});
    REQUIRE(checks.size() == 3);
    for (const auto& c : checks) {
        CHECK(c.status == CheckStatus::Pass);
        CHECK(c.measured < 1e-2);
    }
}

TEST_CASE("full audit: deterministic, sorted, unique ids, all pass") {
    AuditConfig cfg;
    cfg.q_grid = {0.5};
    cfg.sample_count = 200;
    cfg.n_max = 12;
    cfg.max_degree = 3;
    const AuditReport a = run_full_audit(cfg);
    const AuditReport b = run_full_audit(cfg);
    CHECK(a.all_passed());

    std::set<std::string> ids;
    for (const auto& c : a.checks) ids.insert(c.id);
    CHECK(ids.size() == a.checks.size());
    CHECK(std::is_sorted(a.checks.begin(), a.checks.end(),
                         [](const AuditCheck& x, const AuditCheck& y) {
                             return x.id < y.id;
                         }));

    // byte-identical modulo the timestamp
    AuditReport a2 = a, b2 = b;
    a2.metadata.timestamp = b2.metadata.timestamp = "";
    CHECK(report_to_json(a2) == report_to_json(b2));
    CHECK(report_to_csv(a2) == report_to_csv(b2));
}

TEST_CASE("report serialisation round-trips losslessly") {
    AuditReport r;
    r.q_grid = {0.3, 0.5};
    r.metadata.tool_version = "0.1.0";
    r.metadata.timestamp = "2024-01-01T00:00:00Z";
    r.metadata.seed = 42;
    r.metadata.tol = 1e-8;
    r.metadata.n_max = 40;
    r.metadata.sample_count = 10;
    r.metadata.max_degree = 8;
    AuditCheck c;
    c.id = "demo.check";
    c.description = "quotes \" and, commas\nand newlines";
    c.measured = 0.1 + 0.2;  // not exactly representable: tests 17-digit text
    c.expected = 0.3;
    c.tolerance = 1e-16;
    c.status = CheckStatus::Inconclusive;
    r.checks.push_back(c);

    const std::string text = report_to_json(r);
    const AuditReport back = report_from_json(text);
    CHECK(report_to_json(back) == text);
    CHECK(back.checks[0].measured == r.checks[0].measured);
    CHECK(back.checks[0].description == r.checks[0].description);
    CHECK(back.checks[0].status == CheckStatus::Inconclusive);

    CHECK_THROWS_AS(report_from_json("{not json"), Error);
    CHECK_THROWS_AS(report_from_json("{\"metadata\": {}}"), Error);
}

TEST_CASE("csv and json carry identical numeric content") {
    AuditConfig cfg;
    cfg.q_grid = {0.5};
    cfg.sample_count = 50;
    cfg.n_max = 8;
    cfg.max_degree = 2;
    const AuditReport r = run_full_audit(cfg);
    const std::string csv = report_to_csv(r);
    const nlohmann::json j = nlohmann::json::parse(report_to_json(r));

    // walk CSV rows and compare the three numeric columns bit-for-bit
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);  // header
    std::size_t idx = 0;
    while (std::getline(is, line)) {
        REQUIRE(idx < j["checks"].size());
        // numeric columns sit between the last three commas save one
        const auto last = line.rfind(',');
        const auto c3 = line.rfind(',', last - 1);
        const auto c2 = line.rfind(',', c3 - 1);
        const auto c1 = line.rfind(',', c2 - 1);
        const double measured = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        const double expected = std::stod(line.substr(c2 + 1, c3 - c2 - 1));
        const double tolerance = std::stod(line.substr(c3 + 1, last - c3 - 1));
        CHECK(measured == j["checks"][idx]["measured"].get<double>());
        CHECK(expected == j["checks"][idx]["expected"].get<double>());
        CHECK(tolerance == j["checks"][idx]["tolerance"].get<double>());
        ++idx;
    }
    CHECK(idx == j["checks"].size());
}
