#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "qwr/error.hpp"
#include "qwr/fixtures.hpp"
#include "qwr/pipeline.hpp"
#include "qwr/copy_gauge.hpp"
#include "qwr/thicken.hpp"

using qwr::PipelineConfig;

namespace {

const qwr::BoundCheck *find_check(const qwr::TransformReport &r, const std::string &expression) {
    for (const auto &c : r.bound_checks) {
        if (c.expression == expression) return &c;
    }
    return nullptr;
}

qwr::RandomCodeSpec applic_spec(std::size_t n, double beta, std::uint64_t seed) {
    qwr::RandomCodeSpec s;
    s.n = n;
    s.beta = beta;
    s.seed = seed;
    return s;
}

}  // namespace

TEST(ReduceFull, ToricThreeKeepsLogicalsAndRecordsTargets) {
    const auto code = qwr::fixtures::toric(3);
    auto r = qwr::reduce_full(code, PipelineConfig{}, 1);
    EXPECT_TRUE(r.code.commutes());
    EXPECT_EQ(oracle::k_of(r.code), 2U);

    const auto &summary = r.reports.back();
    EXPECT_EQ(summary.step, "reduce-full");
    EXPECT_TRUE(summary.satisfied());
    EXPECT_EQ(summary.params_before.k, 2U);
    EXPECT_EQ(summary.params_after.k, 2U);
    for (const char *e : {"w~_X <= 5", "q~_X <= 3", "w~_Z <= 5", "q~_Z <= 5"}) {
        const auto *c = find_check(summary, e);
        ASSERT_NE(c, nullptr) << e;
        EXPECT_TRUE(c->informational);
    }
    EXPECT_LE(summary.params_after.q_x, 3U);
    EXPECT_LE(summary.params_after.w_z, 5U);
    EXPECT_LE(summary.params_after.q_z, 5U);

    std::vector<std::string> steps;
    for (std::size_t i = 0; i + 1 < r.reports.size(); ++i) steps.push_back(r.reports[i].step);
    EXPECT_EQ(steps, (std::vector<std::string>{"copy-gauge", "thicken", "cone", "reduce-cone"}));
    EXPECT_EQ(summary.details["steps"].size(), steps.size());
}

TEST(ReduceFull, SteanePreservesKAtEveryStep) {
    auto r = qwr::reduce_full(qwr::fixtures::steane(), PipelineConfig{}, 4);
    for (const auto &rep : r.reports) {
        EXPECT_EQ(rep.params_before.k, 1U) << rep.step;
        EXPECT_EQ(rep.params_after.k, 1U) << rep.step;
        EXPECT_TRUE(rep.satisfied()) << rep.step;
    }
    EXPECT_EQ(oracle::k_of(r.code), 1U);
}

TEST(ReduceFull, StrategiesAndSkippedSteps) {
    const auto code = qwr::fixtures::toric(2);
    for (auto h : {qwr::HeightStrategy::Random, qwr::HeightStrategy::RandomMinimal, qwr::HeightStrategy::Coloring}) {
        PipelineConfig c;
        c.heights = h;
        auto r = qwr::reduce_full(code, c, 2);
        EXPECT_EQ(oracle::k_of(r.code), 2U) << qwr::to_string(h);
        EXPECT_EQ(r.reports[1].config["heights"], qwr::to_string(h));
    }
    PipelineConfig bare;
    bare.copy_gauge = false;
    bare.thicken = false;
    auto r = qwr::reduce_full(code, bare, 2);
    EXPECT_EQ(r.reports.front().step, "cone");
    EXPECT_EQ(oracle::k_of(r.code), 2U);
}

TEST(ReduceFull, RandomMinimalStaysWithinTheLocalLemmaRange) {
    const auto code = qwr::fixtures::toric(3);
    PipelineConfig c;
    c.heights = qwr::HeightStrategy::RandomMinimal;
    auto r = qwr::reduce_full(code, c, 9);
    const auto &th = r.reports[1];
    ASSERT_EQ(th.step, "thicken");
    const std::size_t ell = th.config["ell"];
    const auto gauged = r.reports[0].params_after;
    EXPECT_GE(ell * c.multiplicity, gauged.q_z);
    EXPECT_LE(ell, std::max<std::size_t>(2, qwr::local_lemma_ell(qwr::x_reduce(code).code, c.multiplicity)));
    EXPECT_LE(th.params_after.q_z, th.params_before.q_z);
}

TEST(ReduceFull, SoundnessTargetAddsTheStep) {
    PipelineConfig c;
    c.soundness_target = qwr::Rational::of(1, 2);
    auto r = qwr::reduce_full(qwr::fixtures::toric(2), c, 3);
    const bool has = std::any_of(r.reports.begin(), r.reports.end(),
                                 [](const auto &rep) { return rep.step == "improve-soundness"; });
    EXPECT_TRUE(has);
    // Too large for the dense oracle; the sparse rank is checked against it
    // separately.
    EXPECT_TRUE(r.code.commutes());
    EXPECT_EQ(qwr::validate(r.code).k, 2U);
}

TEST(ReduceFull, ByteDeterministic) {
    const auto code = qwr::fixtures::toric(2);
    PipelineConfig c;
    c.distance_trials = 3;
    auto a = qwr::reduce_full(code, c, 11);
    auto b = qwr::reduce_full(code, c, 11);
    EXPECT_EQ(qwr::reports_to_json(a.reports).dump(), qwr::reports_to_json(b.reports).dump());
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(qwr::reports_to_json(a.reports)["schema_version"], qwr::kReportSchemaVersion);
}

TEST(ReduceFull, ErrorsNameTheStep) {
    PipelineConfig c;
    c.heights = qwr::HeightStrategy::Coloring;
    c.ell = 1;
    try {
        qwr::reduce_full(qwr::fixtures::toric(3), c, 0);
        FAIL() << "expected a domain error";
    } catch (const qwr::DomainError &e) {
        EXPECT_EQ(e.detail()["step"], "thicken");
    }
}

TEST(ReduceFull, ApplicCodeLedger) {
    qwr::ApplicOptions o;
    o.graphs = false;
    auto a = qwr::build_applic_code(applic_spec(48, 0.5, 1), o);
    PipelineConfig c;
    c.heights = qwr::HeightStrategy::RandomMinimal;
    c.distance_trials = 4;
    auto r = qwr::reduce_full(a.code, c, 7);
    const auto &summary = r.reports.back();
    EXPECT_TRUE(r.code.commutes());
    EXPECT_EQ(summary.params_after.k, a.diagnostics.k);
    EXPECT_GT(summary.details["n_blowup"].get<double>(), 1.0);
    const auto &d = summary.details["distance_estimates"];
    for (const char *key : {"d_x_before", "d_z_before", "d_x_after", "d_z_after", "d_x_ratio", "d_z_ratio"}) {
        EXPECT_FALSE(d[key].is_null()) << key;
    }
}

TEST(ReduceFull, LargeCodesSkipEstimates) {
    PipelineConfig c;
    c.distance_trials = 2;
    c.estimate_max_qubits = 20;
    auto r = qwr::reduce_full(qwr::fixtures::toric(2), c, 1);
    const auto &d = r.reports.back().details["distance_estimates"];
    EXPECT_FALSE(d["d_x_before"].is_null());
    EXPECT_TRUE(d["d_x_after"].is_null());
    EXPECT_TRUE(d["d_x_ratio"].is_null());
}

TEST(PipelineConfig, JsonRoundTripAndUnknownKeys) {
    PipelineConfig c;
    c.heights = qwr::HeightStrategy::Coloring;
    c.ell = 7;
    c.soundness_target = qwr::Rational::of(2, 3);
    c.distance_trials = 5;
    const auto j = c.to_json();
    EXPECT_EQ(PipelineConfig::from_json(j).to_json(), j);
    EXPECT_EQ(PipelineConfig::from_json(nlohmann::json::object()).to_json(), PipelineConfig{}.to_json());
    EXPECT_THROW(PipelineConfig::from_json({{"elll", 3}}), qwr::DomainError);
    EXPECT_THROW(PipelineConfig::from_json({{"heights", "greedy"}}), qwr::DomainError);

    qwr::ApplicConfig a;
    a.ell_factor = 0.25;
    a.balance = false;
    a.reduce.ell_prime = 3;
    const auto ja = a.to_json();
    EXPECT_EQ(qwr::ApplicConfig::from_json(ja).to_json(), ja);
    EXPECT_EQ(ja["reduce"]["heights"], "random-min");
    EXPECT_THROW(qwr::ApplicConfig::from_json({{"applic", {{"cheeger", 1}}}}), qwr::DomainError);
}

TEST(ReduceApplic, SmallInstanceCompletes) {
    qwr::ApplicConfig c;
    c.applic.graphs = false;
    auto r = qwr::reduce_applic(applic_spec(32, 1, 1), c);
    EXPECT_TRUE(r.code.commutes());
    EXPECT_GT(r.scaling.k, 0U);
    EXPECT_EQ(r.scaling.k, r.diagnostics.k);
    EXPECT_EQ(r.scaling.n_initial, 32U);
    EXPECT_EQ(r.scaling.n_final, r.code.n());
    EXPECT_EQ(r.reports.front().step, "random");
    EXPECT_EQ(r.reports[1].step, "thicken");
    EXPECT_EQ(r.reports[1].config["ell"], 2);
    for (const auto &rep : r.reports) EXPECT_EQ(rep.params_after.k, r.scaling.k) << rep.step;
}

TEST(ReduceApplic, BalancingUsesTheThickeningIdentity) {
    qwr::ApplicConfig c;
    c.applic.graphs = false;
    c.distance_trials = 4;
    auto r = qwr::reduce_applic(applic_spec(16, 1, 1), c);
    const auto it = std::find_if(r.reports.begin(), r.reports.end(), [](const auto &rep) { return rep.step == "balance"; });
    ASSERT_NE(it, r.reports.end());
    const std::size_t factor = it->config["factor"];
    EXPECT_LE(factor, c.max_balance_factor);
    ASSERT_TRUE(r.scaling.d_x && r.scaling.d_z);
    const auto before = std::find_if(r.reports.begin(), r.reports.end(),
                                     [](const auto &rep) { return rep.step == "reduce-full"; });
    ASSERT_NE(before, r.reports.end());
    EXPECT_GE(r.code.n(), before->params_after.n * factor);
    EXPECT_EQ(it->details["d_x_estimate"], *r.scaling.d_x);
    EXPECT_EQ(r.scaling.k, r.diagnostics.k);
    EXPECT_TRUE(r.code.commutes());
}

TEST(ReduceApplic, RejectsDegenerateThickening) {
    qwr::ApplicConfig c;
    c.ell = 1;
    c.applic.graphs = false;
    try {
        qwr::reduce_applic(applic_spec(16, 1, 0), c);
        FAIL() << "expected a domain error";
    } catch (const qwr::DomainError &e) {
        EXPECT_EQ(e.detail()["step"], "thicken");
    }
}

TEST(ReduceApplic, Deterministic) {
    qwr::ApplicConfig c;
    c.applic.graphs = false;
    c.distance_trials = 2;
    auto a = qwr::reduce_applic(applic_spec(16, 1, 5), c);
    auto b = qwr::reduce_applic(applic_spec(16, 1, 5), c);
    EXPECT_EQ(qwr::reports_to_json(a.reports).dump(), qwr::reports_to_json(b.reports).dump());
    EXPECT_EQ(a.scaling.to_json(), b.scaling.to_json());
    EXPECT_EQ(a.code, b.code);
}
