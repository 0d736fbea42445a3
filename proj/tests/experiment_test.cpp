#include "botreg/experiment.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "botreg/errors.hpp"
#include "botreg/numeric.hpp"
#include "doctest.h"
#include "model_test_util.hpp"

using namespace botreg;

namespace {

constexpr std::int64_t kDay = 86400;
constexpr std::int64_t kSnapshot = 2000 * kDay;

ModelSpec spec_of(Algorithm a) {
    ModelSpec s;
    s.algorithm = a;
    return s;
}

// Accounts whose target is planted linearly in the tweet count; the score
// fields are independent noise, so only the profile columns explain it.
Dataset planted_dataset(std::size_t n, std::uint64_t seed) {
    RandomSource rng(seed);
    Dataset d;
    d.snapshot_time = kSnapshot;
    for (std::size_t i = 0; i < n; ++i) {
        AccountProfile p;
        p.account_id = "acc" + std::to_string(i);
        p.screen_name = "u" + std::to_string(i);
        p.name = "User " + std::to_string(i);
        p.biography = (i % 3 == 0) ? "" : "just here for the memes";
        p.location = (i % 2 == 0) ? "" : "town";
        p.url = (i % 4 == 0) ? "https://example.org" : "";
        p.followers_count = 10 + static_cast<std::int64_t>(rng.uniform() * 990.0);
        p.friends_count = 5 + static_cast<std::int64_t>(rng.uniform() * 500.0);
        p.statuses_count = static_cast<std::int64_t>(rng.uniform() * 1000.0);
        p.listed_count = static_cast<std::int64_t>(rng.uniform() * 20.0);
        p.created_at =
            kSnapshot - (1 + static_cast<std::int64_t>(rng.uniform() * 999.0)) * kDay;
        p.default_profile_image = rng.uniform() < 0.2;
        p.has_profile_image = rng.uniform() < 0.9;

        BotometerRecord s;
        s.account_id = p.account_id;
        s.sentiment = rng.uniform() * 5.0;
        s.friend_score = rng.uniform() * 5.0;
        s.user = rng.uniform() * 5.0;
        s.content = rng.uniform() * 5.0;
        s.temporal = rng.uniform() * 5.0;
        s.net = rng.uniform() * 5.0;
        s.cap_eng = rng.uniform();
        s.cap_uni = rng.uniform();
        s.score_eng = rng.uniform() * 5.0;
        s.score_uni = rng.uniform() * 5.0;
        s.tweets4ws = static_cast<std::int64_t>(rng.uniform() * 100.0);
        s.mentions4ws = static_cast<std::int64_t>(rng.uniform() * 40.0);

        DatasetRecord rec;
        rec.truth.account_id = p.account_id;
        rec.truth.bot_followee_pct = static_cast<double>(p.statuses_count) / 10.0;
        rec.truth.credulous = rec.truth.bot_followee_pct > 50.0;
        rec.profile = p;
        rec.scores = s;
        d.records.push_back(rec);
    }
    return d;
}

}  // namespace

TEST_CASE("three-row leave-one-out against the mean predictor") {
    const FeatureMatrix m =
        testutil::make_matrix({{0.0}, {1.0}, {2.0}}, {0.0, 3.0, 6.0});
    const FoldPlan plan = make_folds(3, 3, 1, 99);
    std::vector<FoldPredictions> preds;
    const EvalResult res =
        cross_validate(spec_of(Algorithm::ZeroR), m, plan, &preds);

    CHECK(res.algorithm == "ZeroR");
    CHECK(res.feature_set == "ClassA-");
    REQUIRE(res.folds.size() == 3);
    CHECK(res.n_train == 2);
    CHECK(res.n_test == 1);
    CHECK(res.plan_seed == 99);
    // Held-out targets 0, 3, 6 against the means of the other two: the
    // absolute errors are 4.5, 0, 4.5, so both aggregates are exactly 3.
    CHECK(res.mae == 3.0);
    CHECK(res.rmse == 3.0);

    const double total = 0.0 + 3.0 + 6.0;
    REQUIRE(preds.size() == 3);
    for (const FoldPredictions& fp : preds) {
        REQUIRE(fp.rows.size() == 1);
        const double left_out = m.targets[fp.rows[0]];
        CHECK(fp.y_real[0] == left_out);
        CHECK(fp.y_pred[0] == (total - left_out) / 2.0);
    }
}

TEST_CASE("a duplicate row in another fold is memorized by 1-NN") {
    const FeatureMatrix m = testutil::make_matrix(
        {{0.0}, {0.0}, {1.0}, {1.0}}, {5.0, 5.0, 9.0, 9.0});
    const FoldPlan plan = make_folds(4, 4, 1, 3);
    const EvalResult res = cross_validate(spec_of(Algorithm::IBk), m, plan);
    CHECK(res.mae == 0.0);
    CHECK(res.rmse == 0.0);
}

TEST_CASE("two algorithms see identical fold streams") {
    FeatureMatrix m = testutil::random_matrix(11, 20, 3);
    for (std::size_t i = 0; i < m.n_rows; ++i)
        m.targets[i] = 50.0 + m.values[i * 3] * 7.0;
    const FoldPlan plan = make_folds(20, 5, 2, 42);

    std::vector<FoldPredictions> a;
    std::vector<FoldPredictions> b;
    cross_validate(spec_of(Algorithm::ZeroR), m, plan, &a);
    cross_validate(spec_of(Algorithm::DecisionStump), m, plan, &b);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].repeat == b[i].repeat);
        CHECK(a[i].fold == b[i].fold);
        CHECK(a[i].rows == b[i].rows);
    }
}

TEST_CASE("plan and matrix row counts must agree") {
    const FeatureMatrix m =
        testutil::make_matrix({{0.0}, {1.0}, {2.0}}, {0.0, 3.0, 6.0});
    const FoldPlan plan = make_folds(4, 2, 1, 1);
    CHECK_THROWS_AS(cross_validate(spec_of(Algorithm::ZeroR), m, plan),
                    PairingError);
}

TEST_CASE("a stochastic spec without a seed is rejected up front") {
    const FeatureMatrix m = testutil::random_matrix(2, 12, 2);
    const FoldPlan plan = make_folds(12, 3, 1, 0);
    CHECK_THROWS_AS(cross_validate(spec_of(Algorithm::RandomForest), m, plan),
                    ConfigError);
}

TEST_CASE("fold failures carry repeat and fold context") {
    FeatureMatrix m = testutil::random_matrix(5, 12, 2);
    for (std::size_t i = 0; i < m.n_rows; ++i)
        m.targets[i] = 40.0 + m.values[i * 2] * 30.0;
    ModelSpec spec = spec_of(Algorithm::SMOreg);
    spec.hyperparameters["max_updates"] = 1.0;
    const FoldPlan plan = make_folds(12, 3, 1, 7);
    try {
        cross_validate(spec, m, plan);
        FAIL("expected a convergence failure");
    } catch (const ConvergenceError& e) {
        const std::string msg = e.what();
        CHECK(msg.rfind("repeat 0, fold 0: ", 0) == 0);
    }
}

TEST_CASE("stochastic cross-validation reproduces bit-identical scores") {
    FeatureMatrix m = testutil::random_matrix(21, 24, 3);
    for (std::size_t i = 0; i < m.n_rows; ++i)
        m.targets[i] = 30.0 + 10.0 * m.values[i * 3 + 1];
    ModelSpec spec = spec_of(Algorithm::RandomForest);
    spec.hyperparameters["trees"] = 5.0;
    spec.seed = 77;
    const FoldPlan plan = make_folds(24, 4, 2, 5);

    const EvalResult a = cross_validate(spec, m, plan);
    const EvalResult b = cross_validate(spec, m, plan);
    REQUIRE(a.folds.size() == b.folds.size());
    for (std::size_t i = 0; i < a.folds.size(); ++i) {
        CHECK(a.folds[i].mae == b.folds[i].mae);
        CHECK(a.folds[i].rmse == b.folds[i].rmse);
    }
    CHECK(a.mae == b.mae);
    CHECK(a.rmse == b.rmse);
}

TEST_CASE("experiment grid: baseline row first, planted column starred") {
    const Dataset d = planted_dataset(30, 9);
    ExperimentConfig cfg;
    cfg.specs = {spec_of(Algorithm::LinearRegression),
                 spec_of(Algorithm::DecisionStump)};
    cfg.sets = {FeatureSetTag::ClassAMinus, FeatureSetTag::BotometerPlus};
    cfg.k = 5;
    cfg.repeats = 2;
    cfg.seed = 1234;

    const ExperimentResult res = run_experiment(d, cfg);

    REQUIRE(res.specs.size() == 3);
    CHECK(res.specs[0].algorithm == Algorithm::ZeroR);
    CHECK(res.specs[1].algorithm == Algorithm::LinearRegression);
    CHECK(res.specs[2].algorithm == Algorithm::DecisionStump);
    REQUIRE(res.cells.size() == 6);
    CHECK(res.view == ViewKind::AllHumans);
    CHECK(res.plan.n == 30);
    CHECK(res.plan.k == 5);
    CHECK(res.plan.repeats == 2);
    CHECK(res.plan.seed == 1234);

    for (std::size_t si = 0; si < res.specs.size(); ++si) {
        for (std::size_t ti = 0; ti < res.sets.size(); ++ti) {
            const CellResult& c = res.cell(si, ti);
            CHECK(c.eval.algorithm == algorithm_name(res.specs[si].algorithm));
            CHECK(c.eval.feature_set == feature_set_label(res.sets[ti]));
            CHECK(c.spec.seed.has_value());
            CHECK(c.predictions.empty());
        }
    }
    CHECK(res.cell(1, 0).spec.seed != res.cell(1, 1).spec.seed);
    CHECK(res.cell(1, 0).spec.seed != res.cell(2, 0).spec.seed);

    // Baseline against itself: all differences zero, never significant.
    for (std::size_t ti = 0; ti < res.sets.size(); ++ti) {
        const CellResult& base = res.cell(0, ti);
        CHECK(base.mae_vs_baseline.t_statistic == 0.0);
        CHECK(base.mae_vs_baseline.degenerate);
        CHECK_FALSE(base.mae_vs_baseline.significant_better);
        CHECK_FALSE(base.rmse_vs_baseline.significant_better);
    }

    // The planted linear signal lives in the profile columns.
    const CellResult& lin = res.cell(1, 0);
    CHECK(lin.eval.mae < res.cell(0, 0).eval.mae);
    CHECK(lin.mae_vs_baseline.significant_better);
    CHECK(lin.rmse_vs_baseline.significant_better);
}

TEST_CASE("experiment results do not depend on the thread count") {
    const Dataset d = planted_dataset(24, 3);
    ExperimentConfig cfg;
    cfg.specs = {spec_of(Algorithm::REPTree), spec_of(Algorithm::IBk)};
    cfg.sets = {FeatureSetTag::ClassAMinus, FeatureSetTag::AllFeatures};
    cfg.k = 4;
    cfg.repeats = 2;
    cfg.seed = 5;
    cfg.capture_predictions = true;
    ExperimentConfig wide = cfg;
    wide.threads = 4;

    const ExperimentResult a = run_experiment(d, cfg);
    const ExperimentResult b = run_experiment(d, wide);
    REQUIRE(a.cells.size() == b.cells.size());
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        const CellResult& x = a.cells[i];
        const CellResult& y = b.cells[i];
        CHECK(x.spec == y.spec);
        REQUIRE(x.eval.folds.size() == y.eval.folds.size());
        for (std::size_t j = 0; j < x.eval.folds.size(); ++j) {
            CHECK(x.eval.folds[j].mae == y.eval.folds[j].mae);
            CHECK(x.eval.folds[j].rmse == y.eval.folds[j].rmse);
        }
        CHECK(x.eval.mae == y.eval.mae);
        CHECK(x.eval.rmse == y.eval.rmse);
        CHECK(x.mae_vs_baseline.t_statistic == y.mae_vs_baseline.t_statistic);
        CHECK(x.mae_vs_baseline.p_value == y.mae_vs_baseline.p_value);
        CHECK(x.mae_vs_baseline.significant_better ==
              y.mae_vs_baseline.significant_better);
        REQUIRE(x.predictions.size() == y.predictions.size());
        for (std::size_t j = 0; j < x.predictions.size(); ++j) {
            CHECK(x.predictions[j].rows == y.predictions[j].rows);
            CHECK(x.predictions[j].y_real == y.predictions[j].y_real);
            CHECK(x.predictions[j].y_pred == y.predictions[j].y_pred);
        }
    }
}

TEST_CASE("cell callback fires once per cell in grid order") {
    const Dataset d = planted_dataset(20, 1);
    ExperimentConfig cfg;
    cfg.specs = {spec_of(Algorithm::DecisionStump)};
    cfg.sets = {FeatureSetTag::ClassAMinus};
    cfg.k = 4;
    cfg.repeats = 1;
    cfg.seed = 2;
    std::vector<std::string> seen;
    cfg.on_cell = [&](const EvalResult& r) {
        seen.push_back(r.algorithm + "/" + r.feature_set);
    };
    run_experiment(d, cfg);
    REQUIRE(seen.size() == 2);
    CHECK(seen[0] == "ZeroR/ClassA-");
    CHECK(seen[1] == "DecisionStump/ClassA-");
}

TEST_CASE("baseline-only experiment has no stars") {
    const Dataset d = planted_dataset(20, 4);
    ExperimentConfig cfg;
    cfg.specs = {spec_of(Algorithm::ZeroR)};
    cfg.sets = {FeatureSetTag::ClassAMinus, FeatureSetTag::BotometerPlus,
                FeatureSetTag::AllFeatures};
    cfg.k = 5;
    cfg.repeats = 2;
    cfg.seed = 11;
    const ExperimentResult res = run_experiment(d, cfg);
    REQUIRE(res.specs.size() == 1);
    REQUIRE(res.cells.size() == 3);
    for (const CellResult& c : res.cells) {
        CHECK(c.mae_vs_baseline.degenerate);
        CHECK_FALSE(c.mae_vs_baseline.significant_better);
        CHECK_FALSE(c.rmse_vs_baseline.significant_better);
    }
}

TEST_CASE("naive mode scales the t statistic by the multiplier ratio") {
    const Dataset d = planted_dataset(30, 9);
    ExperimentConfig cfg;
    cfg.specs = {spec_of(Algorithm::LinearRegression)};
    cfg.sets = {FeatureSetTag::ClassAMinus};
    cfg.k = 5;
    cfg.repeats = 2;
    cfg.seed = 1234;
    const ExperimentResult corrected = run_experiment(d, cfg);
    cfg.corrected_ttest = false;
    const ExperimentResult naive = run_experiment(d, cfg);

    const TestResult& c = corrected.cell(1, 0).mae_vs_baseline;
    const TestResult& n = naive.cell(1, 0).mae_vs_baseline;
    REQUIRE_FALSE(c.degenerate);
    // Same mean and variance; only the variance multiplier changes:
    // corrected 1/(R k) + n_test/n_train = 0.35 vs naive 1/(R k) = 0.1.
    CHECK(n.t_statistic ==
          doctest::Approx(c.t_statistic * std::sqrt(3.5)).epsilon(1e-12));
    CHECK(std::fabs(n.t_statistic) > std::fabs(c.t_statistic));
}

TEST_CASE("cell failures name the algorithm and feature set") {
    const Dataset d = planted_dataset(24, 6);
    ExperimentConfig cfg;
    ModelSpec smo = spec_of(Algorithm::SMOreg);
    smo.hyperparameters["max_updates"] = 1.0;
    cfg.specs = {smo};
    cfg.sets = {FeatureSetTag::ClassAMinus};
    cfg.k = 4;
    cfg.repeats = 1;
    cfg.seed = 9;
    try {
        run_experiment(d, cfg);
        FAIL("expected a convergence failure");
    } catch (const ConvergenceError& e) {
        const std::string msg = e.what();
        CHECK(msg.rfind("SMOreg on ClassA-: repeat 0, fold 0: ", 0) == 0);
    }
}

TEST_CASE("experiment config screening") {
    const Dataset d = planted_dataset(20, 8);
    ExperimentConfig cfg;
    cfg.sets = {FeatureSetTag::ClassAMinus};
    cfg.k = 4;
    cfg.repeats = 1;

    SUBCASE("no feature sets") {
        cfg.sets.clear();
        CHECK_THROWS_AS(run_experiment(d, cfg), ConfigError);
    }
    SUBCASE("duplicate feature set") {
        cfg.sets.push_back(FeatureSetTag::ClassAMinus);
        CHECK_THROWS_AS(run_experiment(d, cfg), ConfigError);
    }
    SUBCASE("duplicate algorithm") {
        cfg.specs = {spec_of(Algorithm::IBk), spec_of(Algorithm::IBk)};
        CHECK_THROWS_AS(run_experiment(d, cfg), ConfigError);
    }
    SUBCASE("alpha at the boundary") {
        cfg.alpha = 1.0;
        CHECK_THROWS_AS(run_experiment(d, cfg), ConfigError);
    }
    SUBCASE("fold count exceeding the row count") {
        cfg.k = 21;
        CHECK_THROWS_AS(run_experiment(d, cfg), ConfigError);
    }
}
