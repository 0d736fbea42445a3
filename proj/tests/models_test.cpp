#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "botreg/errors.hpp"
#include "botreg/models.hpp"
#include "botreg/textio.hpp"
#include "doctest.h"
#include "json.hpp"
#include "model_test_util.hpp"

using namespace botreg;
using testutil::make_matrix;
using testutil::predict_rows;
using testutil::random_matrix;

namespace {

ModelSpec spec_of(Algorithm a) {
    ModelSpec s;
    s.algorithm = a;
    return s;
}

double predict1(const TrainedModel& m, std::vector<double> x) {
    return predict_row(m, x.data(), x.size());
}

}  // namespace

TEST_CASE("algorithm names round-trip and cover the whole roster") {
    CHECK(all_algorithms().size() == 11);
    CHECK(all_algorithms().front() == Algorithm::ZeroR);
    for (Algorithm a : all_algorithms()) {
        CHECK(parse_algorithm(algorithm_name(a)) == a);
    }
    CHECK_THROWS_AS(parse_algorithm("M5Rules"), ConfigError);
    CHECK(algorithm_name(Algorithm::SMOreg) == "SMOreg");
    CHECK(algorithm_name(Algorithm::RegressionByDiscretization) ==
          "RegressionByDiscretization");
}

TEST_CASE("hyperparameter defaults resolve and overrides win") {
    ModelSpec s = spec_of(Algorithm::IBk);
    CHECK(hyper(s, "k") == 1.0);
    s.hyperparameters["k"] = 5.0;
    CHECK(hyper(s, "k") == 5.0);
    CHECK_THROWS_AS(hyper(s, "bins"), ConfigError);  // not an IBk knob

    ModelSpec smo = spec_of(Algorithm::SMOreg);
    CHECK(hyper(smo, "c") == 1.0);
    CHECK(hyper(smo, "epsilon") == 1e-3);
    CHECK(hyper(smo, "tolerance") == 1e-3);
    CHECK(hyper(smo, "max_updates") == 1e6);
}

TEST_CASE("spec validation rejects unknown keys and bad ranges") {
    ModelSpec s = spec_of(Algorithm::ZeroR);
    s.hyperparameters["k"] = 1.0;
    CHECK_THROWS_AS(validate_spec(s), ConfigError);

    auto bad = [](Algorithm a, const char* key, double v) {
        ModelSpec sp = spec_of(a);
        sp.seed = 1;  // rule out seed complaints
        sp.hyperparameters[key] = v;
        CHECK_THROWS_AS(validate_spec(sp), ConfigError);
    };
    bad(Algorithm::IBk, "k", 0.0);
    bad(Algorithm::IBk, "k", 2.5);
    bad(Algorithm::AdditiveRegression, "shrinkage", 1.5);
    bad(Algorithm::AdditiveRegression, "iterations", -1.0);
    bad(Algorithm::RegressionByDiscretization, "bins", 0.0);
    bad(Algorithm::GaussianProcesses, "noise", 0.0);
    bad(Algorithm::GaussianProcesses, "gamma", -1.0);
    bad(Algorithm::SMOreg, "c", 0.0);
    bad(Algorithm::SMOreg, "tolerance", 0.0);
    bad(Algorithm::REPTree, "prune", 2.0);
    bad(Algorithm::REPTree, "min_leaf", 0.0);
    bad(Algorithm::RandomForest, "trees", 0.0);
    bad(Algorithm::LinearRegression, "ridge", -1e-9);
}

TEST_CASE("stochastic fits demand a seed") {
    ModelSpec forest = spec_of(Algorithm::RandomForest);
    CHECK_THROWS_AS(validate_spec(forest), ConfigError);
    forest.seed = 7;
    CHECK_NOTHROW(validate_spec(forest));

    ModelSpec rep = spec_of(Algorithm::REPTree);
    CHECK_THROWS_AS(validate_spec(rep), ConfigError);
    rep.hyperparameters["prune"] = 0.0;
    CHECK_NOTHROW(validate_spec(rep));  // unpruned tree is deterministic
    rep.hyperparameters["prune"] = 1.0;
    rep.seed = 3;
    CHECK_NOTHROW(validate_spec(rep));
}

TEST_CASE("fit rejects degenerate matrices") {
    FeatureMatrix empty;
    CHECK_THROWS_AS(fit(spec_of(Algorithm::ZeroR), empty), EmptyInputError);

    FeatureMatrix m = make_matrix({{1.0}, {2.0}}, {1.0, 2.0});
    m.targets.pop_back();
    CHECK_THROWS_AS(fit(spec_of(Algorithm::ZeroR), m), DimensionError);

    FeatureMatrix no_cols;
    no_cols.n_rows = 2;
    no_cols.targets = {1.0, 2.0};
    no_cols.ids = {"a", "b"};
    CHECK_THROWS_AS(fit(spec_of(Algorithm::ZeroR), no_cols), DimensionError);
}

TEST_CASE("predict checks the feature set and width") {
    FeatureMatrix m = make_matrix({{1.0}, {2.0}}, {3.0, 5.0});
    m.set = FeatureSetTag::BotometerPlus;
    TrainedModel model = fit(spec_of(Algorithm::ZeroR), m);

    FeatureVector wrong_set{FeatureSetTag::AllFeatures, {1.0}};
    CHECK_THROWS_AS(predict(model, wrong_set), FeatureSetMismatchError);
    FeatureVector wrong_width{FeatureSetTag::BotometerPlus, {1.0, 2.0}};
    CHECK_THROWS_AS(predict(model, wrong_width), DimensionError);
    FeatureVector ok{FeatureSetTag::BotometerPlus, {1.0}};
    CHECK(predict(model, ok) == doctest::Approx(4.0));
}

TEST_CASE("mean-only model averages the targets and ignores inputs") {
    FeatureMatrix m = make_matrix({{1.0}, {9.0}, {-3.0}, {0.0}},
                                  {1.0, 2.0, 3.0, 4.0});
    TrainedModel model = fit(spec_of(Algorithm::ZeroR), m);
    CHECK(std::get<ZeroRState>(model.state).mean == 2.5);
    CHECK(predict1(model, {123.0}) == 2.5);
    CHECK(predict1(model, {-7.0}) == 2.5);

    FeatureMatrix one = make_matrix({{0.0}}, {7.0});
    CHECK(predict1(fit(spec_of(Algorithm::ZeroR), one), {5.0}) == 7.0);
}

TEST_CASE("single split finds the obvious boundary") {
    FeatureMatrix m =
        make_matrix({{1.0}, {2.0}, {10.0}, {11.0}}, {0.0, 0.0, 10.0, 10.0});
    TrainedModel model = fit(spec_of(Algorithm::DecisionStump), m);
    const auto& st = std::get<StumpState>(model.state);
    CHECK(st.split);
    CHECK(st.feature == 0);
    CHECK(st.threshold == doctest::Approx(6.0));
    CHECK(st.left_value == 0.0);
    CHECK(st.right_value == 10.0);
    CHECK(predict1(model, {5.0}) == 0.0);
    CHECK(predict1(model, {7.0}) == 10.0);
}

TEST_CASE("constant targets leave the stump unsplit") {
    FeatureMatrix m = make_matrix({{1.0}, {2.0}, {3.0}}, {4.0, 4.0, 4.0});
    TrainedModel model = fit(spec_of(Algorithm::DecisionStump), m);
    const auto& st = std::get<StumpState>(model.state);
    CHECK_FALSE(st.split);
    CHECK(predict1(model, {99.0}) == 4.0);
}

TEST_CASE("equal-quality splits go to the lower feature") {
    FeatureMatrix m = make_matrix(
        {{1.0, 1.0}, {2.0, 2.0}, {10.0, 10.0}, {11.0, 11.0}},
        {0.0, 0.0, 10.0, 10.0});
    TrainedModel model = fit(spec_of(Algorithm::DecisionStump), m);
    CHECK(std::get<StumpState>(model.state).feature == 0);
}

TEST_CASE("stump matches a brute-force search over every boundary") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        RandomSource rng(seed * 977);
        const std::size_t n = 5 + rng.uniform_index(35);
        const std::size_t d = 1 + rng.uniform_index(4);
        FeatureMatrix m = random_matrix(seed, n, d);
        for (double& t : m.targets) t = rng.uniform() * 100.0;

        TrainedModel model = fit(spec_of(Algorithm::DecisionStump), m);
        const double got = testutil::train_sse(model, m);

        // Brute force: every (feature, midpoint) candidate plus no-split.
        double mean = 0.0;
        for (double t : m.targets) mean += t;
        mean /= static_cast<double>(n);
        double best = 0.0;
        for (double t : m.targets) best += (t - mean) * (t - mean);
        for (std::size_t c = 0; c < d; ++c) {
            std::vector<double> vals;
            for (std::size_t i = 0; i < n; ++i) vals.push_back(m.row(i)[c]);
            std::sort(vals.begin(), vals.end());
            for (std::size_t p = 0; p + 1 < n; ++p) {
                if (vals[p] == vals[p + 1]) continue;
                const double thr = (vals[p] + vals[p + 1]) / 2.0;
                double sl = 0.0, sr = 0.0;
                std::size_t nl = 0, nr = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (m.row(i)[c] <= thr) {
                        sl += m.targets[i];
                        nl++;
                    } else {
                        sr += m.targets[i];
                        nr++;
                    }
                }
                const double ml = sl / static_cast<double>(nl);
                const double mr = sr / static_cast<double>(nr);
                double sse = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double pred = m.row(i)[c] <= thr ? ml : mr;
                    sse += (m.targets[i] - pred) * (m.targets[i] - pred);
                }
                best = std::min(best, sse);
            }
        }
        CHECK(got <= best + 1e-9);
    }
}

TEST_CASE("ridge regression recovers a planted linear rule") {
    FeatureMatrix m = random_matrix(42, 60, 4);
    for (std::size_t i = 0; i < m.n_rows; ++i) {
        const double* r = m.row(i);
        m.targets[i] = 3.0 + 2.0 * r[0] - r[1] + 0.5 * r[3];
    }
    TrainedModel model = fit(spec_of(Algorithm::LinearRegression), m);
    RandomSource rng(99);
    for (int q = 0; q < 10; ++q) {
        std::vector<double> x(4);
        for (double& v : x) v = rng.uniform() * 4.0 - 2.0;
        const double want = 3.0 + 2.0 * x[0] - x[1] + 0.5 * x[3];
        CHECK(predict1(model, x) == doctest::Approx(want).epsilon(1e-5));
    }
}

TEST_CASE("ridge regression survives duplicated columns") {
    FeatureMatrix m = random_matrix(43, 40, 2);
    for (std::size_t i = 0; i < m.n_rows; ++i) {
        double* r = m.row(i);
        r[1] = r[0];  // exactly collinear
        m.targets[i] = 1.0 + 4.0 * r[0];
    }
    TrainedModel model = fit(spec_of(Algorithm::LinearRegression), m);
    for (std::size_t i = 0; i < m.n_rows; ++i) {
        CHECK(predict_row(model, m.row(i), 2) ==
              doctest::Approx(m.targets[i]).epsilon(1e-5));
    }
}

TEST_CASE("constant-column matrix still fits with the default ridge") {
    FeatureMatrix m = make_matrix({{1.0, 5.0}, {2.0, 5.0}, {3.0, 5.0}},
                                  {1.0, 2.0, 3.0});
    TrainedModel model = fit(spec_of(Algorithm::LinearRegression), m);
    CHECK(predict1(model, {2.0, 5.0}) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("nearest neighbor fixtures") {
    SUBCASE("1-nn picks the closer row") {
        FeatureMatrix m = make_matrix({{0.0}, {10.0}}, {1.0, 9.0});
        TrainedModel model = fit(spec_of(Algorithm::IBk), m);
        CHECK(predict1(model, {2.0}) == 1.0);
        CHECK(predict1(model, {8.0}) == 9.0);
    }
    SUBCASE("distance ties break to the earlier row") {
        FeatureMatrix m = make_matrix({{0.0}, {2.0}}, {5.0, 9.0});
        TrainedModel model = fit(spec_of(Algorithm::IBk), m);
        CHECK(predict1(model, {1.0}) == 5.0);
    }
    SUBCASE("k equal to n reproduces the global mean") {
        FeatureMatrix m = random_matrix(7, 20, 3);
        RandomSource rng(8);
        for (double& t : m.targets) t = rng.uniform() * 50.0;
        ModelSpec s = spec_of(Algorithm::IBk);
        s.hyperparameters["k"] = 20.0;
        TrainedModel knn = fit(s, m);
        TrainedModel zero = fit(spec_of(Algorithm::ZeroR), m);
        for (int q = 0; q < 5; ++q) {
            std::vector<double> x = {rng.uniform(), rng.uniform(), rng.uniform()};
            CHECK(predict1(knn, x) == doctest::Approx(predict1(zero, x)).epsilon(1e-12));
        }
    }
    SUBCASE("k larger than the training set is capped") {
        FeatureMatrix m = make_matrix({{0.0}, {1.0}, {2.0}}, {3.0, 6.0, 9.0});
        ModelSpec s = spec_of(Algorithm::IBk);
        s.hyperparameters["k"] = 50.0;
        TrainedModel model = fit(s, m);
        CHECK(std::get<IbkState>(model.state).k == 3);
        CHECK(predict1(model, {1.0}) == doctest::Approx(6.0));
    }
}

TEST_CASE("k-nn matches a brute-force oracle in the rescaled space") {
    FeatureMatrix m = random_matrix(11, 25, 3);
    RandomSource rng(12);
    for (double& t : m.targets) t = rng.uniform() * 100.0;
    ModelSpec s = spec_of(Algorithm::IBk);
    s.hyperparameters["k"] = 4.0;
    TrainedModel model = fit(s, m);

    const auto& st = std::get<IbkState>(model.state);
    for (int q = 0; q < 20; ++q) {
        std::vector<double> x(3);
        for (double& v : x) v = rng.uniform() * 4.0 - 2.0;
        std::vector<double> xs(3);
        model.scaler.transform_row(x.data(), xs.data());
        std::vector<std::pair<double, std::size_t>> dist;
        for (std::size_t i = 0; i < st.n; ++i) {
            double d2 = 0.0;
            for (std::size_t c = 0; c < 3; ++c) {
                const double diff = xs[c] - st.x[i * 3 + c];
                d2 += diff * diff;
            }
            dist.push_back({d2, i});
        }
        std::sort(dist.begin(), dist.end());
        double want = 0.0;
        for (int i = 0; i < 4; ++i) want += st.y[dist[i].second];
        want /= 4.0;
        CHECK(predict1(model, x) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("locally weighted stump fixtures") {
    FeatureMatrix m = make_matrix({{0.0}, {0.5}, {1.0}}, {0.0, 1.0, 4.0});
    TrainedModel model = fit(spec_of(Algorithm::LWL), m);
    // Far ends get the local boundary; the middle point carries all the
    // weight at its own location, so the stump degenerates to its target.
    CHECK(predict1(model, {0.0}) == doctest::Approx(0.0));
    CHECK(predict1(model, {1.0}) == doctest::Approx(4.0));
    CHECK(predict1(model, {0.5}) == doctest::Approx(1.0));

    SUBCASE("single training row") {
        FeatureMatrix one = make_matrix({{0.0}}, {3.0});
        TrainedModel lone = fit(spec_of(Algorithm::LWL), one);
        CHECK(predict1(lone, {5.0}) == 3.0);
    }
    SUBCASE("equally distant rows fall back to uniform weights") {
        FeatureMatrix two = make_matrix({{0.0}, {1.0}}, {0.0, 4.0});
        TrainedModel mid = fit(spec_of(Algorithm::LWL), two);
        // Both weights hit zero at the midpoint; the uniform stump splits
        // at 0.5 and the query lands on its left branch.
        CHECK(predict1(mid, {0.5}) == doctest::Approx(0.0));
    }
}

TEST_CASE("boosted stumps") {
    SUBCASE("zero shrinkage reduces to the mean") {
        FeatureMatrix m = random_matrix(21, 30, 2);
        RandomSource rng(22);
        for (double& t : m.targets) t = rng.uniform() * 10.0;
        ModelSpec s = spec_of(Algorithm::AdditiveRegression);
        s.hyperparameters["shrinkage"] = 0.0;
        TrainedModel model = fit(s, m);
        TrainedModel zero = fit(spec_of(Algorithm::ZeroR), m);
        CHECK(predict1(model, {0.3, 0.7}) == predict1(zero, {0.3, 0.7}));
    }
    SUBCASE("zero iterations reduces to the mean") {
        FeatureMatrix m = random_matrix(23, 30, 2);
        ModelSpec s = spec_of(Algorithm::AdditiveRegression);
        s.hyperparameters["iterations"] = 0.0;
        TrainedModel model = fit(s, m);
        CHECK(std::get<AdditiveState>(model.state).stages.empty());
    }
    SUBCASE("one full-strength stage behaves like a lone stump") {
        for (std::uint64_t seed = 50; seed < 60; ++seed) {
            FeatureMatrix m = random_matrix(seed, 25, 3);
            RandomSource rng(seed + 1000);
            for (double& t : m.targets) t = rng.uniform() * 40.0;
            ModelSpec s = spec_of(Algorithm::AdditiveRegression);
            s.hyperparameters["iterations"] = 1.0;
            TrainedModel boosted = fit(s, m);
            TrainedModel stump = fit(spec_of(Algorithm::DecisionStump), m);
            for (std::size_t i = 0; i < m.n_rows; ++i) {
                CHECK(predict_row(boosted, m.row(i), 3) ==
                      doctest::Approx(predict_row(stump, m.row(i), 3)).epsilon(1e-9));
            }
        }
    }
    SUBCASE("training error never rises with more stages") {
        FeatureMatrix m = random_matrix(31, 40, 3);
        RandomSource rng(32);
        for (std::size_t i = 0; i < m.n_rows; ++i) {
            m.targets[i] = m.row(i)[0] * 5.0 + rng.uniform();
        }
        double prev = 1e300;
        for (double iters = 0.0; iters <= 6.0; iters += 1.0) {
            ModelSpec s = spec_of(Algorithm::AdditiveRegression);
            s.hyperparameters["iterations"] = iters;
            const double sse = testutil::train_sse(fit(s, m), m);
            CHECK(sse <= prev + 1e-9);
            prev = sse;
        }
    }
    SUBCASE("default depth is ten stages") {
        FeatureMatrix m = random_matrix(33, 15, 2);
        TrainedModel model = fit(spec_of(Algorithm::AdditiveRegression), m);
        CHECK(std::get<AdditiveState>(model.state).stages.size() == 10);
    }
}

namespace {

TrainedModel fit_small(Algorithm a) {
    FeatureMatrix m = random_matrix(static_cast<std::uint64_t>(a) + 500, 14, 3);
    RandomSource rng(static_cast<std::uint64_t>(a) + 900);
    for (std::size_t i = 0; i < m.n_rows; ++i) {
        m.targets[i] = m.row(i)[0] * 10.0 + rng.uniform() * 5.0;
    }
    ModelSpec s = spec_of(a);
    if (a == Algorithm::RandomForest) {
        s.hyperparameters["trees"] = 5.0;
    }
    if (spec_is_stochastic(s)) s.seed = 1234;
    return fit(s, m);
}

}  // namespace

TEST_CASE("models round-trip through their file form") {
    const std::string path =
        "/tmp/botreg_model_rt_" + std::to_string(::getpid()) + ".json";
    for (Algorithm a : all_algorithms()) {
        CAPTURE(algorithm_name(a));
        TrainedModel model = fit_small(a);
        save_model(model, path);
        TrainedModel back = load_model(path);
        CHECK(back == model);
        // Predictions agree bit for bit, including rebuilt lazy state.
        FeatureMatrix probe = random_matrix(77, 6, 3);
        for (std::size_t i = 0; i < probe.n_rows; ++i) {
            CHECK(predict_row(back, probe.row(i), 3) ==
                  predict_row(model, probe.row(i), 3));
        }
    }
    std::remove(path.c_str());
}

TEST_CASE("model files with the wrong shape are refused") {
    const std::string path =
        "/tmp/botreg_model_bad_" + std::to_string(::getpid()) + ".json";
    TrainedModel model = fit_small(Algorithm::LinearRegression);
    save_model(model, path);
    const std::string good = read_file(path);

    auto expect_refused = [&](const std::string& text) {
        write_file_atomic(path, text);
        CHECK_THROWS_AS(load_model(path), ValueError);
    };

    auto j = nlohmann::ordered_json::parse(good);
    j["version"] = 2;
    expect_refused(j.dump());

    j = nlohmann::ordered_json::parse(good);
    j["feature_names"][0] = "renamed";
    expect_refused(j.dump());

    j = nlohmann::ordered_json::parse(good);
    j["state"]["kind"] = "wat";
    expect_refused(j.dump());

    j = nlohmann::ordered_json::parse(good);
    j["state"]["weights"].push_back(1.5);  // width no longer matches
    expect_refused(j.dump());

    write_file_atomic(path, "not json at all {{{");
    CHECK_THROWS_AS(load_model(path), ParseError);

    std::remove(path.c_str());
    CHECK_THROWS_AS(load_model(path), IoError);
}

TEST_CASE("shifting every target shifts predictions by the same amount") {
    FeatureMatrix m = random_matrix(61, 30, 3);
    RandomSource rng(62);
    for (double& t : m.targets) t = rng.uniform() * 20.0;
    FeatureMatrix shifted = m;
    for (double& t : shifted.targets) t += 100.0;

    for (Algorithm a : {Algorithm::ZeroR, Algorithm::DecisionStump,
                        Algorithm::LinearRegression, Algorithm::IBk,
                        Algorithm::GaussianProcesses, Algorithm::SMOreg}) {
        CAPTURE(algorithm_name(a));
        ModelSpec s = spec_of(a);
        TrainedModel base = fit(s, m);
        TrainedModel moved = fit(s, shifted);
        for (int q = 0; q < 5; ++q) {
            std::vector<double> x = {rng.uniform(), rng.uniform(), rng.uniform()};
            CHECK(predict1(moved, x) ==
                  doctest::Approx(predict1(base, x) + 100.0).epsilon(1e-7));
        }
    }
}
