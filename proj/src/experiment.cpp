#include "botreg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "botreg/errors.hpp"
#include "botreg/models.hpp"
#include "botreg/numeric.hpp"

namespace botreg {

namespace {

// Rethrows the in-flight exception with `prefix` prepended to its message.
// The two numerical failures keep their exact type (and payload); other
// category errors keep their category. Anything else passes through as-is.
[[noreturn]] void rethrow_with_prefix(const std::string& prefix) {
    try {
        throw;
    } catch (const NotPositiveDefiniteError& e) {
        throw NotPositiveDefiniteError(prefix + e.what(), e.pivot_index);
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(prefix + e.what());
    } catch (const RuntimeFailure& e) {
        throw RuntimeFailure(prefix + e.what());
    } catch (const InputError& e) {
        throw InputError(prefix + e.what());
    }
}

}  // namespace

EvalResult cross_validate(const ModelSpec& spec, const FeatureMatrix& m,
                          const FoldPlan& plan,
                          std::vector<FoldPredictions>* capture) {
    validate_spec(spec);
    if (plan.n != m.n_rows)
        throw PairingError("fold plan covers " + std::to_string(plan.n) +
                           " rows but the matrix has " +
                           std::to_string(m.n_rows));

    EvalResult res;
    res.algorithm = algorithm_name(spec.algorithm);
    res.feature_set = feature_set_label(m.set);
    res.plan_n = plan.n;
    res.plan_k = plan.k;
    res.plan_repeats = plan.repeats;
    res.plan_seed = plan.seed;
    res.folds.reserve(plan.repeats * plan.k);

    FeatureMatrix train;
    train.set = m.set;
    train.n_cols = m.n_cols;

    double mae_acc = 0.0;
    double rmse_acc = 0.0;
    for (std::size_t r = 0; r < plan.repeats; ++r) {
        for (std::size_t f = 0; f < plan.k; ++f) {
            const std::vector<std::uint32_t>& test = plan.test_rows[r][f];
            const std::vector<std::uint32_t> tr = plan.train_rows(r, f);
            train.n_rows = tr.size();
            train.values.resize(tr.size() * m.n_cols);
            train.targets.resize(tr.size());
            for (std::size_t i = 0; i < tr.size(); ++i) {
                const double* src = m.row(tr[i]);
                std::copy(src, src + m.n_cols, train.row(i));
                train.targets[i] = m.targets[tr[i]];
            }

            ModelSpec fold_spec = spec;
            if (spec.seed.has_value())
                fold_spec.seed =
                    RandomSource(*spec.seed).derive(r).derive(f).seed();

            PredictionSet p;
            p.y_real.reserve(test.size());
            p.y_pred.reserve(test.size());
            try {
                const TrainedModel model = fit(fold_spec, train);
                for (const std::uint32_t row : test) {
                    p.y_real.push_back(m.targets[row]);
                    p.y_pred.push_back(predict_row(model, m.row(row), m.n_cols));
                }
            } catch (...) {
                rethrow_with_prefix("repeat " + std::to_string(r) + ", fold " +
                                    std::to_string(f) + ": ");
            }

            FoldScore score;
            score.repeat = r;
            score.fold = f;
            score.mae = mae(p);
            score.rmse = rmse(p);
            mae_acc += score.mae;
            rmse_acc += score.rmse;
            res.folds.push_back(score);
            if (r == 0 && f == 0) {
                res.n_train = tr.size();
                res.n_test = test.size();
            }
            if (capture) {
                FoldPredictions fp;
                fp.repeat = r;
                fp.fold = f;
                fp.rows = test;
                fp.y_real = std::move(p.y_real);
                fp.y_pred = std::move(p.y_pred);
                capture->push_back(std::move(fp));
            }
        }
    }
    res.mae = mae_acc / static_cast<double>(res.folds.size());
    res.rmse = rmse_acc / static_cast<double>(res.folds.size());
    return res;
}

ExperimentResult run_experiment(const Dataset& d, const ExperimentConfig& cfg) {
    if (cfg.sets.empty())
        throw ConfigError("experiment: no feature sets selected");
    for (std::size_t i = 0; i < cfg.sets.size(); ++i)
        for (std::size_t j = i + 1; j < cfg.sets.size(); ++j)
            if (cfg.sets[i] == cfg.sets[j])
                throw ConfigError("experiment: feature set " +
                                  feature_set_label(cfg.sets[i]) +
                                  " listed twice");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        throw ConfigError("experiment: alpha must lie in (0, 1)");

    ExperimentResult out;
    out.sets = cfg.sets;
    out.view = d.view;
    out.specs = cfg.specs;

    // The baseline anchors row 0; every other row is tested against it.
    const auto is_baseline = [](const ModelSpec& s) {
        return s.algorithm == Algorithm::ZeroR;
    };
    const auto base_it =
        std::find_if(out.specs.begin(), out.specs.end(), is_baseline);
    if (base_it == out.specs.end())
        out.specs.insert(out.specs.begin(), ModelSpec{});
    else
        std::rotate(out.specs.begin(), base_it, base_it + 1);
    for (std::size_t i = 0; i < out.specs.size(); ++i)
        for (std::size_t j = i + 1; j < out.specs.size(); ++j)
            if (out.specs[i].algorithm == out.specs[j].algorithm)
                throw ConfigError("experiment: algorithm " +
                                  algorithm_name(out.specs[i].algorithm) +
                                  " listed twice");

    std::vector<FeatureMatrix> columns;
    columns.reserve(cfg.sets.size());
    for (const FeatureSetTag set : cfg.sets)
        columns.push_back(assemble_matrix(d, set));

    out.plan = make_folds(columns.front().n_rows, cfg.k, cfg.repeats, cfg.seed);

    // Give each cell its own seed so cells are decorrelated and the grid
    // reproduces bit-identically however the work is scheduled.
    const RandomSource root(cfg.seed);
    const std::size_t n_sets = cfg.sets.size();
    out.cells.resize(out.specs.size() * n_sets);
    for (std::size_t si = 0; si < out.specs.size(); ++si) {
        for (std::size_t ti = 0; ti < n_sets; ++ti) {
            CellResult& cell = out.cells[si * n_sets + ti];
            cell.spec = out.specs[si];
            cell.spec.seed = root.derive(algorithm_name(cell.spec.algorithm))
                                 .derive(feature_set_key(cfg.sets[ti]))
                                 .seed();
            cell.set = cfg.sets[ti];
            validate_spec(cell.spec);
        }
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(out.cells.size());
    std::mutex callback_mutex;
    const auto worker = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= out.cells.size()) return;
            CellResult& cell = out.cells[idx];
            try {
                std::vector<FoldPredictions> preds;
                cell.eval = cross_validate(
                    cell.spec, columns[idx % n_sets], out.plan,
                    cfg.capture_predictions ? &preds : nullptr);
                cell.predictions = std::move(preds);
                if (cfg.on_cell) {
                    const std::lock_guard<std::mutex> lock(callback_mutex);
                    cfg.on_cell(cell.eval);
                }
            } catch (...) {
                failures[idx] = std::current_exception();
            }
        }
    };
    const std::size_t n_threads =
        std::min(std::max<std::size_t>(1, cfg.threads), out.cells.size());
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    for (std::size_t idx = 0; idx < out.cells.size(); ++idx) {
        if (!failures[idx]) continue;
        const CellResult& cell = out.cells[idx];
        try {
            std::rethrow_exception(failures[idx]);
        } catch (...) {
            rethrow_with_prefix(algorithm_name(cell.spec.algorithm) + " on " +
                                feature_set_label(cell.set) + ": ");
        }
    }

    for (std::size_t ti = 0; ti < n_sets; ++ti) {
        const EvalResult& baseline = out.cells[ti].eval;
        for (std::size_t si = 0; si < out.specs.size(); ++si) {
            CellResult& cell = out.cells[si * n_sets + ti];
            cell.mae_vs_baseline =
                corrected_paired_ttest(cell.eval, baseline, Metric::MAE,
                                       cfg.alpha, cfg.corrected_ttest);
            cell.rmse_vs_baseline =
                corrected_paired_ttest(cell.eval, baseline, Metric::RMSE,
                                       cfg.alpha, cfg.corrected_ttest);
        }
    }
    return out;
}

}  // namespace botreg
