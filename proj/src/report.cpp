#include "botreg/report.hpp"

#include <algorithm>

#include "botreg/errors.hpp"
#include "botreg/ingest.hpp"
#include "botreg/textio.hpp"
#include "json.hpp"

namespace botreg {

namespace {

void check_shape(const ComparisonTable& t) {
    if (t.algorithms.empty() || t.feature_sets.empty())
        throw EmptyInputError("comparison table has no rows or no columns");
    if (t.cells.size() != t.algorithms.size() * t.feature_sets.size())
        throw DimensionError("comparison table holds " +
                             std::to_string(t.cells.size()) +
                             " cells for a " +
                             std::to_string(t.algorithms.size()) + "x" +
                             std::to_string(t.feature_sets.size()) + " grid");
}

std::string render_markdown(const ComparisonTable& t) {
    std::string out = "| Algorithm |";
    for (const std::string& set : t.feature_sets) out += " " + set + " |";
    out += "\n|---|";
    for (std::size_t c = 0; c < t.feature_sets.size(); ++c) out += "---|";
    out += "\n";
    for (std::size_t r = 0; r < t.algorithms.size(); ++r) {
        out += "| " + t.algorithms[r] + " |";
        for (std::size_t c = 0; c < t.feature_sets.size(); ++c) {
            const TableCell& cell = t.cell(r, c);
            std::string s = format_fixed2(cell.score);
            if (cell.bold) s = "**" + s + "**";
            if (cell.starred) s += "*";
            out += " " + s + " |";
        }
        out += "\n";
    }
    return out;
}

const char* kCsvHeader = "algorithm,feature_set,score,starred,bold";

std::string render_csv(const ComparisonTable& t) {
    std::string out = kCsvHeader;
    out += "\n";
    for (std::size_t r = 0; r < t.algorithms.size(); ++r) {
        for (std::size_t c = 0; c < t.feature_sets.size(); ++c) {
            const TableCell& cell = t.cell(r, c);
            out += t.algorithms[r] + "," + t.feature_sets[c] + "," +
                   format_fixed2(cell.score) + "," +
                   (cell.starred ? "true" : "false") + "," +
                   (cell.bold ? "true" : "false") + "\n";
        }
    }
    return out;
}

}  // namespace

ComparisonTable build_table(const ExperimentResult& result, Metric metric) {
    if (result.cells.empty())
        throw EmptyInputError("experiment grid holds no cells");
    ComparisonTable t;
    t.metric = metric;
    t.view = result.view;
    for (const ModelSpec& s : result.specs)
        t.algorithms.push_back(algorithm_name(s.algorithm));
    for (const FeatureSetTag set : result.sets)
        t.feature_sets.push_back(feature_set_label(set));
    t.cells.reserve(result.cells.size());
    for (const CellResult& c : result.cells) {
        TableCell cell;
        if (metric == Metric::MAE) {
            cell.score = c.eval.mae;
            cell.starred = c.mae_vs_baseline.significant_better;
        } else {
            cell.score = c.eval.rmse;
            cell.starred = c.rmse_vs_baseline.significant_better;
        }
        t.cells.push_back(cell);
    }
    check_shape(t);
    mark_bold(t);
    return t;
}

void mark_bold(ComparisonTable& t) {
    check_shape(t);
    double best = t.cells.front().score;
    for (const TableCell& c : t.cells) best = std::min(best, c.score);
    for (TableCell& c : t.cells) c.bold = (c.score == best);
}

std::string render(const ComparisonTable& t, TableFormat format) {
    check_shape(t);
    return format == TableFormat::Markdown ? render_markdown(t)
                                           : render_csv(t);
}

ComparisonTable parse_table_csv(const std::string& text, Metric metric,
                                ViewKind view) {
    const std::vector<std::string_view> lines = split_lines(text);
    if (lines.empty())
        throw EmptyInputError("comparison table CSV is empty");
    {
        const std::vector<std::string_view> header = split_csv_line(lines[0]);
        const char* want[] = {"algorithm", "feature_set", "score", "starred",
                              "bold"};
        bool ok = header.size() == 5;
        for (std::size_t i = 0; ok && i < 5; ++i) ok = header[i] == want[i];
        if (!ok)
            throw ParseError(std::string("comparison table CSV header must "
                                         "be ") +
                             kCsvHeader);
    }
    if (lines.size() == 1)
        throw EmptyInputError("comparison table CSV has no data rows");

    ComparisonTable t;
    t.metric = metric;
    t.view = view;
    std::size_t col = 0;  // position inside the current row block
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::vector<std::string_view> f = split_csv_line(lines[i]);
        const std::string ctx =
            "comparison table CSV line " + std::to_string(i + 1);
        if (f.size() != 5)
            throw ParseError(ctx + ": expected 5 fields, got " +
                             std::to_string(f.size()));
        const std::string algo(f[0]);
        const std::string set(f[1]);
        TableCell cell;
        cell.score = parse_double(f[2], ctx + ", score");
        cell.starred = parse_bool(f[3], ctx + ", starred");
        cell.bold = parse_bool(f[4], ctx + ", bold");

        if (t.algorithms.empty() || algo != t.algorithms.back()) {
            if (!t.algorithms.empty() && col != t.feature_sets.size())
                throw ParseError(ctx + ": row block for " +
                                 t.algorithms.back() + " is incomplete");
            for (const std::string& seen : t.algorithms)
                if (seen == algo)
                    throw ParseError(ctx + ": rows for " + algo +
                                     " are not contiguous");
            t.algorithms.push_back(algo);
            col = 0;
        }
        if (t.algorithms.size() == 1) {
            // The first row block defines the column order.
            for (const std::string& seen : t.feature_sets)
                if (seen == set)
                    throw ParseError(ctx + ": duplicate feature set " + set);
            t.feature_sets.push_back(set);
        } else if (col >= t.feature_sets.size() || set != t.feature_sets[col]) {
            throw ParseError(ctx + ": feature set " + set +
                             " breaks the column order");
        }
        ++col;
        t.cells.push_back(cell);
    }
    if (col != t.feature_sets.size())
        throw ParseError("comparison table CSV: final row block for " +
                         t.algorithms.back() + " is incomplete");
    return t;
}

std::string experiment_json(const ExperimentResult& result) {
    using ordered_json = nlohmann::ordered_json;
    ordered_json doc;
    doc["format"] = "botreg-results";
    doc["version"] = 1;
    doc["view"] = view_key(result.view);
    doc["plan"] = {{"n", result.plan.n},
                   {"k", result.plan.k},
                   {"repeats", result.plan.repeats},
                   {"seed", result.plan.seed}};
    ordered_json cells = ordered_json::array();
    for (const CellResult& c : result.cells) {
        const auto test_json = [](const TestResult& tr) {
            return ordered_json{{"t", tr.t_statistic},
                                {"df", tr.degrees_of_freedom},
                                {"p", tr.p_value},
                                {"alpha", tr.alpha},
                                {"significant_better", tr.significant_better},
                                {"degenerate", tr.degenerate}};
        };
        ordered_json folds = ordered_json::array();
        for (const FoldScore& fs : c.eval.folds)
            folds.push_back({fs.repeat, fs.fold, fs.mae, fs.rmse});
        cells.push_back({{"algorithm", c.eval.algorithm},
                         {"feature_set", c.eval.feature_set},
                         {"mae", c.eval.mae},
                         {"rmse", c.eval.rmse},
                         {"n_train", c.eval.n_train},
                         {"n_test", c.eval.n_test},
                         {"tests",
                          {{"mae", test_json(c.mae_vs_baseline)},
                           {"rmse", test_json(c.rmse_vs_baseline)}}},
                         {"folds", std::move(folds)}});
    }
    doc["cells"] = std::move(cells);
    return doc.dump(2) + "\n";
}

}  // namespace botreg
