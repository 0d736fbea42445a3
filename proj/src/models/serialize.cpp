#include <utility>

#include "botreg/errors.hpp"
#include "botreg/models.hpp"
#include "botreg/textio.hpp"
#include "internal.hpp"
#include "json.hpp"

namespace botreg {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kFormat = "botreg-model";
constexpr int kVersion = 1;

ordered_json encode_stump(const StumpState& s) {
    return {{"split", s.split},
            {"feature", s.feature},
            {"threshold", s.threshold},
            {"left_value", s.left_value},
            {"right_value", s.right_value}};
}

StumpState decode_stump(const ordered_json& j) {
    StumpState s;
    s.split = j.at("split").get<bool>();
    s.feature = j.at("feature").get<std::size_t>();
    s.threshold = j.at("threshold").get<double>();
    s.left_value = j.at("left_value").get<double>();
    s.right_value = j.at("right_value").get<double>();
    return s;
}

// Nodes as flat [feature, threshold, value, left, right] rows.
ordered_json encode_tree(const TreeState& t) {
    ordered_json nodes = ordered_json::array();
    for (const TreeNode& n : t.nodes) {
        nodes.push_back({n.feature, n.threshold, n.value, n.left, n.right});
    }
    return nodes;
}

TreeState decode_tree(const ordered_json& j) {
    TreeState t;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != 5) {
            throw ValueError("model file: malformed tree node");
        }
        TreeNode n;
        n.feature = row.at(0).get<std::int32_t>();
        n.threshold = row.at(1).get<double>();
        n.value = row.at(2).get<double>();
        n.left = row.at(3).get<std::int32_t>();
        n.right = row.at(4).get<std::int32_t>();
        t.nodes.push_back(n);
    }
    if (t.nodes.empty()) throw ValueError("model file: empty tree");
    const auto count = static_cast<std::int32_t>(t.nodes.size());
    for (const TreeNode& n : t.nodes) {
        if (n.feature >= 0 &&
            (n.left < 0 || n.left >= count || n.right < 0 || n.right >= count)) {
            throw ValueError("model file: tree child index out of range");
        }
    }
    return t;
}

struct StateEncoder {
    ordered_json operator()(const ZeroRState& s) const {
        return {{"kind", "zero_r"}, {"mean", s.mean}};
    }
    ordered_json operator()(const LinearState& s) const {
        return {{"kind", "linear"},
                {"weights", s.weights},
                {"intercept", s.intercept}};
    }
    ordered_json operator()(const IbkState& s) const {
        return {{"kind", "ibk"}, {"k", s.k},       {"n", s.n},
                {"d", s.d},      {"x", s.x},       {"y", s.y}};
    }
    ordered_json operator()(const LwlState& s) const {
        return {{"kind", "lwl"}, {"n", s.n}, {"d", s.d}, {"x", s.x}, {"y", s.y}};
    }
    ordered_json operator()(const StumpState& s) const {
        ordered_json j = encode_stump(s);
        j["kind"] = "stump";
        return j;
    }
    ordered_json operator()(const AdditiveState& s) const {
        ordered_json stages = ordered_json::array();
        for (const StumpState& st : s.stages) stages.push_back(encode_stump(st));
        return {{"kind", "additive"},
                {"base", s.base},
                {"shrinkage", s.shrinkage},
                {"stages", std::move(stages)}};
    }
    ordered_json operator()(const DiscretizeState& s) const {
        return {{"kind", "discretize"},
                {"lo", s.lo},
                {"width", s.width},
                {"bin_values", s.bin_values},
                {"tree", encode_tree(s.tree)}};
    }
    ordered_json operator()(const GpState& s) const {
        return {{"kind", "gp"},     {"gamma", s.gamma}, {"noise", s.noise},
                {"y_mean", s.y_mean}, {"n", s.n},       {"d", s.d},
                {"x", s.x},           {"alpha", s.alpha}};
    }
    ordered_json operator()(const SmoState& s) const {
        return {{"kind", "smo"},
                {"weights", s.weights},
                {"bias", s.bias},
                {"betas", s.betas}};
    }
    ordered_json operator()(const TreeState& s) const {
        return {{"kind", "tree"}, {"nodes", encode_tree(s)}};
    }
    ordered_json operator()(const ForestState& s) const {
        ordered_json trees = ordered_json::array();
        for (const TreeState& t : s.trees) trees.push_back(encode_tree(t));
        return {{"kind", "forest"}, {"trees", std::move(trees)}};
    }
};

ModelState decode_state(const ordered_json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero_r") {
        return ZeroRState{j.at("mean").get<double>()};
    }
    if (kind == "linear") {
        LinearState s;
        s.weights = j.at("weights").get<std::vector<double>>();
        s.intercept = j.at("intercept").get<double>();
        return s;
    }
    if (kind == "ibk") {
        IbkState s;
        s.k = j.at("k").get<std::size_t>();
        s.n = j.at("n").get<std::size_t>();
        s.d = j.at("d").get<std::size_t>();
        s.x = j.at("x").get<std::vector<double>>();
        s.y = j.at("y").get<std::vector<double>>();
        if (s.x.size() != s.n * s.d || s.y.size() != s.n || s.k < 1 || s.k > s.n) {
            throw ValueError("model file: inconsistent neighbor table");
        }
        return s;
    }
    if (kind == "lwl") {
        LwlState s;
        s.n = j.at("n").get<std::size_t>();
        s.d = j.at("d").get<std::size_t>();
        s.x = j.at("x").get<std::vector<double>>();
        s.y = j.at("y").get<std::vector<double>>();
        if (s.x.size() != s.n * s.d || s.y.size() != s.n || s.n == 0) {
            throw ValueError("model file: inconsistent instance table");
        }
        s.rebuild_order();
        return s;
    }
    if (kind == "stump") {
        return decode_stump(j);
    }
    if (kind == "additive") {
        AdditiveState s;
        s.base = j.at("base").get<double>();
        s.shrinkage = j.at("shrinkage").get<double>();
        for (const auto& st : j.at("stages")) s.stages.push_back(decode_stump(st));
        return s;
    }
    if (kind == "discretize") {
        DiscretizeState s;
        s.lo = j.at("lo").get<double>();
        s.width = j.at("width").get<double>();
        s.bin_values = j.at("bin_values").get<std::vector<double>>();
        s.tree = decode_tree(j.at("tree"));
        if (s.bin_values.empty()) {
            throw ValueError("model file: discretizer has no bins");
        }
        for (const TreeNode& n : s.tree.nodes) {
            if (n.feature < 0 &&
                (n.value < 0.0 ||
                 n.value >= static_cast<double>(s.bin_values.size()))) {
                throw ValueError("model file: bin label out of range");
            }
        }
        return s;
    }
    if (kind == "gp") {
        GpState s;
        s.gamma = j.at("gamma").get<double>();
        s.noise = j.at("noise").get<double>();
        s.y_mean = j.at("y_mean").get<double>();
        s.n = j.at("n").get<std::size_t>();
        s.d = j.at("d").get<std::size_t>();
        s.x = j.at("x").get<std::vector<double>>();
        s.alpha = j.at("alpha").get<std::vector<double>>();
        if (s.x.size() != s.n * s.d || s.alpha.size() != s.n) {
            throw ValueError("model file: inconsistent kernel state");
        }
        return s;
    }
    if (kind == "smo") {
        SmoState s;
        s.weights = j.at("weights").get<std::vector<double>>();
        s.bias = j.at("bias").get<double>();
        s.betas = j.at("betas").get<std::vector<double>>();
        return s;
    }
    if (kind == "tree") {
        return decode_tree(j.at("nodes"));
    }
    if (kind == "forest") {
        ForestState s;
        for (const auto& t : j.at("trees")) s.trees.push_back(decode_tree(t));
        if (s.trees.empty()) throw ValueError("model file: empty forest");
        return s;
    }
    throw ValueError("model file: unknown state kind \"" + kind + "\"");
}

// Reject states whose feature indexing disagrees with the declared width:
// split indices must stay below d, vector-shaped states must match exactly.
void verify_state_width(const ModelState& state, std::size_t d) {
    auto check_tree = [d](const TreeState& t) {
        for (const TreeNode& n : t.nodes) {
            if (n.feature >= 0 && static_cast<std::size_t>(n.feature) >= d) {
                throw ValueError("model file: split feature out of range");
            }
        }
    };
    auto check_exact = [d](std::size_t have) {
        if (have != d) throw ValueError("model file: state width mismatch");
    };
    if (const auto* s = std::get_if<StumpState>(&state)) {
        if (s->split && s->feature >= d) {
            throw ValueError("model file: split feature out of range");
        }
    } else if (const auto* a = std::get_if<AdditiveState>(&state)) {
        for (const StumpState& st : a->stages) {
            if (st.split && st.feature >= d) {
                throw ValueError("model file: split feature out of range");
            }
        }
    } else if (const auto* t = std::get_if<TreeState>(&state)) {
        check_tree(*t);
    } else if (const auto* f = std::get_if<ForestState>(&state)) {
        for (const TreeState& t2 : f->trees) check_tree(t2);
    } else if (const auto* dz = std::get_if<DiscretizeState>(&state)) {
        check_tree(dz->tree);
    } else if (const auto* l = std::get_if<LinearState>(&state)) {
        check_exact(l->weights.size());
    } else if (const auto* i = std::get_if<IbkState>(&state)) {
        check_exact(i->d);
    } else if (const auto* w = std::get_if<LwlState>(&state)) {
        check_exact(w->d);
    } else if (const auto* g = std::get_if<GpState>(&state)) {
        check_exact(g->d);
    } else if (const auto* m = std::get_if<SmoState>(&state)) {
        check_exact(m->weights.size());
    }
}

}  // namespace

void save_model(const TrainedModel& model, const std::string& path) {
    ordered_json j;
    j["format"] = kFormat;
    j["version"] = kVersion;
    j["algorithm"] = algorithm_name(model.spec.algorithm);
    ordered_json hp = ordered_json::object();
    for (const auto& [key, value] : model.spec.hyperparameters) hp[key] = value;
    j["hyperparameters"] = std::move(hp);
    if (model.spec.seed.has_value()) {
        j["seed"] = *model.spec.seed;
    } else {
        j["seed"] = nullptr;
    }
    j["feature_set"] = feature_set_key(model.feature_set);
    j["feature_names"] = model.feature_names;
    if (model.scaler.lo.empty()) {
        j["scaler"] = nullptr;
    } else {
        j["scaler"] = {{"lo", model.scaler.lo}, {"hi", model.scaler.hi}};
    }
    j["state"] = std::visit(StateEncoder{}, model.state);
    write_file_atomic(path, j.dump() + "\n");
}

TrainedModel load_model(const std::string& path) {
    const std::string text = read_file(path);
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("model file " + path + ": " + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != kFormat) {
            throw ValueError("model file " + path + ": not a model file");
        }
        if (j.at("version").get<int>() != kVersion) {
            throw ValueError("model file " + path + ": unsupported version " +
                             j.at("version").dump());
        }
        TrainedModel model;
        model.spec.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
        for (const auto& [key, value] : j.at("hyperparameters").items()) {
            if (!value.is_number()) {
                throw ValueError("model file " + path + ": hyperparameter \"" +
                                 key + "\" is not a number");
            }
            model.spec.hyperparameters[key] = value.get<double>();
        }
        if (!j.at("seed").is_null()) {
            model.spec.seed = j.at("seed").get<std::uint64_t>();
        }
        validate_spec(model.spec);
        model.feature_set = parse_feature_set(j.at("feature_set").get<std::string>());
        model.feature_names =
            j.at("feature_names").get<std::vector<std::string>>();
        const auto expected =
            detail::names_for(model.feature_set, model.feature_names.size());
        if (model.feature_names != expected) {
            throw ValueError("model file " + path +
                             ": feature names do not match feature set \"" +
                             feature_set_key(model.feature_set) + "\"");
        }
        if (!j.at("scaler").is_null()) {
            model.scaler.lo = j.at("scaler").at("lo").get<std::vector<double>>();
            model.scaler.hi = j.at("scaler").at("hi").get<std::vector<double>>();
            if (model.scaler.lo.size() != model.feature_names.size() ||
                model.scaler.hi.size() != model.feature_names.size()) {
                throw ValueError("model file " + path + ": scaler width mismatch");
            }
        }
        model.state = decode_state(j.at("state"));
        verify_state_width(model.state, model.feature_names.size());
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw ValueError("model file " + path + ": " + e.what());
    }
}

}  // namespace botreg
