#include "botreg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "botreg/errors.hpp"
#include "botreg/features.hpp"
#include "botreg/ingest.hpp"
#include "botreg/numeric.hpp"

namespace botreg {

namespace {

constexpr std::int64_t kTenYears = 3650LL * 86400LL;

std::int64_t lognormal_count(RandomSource& rng, double mu, double sigma) {
    return std::llround(std::exp(rng.normal() * sigma + mu));
}

std::string account_id(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "acct%06zu", i + 1);
    return buf;
}

}  // namespace

const std::vector<double>& default_planted_weights() {
    static const std::vector<double> w = [] {
        std::vector<double> v(feature_dimension(FeatureSetTag::AllFeatures),
                              0.0);
        v[8] = 5.0;    // has_profile_image
        v[17] = 5.0;   // has_biography
        v[24] = 50.0;  // cap_eng
        v[25] = 30.0;  // cap_uni
        return v;
    }();
    return w;
}

SynthData generate(const SynthConfig& cfg) {
    if (cfg.n_accounts < 20)
        throw ConfigError("synth: need at least 20 accounts, got " +
                          std::to_string(cfg.n_accounts));
    if (!(cfg.credulous_fraction > 0.0 && cfg.credulous_fraction < 1.0))
        throw ConfigError(
            "synth: credulous fraction must lie strictly between 0 and 1");
    if (!(cfg.noise_std >= 0.0))
        throw ConfigError("synth: noise std must be non-negative");
    const std::vector<double>& weights = cfg.planted_weights.empty()
                                             ? default_planted_weights()
                                             : cfg.planted_weights;
    const std::size_t width = feature_dimension(FeatureSetTag::AllFeatures);
    if (weights.size() != width)
        throw ConfigError("synth: planted weights need " +
                          std::to_string(width) + " entries, got " +
                          std::to_string(weights.size()));
    if (std::all_of(weights.begin(), weights.end(),
                    [](double w) { return w == 0.0; }))
        throw ConfigError("synth: planted weights are all zero");

    RandomSource rng(cfg.seed);
    SynthData out;
    out.ground_truth.snapshot_time = cfg.snapshot_time;
    out.ground_truth.view = ViewKind::AllHumans;

    std::vector<double> targets;
    targets.reserve(cfg.n_accounts);
    for (std::size_t i = 0; i < cfg.n_accounts; ++i) {
        AccountProfile p;
        p.account_id = account_id(i);
        p.screen_name = "user" + std::to_string(i + 1);
        p.followers_count = lognormal_count(rng, 4.0, 2.0);
        p.friends_count = lognormal_count(rng, 4.5, 1.5);
        p.statuses_count = lognormal_count(rng, 4.5, 2.0);
        p.listed_count =
            std::max<std::int64_t>(0, lognormal_count(rng, 0.0, 1.2) - 1);
        p.created_at =
            cfg.snapshot_time - 1 -
            static_cast<std::int64_t>(rng.uniform() *
                                      static_cast<double>(kTenYears - 1));
        p.default_profile_image = rng.uniform() < 0.15;
        p.has_profile_image = rng.uniform() < 0.9;
        p.name = rng.uniform() < 0.05 ? "" : "Account " + std::to_string(i + 1);
        const double bio_draw = rng.uniform();
        if (bio_draw < 0.30)
            p.biography = "";
        else if (bio_draw < 0.42)
            p.biography = "definitely not a bot";
        else
            p.biography = "coffee, code, and long walks";
        p.location = rng.uniform() < 0.5 ? "" : "Internet";
        p.url = rng.uniform() < 0.25 ? "https://example.net/" + p.screen_name
                                     : "";

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
        s.tweets4ws = static_cast<std::int64_t>(rng.uniform() * 200.0);
        s.mentions4ws = static_cast<std::int64_t>(rng.uniform() * 80.0);

        const FeatureVector v = all_features(
            class_a_minus(p, cfg.snapshot_time), botometer_plus(s));
        double t = 0.0;
        for (std::size_t c = 0; c < width; ++c) t += weights[c] * v.values[c];
        t += rng.normal() * cfg.noise_std;
        targets.push_back(std::clamp(t, 0.0, 100.0));

        out.profiles.push_back(std::move(p));
        out.scores.push_back(std::move(s));
    }

    // Top round(n * fraction) targets are credulous; ties go to the earlier
    // account. Clamped so neither view comes out empty.
    std::vector<std::size_t> order(cfg.n_accounts);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (targets[a] != targets[b]) return targets[a] > targets[b];
        return a < b;
    });
    const double want = static_cast<double>(cfg.n_accounts) *
                        cfg.credulous_fraction;
    const std::size_t count = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::llround(want)), 1, cfg.n_accounts - 1);
    std::vector<bool> credulous(cfg.n_accounts, false);
    for (std::size_t r = 0; r < count; ++r) credulous[order[r]] = true;

    for (std::size_t i = 0; i < cfg.n_accounts; ++i) {
        GroundTruthRecord rec;
        rec.account_id = out.profiles[i].account_id;
        rec.credulous = credulous[i];
        rec.bot_followee_pct = targets[i];
        out.ground_truth.records.push_back(
            DatasetRecord{std::move(rec), std::nullopt, std::nullopt});
    }
    return out;
}

void write_synth_files(const SynthData& data, const std::string& dir) {
    const std::string base = dir.empty() ? "" : dir + "/";
    write_profiles_jsonl(data.profiles, base + "profiles.jsonl");
    write_botometer_csv(data.scores, base + "botometer.csv");
    write_ground_truth_csv(data.ground_truth, base + "ground_truth.csv");
}

}  // namespace botreg
