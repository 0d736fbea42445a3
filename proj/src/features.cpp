#include "botreg/features.hpp"

#include <algorithm>
#include <cctype>

#include "botreg/errors.hpp"
#include "botreg/timeparse.hpp"

namespace botreg {

namespace {

const std::vector<std::string> kClassANames = {
    "friends_per_follower_sq",
    "age_days",
    "tweet_count",
    "has_name",
    "has_url",
    "following_rate",
    "default_image_after_60d",
    "listed",
    "has_profile_image",
    "friend_follower_ratio_ge_50",
    "bot_in_biography",
    "friend_count",
    "two_followers_ge_friends",
    "follower_count",
    "friend_follower_ratio_near_100",
    "no_bio_no_location_100_friends",
    "has_location",
    "has_biography",
};

const std::vector<std::string> kBotometerNames = {
    "sentiment", "friend",    "user",      "content",   "temporal",
    "net",       "cap_eng",   "cap_uni",   "score_eng", "score_uni",
    "tweets4ws", "mentions4ws",
};

const std::vector<std::string> kAllNames = [] {
    std::vector<std::string> names = kClassANames;
    names.insert(names.end(), kBotometerNames.begin(), kBotometerNames.end());
    return names;
}();

bool contains_bot(const std::string& text) {
    const auto lower = [](char c) {
        return static_cast<char>(
            std::tolower(static_cast<unsigned char>(c)));
    };
    for (std::size_t i = 0; i + 3 <= text.size(); ++i)
        if (lower(text[i]) == 'b' && lower(text[i + 1]) == 'o' &&
            lower(text[i + 2]) == 't')
            return true;
    return false;
}

}  // namespace

std::size_t feature_dimension(FeatureSetTag tag) {
    return feature_names(tag).size();
}

const std::vector<std::string>& feature_names(FeatureSetTag tag) {
    switch (tag) {
        case FeatureSetTag::ClassAMinus:
            return kClassANames;
        case FeatureSetTag::BotometerPlus:
            return kBotometerNames;
        case FeatureSetTag::AllFeatures:
            return kAllNames;
    }
    throw ValueError("unknown feature set tag");
}

std::string feature_set_label(FeatureSetTag tag) {
    switch (tag) {
        case FeatureSetTag::ClassAMinus:
            return "ClassA-";
        case FeatureSetTag::BotometerPlus:
            return "Botometer+";
        case FeatureSetTag::AllFeatures:
            return "All_features";
    }
    throw ValueError("unknown feature set tag");
}

std::string feature_set_key(FeatureSetTag tag) {
    switch (tag) {
        case FeatureSetTag::ClassAMinus:
            return "classa";
        case FeatureSetTag::BotometerPlus:
            return "botometer";
        case FeatureSetTag::AllFeatures:
            return "all";
    }
    throw ValueError("unknown feature set tag");
}

FeatureSetTag parse_feature_set(const std::string& key) {
    if (key == "classa") return FeatureSetTag::ClassAMinus;
    if (key == "botometer") return FeatureSetTag::BotometerPlus;
    if (key == "all") return FeatureSetTag::AllFeatures;
    throw ConfigError("unknown feature set '" + key +
                      "' (want classa, botometer, or all)");
}

FeatureVector class_a_minus(const AccountProfile& p,
                            std::int64_t snapshot_time) {
    if (snapshot_time < p.created_at)
        throw TemporalError("account " + p.account_id +
                            " created after the snapshot (" +
                            format_utc_timestamp(p.created_at) + " > " +
                            format_utc_timestamp(snapshot_time) + ")");

    const double friends = static_cast<double>(p.friends_count);
    const double followers = static_cast<double>(p.followers_count);
    const double followers_g = std::max(followers, 1.0);
    const std::int64_t age_days = days_between(p.created_at, snapshot_time);
    const double age_g = static_cast<double>(std::max<std::int64_t>(age_days, 1));
    const double ratio = friends / followers_g;

    FeatureVector v;
    v.set = FeatureSetTag::ClassAMinus;
    v.values = {
        friends / (followers_g * followers_g),
        static_cast<double>(age_days),
        static_cast<double>(p.statuses_count),
        p.name.empty() ? 0.0 : 1.0,
        p.url.empty() ? 0.0 : 1.0,
        friends / age_g,
        (p.default_profile_image && age_days >= 60) ? 1.0 : 0.0,
        p.listed_count > 0 ? 1.0 : 0.0,
        p.has_profile_image ? 1.0 : 0.0,
        ratio >= 50.0 ? 1.0 : 0.0,
        contains_bot(p.biography) ? 1.0 : 0.0,
        friends,
        2.0 * followers >= friends ? 1.0 : 0.0,
        followers,
        (ratio >= 90.0 && ratio <= 110.0) ? 1.0 : 0.0,
        (p.biography.empty() && p.location.empty() && p.friends_count >= 100)
            ? 1.0
            : 0.0,
        p.location.empty() ? 0.0 : 1.0,
        p.biography.empty() ? 0.0 : 1.0,
    };
    return v;
}

FeatureVector botometer_plus(const BotometerRecord& r) {
    FeatureVector v;
    v.set = FeatureSetTag::BotometerPlus;
    v.values = {
        r.sentiment,
        r.friend_score,
        r.user,
        r.content,
        r.temporal,
        r.net,
        r.cap_eng,
        r.cap_uni,
        r.score_eng,
        r.score_uni,
        static_cast<double>(r.tweets4ws),
        static_cast<double>(r.mentions4ws),
    };
    return v;
}

FeatureVector all_features(const FeatureVector& a, const FeatureVector& b) {
    if (a.set != FeatureSetTag::ClassAMinus ||
        b.set != FeatureSetTag::BotometerPlus)
        throw FeatureSetMismatchError(
            "concatenation takes a ClassA- vector then a Botometer+ vector");
    FeatureVector v;
    v.set = FeatureSetTag::AllFeatures;
    v.values = a.values;
    v.values.insert(v.values.end(), b.values.begin(), b.values.end());
    return v;
}

FeatureMatrix assemble_matrix(const Dataset& d, FeatureSetTag set) {
    const bool needs_profile = set != FeatureSetTag::BotometerPlus;
    const bool needs_scores = set != FeatureSetTag::ClassAMinus;

    std::vector<std::string> missing_profiles;
    std::vector<std::string> missing_scores;
    for (const auto& rec : d.records) {
        if (needs_profile && !rec.profile)
            missing_profiles.push_back(rec.truth.account_id);
        if (needs_scores && !rec.scores)
            missing_scores.push_back(rec.truth.account_id);
    }
    const auto join_ids = [](const std::vector<std::string>& ids) {
        std::string out;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (i) out += ", ";
            out += ids[i];
        }
        return out;
    };
    if (!missing_profiles.empty())
        throw MissingProfileError("no profile for account(s): " +
                                  join_ids(missing_profiles));
    if (!missing_scores.empty())
        throw MissingScoresError("no score record for account(s): " +
                                 join_ids(missing_scores));

    FeatureMatrix m;
    m.set = set;
    m.n_rows = d.records.size();
    m.n_cols = feature_dimension(set);
    m.values.reserve(m.n_rows * m.n_cols);
    m.targets.reserve(m.n_rows);
    m.ids.reserve(m.n_rows);
    for (const auto& rec : d.records) {
        FeatureVector v;
        switch (set) {
            case FeatureSetTag::ClassAMinus:
                v = class_a_minus(*rec.profile, d.snapshot_time);
                break;
            case FeatureSetTag::BotometerPlus:
                v = botometer_plus(*rec.scores);
                break;
            case FeatureSetTag::AllFeatures:
                v = all_features(class_a_minus(*rec.profile, d.snapshot_time),
                                 botometer_plus(*rec.scores));
                break;
        }
        m.values.insert(m.values.end(), v.values.begin(), v.values.end());
        m.targets.push_back(rec.truth.bot_followee_pct);
        m.ids.push_back(rec.truth.account_id);
    }
    return m;
}

ColumnScaler fit_scaler(const double* values, std::size_t n_rows,
                        std::size_t n_cols) {
    if (n_rows == 0) throw EmptyInputError("cannot fit a scaler on no rows");
    ColumnScaler s;
    s.lo.assign(n_cols, 0.0);
    s.hi.assign(n_cols, 0.0);
    for (std::size_t c = 0; c < n_cols; ++c) {
        double lo = values[c];
        double hi = values[c];
        for (std::size_t r = 1; r < n_rows; ++r) {
            const double x = values[r * n_cols + c];
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        s.lo[c] = lo;
        s.hi[c] = hi;
    }
    return s;
}

std::pair<FeatureMatrix, ColumnScaler> normalize_columns(
    const FeatureMatrix& m) {
    if (m.n_rows == 0) throw EmptyInputError("cannot normalize an empty matrix");
    ColumnScaler s = fit_scaler(m.values.data(), m.n_rows, m.n_cols);
    FeatureMatrix out = m;
    for (std::size_t r = 0; r < m.n_rows; ++r)
        s.transform_row(m.row(r), out.row(r));
    return {std::move(out), std::move(s)};
}

}  // namespace botreg
