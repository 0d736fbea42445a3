#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace botreg {

struct AccountProfile {
    std::string account_id;
    std::string screen_name;
    std::string name;
    std::string biography;
    std::string location;
    std::string url;
    std::int64_t followers_count = 0;
    std::int64_t friends_count = 0;
    std::int64_t statuses_count = 0;
    std::int64_t listed_count = 0;
    std::int64_t created_at = 0;  // epoch seconds, UTC
    bool default_profile_image = false;
    bool has_profile_image = false;

    bool operator==(const AccountProfile&) const = default;
};

struct BotometerRecord {
    std::string account_id;
    double sentiment = 0.0;
    double friend_score = 0.0;  // CSV column "friend"
    double user = 0.0;
    double content = 0.0;
    double temporal = 0.0;
    double net = 0.0;
    double cap_eng = 0.0;
    double cap_uni = 0.0;
    double score_eng = 0.0;
    double score_uni = 0.0;
    std::int64_t tweets4ws = 0;
    std::int64_t mentions4ws = 0;

    bool operator==(const BotometerRecord&) const = default;
};

struct GroundTruthRecord {
    std::string account_id;
    bool credulous = false;
    double bot_followee_pct = 0.0;  // percentage points, [0,100]

    bool operator==(const GroundTruthRecord&) const = default;
};

enum class ViewKind { AllHumans, CredulousOnly };

struct DatasetRecord {
    GroundTruthRecord truth;
    std::optional<AccountProfile> profile;    // filled by join_sources
    std::optional<BotometerRecord> scores;    // may stay absent (see features)

    bool operator==(const DatasetRecord&) const = default;
};

struct Dataset {
    std::vector<DatasetRecord> records;
    std::int64_t snapshot_time = 0;
    ViewKind view = ViewKind::AllHumans;

    bool operator==(const Dataset&) const = default;
};

}  // namespace botreg
