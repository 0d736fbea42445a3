#pragma once

#include <string>
#include <vector>

#include "botreg/dataset.hpp"

namespace botreg {

// JSON-lines, one profile object per line; errors cite the 1-based line.
std::vector<AccountProfile> load_profiles(const std::string& path);

// CSV with header account_id,sentiment,friend,user,content,temporal,net,
// cap_eng,cap_uni,score_eng,score_uni,tweets4ws,mentions4ws (any column
// order; values land by header name).
std::vector<BotometerRecord> load_botometer(const std::string& path);

// CSV with header account_id,credulous,bot_followee_pct.
Dataset load_ground_truth(const std::string& path, std::int64_t snapshot_time);

Dataset filter_credulous(const Dataset& d);

// Config/CLI keys for the two dataset views: "all" / "credulous".
std::string view_key(ViewKind view);
ViewKind parse_view(const std::string& key);

// Attach profiles (required for every ground-truth id) and scores (optional;
// their absence only matters if a score-based feature set is built later).
Dataset join_sources(const Dataset& gt,
                     const std::vector<AccountProfile>& profiles,
                     const std::vector<BotometerRecord>& scores);

// Writers for the same three formats (atomic; exact round-trip).
void write_profiles_jsonl(const std::vector<AccountProfile>& profiles,
                          const std::string& path);
void write_botometer_csv(const std::vector<BotometerRecord>& records,
                         const std::string& path);
void write_ground_truth_csv(const Dataset& d, const std::string& path);

}  // namespace botreg
