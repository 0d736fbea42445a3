#include "botreg/ingest.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

#include "botreg/errors.hpp"
#include "botreg/textio.hpp"
#include "botreg/timeparse.hpp"

namespace botreg {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string at_line(const std::string& path, std::size_t line_no) {
    return path + " line " + std::to_string(line_no);
}

std::string join_ids(const std::vector<std::string>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ", ";
        out += ids[i];
    }
    return out;
}

const ordered_json& field(const ordered_json& obj, const char* key,
                          const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError("missing field '" + std::string(key) + "' at " +
                         where);
    return *it;
}

std::string string_field(const ordered_json& obj, const char* key,
                         const std::string& where) {
    const auto& v = field(obj, key, where);
    if (!v.is_string())
        throw ParseError("field '" + std::string(key) +
                         "' must be a string at " + where);
    return v.get<std::string>();
}

std::int64_t count_field(const ordered_json& obj, const char* key,
                         const std::string& where) {
    const auto& v = field(obj, key, where);
    if (!v.is_number_integer())
        throw ParseError("field '" + std::string(key) +
                         "' must be an integer at " + where);
    const auto n = v.get<std::int64_t>();
    if (n < 0)
        throw RangeError("field '" + std::string(key) + "' is negative (" +
                         std::to_string(n) + ") at " + where);
    return n;
}

bool bool_field(const ordered_json& obj, const char* key,
                const std::string& where) {
    const auto& v = field(obj, key, where);
    if (!v.is_boolean())
        throw ParseError("field '" + std::string(key) +
                         "' must be a boolean at " + where);
    return v.get<bool>();
}

}  // namespace

std::vector<AccountProfile> load_profiles(const std::string& path) {
    const std::string content = read_file(path);
    std::vector<AccountProfile> profiles;
    std::unordered_set<std::string> seen;
    std::size_t line_no = 0;
    for (const std::string_view line : split_lines(content)) {
        ++line_no;
        if (line.empty()) continue;
        const std::string where = at_line(path, line_no);
        ordered_json obj;
        try {
            obj = ordered_json::parse(line);
        } catch (const ordered_json::parse_error& e) {
            throw ParseError("bad JSON at " + where + ": " + e.what());
        }
        if (!obj.is_object())
            throw ParseError("profile line is not an object at " + where);

        AccountProfile p;
        p.account_id = string_field(obj, "account_id", where);
        if (p.account_id.empty())
            throw ParseError("empty account_id at " + where);
        p.screen_name = string_field(obj, "screen_name", where);
        p.name = string_field(obj, "name", where);
        p.biography = string_field(obj, "biography", where);
        p.location = string_field(obj, "location", where);
        p.url = string_field(obj, "url", where);
        p.followers_count = count_field(obj, "followers_count", where);
        p.friends_count = count_field(obj, "friends_count", where);
        p.statuses_count = count_field(obj, "statuses_count", where);
        p.listed_count = count_field(obj, "listed_count", where);
        p.created_at =
            parse_utc_timestamp(string_field(obj, "created_at", where));
        p.default_profile_image =
            bool_field(obj, "default_profile_image", where);
        p.has_profile_image = bool_field(obj, "has_profile_image", where);

        if (!seen.insert(p.account_id).second)
            throw DuplicateIdError("duplicate account_id '" + p.account_id +
                                   "' at " + where);
        profiles.push_back(std::move(p));
    }
    return profiles;
}

namespace {

constexpr std::array<const char*, 13> kBotometerColumns = {
    "account_id", "sentiment", "friend",    "user",      "content",
    "temporal",   "net",       "cap_eng",   "cap_uni",   "score_eng",
    "score_uni",  "tweets4ws", "mentions4ws"};

}  // namespace

std::vector<BotometerRecord> load_botometer(const std::string& path) {
    const std::string content = read_file(path);
    const auto lines = split_lines(content);
    if (lines.empty()) throw ParseError("missing header in " + path);

    const auto header = split_csv_line(lines[0]);
    std::unordered_map<std::string_view, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
    for (const char* name : kBotometerColumns)
        if (!col.count(name))
            throw ParseError("missing column '" + std::string(name) + "' in " +
                             path);

    std::vector<BotometerRecord> records;
    std::unordered_set<std::string> seen;
    for (std::size_t line_no = 2; line_no <= lines.size(); ++line_no) {
        const std::string_view line = lines[line_no - 1];
        if (line.empty() || line == "\r") continue;
        const std::string where = at_line(path, line_no);
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) +
                             " fields, got " + std::to_string(fields.size()) +
                             " at " + where);
        const auto f = [&](const char* name) { return fields[col[name]]; };

        BotometerRecord r;
        r.account_id = std::string(f("account_id"));
        if (r.account_id.empty())
            throw ParseError("empty account_id at " + where);
        r.sentiment = parse_double(f("sentiment"), where);
        r.friend_score = parse_double(f("friend"), where);
        r.user = parse_double(f("user"), where);
        r.content = parse_double(f("content"), where);
        r.temporal = parse_double(f("temporal"), where);
        r.net = parse_double(f("net"), where);
        r.cap_eng = parse_double(f("cap_eng"), where);
        r.cap_uni = parse_double(f("cap_uni"), where);
        r.score_eng = parse_double(f("score_eng"), where);
        r.score_uni = parse_double(f("score_uni"), where);
        r.tweets4ws = parse_int(f("tweets4ws"), where);
        r.mentions4ws = parse_int(f("mentions4ws"), where);

        if (r.cap_eng < 0.0 || r.cap_eng > 1.0)
            throw RangeError("cap_eng " + format_double(r.cap_eng) +
                             " outside [0,1] at " + where);
        if (r.cap_uni < 0.0 || r.cap_uni > 1.0)
            throw RangeError("cap_uni " + format_double(r.cap_uni) +
                             " outside [0,1] at " + where);
        if (r.tweets4ws < 0)
            throw RangeError("tweets4ws is negative at " + where);
        if (r.mentions4ws < 0)
            throw RangeError("mentions4ws is negative at " + where);

        if (!seen.insert(r.account_id).second)
            throw DuplicateIdError("duplicate account_id '" + r.account_id +
                                   "' at " + where);
        records.push_back(std::move(r));
    }
    return records;
}

Dataset load_ground_truth(const std::string& path,
                          std::int64_t snapshot_time) {
    const std::string content = read_file(path);
    const auto lines = split_lines(content);
    if (lines.empty()) throw ParseError("missing header in " + path);
    {
        const auto header = split_csv_line(lines[0]);
        const std::array<std::string_view, 3> want = {"account_id",
                                                      "credulous",
                                                      "bot_followee_pct"};
        if (header.size() != 3 || !std::equal(want.begin(), want.end(),
                                              header.begin()))
            throw ParseError("bad header in " + path +
                             " (want account_id,credulous,bot_followee_pct)");
    }

    Dataset d;
    d.snapshot_time = snapshot_time;
    d.view = ViewKind::AllHumans;
    std::unordered_set<std::string> seen;
    for (std::size_t line_no = 2; line_no <= lines.size(); ++line_no) {
        const std::string_view line = lines[line_no - 1];
        if (line.empty() || line == "\r") continue;
        const std::string where = at_line(path, line_no);
        const auto fields = split_csv_line(line);
        if (fields.size() != 3)
            throw ParseError("expected 3 fields, got " +
                             std::to_string(fields.size()) + " at " + where);

        GroundTruthRecord r;
        r.account_id = std::string(fields[0]);
        if (r.account_id.empty())
            throw ParseError("empty account_id at " + where);
        if (fields[1] == "0")
            r.credulous = false;
        else if (fields[1] == "1")
            r.credulous = true;
        else
            throw ValueError("credulous must be 0 or 1, got '" +
                             std::string(fields[1]) + "' at " + where);
        r.bot_followee_pct = parse_double(fields[2], where);
        if (r.bot_followee_pct < 0.0 || r.bot_followee_pct > 100.0)
            throw RangeError("bot_followee_pct " +
                             format_double(r.bot_followee_pct) +
                             " outside [0,100] at " + where);

        if (!seen.insert(r.account_id).second)
            throw DuplicateIdError("duplicate account_id '" + r.account_id +
                                   "' at " + where);
        d.records.push_back(DatasetRecord{std::move(r), std::nullopt,
                                          std::nullopt});
    }
    return d;
}

Dataset filter_credulous(const Dataset& d) {
    if (d.view != ViewKind::AllHumans)
        throw ValueError("credulous filter expects the all-humans view");
    Dataset out;
    out.snapshot_time = d.snapshot_time;
    out.view = ViewKind::CredulousOnly;
    for (const auto& rec : d.records)
        if (rec.truth.credulous) out.records.push_back(rec);
    if (out.records.empty())
        throw EmptyViewError("no credulous records in dataset");
    return out;
}

std::string view_key(ViewKind view) {
    return view == ViewKind::AllHumans ? "all" : "credulous";
}

ViewKind parse_view(const std::string& key) {
    if (key == "all") return ViewKind::AllHumans;
    if (key == "credulous") return ViewKind::CredulousOnly;
    throw ConfigError("unknown dataset view \"" + key +
                      "\" (expected all or credulous)");
}

Dataset join_sources(const Dataset& gt,
                     const std::vector<AccountProfile>& profiles,
                     const std::vector<BotometerRecord>& scores) {
    std::unordered_map<std::string, const AccountProfile*> by_profile;
    for (const auto& p : profiles)
        if (!by_profile.emplace(p.account_id, &p).second)
            throw DuplicateIdError("duplicate account_id '" + p.account_id +
                                   "' among profiles");
    std::unordered_map<std::string, const BotometerRecord*> by_score;
    for (const auto& s : scores)
        if (!by_score.emplace(s.account_id, &s).second)
            throw DuplicateIdError("duplicate account_id '" + s.account_id +
                                   "' among score records");

    std::vector<std::string> missing;
    for (const auto& rec : gt.records)
        if (!by_profile.count(rec.truth.account_id))
            missing.push_back(rec.truth.account_id);
    if (!missing.empty())
        throw MissingProfileError("no profile for account(s): " +
                                  join_ids(missing));

    Dataset out = gt;
    for (auto& rec : out.records) {
        const AccountProfile* p = by_profile.at(rec.truth.account_id);
        if (p->created_at > out.snapshot_time)
            throw TemporalError("account " + rec.truth.account_id +
                                " created after the dataset snapshot (" +
                                format_utc_timestamp(p->created_at) + " > " +
                                format_utc_timestamp(out.snapshot_time) + ")");
        rec.profile = *p;
        if (const auto it = by_score.find(rec.truth.account_id);
            it != by_score.end())
            rec.scores = *it->second;
    }
    return out;
}

void write_profiles_jsonl(const std::vector<AccountProfile>& profiles,
                          const std::string& path) {
    std::string out;
    for (const auto& p : profiles) {
        ordered_json obj;
        obj["account_id"] = p.account_id;
        obj["screen_name"] = p.screen_name;
        obj["name"] = p.name;
        obj["biography"] = p.biography;
        obj["location"] = p.location;
        obj["url"] = p.url;
        obj["followers_count"] = p.followers_count;
        obj["friends_count"] = p.friends_count;
        obj["statuses_count"] = p.statuses_count;
        obj["listed_count"] = p.listed_count;
        obj["created_at"] = format_utc_timestamp(p.created_at);
        obj["default_profile_image"] = p.default_profile_image;
        obj["has_profile_image"] = p.has_profile_image;
        out += obj.dump();
        out += '\n';
    }
    write_file_atomic(path, out);
}

void write_botometer_csv(const std::vector<BotometerRecord>& records,
                         const std::string& path) {
    std::string out;
    for (std::size_t i = 0; i < kBotometerColumns.size(); ++i) {
        if (i) out += ',';
        out += kBotometerColumns[i];
    }
    out += '\n';
    for (const auto& r : records) {
        out += r.account_id;
        out += ',';
        out += format_double(r.sentiment);
        out += ',';
        out += format_double(r.friend_score);
        out += ',';
        out += format_double(r.user);
        out += ',';
        out += format_double(r.content);
        out += ',';
        out += format_double(r.temporal);
        out += ',';
        out += format_double(r.net);
        out += ',';
        out += format_double(r.cap_eng);
        out += ',';
        out += format_double(r.cap_uni);
        out += ',';
        out += format_double(r.score_eng);
        out += ',';
        out += format_double(r.score_uni);
        out += ',';
        out += format_int(r.tweets4ws);
        out += ',';
        out += format_int(r.mentions4ws);
        out += '\n';
    }
    write_file_atomic(path, out);
}

void write_ground_truth_csv(const Dataset& d, const std::string& path) {
    std::string out = "account_id,credulous,bot_followee_pct\n";
    for (const auto& rec : d.records) {
        out += rec.truth.account_id;
        out += ',';
        out += rec.truth.credulous ? '1' : '0';
        out += ',';
        out += format_double(rec.truth.bot_followee_pct);
        out += '\n';
    }
    write_file_atomic(path, out);
}

}  // namespace botreg
