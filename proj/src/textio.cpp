#include "botreg/textio.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "botreg/errors.hpp"

namespace botreg {

std::string format_double(double x) {
    if (!std::isfinite(x)) throw ValueError("non-finite value in output");
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string format_int(std::int64_t x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

// Two decimals, half-up. Binary doubles can't represent most decimal ties,
// so rounding is done on the shortest fixed decimal string that round-trips:
// what you'd see is what gets rounded.
std::string format_fixed2(double x) {
    if (!std::isfinite(x)) throw ValueError("non-finite value in output");
    char buf[512];
    const auto res =
        std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed);
    std::string s(buf, res.ptr);

    bool negative = false;
    if (!s.empty() && s[0] == '-') {
        negative = true;
        s.erase(0, 1);
    }
    std::string intpart = s;
    std::string frac;
    if (const auto dot = s.find('.'); dot != std::string::npos) {
        intpart = s.substr(0, dot);
        frac = s.substr(dot + 1);
    }
    bool carry = false;
    if (frac.size() > 2) {
        carry = frac[2] >= '5';
        frac.resize(2);
    }
    while (frac.size() < 2) frac.push_back('0');
    if (carry) {
        std::string digits = intpart + frac;
        for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
            if (*it != '9') {
                ++*it;
                carry = false;
                break;
            }
            *it = '0';
        }
        if (carry) digits.insert(digits.begin(), '1');
        frac = digits.substr(digits.size() - 2);
        intpart = digits.substr(0, digits.size() - 2);
    }
    std::string out = intpart + "." + frac;
    if (negative && out != "0.00") out.insert(out.begin(), '-');
    return out;
}

double parse_double(std::string_view token, std::string_view context) {
    if (token.empty())
        throw ParseError("empty number in " + std::string(context));
    double value = 0.0;
    const auto res =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
        throw ParseError("bad number '" + std::string(token) + "' in " +
                         std::string(context));
    if (!std::isfinite(value))
        throw ParseError("non-finite number '" + std::string(token) + "' in " +
                         std::string(context));
    return value;
}

std::int64_t parse_int(std::string_view token, std::string_view context) {
    if (token.empty())
        throw ParseError("empty integer in " + std::string(context));
    std::int64_t value = 0;
    const auto res =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
        throw ParseError("bad integer '" + std::string(token) + "' in " +
                         std::string(context));
    return value;
}

bool parse_bool(std::string_view token, std::string_view context) {
    if (token == "true") return true;
    if (token == "false") return false;
    throw ParseError("bad boolean '" + std::string(token) + "' in " +
                     std::string(context) + " (want true/false)");
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        const std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed on " + path);
    return content;
}

void write_file_atomic(const std::string& path, std::string_view content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp + " for writing");
        out.write(content.data(),
                  static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::remove(tmp.c_str());
            throw IoError("write failed on " + tmp);
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoError("cannot move " + tmp + " into place at " + path);
    }
}

}  // namespace botreg
