#include "manet/cli_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace manet::cli {

namespace {

// Shortest decimal string that round-trips the double, so 0.5 prints as
// "0.5" and not "0.50000000000000000". Relies on the same dtoa that the
// JSON serializer uses, keeping the two formats digit-for-digit identical.
std::string format_double(double v) {
    if (std::isfinite(v)) return nlohmann::json(v).dump();
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

}  // namespace

std::string format_value(const Value& v) {
    switch (v.index()) {
        case 0: return std::to_string(std::get<long long>(v));
        case 1: return format_double(std::get<double>(v));
        case 2: return std::get<std::string>(v);
        default: return std::get<bool>(v) ? "true" : "false";
    }
}

void RowWriter::write(const Row& row) {
    if (format_ == Format::CSV) {
        if (!header_written_) {
            for (std::size_t i = 0; i < row.size(); ++i)
                *out_ << (i ? "," : "") << row[i].first;
            *out_ << '\n';
            header_written_ = true;
        }
        for (std::size_t i = 0; i < row.size(); ++i)
            *out_ << (i ? "," : "") << format_value(row[i].second);
        *out_ << '\n';
    } else {
        nlohmann::ordered_json obj;
        for (const auto& [key, value] : row) {
            switch (value.index()) {
                case 0: obj[key] = std::get<long long>(value); break;
                case 1: {
                    double d = std::get<double>(value);
                    if (std::isfinite(d))
                        obj[key] = d;
                    else
                        obj[key] = format_double(d);
                    break;
                }
                case 2: obj[key] = std::get<std::string>(value); break;
                default: obj[key] = std::get<bool>(value); break;
            }
        }
        *out_ << obj.dump() << '\n';
    }
}

namespace {

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.empty()) throw std::invalid_argument("empty value list");
    return parts;
}

}  // namespace

std::vector<long long> parse_int_list(const std::string& text) {
    std::vector<long long> out;
    for (const auto& part : split_commas(text)) {
        std::size_t used = 0;
        long long v = std::stoll(part, &used);
        if (used != part.size())
            throw std::invalid_argument("bad integer in list: " + part);
        out.push_back(v);
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& part : split_commas(text)) {
        std::size_t used = 0;
        double v = std::stod(part, &used);
        if (used != part.size())
            throw std::invalid_argument("bad number in list: " + part);
        out.push_back(v);
    }
    return out;
}

namespace {

std::string trim(const std::string& s) {
    const auto from = s.find_first_not_of(" \t\r");
    if (from == std::string::npos) return "";
    const auto to = s.find_last_not_of(" \t\r");
    return s.substr(from, to - from + 1);
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_key_value_file(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file " + path);
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": expected key=value");
        pairs.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return pairs;
}

}  // namespace manet::cli
