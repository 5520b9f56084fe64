/**
 * @file config.cpp
 * @brief key=value configuration parsing.
 */

#include "mstnet/config.hpp"

#include "mstnet/error.hpp"
#include "text.hpp"

#include <charconv>

namespace mstnet {

namespace {

long parse_int(const std::string& key, std::string_view text) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw InvalidArgument("config '" + key + "': expected an integer, got '" + std::string(text) + "'");
    }
    return value;
}

bool parse_bool(const std::string& key, std::string_view text) {
    if (text == "1" || text == "true" || text == "yes" || text == "on") {
        return true;
    }
    if (text == "0" || text == "false" || text == "no" || text == "off") {
        return false;
    }
    throw InvalidArgument("config '" + key + "': expected a boolean, got '" + std::string(text) + "'");
}

} // namespace

void AnalysisConfig::validate() const {
    panel.validate();
    if (top_k < 1) {
        throw InvalidArgument("top_k must be >= 1");
    }
    if (jobs < 1) {
        throw InvalidArgument("jobs must be >= 1");
    }
}

std::map<std::string, std::string> AnalysisConfig::snapshot() const {
    return {
        {"min_consecutive_days", std::to_string(panel.min_consecutive_days)},
        {"years", std::to_string(panel.years.first) + ":" + std::to_string(panel.years.last)},
        {"state_count", std::to_string(panel.state_count)},
        {"sector_map", panel.sector_map_path},
        {"top_k", std::to_string(top_k)},
        {"alt_distance", metric == DistanceMetric::euclidean_correlation ? "true" : "false"},
        {"jobs", std::to_string(jobs)},
        {"write_matrices", write_matrices ? "true" : "false"},
    };
}

YearRange parse_year_range(const std::string& text) {
    const auto colon = text.find(':');
    YearRange range;
    if (colon == std::string::npos) {
        range.first = range.last = static_cast<int>(parse_int("years", detail::trim(text)));
    } else {
        range.first = static_cast<int>(parse_int("years", detail::trim(std::string_view(text).substr(0, colon))));
        range.last = static_cast<int>(parse_int("years", detail::trim(std::string_view(text).substr(colon + 1))));
    }
    if (range.first > range.last) {
        throw InvalidArgument("year range '" + text + "' is empty");
    }
    return range;
}

void read_config(std::istream& in, AnalysisConfig& cfg) {
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        auto body = detail::trim(line);
        if (body.empty() || body.front() == '#') {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(row, "expected key=value");
        }
        const std::string key(detail::trim(body.substr(0, eq)));
        const std::string value(detail::trim(body.substr(eq + 1)));
        if (key == "min_consecutive_days") {
            cfg.panel.min_consecutive_days = static_cast<int>(parse_int(key, value));
        } else if (key == "years") {
            cfg.panel.years = parse_year_range(value);
        } else if (key == "state_count") {
            cfg.panel.state_count = static_cast<int>(parse_int(key, value));
        } else if (key == "sector_map") {
            cfg.panel.sector_map_path = value;
        } else if (key == "top_k") {
            const long k = parse_int(key, value);
            if (k < 1) {
                throw ParseError(row, "top_k must be >= 1");
            }
            cfg.top_k = static_cast<std::size_t>(k);
        } else if (key == "alt_distance") {
            cfg.metric = parse_bool(key, value) ? DistanceMetric::euclidean_correlation
                                                : DistanceMetric::squared_correlation;
        } else if (key == "jobs") {
            cfg.jobs = static_cast<int>(parse_int(key, value));
        } else if (key == "write_matrices") {
            cfg.write_matrices = parse_bool(key, value);
        } else {
            throw ParseError(row, "unknown key '" + key + "'");
        }
    }
    cfg.validate();
}

} // namespace mstnet
