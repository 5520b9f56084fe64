/**
 * @file ingest.cpp
 * @brief CSV loading, eligibility filtering and yearly slicing.
 */

#include "mstnet/ingest.hpp"

#include "mstnet/error.hpp"
#include "text.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <unordered_map>

namespace mstnet {

std::optional<Date> parse_iso_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        return std::nullopt;
    }
    auto number = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
        int value = 0;
        const char* first = text.data() + pos;
        const char* last = first + len;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last) {
            return std::nullopt;
        }
        return value;
    };
    auto y = number(0, 4);
    auto m = number(5, 2);
    auto d = number(8, 2);
    if (!y || !m || !d) {
        return std::nullopt;
    }
    Date date{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*m)},
              std::chrono::day{static_cast<unsigned>(*d)}};
    if (!date.ok()) {
        return std::nullopt;
    }
    return date;
}

std::string format_iso_date(const Date& date) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    return buf;
}

void PanelConfig::validate() const {
    if (min_consecutive_days < 2) {
        throw InvalidArgument("min_consecutive_days must be >= 2");
    }
    if (state_count < 2) {
        throw InvalidArgument("state_count must be >= 2");
    }
    if (years.first > years.last) {
        throw InvalidArgument("year range is empty: " + std::to_string(years.first) + ":" +
                              std::to_string(years.last));
    }
}

namespace {

void expect_header(const std::vector<std::string>& fields, std::initializer_list<const char*> names) {
    bool ok = fields.size() == names.size();
    std::size_t i = 0;
    for (const char* name : names) {
        if (!ok) {
            break;
        }
        ok = fields[i++] == name;
    }
    if (!ok) {
        std::string expected;
        for (const char* name : names) {
            expected += (expected.empty() ? "" : ",") + std::string(name);
        }
        throw ParseError(1, "expected header '" + expected + "'");
    }
}

std::string pair_name(const std::string& ticker, const Date& date) {
    return "(" + ticker + ", " + format_iso_date(date) + ")";
}

} // namespace

std::vector<PriceSeries> load_prices(std::istream& source) {
    std::map<std::string, std::map<Date, double>> by_ticker;
    std::string line;
    std::size_t row = 0;
    bool header_seen = false;

    while (std::getline(source, line)) {
        ++row;
        auto fields = detail::split_csv_line(line);
        if (fields.size() == 1 && fields[0].empty()) {
            continue;
        }
        if (!header_seen) {
            if (row != 1) {
                throw ParseError(row, "header must be the first line");
            }
            expect_header(fields, {"ticker", "date", "close"});
            header_seen = true;
            continue;
        }
        if (fields.size() != 3) {
            throw ParseError(row, "expected 3 fields, found " + std::to_string(fields.size()));
        }
        const std::string& ticker = fields[0];
        if (ticker.empty()) {
            throw ParseError(row, "empty ticker");
        }
        auto date = parse_iso_date(fields[1]);
        if (!date) {
            throw ParseError(row, "invalid date '" + fields[1] + "'");
        }
        auto close = detail::parse_double(fields[2]);
        if (!close || !std::isfinite(*close)) {
            throw ParseError(row, "unparseable close '" + fields[2] + "'");
        }
        if (*close <= 0.0) {
            throw ParseError(row, "non-positive close '" + fields[2] + "'");
        }
        if (!by_ticker[ticker].emplace(*date, *close).second) {
            throw ParseError(row, "duplicate row for " + pair_name(ticker, *date));
        }
    }
    if (!header_seen) {
        throw ParseError(1, "missing header 'ticker,date,close'");
    }

    std::vector<PriceSeries> out;
    out.reserve(by_ticker.size());
    for (const auto& [ticker, closes] : by_ticker) {
        PriceSeries series{ticker, kUnclassifiedSector, {}};
        series.observations.reserve(closes.size());
        for (const auto& [date, close] : closes) {
            series.observations.push_back({date, close});
        }
        out.push_back(std::move(series));
    }
    return out;
}

std::vector<PriceSeries> merge_prices(std::vector<PriceSeries> a, const std::vector<PriceSeries>& b) {
    std::map<std::string, PriceSeries> merged;
    for (auto& s : a) {
        merged.emplace(s.ticker, std::move(s));
    }
    for (const auto& s : b) {
        auto [it, inserted] = merged.try_emplace(s.ticker, s);
        if (inserted) {
            continue;
        }
        auto& obs = it->second.observations;
        std::vector<Observation> combined;
        combined.reserve(obs.size() + s.observations.size());
        std::merge(obs.begin(), obs.end(), s.observations.begin(), s.observations.end(),
                   std::back_inserter(combined),
                   [](const Observation& x, const Observation& y) { return x.date < y.date; });
        auto dup = std::adjacent_find(combined.begin(), combined.end(),
                                      [](const Observation& x, const Observation& y) { return x.date == y.date; });
        if (dup != combined.end()) {
            throw InvalidArgument("duplicate row for " + pair_name(s.ticker, dup->date));
        }
        obs = std::move(combined);
    }
    std::vector<PriceSeries> out;
    out.reserve(merged.size());
    for (auto& [ticker, series] : merged) {
        out.push_back(std::move(series));
    }
    return out;
}

SectorMap load_sector_map(std::istream& source) {
    SectorMap map;
    std::string line;
    std::size_t row = 0;
    bool header_seen = false;
    while (std::getline(source, line)) {
        ++row;
        auto fields = detail::split_csv_line(line);
        if (fields.size() == 1 && fields[0].empty()) {
            continue;
        }
        if (!header_seen) {
            if (row != 1) {
                throw ParseError(row, "header must be the first line");
            }
            expect_header(fields, {"ticker", "sector"});
            header_seen = true;
            continue;
        }
        if (fields.size() != 2) {
            throw ParseError(row, "expected 2 fields, found " + std::to_string(fields.size()));
        }
        if (fields[0].empty() || fields[1].empty()) {
            throw ParseError(row, "empty ticker or sector");
        }
        auto [it, inserted] = map.emplace(fields[0], fields[1]);
        if (!inserted && it->second != fields[1]) {
            throw ParseError(row, "ticker '" + fields[0] + "' mapped to both '" + it->second + "' and '" +
                                      fields[1] + "'");
        }
    }
    if (!header_seen) {
        throw ParseError(1, "missing header 'ticker,sector'");
    }
    return map;
}

void assign_sectors(std::vector<PriceSeries>& series, const SectorMap& sectors) {
    for (auto& s : series) {
        auto it = sectors.find(s.ticker);
        s.sector = it == sectors.end() ? kUnclassifiedSector : it->second;
    }
}

std::vector<Date> union_calendar(const std::vector<PriceSeries>& series) {
    std::set<Date> days;
    for (const auto& s : series) {
        for (const auto& o : s.observations) {
            days.insert(o.date);
        }
    }
    return {days.begin(), days.end()};
}

std::vector<PriceSeries> filter_eligible(const std::vector<PriceSeries>& series, const PanelConfig& cfg) {
    cfg.validate();
    const auto calendar = union_calendar(series);
    std::vector<PriceSeries> out;

    for (const auto& s : series) {
        const auto& obs = s.observations;
        std::size_t best_start = 0;
        std::size_t best_len = 0;
        std::size_t run_start = 0;
        std::size_t prev_index = 0;
        for (std::size_t i = 0; i < obs.size(); ++i) {
            auto index = static_cast<std::size_t>(
                std::lower_bound(calendar.begin(), calendar.end(), obs[i].date) - calendar.begin());
            if (i == 0 || index != prev_index + 1) {
                run_start = i;
            }
            prev_index = index;
            if (i + 1 - run_start > best_len) {
                best_len = i + 1 - run_start;
                best_start = run_start;
            }
        }
        if (best_len >= static_cast<std::size_t>(cfg.min_consecutive_days)) {
            PriceSeries kept{s.ticker, s.sector, {}};
            kept.observations.assign(obs.begin() + static_cast<std::ptrdiff_t>(best_start),
                                     obs.begin() + static_cast<std::ptrdiff_t>(best_start + best_len));
            out.push_back(std::move(kept));
        }
    }
    return out;
}

YearPanel slice_year(const std::vector<PriceSeries>& series, int year) {
    const Date first{std::chrono::year{year}, std::chrono::January, std::chrono::day{1}};
    const Date last{std::chrono::year{year}, std::chrono::December, std::chrono::day{31}};
    auto in_year = [&](const PriceSeries& s) {
        auto lo = std::lower_bound(s.observations.begin(), s.observations.end(), first,
                                   [](const Observation& o, const Date& d) { return o.date < d; });
        auto hi = std::upper_bound(s.observations.begin(), s.observations.end(), last,
                                   [](const Date& d, const Observation& o) { return d < o.date; });
        return std::pair{lo, hi};
    };

    std::set<Date> days;
    for (const auto& s : series) {
        auto [lo, hi] = in_year(s);
        for (auto it = lo; it != hi; ++it) {
            days.insert(it->date);
        }
    }
    if (days.empty()) {
        throw InvalidArgument("no trading days in year " + std::to_string(year));
    }

    YearPanel panel;
    panel.year = year;
    panel.trading_days.assign(days.begin(), days.end());
    for (const auto& s : series) {
        auto [lo, hi] = in_year(s);
        // Observations are unique and sorted, so matching the count means matching every day.
        if (static_cast<std::size_t>(hi - lo) != panel.trading_days.size()) {
            continue;
        }
        panel.series.push_back({s.ticker, s.sector, {lo, hi}});
    }
    return panel;
}

} // namespace mstnet
