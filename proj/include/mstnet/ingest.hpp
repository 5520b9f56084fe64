/**
 * @file ingest.hpp
 * @brief Loading, eligibility filtering and yearly slicing of daily price panels.
 *
 * Prices arrive as headered CSV (`ticker,date,close`) and sectors as
 * `ticker,sector`. Eligibility is decided on the exchange calendar inferred
 * from the union of all observed dates: a series qualifies when it has a run
 * of at least `min_consecutive_days` adjacent calendar entries. Yearly panels
 * keep only the series that trade on every day of that year's calendar.
 */

#pragma once

#include "mstnet/date.hpp"

#include <istream>
#include <map>
#include <string>
#include <vector>

namespace mstnet {

inline constexpr const char* kUnclassifiedSector = "UNCLASSIFIED";

struct Observation {
    Date date;
    double close = 0.0;
};

/// One instrument's closing prices, dates strictly increasing, closes > 0.
struct PriceSeries {
    std::string ticker;
    std::string sector = kUnclassifiedSector;
    std::vector<Observation> observations;

    std::size_t size() const { return observations.size(); }
};

struct YearRange {
    int first = 2000;
    int last = 2013;

    bool contains(int year) const { return year >= first && year <= last; }
};

struct PanelConfig {
    int min_consecutive_days = 1000;
    YearRange years;
    int state_count = 4;
    std::string sector_map_path;

    /// Throws InvalidArgument when min_consecutive_days < 2, state_count < 2 or the range is inverted.
    void validate() const;
};

/// Series restricted to one year's trading days; every member is complete.
struct YearPanel {
    int year = 0;
    std::vector<Date> trading_days;
    std::vector<PriceSeries> series;
};

using SectorMap = std::map<std::string, std::string>;

/**
 * Reads `ticker,date,close` rows. Output is sorted by ticker, each series by date.
 * Throws ParseError for malformed rows, non-positive closes and duplicate
 * (ticker, date) pairs.
 */
std::vector<PriceSeries> load_prices(std::istream& source);

/// Merges two loaded sets; duplicate (ticker, date) across them is an error.
std::vector<PriceSeries> merge_prices(std::vector<PriceSeries> a, const std::vector<PriceSeries>& b);

/// Reads `ticker,sector` rows. Repeated identical rows are accepted, conflicting ones are not.
SectorMap load_sector_map(std::istream& source);

/// Sets each series' sector from the map, or UNCLASSIFIED when absent.
void assign_sectors(std::vector<PriceSeries>& series, const SectorMap& sectors);

/// Sorted union of all observation dates.
std::vector<Date> union_calendar(const std::vector<PriceSeries>& series);

/**
 * Keeps series whose longest run of adjacent union-calendar days reaches
 * cfg.min_consecutive_days, truncated to that run (earliest run on ties).
 */
std::vector<PriceSeries> filter_eligible(const std::vector<PriceSeries>& series, const PanelConfig& cfg);

/// Throws InvalidArgument when no series has an observation in `year`.
YearPanel slice_year(const std::vector<PriceSeries>& series, int year);

} // namespace mstnet
