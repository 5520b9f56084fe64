/**
 * @file date.hpp
 * @brief Calendar-day type and ISO-8601 helpers.
 */

#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace mstnet {

using Date = std::chrono::year_month_day;

/// Parses strict `YYYY-MM-DD`; returns nullopt for anything else or an invalid day.
std::optional<Date> parse_iso_date(std::string_view text);

std::string format_iso_date(const Date& date);

inline int year_of(const Date& date) { return static_cast<int>(date.year()); }

} // namespace mstnet
