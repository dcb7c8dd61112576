#pragma once

#include <iosfwd>
#include <string>

#include "superhedge/market.hpp"

namespace superhedge {

/// Price CSV layout: header `date,asset_1,...,asset_m[,div_1,...,div_m]`,
/// then one row per session close.  The first data row holds the initial
/// prices (its dividend columns, if any, are ignored).

/// Parses a price CSV; throws std::invalid_argument naming the offending line.
PriceTable read_price_csv(std::istream& in);
PriceTable read_price_csv_file(const std::string& path);

/// Emits the table in the same layout, prices at full precision (17
/// significant digits) so a read-back reproduces the identical doubles.
void write_price_csv(std::ostream& out, const PriceTable& table, bool with_dividends = false);
void write_price_csv_file(const std::string& path, const PriceTable& table,
                          bool with_dividends = false);

/// Formats a double with the given number of significant digits.
std::string format_significant(double value, int digits);

}  // namespace superhedge
