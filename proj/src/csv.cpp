#include "superhedge/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace superhedge {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

[[noreturn]] void fail_line(std::size_t line_no, const std::string& what) {
    throw std::invalid_argument("csv line " + std::to_string(line_no) + ": " + what);
}

double parse_number(const std::string& field, std::size_t line_no) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &pos);
    } catch (const std::invalid_argument&) {
        fail_line(line_no, "expected a number, got '" + field + "'");
    } catch (const std::out_of_range&) {
        fail_line(line_no, "number out of range: '" + field + "'");
    }
    if (pos != field.size()) fail_line(line_no, "trailing characters in number '" + field + "'");
    return v;
}

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

PriceTable read_price_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw std::invalid_argument("csv line 1: missing header row");
    ++line_no;
    auto header = split_csv_line(strip(line));
    if (header.size() < 2) fail_line(line_no, "header needs a date column and at least one asset");
    std::size_t m = header.size() - 1;
    bool with_dividends = false;
    if (m % 2 == 0) {
        bool second_half_divs = true;
        for (std::size_t j = m / 2 + 1; j <= m; ++j)
            second_half_divs = second_half_divs && starts_with(strip(header[j]), "div");
        if (second_half_divs) {
            with_dividends = true;
            m /= 2;
        }
    }

    std::vector<std::string> dates;
    std::vector<std::vector<double>> prices, dividends;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = strip(line);
        if (stripped.empty()) continue;
        auto fields = split_csv_line(stripped);
        const std::size_t expected = 1 + m * (with_dividends ? 2 : 1);
        if (fields.size() != expected)
            fail_line(line_no, "expected " + std::to_string(expected) + " fields, got " +
                                   std::to_string(fields.size()));
        dates.push_back(strip(fields[0]));
        std::vector<double> p(m), d(m, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            p[j] = parse_number(strip(fields[1 + j]), line_no);
            if (!(p[j] > 0.0)) fail_line(line_no, "nonpositive price " + fields[1 + j]);
            if (with_dividends) d[j] = parse_number(strip(fields[1 + m + j]), line_no);
        }
        prices.push_back(std::move(p));
        dividends.push_back(std::move(d));
    }
    if (prices.size() < 2)
        throw std::invalid_argument(
            "csv: need the initial price row plus at least one session row");

    std::vector<double> initial = prices.front();
    prices.erase(prices.begin());
    dividends.erase(dividends.begin());  // dividends on the initial row are ignored
    return PriceTable(std::move(initial), std::move(prices),
                      with_dividends ? std::move(dividends) : std::vector<std::vector<double>>{},
                      std::move(dates));
}

PriceTable read_price_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open price csv: " + path);
    return read_price_csv(in);
}

std::string format_significant(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
    return buf;
}

void write_price_csv(std::ostream& out, const PriceTable& table, bool with_dividends) {
    const std::size_t m = table.assets();
    out << "date";
    for (std::size_t j = 1; j <= m; ++j) out << ",asset_" << j;
    if (with_dividends)
        for (std::size_t j = 1; j <= m; ++j) out << ",div_" << j;
    out << "\n";
    const auto& dates = table.dates();
    auto date_of = [&](std::size_t row) {
        return dates.empty() ? std::to_string(row) : dates[row];
    };
    out << date_of(0);
    for (double p : table.initial_prices()) out << "," << format_significant(p, 17);
    if (with_dividends)
        for (std::size_t j = 0; j < m; ++j) out << ",0";
    out << "\n";
    for (std::size_t t = 0; t < table.periods(); ++t) {
        out << date_of(t + 1);
        for (double p : table.prices(t)) out << "," << format_significant(p, 17);
        if (with_dividends)
            for (double d : table.dividends(t)) out << "," << format_significant(d, 17);
        out << "\n";
    }
}

void write_price_csv_file(const std::string& path, const PriceTable& table, bool with_dividends) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open for writing: " + path);
    write_price_csv(out, table, with_dividends);
}

}  // namespace superhedge
