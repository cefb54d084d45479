#ifndef TIPPING_CSV_HPP
#define TIPPING_CSV_HPP

#include <string>
#include <vector>

namespace tipping::csv {

// All files share one layout: optional comment lines starting with '#'
// (the first carries the schema tag), one header row naming the columns,
// then data rows. Doubles are printed with enough digits to round-trip
// exactly through parsing.

inline constexpr const char* kSchemaTag = "tipping-csv v1";

std::string format_double(double x);
double parse_double(const std::string& s);

struct Table {
  std::vector<std::string> comments;  // without leading '#'
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string emit(const Table& table);
Table parse(const std::string& text);

void write_file(const std::string& path, const Table& table);
Table read_file(const std::string& path);

Table make_series_table(const std::string& kind, const std::string& x_name,
                        const std::string& y_name,
                        const std::vector<double>& x,
                        const std::vector<double>& y);

}  // namespace tipping::csv

#endif
