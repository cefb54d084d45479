#include "tipping/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tipping::csv {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  // Shortest representation that still parses back to the same bits.
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[40];
    std::snprintf(shorter, sizeof(shorter), "%.*g", prec, x);
    if (std::strtod(shorter, nullptr) == x) return shorter;
  }
  return buf;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw std::runtime_error("csv: bad number '" + s + "'");
  return v;
}

static std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string emit(const Table& table) {
  std::ostringstream os;
  bool tagged = false;
  for (const auto& c : table.comments) {
    os << "# " << c << "\n";
    if (c.rfind(kSchemaTag, 0) == 0) tagged = true;
  }
  if (!tagged) os << "# " << kSchemaTag << "\n";
  for (size_t i = 0; i < table.columns.size(); ++i)
    os << table.columns[i] << (i + 1 < table.columns.size() ? "," : "\n");
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw std::runtime_error("csv: row width mismatch");
    for (size_t i = 0; i < row.size(); ++i)
      os << row[i] << (i + 1 < row.size() ? "," : "\n");
  }
  return os.str();
}

Table parse(const std::string& text) {
  Table table;
  std::istringstream is(text);
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      size_t start = line.find_first_not_of(" \t", 1);
      table.comments.push_back(start == std::string::npos
                                   ? std::string()
                                   : line.substr(start));
      continue;
    }
    if (!have_header) {
      table.columns = split_row(line);
      have_header = true;
    } else {
      table.rows.push_back(split_row(line));
    }
  }
  if (!have_header) throw std::runtime_error("csv: missing header row");
  return table;
}

void write_file(const std::string& path, const Table& table) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("csv: cannot open " + path);
  os << emit(table);
  if (!os) throw std::runtime_error("csv: write failed for " + path);
}

Table read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("csv: cannot open " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse(buf.str());
}

Table make_series_table(const std::string& kind, const std::string& x_name,
                        const std::string& y_name,
                        const std::vector<double>& x,
                        const std::vector<double>& y) {
  if (x.size() != y.size())
    throw std::runtime_error("csv: series length mismatch");
  Table t;
  t.comments = {std::string(kSchemaTag) + ": " + kind};
  t.columns = {x_name, y_name};
  t.rows.reserve(x.size());
  for (size_t i = 0; i < x.size(); ++i)
    t.rows.push_back({format_double(x[i]), format_double(y[i])});
  return t;
}

}  // namespace tipping::csv
