#include "oswave/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "oswave/errors.hpp"

namespace oswave::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t k = 0; k < t.header.size(); ++k)
    os << (k ? "," : "") << t.header[k];
  os << '\n';
  for (const auto& row : t.rows) {
    if (row.size() != t.header.size())
      throw InvalidArgument("MalformedTable", "row width differs from header");
    for (std::size_t k = 0; k < row.size(); ++k)
      os << (k ? "," : "") << format_double(row[k]);
    os << '\n';
  }
}

std::string to_csv(const Table& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("OutputError", "cannot open '" + path + "'");
  f << text;
}

}  // namespace oswave::io
