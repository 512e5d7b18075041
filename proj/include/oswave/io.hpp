#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "oswave/numerics.hpp"

namespace oswave::io {

using Json = nlohmann::ordered_json;

/// %.17g, so every double round-trips.
std::string format_double(double v);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void write_csv(std::ostream& os, const Table& t);
std::string to_csv(const Table& t);

/// {"re": .., "im": ..}
Json complex_json(Complex z);

/// Writes `text` to `path`, or to stdout when path is empty or "-".
void write_output(const std::string& path, const std::string& text);

}  // namespace oswave::io
