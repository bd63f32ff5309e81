#include "ridgelab/format.h"

#include <charconv>
#include <cmath>
#include <limits>

#include "ridgelab/image.h"

namespace ridgelab {

std::vector<std::string_view> SplitString(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    const size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view Trim(std::string_view text) {
  constexpr std::string_view kSpace = " \t\r\n";
  const size_t first = text.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const size_t last = text.find_last_not_of(kSpace);
  return text.substr(first, last - first + 1);
}

namespace {

template <typename T>
T ParseNumber(std::string_view text, const char* what) {
  text = Trim(text);
  T value{};
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kParseError,
                std::string("invalid ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

double ParseDouble(std::string_view text) {
  return ParseNumber<double>(text, "number");
}

int ParseInt(std::string_view text) { return ParseNumber<int>(text, "integer"); }

uint64_t ParseUint64(std::string_view text) {
  return ParseNumber<uint64_t>(text, "unsigned integer");
}

std::string FormatDouble(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

double ParseReportDouble(std::string_view text) {
  text = Trim(text);
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  return ParseDouble(text);
}

}  // namespace ridgelab
