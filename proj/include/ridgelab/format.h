// Text helpers shared by the spec parsers and report writers.

#ifndef RIDGELAB_FORMAT_H_
#define RIDGELAB_FORMAT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ridgelab {

std::vector<std::string_view> SplitString(std::string_view text, char sep);
std::string_view Trim(std::string_view text);

// Strict parsers: the whole token must be consumed; throw kParseError.
double ParseDouble(std::string_view text);
int ParseInt(std::string_view text);
uint64_t ParseUint64(std::string_view text);

// Shortest representation that round-trips; infinities print as "inf"/"-inf".
std::string FormatDouble(double value);
// Inverse of FormatDouble, accepting "inf"/"-inf".
double ParseReportDouble(std::string_view text);

}  // namespace ridgelab

#endif  // RIDGELAB_FORMAT_H_
