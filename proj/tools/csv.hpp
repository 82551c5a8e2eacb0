#pragma once

// Just enough RFC 4180 for the rate command's input and the clt output:
// comma separators, double-quoted fields with "" escapes, CRLF or LF.

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace vincstat::cli {

// Splits the whole stream into records. Quoted fields may span lines.
std::vector<std::vector<std::string>> read_csv(std::istream& in);

// Quotes a field only when it contains a comma, quote, CR or LF.
std::string csv_field(std::string_view text);

}  // namespace vincstat::cli
