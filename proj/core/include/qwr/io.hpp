#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "qwr/code.hpp"
#include "qwr/f2.hpp"

namespace qwr {

/// {"n", "hx", "hz", "meta"} with sorted supports.
nlohmann::json code_to_json(const CssCode &code);
/// Throws ParseError on a malformed object and IndexOutOfRange on bad
/// supports. Commutation is left to validate().
CssCode code_from_json(const nlohmann::json &j);

/// Classical alist (1-based indices, zero padding allowed). Returns the
/// (check x bit) matrix after checking the column lists agree with the rows.
SparseBitMatrix read_alist(std::istream &in);
std::string write_alist(const SparseBitMatrix &h);

/// JSON by default; a file whose first non-blank character is not '{' is
/// read as an alist and becomes an X-only code.
CssCode read_code_file(const std::string &path);
void write_code_file(const std::string &path, const CssCode &code);

nlohmann::json read_json_file(const std::string &path);
/// Two-space indented with a trailing newline, so outputs are byte-stable.
void write_json_file(const std::string &path, const nlohmann::json &j);
std::string dump_json(const nlohmann::json &j);

}  // namespace qwr
