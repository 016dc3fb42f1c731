#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qwr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

/// Parses and runs one command. Results go to `out`; usage messages and the
/// JSON error object of a domain error go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qwr::cli
