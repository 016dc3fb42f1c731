#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

namespace qwr {

/// Error raised by a library operation when its inputs violate a domain
/// contract (anticommuting stabilizers, nontrivial homology, exhausted
/// search budget, ...). `kind()` is a stable machine-readable tag and
/// `detail()` carries the structured payload the CLI reports.
class DomainError : public std::runtime_error {
   public:
    DomainError(std::string kind, const std::string &message, nlohmann::json detail = nlohmann::json::object())
        : std::runtime_error(message), kind_(std::move(kind)), detail_(std::move(detail)) {}

    const std::string &kind() const noexcept { return kind_; }
    const nlohmann::json &detail() const noexcept { return detail_; }

    nlohmann::json to_json() const {
        return {{"error", kind_}, {"message", what()}, {"detail", detail_}};
    }

   private:
    std::string kind_;
    nlohmann::json detail_;
};

namespace errors {
inline constexpr const char *kDimensionMismatch = "DimensionMismatch";
inline constexpr const char *kIndexOutOfRange = "IndexOutOfRange";
inline constexpr const char *kCommutationViolation = "CommutationViolation";
inline constexpr const char *kNotReasonable = "NotReasonable";
inline constexpr const char *kBudgetExceeded = "BudgetExceeded";
inline constexpr const char *kNontrivialHomology = "NontrivialHomology";
inline constexpr const char *kComplexInvalid = "ComplexInvalid";
inline constexpr const char *kEmptyGraph = "EmptyGraph";
inline constexpr const char *kOddCrossingParity = "OddCrossingParity";
inline constexpr const char *kRetriesExhausted = "RetriesExhausted";
inline constexpr const char *kHeightOutOfRange = "HeightOutOfRange";
inline constexpr const char *kHeightSearchFailed = "HeightSearchFailed";
inline constexpr const char *kAugmentationFailed = "AugmentationFailed";
inline constexpr const char *kInvalidArgument = "InvalidArgument";
inline constexpr const char *kParseError = "ParseError";
inline constexpr const char *kBoundViolated = "BoundViolated";
}  // namespace errors

}  // namespace qwr
