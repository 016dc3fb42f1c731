#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qwr/code.hpp"

namespace qwr {

inline constexpr int kReportSchemaVersion = 1;

/// One inequality (or equality) between a measured quantity and the bound
/// it must respect; slack = bound - measured for upper bounds and
/// measured - bound for lower bounds.
struct BoundCheck {
    std::string expression;
    bool satisfied = true;
    double measured = 0;
    double bound = 0;
    double slack = 0;
    /// Informational checks are recorded but do not count as lemma items.
    bool informational = false;
};

struct TransformReport {
    std::string step;
    std::optional<std::uint64_t> seed;
    nlohmann::json config = nlohmann::json::object();
    CodeParams params_before;
    CodeParams params_after;
    std::vector<BoundCheck> bound_checks;
    nlohmann::json details = nlohmann::json::object();

    void check_at_most(std::string expression, double measured, double bound, bool informational = false);
    void check_at_least(std::string expression, double measured, double bound, bool informational = false);
    void check_equal(std::string expression, double measured, double expected, bool informational = false);

    /// True iff every non-informational check holds.
    bool satisfied() const;
    /// The first failing non-informational check, if any.
    std::optional<BoundCheck> first_violation() const;

    nlohmann::json to_json() const;
};

nlohmann::json to_json(const CodeParams &p);
nlohmann::json to_json(const DistanceResult &d);
nlohmann::json to_json(const BoundCheck &c);

/// Throws BoundViolated naming the step and check when a proved bound fails.
void enforce(const TransformReport &report);

}  // namespace qwr
