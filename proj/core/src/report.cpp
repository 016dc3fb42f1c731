#include "qwr/report.hpp"

#include <cmath>

#include "qwr/error.hpp"

namespace qwr {

void TransformReport::check_at_most(std::string expression, double measured, double bound, bool informational) {
    bound_checks.push_back({std::move(expression), measured <= bound, measured, bound, bound - measured, informational});
}

void TransformReport::check_at_least(std::string expression, double measured, double bound, bool informational) {
    bound_checks.push_back({std::move(expression), measured >= bound, measured, bound, measured - bound, informational});
}

void TransformReport::check_equal(std::string expression, double measured, double expected, bool informational) {
    bound_checks.push_back(
        {std::move(expression), measured == expected, measured, expected, expected - measured, informational});
}

bool TransformReport::satisfied() const { return !first_violation().has_value(); }

std::optional<BoundCheck> TransformReport::first_violation() const {
    for (const auto &c : bound_checks) {
        if (!c.satisfied && !c.informational) return c;
    }
    return std::nullopt;
}

nlohmann::json to_json(const DistanceResult &d) {
    nlohmann::json j;
    if (d.value) {
        j["value"] = *d.value;
    } else {
        j["value"] = "inf";
    }
    j["method"] = to_string(d.method);
    if (d.witness) j["witness"] = d.witness->support();
    j["states_explored"] = d.states_explored;
    return j;
}

nlohmann::json to_json(const CodeParams &p) {
    nlohmann::json j = {{"n", p.n},     {"k", p.k},     {"n_x", p.n_x}, {"n_z", p.n_z},
                        {"w_x", p.w_x}, {"w_z", p.w_z}, {"q_x", p.q_x}, {"q_z", p.q_z}};
    if (p.d_x) j["d_x"] = to_json(*p.d_x);
    if (p.d_z) j["d_z"] = to_json(*p.d_z);
    return j;
}

nlohmann::json to_json(const BoundCheck &c) {
    auto number = [](double v) -> nlohmann::json {
        if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e15) return static_cast<std::int64_t>(v);
        return v;
    };
    nlohmann::json j = {{"expression", c.expression},
                        {"satisfied", c.satisfied},
                        {"measured", number(c.measured)},
                        {"bound", number(c.bound)},
                        {"slack", number(c.slack)}};
    if (c.informational) j["informational"] = true;
    return j;
}

nlohmann::json TransformReport::to_json() const {
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["step"] = step;
    j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
    j["config"] = config;
    j["params_before"] = qwr::to_json(params_before);
    j["params_after"] = qwr::to_json(params_after);
    j["bound_checks"] = nlohmann::json::array();
    for (const auto &c : bound_checks) j["bound_checks"].push_back(qwr::to_json(c));
    j["details"] = details;
    return j;
}

void enforce(const TransformReport &report) {
    if (auto v = report.first_violation()) {
        throw DomainError(errors::kBoundViolated, "proved bound violated in step " + report.step,
                          {{"step", report.step}, {"check", to_json(*v)}});
    }
}

}  // namespace qwr
