#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qwr/code.hpp"
#include "qwr/cone.hpp"
#include "qwr/graph.hpp"
#include "qwr/randapplic.hpp"
#include "qwr/report.hpp"

namespace qwr {

/// Random: i.i.d. heights at the local-lemma ell. RandomMinimal: the
/// smallest ell (from ceil(q_Z / w) up to the local-lemma ell) at which
/// random heights succeed. Coloring: greedy coloring, ell = q_Z w_Z + 1.
enum class HeightStrategy { Random, RandomMinimal, Coloring };

/// Steps run in the fixed order copy-gauge, thicken, connect, improve
/// soundness, cone; the flags only skip steps.
struct PipelineConfig {
    bool copy_gauge = true;
    bool thicken = true;
    HeightStrategy heights = HeightStrategy::Random;
    /// Same-height multiplicity allowed by the random strategy.
    std::size_t multiplicity = 3;
    /// Random: defaults to local_lemma_ell(code, multiplicity) (at least 2).
    /// RandomMinimal: the first ell tried.
    std::optional<std::size_t> ell;
    std::size_t height_retries = 1000;
    /// Connect only when the code is not reasonable.
    bool connect = true;
    /// Augment every G_i to this expansion before coning.
    std::optional<Rational> soundness_target;
    std::optional<std::size_t> ell_prime;
    std::size_t disc_threshold = kDefaultDiscThreshold;
    /// Distance estimates on the input and output (0 disables them).
    std::size_t distance_trials = 0;
    /// Codes above this size get no estimate (dense elimination); reduce_applic
    /// then also skips balancing.
    std::size_t estimate_max_qubits = 8192;
    /// Abort when a proved bound fails.
    bool enforce_bounds = true;

    nlohmann::json to_json() const;
    /// Missing keys keep the values of `base`; unknown keys are rejected.
    static PipelineConfig from_json(const nlohmann::json &j, const PipelineConfig &base);
    static PipelineConfig from_json(const nlohmann::json &j) { return from_json(j, PipelineConfig{}); }
};

struct PipelineResult {
    CssCode code;
    std::vector<TransformReport> reports;
};

/// Copy-gauge, thicken, connect (if needed), cone and reduce. Every report
/// is followed by a closing "reduce-full" report holding K invariance and
/// the LDPC targets of the final code. Domain errors carry the failing step
/// in their detail.
PipelineResult reduce_full(const CssCode &code, const PipelineConfig &config, std::uint64_t seed);

struct ApplicConfig {
    ApplicConfig() { reduce.heights = HeightStrategy::RandomMinimal; }

    /// ell = max(2, ceil(ell_factor N)) unless `ell` is given.
    double ell_factor = 1.0 / 16;
    std::optional<std::size_t> ell;
    bool balance = true;
    /// Largest (dual) thickening used for balancing.
    std::size_t max_balance_factor = 4;
    std::size_t distance_trials = 16;
    PipelineConfig reduce;
    ApplicOptions applic;

    nlohmann::json to_json() const;
    static ApplicConfig from_json(const nlohmann::json &j);
};

struct ScalingRow {
    std::size_t n_initial = 0;
    std::size_t n_final = 0;
    std::size_t k = 0;
    std::optional<std::size_t> d_x;
    std::optional<std::size_t> d_z;

    nlohmann::json to_json() const;
};

struct ApplicResult {
    CssCode code;
    std::vector<TransformReport> reports;
    ApplicDiagnostics diagnostics;
    ScalingRow scaling;
};

/// Random code, thickening by ell, reduce_full, then distance balancing by
/// (dual) thickening toward equal estimated distances.
ApplicResult reduce_applic(const RandomCodeSpec &spec, const ApplicConfig &config);

nlohmann::json reports_to_json(const std::vector<TransformReport> &reports);

std::string to_string(HeightStrategy s);

}  // namespace qwr
