#include "qwr/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qwr/copy_gauge.hpp"
#include "qwr/distance.hpp"
#include "qwr/error.hpp"
#include "qwr/rng.hpp"
#include "qwr/robustify.hpp"
#include "qwr/thicken.hpp"

namespace qwr {

std::string to_string(HeightStrategy s) {
    switch (s) {
        case HeightStrategy::Random:
            return "random";
        case HeightStrategy::RandomMinimal:
            return "random-min";
        case HeightStrategy::Coloring:
            break;
    }
    return "coloring";
}

namespace {

template <typename Fn>
auto in_step(const char *step, Fn &&fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const DomainError &e) {
        auto detail = e.detail();
        if (!detail.contains("step")) detail["step"] = step;
        throw DomainError(e.kind(), e.what(), std::move(detail));
    }
}

nlohmann::json optional_json(const auto &v) {
    if (!v) return nullptr;
    return *v;
}

Rational parse_rational(const nlohmann::json &j) {
    if (j.is_number_unsigned()) return Rational::of(j.get<std::int64_t>(), 1);
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw DomainError(errors::kInvalidArgument, "expected a rational such as \"1/2\"", {{"value", j}});
}

void reject_unknown(const nlohmann::json &j, const std::set<std::string> &known) {
    if (!j.is_object()) throw DomainError(errors::kInvalidArgument, "configuration must be a JSON object");
    for (const auto &[key, value] : j.items()) {
        if (!known.contains(key)) throw DomainError(errors::kInvalidArgument, "unknown configuration key", {{"key", key}});
    }
}

template <typename T>
void read(const nlohmann::json &j, const char *key, T &target) {
    if (!j.contains(key)) return;
    try {
        target = j.at(key).get<T>();
    } catch (const nlohmann::json::exception &) {
        throw DomainError(errors::kInvalidArgument, "configuration value has the wrong type", {{"key", key}});
    }
}

template <typename T>
void read(const nlohmann::json &j, const char *key, std::optional<T> &target) {
    if (!j.contains(key)) return;
    if (j.at(key).is_null()) {
        target.reset();
        return;
    }
    T value{};
    read(j, key, value);
    target = value;
}

HeightChoice smallest_random_heights(const CssCode &code, const PipelineConfig &config, std::uint64_t seed) {
    const auto w = std::max<std::size_t>(config.multiplicity, 1);
    const auto q_z = code.hz().max_col_weight();
    const auto limit = std::max<std::size_t>(2, local_lemma_ell(code, w));
    auto ell = std::max<std::size_t>(2, config.ell.value_or((q_z + w - 1) / w));
    for (; ell < limit; ++ell) {
        try {
            return choose_heights_random(code, ell, w, derive_seed(seed, ell), config.height_retries);
        } catch (const DomainError &e) {
            if (e.kind() != errors::kRetriesExhausted) throw;
        }
    }
    return choose_heights_random(code, std::max(ell, limit), w, derive_seed(seed, limit), config.height_retries);
}

std::optional<std::size_t> estimate(const CssCode &code, PauliKind kind, std::size_t trials, std::uint64_t seed,
                                    std::size_t max_qubits) {
    if (code.n() > max_qubits) return std::nullopt;
    return distance_estimate(code, kind, trials, seed).value;
}

}  // namespace

nlohmann::json PipelineConfig::to_json() const {
    return {{"copy_gauge", copy_gauge},
            {"thicken", thicken},
            {"heights", to_string(heights)},
            {"multiplicity", multiplicity},
            {"ell", optional_json(ell)},
            {"height_retries", height_retries},
            {"connect", connect},
            {"soundness_target", soundness_target ? nlohmann::json(soundness_target->to_string()) : nlohmann::json(nullptr)},
            {"ell_prime", optional_json(ell_prime)},
            {"disc_threshold", disc_threshold},
            {"distance_trials", distance_trials},
            {"estimate_max_qubits", estimate_max_qubits},
            {"enforce_bounds", enforce_bounds}};
}

PipelineConfig PipelineConfig::from_json(const nlohmann::json &j, const PipelineConfig &base) {
    reject_unknown(j, {"copy_gauge", "thicken", "heights", "multiplicity", "ell", "height_retries", "connect",
                       "soundness_target", "ell_prime", "disc_threshold", "distance_trials", "estimate_max_qubits",
                       "enforce_bounds"});
    PipelineConfig c = base;
    read(j, "copy_gauge", c.copy_gauge);
    read(j, "thicken", c.thicken);
    if (j.contains("heights")) {
        std::string s;
        read(j, "heights", s);
        if (s == "random") {
            c.heights = HeightStrategy::Random;
        } else if (s == "random-min") {
            c.heights = HeightStrategy::RandomMinimal;
        } else if (s == "coloring") {
            c.heights = HeightStrategy::Coloring;
        } else {
            throw DomainError(errors::kInvalidArgument, "heights must be \"random\", \"random-min\" or \"coloring\"", {{"heights", s}});
        }
    }
    read(j, "multiplicity", c.multiplicity);
    read(j, "ell", c.ell);
    read(j, "height_retries", c.height_retries);
    read(j, "connect", c.connect);
    if (j.contains("soundness_target") && !j.at("soundness_target").is_null()) {
        c.soundness_target = parse_rational(j.at("soundness_target"));
    }
    read(j, "ell_prime", c.ell_prime);
    read(j, "disc_threshold", c.disc_threshold);
    read(j, "distance_trials", c.distance_trials);
    read(j, "estimate_max_qubits", c.estimate_max_qubits);
    read(j, "enforce_bounds", c.enforce_bounds);
    return c;
}

nlohmann::json ApplicConfig::to_json() const {
    return {{"ell_factor", ell_factor},
            {"ell", optional_json(ell)},
            {"balance", balance},
            {"max_balance_factor", max_balance_factor},
            {"distance_trials", distance_trials},
            {"reduce", reduce.to_json()},
            {"applic",
             {{"distance_trials", applic.distance_trials},
              {"cheeger_exhaustive_threshold", applic.cheeger_exhaustive_threshold},
              {"cheeger_samples", applic.cheeger_samples},
              {"graphs", applic.graphs}}}};
}

ApplicConfig ApplicConfig::from_json(const nlohmann::json &j) {
    reject_unknown(j, {"ell_factor", "ell", "balance", "max_balance_factor", "distance_trials", "reduce", "applic"});
    ApplicConfig c;
    read(j, "ell_factor", c.ell_factor);
    read(j, "ell", c.ell);
    read(j, "balance", c.balance);
    read(j, "max_balance_factor", c.max_balance_factor);
    read(j, "distance_trials", c.distance_trials);
    if (j.contains("reduce")) c.reduce = PipelineConfig::from_json(j.at("reduce"), c.reduce);
    if (j.contains("applic")) {
        const auto &a = j.at("applic");
        reject_unknown(a, {"distance_trials", "cheeger_exhaustive_threshold", "cheeger_samples", "graphs"});
        read(a, "distance_trials", c.applic.distance_trials);
        read(a, "cheeger_exhaustive_threshold", c.applic.cheeger_exhaustive_threshold);
        read(a, "cheeger_samples", c.applic.cheeger_samples);
        read(a, "graphs", c.applic.graphs);
    }
    return c;
}

nlohmann::json ScalingRow::to_json() const {
    return {{"n_initial", n_initial},
            {"n_final", n_final},
            {"k", k},
            {"d_x_estimate", optional_json(d_x)},
            {"d_z_estimate", optional_json(d_z)}};
}

nlohmann::json reports_to_json(const std::vector<TransformReport> &reports) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto &r : reports) steps.push_back(r.to_json());
    return {{"schema_version", kReportSchemaVersion}, {"steps", steps}};
}

PipelineResult reduce_full(const CssCode &code, const PipelineConfig &config, std::uint64_t seed) {
    PipelineResult out;
    const auto before = in_step("validate", [&] { return validate(code); });
    auto record = [&](TransformReport report) {
        if (config.enforce_bounds) enforce(report);
        out.reports.push_back(std::move(report));
    };

    CssCode current = code;
    if (config.copy_gauge) {
        auto xr = in_step("copy-gauge", [&] { return x_reduce(current); });
        record(std::move(xr.report));
        current = std::move(xr.code);
    }

    std::vector<char> coned(current.hz().rows(), 1);
    if (config.thicken) {
        auto th = in_step("thicken", [&] {
            HeightChoice hc;
            const auto heights_seed = derive_seed(seed, "heights");
            if (config.heights == HeightStrategy::Random) {
                const auto ell =
                    config.ell.value_or(std::max<std::size_t>(2, local_lemma_ell(current, config.multiplicity)));
                hc = choose_heights_random(current, ell, config.multiplicity, heights_seed, config.height_retries);
            } else if (config.heights == HeightStrategy::RandomMinimal) {
                hc = smallest_random_heights(current, config, heights_seed);
            } else {
                hc = choose_heights_coloring(current);
                if (config.ell) {
                    if (*config.ell < hc.ell) {
                        throw DomainError(errors::kInvalidArgument, "ell is below the coloring's height count",
                                          {{"ell", *config.ell}, {"required", hc.ell}});
                    }
                    hc.ell = *config.ell;
                }
            }
            auto t = thicken(current, hc.ell, hc.heights);
            t.report.seed = seed;
            t.report.config["heights"] = to_string(config.heights);
            t.report.config["w"] = config.multiplicity;
            t.report.details["height_attempts"] = hc.attempts;
            return t;
        });
        coned.assign(th.code.hz().rows(), 0);
        for (std::size_t z = 0; z < th.layout.n_z; ++z) coned[th.layout.kept_stabilizer(z)] = 1;
        record(std::move(th.report));
        current = std::move(th.code);
    }

    if (config.connect && !is_reasonable(current).reasonable) {
        auto c = in_step("connect", [&] { return connect(current); });
        coned.resize(c.code.hz().rows(), 0);
        record(std::move(c.report));
        current = std::move(c.code);
    }

    ConeInput input{current, {}, {}};
    for (std::size_t z = 0; z < current.hz().rows(); ++z) {
        const auto row = current.hz().row(z);
        if (coned[z] && !row.empty()) {
            input.q_sets.emplace_back(row.begin(), row.end());
        } else if (!coned[z]) {
            input.direct_z.push_back(z);
        }
    }

    std::vector<BComplex> complexes;
    if (config.soundness_target) {
        auto si = in_step("improve-soundness", [&] {
            return improve_soundness(current, input.q_sets, *config.soundness_target,
                                     derive_seed(seed, "improve-soundness"));
        });
        record(std::move(si.report));
        complexes = std::move(si.complexes);
    } else {
        complexes = in_step("cone", [&] { return build_b_complexes(current, input.q_sets); });
    }
    auto cc = in_step("cone", [&] { return cone_code(input, complexes); });
    record(std::move(cc.report));
    auto rc = in_step("reduce-cone", [&] {
        return reduce_cone(cc, config.ell_prime, derive_seed(seed, "reduce-cone"), config.disc_threshold);
    });
    record(std::move(rc.report));
    current = std::move(rc.code);

    TransformReport summary;
    summary.step = "reduce-full";
    summary.seed = seed;
    summary.config = config.to_json();
    summary.params_before = before;
    summary.params_after = validate(current);
    const auto &after = summary.params_after;
    summary.check_equal("K~ = K", static_cast<double>(after.k), static_cast<double>(before.k));
    summary.check_at_most("w~_X <= 5", static_cast<double>(after.w_x), 5, true);
    summary.check_at_most("q~_X <= 3", static_cast<double>(after.q_x), 3, true);
    summary.check_at_most("w~_Z <= 5", static_cast<double>(after.w_z), 5, true);
    summary.check_at_most("q~_Z <= 5", static_cast<double>(after.q_z), 5, true);
    nlohmann::json steps = nlohmann::json::array();
    for (const auto &r : out.reports) steps.push_back(r.step);
    summary.details = {{"steps", steps},
                       {"n_blowup", static_cast<double>(after.n) / static_cast<double>(std::max<std::size_t>(before.n, 1))}};
    if (config.distance_trials > 0) {
        const auto trials = config.distance_trials;
        const auto dseed = derive_seed(seed, "distance");
        const auto dx0 = estimate(code, PauliKind::X, trials, dseed, config.estimate_max_qubits);
        const auto dz0 = estimate(code, PauliKind::Z, trials, dseed, config.estimate_max_qubits);
        const auto dx1 = estimate(current, PauliKind::X, trials, dseed, config.estimate_max_qubits);
        const auto dz1 = estimate(current, PauliKind::Z, trials, dseed, config.estimate_max_qubits);
        auto ratio = [](const auto &a, const auto &b) -> nlohmann::json {
            if (!a || !b || *b == 0) return nullptr;
            return static_cast<double>(*a) / static_cast<double>(*b);
        };
        summary.details["distance_estimates"] = {{"d_x_before", optional_json(dx0)},
                                                 {"d_z_before", optional_json(dz0)},
                                                 {"d_x_after", optional_json(dx1)},
                                                 {"d_z_after", optional_json(dz1)},
                                                 {"d_x_ratio", ratio(dx1, dx0)},
                                                 {"d_z_ratio", ratio(dz1, dz0)}};
    }
    record(std::move(summary));
    out.code = std::move(current);
    return out;
}

ApplicResult reduce_applic(const RandomCodeSpec &spec, const ApplicConfig &config) {
    ApplicResult out;
    auto built = in_step("random", [&] { return build_applic_code(spec, config.applic); });
    out.diagnostics = built.diagnostics;
    const auto initial = validate(built.code);
    {
        TransformReport r;
        r.step = "random";
        r.seed = spec.seed;
        r.config = {{"n", spec.n},
                    {"beta", spec.beta},
                    {"x_check_fraction", spec.x_check_fraction.to_string()},
                    {"z_count", spec.z_rows()}};
        r.params_before = initial;
        r.params_after = initial;
        r.check_equal("K = N - rank(H_X) - rank(H_Z)", static_cast<double>(initial.k),
                      static_cast<double>(built.diagnostics.k));
        r.details = built.diagnostics.to_json();
        out.reports.push_back(std::move(r));
    }

    const auto ell = config.ell.value_or(
        std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(config.ell_factor * static_cast<double>(spec.n)))));
    auto th = in_step("thicken", [&] { return thicken(built.code, ell, HeightAssignment(built.code.hz().rows(), 0)); });
    if (config.reduce.enforce_bounds) enforce(th.report);
    out.reports.push_back(th.report);

    auto reduced = reduce_full(th.code, config.reduce, derive_seed(spec.seed, "reduce"));
    out.reports.insert(out.reports.end(), reduced.reports.begin(), reduced.reports.end());
    CssCode current = std::move(reduced.code);

    const auto trials = config.distance_trials;
    const auto dseed = derive_seed(spec.seed, "distance");
    std::optional<std::size_t> dx, dz;
    const bool estimated = trials > 0 && current.n() <= config.reduce.estimate_max_qubits;
    if (estimated) {
        dx = estimate(current, PauliKind::X, trials, dseed, config.reduce.estimate_max_qubits);
        dz = estimate(current, PauliKind::Z, trials, dseed, config.reduce.estimate_max_qubits);
    }
    if (config.balance && dx && dz && *dx > 0 && *dz > 0) {
        TransformReport r;
        r.step = "balance";
        r.params_before = validate(current);
        const double ratio = static_cast<double>(*dx) / static_cast<double>(*dz);
        std::size_t factor = 1;
        std::string direction = "none";
        auto capped = [&](double r) {
            return std::min(config.max_balance_factor, static_cast<std::size_t>(std::lround(r)));
        };
        if (ratio >= 1.5 && capped(ratio) >= 2) {
            factor = capped(ratio);
            direction = "dual";
            current = dual(in_step("balance", [&] {
                             const auto d = dual(current);
                             return thicken(d, factor, HeightAssignment(d.hz().rows(), 0));
                         }).code);
        } else if (1 / ratio >= 1.5 && capped(1 / ratio) >= 2) {
            factor = capped(1 / ratio);
            direction = "primal";
            current = in_step("balance",
                              [&] { return thicken(current, factor, HeightAssignment(current.hz().rows(), 0)); })
                          .code;
        }
        r.params_after = validate(current);
        r.config = {{"factor", factor}, {"direction", direction}, {"ratio", ratio}};
        r.check_equal("K~ = K", static_cast<double>(r.params_after.k), static_cast<double>(r.params_before.k));
        // Thickening by a factor multiplies one distance exactly and keeps
        // the other, so the estimates carry over without a new search.
        if (direction == "dual") *dz *= factor;
        if (direction == "primal") *dx *= factor;
        r.details = {{"d_x_estimate", optional_json(dx)}, {"d_z_estimate", optional_json(dz)}};
        if (config.reduce.enforce_bounds) enforce(r);
        out.reports.push_back(std::move(r));
    }

    if (trials > 0 && !estimated) {
        TransformReport r;
        r.step = "estimate";
        r.params_before = validate(current);
        r.params_after = r.params_before;
        r.config = {{"estimate_max_qubits", config.reduce.estimate_max_qubits}, {"trials", trials}};
        r.details = {{"skipped", "code larger than estimate_max_qubits"}};
        out.reports.push_back(std::move(r));
    }
    const auto final_params = out.reports.back().params_after;
    out.scaling = {spec.n, final_params.n, final_params.k, dx, dz};
    out.code = std::move(current);
    return out;
}

}  // namespace qwr
