#include "cli.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qwr/code.hpp"
#include "qwr/cone.hpp"
#include "qwr/copy_gauge.hpp"
#include "qwr/distance.hpp"
#include "qwr/error.hpp"
#include "qwr/fixtures.hpp"
#include "qwr/io.hpp"
#include "qwr/parallel.hpp"
#include "qwr/pipeline.hpp"
#include "qwr/randapplic.hpp"
#include "qwr/report.hpp"
#include "qwr/rng.hpp"
#include "qwr/robustify.hpp"
#include "qwr/thicken.hpp"

#ifndef QWR_VERSION
#define QWR_VERSION "0.0.0"
#endif

namespace qwr::cli {

namespace {

using nlohmann::json;

struct Context {
    std::ostream &out;
    std::string command;
    json arguments = json::object();
    json config = nullptr;
};

json tool_json() { return {{"name", "qwr"}, {"version", QWR_VERSION}}; }

/// Report file: tool version and the full argument set, then the steps.
json report_document(const Context &ctx, const std::vector<TransformReport> &reports) {
    auto j = reports_to_json(reports);
    j["tool"] = tool_json();
    j["command"] = ctx.command;
    j["arguments"] = ctx.arguments;
    if (!ctx.config.is_null()) j["config"] = ctx.config;
    return j;
}

void emit(const Context &ctx, const json &j, const std::string &path) {
    if (path.empty() || path == "-") {
        ctx.out << dump_json(j);
    } else {
        write_json_file(path, j);
    }
}

void write_reports(const Context &ctx, const std::vector<TransformReport> &reports, const std::string &path) {
    if (!path.empty()) write_json_file(path, report_document(ctx, reports));
}

void write_code(const Context &ctx, const CssCode &code, const std::string &path) {
    emit(ctx, code_to_json(code), path);
}

PauliKind parse_kind(const std::string &s) {
    if (s == "x" || s == "X") return PauliKind::X;
    if (s == "z" || s == "Z") return PauliKind::Z;
    throw DomainError(errors::kInvalidArgument, "kind must be x or z", {{"kind", s}});
}

std::vector<std::size_t> parse_index_list(const std::string &text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            const auto v = std::stoull(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception &) {
            throw DomainError(errors::kInvalidArgument, "expected a comma-separated index list", {{"value", text}});
        }
    }
    return out;
}

/// Direct Z-stabilizers: "auto" takes meta["direct_z"] (written by thicken),
/// "none" takes nothing, otherwise an explicit list.
std::vector<std::size_t> resolve_direct(const CssCode &code, const std::string &spec) {
    std::vector<std::size_t> direct;
    if (spec == "auto") {
        if (code.meta().contains("direct_z")) direct = code.meta()["direct_z"].get<std::vector<std::size_t>>();
    } else if (spec != "none") {
        direct = parse_index_list(spec);
    }
    std::sort(direct.begin(), direct.end());
    direct.erase(std::unique(direct.begin(), direct.end()), direct.end());
    for (auto z : direct) {
        if (z >= code.hz().rows()) {
            throw DomainError(errors::kIndexOutOfRange, "direct Z-stabilizer out of range",
                              {{"index", z}, {"n_z", code.hz().rows()}});
        }
    }
    return direct;
}

/// "auto": the support of every non-direct, nonempty Z-stabilizer.
std::vector<std::vector<std::size_t>> resolve_sets(const CssCode &code, const std::string &spec,
                                                    const std::vector<std::size_t> &direct) {
    std::vector<std::vector<std::size_t>> sets;
    if (spec == "auto") {
        for (std::size_t z = 0; z < code.hz().rows(); ++z) {
            if (std::binary_search(direct.begin(), direct.end(), z)) continue;
            const auto row = code.hz().row(z);
            if (!row.empty()) sets.emplace_back(row.begin(), row.end());
        }
        return sets;
    }
    const auto j = read_json_file(spec);
    if (!j.is_array()) throw DomainError(errors::kParseError, "sets file must be an array of qubit lists");
    for (const auto &s : j) sets.push_back(s.get<std::vector<std::size_t>>());
    return sets;
}

CssCode strip_direct(CssCode code) {
    code.meta().erase("direct_z");
    return code;
}

struct Common {
    std::string input;
    std::string output;
    std::string report;
    std::uint64_t seed = 0;
};

void add_io(CLI::App *cmd, Common &c, bool with_output = true) {
    cmd->add_option("input", c.input, "code file (JSON or alist)")->required();
    if (with_output) cmd->add_option("output", c.output, "output code file (stdout when omitted)");
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Weight reduction for CSS codes", "qwr"};
    app.require_subcommand(1);
    app.set_version_flag("--version", QWR_VERSION);

    Context ctx{out, {}, json::object()};
    std::function<void()> action;
    Common c;

    // validate
    auto *validate_cmd = app.add_subcommand("validate", "check commutation and print the parameter ledger");
    add_io(validate_cmd, c, false);
    validate_cmd->callback([&] {
        action = [&] { emit(ctx, to_json(qwr::validate(read_code_file(c.input))), ""); };
    });

    // params
    std::string params_distance = "none";
    std::uint64_t budget = kDefaultDistanceBudget;
    std::size_t trials = 16;
    auto *params_cmd = app.add_subcommand("params", "parameter ledger, optionally with distances");
    add_io(params_cmd, c, false);
    params_cmd->add_option("--distance", params_distance, "none | exact | estimate")
        ->check(CLI::IsMember({"none", "exact", "estimate"}));
    params_cmd->add_option("--budget", budget, "state budget for exact distances");
    params_cmd->add_option("--trials", trials, "trials for estimated distances");
    params_cmd->add_option("--seed", c.seed);
    params_cmd->callback([&] {
        action = [&] {
            const auto code = read_code_file(c.input);
            auto p = qwr::validate(code);
            const auto seed = derive_seed(c.seed, "distance");
            if (params_distance == "exact") {
                p.d_x = distance_exact(code, PauliKind::X, budget);
                p.d_z = distance_exact(code, PauliKind::Z, budget);
            } else if (params_distance == "estimate") {
                p.d_x = distance_estimate(code, PauliKind::X, trials, seed);
                p.d_z = distance_estimate(code, PauliKind::Z, trials, seed);
            }
            emit(ctx, to_json(p), "");
        };
    });

    // distance
    std::string kind = "x";
    std::string method = "exact";
    auto *distance_cmd = app.add_subcommand("distance", "minimum weight of a nontrivial logical");
    add_io(distance_cmd, c, false);
    distance_cmd->add_option("--kind", kind, "x | z")->check(CLI::IsMember({"x", "z", "X", "Z"}));
    distance_cmd->add_option("--method", method, "exact | estimate")->check(CLI::IsMember({"exact", "estimate"}));
    distance_cmd->add_option("--budget", budget, "state budget (exact)");
    distance_cmd->add_option("--trials", trials, "information-set trials (estimate)");
    distance_cmd->add_option("--seed", c.seed);
    distance_cmd->callback([&] {
        action = [&] {
            const auto code = read_code_file(c.input);
            qwr::validate(code);
            const auto k = parse_kind(kind);
            const auto result = method == "exact"
                                    ? distance_exact(code, k, budget)
                                    : distance_estimate(code, k, trials, derive_seed(c.seed, "distance"));
            auto j = to_json(result);
            j["kind"] = to_string(k);
            emit(ctx, j, "");
        };
    });

    // copy-gauge
    auto *copy_cmd = app.add_subcommand("copy-gauge", "copy qubits and gauge to reduce w_X and q_X");
    add_io(copy_cmd, c);
    copy_cmd->add_option("--report", c.report, "report file");
    copy_cmd->callback([&] {
        action = [&] {
            auto r = x_reduce(read_code_file(c.input));
            write_code(ctx, strip_direct(r.code), c.output);
            write_reports(ctx, {r.report}, c.report);
        };
    });

    // thicken
    std::size_t ell = 0;
    std::string heights = "random";
    std::size_t multiplicity = 3;
    std::size_t retries = kDefaultHeightRetries;
    auto *thicken_cmd = app.add_subcommand("thicken", "thicken by an interval and choose heights");
    add_io(thicken_cmd, c);
    thicken_cmd->add_option("--ell", ell, "interval length (default: from the height strategy)");
    thicken_cmd->add_option("--heights", heights, "random | coloring | zero | file.json");
    thicken_cmd->add_option("--w", multiplicity, "allowed same-height multiplicity (random)");
    thicken_cmd->add_option("--retries", retries, "height redraws (random)");
    thicken_cmd->add_option("--seed", c.seed);
    thicken_cmd->add_option("--report", c.report, "report file");
    thicken_cmd->callback([&] {
        action = [&] {
            const auto code = read_code_file(c.input);
            HeightChoice hc;
            if (heights == "random") {
                const auto l = ell ? ell : std::max<std::size_t>(2, local_lemma_ell(code, multiplicity));
                hc = choose_heights_random(code, l, multiplicity, derive_seed(c.seed, "heights"), retries);
            } else if (heights == "coloring") {
                hc = choose_heights_coloring(code);
                if (ell) {
                    if (ell < hc.ell) {
                        throw DomainError(errors::kInvalidArgument, "ell is below the coloring's height count",
                                          {{"ell", ell}, {"required", hc.ell}});
                    }
                    hc.ell = ell;
                }
            } else if (heights == "zero") {
                hc.ell = ell ? ell : 2;
                hc.heights.assign(code.hz().rows(), 0);
            } else {
                hc.heights = read_json_file(heights).get<HeightAssignment>();
                if (!ell) throw DomainError(errors::kInvalidArgument, "--ell is required with a heights file");
                hc.ell = ell;
            }
            auto t = thicken(code, hc.ell, hc.heights);
            t.report.seed = c.seed;
            t.report.config["heights"] = heights;
            // The C1 x E1 stabilizers are the default direct ones for a later cone.
            std::vector<char> kept(t.code.hz().rows(), 0);
            for (std::size_t z = 0; z < t.layout.n_z; ++z) kept[t.layout.kept_stabilizer(z)] = 1;
            std::vector<std::size_t> direct;
            for (std::size_t z = 0; z < kept.size(); ++z) {
                if (!kept[z]) direct.push_back(z);
            }
            t.code.meta()["direct_z"] = direct;
            write_code(ctx, t.code, c.output);
            write_reports(ctx, {t.report}, c.report);
        };
    });

    // cone
    std::string sets = "auto";
    std::string direct_spec = "auto";
    std::optional<std::size_t> ell_prime;
    std::size_t threshold = kDefaultDiscThreshold;
    bool no_reduce = false;
    auto *cone_cmd = app.add_subcommand("cone", "mapping cone over chosen qubit sets, then reduce");
    add_io(cone_cmd, c);
    cone_cmd->add_option("--sets", sets, "auto | sets.json (array of qubit lists)");
    cone_cmd->add_option("--direct-z", direct_spec, "auto | none | comma-separated Z-stabilizer indices");
    cone_cmd->add_option("--ell-prime", ell_prime, "dual thickening of the discs (default: greedy)");
    cone_cmd->add_option("--disc-threshold", threshold, "discs heavier than this are cellulated");
    cone_cmd->add_flag("--no-reduce", no_reduce, "write the cone code itself");
    cone_cmd->add_option("--seed", c.seed);
    cone_cmd->add_option("--report", c.report, "report file");
    cone_cmd->callback([&] {
        action = [&] {
            const auto code = read_code_file(c.input);
            const auto direct = resolve_direct(code, direct_spec);
            ConeInput input{strip_direct(code), direct, resolve_sets(code, sets, direct)};
            auto cc = cone_code(input, build_b_complexes(input.base, input.q_sets));
            std::vector<TransformReport> reports{cc.report};
            if (no_reduce) {
                write_code(ctx, cc.code, c.output);
            } else {
                auto rc = reduce_cone(cc, ell_prime, derive_seed(c.seed, "reduce-cone"), threshold);
                reports.push_back(rc.report);
                write_code(ctx, rc.code, c.output);
            }
            write_reports(ctx, reports, c.report);
        };
    });

    // connect
    auto *connect_cmd = app.add_subcommand("connect", "make an unreasonable code reasonable and connected");
    add_io(connect_cmd, c);
    connect_cmd->add_option("--report", c.report, "report file");
    connect_cmd->callback([&] {
        action = [&] {
            auto r = connect(read_code_file(c.input));
            write_code(ctx, strip_direct(r.code), c.output);
            write_reports(ctx, {r.report}, c.report);
        };
    });

    // improve-soundness
    std::string target_h = "1/2";
    auto *sound_cmd = app.add_subcommand("improve-soundness", "augment every G_i to an expander, then cone");
    add_io(sound_cmd, c);
    sound_cmd->add_option("--target-h", target_h, "Cheeger constant to reach, e.g. 1/2");
    sound_cmd->add_option("--direct-z", direct_spec, "auto | none | comma-separated Z-stabilizer indices");
    sound_cmd->add_option("--ell-prime", ell_prime, "dual thickening of the discs (default: greedy)");
    sound_cmd->add_flag("--no-reduce", no_reduce, "write the cone code itself");
    sound_cmd->add_option("--seed", c.seed);
    sound_cmd->add_option("--report", c.report, "report file");
    sound_cmd->callback([&] {
        action = [&] {
            const auto code = read_code_file(c.input);
            const auto direct = resolve_direct(code, direct_spec);
            ConeInput input{strip_direct(code), direct, resolve_sets(code, "auto", direct)};
            auto si = improve_soundness(input.base, input.q_sets, Rational::parse(target_h),
                                        derive_seed(c.seed, "improve-soundness"));
            auto cc = cone_code(input, si.complexes);
            std::vector<TransformReport> reports{si.report, cc.report};
            if (no_reduce) {
                write_code(ctx, cc.code, c.output);
            } else {
                auto rc = reduce_cone(cc, ell_prime, derive_seed(c.seed, "reduce-cone"), kDefaultDiscThreshold);
                reports.push_back(rc.report);
                write_code(ctx, rc.code, c.output);
            }
            write_reports(ctx, reports, c.report);
        };
    });

    // reduce
    std::string config_path;
    auto *reduce_cmd = app.add_subcommand("reduce", "full weight reduction pipeline");
    add_io(reduce_cmd, c);
    reduce_cmd->add_option("--config", config_path, "pipeline configuration JSON");
    reduce_cmd->add_option("--seed", c.seed);
    reduce_cmd->add_option("--report", c.report, "report file");
    reduce_cmd->callback([&] {
        action = [&] {
            const auto config =
                config_path.empty() ? PipelineConfig{} : PipelineConfig::from_json(read_json_file(config_path));
            ctx.config = config.to_json();
            auto r = reduce_full(strip_direct(read_code_file(c.input)), config, c.seed);
            write_code(ctx, r.code, c.output);
            write_reports(ctx, r.reports, c.report);
        };
    });

    // reduce-applic
    RandomCodeSpec spec;
    std::optional<double> ell_factor;
    std::string code_out;
    auto *applic_cmd = app.add_subcommand("reduce-applic", "random code, thicken, reduce and balance");
    applic_cmd->add_option("--n", spec.n, "number of bits N")->required();
    applic_cmd->add_option("--beta", spec.beta, "density: Delta = beta ln N");
    applic_cmd->add_option("--ell-factor", ell_factor, "ell = max(2, ceil(c N))");
    applic_cmd->add_option("--config", config_path, "applic configuration JSON");
    applic_cmd->add_option("--seed", c.seed);
    applic_cmd->add_option("--out", code_out, "final code file");
    applic_cmd->add_option("--report", c.report, "report file");
    applic_cmd->callback([&] {
        action = [&] {
            auto config = config_path.empty() ? ApplicConfig{} : ApplicConfig::from_json(read_json_file(config_path));
            if (ell_factor) config.ell_factor = *ell_factor;
            ctx.config = config.to_json();
            spec.seed = c.seed;
            auto r = reduce_applic(spec, config);
            if (!code_out.empty()) write_code(ctx, r.code, code_out);
            write_reports(ctx, r.reports, c.report);
            emit(ctx, {{"scaling", r.scaling.to_json()}, {"diagnostics", r.diagnostics.to_json()}}, "");
        };
    });

    // random
    std::string diagnostics_path;
    std::string x_fraction;
    std::optional<std::size_t> z_count;
    bool no_graphs = false;
    auto *random_cmd = app.add_subcommand("random", "sample a random code with log-weight X-checks");
    random_cmd->add_option("output", c.output, "code file (stdout when omitted)");
    random_cmd->add_option("--n", spec.n, "number of bits N")->required();
    random_cmd->add_option("--beta", spec.beta, "density: Delta = beta ln N");
    random_cmd->add_option("--x-fraction", x_fraction, "X-checks per bit, e.g. 1/2");
    random_cmd->add_option("--z-count", z_count, "Z-stabilizers (default N/4)");
    random_cmd->add_option("--seed", c.seed);
    random_cmd->add_option("--diagnostics", diagnostics_path, "diagnostics file");
    random_cmd->add_flag("--no-graphs", no_graphs, "skip the G_i expansion diagnostics");
    random_cmd->callback([&] {
        action = [&] {
            spec.seed = c.seed;
            if (!x_fraction.empty()) spec.x_check_fraction = Rational::parse(x_fraction);
            spec.z_count = z_count;
            ApplicOptions options;
            options.graphs = !no_graphs;
            auto a = build_applic_code(spec, options);
            write_code(ctx, a.code, c.output);
            if (!diagnostics_path.empty()) {
                auto j = a.diagnostics.to_json();
                j["tool"] = tool_json();
                j["arguments"] = ctx.arguments;
                write_json_file(diagnostics_path, j);
            }
        };
    });

    // gen-fixture
    std::string fixture;
    std::size_t size = 3;
    bool joint = false;
    auto *fixture_cmd = app.add_subcommand("gen-fixture", "write a fixture code");
    fixture_cmd->add_option("name", fixture, "toric | steane | fig1 | punctured-sphere")
        ->required()
        ->check(CLI::IsMember({"toric", "steane", "fig1", "punctured-sphere"}));
    fixture_cmd->add_option("output", c.output, "code file (stdout when omitted)");
    fixture_cmd->add_option("--size", size, "L for toric and punctured-sphere, polygon size n for fig1");
    fixture_cmd->add_flag("--joint", joint, "punctured-sphere: add the joint puncture stabilizer");
    fixture_cmd->callback([&] {
        action = [&] { write_code(ctx, fixtures::by_name(fixture, size, joint), c.output); };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    ctx.command = app.get_subcommands().front()->get_name();
    for (const auto *opt : app.get_subcommands().front()->get_options()) {
        if (opt->get_name() == "--help" || opt->count() == 0) continue;
        auto name = opt->get_name(false, true);
        name.erase(0, name.find_first_not_of('-'));
        const auto values = opt->results();
        if (opt->get_type_size() == 0) {
            ctx.arguments[name] = true;
        } else {
            ctx.arguments[name] = values.size() == 1 ? json(values.front()) : json(values);
        }
    }
    try {
        action();
    } catch (const DomainError &e) {
        err << e.to_json().dump() << '\n';
        return kExitDomainError;
    } catch (const nlohmann::json::exception &e) {
        err << json{{"error", errors::kParseError}, {"message", e.what()}, {"detail", json::object()}}.dump() << '\n';
        return kExitDomainError;
    } catch (const std::exception &e) {
        err << json{{"error", "Internal"}, {"message", e.what()}, {"detail", json::object()}}.dump() << '\n';
        return kExitInternal;
    }
    return kExitOk;
}

}  // namespace qwr::cli
