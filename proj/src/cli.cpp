#include "spinchaos/cli.hpp"

#include "spinchaos/parallel.hpp"
#include "spinchaos/version.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>

namespace spinchaos::cli {

namespace {

using nlohmann::json;

constexpr std::uint64_t kLaneCouplings = 4;

const std::vector<std::string> kSubcommands = {
    "eta-sweep", "purity-sweep", "fluctuations",
    "control-sweep", "temperature-sweep", "validate"};

[[noreturn]] void bad_key(const std::string& where, const std::string& message) {
    throw config_error(where + ": " + message);
}

void check_keys(const json& object, const std::string& where,
                const std::vector<std::string>& allowed) {
    for (const auto& [key, value] : object.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            bad_key(where + "." + key, "unknown key");
        }
    }
}

double get_number(const json& object, const std::string& where, const std::string& key) {
    if (!object.contains(key)) bad_key(where + "." + key, "required key missing");
    if (!object[key].is_number()) bad_key(where + "." + key, "expected a number");
    return object[key].get<double>();
}

double get_number_or(json& object, const std::string& where, const std::string& key,
                     double fallback) {
    if (!object.contains(key)) object[key] = fallback;
    if (!object[key].is_number()) bad_key(where + "." + key, "expected a number");
    return object[key].get<double>();
}

int get_int(const json& object, const std::string& where, const std::string& key) {
    if (!object.contains(key)) bad_key(where + "." + key, "required key missing");
    if (!object[key].is_number_integer()) bad_key(where + "." + key, "expected an integer");
    return object[key].get<int>();
}

int get_int_or(json& object, const std::string& where, const std::string& key,
               int fallback) {
    if (!object.contains(key)) object[key] = fallback;
    if (!object[key].is_number_integer()) bad_key(where + "." + key, "expected an integer");
    return object[key].get<int>();
}

bool get_bool_or(json& object, const std::string& where, const std::string& key,
                 bool fallback) {
    if (!object.contains(key)) object[key] = fallback;
    if (!object[key].is_boolean()) bad_key(where + "." + key, "expected a boolean");
    return object[key].get<bool>();
}

std::string get_string_or(json& object, const std::string& where, const std::string& key,
                          const std::string& fallback) {
    if (!object.contains(key)) object[key] = fallback;
    if (!object[key].is_string()) bad_key(where + "." + key, "expected a string");
    return object[key].get<std::string>();
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (const unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::string config_hash_of(json config) {
    // Execution knobs do not change the scientific identity of a run.
    config.erase("workers");
    config.erase("output");
    char buffer[24];
    std::snprintf(buffer, sizeof buffer, "fnv1a:%016llx",
                  static_cast<unsigned long long>(fnv1a(config.dump())));
    return buffer;
}

sym::SectorPolicy parse_sector(const json& value, const std::string& where) {
    if (value.is_string()) {
        const auto name = value.get<std::string>();
        if (name == "odd") return sym::SectorPolicy::parity_sector(sym::Parity::Odd);
        if (name == "even") return sym::SectorPolicy::parity_sector(sym::Parity::Even);
        if (name == "full") return sym::SectorPolicy::full();
        bad_key(where, "expected 'odd', 'even', 'full', or an {n_up, parity} object");
    }
    if (value.is_object()) {
        check_keys(value, where, {"n_up", "parity"});
        const int n_up = get_int(value, where, "n_up");
        if (!value.contains("parity")) return sym::SectorPolicy::sz(n_up);
        const auto parity = value["parity"].get<std::string>();
        if (parity == "even") return sym::SectorPolicy::sz_parity(n_up, sym::Parity::Even);
        if (parity == "odd") return sym::SectorPolicy::sz_parity(n_up, sym::Parity::Odd);
        bad_key(where + ".parity", "expected 'even' or 'odd'");
    }
    bad_key(where, "expected a string or an object");
}

std::vector<double> resolve_grid(json& sweep_section, const std::string& where,
                                 const std::string& key) {
    if (!sweep_section.contains(key)) bad_key(where + "." + key, "required key missing");
    json& grid = sweep_section[key];
    if (grid.is_object()) {
        check_keys(grid, where + "." + key, {"start", "stop", "count"});
        const double start = get_number(grid, where + "." + key, "start");
        const double stop = get_number(grid, where + "." + key, "stop");
        const int count = get_int(grid, where + "." + key, "count");
        if (count < 1) bad_key(where + "." + key + ".count", "must be >= 1");
        json values = json::array();
        for (int i = 0; i < count; ++i) {
            values.push_back(count == 1 ? start
                                        : start + (stop - start) * i / (count - 1));
        }
        grid = values;
    }
    if (!grid.is_array() || grid.empty()) {
        bad_key(where + "." + key, "expected a non-empty array or {start, stop, count}");
    }
    std::vector<double> values;
    for (const auto& v : grid) {
        if (!v.is_number()) bad_key(where + "." + key, "grid entries must be numbers");
        values.push_back(v.get<double>());
    }
    return values;
}

ops::SpinModel resolve_model(json& model, std::uint64_t seed) {
    if (!model.is_object()) bad_key("model", "expected an object");
    const auto kind = get_string_or(model, "model", "kind", "");
    if (kind.empty()) bad_key("model.kind", "required key missing");
    const int length = get_int(model, "model", "length");
    if (length < 1) bad_key("model.length", "must be >= 1");
    const bool include_probe =
        get_bool_or(model, "model", "include_probe_hamiltonian", true);

    ops::SpinModel result;
    try {
        if (kind == "ising") {
            check_keys(model, "model",
                       {"kind", "length", "include_probe_hamiltonian", "h_x", "h_z",
                        "couplings"});
            const double h_x = get_number_or(model, "model", "h_x", 0.0);
            const double h_z = get_number_or(model, "model", "h_z", 0.0);
            if (!model.contains("couplings")) model["couplings"] = 1.0;
            json& couplings = model["couplings"];
            std::vector<double> values;
            if (couplings.is_number()) {
                values.assign(static_cast<std::size_t>(std::max(length - 1, 0)),
                              couplings.get<double>());
                couplings = json(values);
            } else if (couplings.is_object()) {
                check_keys(couplings, "model.couplings", {"random"});
                if (!couplings.contains("random")) {
                    bad_key("model.couplings", "expected a number, array, or {random}");
                }
                json& random = couplings["random"];
                check_keys(random, "model.couplings.random", {"low", "high", "seed_lane"});
                const double low = get_number(random, "model.couplings.random", "low");
                const double high = get_number(random, "model.couplings.random", "high");
                const int lane = get_int_or(random, "model.couplings.random", "seed_lane", 0);
                if (low > high) bad_key("model.couplings.random", "low must be <= high");
                auto stream = rng::Stream(seed)
                                  .child(kLaneCouplings)
                                  .child(static_cast<std::uint64_t>(lane));
                values = ops::sample_random_couplings(length, low, high, stream);
                couplings = json(values);  // materialized: the draw is recorded
            } else if (couplings.is_array()) {
                for (const auto& v : couplings) {
                    if (!v.is_number()) {
                        bad_key("model.couplings", "array entries must be numbers");
                    }
                    values.push_back(v.get<double>());
                }
            } else {
                bad_key("model.couplings", "expected a number, array, or {random}");
            }
            result = ops::SpinModel::ising(length, h_x, h_z, std::move(values));
        } else if (kind == "tilted_ising") {
            check_keys(model, "model",
                       {"kind", "length", "include_probe_hamiltonian", "B", "theta", "J"});
            const double field = get_number(model, "model", "B");
            const double theta = get_number_or(model, "model", "theta", 0.0);
            const double coupling = get_number(model, "model", "J");
            result = ops::SpinModel::tilted_ising(length, field, theta, coupling);
        } else if (kind == "heisenberg") {
            check_keys(model, "model",
                       {"kind", "length", "include_probe_hamiltonian", "field_bound"});
            const double bound = get_number_or(model, "model", "field_bound", 0.0);
            result = ops::SpinModel::heisenberg(
                length, bound, std::vector<double>(static_cast<std::size_t>(length), 0.0));
        } else if (kind == "xxz") {
            check_keys(model, "model",
                       {"kind", "length", "include_probe_hamiltonian", "anisotropy",
                        "perturbation"});
            const double anisotropy = get_number(model, "model", "anisotropy");
            const double perturbation = get_number_or(model, "model", "perturbation", 0.0);
            result = ops::SpinModel::xxz(length, anisotropy, perturbation);
        } else {
            bad_key("model.kind",
                    "expected 'ising', 'tilted_ising', 'heisenberg', or 'xxz'");
        }
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("model: ") + e.what());
    }
    result.include_probe_hamiltonian = include_probe;
    return result;
}

int resolve_workers(json& config, const CommandOverrides& overrides) {
    if (overrides.workers) {
        config["workers"] = *overrides.workers;
    } else if (!config.contains("workers")) {
        if (const char* env = std::getenv("SPINCHAOS_WORKERS")) {
            try {
                config["workers"] = std::stoi(env);
            } catch (const std::exception&) {
                throw config_error("SPINCHAOS_WORKERS: expected an integer");
            }
        } else {
            config["workers"] = default_worker_count();
        }
    }
    if (!config["workers"].is_number_integer() || config["workers"].get<int>() < 1) {
        bad_key("workers", "expected an integer >= 1");
    }
    return config["workers"].get<int>();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw numeric_error("cannot open output file " + path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.close();
    if (!out) throw numeric_error("failed writing output file " + path.string());
}

}  // namespace

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config file not found: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw config_error("config file " + path + " is not valid JSON: " + e.what());
    }
}

json apply_overrides(json config, const std::vector<std::string>& overrides) {
    for (const auto& entry : overrides) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw config_error("override '" + entry + "' is not of the form key=value");
        }
        const std::string path = entry.substr(0, eq);
        const std::string text = entry.substr(eq + 1);
        json value;
        try {
            value = json::parse(text);
        } catch (const json::parse_error&) {
            value = text;  // bare strings are allowed
        }
        json* node = &config;
        std::size_t begin = 0;
        while (true) {
            const auto dot = path.find('.', begin);
            const std::string key = path.substr(begin, dot - begin);
            if (key.empty()) throw config_error("override '" + entry + "' has an empty key");
            if (dot == std::string::npos) {
                (*node)[key] = value;
                break;
            }
            node = &(*node)[key];
            if (!node->is_object() && !node->is_null()) {
                throw config_error("override '" + entry + "' descends into a non-object");
            }
            begin = dot + 1;
        }
    }
    return config;
}

ResolvedRun resolve(const std::string& subcommand, json input,
                    const CommandOverrides& overrides) {
    if (std::find(kSubcommands.begin(), kSubcommands.end(), subcommand) ==
        kSubcommands.end()) {
        throw config_error("unknown subcommand: " + subcommand);
    }
    if (!input.is_object()) throw config_error("config root must be a JSON object");

    // A manifest can be fed back as a config.
    if (input.contains("resolved_config")) {
        if (input.contains("subcommand") && input["subcommand"].is_string() &&
            input["subcommand"].get<std::string>() != subcommand &&
            subcommand != "validate") {
            throw config_error("manifest was produced by subcommand '" +
                               input["subcommand"].get<std::string>() + "'");
        }
        input = input["resolved_config"];
    }

    check_keys(input, "config",
               {"model", "sweep", "dynamics", "eta", "control", "output", "seed", "workers",
                "dim_cap"});

    ResolvedRun run;
    run.subcommand = subcommand;
    json& config = input;

    if (overrides.seed) config["seed"] = *overrides.seed;
    if (!config.contains("seed")) {
        throw config_error("seed: required (no wall-clock seeding); set it in the config "
                           "or pass --seed");
    }
    if (!config["seed"].is_number_unsigned() && !config["seed"].is_number_integer()) {
        bad_key("seed", "expected an unsigned integer");
    }
    const auto seed = config["seed"].get<std::uint64_t>();

    const int workers = resolve_workers(config, overrides);

    if (!config.contains("dim_cap")) config["dim_cap"] = static_cast<int>(kDefaultDimCap);
    if (!config["dim_cap"].is_number_integer() || config["dim_cap"].get<long long>() < 2) {
        bad_key("dim_cap", "expected an integer >= 2");
    }

    if (!config.contains("model")) throw config_error("model: section required");
    if (!config.contains("sweep")) throw config_error("sweep: section required");
    json& sweep_section = config["sweep"];
    if (!sweep_section.is_object()) bad_key("sweep", "expected an object");
    check_keys(sweep_section, "sweep", {"parameter", "grid", "realizations"});

    sweep::SweepSpec spec;
    spec.model = resolve_model(config["model"], seed);
    spec.seed = seed;
    spec.workers = workers;
    spec.dim_cap = static_cast<std::size_t>(config["dim_cap"].get<long long>());

    const std::string default_parameter =
        subcommand == "fluctuations" ? "length" : "h_z";
    spec.parameter = get_string_or(sweep_section, "sweep", "parameter", default_parameter);
    if (subcommand == "fluctuations" && spec.parameter != "length") {
        bad_key("sweep.parameter", "fluctuations sweeps 'length'");
    }
    spec.grid = resolve_grid(sweep_section, "sweep", "grid");
    spec.realizations = get_int_or(sweep_section, "sweep", "realizations", 50);

    if (!config.contains("dynamics")) config["dynamics"] = json::object();
    json& dynamics = config["dynamics"];
    if (!dynamics.is_object()) bad_key("dynamics", "expected an object");
    check_keys(dynamics, "dynamics", {"horizon", "dt", "window", "angle_uniform", "betas"});
    spec.horizon = get_number_or(dynamics, "dynamics", "horizon", 50.0);
    spec.dt = get_number_or(dynamics, "dynamics", "dt", 0.1);
    if (!dynamics.contains("window")) {
        dynamics["window"] = json::array({0.5 * spec.horizon, spec.horizon});
    }
    if (!dynamics["window"].is_array() || dynamics["window"].size() != 2 ||
        !dynamics["window"][0].is_number() || !dynamics["window"][1].is_number()) {
        bad_key("dynamics.window", "expected [begin, end]");
    }
    spec.window_begin = dynamics["window"][0].get<double>();
    spec.window_end = dynamics["window"][1].get<double>();
    spec.angle_uniform = get_bool_or(dynamics, "dynamics", "angle_uniform", false);
    if (dynamics.contains("betas")) {
        if (!dynamics["betas"].is_array()) bad_key("dynamics.betas", "expected an array");
        for (const auto& b : dynamics["betas"]) {
            if (!b.is_number() || b.get<double>() < 0.0) {
                bad_key("dynamics.betas", "entries must be nonnegative numbers");
            }
            run.betas.push_back(b.get<double>());
        }
    }
    if (subcommand == "temperature-sweep" && run.betas.empty()) {
        bad_key("dynamics.betas", "temperature sweep needs at least one beta");
    }

    if (!config.contains("eta")) config["eta"] = json::object();
    json& eta = config["eta"];
    if (!eta.is_object()) bad_key("eta", "expected an object");
    check_keys(eta, "eta",
               {"enabled", "length", "sector", "disorder_realizations", "ising_coupling"});
    spec.eta.enabled = get_bool_or(eta, "eta", "enabled", subcommand == "eta-sweep");
    if (subcommand == "eta-sweep" && !spec.eta.enabled) {
        bad_key("eta.enabled", "must be true for eta-sweep");
    }
    spec.eta.length = get_int_or(eta, "eta", "length",
                                 subcommand == "eta-sweep" ? spec.model.length : 12);
    if (!eta.contains("sector")) eta["sector"] = "odd";
    spec.eta.sector = parse_sector(eta["sector"], "eta.sector");
    spec.eta.disorder_realizations = get_int_or(eta, "eta", "disorder_realizations", 50);
    if (spec.eta.disorder_realizations < 1) {
        bad_key("eta.disorder_realizations", "must be >= 1");
    }
    spec.eta.ising_coupling = get_number_or(eta, "eta", "ising_coupling", 1.0);
    if (subcommand == "eta-sweep" && spec.eta.length != spec.model.length) {
        bad_key("eta.length", "must equal model.length for eta-sweep (the model is the "
                              "eta chain)");
    }

    if (!config.contains("control")) config["control"] = json::object();
    json& control = config["control"];
    if (!control.is_object()) bad_key("control", "expected an object");
    check_keys(control, "control",
               {"target", "initial", "horizon", "steps", "bounds", "random_starts",
                "max_iterations"});
    const auto target = get_string_or(control, "control", "target", "transfer");
    if (target == "transfer") {
        run.control.target = sweep::ControlSettings::Target::Transfer;
    } else if (target == "bell") {
        run.control.target = sweep::ControlSettings::Target::Bell;
    } else {
        bad_key("control.target", "expected 'transfer' or 'bell'");
    }
    const auto initial = get_string_or(control, "control", "initial",
                                       target == "transfer" ? "probe_zero" : "random");
    if (initial == "probe_zero") {
        run.control.initial = sweep::ControlSettings::InitialState::ProbeZeroRestRandom;
    } else if (initial == "random") {
        run.control.initial = sweep::ControlSettings::InitialState::AllRandom;
    } else {
        bad_key("control.initial", "expected 'probe_zero' or 'random'");
    }
    run.control.horizon = get_number_or(control, "control", "horizon", 20.0);
    run.control.steps = get_int_or(control, "control", "steps", 20);
    if (!control.contains("bounds")) control["bounds"] = json::array({-2.0, 2.0});
    if (!control["bounds"].is_array() || control["bounds"].size() != 2 ||
        !control["bounds"][0].is_number() || !control["bounds"][1].is_number()) {
        bad_key("control.bounds", "expected [min, max]");
    }
    run.control.amplitude_min = control["bounds"][0].get<double>();
    run.control.amplitude_max = control["bounds"][1].get<double>();
    run.control.random_starts = get_int_or(control, "control", "random_starts", 10);
    run.control.max_iterations = get_int_or(control, "control", "max_iterations", 200);

    if (!config.contains("output")) config["output"] = json::object();
    json& output = config["output"];
    if (!output.is_object()) bad_key("output", "expected an object");
    check_keys(output, "output", {"name", "directory"});
    std::string default_name = subcommand;
    std::replace(default_name.begin(), default_name.end(), '-', '_');
    run.output_name = get_string_or(output, "output", "name", default_name);
    if (overrides.output_directory) output["directory"] = *overrides.output_directory;
    run.output_directory = get_string_or(output, "output", "directory", ".");

    try {
        spec.validate();
    } catch (const config_error&) {
        throw;
    } catch (const std::exception& e) {
        throw config_error(std::string("sweep: ") + e.what());
    }

    run.spec = std::move(spec);
    run.config = std::move(config);
    run.config_hash = config_hash_of(run.config);
    return run;
}

int execute(const ResolvedRun& run) {
    namespace fs = std::filesystem;
    if (run.subcommand == "validate") {
        std::cout << run.config.dump(2) << "\n";
        return kExitSuccess;
    }

    fs::path directory(run.output_directory);
    std::error_code ec;
    fs::create_directories(directory, ec);
    const fs::path csv_path = directory / (run.output_name + ".csv");
    const fs::path manifest_path = directory / (run.output_name + ".manifest.json");

    const auto start = std::chrono::steady_clock::now();
    sweep::SweepResult result;
    try {
        if (run.subcommand == "purity-sweep") {
            result = sweep::run_purity_sweep(run.spec);
        } else if (run.subcommand == "eta-sweep") {
            result = sweep::run_eta_sweep(run.spec);
        } else if (run.subcommand == "fluctuations") {
            result = sweep::run_fluctuation_scaling(run.spec);
        } else if (run.subcommand == "control-sweep") {
            result = sweep::run_control_sweep(run.spec, run.control);
        } else if (run.subcommand == "temperature-sweep") {
            result = sweep::run_temperature_sweep(run.spec, run.betas);
        } else {
            throw config_error("unknown subcommand: " + run.subcommand);
        }
    } catch (const sweep::sweep_failure& failure) {
        const fs::path partial_path = directory / (run.output_name + ".csv.partial");
        try {
            write_file(partial_path, to_csv(failure.partial));
            std::cerr << "error: " << failure.what() << "\n"
                      << "partial rows written to " << partial_path.string() << "\n";
        } catch (const std::exception& e) {
            std::cerr << "error: " << failure.what() << " (partial dump failed: " << e.what()
                      << ")\n";
        }
        return kExitComputationError;
    } catch (const config_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputationError;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    result.metadata.config_hash = run.config_hash;

    // Write the CSV through a temp file so an interrupted run never leaves a
    // bare .csv behind.
    const fs::path tmp_path = directory / (run.output_name + ".csv.tmp");
    write_file(tmp_path, to_csv(result));
    fs::rename(tmp_path, csv_path);

    json manifest;
    manifest["tool"] = {{"name", kToolName}, {"version", kVersionString}};
    manifest["subcommand"] = run.subcommand;
    manifest["seed"] = run.spec.seed;
    manifest["config_hash"] = run.config_hash;
    manifest["resolved_config"] = run.config;
    manifest["outputs"] = {{"csv", csv_path.filename().string()}};
    manifest["wall_time_seconds"] = elapsed.count();
    manifest["stats"] = json::object();
    for (const auto& [key, value] : result.metadata.stats) manifest["stats"][key] = value;
    manifest["warnings"] = result.warnings;
    write_file(manifest_path, manifest.dump(2) + "\n");

    std::cout << "wrote " << csv_path.string() << " (" << result.rows.size() << " rows)\n";
    for (const auto& warning : result.warnings) {
        std::cout << "warning: " << warning << "\n";
    }
    return kExitSuccess;
}

int run(int argc, const char* const* argv) {
    CLI::App app{"spin-chain chaos indicators, probe equilibration, and control sweeps"};
    app.require_subcommand(1);

    struct SubOptions {
        std::string config_path;
        std::vector<std::string> overrides;
        std::string out_dir;
        int workers = 0;
        std::uint64_t seed = 0;
        bool seed_set = false;
        bool workers_set = false;
        bool out_set = false;
    };
    std::map<std::string, std::shared_ptr<SubOptions>> options;

    for (const auto& name : kSubcommands) {
        auto* sub = app.add_subcommand(name, "");
        auto opts = std::make_shared<SubOptions>();
        options[name] = opts;
        sub->add_option("--config", opts->config_path, "JSON config file")->required();
        sub->add_option("--override", opts->overrides,
                        "key=value override (repeatable, dotted keys)");
        sub->add_option("--out", opts->out_dir, "output directory")
            ->each([opts](const std::string&) { opts->out_set = true; });
        sub->add_option("--workers", opts->workers, "worker thread count")
            ->each([opts](const std::string&) { opts->workers_set = true; });
        sub->add_option("--seed", opts->seed, "master seed")
            ->each([opts](const std::string&) { opts->seed_set = true; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitSuccess : kExitConfigError;
    }

    const auto* sub = app.get_subcommands().front();
    const auto& opts = *options.at(sub->get_name());

    try {
        json config = load_config_file(opts.config_path);
        config = apply_overrides(config, opts.overrides);
        CommandOverrides overrides;
        if (opts.seed_set) overrides.seed = opts.seed;
        if (opts.workers_set) overrides.workers = opts.workers;
        if (opts.out_set) overrides.output_directory = opts.out_dir;
        const ResolvedRun resolved = resolve(sub->get_name(), std::move(config), overrides);
        return execute(resolved);
    } catch (const config_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputationError;
    }
}

}  // namespace spinchaos::cli
