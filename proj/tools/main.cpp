// infotherm: runs one experiment per invocation, or a batch of config files.
//
// Exit status: 0 success, 2 usage error, 1 runtime error.

#include "infotherm/scenario.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>

using nlohmann::json;
namespace cli = infotherm::cli;

namespace {

constexpr const char* kOutputEnv = "INFOTHERM_OUTPUT_DIR";

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> formats;
    std::optional<std::string> units;
    std::optional<std::int64_t> steps;
    std::optional<std::int64_t> samples;
    std::vector<std::string> params;
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cli::UsageError("config: cannot read '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw cli::UsageError("config: malformed JSON in '" + path + "': " + e.what());
    }
}

// Output directory precedence: --out, then the environment, then the config.
void apply_output_dir(json& doc, const std::optional<std::string>& out) {
    if (const char* env = std::getenv(kOutputEnv); env && *env) doc["output_dir"] = env;
    if (out) doc["output_dir"] = *out;
}

json build_document(const std::string& experiment, const Overrides& o) {
    json doc = json::object();
    if (!o.config_path.empty()) {
        doc = read_json_file(o.config_path);
        if (!doc.is_object()) throw cli::UsageError("config: expected a JSON object");
        if (doc.contains("experiment") && doc["experiment"] != experiment) {
            throw cli::UsageError("experiment: config says " + doc["experiment"].dump() + " but subcommand is '" +
                                  experiment + "'");
        }
    }
    doc["experiment"] = experiment;
    if (o.seed) doc["seed"] = *o.seed;
    if (o.units) doc["units"] = *o.units;
    if (o.formats) doc["formats"] = *o.formats;
    if (o.steps) doc["steps"] = *o.steps;
    if (o.samples) doc["samples"] = *o.samples;
    for (const auto& kv : o.params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw cli::UsageError("--param: expected KEY=VALUE, got '" + kv + "'");
        const std::string key = kv.substr(0, eq);
        const std::string value = kv.substr(eq + 1);
        json parsed = json::parse(value, nullptr, false);
        doc[key] = parsed.is_discarded() ? json(value) : parsed;
    }
    apply_output_dir(doc, o.out);
    return doc;
}

void report_written(const std::vector<std::string>& paths) {
    for (const auto& p : paths) std::cerr << "wrote " << p << '\n';
}

int run_single(const std::string& experiment, const Overrides& o) {
    const cli::ScenarioConfig cfg = cli::parse_config(build_document(experiment, o));
    const cli::ScenarioRun run = cli::run_scenario(cfg);
    report_written(cli::emit_outputs(run, cfg.output_dir));
    std::cout << run.summary.to_json(true).dump(2) << '\n';
    return 0;
}

int run_batch(const std::vector<std::string>& paths, unsigned jobs, const std::optional<std::string>& out) {
    // Every config is validated before any of them runs.
    std::vector<cli::ScenarioConfig> configs;
    for (const auto& path : paths) {
        json doc = read_json_file(path);
        if (!doc.is_object()) throw cli::UsageError("config: expected a JSON object in '" + path + "'");
        std::optional<std::string> dir;
        if (out) dir = (std::filesystem::path(*out) / std::filesystem::path(path).stem()).string();
        apply_output_dir(doc, dir);
        try {
            configs.push_back(cli::parse_config(doc));
        } catch (const cli::UsageError& e) {
            throw cli::UsageError(path + ": " + e.what());
        }
    }

    std::vector<json> results(configs.size());
    std::vector<std::string> errors(configs.size());
    std::mutex log_mutex;
    std::size_t next = 0;
    std::mutex next_mutex;
    const auto worker = [&] {
        while (true) {
            std::size_t i;
            {
                std::lock_guard lock(next_mutex);
                if (next == configs.size()) return;
                i = next++;
            }
            try {
                const auto run = cli::run_scenario(configs[i]);
                const auto written = cli::emit_outputs(run, configs[i].output_dir);
                results[i] = run.summary.to_json(true);
                std::lock_guard lock(log_mutex);
                report_written(written);
            } catch (const std::exception& e) {
                errors[i] = e.what();
                results[i] = {{"error", e.what()}, {"config", paths[i]}};
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < std::max(1u, std::min<unsigned>(jobs, configs.size())); ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::cout << json(results).dump(2) << '\n';
    int status = 0;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!errors[i].empty()) {
            std::cerr << "infotherm: " << paths[i] << ": " << errors[i] << '\n';
            status = 1;
        }
    }
    return status;
}

void add_common_flags(CLI::App* sub, Overrides& o) {
    sub->add_option("--config", o.config_path, "JSON scenario file")->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "64-bit RNG seed");
    sub->add_option("--out", o.out, "output directory (overrides config and " + std::string(kOutputEnv) + ")");
    sub->add_option("--formats", o.formats, "comma-separated subset of csv,json,svg; empty for none");
    sub->add_option("--units", o.units, "si or reduced")->check(CLI::IsMember({"si", "reduced"}));
    sub->add_option("--steps", o.steps, "quasi-static or expansion steps");
    sub->add_option("--samples", o.samples, "Monte Carlo samples");
    sub->add_option("-p,--param", o.params, "experiment parameter KEY=VALUE (repeatable)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ideal-gas entropy ledgers, microstate oracle and demon simulator"};
    app.set_version_flag("--version", std::string("infotherm ") + cli::version());
    app.require_subcommand(1);

    Overrides overrides;
    for (const auto& name : cli::experiment_names()) {
        add_common_flags(app.add_subcommand(name, "run the " + name + " experiment"), overrides);
    }

    std::vector<std::string> batch_paths;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::optional<std::string> batch_out;
    auto* batch = app.add_subcommand("batch", "run several config files in parallel workers");
    batch->add_option("configs", batch_paths, "JSON scenario files")->required()->check(CLI::ExistingFile);
    batch->add_option("-j,--jobs", jobs, "parallel workers")->check(CLI::PositiveNumber);
    batch->add_option("--out", batch_out, "base directory; each config writes to <out>/<config stem>");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (batch->parsed()) return run_batch(batch_paths, jobs, batch_out);
        for (auto* sub : app.get_subcommands()) return run_single(sub->get_name(), overrides);
    } catch (const cli::UsageError& e) {
        std::cerr << "infotherm: usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "infotherm: error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
