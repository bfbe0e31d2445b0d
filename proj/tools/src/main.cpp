#include "rootbias/cli/commands.hpp"
#include "rootbias/parallel.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace rootbias::cli;

int main(int argc, char** argv) {
    CLI::App app{"Root number bias of newforms on Gamma0(N): traces of W_N, refined dimensions, exceptions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "rootbias 0.1.0");

    std::uint64_t level = 0;
    int weight = 0;
    std::string n_range_text, k_range_text, format_text = "tsv";
    std::uint64_t n_max = 0;
    int k_max = 0;
    unsigned jobs = 0;

    auto* delta = app.add_subcommand("delta", "Delta(N,k), refined dimensions, case and zero classification");
    delta->add_option("N", level, "level")->required();
    delta->add_option("k", weight, "weight")->required();

    auto* table = app.add_subcommand("table", "Grid of traces and biases");
    table->add_option("--N", n_range_text, "level range a..b")->required();
    table->add_option("--k", k_range_text, "weight range a..b (odd weights skipped)")->required();
    table->add_option("--format", format_text, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));
    table->add_option("--jobs", jobs, "worker threads (0 = all cores)");

    auto* verify = app.add_subcommand("verify", "Cross-check all trace routes and class number relations");
    verify->add_option("--N", n_max, "largest level")->required();
    verify->add_option("--k", k_max, "largest weight")->required();
    verify->add_option("--jobs", jobs, "worker threads (0 = all cores)");

    auto* scan = app.add_subcommand("scan-negative", "List (N,k) with Delta(N,k) < 0");
    scan->add_option("--N", n_max, "largest level")->required();
    scan->add_option("--k", k_max, "largest weight")->required();
    scan->add_option("--jobs", jobs, "worker threads (0 = all cores)");

#ifdef ROOTBIAS_HAVE_LMFDB
    auto config = rootbias::lmfdb::ClientConfig::from_env();
    std::string cache_dir;
    long delay_ms = config.request_delay.count();
    bool minimal = false;
    auto* validate = app.add_subcommand("validate-lmfdb", "Compare Delta(N,k) with LMFDB root numbers");
    validate->add_option("N", level, "level")->required();
    validate->add_option("k", weight, "weight")->required();
    validate->add_flag("--offline", config.offline, "use the cache only");
    validate->add_flag("--minimal", minimal, "sum over twist-minimal orbits only");
    validate->add_option("--cache-dir", cache_dir, std::string("cache directory (default $") +
                                                       rootbias::lmfdb::kCacheEnvVar + ")");
    validate->add_option("--base-url", config.base_url, "API base URL")->capture_default_str();
    validate->add_option("--delay-ms", delay_ms, "pause between requests")->capture_default_str();
#endif

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
        return kUsage;
    }

    try {
        if (*delta) return cmd_delta(level, weight, std::cout, std::cerr);
        if (*table) {
            Range n_range, k_range;
            try {
                n_range = parse_range(n_range_text);
                k_range = parse_range(k_range_text);
            } catch (const std::invalid_argument& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kUsage;
            }
            return cmd_table(n_range, k_range, format_text == "json" ? TableFormat::Json : TableFormat::Tsv, jobs,
                             std::cout, std::cerr);
        }
        if (*verify) return cmd_verify(n_max, k_max, jobs, std::cout, std::cerr);
        if (*scan) return cmd_scan_negative(n_max, k_max, jobs, std::cout, std::cerr);
#ifdef ROOTBIAS_HAVE_LMFDB
        if (*validate) {
            if (!cache_dir.empty()) config.cache_dir = cache_dir;
            config.request_delay = std::chrono::milliseconds(delay_ms);
            return cmd_validate_lmfdb(level, weight, config, minimal, std::cout, std::cerr);
        }
#endif
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kMismatch;
    }
    return kUsage;
}
