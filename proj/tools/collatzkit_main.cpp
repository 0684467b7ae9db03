#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "collatzkit/report.hpp"
#include "collatzkit/syracuse.hpp"

namespace {

int write_out(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return 0;
    }
    std::ofstream f(out_path);
    if (!f) {
        std::cerr << "cannot open " << out_path << "\n";
        return 2;
    }
    f << text << "\n";
    return 0;
}

std::string default_out_dir() {
    const char* d = std::getenv("COLLATZKIT_OUT_DIR");
    return d ? d : "";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"collatzkit: exact verification suites for Collatz structure laws"};
    app.require_subcommand(1);

    std::string suite_name, table_name, format = "json", out;
    uint64_t seed = 1;
    unsigned long depth_cap = 0;
    size_t mc_steps = 0;

    auto* verify = app.add_subcommand("verify", "run a named verification suite");
    verify->add_option("suite", suite_name, "suite name")->required();
    verify->add_option("--seed", seed, "RNG seed recorded in the report");
    verify->add_option("--depth-cap", depth_cap, "override the suite's depth/K cap");
    verify->add_option("--mc-steps", mc_steps, "override Monte Carlo step counts");
    verify->add_option("--out", out, "output file (default stdout)");

    auto* table = app.add_subcommand("table", "emit a published table");
    table->add_option("table", table_name, "table name")->required();
    table->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    table->add_option("--out", out, "output file (default stdout)");

    std::string orbit_n;
    size_t max_steps = 10000;
    auto* orb = app.add_subcommand("orbit", "print the Syracuse orbit of an odd integer");
    orb->add_option("n", orbit_n, "odd starting value")->required();
    orb->add_option("--max-steps", max_steps, "step cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify) {
            collatz::SuiteConfig cfg;
            cfg.seed = seed;
            cfg.depth_cap = depth_cap;
            cfg.mc_steps = mc_steps;
            auto rep = collatz::run_suite(suite_name, cfg);
            std::string path = out;
            if (path.empty() && !default_out_dir().empty())
                path = default_out_dir() + "/" + suite_name + ".json";
            int rc = write_out(rep.to_json(), path);
            if (rc) return rc;
            for (const auto& c : rep.checks)
                std::cerr << (c.pass ? "pass " : "FAIL ") << c.id << ": " << c.computed
                          << " (expected " << c.expected << ", tol " << c.tolerance << ")\n";
            return rep.pass() ? 0 : 1;
        }
        if (*table) {
            auto t = collatz::emit_table(table_name);
            std::string path = out;
            if (path.empty() && !default_out_dir().empty())
                path = default_out_dir() + "/" + table_name + "." + format;
            return write_out(format == "csv" ? t.to_csv() : t.to_json(), path);
        }
        if (*orb) {
            collatz::Int n(orbit_n);
            auto t = collatz::orbit(n, max_steps);
            for (size_t i = 0; i < t.steps(); ++i)
                std::cout << t.values[i].get_str() << " v=" << t.valuations[i] << "\n";
            std::cout << t.values.back().get_str() << (t.reached_one ? " (reached 1)" : " (cap)")
                      << "\n";
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
