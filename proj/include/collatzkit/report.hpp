#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace collatz {

inline const char* version() { return "0.1.0"; }

struct CheckRecord {
    std::string id;        // "<op>/<anchor>": names the operation and its source
    std::string expected;
    std::string computed;
    std::string tolerance;  // "exact" or a numeric width
    bool pass;
    std::optional<double> lo, hi;  // interval for decimal outputs
};

struct SuiteReport {
    std::string suite;
    std::string lib_version;
    uint64_t seed;
    std::vector<CheckRecord> checks;  // sorted by id before serialization

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    // canonical JSON: deterministic for a fixed seed and build
    std::string to_json() const;
};

struct SuiteConfig {
    uint64_t seed = 1;
    unsigned long depth_cap = 0;  // 0 = suite default
    size_t mc_steps = 0;          // 0 = suite default
};

using SuiteFn = std::function<SuiteReport(const SuiteConfig&)>;

const std::map<std::string, SuiteFn>& suite_registry();
SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg = {});

// named tables mirroring the published ones; "num/den" strings plus decimals
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::string to_csv() const;
    std::string to_json() const;
};
const std::vector<std::string>& table_registry();
Table emit_table(const std::string& name);

}  // namespace collatz
