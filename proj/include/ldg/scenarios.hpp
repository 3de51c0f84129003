#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ldg/io.hpp"

namespace ldg {

/// A named, fully parameterized experiment. Every output is a pure function
/// of (name, params, seed); bundles are byte-identical across runs.
struct Scenario {
    std::string name;
    std::map<std::string, std::string> params;
    uint64_t seed = 0;
    unsigned long budget = kDefaultEnumerationBudget;
};

struct ReportBundle {
    std::string scenario;
    bool pass = false;
    bool truncated = false;  // budget ran out; bundle is partial
    Json summary;
    std::vector<std::pair<std::string, std::string>> files;  // name -> content

    int exit_code() const { return truncated ? 2 : (pass ? 0 : 1); }
};

std::vector<std::string> scenario_names();

ReportBundle run_scenario(const Scenario& s);

/// Writes bundle files plus summary.json under dir; stable bytes.
void emit(const ReportBundle& bundle, const std::string& dir);

}  // namespace ldg
