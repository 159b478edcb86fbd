#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace graphcrop {

struct SuiteReport {
    std::string name;
    bool passed = true;
    std::vector<std::string> lines; // one per check, "ok ..." or "FAIL ..."
};

struct VerifyOptions {
    std::optional<std::string> suite; // run only this suite
    bool inject_fault = false;        // perturb one comparison per suite
    std::uint64_t seed = 20201;
};

/// Suite names in execution order: diffusion, crop, policy, io.
const std::vector<std::string> &suite_names();

SuiteReport verify_diffusion(const VerifyOptions &options);
SuiteReport verify_crop(const VerifyOptions &options);
SuiteReport verify_policy(const VerifyOptions &options);
SuiteReport verify_io(const VerifyOptions &options);

/// Runs the selected suites, printing a PASS/FAIL line per suite followed by
/// its check lines. Returns true iff every suite passed. Throws UsageError for
/// an unknown suite name.
bool run_verification(const VerifyOptions &options, std::ostream &out);

} // namespace graphcrop
