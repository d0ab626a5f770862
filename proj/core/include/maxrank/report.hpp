#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace maxrank {

// One checked claim instance or suite. Everything here is deterministic for
// a fixed configuration except runtime_ms, which only appears in CSV rows
// and in the isolated run_info block of the JSON form.
struct VerdictReport {
    std::string claim;
    std::vector<std::pair<std::string, std::string>> params; // ordered k=v
    std::string measured;
    std::string bound;
    bool holds = false;
    std::uint32_t field_modulus = 0;
    std::uint64_t seed = 0;
    std::string witness; // free-form evidence, may be empty
    std::uint64_t runtime_ms = 0;
};

bool all_hold(const std::vector<VerdictReport>& reports);

// {"claims": [...], "summary": {...}, "run_info": {...}}. The run_info block
// is the only volatile part (wall clock timestamp and elapsed time); with
// include_run_info = false the output is a pure function of the reports.
std::string reports_to_json(const std::vector<VerdictReport>& reports,
                            bool include_run_info = true,
                            std::uint64_t elapsed_ms = 0);

// claim,params,measured,bound,holds,seed,runtime_ms; params joined by ';'.
std::string reports_to_csv(const std::vector<VerdictReport>& reports);

// value <= c * 2^(e2/2), compared exactly by squaring.
bool within_pow2_bound(std::uint64_t value, std::uint64_t c, std::int64_t e2);

// Rendering of c * 2^(e2/2): exact digits when e2 is even and small,
// otherwise the expression itself.
std::string pow2_bound_text(std::uint64_t c, std::int64_t e2);

} // namespace maxrank
