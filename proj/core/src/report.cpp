#include "maxrank/report.hpp"

#include <chrono>
#include <ctime>

#include "json.hpp"

namespace maxrank {

bool all_hold(const std::vector<VerdictReport>& reports) {
    for (const auto& r : reports)
        if (!r.holds) return false;
    return true;
}

std::string reports_to_json(const std::vector<VerdictReport>& reports,
                            bool include_run_info, std::uint64_t elapsed_ms) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json claims = nlohmann::ordered_json::array();
    std::size_t failed = 0;
    for (const auto& r : reports) {
        nlohmann::ordered_json c;
        c["claim"] = r.claim;
        nlohmann::ordered_json params = nlohmann::ordered_json::object();
        for (const auto& [k, v] : r.params) params[k] = v;
        c["params"] = std::move(params);
        c["measured"] = r.measured;
        c["bound"] = r.bound;
        c["holds"] = r.holds;
        c["field"] = r.field_modulus;
        c["seed"] = r.seed;
        c["witness"] = r.witness;
        claims.push_back(std::move(c));
        if (!r.holds) ++failed;
    }
    j["claims"] = std::move(claims);
    j["summary"] = {{"total", reports.size()}, {"failed", failed}};
    if (include_run_info) {
        auto now = std::chrono::system_clock::now();
        std::time_t t = std::chrono::system_clock::to_time_t(now);
        char stamp[32];
        std::tm tm_utc{};
        gmtime_r(&t, &tm_utc);
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
        j["run_info"] = {{"timestamp", stamp}, {"elapsed_ms", elapsed_ms}};
    }
    return j.dump(2);
}

std::string reports_to_csv(const std::vector<VerdictReport>& reports) {
    std::string out = "claim,params,measured,bound,holds,seed,runtime_ms\n";
    for (const auto& r : reports) {
        out += r.claim;
        out += ",\"";
        bool first = true;
        for (const auto& [k, v] : r.params) {
            if (!first) out += ";";
            first = false;
            out += k + "=" + v;
        }
        out += "\",";
        out += r.measured;
        out += ",";
        out += r.bound;
        out += ",";
        out += r.holds ? "true" : "false";
        out += ",";
        out += std::to_string(r.seed);
        out += ",";
        out += std::to_string(r.runtime_ms);
        out += "\n";
    }
    return out;
}

bool within_pow2_bound(std::uint64_t value, std::uint64_t c, std::int64_t e2) {
    unsigned __int128 lhs = static_cast<unsigned __int128>(value) * value;
    unsigned __int128 rhs = static_cast<unsigned __int128>(c) * c;
    if (e2 >= 0) {
        if (e2 >= 100) return c > 0 || value == 0;
        rhs <<= e2;
    } else {
        if (-e2 >= 100) return value == 0;
        lhs <<= -e2;
    }
    return lhs <= rhs;
}

std::string pow2_bound_text(std::uint64_t c, std::int64_t e2) {
    if (e2 >= 0 && e2 % 2 == 0 && e2 / 2 < 63) {
        unsigned __int128 v = static_cast<unsigned __int128>(c) << (e2 / 2);
        if (v <= UINT64_MAX) return std::to_string(static_cast<std::uint64_t>(v));
    }
    return std::to_string(c) + "*2^(" + std::to_string(e2) + "/2)";
}

} // namespace maxrank
