#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "maxrank/report.hpp"
#include "maxrank/verify.hpp"

using namespace maxrank;

namespace {

const VerdictReport& find_claim(const std::vector<VerdictReport>& reports,
                                const std::string& claim) {
    for (const auto& r : reports)
        if (r.claim == claim) return r;
    REQUIRE_MESSAGE(false, "claim not found: " << claim);
    static VerdictReport dummy;
    return dummy;
}

CheckConfig small_config() {
    CheckConfig c;
    c.trials = 10;
    return c;
}

} // namespace

TEST_SUITE_BEGIN("verify");

TEST_CASE("matrix product rank checks") {
    auto reports = check_imm_rank_case(2, 3);
    CHECK(all_hold(reports));
    const VerdictReport& rank = find_claim(reports, "imm-rank");
    CHECK(rank.measured == "4");
    CHECK(rank.bound == "4");
    CHECK(find_claim(reports, "imm-monomials").measured == "4");
    CHECK(find_claim(reports, "imm-structure").holds);
}

TEST_CASE("full matrix product suite holds") {
    auto reports = check_imm_rank();
    CHECK(all_hold(reports));
    CHECK(reports.size() == 15); // five sizes, three facets each
}

TEST_CASE("grid checks hold") {
    auto reports = check_imm_grid_case(2, 2);
    CHECK(all_hold(reports));
    CHECK(find_claim(reports, "imm-grid-disjoint").holds);
}

TEST_CASE("subset pairing rank values") {
    CHECK(find_claim(check_q_rank_case(4), "q-rank").measured == "2");
    CHECK(find_claim(check_q_rank_case(8), "q-rank").measured == "6");
    auto reports = check_q_rank();
    CHECK(all_hold(reports));
    CHECK(find_claim(reports, "q-bound").holds);
}

TEST_CASE("proposition suites hold on both small fields") {
    for (std::uint32_t p : {2u, 3u}) {
        CheckConfig c = small_config();
        c.field = Field(p);
        auto reports = check_propositions(c);
        CHECK(all_hold(reports));
        CHECK(reports.size() == 8);
        for (const auto& r : reports) {
            CHECK(r.field_modulus == p);
            CHECK(r.measured == "0 violations");
        }
    }
    CheckConfig wide;
    wide.field = Field(101);
    CHECK_THROWS_AS(check_propositions(wide), InputError);
}

TEST_CASE("remaining suites hold with a small instance count") {
    CheckConfig c = small_config();
    CHECK(all_hold(check_depth3_bound(c)));
    CHECK(all_hold(check_product_sparse_bound(c)));
    CHECK(all_hold(check_preprocessing_invariance(c)));
    CHECK(all_hold(check_abp_bound(c)));
    CHECK(all_hold(check_total_dimension_bound(c)));
    CHECK(all_hold(partition_experiment(c)));
}

TEST_CASE("claim registry") {
    const auto& claims = known_claims();
    CHECK(claims.size() == 9);
    CHECK(std::find(claims.begin(), claims.end(), "q-rank") != claims.end());
    CHECK(std::find(claims.begin(), claims.end(), "propositions") != claims.end());

    CHECK_THROWS_AS(run_checks("no-such-claim", small_config()), InputError);
    CHECK(run_checks("q-rank").size() == check_q_rank().size());
}

TEST_CASE("reports are a pure function of the configuration") {
    CheckConfig c = small_config();
    c.field = Field(3);
    std::string a = reports_to_json(check_propositions(c), false);
    std::string b = reports_to_json(check_propositions(c), false);
    CHECK(a == b);
    CHECK(a.find("run_info") == std::string::npos);

    // With run_info the volatile part is confined to that block.
    std::string with = reports_to_json(check_propositions(c), true, 5);
    CHECK(with.find("run_info") != std::string::npos);
}

TEST_CASE("csv rendering") {
    VerdictReport r;
    r.claim = "demo";
    r.params = {{"n", "2"}, {"d", "3"}};
    r.measured = "4";
    r.bound = "4";
    r.holds = true;
    r.field_modulus = 2;
    r.seed = 7;
    r.runtime_ms = 12;
    CHECK(reports_to_csv({r}) ==
          "claim,params,measured,bound,holds,seed,runtime_ms\n"
          "demo,\"n=2;d=3\",4,4,true,7,12\n");
    CHECK(all_hold({r}));
    r.holds = false;
    CHECK_FALSE(all_hold({r}));
}

TEST_CASE("exact comparison against c * 2^(e/2)") {
    CHECK(within_pow2_bound(0, 0, 0));
    CHECK_FALSE(within_pow2_bound(1, 0, 5));
    CHECK(within_pow2_bound(4, 1, 4));
    CHECK_FALSE(within_pow2_bound(5, 1, 4));
    CHECK(within_pow2_bound(2, 1, 3));       // 4 <= 8
    CHECK_FALSE(within_pow2_bound(3, 1, 3)); // 9 > 8
    CHECK_FALSE(within_pow2_bound(1, 1, -1));
    CHECK(within_pow2_bound(0, 5, -3));
    CHECK(within_pow2_bound(3, 3, 1));
    CHECK(within_pow2_bound(1000000, 1, 128)); // huge exponent

    CHECK(pow2_bound_text(3, 4) == "12");
    CHECK(pow2_bound_text(1, 0) == "1");
    CHECK(pow2_bound_text(3, 1) == "3*2^(1/2)");
    CHECK(pow2_bound_text(7, 3) == "7*2^(3/2)");
    CHECK(pow2_bound_text(2, -1) == "2*2^(-1/2)");
}

TEST_CASE("observational partition experiment") {
    CheckConfig c;
    c.trials = 40;
    auto reports = partition_experiment(c);
    REQUIRE(!reports.empty());
    // Rows come in increasing k; the last one uses an oversized k and must
    // observe frequency zero.
    const VerdictReport& last = reports.back();
    CHECK(last.measured == "0.0000");
    CHECK(last.holds);

    // Same configuration, same observations.
    CHECK(reports_to_json(partition_experiment(c), false) ==
          reports_to_json(reports, false));
}

TEST_SUITE_END();
