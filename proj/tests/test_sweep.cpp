#include <catch2/catch_amalgamated.hpp>

#include "hecke/sweep.hpp"

using namespace hecke;

namespace {

IntegralGrid small_grid() {
    IntegralGrid g;
    g.qs = {Int(2), Int(3)};
    g.fs = {1, 2};
    g.as = {0, 1};
    g.max_len = 3;
    g.sizes = {0, 1};
    return g;
}

}  // namespace

TEST_CASE("integral sweep rows are all green and deterministic") {
    auto rows = run_verify_integrals(small_grid());
    REQUIRE(!rows.empty());
    for (const auto& r : rows) {
        INFO(r.case_id << " " << r.item << ": " << r.lhs << " vs " << r.rhs);
        CHECK(r.ok);
    }
    auto rows2 = run_verify_integrals(small_grid());
    REQUIRE(rows.size() == rows2.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].case_id == rows2[i].case_id);
        CHECK(rows[i].lhs == rows2[i].lhs);
    }
}

TEST_CASE("base change sweep rows are green") {
    auto rows = run_verify_fl(small_grid());
    REQUIRE(!rows.empty());
    size_t vanishing = 0, degenerate = 0;
    for (const auto& r : rows) {
        INFO(r.case_id << " " << r.item);
        CHECK(r.ok);
        if (r.item.find("vanishing") != std::string::npos) ++vanishing;
        if (r.item.find("degenerate") != std::string::npos) ++degenerate;
    }
    CHECK(vanishing > 0);
    CHECK(degenerate > 0);
}

TEST_CASE("tree sweep rows are green") {
    TreeGrid g;
    g.qs = {Int(2)};
    g.fs = {1, 2};
    g.as = {0, 1};
    g.radius = 4;
    auto rows = run_verify_counts_tree(g);
    REQUIRE(!rows.empty());
    for (const auto& r : rows) {
        INFO(r.case_id << " " << r.item << ": " << r.lhs << " vs " << r.rhs);
        CHECK(r.ok);
    }
}

TEST_CASE("explicit cocharacters and the ramification filter") {
    IntegralGrid g = small_grid();
    g.mus = {{1, -1}, {2, 2}};
    g.ramified_filter = true;
    auto rows = run_verify_integrals(g);
    REQUIRE(!rows.empty());
    for (const auto& r : rows) {
        CHECK(r.ok);
        CHECK(r.case_id.substr(0, 3) == "ram");
        CHECK((r.item.find("mu=(1,-1)") != std::string::npos || r.item.find("mu=(2,2)") != std::string::npos ||
               r.item.find("mismatch") != std::string::npos));
    }
}

TEST_CASE("summaries and the injected-fault negative control") {
    auto rows = run_verify_integrals(small_grid());
    CHECK(summarize(rows).all_ok());
    inject_fault(rows);
    RowSummary s = summarize(rows);
    CHECK_FALSE(s.all_ok());
    CHECK(s.failed == 1);
}
