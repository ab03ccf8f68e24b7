#include <doctest.h>

#include "cmray/suites.hpp"

using namespace cmray;

TEST_CASE("reports are byte-identical across repeated runs") {
    RunConfig cfg;
    cfg.dk = -20;
    cfg.N = 9;
    cfg.digits = 60;
    auto a = suite_case_constants(cfg);
    auto b = suite_case_constants(cfg);
    CHECK(a.results.dump() == b.results.dump());
    cfg.samples = 4;
    cfg.seed = 12345;
    auto c = suite_fricke_siegel(cfg);
    auto d = suite_fricke_siegel(cfg);
    CHECK(c.results.dump() == d.results.dump());
    cfg.seed = 54321;
    auto e = suite_fricke_siegel(cfg);
    CHECK(c.results.dump() != e.results.dump());  // seed is live
}

TEST_CASE("field and rayclass reports carry the documented content") {
    auto f = field_info_report(-20);
    CHECK(f["class_number"] == 2);
    CHECK(f["unit_count"] == 2);
    auto f3 = field_info_report(-3);
    CHECK(f3["unit_count"] == 6);
    auto r = rayclass_report(-20, 7, true);
    CHECK(r["order"] == "36");
    CHECK(r["ring_subgroup_order"] == 3);
    CHECK(r["check"] == "pass");
    auto t = invariant_table_json(-20, 5, PrecisionContext(40, 10));
    CHECK(t["entries"].size() == 20);
    CHECK(t["entries"][0].contains("fricke_re"));
    CHECK(t["entries"][0].contains("log_abs_siegel"));
}

TEST_CASE("table1 suite covers the admissible range") {
    RunConfig cfg;
    cfg.max_n = 100;
    auto rep = suite_table1(cfg);
    CHECK(rep.pass);
    CHECK(rep.results.back()["admissible_count"].get<long>() > 40);
}
