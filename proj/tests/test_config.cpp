#include <doctest.h>

#include <stdexcept>

#include "excidyn/config.hpp"
#include "test_helpers.hpp"

using namespace excidyn;
using namespace excidyn::harness;

TEST_CASE("empty input yields the all-defaults config") {
    const ScenarioConfig cfg = parse_config("");
    CHECK(cfg == default_config());
    CHECK(cfg.system.gamma == 0.05);
    CHECK(cfg.system.m_coupling == 20.0);
    CHECK(cfg.system.xi == 10.0);
    CHECK(cfg.system.delta == 0.1);
    CHECK(std::norm(cfg.initial.alpha) == doctest::Approx(10.0).epsilon(1e-14));
}

TEST_CASE("serialize/parse round-trips to the identical canonical form") {
    ScenarioConfig cfg = fig2_base_config();
    cfg.initial.dphi = 1.25;
    cfg.grid.j_count = 1001;
    cfg.grid.w_mult = 30.0;
    cfg.run.samples = 77;
    cfg.run.dt_rule = 0.02;
    cfg.output.dir = "out/somewhere";
    cfg.output.plot_script = false;
    const ScenarioConfig round = parse_config(serialize_config(cfg));
    CHECK(round == cfg);
    // Twice more: canonical form is a fixed point.
    CHECK(parse_config(serialize_config(round)) == round);
}

TEST_CASE("n0 is translated to a real positive alpha") {
    const ScenarioConfig cfg = parse_config("[initial]\nn0 = 16\n");
    CHECK(cfg.initial.alpha == cplx{4.0, 0.0});
    CHECK_THROWS_AS(parse_config("[initial]\nn0 = 4\nalpha_re = 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("[initial]\nn0 = -1\n"), std::invalid_argument);
}

TEST_CASE("unknown keys and malformed lines are rejected with line numbers") {
    try {
        parse_config("[system]\ngamma_mev = 1\nbogus = 3\n");
        FAIL("expected rejection");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        CHECK(std::string(e.what()).find("bogus") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("[nosuch]\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("gamma_mev = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("[system]\ngamma_mev 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("[system]\ngamma_mev = abc\n"), std::invalid_argument);
}

TEST_CASE("invariant violations surface at parse time naming the field") {
    try {
        parse_config("[system]\ngamma_mev = -1\n");
        FAIL("expected rejection");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("gamma") != std::string::npos);
    }
    // Grid invariants are probed here too, never mid-run.
    CHECK_THROWS_AS(parse_config("[grid]\nj_count = 1000\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("[grid]\nw_mult = 5\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("[run]\nsamples = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("[run]\ndt_rule = 0.5\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("[run]\nt_end_over_gamma = 0\n"), std::invalid_argument);
}

TEST_CASE("comments and blank lines are ignored") {
    const ScenarioConfig cfg = parse_config(
        "# leading comment\n\n[system]\n; another comment\ngamma_mev = 0.05\n");
    CHECK(cfg == default_config());
}
