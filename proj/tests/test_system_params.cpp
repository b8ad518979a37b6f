#include <doctest.h>

#include <stdexcept>

#include "excidyn/system_params.hpp"
#include "test_helpers.hpp"

using namespace excidyn;

TEST_CASE("validate rejects hard invariant violations") {
    SystemParams p = testutil::weak_damping();
    CHECK(validate(p).empty());

    SystemParams bad = p;
    bad.gamma = -1.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad.gamma = 0.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);

    bad = p;
    bad.m_coupling = -0.1;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);

    bad = p;
    bad.xi = -2.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);

    bad = p;
    bad.omega0 = 0.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("validate warns when omega0 does not dominate gamma") {
    SystemParams p = testutil::strong_damping();
    p.omega0 = 150.0;  // below 10 * gamma = 200
    const auto warnings = validate(p);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("omega0") != std::string::npos);

    p.omega0 = 200.0;
    CHECK(validate(p).empty());
}

TEST_CASE("theta covers the three damping regimes") {
    SystemParams p = testutil::strong_damping();  // M*Gamma = 400, (Gamma/2)^2 = 100
    ComplexRate th = theta(p);
    CHECK(th.re == doctest::Approx(17.32050807568877).epsilon(1e-14));
    CHECK(th.im == 0.0);

    p = testutil::weak_damping();  // M*Gamma = 1, (Gamma/2)^2 = 0.000625
    th = theta(p);
    CHECK(th.re == doctest::Approx(0.9996875).epsilon(1e-6));
    CHECK(th.im == 0.0);

    SystemParams critical;
    critical.gamma = 20.0;
    critical.m_coupling = 5.0;  // M*Gamma = (Gamma/2)^2 exactly
    th = theta(critical);
    CHECK(th.re == 0.0);
    CHECK(th.im == 0.0);

    SystemParams over;
    over.gamma = 20.0;
    over.m_coupling = 1.0;  // M*Gamma = 20 < 100
    th = theta(over);
    CHECK(th.re == 0.0);
    CHECK(th.im == doctest::Approx(std::sqrt(80.0)).epsilon(1e-14));
}
