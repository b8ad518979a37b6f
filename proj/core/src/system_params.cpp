#include "excidyn/system_params.hpp"

#include <cmath>
#include <stdexcept>

namespace excidyn {

namespace {
void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}
}  // namespace

std::vector<std::string> validate(const SystemParams& p) {
    require(std::isfinite(p.omega0) && std::isfinite(p.gamma) && std::isfinite(p.m_coupling) &&
                std::isfinite(p.xi) && std::isfinite(p.delta),
            "SystemParams: all fields must be finite");
    require(p.gamma > 0.0, "SystemParams: gamma must be > 0 (got " + std::to_string(p.gamma) + ")");
    require(p.m_coupling >= 0.0, "SystemParams: m_coupling must be >= 0");
    require(p.xi >= 0.0, "SystemParams: xi must be >= 0");
    require(p.omega0 > 0.0, "SystemParams: omega0 must be > 0");

    std::vector<std::string> warnings;
    if (p.omega0 < 10.0 * p.gamma) {
        warnings.push_back("omega0 = " + std::to_string(p.omega0) + " meV is below 10*gamma = " +
                           std::to_string(10.0 * p.gamma) +
                           " meV; the exponential kernel assumes omega0 dominates every rate");
    }
    return warnings;
}

double theta_squared(const SystemParams& p) {
    const double half = 0.5 * p.gamma;
    return p.m_coupling * p.gamma - half * half;
}

ComplexRate theta(const SystemParams& p) {
    const double th2 = theta_squared(p);
    if (th2 >= 0.0) return {std::sqrt(th2), 0.0};
    return {0.0, std::sqrt(-th2)};
}

}  // namespace excidyn
