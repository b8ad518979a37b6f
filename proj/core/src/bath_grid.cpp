#include "excidyn/bath_grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace excidyn {

BathGrid::BathGrid(const SystemParams& p, std::size_t j_count, double window_mev)
    : omega0_(p.omega0), gamma_(p.gamma), m_coupling_(p.m_coupling), window_(window_mev) {
    validate(p);
    if (j_count % 2 == 0 || j_count < 101) {
        throw std::invalid_argument(
            "BathGrid: j_count must be odd and >= 101 (got " + std::to_string(j_count) +
            "); 101, 1001 and 4001 are typical sizes");
    }
    if (!(window_mev >= 20.0 * p.gamma)) {
        throw std::invalid_argument(
            "BathGrid: window must cover at least 20*gamma = " + std::to_string(20.0 * p.gamma) +
            " meV to capture the Lorentzian tails (got " + std::to_string(window_mev) + ")");
    }

    spacing_ = 2.0 * window_mev / static_cast<double>(j_count - 1);
    detunings_.resize(j_count);
    couplings_.resize(j_count);
    const double half = static_cast<double>(j_count - 1) / 2.0;
    const double weight = m_coupling_ * gamma_ * gamma_ / std::numbers::pi * spacing_;
    for (std::size_t j = 0; j < j_count; ++j) {
        const double dj = (static_cast<double>(j) - half) * spacing_;
        detunings_[j] = dj;
        couplings_[j] = std::sqrt(weight / (dj * dj + gamma_ * gamma_));
    }
}

double BathGrid::coupling_sum_sq() const {
    double sum = 0.0;
    for (double k : couplings_) sum += k * k;
    return sum;
}

double BathGrid::analytic_coupling_sum_sq() const {
    return m_coupling_ * gamma_ * (2.0 / std::numbers::pi) * std::atan(window_ / gamma_);
}

double BathGrid::kernel_tail_fraction() const {
    return 1.0 - (2.0 / std::numbers::pi) * std::atan(window_ / gamma_);
}

BathGrid build_bath_grid(const SystemParams& p, std::size_t j_count, double window_mev) {
    return BathGrid(p, j_count, window_mev);
}

}  // namespace excidyn
