#pragma once

#include <cstddef>
#include <vector>

#include "excidyn/system_params.hpp"

namespace excidyn {

// Flat discretization of the Lorentzian quasimode line: an odd number of
// modes spread symmetrically over [omega0 - W, omega0 + W], with couplings
// kappa_j^2 = (M Gamma^2 / pi) * dw / ((omega_j - omega0)^2 + Gamma^2) so the
// discrete kernel sum approaches M*Gamma*exp(-Gamma*|tau|). Immutable after
// construction.
class BathGrid {
public:
    BathGrid(const SystemParams& p, std::size_t j_count, double window_mev);

    std::size_t size() const { return detunings_.size(); }
    double omega0_mev() const { return omega0_; }
    double gamma_mev() const { return gamma_; }
    double window_mev() const { return window_; }
    double spacing_mev() const { return spacing_; }

    double detuning(std::size_t j) const { return detunings_[j]; }
    double mode_energy(std::size_t j) const { return omega0_ + detunings_[j]; }
    double coupling(std::size_t j) const { return couplings_[j]; }
    const std::vector<double>& detunings() const { return detunings_; }
    const std::vector<double>& couplings() const { return couplings_; }

    // Center mode, exactly on resonance.
    std::size_t resonant_index() const { return detunings_.size() / 2; }

    double coupling_sum_sq() const;
    // M*Gamma*(2/pi)*atan(W/Gamma): the exact integral the sum discretizes.
    double analytic_coupling_sum_sq() const;
    // 1 - (2/pi)*atan(W/Gamma): Lorentzian weight outside the window.
    double kernel_tail_fraction() const;
    // spacing < Gamma/10 resolves the line; coarser grids are legal but noisy.
    bool resolves_linewidth() const { return spacing_ < gamma_ / 10.0; }

private:
    double omega0_;
    double gamma_;
    double m_coupling_;
    double window_;
    double spacing_;
    std::vector<double> detunings_;
    std::vector<double> couplings_;
};

BathGrid build_bath_grid(const SystemParams& p, std::size_t j_count, double window_mev);

}  // namespace excidyn
