#pragma once

namespace excidyn {

// Energies are meV and times are fs everywhere in the public API. Rate-times
// ("Gamma t" style phases) are formed as energy * time / hbar.
inline constexpr double kHbarMeVFs = 658.2119569;

struct UnitSystem {
    double hbar_mev_fs = kHbarMeVFs;
};

// fs -> 1/meV phase time.
inline constexpr double to_phase_time(double t_fs) { return t_fs / kHbarMeVFs; }

// time given in units of 1/gamma -> fs.
inline constexpr double gamma_time_to_fs(double t_over_gamma, double gamma_mev) {
    return t_over_gamma * kHbarMeVFs / gamma_mev;
}

// fs -> units of 1/gamma.
inline constexpr double fs_to_gamma_time(double t_fs, double gamma_mev) {
    return t_fs * gamma_mev / kHbarMeVFs;
}

}  // namespace excidyn
