#pragma once

// Spectral quantities of the deformed oscillator. Operators are represented only
// through their action on the Fock basis |n>.

#include <cmath>
#include <cstdint>
#include <vector>

#include "wcs/errors.hpp"
#include "wcs/gamma_core.hpp"

namespace wcs {

struct PhysicalScales {
    double hbar = 1.0;
    double mass = 1.0;
    double omega = 1.0;

    PhysicalScales() = default;
    PhysicalScales(double h, double m, double w) : hbar(h), mass(m), omega(w) {
        if (!(h > 0.0 && m > 0.0 && w > 0.0) || !std::isfinite(h) || !std::isfinite(m) ||
            !std::isfinite(w)) {
            throw ParameterError("physical scales hbar, mass, omega must be positive and finite");
        }
    }
};

struct SpectrumRow {
    std::uint64_t n = 0;
    double box_n = 0.0;
    double box_n_plus_1 = 0.0;
    double energy = 0.0;
};

/// sqrt([n]): A|n> = sqrt([n]) |n-1>, and 0 on the vacuum.
inline double ladder_down_coeff(std::uint64_t n, const DeformationParams& p) {
    if (n == 0) return 0.0;
    return std::exp(0.5 * log_box(n, p));
}

/// sqrt([n+1]): A^dag |n> = sqrt([n+1]) |n+1>.
inline double ladder_up_coeff(std::uint64_t n, const DeformationParams& p) {
    return ladder_down_coeff(n + 1, p);
}

/// Eigenvalue of [A, A^dag] on |n>, i.e. [n+1] - [n].
inline double commutator_diagonal(std::uint64_t n, const DeformationParams& p) {
    return box_value(n + 1, p) - box_value(n, p);
}

/// E_n = (hbar omega / 2)([n+1] + [n]).
inline double energy_level(std::uint64_t n, const DeformationParams& p, const PhysicalScales& s = {}) {
    return 0.5 * s.hbar * s.omega * (box_value(n + 1, p) + box_value(n, p));
}

/// Factor [n+1] - [n] + 1 in the deformed Heisenberg equations of motion.
inline double heisenberg_coeff(std::uint64_t n, const DeformationParams& p) {
    return commutator_diagonal(n, p) + 1.0;
}

inline std::vector<SpectrumRow> spectrum_table(std::uint64_t n_max, const DeformationParams& p,
                                               const PhysicalScales& s = {}) {
    std::vector<SpectrumRow> rows;
    rows.reserve(n_max + 1);
    double current = box_value(0, p);
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        const double next = box_value(n + 1, p);
        rows.push_back({n, current, next, 0.5 * s.hbar * s.omega * (next + current)});
        current = next;
    }
    return rows;
}

}  // namespace wcs
