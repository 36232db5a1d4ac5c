// A short walk through the library: factorials, the spectrum, photon statistics
// and the resolution of unity for one deformation, printed as plain text.

#include <cstdio>

#include "wcs/wcs.hpp"

int main() {
    const wcs::DeformationParams p(1.0, 1.0, 1.0);
    std::printf("deformation %s\n\n", p.describe().c_str());

    std::printf("%3s %14s %14s\n", "n", "[n]!", "E_n");
    for (std::uint64_t n = 0; n <= 5; ++n) {
        std::printf("%3llu %14.6g %14.6g\n", static_cast<unsigned long long>(n), wcs::gen_factorial(n, p).to_linear(),
                    wcs::energy_level(n, p));
    }

    const auto z = wcs::CoherentLabel::from_intensity(2.0);
    const auto dist = wcs::photon_distribution(z, p, 1e-12);
    std::printf("\nphoton distribution at |z|^2 = 2 (cutoff %zu, tail < %.1e)\n", dist.cutoff, dist.tail_mass);
    for (std::size_t n = 0; n < dist.probabilities.size() && n < 8; ++n) {
        std::printf("  p(%zu) = %.6f\n", n, dist.probabilities[n]);
    }
    std::printf("Q_z = %.6f, Q_M = %.6f\n", wcs::mandel_qz(z, p), wcs::mandel_qm(z, p));

    const auto verdict = wcs::carleman_classify(p);
    std::printf("\nCarleman exponent %.2f: %s\n", verdict.exponent, verdict.determinate ? "determinate" : "indeterminate");

    const wcs::WeightSpec weight{wcs::WeightFamily::wright, 1.0, 1.0};
    const auto report = wcs::verify_moments(weight, 6);
    std::printf("Wright weight moments vs [n]!:\n");
    for (std::size_t i = 0; i < report.orders.size(); ++i) {
        std::printf("  n=%u  %.10g  target %.10g  rel.err %.1e\n", report.orders[i], report.quadrature_moments[i],
                    report.target_factorials[i], report.rel_errors[i]);
    }
    return 0;
}
