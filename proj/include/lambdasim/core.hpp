#ifndef LAMBDASIM_CORE_HPP
#define LAMBDASIM_CORE_HPP

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "lambdasim/constants.hpp"
#include "lambdasim/errors.hpp"

namespace lambdasim {

/// One laser field E(t) = E0 exp(-t^2/tau^2) cos(w0 t + chi t^3), described by
/// its peak Rabi frequency instead of the raw field amplitude.
///
/// Units: peak_rabi and carrier in rad/fs, width in fs, chirp in fs^-3.
struct ChirpedPulse {
    double peak_rabi = 0.0;
    double width = 4.49;
    double carrier = 0.0;
    double chirp = 0.0;

    // Full oscillating Rabi frequency Omega(t). The cosine is kept as-is:
    // no complex envelope, no rotating-wave reduction.
    double rabi(double t) const {
        const double u = t / width;
        const double envelope = std::exp(-u * u);
        // Once the envelope underflows, skip the cosine: its t^3 argument
        // can overflow long before t itself does.
        if (envelope == 0.0) return 0.0;
        return peak_rabi * envelope * std::cos((carrier + chirp * t * t) * t);
    }

    // Derivative of the phase, carrier + 3 chi t^2.
    double instantaneous_frequency(double t) const {
        return carrier + 3.0 * chirp * t * t;
    }
};

// Throws validation_error naming the violated invariant; `label` prefixes the
// message (e.g. "pulse1").
void validate(const ChirpedPulse& pulse, const std::string& label);

// Conversion between a physical field amplitude (V/m) and the Rabi frequency
// (rad/fs) for a transition dipole given in units of e*a0. Inverse pair.
double rabi_from_field(double field_V_per_m, double dipole_e_a0);
double field_from_rabi(double rabi_rad_per_fs, double dipole_e_a0);

/// Level structure of the three-level system: two lower states |1>, |2> both
/// coupled to the excited state |3>; the |2>-|1> transition is forbidden.
/// Only frequency differences enter the dynamics, so only those are stored.
struct LambdaSystem {
    double omega31 = 3.18;   // rad/fs
    double omega21 = 1e-5;   // rad/fs
    double dipole31 = 2.49;  // e*a0
    double dipole32 = 2.49;  // e*a0

    double omega32() const { return omega31 - omega21; }
};

void validate(const LambdaSystem& system);

/// 3x3 complex density matrix; element (i, j) is rho_{i+1, j+1} in the usual
/// 1-based level labeling.
using DensityMatrix = Eigen::Matrix3cd;

DensityMatrix ground_state();                            // |1><1|
DensityMatrix pure_state(const Eigen::Vector3cd& psi);   // normalized |psi><psi|

inline DensityMatrix hermitized(const DensityMatrix& rho) {
    return 0.5 * (rho + rho.adjoint());
}

inline double trace_error(const DensityMatrix& rho) {
    return std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
}

inline double hermiticity_error(const DensityMatrix& rho) {
    return (rho - rho.adjoint().eval()).cwiseAbs().maxCoeff();
}

// Re Tr(rho^2); equals 1 for pure states and is conserved by unitary evolution.
inline double purity(const DensityMatrix& rho) {
    return (rho * rho).trace().real();
}

double min_eigenvalue(const DensityMatrix& rho);

// Checks Hermiticity (1e-12), unit trace (1e-12), real diagonal in [0, 1] and
// positive semidefiniteness (eigenvalues >= -1e-10). Throws validation_error.
void validate_density_matrix(const DensityMatrix& rho, const std::string& label = "state");

/// Mixing angle for the bright/dark decomposition of the two lower states:
/// |B> = sin(theta)|1> + cos(theta)|2>, |D> = cos(theta)|1> - sin(theta)|2>.
struct MixingBasis {
    double theta = 0.25 * constants::pi;

    // Alternative convention theta = atan(peak_rabi1 / peak_rabi2).
    static MixingBasis from_peak_rabi_ratio(const ChirpedPulse& pulse1,
                                            const ChirpedPulse& pulse2);
};

void validate(const MixingBasis& basis);

struct DarkBrightPopulations {
    double bright = 0.0;  // <B|rho|B>
    double dark = 0.0;    // <D|rho|D>
};

DarkBrightPopulations dark_bright_populations(const DensityMatrix& rho,
                                              const MixingBasis& basis);

} // namespace lambdasim

#endif
