#include "lambdasim/core.hpp"

#include <sstream>

namespace lambdasim {

namespace {

[[noreturn]] void fail(const std::string& label, const std::string& invariant,
                       double got) {
    std::ostringstream msg;
    msg << label << ": " << invariant << " violated (got " << got << ")";
    throw validation_error(msg.str());
}

// rad/fs per (V/m) for a 1 e*a0 dipole: e*a0/hbar * 1e-15 s/fs.
constexpr double rabi_per_field_unit_dipole =
    constants::elementary_charge_C * constants::bohr_radius_m /
    constants::hbar_J_s * 1e-15;

} // namespace

void validate(const ChirpedPulse& pulse, const std::string& label) {
    for (double v : {pulse.peak_rabi, pulse.width, pulse.carrier, pulse.chirp})
        if (!std::isfinite(v)) fail(label, "finite parameters", v);
    if (!(pulse.width > 0.0)) fail(label, "width > 0", pulse.width);
    if (!(pulse.peak_rabi >= 0.0)) fail(label, "peak_rabi >= 0", pulse.peak_rabi);
    if (!(pulse.carrier >= 0.0)) fail(label, "carrier >= 0", pulse.carrier);
}

double rabi_from_field(double field_V_per_m, double dipole_e_a0) {
    if (!(dipole_e_a0 > 0.0)) fail("dipole", "dipole > 0", dipole_e_a0);
    return field_V_per_m * dipole_e_a0 * rabi_per_field_unit_dipole;
}

double field_from_rabi(double rabi_rad_per_fs, double dipole_e_a0) {
    if (!(dipole_e_a0 > 0.0)) fail("dipole", "dipole > 0", dipole_e_a0);
    return rabi_rad_per_fs / (dipole_e_a0 * rabi_per_field_unit_dipole);
}

void validate(const LambdaSystem& system) {
    for (double v : {system.omega31, system.omega21, system.dipole31, system.dipole32})
        if (!std::isfinite(v)) fail("system", "finite parameters", v);
    if (!(system.omega21 >= 0.0)) fail("system", "omega21 >= 0", system.omega21);
    if (!(system.omega31 > system.omega21))
        fail("system", "omega31 > omega21", system.omega31);
    if (!(system.dipole31 > 0.0)) fail("system", "dipole31 > 0", system.dipole31);
    if (!(system.dipole32 > 0.0)) fail("system", "dipole32 > 0", system.dipole32);
}

DensityMatrix ground_state() {
    DensityMatrix rho = DensityMatrix::Zero();
    rho(0, 0) = 1.0;
    return rho;
}

DensityMatrix pure_state(const Eigen::Vector3cd& psi) {
    const Eigen::Vector3cd n = psi / psi.norm();
    return n * n.adjoint();
}

double min_eigenvalue(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<DensityMatrix> solver(hermitized(rho));
    return solver.eigenvalues().minCoeff();
}

void validate_density_matrix(const DensityMatrix& rho, const std::string& label) {
    if (hermiticity_error(rho) > 1e-12)
        fail(label, "rho_ij = conj(rho_ji) within 1e-12", hermiticity_error(rho));
    if (trace_error(rho) > 1e-12)
        fail(label, "|tr(rho) - 1| <= 1e-12", trace_error(rho));
    for (int k = 0; k < 3; ++k) {
        const double p = rho(k, k).real();
        if (!(p >= 0.0 && p <= 1.0))
            fail(label, "diagonal elements in [0, 1]", p);
    }
    const double lambda_min = min_eigenvalue(rho);
    if (lambda_min < -1e-10)
        fail(label, "positive semidefinite (eigenvalues >= -1e-10)", lambda_min);
}

MixingBasis MixingBasis::from_peak_rabi_ratio(const ChirpedPulse& pulse1,
                                              const ChirpedPulse& pulse2) {
    return MixingBasis{std::atan2(pulse1.peak_rabi, pulse2.peak_rabi)};
}

void validate(const MixingBasis& basis) {
    if (!std::isfinite(basis.theta) ||
        !(basis.theta >= 0.0 && basis.theta <= 0.5 * constants::pi))
        fail("basis", "theta in [0, pi/2]", basis.theta);
}

DarkBrightPopulations dark_bright_populations(const DensityMatrix& rho,
                                              const MixingBasis& basis) {
    const double s = std::sin(basis.theta);
    const double c = std::cos(basis.theta);
    const double r11 = rho(0, 0).real();
    const double r22 = rho(1, 1).real();
    const double re12 = rho(0, 1).real();
    DarkBrightPopulations out;
    out.bright = s * s * r11 + c * c * r22 + 2.0 * s * c * re12;
    out.dark = c * c * r11 + s * s * r22 - 2.0 * s * c * re12;
    return out;
}

} // namespace lambdasim
