#ifndef LAMBDASIM_CONSTANTS_HPP
#define LAMBDASIM_CONSTANTS_HPP

namespace lambdasim::constants {

inline constexpr double pi = 3.14159265358979323846;

// CODATA 2018. Only rabi_from_field/field_from_rabi touch these; the dynamics
// itself is parameterized entirely by Rabi and transition frequencies.
inline constexpr double hbar_J_s = 1.054571817e-34;
inline constexpr double elementary_charge_C = 1.602176634e-19;
inline constexpr double bohr_radius_m = 5.29177210903e-11;

} // namespace lambdasim::constants

#endif
