#ifndef SEMICLASSICA_UNITS_HPP
#define SEMICLASSICA_UNITS_HPP

namespace semiclassica::units {

// Hartree atomic units are used for all internal physics; everything here
// only serves the boundaries (CLI input/output, printed tables).

constexpr double c_au             = 137.035999;     ///< speed of light, au
constexpr double hartree_eV       = 27.211386;      ///< 1 hartree in eV
constexpr double time_au_s        = 2.4188843e-17;  ///< 1 au of time in seconds
constexpr double bohr_cm          = 5.2917721e-9;   ///< 1 bohr in cm
constexpr double field_V_per_cm   = 5.14220675e9;   ///< 1 au of field in V/cm
constexpr double b_field_tesla    = 2.3505e5;       ///< 1 au of magnetic field in tesla
constexpr double au2_cm2          = bohr_cm * bohr_cm;  ///< 1 au^2 in cm^2

constexpr double ev_to_au(double ev)        { return ev / hartree_eV; }
constexpr double au_to_ev(double au)        { return au * hartree_eV; }
constexpr double kv_cm_to_au(double kv_cm)  { return kv_cm * 1e3 / field_V_per_cm; }
constexpr double au_to_kv_cm(double au)     { return au * field_V_per_cm / 1e3; }
constexpr double tesla_to_au(double t)      { return t / b_field_tesla; }
constexpr double au_to_tesla(double au)     { return au * b_field_tesla; }
constexpr double au_time_to_s(double au)    { return au * time_au_s; }
constexpr double s_to_au_time(double s)     { return s / time_au_s; }
constexpr double au2_to_cm2(double au2)     { return au2 * au2_cm2; }

} // namespace semiclassica::units

#endif
