#pragma once

#include <complex>
#include <optional>
#include <string>

namespace evfront {

using cplx = std::complex<double>;

// All core routines work in units with hbar = 1: energies are frequencies,
// the mass m carries units of time/length^2, and V is a frequency.
enum class DispersionKind { NonRelativistic, Relativistic };

enum class Sheet { Upper, Lower };

enum class WaveKind { Propagating, Evanescent };

struct DispersionModel {
    DispersionKind kind = DispersionKind::NonRelativistic;
    double mass = 1.0;
    double potential = 0.0;
    double light_speed = 1.0;  // ignored for the non-relativistic model

    static DispersionModel non_relativistic(double m, double V = 0.0);
    static DispersionModel relativistic(double m, double c, double V = 0.0);

    bool relativistic_kind() const { return kind == DispersionKind::Relativistic; }
    // mc^2 in frequency units; only meaningful for the relativistic model.
    double rest_frequency() const { return mass * light_speed * light_speed; }
    void validate() const;
};

struct SourceSpec {
    cplx amplitude{1.0, 0.0};
    double carrier = 0.0;                 // omega_0
    std::optional<double> half_width;     // band half-width; empty for sharp onset

    static SourceSpec sharp(cplx A, double omega0);
    static SourceSpec band(cplx A, double omega0, double dw);

    bool band_limited() const { return half_width.has_value(); }
    void validate(const DispersionModel& model) const;
};

const char* to_string(DispersionKind k);
const char* to_string(Sheet s);
const char* to_string(WaveKind w);

double kinetic_frequency(const DispersionModel& model, double omega);

// Outgoing-wave branch k(Omega). Upper sheet: Im k >= 0 off the cuts. On a cut the
// sheet argument selects the boundary value: Upper is the limit from Im Omega > 0,
// Lower the limit from Im Omega < 0 of the lower sheet (both coincide there).
cplx wavenumber(const DispersionModel& model, cplx omega, std::optional<Sheet> sheet = std::nullopt);

// dk/dOmega on the same branch as wavenumber().
cplx wavenumber_derivative(const DispersionModel& model, cplx omega,
                           std::optional<Sheet> sheet = std::nullopt);

bool on_branch_cut(const DispersionModel& model, cplx omega);

WaveKind classify(const DispersionModel& model, double omega);

double front_velocity(const DispersionModel& model, double omega0);
double traversal_time(const DispersionModel& model, double omega0, double x);
double group_velocity(const DispersionModel& model, double omega0);

}  // namespace evfront
