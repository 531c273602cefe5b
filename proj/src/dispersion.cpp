#include "evfront/dispersion.hpp"

#include <cmath>

#include "evfront/errors.hpp"

namespace evfront {

DispersionModel DispersionModel::non_relativistic(double m, double V) {
    DispersionModel d;
    d.kind = DispersionKind::NonRelativistic;
    d.mass = m;
    d.potential = V;
    d.validate();
    return d;
}

DispersionModel DispersionModel::relativistic(double m, double c, double V) {
    DispersionModel d;
    d.kind = DispersionKind::Relativistic;
    d.mass = m;
    d.light_speed = c;
    d.potential = V;
    d.validate();
    return d;
}

void DispersionModel::validate() const {
    if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("mass must be positive and finite");
    if (!std::isfinite(potential)) throw DomainError("potential must be finite");
    if (relativistic_kind() && (!(light_speed > 0.0) || !std::isfinite(light_speed)))
        throw DomainError("light speed must be positive and finite");
}

SourceSpec SourceSpec::sharp(cplx A, double omega0) {
    SourceSpec s;
    s.amplitude = A;
    s.carrier = omega0;
    return s;
}

SourceSpec SourceSpec::band(cplx A, double omega0, double dw) {
    SourceSpec s = sharp(A, omega0);
    s.half_width = dw;
    return s;
}

void SourceSpec::validate(const DispersionModel& model) const {
    if (amplitude == cplx(0.0, 0.0)) throw DomainError("source amplitude must be nonzero");
    if (!std::isfinite(carrier)) throw DomainError("carrier frequency must be finite");
    if (half_width) {
        double dw = *half_width;
        double w0 = kinetic_frequency(model, carrier);
        if (!(dw > 0.0)) throw DomainError("band half-width must be positive");
        if (!(dw < std::abs(w0))) throw DomainError("band half-width must be smaller than |Omega_0|");
    }
}

const char* to_string(DispersionKind k) {
    return k == DispersionKind::Relativistic ? "relativistic" : "nonrelativistic";
}
const char* to_string(Sheet s) { return s == Sheet::Upper ? "upper" : "lower"; }
const char* to_string(WaveKind w) { return w == WaveKind::Propagating ? "propagating" : "evanescent"; }

double kinetic_frequency(const DispersionModel& model, double omega) { return omega - model.potential; }

bool on_branch_cut(const DispersionModel& model, cplx omega) {
    if (omega.imag() != 0.0) return false;
    double r = omega.real();
    if (model.relativistic_kind()) return std::abs(r) > model.rest_frequency();
    return r > 0.0;
}

namespace {

// Upper-sheet value off the cuts.
cplx upper_branch(const DispersionModel& model, cplx w) {
    const cplx I(0.0, 1.0);
    if (model.relativistic_kind()) {
        double mu = model.rest_frequency();
        cplx z = (mu - w) * (mu + w);
        return I * std::sqrt(z) / model.light_speed;
    }
    return I * std::sqrt(2.0 * model.mass) * std::sqrt(-w);
}

// Boundary value on the cut (real Omega beyond the branch point).
double cut_value(const DispersionModel& model, double r) {
    if (model.relativistic_kind()) {
        double mu = model.rest_frequency();
        double a = std::abs(r);
        double k = std::sqrt((a - mu) * (a + mu)) / model.light_speed;
        return r > 0.0 ? k : -k;
    }
    return std::sqrt(2.0 * model.mass * r);
}

}  // namespace

cplx wavenumber(const DispersionModel& model, cplx omega, std::optional<Sheet> sheet) {
    if (on_branch_cut(model, omega)) {
        if (!sheet) throw DomainError("frequency lies on a branch cut and no sheet was given");
        return cplx(cut_value(model, omega.real()), 0.0);
    }
    cplx k = upper_branch(model, omega);
    if (sheet && *sheet == Sheet::Lower) k = -k;
    return k;
}

cplx wavenumber_derivative(const DispersionModel& model, cplx omega, std::optional<Sheet> sheet) {
    cplx k = wavenumber(model, omega, sheet);
    if (k == cplx(0.0, 0.0)) throw ThresholdError("dk/dOmega diverges at the branch point");
    if (model.relativistic_kind()) {
        double c = model.light_speed;
        return omega / (c * c * k);
    }
    return model.mass / k;
}

WaveKind classify(const DispersionModel& model, double omega) {
    if (model.relativistic_kind()) {
        double mu = model.rest_frequency();
        if (std::abs(omega) == mu) throw ThresholdError("|Omega| equals mc^2");
        return std::abs(omega) > mu ? WaveKind::Propagating : WaveKind::Evanescent;
    }
    if (omega == 0.0) throw ThresholdError("Omega equals zero");
    return omega > 0.0 ? WaveKind::Propagating : WaveKind::Evanescent;
}

double front_velocity(const DispersionModel& model, double omega0) {
    if (model.relativistic_kind()) {
        double mu = model.rest_frequency();
        double c = model.light_speed;
        double a = std::abs(omega0);
        if (a == mu) throw ThresholdError("front velocity vanishes at |Omega_0| = mc^2");
        if (a > mu) return c * std::sqrt((a - mu) * (a + mu)) / a;
        return c * std::sqrt((mu - a) * (mu + a)) / mu;
    }
    if (omega0 == 0.0) throw ThresholdError("front velocity vanishes at Omega_0 = 0");
    return std::sqrt(2.0 * std::abs(omega0) / model.mass);
}

double traversal_time(const DispersionModel& model, double omega0, double x) {
    if (x < 0.0) throw DomainError("traversal distance must be non-negative");
    return x / front_velocity(model, omega0);
}

double group_velocity(const DispersionModel& model, double omega0) {
    if (classify(model, omega0) != WaveKind::Propagating)
        throw DomainError("group velocity is defined only in the propagating range");
    cplx dk = wavenumber_derivative(model, cplx(omega0, 0.0), Sheet::Upper);
    return 1.0 / dk.real();
}

}  // namespace evfront
