#pragma once

#include <optional>

#include "evfront/dispersion.hpp"
#include "evfront/phase.hpp"

namespace evfront {

struct WaveDecomposition {
    cplx psi_p{0.0, 0.0};
    cplx psi_s_plus{0.0, 0.0};
    cplx psi_s_minus{0.0, 0.0};
    cplx psi_total{0.0, 0.0};
    double gauss_validity = 0.0;        // plus branch
    double gauss_validity_minus = 0.0;  // minus branch (relativistic), +inf otherwise
    double window_parameter = 0.0;      // front_window_parameter(); < 1 means near_front
    bool near_front = false;
    bool front_active = false;
    bool inside_light_cone = true;
};

struct GaussTerms {
    cplx plus{0.0, 0.0};
    cplx minus{0.0, 0.0};
    bool inside_light_cone = true;
};

// Monochromatic front A exp(-i(V + Omega_0) t) exp(i k(Omega_0) x) Theta(v_m t - x).
cplx pole_contribution(const DispersionModel& model, const SourceSpec& source, double x, double t);
bool front_active(const DispersionModel& model, double omega0, double x, double t);

// Saddle contributions in Gauss approximation (one per branch; minus is zero non-relativistically).
GaussTerms saddle_gauss(const DispersionModel& model, const SourceSpec& source, double x, double t);
double gauss_validity(const DispersionModel& model, double omega0, double x, double t,
                      SaddleBranch branch = SaddleBranch::Plus);

// Saddle branch whose stph line meets the pole Omega_0.
SaddleBranch front_branch(const DispersionModel& model, double omega0);

// Distance from the front in units of the local phase scale. Propagating: the Gauss
// validity of the front branch. Evanescent: |phi'(Omega_c) (Omega_0 - Omega_c)| at the
// real-axis crossing Omega_c of the stph line that the pole passes.
double front_window_parameter(const DispersionModel& model, double omega0, double x, double t);

// Limit of the front-branch saddle term near x = v_m t: the full saddle term when
// propagating, the jump part Delta psi_s when evanescent. Throws WindowError when
// front_window_parameter >= window.
cplx near_front_limit(const DispersionModel& model, const SourceSpec& source, double x, double t,
                      double window = 1.0);

// Residual of the real-phase matching condition at (x, t) and its x-derivative.
double phase_matching_residual(const DispersionModel& model, double omega0, double x, double t);
double phase_matching_gradient(const DispersionModel& model, double omega0, double x, double t);
// Front velocity recovered from the matching condition by root finding.
double front_velocity_from_phase_matching(const DispersionModel& model, double omega0);

WaveDecomposition decompose(const DispersionModel& model, const SourceSpec& source, double x, double t);

// --- band-limited source (non-relativistic, evanescent carrier) ---

struct BandRegimeLimits {
    double max_band_ratio = 0.5;   // Delta omega / |Omega_0| above this is rejected
    double min_onset = 0.1;        // Delta omega * tau below this is rejected
    double selection_band = 3.0;   // both stph formulas reported within this factor of the switch
};

enum class StphFormula { Linearized, ArcTan };
const char* to_string(StphFormula f);

struct BandSegments {
    cplx psi_minus_seg{0.0, 0.0};
    cplx psi_stph_seg{0.0, 0.0};  // the selected formula
    cplx psi_plus_seg{0.0, 0.0};
    StphFormula selected = StphFormula::Linearized;
    std::optional<cplx> psi_2;    // sinh form, reported when defined and in range
    std::optional<cplx> psi_s2;   // arctan form, reported when in range
    double u_plus = 0.0;
    double u_minus = 0.0;
    double w0 = 0.0;
    double alpha = 0.0;
    double de_broglie = 0.0;      // hbar/(m v_m)

    cplx sum() const { return psi_minus_seg + psi_stph_seg + psi_plus_seg; }
};

BandSegments band_segments(const DispersionModel& model, const SourceSpec& source, double x, double t,
                           const BandRegimeLimits& limits = {});

enum class TailRegime { ShortTime, LongTime };
const char* to_string(TailRegime r);

struct TailEstimate {
    TailRegime regime = TailRegime::ShortTime;
    double exponent = 0.0;             // -(1/2) Omega_s t (1 - Omega_+/Omega_s)^2
    double asymptotic_exponent = 0.0;  // -(1/2) Omega_s t, or -Omega_+^2 t^3/(m x^2)
};

// Throws RegimeError for tau/factor < t < tau*factor.
TailEstimate band_tail_estimates(const DispersionModel& model, const SourceSpec& source, double x, double t,
                                 double regime_factor = 3.0);

}  // namespace evfront
