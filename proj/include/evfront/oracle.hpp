#pragma once

#include <optional>
#include <string>

#include "evfront/dispersion.hpp"

namespace evfront {

struct QuadratureSettings {
    double rel_tol = 1e-9;
    double abs_tol = 0.0;
    int max_subdivisions = 4096;
    // half-width of the symmetric principal-value window, as a fraction of the band half-width
    double pv_window = 1.0;

    void validate() const;
};

enum class OracleMethod { ClosedFormNonRel, BandQuadrature, ContourQuadrature, ShiftedLineQuadrature };

const char* to_string(OracleMethod m);

struct OracleResult {
    cplx psi{0.0, 0.0};
    double est_error = 0.0;
    OracleMethod method = OracleMethod::ClosedFormNonRel;
    std::string path_metadata;
    // contour method only: line integral(s) and the residue term
    cplx forerunner{0.0, 0.0};
    cplx saddle_plus{0.0, 0.0};
    cplx saddle_minus{0.0, 0.0};
    cplx pole{0.0, 0.0};
    bool pole_enclosed = false;
    bool causal_zero = false;  // exact zero outside the light cone / before switch-on
};

// Closed form of the sharp-onset Schroedinger problem through the Faddeeva function.
OracleResult exact_nonrel_sharp(const DispersionModel& model, const SourceSpec& source, double x, double t);

// Band-limited source: principal value over the band plus half residue.
OracleResult band_quadrature(const DispersionModel& model, const SourceSpec& source, double x, double t,
                             const QuadratureSettings& settings = {});

// Sharp source: integral along the steepest-descent line(s) through the saddle(s),
// plus the pole residue when the front has passed.
OracleResult contour_quadrature(const DispersionModel& model, const SourceSpec& source, double x, double t,
                                const QuadratureSettings& settings = {});

// Relativistic sharp source: integral along Im Omega = const above all singularities
// with the large-|Omega| behaviour subtracted and added back analytically.
OracleResult shifted_line_quadrature(const DispersionModel& model, const SourceSpec& source, double x,
                                     double t, const QuadratureSettings& settings = {});

// Best available oracle for the configuration (closed form > band > contour).
OracleResult reference_field(const DispersionModel& model, const SourceSpec& source, double x, double t,
                             const QuadratureSettings& settings = {});
// Independent second oracle where one exists (contour for non-rel sharp, shifted line for rel sharp).
std::optional<OracleResult> cross_check_field(const DispersionModel& model, const SourceSpec& source,
                                              double x, double t, const QuadratureSettings& settings = {});

// psi(0, t) for the band-limited source: A exp(-i omega_0 t) [1/2 + Si(dw t)/pi].
cplx band_boundary_field(const SourceSpec& source, double t);

}  // namespace evfront
