#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "evfront/decomposition.hpp"
#include "evfront/errors.hpp"
#include "evfront/oracle.hpp"

using namespace evfront;

namespace {
const DispersionModel NR = DispersionModel::non_relativistic(1.0);
const DispersionModel RL = DispersionModel::relativistic(1.0, 1.0);
constexpr double pi = std::numbers::pi;
}  // namespace

TEST_SUITE("decomposition") {
    TEST_CASE("pole contribution examples") {
        auto ev = SourceSpec::sharp(1.0, -2.0);
        CHECK(pole_contribution(NR, ev, 1.0, 0.4) == cplx(0.0, 0.0));
        cplx p = pole_contribution(NR, ev, 1.0, 1.0);
        CHECK(std::abs(p) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
        CHECK(std::abs(p - std::exp(-2.0) * std::polar(1.0, 2.0)) < 1e-15);
        CHECK(std::abs(pole_contribution(NR, SourceSpec::sharp(1.0, 2.0), 1.0, 1.0)) ==
              doctest::Approx(1.0).epsilon(1e-14));
        // the front itself belongs to the inactive side
        CHECK_FALSE(front_active(NR, -2.0, 1.0, 0.5));
        CHECK(pole_contribution(NR, ev, 1.0, 0.5) == cplx(0.0, 0.0));
        CHECK(front_active(NR, -2.0, 1.0, std::nextafter(0.5, 1.0)));
    }

    TEST_CASE("saddle Gauss examples") {
        auto src = SourceSpec::sharp(1.0, -2.0);
        GaussTerms out = saddle_gauss(RL, SourceSpec::sharp(1.0, 0.6), 3.0, 2.0);
        CHECK(out.plus == cplx(0.0, 0.0));
        CHECK(out.minus == cplx(0.0, 0.0));
        CHECK_FALSE(out.inside_light_cone);
        GaussTerms g = saddle_gauss(NR, src, 2.0, 1.0);
        CHECK(std::abs(g.plus) == doctest::Approx(std::sqrt(2 * pi) / (4 * pi)).epsilon(1e-13));
        CHECK(g.minus == cplx(0.0, 0.0));

        // validity 6.25 point, compared with the closed-form field minus the pole term
        CHECK(gauss_validity(NR, -2.0, 1.0, 1.0) == doctest::Approx(6.25));
        cplx forerunner = exact_nonrel_sharp(NR, src, 1.0, 1.0).psi - pole_contribution(NR, src, 1.0, 1.0);
        cplx gs = saddle_gauss(NR, src, 1.0, 1.0).plus;
        double rel = std::abs(gs - forerunner) / std::abs(forerunner);
        MESSAGE("Gauss relative error at validity 6.25: " << rel);
        // first correction to the Gauss term falls off like 1/validity
        CHECK(rel < 3.0 / 6.25);
    }

    TEST_CASE("Gauss validity examples and identity") {
        CHECK(gauss_validity(NR, -2.0, 2.0, 1.0) == doctest::Approx(4.0));
        CHECK(gauss_validity(NR, 2.0, 2.0, 1.0) == doctest::Approx(0.0));
        std::mt19937_64 rng(21);
        std::uniform_real_distribution<double> u(0.2, 4.0);
        for (int i = 0; i < 200; ++i) {
            double w0 = (i % 2 ? -1.0 : 1.0) * u(rng), x = u(rng), t = u(rng);
            double vm = front_velocity(NR, w0), dx = 1.0 / (NR.mass * vm);
            double sgn = w0 > 0.0 ? 1.0 : -1.0;
            double r = (sgn * vm * vm * t * t - x * x) / (x * vm * t);
            CHECK(gauss_validity(NR, w0, x, t) == doctest::Approx(r * r * vm * t / (4.0 * dx)).epsilon(1e-10));
        }
    }

    TEST_CASE("near-front jumps") {
        auto prop = SourceSpec::sharp(1.0, 2.0);
        double tau = traversal_time(NR, 2.0, 1.0);
        double lo = tau * (1 - 1e-9), hi = tau * (1 + 1e-9);
        cplx jump_s = near_front_limit(NR, prop, 1.0, hi) - near_front_limit(NR, prop, 1.0, lo);
        CHECK(std::abs(jump_s) == doctest::Approx(1.0).epsilon(1e-7));
        cplx jump_p = pole_contribution(NR, prop, 1.0, hi) - pole_contribution(NR, prop, 1.0, lo);
        CHECK(std::abs(jump_p + jump_s) < 1e-7);

        auto ev = SourceSpec::sharp(1.0, -2.0);
        tau = traversal_time(NR, -2.0, 1.0);
        CHECK(tau == doctest::Approx(0.5));
        lo = std::nextafter(tau, 0.0);
        hi = std::nextafter(tau, 1.0);
        jump_s = near_front_limit(NR, ev, 1.0, hi) - near_front_limit(NR, ev, 1.0, lo);
        CHECK(std::abs(jump_s) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
        jump_p = pole_contribution(NR, ev, 1.0, hi) - pole_contribution(NR, ev, 1.0, lo);
        CHECK(std::abs(jump_p + jump_s) <= 1e-10 * std::exp(-2.0));

        CHECK_THROWS_AS(near_front_limit(NR, ev, 1.0, 5.0), WindowError);
    }

    TEST_CASE("relativistic near-front compensation") {
        for (double w0 : {0.6, 1.25, -0.6, -1.25}) {
            auto src = SourceSpec::sharp(1.0, w0);
            double x = 2.0, tau = traversal_time(RL, w0, x);
            double lo = std::nextafter(tau, 0.0), hi = std::nextafter(tau, 10.0);
            cplx js = near_front_limit(RL, src, x, hi) - near_front_limit(RL, src, x, lo);
            cplx jp = pole_contribution(RL, src, x, hi) - pole_contribution(RL, src, x, lo);
            CAPTURE(w0);
            CHECK(std::abs(jp) > 0.0);
            CHECK(std::abs(jp + js) <= 1e-10 * std::abs(jp));
        }
    }

    TEST_CASE("phase matching") {
        CHECK(std::abs(phase_matching_residual(NR, -2.0, 2.0, 1.0)) < 1e-14);
        CHECK(std::abs(phase_matching_residual(RL, 0.6, 0.8, 1.0)) < 1e-14);
        CHECK(std::abs(phase_matching_residual(NR, -2.0, 1.0, 1.0)) > 0.1);
        for (double w0 : {-3.0, -0.7, 0.4, 2.5})
            CHECK(front_velocity_from_phase_matching(NR, w0) == doctest::Approx(front_velocity(NR, w0)).epsilon(1e-10));
        for (double w0 : {0.1, 0.6, 0.99, 1.01, 1.25, 4.0, -0.6, -1.25})
            CHECK(front_velocity_from_phase_matching(RL, w0) == doctest::Approx(front_velocity(RL, w0)).epsilon(1e-10));
    }

    TEST_CASE("decompose invariants") {
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> u(0.2, 4.0);
        for (int i = 0; i < 100; ++i) {
            double w0 = (i % 2 ? -1.0 : 1.0) * u(rng), x = u(rng), t = u(rng);
            for (const auto& model : {NR, RL}) {
                if (model.relativistic_kind() && std::abs(std::abs(w0) - 1.0) < 1e-3) continue;
                auto src = SourceSpec::sharp(cplx(0.5, 0.5), w0);
                WaveDecomposition d;
                try {
                    d = decompose(model, src, x, t);
                } catch (const DomainError&) {
                    continue;  // pole exactly on a saddle
                }
                CHECK(std::abs(d.psi_total - (d.psi_p + d.psi_s_plus + d.psi_s_minus)) <= 1e-15 * std::abs(d.psi_total));
                CHECK(d.front_active == (front_velocity(model, w0) * t > x));
            }
        }
    }

    TEST_CASE("antiparticle branch smallness") {
        auto ratio = [](double w0) {
            double x = 2.0;
            // pick t so that the plus saddle sits at 1.05 mc^2
            double ws = 1.05, theta = x / std::sqrt(ws * ws - 1.0);
            double t = std::sqrt(theta * theta + x * x);
            GaussTerms g = saddle_gauss(RL, SourceSpec::sharp(1.0, w0), x, t);
            return std::abs(g.minus) / std::abs(g.plus);
        };
        CHECK(ratio(0.95) < 0.1);
        CHECK(ratio(0.05) > 0.5);
    }

    TEST_CASE("band segments") {
        auto src = SourceSpec::band(1.0, -50.0, 2.0);
        double x = 2.0, tau = traversal_time(NR, -50.0, x);
        BandSegments b = band_segments(NR, src, x, tau);
        double ws = saddle(NR, x, tau, SaddleBranch::Plus).frequency;
        CHECK(b.u_plus == doctest::Approx(2.0 / ws).epsilon(1e-12));
        CHECK(b.u_minus == doctest::Approx(-2.0 / ws).epsilon(1e-12));
        CHECK(std::abs(b.w0) < 1e-12);
        CHECK(b.alpha == doctest::Approx(ws * tau));
        CHECK(b.de_broglie == doctest::Approx(1.0 / front_velocity(NR, -50.0)));
        // every segment scales with exp(-m x^2 / t): doubling x^2/t at fixed u leaves the ratio bounded
        double supp = std::exp(-x * x / tau);
        CHECK(std::abs(b.psi_minus_seg) < 10.0 * supp);
        CHECK(std::abs(b.psi_plus_seg) < 10.0 * supp);
        CHECK(std::abs(b.psi_stph_seg) < 10.0 * supp);
        CHECK_THROWS_AS(band_segments(RL, SourceSpec::band(1.0, 0.5, 0.1), 1.0, 2.0), RegimeError);
        CHECK_THROWS_AS(band_segments(NR, SourceSpec::band(1.0, -1.0, 0.9), 1.0, 1.0), RegimeError);
        CHECK_THROWS_AS(band_segments(NR, SourceSpec::band(1.0, 2.0, 0.5), 1.0, 1.0), RegimeError);
    }

    TEST_CASE("band tail estimates") {
        auto src = SourceSpec::band(1.0, -50.0, 2.0);
        double x = 2.0, tau = traversal_time(NR, -50.0, x);
        TailEstimate early = band_tail_estimates(NR, src, x, tau / 20.0);
        CHECK(early.regime == TailRegime::ShortTime);
        double ws = saddle(NR, x, tau / 20.0, SaddleBranch::Plus).frequency;
        CHECK(early.asymptotic_exponent == doctest::Approx(-0.5 * ws * tau / 20.0));
        CHECK(early.exponent == doctest::Approx(early.asymptotic_exponent).epsilon(0.05));
        TailEstimate l1 = band_tail_estimates(NR, src, x, 10.0 * tau);
        TailEstimate l2 = band_tail_estimates(NR, src, x, 20.0 * tau);
        CHECK(l1.regime == TailRegime::LongTime);
        CHECK(l2.asymptotic_exponent / l1.asymptotic_exponent == doctest::Approx(8.0));
        CHECK_THROWS_AS(band_tail_estimates(NR, src, x, tau), RegimeError);
    }
}
