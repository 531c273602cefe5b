#include <doctest.h>

#include <cmath>
#include <random>

#include "evfront/dispersion.hpp"
#include "evfront/errors.hpp"

using namespace evfront;

namespace {
const DispersionModel NR = DispersionModel::non_relativistic(1.0);
const DispersionModel RL = DispersionModel::relativistic(1.0, 1.0);
}  // namespace

TEST_SUITE("dispersion") {
    TEST_CASE("kinetic frequency") {
        CHECK(kinetic_frequency(NR, 3.0) == 3.0);
        CHECK(kinetic_frequency(DispersionModel::non_relativistic(1.0, 5.0), 3.0) == -2.0);
        CHECK(kinetic_frequency(DispersionModel::non_relativistic(1.0, 3.0), 3.0) == 0.0);
    }

    TEST_CASE("wavenumber examples") {
        cplx k = wavenumber(NR, 2.0, Sheet::Upper);
        CHECK(k.real() == doctest::Approx(2.0));
        CHECK(std::abs(k.imag()) < 1e-15);
        k = wavenumber(NR, -2.0);
        CHECK(std::abs(k - cplx(0.0, 2.0)) < 1e-15);
        k = wavenumber(RL, 0.5);
        CHECK(std::abs(k - cplx(0.0, std::sqrt(0.75))) < 1e-15);
        CHECK_THROWS_AS(wavenumber(NR, 2.0), DomainError);
        CHECK_THROWS_AS(wavenumber(RL, -3.0), DomainError);
    }

    TEST_CASE("classification and thresholds") {
        CHECK(classify(NR, -2.0) == WaveKind::Evanescent);
        CHECK(classify(RL, 1.25) == WaveKind::Propagating);
        CHECK(classify(RL, 0.6) == WaveKind::Evanescent);
        CHECK_THROWS_AS(classify(NR, 0.0), ThresholdError);
        CHECK_THROWS_AS(classify(RL, 1.0), ThresholdError);
        CHECK_THROWS_AS(classify(RL, -1.0), ThresholdError);
    }

    TEST_CASE("front velocity and traversal time examples") {
        CHECK(front_velocity(NR, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(front_velocity(NR, -2.0) == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(front_velocity(RL, 0.6) == doctest::Approx(0.8).epsilon(1e-15));
        CHECK(front_velocity(RL, 1.25) == doctest::Approx(0.6).epsilon(1e-15));
        CHECK(traversal_time(NR, -2.0, 4.0) == doctest::Approx(2.0));
        CHECK(traversal_time(NR, 2.0, 0.0) == 0.0);
        CHECK(traversal_time(RL, 0.6, 0.8) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK_THROWS_AS(front_velocity(RL, 1.0), ThresholdError);
        CHECK_THROWS_AS(front_velocity(NR, 0.0), ThresholdError);
    }

    TEST_CASE("group velocity") {
        CHECK(group_velocity(NR, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(group_velocity(RL, 1.25) == doctest::Approx(0.6).epsilon(1e-14));
        CHECK(group_velocity(NR, 1e-10) < 1e-4);
        CHECK_THROWS_AS(group_velocity(NR, -1.0), DomainError);
    }

    TEST_CASE("branch rule on the real axis") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(-20.0, 20.0);
        for (const auto& model : {NR, RL, DispersionModel::relativistic(2.0, 0.5, 1.0)}) {
            for (int i = 0; i < 2000; ++i) {
                double w = u(rng);
                WaveKind kind = classify(model, kinetic_frequency(model, w));
                cplx k = wavenumber(model, kinetic_frequency(model, w), Sheet::Upper);
                if (kind == WaveKind::Evanescent) {
                    CHECK(k.imag() > 0.0);
                } else {
                    CHECK(std::abs(k.imag()) <= 1e-14 * std::abs(k));
                    CHECK(k.real() * kinetic_frequency(model, w) > 0.0);
                }
            }
        }
    }

    TEST_CASE("dispersion residual and sheet conjugation on random complex frequencies") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(-10.0, 10.0);
        const DispersionModel models[] = {DispersionModel::non_relativistic(1.7, 0.3),
                                          DispersionModel::relativistic(0.8, 1.3, -0.2)};
        for (const auto& model : models) {
            double m = model.mass, c = model.light_speed, mu = model.rest_frequency();
            double worst = 0.0, worst_conj = 0.0;
            for (int i = 0; i < 10000; ++i) {
                cplx w(u(rng), u(rng));
                for (Sheet s : {Sheet::Upper, Sheet::Lower}) {
                    cplx k = wavenumber(model, w, s);
                    double res, scale;
                    if (model.relativistic_kind()) {
                        res = std::abs(c * c * k * k - (w * w - mu * mu));
                        scale = std::abs(w * w) + mu * mu;
                    } else {
                        res = std::abs(k * k - 2.0 * m * w);
                        scale = std::abs(2.0 * m * w);
                    }
                    worst = std::max(worst, res / scale);
                }
                cplx up = wavenumber(model, w, Sheet::Upper);
                cplx lo = wavenumber(model, std::conj(w), Sheet::Lower);
                worst_conj = std::max(worst_conj, std::abs(lo - std::conj(up)) / std::abs(up));
            }
            CHECK(worst <= 1e-12);
            CHECK(worst_conj <= 1e-14);
        }
    }

    TEST_CASE("upper sheet has Im k >= 0 off the cuts") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(-10.0, 10.0);
        for (const auto& model : {NR, RL}) {
            for (int i = 0; i < 5000; ++i) {
                cplx w(u(rng), std::abs(u(rng)) + 1e-3);
                CHECK(wavenumber(model, w, Sheet::Upper).imag() >= 0.0);
            }
        }
    }

    TEST_CASE("front velocity curve shape") {
        // continuous on each side of the threshold, zero at it, c at both ends, below c inside
        const DispersionModel rel = DispersionModel::relativistic(1.0, 2.0);
        double mu = rel.rest_frequency(), c = rel.light_speed;
        double prev = 0.0;
        for (int i = 1; i < 400; ++i) {  // evanescent side: decreasing towards the threshold
            double w = mu * i / 400.0;
            double v = front_velocity(rel, w);
            CHECK(v < c);
            if (i > 1) CHECK(v < prev);
            prev = v;
        }
        CHECK(front_velocity(rel, mu * (1 - 1e-12)) < 1e-5 * c);
        CHECK(front_velocity(rel, mu * (1 + 1e-12)) < 1e-5 * c);
        prev = 0.0;
        for (int i = 1; i < 400; ++i) {  // propagating side: increasing away from it
            double w = mu * (1.0 + 0.05 * i);
            double v = front_velocity(rel, w);
            CHECK(v < c);
            CHECK(v > prev);
            prev = v;
        }
        CHECK(std::abs(front_velocity(rel, 1e-4 * mu) / c - 1.0) < 1e-3);
        CHECK(std::abs(front_velocity(rel, 1e4 * mu) / c - 1.0) < 1e-3);
    }

    TEST_CASE("front velocity equals group velocity when propagating") {
        const DispersionModel rel = DispersionModel::relativistic(1.3, 0.7);
        for (int i = 1; i < 200; ++i) {
            double w = rel.rest_frequency() * (1.0 + 0.1 * i);
            CHECK(std::abs(front_velocity(rel, w) - group_velocity(rel, w)) <= 1e-12 * rel.light_speed);
            double wn = 0.05 * i;
            CHECK(std::abs(front_velocity(NR, wn) - group_velocity(NR, wn)) <= 1e-12 * front_velocity(NR, wn));
        }
    }

    TEST_CASE("model and source validation") {
        CHECK_THROWS_AS(DispersionModel::non_relativistic(0.0), DomainError);
        CHECK_THROWS_AS(DispersionModel::relativistic(1.0, -1.0), DomainError);
        CHECK_THROWS_AS(SourceSpec::sharp(0.0, 1.0).validate(NR), DomainError);
        CHECK_THROWS_AS(SourceSpec::band(1.0, -1.0, 2.0).validate(NR), DomainError);
        CHECK_NOTHROW(SourceSpec::band(1.0, -10.0, 2.0).validate(NR));
    }
}
