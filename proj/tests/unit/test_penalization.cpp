#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "penosc/config.hpp"
#include "penosc/observable.hpp"
#include "penosc/penalization.hpp"
#include "penosc/stationary_density.hpp"

using namespace penosc;

TEST(Penalization, ProjectionExamples) {
    EXPECT_DOUBLE_EQ(proj_k(0.3), 0.3);
    EXPECT_DOUBLE_EQ(proj_k(2.0), 1.0);
    EXPECT_DOUBLE_EQ(proj_k(-5.0), -1.0);
}

TEST(Penalization, ChiExamples) {
    EXPECT_DOUBLE_EQ(chi_n(0.5, PenalizationLevel(100)), 0.0);
    EXPECT_DOUBLE_EQ(chi_n_prime(0.5, PenalizationLevel(100)), 0.0);
    EXPECT_DOUBLE_EQ(chi_n(2.0, PenalizationLevel(2)), 1.0);
    EXPECT_DOUBLE_EQ(chi_n_prime(2.0, PenalizationLevel(2)), 2.0);
    EXPECT_DOUBLE_EQ(chi_n(-1.5, PenalizationLevel(10)), 1.25);
    EXPECT_DOUBLE_EQ(chi_n_prime(-1.5, PenalizationLevel(10)), -5.0);
}

TEST(Penalization, HuberExamples) {
    const PenalizationLevel n(100);
    EXPECT_DOUBLE_EQ(a_n(0.0, n), 0.0);
    EXPECT_DOUBLE_EQ(a_n_prime(0.0, n), 0.0);
    EXPECT_DOUBLE_EQ(a_n(0.5, n), 0.495);
    EXPECT_DOUBLE_EQ(a_n_prime(0.5, n), 1.0);
    EXPECT_NEAR(a_n(0.005, n), 0.00125, 1e-15);
    EXPECT_DOUBLE_EQ(a_n_prime(0.005, n), 0.5);
}

TEST(Penalization, LevelMustBePositive) {
    EXPECT_THROW(PenalizationLevel(0), ContractViolation);
    EXPECT_THROW(PenalizationLevel(-3), ContractViolation);
}

TEST(PenalizationProperty, ChiShape) {
    for (long nv : {1L, 2L, 7L, 100L, 1000L}) {
        const PenalizationLevel n(nv);
        const PenalizationLevel n2(2 * nv);
        double prev_slope = -INFINITY;
        for (int i = 0; i <= 4000; ++i) {
            const double x = -10.0 + 0.005 * i;
            EXPECT_GE(chi_n(x, n), 0.0);
            if (std::abs(x) <= 1.0) {
                EXPECT_EQ(chi_n(x, n), 0.0);
            }
            EXPECT_GE(chi_n_prime(x, n), prev_slope);
            prev_slope = chi_n_prime(x, n);
            EXPECT_GE(chi_n(x, n2), chi_n(x, n));
        }
    }
}

TEST(PenalizationProperty, HuberUniformError) {
    for (long nv : {1L, 3L, 10L, 100L, 1000L}) {
        const PenalizationLevel n(nv);
        const double bound = 0.5 / static_cast<double>(nv);
        const double h = 1e-3;
        for (int i = 0; i <= 20000; ++i) {
            const double y = -10.0 + 0.001 * i;
            EXPECT_EQ(a_n(y, n), a_n(-y, n));
            EXPECT_LE(std::abs(a_n(y, n) - std::abs(y)), bound + 1e-15);
            // convexity via second differences
            EXPECT_GE(a_n(y + h, n) - 2.0 * a_n(y, n) + a_n(y - h, n), -1e-13);
        }
        // continuity across the kink
        const double k = 1.0 / static_cast<double>(nv);
        EXPECT_NEAR(a_n(k * (1 + 1e-12), n), a_n(k * (1 - 1e-12), n), 1e-10);
    }
}

TEST(PenalizationProperty, DerivativesMatchFiniteDifferences) {
    const double h = 1e-5;
    for (long nv : {1L, 5L, 100L}) {
        const PenalizationLevel n(nv);
        const double kink_a = 1.0 / static_cast<double>(nv);
        for (int i = 0; i <= 2000; ++i) {
            const double s = -5.0 + 0.005 * i + 1.234e-4;
            if (std::abs(std::abs(s) - kink_a) > 10 * h) {
                const double fd = (a_n(s + h, n) - a_n(s - h, n)) / (2 * h);
                EXPECT_NEAR(fd, a_n_prime(s, n), 1e-6 * (1 + nv));
            }
            if (std::abs(std::abs(s) - 1.0) > 10 * h) {
                const double fd = (chi_n(s + h, n) - chi_n(s - h, n)) / (2 * h);
                EXPECT_NEAR(fd, chi_n_prime(s, n), 1e-6 * (1 + nv));
            }
        }
    }
}

TEST(StationaryDensity, GaussianExamples) {
    const auto rho = ou_stationary_density([](double e) { return e; }, 2.0);
    EXPECT_NEAR(rho(0.0), 1.0 / std::sqrt(std::numbers::pi), 1e-10);
    for (double e : {0.1, 0.7, 1.9, 3.0}) {
        EXPECT_NEAR(rho(e), rho(-e), 1e-14);
    }
    // closed form: int exp(-beta theta e^2 / 2) = sqrt(2 pi / (beta theta))
    for (double theta : {0.5, 1.0, 3.0}) {
        for (double beta : {1.0, 2.0, 4.0}) {
            const auto r = ou_stationary_density([theta](double e) { return theta * e; }, beta);
            EXPECT_NEAR(r.normalizer(), std::sqrt(2.0 * std::numbers::pi / (beta * theta)), 1e-8);
        }
    }
}

TEST(StationaryDensity, NonConfiningIsRejected) {
    EXPECT_THROW((void)ou_stationary_density([](double) { return 0.0; }, 2.0), DomainError);
}

TEST(Config, DefaultsAndOverrides) {
    std::istringstream in("# comment\nmodel = op\n\nn=2\nnoise=ou\ntheta_v=3\n");
    const auto cfg = parse_model_config(in);
    EXPECT_EQ(cfg.model, "op");
    EXPECT_EQ(cfg.n, 2);
    EXPECT_DOUBLE_EQ(cfg.cb, 1.0);
    const auto spec = cfg.build();
    EXPECT_EQ(spec.kind, ModelKind::Obstacle);
    EXPECT_EQ(spec.dimension(), 3);
}

TEST(Config, RejectsBadInput) {
    std::istringstream unknown("colour=red\n");
    EXPECT_THROW((void)parse_model_config(unknown), UsageError);
    std::istringstream bad_number("n=abc\n");
    EXPECT_THROW((void)parse_model_config(bad_number), UsageError);
    ModelConfig cfg;
    cfg.noise = "ou";
    cfg.beta = 1.0;
    EXPECT_THROW((void)cfg.build(), UsageError);
    ModelConfig round;
    for (const auto& [k, v] : round.entries()) {
        EXPECT_EQ(round.get(k), v);
    }
}

TEST(Observable, Parse) {
    EXPECT_DOUBLE_EQ(Observable::parse("identity")(-0.3), -0.3);
    EXPECT_DOUBLE_EQ(Observable::parse("square")(-3.0), 9.0);
    EXPECT_DOUBLE_EQ(Observable::parse("indicator:-1,2")(1.5), 1.0);
    EXPECT_DOUBLE_EQ(Observable::parse("indicator:-1,2")(2.5), 0.0);
    EXPECT_DOUBLE_EQ(Observable::parse("constant:4")(100.0), 4.0);
    EXPECT_THROW((void)Observable::parse("cube"), UsageError);
}
