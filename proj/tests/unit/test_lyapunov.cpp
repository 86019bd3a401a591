#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "penosc/lyapunov.hpp"

using namespace penosc;

namespace {

ModelSpec make(ModelKind kind, long n, int noise) {
    ModelSpec s;
    s.kind = kind;
    s.n = PenalizationLevel(n);
    s.potential = Potential::quadratic(1.0);
    if (noise == 1) {
        s.noise = OverdampedNoise::ornstein_uhlenbeck(1.0);
    } else if (noise == 2) {
        s.noise = HamiltonianNoise::kanai_tajimi(1.0, 1.0);
    }
    return s;
}

oracle::Model okind(ModelKind k) {
    switch (k) {
        case ModelKind::ElastoPlastic: return oracle::Model::ElastoPlastic;
        case ModelKind::Friction: return oracle::Model::Friction;
        case ModelKind::Obstacle: break;
    }
    return oracle::Model::Obstacle;
}

constexpr ModelKind kKinds[] = {ModelKind::ElastoPlastic, ModelKind::Friction, ModelKind::Obstacle};

}  // namespace

TEST(Constants, HandEvaluatedFriction) {
    const auto c = select_constants(make(ModelKind::Friction, 2, 0));
    EXPECT_NEAR(c.delta, 1.01 * 40.0, 1e-12);
    EXPECT_DOUBLE_EQ(c.c_v, 1.0);
    EXPECT_NEAR(c.lambda3, 2.0 / 3.0, 1e-15);
    EXPECT_GT(c.epsilon, 0.0);
}

TEST(ConstantsProperty, EpsilonStrictAndDeltaMonotone) {
    for (auto kind : kKinds) {
        for (int noise = 0; noise < 3; ++noise) {
            double prev = 0.0;
            for (long n = 1; n <= 1024; n *= 2) {
                const auto c = select_constants(make(kind, n, noise));
                double cap = std::min({c.lambda3 / c.delta, c.damping, 1.0});
                if (noise == 1) {
                    cap = std::min(cap, c.r);
                }
                if (noise == 2) {
                    cap = std::min(cap, c.delta_tilde);
                }
                EXPECT_LT(c.epsilon, cap);
                EXPECT_GT(c.delta, c.delta_floor);
                EXPECT_GT(c.delta_floor, prev);
                prev = c.delta_floor;
            }
        }
    }
}

TEST(Constants, Errors) {
    auto spec = make(ModelKind::Friction, 100, 0);
    EXPECT_THROW((void)select_constants(spec, 0.5), ContractViolation);
    spec.potential = Potential::zero();
    EXPECT_THROW((void)select_constants(spec), DomainError);
}

TEST(LyapunovValue, Examples) {
    const auto spec = make(ModelKind::Friction, 2, 0);
    auto c = select_constants(spec);
    EXPECT_DOUBLE_EQ(eval_V(c, spec, State{0.0, 0.0}), c.c_v);
    c.delta = 40.0;
    c.c_v = 1.0;
    EXPECT_DOUBLE_EQ(eval_V(c, spec, State{1.0, 1.0}), 42.0);

    const auto ou = make(ModelKind::Friction, 2, 1);
    const auto c3 = select_constants(ou);
    EXPECT_DOUBLE_EQ(eval_V(c3, ou, State{1.0, 0.0, 0.0}), c3.xi / 2.0 + c3.c_v);
}

TEST(LyapunovGenerator, Examples) {
    const auto spec = make(ModelKind::Friction, 2, 0);
    const auto c = select_constants(spec);
    EXPECT_NEAR(eval_AV_plus_epsV(c, spec, State{0.0, 0.0}), c.delta / 2.0 + c.epsilon * c.c_v, 1e-12);

    const auto ou = make(ModelKind::Friction, 2, 1);
    const auto c3 = select_constants(ou);
    for (double eta : {-3.0, -0.5, 0.0, 1.0, 4.0}) {
        EXPECT_NEAR(eval_AV_plus_epsV(c3, ou, State{eta, 0.0, 0.0}),
                    s3(c3, ou, eta) + (c.delta / 2.0 + c3.epsilon * c3.c_v) - c.delta / 2.0, 1e-9);
    }
}

TEST(LyapunovGenerator, NeedsAllPartials) {
    auto spec = make(ModelKind::Friction, 2, 2);
    auto hn = std::get<HamiltonianNoise>(spec.noise);
    hn.correction.d_zeta_zeta = nullptr;
    spec.noise = hn;
    const auto c = select_constants(spec);
    EXPECT_THROW((void)eval_AV_plus_epsV(c, spec, State{0.1, 0.2, 0.3, 0.4}), ContractViolation);
}

TEST(LyapunovGeneratorProperty, MatchesFiniteDifferences) {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    const long n = 7;
    const double h = 1e-3;
    const auto kt = kanai_tajimi_correction(1.0, 1.0);
    for (auto kind : kKinds) {
        for (int noise = 0; noise < 3; ++noise) {
            const auto spec = make(kind, n, noise);
            const auto c = select_constants(spec);
            oracle::Setup os;
            os.model = okind(kind);
            os.n = n;
            os.noise = noise;
            os.kt_c = kt.c;
            const int d = spec.dimension();
            auto psi = [&](const std::vector<double>& v) {
                State z(d);
                for (int j = 0; j < d; ++j) {
                    z[j] = v[j];
                }
                return eval_V(c, spec, z);
            };
            int tested = 0;
            while (tested < 100) {
                std::vector<double> v(d);
                State z(d);
                for (int j = 0; j < d; ++j) {
                    v[j] = u(gen);
                    z[j] = v[j];
                }
                if (std::abs(std::abs(z.x()) - 1.0) < 3 * h || std::abs(std::abs(z.y()) - 1.0 / n) < 3 * h) {
                    continue;
                }
                ++tested;
                // eps V is added on both sides
                const double expect = oracle::fd_generator(os, psi, v, h) + c.epsilon * psi(v);
                const double got = eval_AV_plus_epsV(c, spec, z);
                EXPECT_NEAR(got, expect, 1e-6 * (1.0 + std::abs(expect)))
                    << model_key(kind) << " noise " << noise << " at " << tested;
            }
        }
    }
}

TEST(ClaimBoundsProperty, PointwiseOnGrids) {
    const auto axis = linspace(-10.0, 10.0, 201);
    for (auto kind : kKinds) {
        for (long n : {1L, 2L, 100L, 1000L}) {
            const auto spec = make(kind, n, 0);
            const auto c = select_constants(spec);
            for (double x : axis) {
                EXPECT_LE(s1(c, spec, x), s1_bound(c, x) + 1e-9 * (1 + std::abs(s1_bound(c, x))));
                for (double y : axis) {
                    const double b = s2_bound(c, y, x);
                    EXPECT_LE(s2(c, spec, y, x), b + 1e-9 * (1 + std::abs(b)));
                }
            }
            const auto ou = make(kind, n, 1);
            const auto c3 = select_constants(ou);
            for (double eta : axis) {
                EXPECT_LE(s3(c3, ou, eta), s3_bound(c3, eta) + 1e-9 * (1 + std::abs(s3_bound(c3, eta))));
            }
            const auto kt = make(kind, n, 2);
            const auto c4 = select_constants(kt);
            for (double eta : axis) {
                for (double zeta : axis) {
                    const double b = s4_bound(c4, eta, zeta);
                    EXPECT_LE(s4(c4, kt, eta, zeta), b + 1e-9 * (1 + std::abs(b)));
                }
            }
        }
    }
}

TEST(Certify, FrictionFineGrid) {
    const auto spec = make(ModelKind::Friction, 100, 0);
    const auto c = select_constants(spec);
    const auto report = certify_drift(c, spec, DriftGrid::cube(2, -10.0, 10.0, 201));
    EXPECT_EQ(report.violation_count, 0u);
    EXPECT_TRUE(std::isfinite(report.inferred_c));
    EXPECT_TRUE(report.ok());
    EXPECT_EQ(report.points, 201u * 201u);
}

TEST(Certify, FarFieldIsNegative) {
    for (auto kind : kKinds) {
        for (long n : {2L, 100L}) {
            const auto spec = make(kind, n, 0);
            const auto c = select_constants(spec);
            EXPECT_LT(eval_AV_plus_epsV(c, spec, State{10.0, 10.0}), 0.0);
            // the framed right-hand side turns negative once the quadratic terms beat K2
            const double r = 2.0 * std::sqrt(c.k2 / std::min(c.k2y, c.k2x)) + 2.0 * (c.delta + 1.0);
            EXPECT_LT(framed_bound(c, State{r, r}), 0.0);
            EXPECT_LT(eval_AV_plus_epsV(c, spec, State{r, r}), 0.0);
        }
    }
}

TEST(Certify, WrongSignCrossTermIsCaught) {
    const auto spec = make(ModelKind::Friction, 2, 0);
    const auto c = select_constants(spec);
    auto value = [&](const State& z) {
        const auto f = drift(spec, z);
        // V - 2xy: subtract twice the generator of xy plus eps xy
        return eval_AV_plus_epsV(c, spec, z) - 2.0 * (z.x() * f.y() + z.y() * f.x() + c.epsilon * z.x() * z.y());
    };
    auto v = [&](const State& z) { return eval_V(c, spec, z) - 2.0 * z.x() * z.y(); };
    const auto grid = DriftGrid::cube(2, -1000.0, 1000.0, 41);
    EXPECT_EQ(certify_drift(c, spec, grid).violation_count, 0u);
    const auto report = certify_drift(c, spec, grid, value, v);
    EXPECT_GT(report.violation_count, 0u);
    EXPECT_FALSE(report.ok());
}

TEST(CertifyProperty, ReselectedConstantsStillPass) {
    for (auto kind : kKinds) {
        for (long n : {10L, 20L, 40L}) {
            for (int noise = 0; noise < 3; ++noise) {
                const auto spec = make(kind, n, noise);
                const auto c = select_constants(spec);
                const std::size_t pts = noise == 2 ? 15 : (noise == 1 ? 31 : 81);
                const auto report = certify_drift(c, spec, DriftGrid::cube(spec.dimension(), -10.0, 10.0, pts));
                EXPECT_TRUE(report.ok()) << model_key(kind) << " n=" << n << " noise " << noise;
            }
        }
    }
}

TEST(LyapunovProperty, QuadraticLowerBound) {
    const auto axis = linspace(-10.0, 10.0, 101);
    for (auto kind : kKinds) {
        const auto spec = make(kind, 100, 0);
        const auto c = select_constants(spec);
        for (double y : axis) {
            for (double x : axis) {
                const double lower = 0.5 * y * y * (c.delta - 1.0 / (c.delta * c.lambda1)) +
                                     0.5 * c.delta * c.lambda1 * x * x + 1.0;
                EXPECT_GE(eval_V(c, spec, State{y, x}), lower - 1e-9 * lower);
            }
        }
    }
}
