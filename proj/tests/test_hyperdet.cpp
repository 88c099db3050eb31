#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace quartet;
using G = GaussianRational;

namespace {

template <Scalar S>
ThreeQubitState<S> product3(const std::array<S, 2> &a, const std::array<S, 2> &b, const std::array<S, 2> &c) {
    std::array<S, 8> z;
    for (int s = 0; s < 8; ++s) z[s] = a[s >> 2 & 1] * b[s >> 1 & 1] * c[s & 1];
    return ThreeQubitState<S>(z);
}

/// a (x) psi with psi an arbitrary two-qubit state on the last two qubits.
template <Scalar S>
ThreeQubitState<S> biseparable3(const std::array<S, 2> &a, const std::array<S, 4> &psi) {
    std::array<S, 8> z;
    for (int s = 0; s < 8; ++s) z[s] = a[s >> 2 & 1] * psi[s & 3];
    return ThreeQubitState<S>(z);
}

std::array<G, 2> rand2(std::mt19937_64 &rng) { return {random_gaussian_rational(rng), random_gaussian_rational(rng)}; }

}  // namespace

TEST(TwoQubit, DeterminantAndConcurrence) {
    const double h = 1 / std::sqrt(2.0);
    EXPECT_EQ(det2(1, 0, 0, 1), 1);
    EXPECT_NEAR(concurrence(Complex(h), Complex(0), Complex(0), Complex(h)), 1.0, 1e-15);
    EXPECT_NEAR(concurrence(Complex(1), Complex(0), Complex(0), Complex(0)), 0.0, 1e-15);
    EXPECT_NEAR(concurrence(Complex(0.5), Complex(0.5), Complex(0.5), Complex(0.5)), 0.0, 1e-15);
}

TEST(ThreeQubit, GhzAndW) {
    std::array<G, 8> ghz{}, w{};
    ghz.fill(G(0));
    w.fill(G(0));
    ghz[0] = ghz[7] = G(1);
    w[1] = w[2] = w[4] = G(1);
    EXPECT_EQ(det3(ThreeQubitState<G>(ghz)), G(1));
    EXPECT_EQ(det3(ThreeQubitState<G>(w)), G(0));
    EXPECT_EQ(det3(ThreeQubitState<G>::basis(0)), G(0));

    std::array<Complex, 8> g{};
    g[0] = g[7] = 1 / std::sqrt(2.0);
    EXPECT_NEAR(three_tangle(ThreeQubitState<Complex>(g)), 1.0, 1e-15);
}

TEST(ThreeQubit, MatchesPencilDiscriminantOracle) {
    std::mt19937_64 rng(11);
    for (int n = 0; n < 50; ++n) {
        std::array<G, 8> a;
        for (auto &x : a) x = random_gaussian_rational(rng);
        const ThreeQubitState<G> z(a);
        EXPECT_EQ(det3(z), oracle::det3_by_pencil(z));
    }
}

TEST(ThreeQubit, VanishesOnSeparableAndBiseparable) {
    std::mt19937_64 rng(12);
    for (int n = 0; n < 30; ++n) {
        EXPECT_EQ(det3(product3(rand2(rng), rand2(rng), rand2(rng))), G(0));
        const std::array<G, 4> psi{random_gaussian_rational(rng), random_gaussian_rational(rng),
                                   random_gaussian_rational(rng), random_gaussian_rational(rng)};
        EXPECT_EQ(det3(biseparable3(rand2(rng), psi)), G(0));
    }
}

TEST(QuarticDiscriminant, MatchesRootProductOracle) {
    std::mt19937_64 rng(13);
    for (int n = 0; n < 30; ++n) {
        const std::array<G, 4> r{random_gaussian_rational(rng), random_gaussian_rational(rng),
                                 random_gaussian_rational(rng), random_gaussian_rational(rng)};
        EXPECT_EQ(quartic_discriminant(oracle::quartic_from_roots(r)),
                  oracle::root_product_discriminant(std::vector<G>(r.begin(), r.end())));
    }
}

TEST(QuarticDiscriminant, Examples) {
    // w^4 - 1 has roots the fourth roots of unity.
    EXPECT_EQ(quartic_discriminant(QuarticPolynomial<G>{1, 0, 0, 0, -1}), G(-256));
    EXPECT_EQ(quartic_discriminant(oracle::quartic_from_roots<G>({2, 2, 5, -1})), G(0));
    EXPECT_EQ(quartic_discriminant(oracle::quartic_from_roots<G>({1, 4, 9, 16})), G(mpq_class("22861440000")));
}

TEST(HyperdetRoutes, AgreeExactly) {
    for (uint64_t seed = 0; seed < 15; ++seed) {
        const auto z = random_rational_state(seed);
        const auto inv = compute_invariants(z);
        const G a = d4_from_ST(inv), b = d4_from_quartic(inv), c = d4_schlaefli(z);
        EXPECT_EQ(a, b);
        EXPECT_EQ(b, c);
        const auto st1 = st_from_invariants(inv), st2 = st_from_luque_thibon(inv);
        EXPECT_EQ(st1.S_, st2.S_);
        EXPECT_EQ(st1.T, st2.T);
    }
}

TEST(HyperdetRoutes, IntegerInstance) {
    const auto r = hyperdeterminant_report(g_state<G>({1, 2, 3, 4}));
    ASSERT_TRUE(r.consensus.has_value());
    EXPECT_EQ(*r.consensus, G(89302500));
    EXPECT_EQ(r.S_, G(mpq_class(2547, 4)));
    EXPECT_EQ(r.T, G(mpq_class(20007, 8)));
    EXPECT_EQ(r.U, G(129));
    EXPECT_EQ(r.V, G(4500));
    EXPECT_EQ(r.max_relative_spread, 0.0);
}

TEST(HyperdetRoutes, AgreeInFloatingPoint) {
    for (uint64_t seed = 0; seed < 200; ++seed) {
        const auto r = hyperdeterminant_report(random_state(seed, true));
        EXPECT_LE(r.max_relative_spread, 1e-6);
    }
}

TEST(HyperdetRoutes, DegreeTwentyFour) {
    const auto z = random_rational_state(21);
    const G d = d4_schlaefli(z);
    EXPECT_EQ(d4_schlaefli(z.scaled(G(2))), G(1 << 24) * d);
    const G i(mpq_class(0), mpq_class(1));
    EXPECT_EQ(d4_from_quartic(compute_invariants(z.scaled(i))), d);
}

TEST(HyperdetRoutes, VanishesOnProductState) {
    const auto r = hyperdeterminant_report(FourQubitState<G>::basis(5));
    EXPECT_EQ(*r.consensus, G(0));
}

TEST(Pencil, InterpolationMatchesExpansion) {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        const auto z = random_state(seed, true);
        const auto e = pencil_expanded(z);
        const auto f = pencil_interpolated(z);
        EXPECT_LE(f.residual, 1e-12);
        const auto ea = e.ascending(), fa = f.h.ascending();
        double scale = 0;
        for (const auto &x : ea) scale = std::max(scale, std::abs(x));
        for (int k = 0; k < 5; ++k) EXPECT_LE(std::abs(ea[k] - fa[k]), 1e-12 * scale) << k;
    }
}

TEST(Pencil, ExpansionMatchesSampledDet3Exactly) {
    const auto z = random_rational_state(4);
    const auto h = pencil_expanded(z);
    for (int lambda = -3; lambda <= 3; ++lambda) {
        std::array<G, 8> a;
        for (int s = 0; s < 8; ++s) a[s] = z[s] + G(lambda) * z[8 + s];
        EXPECT_EQ(h(G(lambda)), oracle::det3_by_pencil(ThreeQubitState<G>(a)));
    }
}

TEST(HyperdetRoutes, DisagreementCarriesAllValues) {
    // A negative tolerance forces the disagreement path.
    const auto z = random_state(3, true);
    try {
        hyperdeterminant_report(z, -1.0);
        FAIL() << "expected RouteDisagreement";
    } catch (const RouteDisagreement<Complex> &e) {
        EXPECT_FALSE(e.report().consensus.has_value());
        EXPECT_NEAR(std::abs(e.report().d4_st - e.report().d4_quartic), 0, 1e-6 * std::abs(e.report().d4_st));
    }
}
