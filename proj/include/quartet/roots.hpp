#pragma once

// Roots of quartics: companion-matrix eigenvalues in floating point, exact
// square-free decomposition and rational root certification in Q(i).

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "quartet/hyperdet.hpp"

namespace quartet {

/// Roots of a monic quartic w^4 + c3 w^3 + c2 w^2 + c1 w + c0 as eigenvalues
/// of its companion matrix, each polished by two Newton steps.
inline std::array<Complex, 4> quartic_roots(const QuarticPolynomial<Complex> &p) {
    if (p.e4 == Complex(0)) {
        throw std::invalid_argument("quartic_roots: leading coefficient is zero");
    }
    const Complex c3 = p.e3 / p.e4, c2 = p.e2 / p.e4, c1 = p.e1 / p.e4, c0 = p.e0 / p.e4;
    Eigen::Matrix4cd companion = Eigen::Matrix4cd::Zero();
    companion(1, 0) = 1;
    companion(2, 1) = 1;
    companion(3, 2) = 1;
    companion(0, 3) = -c0;
    companion(1, 3) = -c1;
    companion(2, 3) = -c2;
    companion(3, 3) = -c3;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(companion, false);
    std::array<Complex, 4> roots;
    for (int i = 0; i < 4; ++i) {
        Complex x = solver.eigenvalues()(i);
        for (int step = 0; step < 2; ++step) {
            const Complex f = (((x + c3) * x + c2) * x + c1) * x + c0;
            const Complex df = ((Complex(4) * x + Complex(3) * c3) * x + Complex(2) * c2) * x + c1;
            if (std::abs(df) == 0) break;
            const Complex next = x - f / df;
            // Keep the step only if it does not increase the residual.
            const Complex fn = (((next + c3) * next + c2) * next + c1) * next + c0;
            if (std::abs(fn) > std::abs(f)) break;
            x = next;
        }
        roots[i] = x;
    }
    return roots;
}

/// Relative clustering radius for multiple roots.
inline constexpr double kRootClusterRadius = 1e-7;

/// Largest relative distance from a certified multiple root to its copies.
inline constexpr double kRootSpreadBound = 1e-2;

struct RootClusters {
    std::vector<Complex> centers;  // one per distinct root
    std::vector<int> multiplicity;  // parallel to centers
};

/// Groups approximate roots of a monic quartic into distinct roots.
///
/// An m-fold root perturbed by rounding spreads like eps^(1/m), but the
/// centroid of all m perturbed copies stays accurate. Every set partition of
/// the four roots is therefore tried, coarsest first; a block is accepted
/// when its members lie within 1e-7 (1 + max|x|) of each other or when its
/// centroid, refined by Newton on p^(m-1), annihilates p and its first m-1
/// derivatives to within `derivative_tol` of the coefficient scale, with
/// every member within 1e-2 (1 + max|x|) of that centre.
inline RootClusters cluster_roots(const QuarticPolynomial<Complex> &p, const std::array<Complex, 4> &roots,
                                  double derivative_tol = 1e-10) {
    double max_abs = 0;
    for (const auto &x : roots) max_abs = std::max(max_abs, std::abs(x));
    const double radius = kRootClusterRadius * (1.0 + max_abs);

    auto centroid = [&](const std::vector<int> &members) {
        Complex c = 0;
        for (int i : members) c += roots[i];
        return c / static_cast<double>(members.size());
    };

    // Taylor coefficients p^(k)(x)/k! of the monic quartic with their scale.
    const std::array<Complex, 5> a{p.e0 / p.e4, p.e1 / p.e4, p.e2 / p.e4, p.e3 / p.e4, Complex(1)};
    auto taylor = [&](const Complex &x, int k) {
        static constexpr int binom[5][5] = {{1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0},
                                            {1, 4, 6, 4, 1}};
        Complex s = 0, xp = 1;
        double scale = 0, xa = 1;
        for (int n = k; n <= 4; ++n) {
            s += static_cast<double>(binom[n][k]) * a[n] * xp;
            scale += binom[n][k] * std::abs(a[n]) * xa;
            xp *= x;
            xa *= std::abs(x);
        }
        return std::pair<Complex, double>{s, scale};
    };
    // Centroid refined by Newton on p^(m-1), whose root there is simple.
    auto center = [&](const std::vector<int> &block) {
        Complex x = centroid(block);
        const int m = static_cast<int>(block.size());
        if (m == 1) return x;
        for (int step = 0; step < 3; ++step) {
            const Complex num = taylor(x, m - 1).first, den = static_cast<double>(m) * taylor(x, m).first;
            if (std::abs(den) == 0) break;
            x -= num / den;
        }
        return x;
    };
    auto accepted = [&](const std::vector<int> &block) {
        bool close = true;
        for (size_t i = 0; i < block.size(); ++i) {
            for (size_t j = i + 1; j < block.size(); ++j) {
                close = close && std::abs(roots[block[i]] - roots[block[j]]) < radius;
            }
        }
        if (close) return true;
        const Complex x = center(block);
        for (int i : block) {
            if (std::abs(roots[i] - x) > kRootSpreadBound * (1.0 + max_abs)) return false;
        }
        for (int k = 0; k < static_cast<int>(block.size()); ++k) {
            auto [value, scale] = taylor(x, k);
            if (std::abs(value) > derivative_tol * std::max(scale, 1e-300)) return false;
        }
        return true;
    };

    // Set partitions as restricted growth strings: label[i] <= 1 + max(label[0..i-1]).
    std::vector<std::vector<int>> best;
    std::array<int, 4> label{0, 0, 0, 0};
    for (int code = 0; code < 64; ++code) {
        label[1] = code & 1;
        label[2] = code >> 1 & 3;
        label[3] = code >> 3 & 7;
        if (label[2] > std::max(label[0], label[1]) + 1) continue;
        if (label[3] > std::max({label[0], label[1], label[2]}) + 1) continue;
        std::vector<std::vector<int>> blocks;
        for (int i = 0; i < 4; ++i) {
            if (label[i] >= static_cast<int>(blocks.size())) blocks.resize(label[i] + 1);
            blocks[label[i]].push_back(i);
        }
        if (!best.empty() && blocks.size() >= best.size()) continue;
        if (std::all_of(blocks.begin(), blocks.end(), accepted)) best = std::move(blocks);
    }

    RootClusters out;
    for (const auto &members : best) {
        out.centers.push_back(center(members));
        out.multiplicity.push_back(static_cast<int>(members.size()));
    }
    return out;
}

/// Multiplicity pattern sorted in descending order, e.g. {2, 1, 1}.
inline std::vector<int> multiplicity_pattern(std::vector<int> m) {
    std::sort(m.begin(), m.end(), std::greater<>());
    return m;
}

// ---------------------------------------------------------------------------
// Exact arithmetic.

template <Scalar S>
std::vector<S> trim(std::vector<S> c) {
    while (!c.empty() && c.back() == S(0)) c.pop_back();
    return c;
}

/// Remainder of a / b (coefficients ascending, b non-zero).
template <Scalar S>
std::vector<S> poly_rem(std::vector<S> a, const std::vector<S> &b) {
    a = trim(std::move(a));
    while (a.size() >= b.size() && !a.empty()) {
        const S factor = a.back() / b.back();
        const size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - factor * b[i];
        a.pop_back();
        a = trim(std::move(a));
    }
    return a;
}

template <Scalar S>
std::vector<S> poly_div(std::vector<S> a, const std::vector<S> &b) {
    a = trim(std::move(a));
    if (a.size() < b.size()) return {};
    std::vector<S> q(a.size() - b.size() + 1, S(0));
    while (a.size() >= b.size() && !a.empty()) {
        const S factor = a.back() / b.back();
        const size_t shift = a.size() - b.size();
        q[shift] = factor;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - factor * b[i];
        a.pop_back();
        a = trim(std::move(a));
    }
    return q;
}

template <Scalar S>
std::vector<S> poly_gcd(std::vector<S> a, std::vector<S> b) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        auto r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const S lead = a.back();
        for (auto &x : a) x = x / lead;
    }
    return a;
}

template <Scalar S>
std::vector<S> derivative(const std::vector<S> &a) {
    std::vector<S> d;
    for (size_t i = 1; i < a.size(); ++i) d.push_back(S(static_cast<int>(i)) * a[i]);
    return trim(std::move(d));
}

/// Exact root-multiplicity profile (characteristic zero): entry k is the
/// number of distinct roots of multiplicity exactly k + 1.
template <Scalar S>
std::vector<int> squarefree_profile(const std::vector<S> &coeffs) {
    // gcd(w, w') strips one power from every root; w / gcd(w, w') is the
    // product of the distinct roots of w.
    std::vector<S> w = trim(coeffs);
    std::vector<int> at_least;  // distinct roots with multiplicity > k
    while (w.size() > 1) {
        std::vector<S> g = poly_gcd(w, derivative(w));
        at_least.push_back(static_cast<int>(poly_div(w, g).size()) - 1);
        w = std::move(g);
    }
    std::vector<int> profile;
    for (size_t k = 0; k < at_least.size(); ++k) {
        const int next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
        profile.push_back(at_least[k] - next);
    }
    return profile;
}

/// Expands a square-free profile into a descending multiplicity pattern.
inline std::vector<int> pattern_from_profile(const std::vector<int> &profile) {
    std::vector<int> m;
    for (size_t k = 0; k < profile.size(); ++k) {
        for (int n = 0; n < profile[k]; ++n) m.push_back(static_cast<int>(k) + 1);
    }
    return multiplicity_pattern(m);
}

inline QuarticPolynomial<Complex> to_complex(const QuarticPolynomial<GaussianRational> &p) {
    return {p.e4.to_complex(), p.e3.to_complex(), p.e2.to_complex(), p.e1.to_complex(), p.e0.to_complex()};
}

/// Finds all roots of a quartic with Gaussian-rational coefficients exactly,
/// when every root lies in Q(i): floating cluster centres are rounded to
/// nearby rationals and each candidate is certified by exact evaluation and
/// deflation. Roots are returned with multiplicity.
inline std::optional<std::array<GaussianRational, 4>> exact_quartic_roots(
    const QuarticPolynomial<GaussianRational> &p) {
    using G = GaussianRational;
    if (p.e4.is_zero()) return std::nullopt;
    const auto approx = to_complex(p);
    const auto clusters = cluster_roots(approx, quartic_roots(approx));
    std::vector<G> remaining{p.e0, p.e1, p.e2, p.e3, p.e4};
    std::vector<G> found;
    auto vanishes_at = [&](const G &x) {
        G value(0);
        for (auto it = remaining.rbegin(); it != remaining.rend(); ++it) value = value * x + *it;
        return value.is_zero();
    };
    for (const auto &center : clusters.centers) {
        for (long max_den : {1L << 4, 1L << 8, 1L << 12, 1L << 16, 1L << 20}) {
            const G cand(approximate_rational(center.real(), max_den), approximate_rational(center.imag(), max_den));
            if (!vanishes_at(cand)) continue;
            while (remaining.size() > 1 && vanishes_at(cand)) {
                remaining = poly_div(remaining, std::vector<G>{-cand, G(1)});
                found.push_back(cand);
            }
            break;
        }
    }
    if (found.size() != 4) return std::nullopt;
    return std::array<G, 4>{found[0], found[1], found[2], found[3]};
}

}  // namespace quartet
