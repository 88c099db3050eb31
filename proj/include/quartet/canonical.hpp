#pragma once

// The generic SLOCC family G_abcd, its invariant values, recovery of
// (a, b, c, d) from invariants, and the tetrahedron of points, lines and
// planes attached to a state.

#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "quartet/roots.hpp"

namespace quartet {

template <Scalar S>
struct CanonicalParams {
    S a, b, c, d;

    std::array<S, 4> as_array() const { return {a, b, c, d}; }
};

/// G_abcd = (a+d)/2 (|0000>+|1111>) + (a-d)/2 (|0011>+|1100>)
///        + (b+c)/2 (|0101>+|1010>) + (b-c)/2 (|0110>+|1001>).
template <Scalar S>
FourQubitState<S> g_state(const CanonicalParams<S> &p) {
    std::array<S, 16> z;
    z.fill(S(0));
    const S half = ratio<S>(1, 2);
    z[0] = z[15] = half * (p.a + p.d);
    z[3] = z[12] = half * (p.a - p.d);
    z[5] = z[10] = half * (p.b + p.c);
    z[6] = z[9] = half * (p.b - p.c);
    return FourQubitState<S>(z);
}

/// Elementary symmetric polynomials e1..e4 of four values.
template <Scalar S>
std::array<S, 4> elementary_symmetric(const std::array<S, 4> &x) {
    std::array<S, 5> e{S(1), S(0), S(0), S(0), S(0)};
    for (const S &xi : x) {
        for (int k = 4; k >= 1; --k) e[k] = e[k] + xi * e[k - 1];
    }
    return {e[1], e[2], e[3], e[4]};
}

template <Scalar S>
struct OrbitInvariants {
    S I1, I2, I3, I4;
};

/// I1 = e1/4, I2 = e2/6, I3 = e3/4 (e_k of the squared parameters), I4 = abcd.
template <Scalar S>
OrbitInvariants<S> orbit_invariants(const CanonicalParams<S> &p) {
    const auto e = elementary_symmetric<S>({p.a * p.a, p.b * p.b, p.c * p.c, p.d * p.d});
    return {e[0] / S(4), e[1] / S(6), e[2] / S(4), p.a * p.b * p.c * p.d};
}

/// (1/256) prod_{i<j} (x_i - x_j)^2 over x = (a^2, b^2, c^2, d^2).
template <Scalar S>
S vandermonde_d4(const CanonicalParams<S> &p) {
    const std::array<S, 4> x{p.a * p.a, p.b * p.b, p.c * p.c, p.d * p.d};
    S v(1);
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            v = v * (x[j] - x[i]);
        }
    }
    return v * v / S(256);
}

// ---------------------------------------------------------------------------
// Parameter recovery.

struct ParameterRecovery {
    std::vector<Complex> roots;     // distinct roots of the invariant quartic
    std::vector<int> multiplicity;  // parallel to roots
    std::vector<int> pattern;       // descending, e.g. {1,1,1,1} or {2,2}
    bool degenerate = false;        // some root is multiple
    std::vector<CanonicalParams<Complex>> candidates;
};

/// Orders parameters lexicographically by (|x|, arg x).
inline void sort_parameters(std::array<Complex, 4> &v) {
    std::sort(v.begin(), v.end(), [](const Complex &x, const Complex &y) {
        const double ax = std::abs(x), ay = std::abs(y);
        if (ax != ay) return ax < ay;
        return std::arg(x) < std::arg(y);
    });
}

/// Roots of w^4 - 4I1 w^3 + 6I2 w^2 - 4I3 w + I4^2 are (a^2, b^2, c^2, d^2).
///
/// With four simple roots the square roots are fixed up to sign; sign
/// patterns are pruned by prod = I4 and identified under even numbers of
/// sign flips, which leaves one candidate. Parameters are ordered by
/// (|x|, arg x). Multiple roots are reported as a multiplicity pattern
/// without candidates. `product_tol` is relative to |I4| + prod|sqrt x|.
inline ParameterRecovery recover_parameters(const Complex &I1, const Complex &I2, const Complex &I3,
                                            const Complex &I4, double product_tol = 1e-6) {
    ParameterRecovery out;
    const auto p = invariant_quartic(I1, I2, I3, I4);
    const auto raw = quartic_roots(p);
    const auto clusters = cluster_roots(p, raw);
    out.roots = clusters.centers;
    out.multiplicity = clusters.multiplicity;
    out.pattern = multiplicity_pattern(clusters.multiplicity);
    out.degenerate = out.pattern.front() > 1;
    if (out.degenerate) {
        return out;
    }

    std::array<Complex, 4> s;
    for (int i = 0; i < 4; ++i) s[i] = std::sqrt(out.roots[i]);
    sort_parameters(s);
    Complex prod = s[0] * s[1] * s[2] * s[3];
    const double scale = std::abs(I4) + std::abs(prod);
    // prod = +-I4 always; flip one sign when the product has the wrong sign.
    if (scale > 0 && std::abs(prod - I4) > product_tol * scale) {
        s[0] = -s[0];
        prod = -prod;
        sort_parameters(s);
    }
    if (scale == 0 || std::abs(prod - I4) <= product_tol * scale) {
        out.candidates.push_back({s[0], s[1], s[2], s[3]});
    }
    return out;
}

template <Scalar S>
ParameterRecovery recover_parameters(const InvariantSet<S> &inv, double product_tol = 1e-6) {
    return recover_parameters(to_complex(inv.I1), to_complex(inv.I2), to_complex(inv.I3), to_complex(inv.I4),
                              product_tol);
}

/// Exact-mode recovery: certified Gaussian-rational roots (with
/// multiplicity) when they exist, the exact multiplicity pattern always,
/// and exact parameters when every root is a perfect square in Q(i).
struct ExactParameterRecovery {
    std::vector<int> pattern;
    std::optional<std::array<GaussianRational, 4>> roots;
    std::optional<CanonicalParams<GaussianRational>> parameters;
};

inline ExactParameterRecovery recover_parameters_exact(const InvariantSet<GaussianRational> &inv) {
    using G = GaussianRational;
    ExactParameterRecovery out;
    const auto p = invariant_quartic(inv);
    out.pattern = pattern_from_profile(squarefree_profile(std::vector<G>{p.e0, p.e1, p.e2, p.e3, p.e4}));
    out.roots = exact_quartic_roots(p);
    if (!out.roots) return out;
    std::array<G, 4> s;
    for (int i = 0; i < 4; ++i) {
        auto r = exact_sqrt((*out.roots)[i]);
        if (!r) return out;
        s[i] = *r;
    }
    if (!(s[0] * s[1] * s[2] * s[3] == inv.I4)) s[0] = -s[0];
    if (s[0] * s[1] * s[2] * s[3] == inv.I4) {
        out.parameters = CanonicalParams<G>{s[0], s[1], s[2], s[3]};
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tetrahedron diagnostics.

struct TetrahedronReport {
    int point_rank = 0;
    std::vector<std::string> vanishing_lines;
    std::vector<std::string> vanishing_planes;
    std::array<std::array<bool, 6>, 6> incidence{};  // bracket(P_I, P_J) == 0
    bool degenerate = false;                          // I4 == 0
};

/// Rank of a 4x4 matrix: exact elimination, or singular values above
/// tol * |M|_F in floating mode.
template <Scalar S>
int matrix_rank(const Matrix4<S> &m, double tol) {
    if constexpr (is_exact_v<S>) {
        Matrix4<S> a = m;
        int rank = 0;
        for (int col = 0; col < 4 && rank < 4; ++col) {
            int pivot = -1;
            for (int r = rank; r < 4; ++r) {
                if (!(a[r][col] == S(0))) {
                    pivot = r;
                    break;
                }
            }
            if (pivot < 0) continue;
            std::swap(a[rank], a[pivot]);
            for (int r = rank + 1; r < 4; ++r) {
                const S f = a[r][col] / a[rank][col];
                for (int c = col; c < 4; ++c) a[r][c] = a[r][c] - f * a[rank][c];
            }
            ++rank;
        }
        return rank;
    } else {
        Eigen::Matrix4cd e;
        double frob = 0;
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                e(r, c) = m[r][c];
                frob += std::norm(m[r][c]);
            }
        }
        frob = std::sqrt(frob);
        if (frob == 0) return 0;
        Eigen::JacobiSVD<Eigen::Matrix4cd> svd(e);
        int rank = 0;
        for (int i = 0; i < 4; ++i) {
            if (svd.singularValues()(i) > tol * frob) ++rank;
        }
        return rank;
    }
}

/// Degeneracy data of the 4 points, 6 lines and 4 planes of a state. Each
/// zero test is scaled by the matching power of the state norm: lines by
/// |Z|^2, planes by |Z|^3, brackets and I4 by |Z|^4; point rank uses the
/// same relative `tol` on singular values (ignored in exact mode).
template <Scalar S>
TetrahedronReport tetrahedron_report(const FourQubitState<S> &z, double tol = 1e-10) {
    TetrahedronReport r;
    const double n = std::sqrt(z.norm_squared());
    r.point_rank = matrix_rank(matrix_L(z), tol);

    const auto pl = pluecker_set(z);
    for (size_t i = 0; i < 6; ++i) {
        bool zero = true;
        for (const auto &c : pl.lines[i].c) zero = zero && is_zero(c, tol * n * n);
        if (zero) r.vanishing_lines.emplace_back(kLineLabels[i]);
    }
    const auto duals = dual_points(z);
    const std::array<const Vector4<S> *, 4> planes{&duals.a, &duals.b, &duals.c, &duals.d};
    for (size_t i = 0; i < 4; ++i) {
        bool zero = true;
        for (const auto &c : planes[i]->v) zero = zero && is_zero(c, tol * n * n * n);
        if (zero) r.vanishing_planes.emplace_back(kPlaneLabels[i]);
    }
    const double n4 = n * n * n * n;
    for (size_t i = 0; i < 6; ++i) {
        for (size_t j = 0; j < 6; ++j) {
            r.incidence[i][j] = is_zero(bracket(pl.lines[i], pl.lines[j]), tol * n4);
        }
    }
    r.degenerate = is_zero(invariant_I4(z), tol * n4);
    return r;
}

}  // namespace quartet
