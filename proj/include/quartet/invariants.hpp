#pragma once

// The SLOCC invariants I1..I4, the Luque-Thibon style quantities H, L, M, N,
// U, D and the six sextic covariants D_uv.

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "quartet/geometry.hpp"

namespace quartet {

template <Scalar S>
struct InvariantSet {
    S I1, I2, I3, I4;
    S H, L, M, N, U;
    S D_xy, D_zt, D_xz, D_yt, D_xt, D_yz;
    S D;  // == D_xt
};

// ---------------------------------------------------------------------------
// Individual invariants.

/// H = Z0Z15 - Z1Z14 - Z2Z13 + Z3Z12 - Z4Z11 + Z5Z10 + Z6Z9 - Z7Z8.
template <Scalar S>
S invariant_H(const FourQubitState<S> &z) {
    return z[0] * z[15] - z[1] * z[14] - z[2] * z[13] + z[3] * z[12] - z[4] * z[11] + z[5] * z[10] + z[6] * z[9] -
           z[7] * z[8];
}

/// I1 = (A.D - B.C) / 2.
template <Scalar S>
S invariant_I1(const FourQubitState<S> &z) {
    const auto c = columns(z);
    return (dot(c.A, c.D) - dot(c.B, c.C)) / S(2);
}

/// I2 from the line products:
/// ((A^B).(C^D) + (A^C).(B^D) - (A^D)^2/2 - (B^C)^2/2) / 6.
template <Scalar S>
S invariant_I2(const FourQubitState<S> &z) {
    const auto c = columns(z);
    const auto AB = wedge2(c.A, c.B), CD = wedge2(c.C, c.D);
    const auto AC = wedge2(c.A, c.C), BD = wedge2(c.B, c.D);
    const auto AD = wedge2(c.A, c.D), BC = wedge2(c.B, c.C);
    const S half = ratio<S>(1, 2);
    return (bivector_dot(AB, CD) + bivector_dot(AC, BD) - half * bivector_dot(AD, AD) - half * bivector_dot(BC, BC)) /
           S(6);
}

/// I2 = (1/12) G^{IJ} P_I . P_J over the six Pluecker lines.
template <Scalar S>
S invariant_I2_pluecker(const PlueckerSet<S> &p) {
    const auto G = exterior_square_form<S>();
    S s(0);
    for (size_t i = 0; i < 6; ++i) {
        for (size_t j = 0; j < 6; ++j) {
            if (!(G[i][j] == S(0))) {
                s = s + G[i][j] * bivector_dot(p.lines[i], p.lines[j]);
            }
        }
    }
    return s / S(12);
}

/// I2 = (1/24) P^{mu nu} . P_{mu nu}, both line indices running over all
/// ordered pairs and raised with g.
template <Scalar S>
S invariant_I2_tensor(const PlueckerSet<S> &p) {
    const auto g = quadric_form<S>();
    S s(0);
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            if (mu == nu) continue;
            const int mu_up = 3 - mu, nu_up = 3 - nu;  // g is anti-diagonal
            if (mu_up == nu_up) continue;
            const S coeff = g[mu][mu_up] * g[nu][nu_up];
            s = s + coeff * bivector_dot(p.line(mu_up, nu_up), p.line(mu, nu));
        }
    }
    return s / S(24);
}

/// I3 = (a.d - b.c) / 2 over the dual points.
template <Scalar S>
S invariant_I3(const FourQubitState<S> &z) {
    const auto d = dual_points(z);
    return (dot(d.a, d.d) - dot(d.b, d.c)) / S(2);
}

/// I3 = ((A^C^D).(A^B^D) - (B^C^D).(A^B^C)) / 12.
template <Scalar S>
S invariant_I3_pluecker(const PlueckerSet<S> &p) {
    const auto &P123 = p.planes[0], &P023 = p.planes[1], &P013 = p.planes[2], &P012 = p.planes[3];
    return (trivector_dot(P023, P013) - trivector_dot(P123, P012)) / S(12);
}

/// I3 = (1/144) P^{mu nu rho} . P_{mu nu rho} over all ordered triples.
template <Scalar S>
S invariant_I3_tensor(const PlueckerSet<S> &p) {
    // P_{mu nu rho} for ordered distinct triples, from the four stored planes.
    auto plane = [&](int mu, int nu, int rho) {
        std::array<int, 3> idx{mu, nu, rho};
        int sign = 1;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 2 - i; ++j) {
                if (idx[j] > idx[j + 1]) {
                    std::swap(idx[j], idx[j + 1]);
                    sign = -sign;
                }
            }
        }
        const int missing = 6 - idx[0] - idx[1] - idx[2];  // P123 misses 0, ..., P012 misses 3
        Trivector<S> t = p.planes[missing];
        if (sign < 0) {
            for (auto &c : t.c) c = -c;
        }
        return t;
    };
    const auto g = quadric_form<S>();
    S s(0);
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            for (int rho = 0; rho < 4; ++rho) {
                if (mu == nu || nu == rho || mu == rho) continue;
                const S coeff = g[mu][3 - mu] * g[nu][3 - nu] * g[rho][3 - rho];
                s = s + coeff * trivector_dot(plane(3 - mu, 3 - nu, 3 - rho), plane(mu, nu, rho));
            }
        }
    }
    return s / S(144);
}

/// I4 = L = det(matrix_L).
template <Scalar S>
S invariant_I4(const FourQubitState<S> &z) {
    return determinant(matrix_L(z));
}

// ---------------------------------------------------------------------------
// Sextic covariants.

/// The 3x3 matrix of the biquadratic Hessian covariant for the variable pair
/// (u, v): differentiate the quadrilinear form twice with respect to the
/// complementary pair (w, s), take the 2x2 determinant, and read the
/// coefficient of u-monomial (u0^2, u0u1, u1^2)[r] times v-monomial [c] into
/// entry (r, c). Qubits are numbered 0..3 for x, y, z, t.
template <Scalar S>
Matrix<S, 3> biquadratic_form(const FourQubitState<S> &z, int u, int v) {
    int rest[2];
    int n = 0;
    for (int q = 0; q < 4; ++q) {
        if (q != u && q != v) rest[n++] = q;
    }
    const int w = rest[0], s = rest[1];
    // h[a][b][p][q]: coefficient of u_p v_q in d^2 Z / dw_a ds_b.
    S h[2][2][2][2];
    for (int r = 0; r < 16; ++r) {
        const auto bits = binary_index(r);
        h[bits[w]][bits[s]][bits[u]][bits[v]] = z[r];
    }
    Matrix<S, 3> B;
    for (auto &row : B) row.fill(S(0));
    for (int p = 0; p < 2; ++p) {
        for (int p2 = 0; p2 < 2; ++p2) {
            for (int q = 0; q < 2; ++q) {
                for (int q2 = 0; q2 < 2; ++q2) {
                    B[p + p2][q + q2] = B[p + p2][q + q2] + h[0][0][p][q] * h[1][1][p2][q2] -
                                        h[0][1][p][q] * h[1][0][p2][q2];
                }
            }
        }
    }
    return B;
}

template <Scalar S>
struct SexticCovariants {
    S xy, zt, xz, yt, xt, yz;
};

template <Scalar S>
SexticCovariants<S> sextic_covariants(const FourQubitState<S> &z) {
    auto D = [&](int u, int v) { return determinant(biquadratic_form(z, u, v)); };
    return {D(0, 1), D(2, 3), D(0, 2), D(1, 3), D(0, 3), D(1, 2)};
}

// ---------------------------------------------------------------------------
// Assembly and relation checks.

template <Scalar S>
InvariantSet<S> compute_invariants(const FourQubitState<S> &z) {
    InvariantSet<S> inv;
    inv.I1 = invariant_I1(z);
    inv.I2 = invariant_I2(z);
    inv.I3 = invariant_I3(z);
    inv.L = determinant(matrix_L(z));
    inv.I4 = inv.L;
    inv.H = invariant_H(z);
    inv.M = determinant(matrix_M(z));
    inv.N = determinant(matrix_N(z));
    inv.U = inv.H * inv.H - S(4) * (inv.L + inv.M);
    const auto d = sextic_covariants(z);
    inv.D_xy = d.xy;
    inv.D_zt = d.zt;
    inv.D_xz = d.xz;
    inv.D_yt = d.yt;
    inv.D_xt = d.xt;
    inv.D_yz = d.yz;
    inv.D = d.xt;
    return inv;
}

/// A polynomial relation lhs == rhs between invariants.
template <Scalar S>
struct Relation {
    std::string name;
    S lhs, rhs;
};

/// Error of one relation: 0/1 in exact mode (0 iff equal), relative error
/// |lhs - rhs| / max(|lhs|, |rhs|) otherwise (0 when both vanish).
/// A positive `floor` replaces the denominator when both sides are smaller.
template <Scalar S>
double relation_error(const S &lhs, const S &rhs, double floor = 0.0) {
    if constexpr (is_exact_v<S>) {
        return lhs == rhs ? 0.0 : 1.0;
    } else {
        const double scale = std::max({magnitude(lhs), magnitude(rhs), floor});
        return scale == 0 ? 0.0 : magnitude(lhs - rhs) / scale;
    }
}

/// The relations every InvariantSet satisfies.
///
/// U uses the sign consistent with M = det(matrix_M): U = 6(I2 - I4).
template <Scalar S>
std::vector<Relation<S>> invariant_relations(const InvariantSet<S> &inv) {
    const S half = ratio<S>(1, 2);
    return {
        {"H = 2 I1", inv.H, S(2) * inv.I1},
        {"I4 = L", inv.I4, inv.L},
        {"M = L + N", inv.M, inv.L + inv.N},
        {"6 I2 = H^2 + 2L - 4M", S(6) * inv.I2, inv.H * inv.H + S(2) * inv.L - S(4) * inv.M},
        {"U = H^2 - 4(L + M)", inv.U, inv.H * inv.H - S(4) * (inv.L + inv.M)},
        {"U = 6(I2 - I4)", inv.U, S(6) * (inv.I2 - inv.I4)},
        {"D_xy = D_zt", inv.D_xy, inv.D_zt},
        {"D_xz = D_yt", inv.D_xz, inv.D_yt},
        {"D_xt = D_yz", inv.D_xt, inv.D_yz},
        {"I3 = (D_xz + D_xt)/2", inv.I3, half * (inv.D_xz + inv.D_xt)},
        {"D_xz - D_xt = H L", inv.D_xz - inv.D_xt, inv.H * inv.L},
        {"I3 = D + H L/2", inv.I3, inv.D + half * inv.H * inv.L},
    };
}

/// Raised by full_invariant_set when a cross-check fails.
class InvariantCheckError : public std::runtime_error {
  public:
    InvariantCheckError(std::string relation, double error)
        : std::runtime_error("invariant relation failed: " + relation + " (error " + std::to_string(error) + ")"),
          relation_(std::move(relation)),
          error_(error) {}
    const std::string &relation() const { return relation_; }
    double error() const { return error_; }

  private:
    std::string relation_;
    double error_;
};

/// All invariants of a state, cross-checked. In floating mode each relation
/// must hold to relative `tol`; in exact mode exactly.
template <Scalar S>
InvariantSet<S> full_invariant_set(const FourQubitState<S> &z, double tol = 1e-9) {
    InvariantSet<S> inv = compute_invariants(z);
    for (const auto &rel : invariant_relations(inv)) {
        const double err = relation_error(rel.lhs, rel.rhs);
        if (err > (is_exact_v<S> ? 0.0 : tol)) {
            throw InvariantCheckError(rel.name, err);
        }
    }
    return inv;
}

}  // namespace quartet
