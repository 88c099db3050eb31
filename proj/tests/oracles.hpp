#pragma once

// Independent reference implementations used only by the tests. They favour
// brute force over cleverness: explicit epsilon sums, full index loops,
// Kronecker products and root products.

#include <algorithm>
#include <array>
#include <numeric>
#include <vector>

#include "quartet.hpp"

namespace oracle {

using namespace quartet;

/// Sign of a permutation of 0..n-1 by inversion count; 0 if not a bijection.
template <size_t N>
int perm_sign(const std::array<int, N> &p) {
    for (size_t i = 0; i < N; ++i) {
        for (size_t j = i + 1; j < N; ++j) {
            if (p[i] == p[j]) return 0;
        }
    }
    int inv = 0;
    for (size_t i = 0; i < N; ++i) {
        for (size_t j = i + 1; j < N; ++j) inv += p[i] > p[j];
    }
    return inv % 2 ? -1 : 1;
}

inline int eps4(int a, int b, int c, int d) { return perm_sign<4>({a, b, c, d}); }

/// g = eps (x) eps with eps = [[0, 1], [-1, 0]] and alpha = 2i + j.
template <Scalar S>
S g(int alpha, int beta) {
    const int e[2][2] = {{0, 1}, {-1, 0}};
    return S(e[alpha / 2][beta / 2] * e[alpha % 2][beta % 2]);
}

template <Scalar S>
S dot(const Vector4<S> &x, const Vector4<S> &y) {
    S s(0);
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) s = s + g<S>(a, b) * x[a] * y[b];
    }
    return s;
}

template <Scalar S>
using Tensor2 = std::array<std::array<S, 4>, 4>;

template <Scalar S>
Tensor2<S> wedge(const Vector4<S> &x, const Vector4<S> &y) {
    Tensor2<S> t;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) t[a][b] = x[a] * y[b] - x[b] * y[a];
    }
    return t;
}

template <Scalar S>
Tensor2<S> to_tensor(const Bivector<S> &p) {
    Tensor2<S> t;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) t[a][b] = p.at(a, b);
    }
    return t;
}

template <Scalar S>
Tensor2<S> raise(const Tensor2<S> &t) {
    Tensor2<S> u;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            S s(0);
            for (int c = 0; c < 4; ++c) {
                for (int d = 0; d < 4; ++d) s = s + g<S>(a, c) * g<S>(b, d) * t[c][d];
            }
            u[a][b] = s;
        }
    }
    return u;
}

/// p^{ab} q_{ab} over all ordered pairs.
template <Scalar S>
S full_contraction(const Tensor2<S> &p, const Tensor2<S> &q) {
    const auto pu = raise(p);
    S s(0);
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) s = s + pu[a][b] * q[a][b];
    }
    return s;
}

/// (1/4) eps^{abcd} p_ab q_cd with the upper symbol raised through g.
template <Scalar S>
S bracket(const Tensor2<S> &p, const Tensor2<S> &q) {
    S s(0);
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            for (int c = 0; c < 4; ++c) {
                for (int d = 0; d < 4; ++d) {
                    // eps^{abcd} = g^{aa'} g^{bb'} g^{cc'} g^{dd'} eps_{a'b'c'd'}
                    S up(0);
                    for (int a2 = 0; a2 < 4; ++a2) {
                        for (int b2 = 0; b2 < 4; ++b2) {
                            for (int c2 = 0; c2 < 4; ++c2) {
                                for (int d2 = 0; d2 < 4; ++d2) {
                                    const int e = eps4(a2, b2, c2, d2);
                                    if (e == 0) continue;
                                    up = up + S(e) * g<S>(a, a2) * g<S>(b, b2) * g<S>(c, c2) * g<S>(d, d2);
                                }
                            }
                        }
                    }
                    s = s + up * p[a][b] * q[c][d];
                }
            }
        }
    }
    return s / S(4);
}

/// (*p)_ab = (1/2) eps_abcd p^cd.
template <Scalar S>
Tensor2<S> hodge(const Tensor2<S> &p) {
    const auto pu = raise(p);
    Tensor2<S> t;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            S s(0);
            for (int c = 0; c < 4; ++c) {
                for (int d = 0; d < 4; ++d) s = s + S(eps4(a, b, c, d)) * pu[c][d];
            }
            t[a][b] = s / S(2);
        }
    }
    return t;
}

template <Scalar S>
using Tensor3 = std::array<std::array<std::array<S, 4>, 4>, 4>;

/// 3! x_[a y_b z_c] by summing over the six orderings.
template <Scalar S>
Tensor3<S> wedge(const Vector4<S> &x, const Vector4<S> &y, const Vector4<S> &z) {
    Tensor3<S> t;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            for (int c = 0; c < 4; ++c) {
                const std::array<int, 3> idx{a, b, c};
                std::array<int, 3> p{0, 1, 2};
                S s(0);
                do {
                    const int sg = perm_sign<3>(p);
                    const Vector4<S> *v[3] = {&x, &y, &z};
                    s = s + S(sg) * (*v[p[0]])[idx[0]] * (*v[p[1]])[idx[1]] * (*v[p[2]])[idx[2]];
                } while (std::next_permutation(p.begin(), p.end()));
                t[a][b][c] = s;
            }
        }
    }
    return t;
}

template <Scalar S>
S full_contraction(const Tensor3<S> &p, const Tensor3<S> &q) {
    S s(0);
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            for (int c = 0; c < 4; ++c) {
                S up(0);
                for (int d = 0; d < 4; ++d) {
                    for (int e = 0; e < 4; ++e) {
                        for (int f = 0; f < 4; ++f) {
                            up = up + g<S>(a, d) * g<S>(b, e) * g<S>(c, f) * p[d][e][f];
                        }
                    }
                }
                s = s + up * q[a][b][c];
            }
        }
    }
    return s;
}

/// Column mu of matrix_L as a vector: (Z_{4 mu}, ..., Z_{4 mu + 3}).
template <Scalar S>
Vector4<S> column(const FourQubitState<S> &z, int mu) {
    return {z[4 * mu], z[4 * mu + 1], z[4 * mu + 2], z[4 * mu + 3]};
}

// ---------------------------------------------------------------------------
// Polynomials.

/// Coefficients (ascending) of prod (w - x_i).
template <Scalar S>
std::vector<S> poly_from_roots(const std::vector<S> &roots) {
    std::vector<S> c{S(1)};
    for (const S &x : roots) {
        std::vector<S> n(c.size() + 1, S(0));
        for (size_t i = 0; i < c.size(); ++i) {
            n[i + 1] = n[i + 1] + c[i];
            n[i] = n[i] - x * c[i];
        }
        c = n;
    }
    return c;
}

template <Scalar S>
QuarticPolynomial<S> quartic_from_roots(const std::array<S, 4> &r) {
    const auto c = poly_from_roots(std::vector<S>(r.begin(), r.end()));
    return {c[4], c[3], c[2], c[1], c[0]};
}

template <Scalar S>
S root_product_discriminant(const std::vector<S> &roots) {
    S d(1);
    for (size_t i = 0; i < roots.size(); ++i) {
        for (size_t j = i + 1; j < roots.size(); ++j) d = d * (roots[i] - roots[j]) * (roots[i] - roots[j]);
    }
    return d;
}

/// e_k by summing over all k-subsets.
template <Scalar S>
S elementary(const std::array<S, 4> &x, int k) {
    S s(0);
    for (int mask = 0; mask < 16; ++mask) {
        if (__builtin_popcount(mask) != k) continue;
        S p(1);
        for (int i = 0; i < 4; ++i) {
            if (mask >> i & 1) p = p * x[i];
        }
        s = s + p;
    }
    return s;
}

/// Cayley's hyperdeterminant as the discriminant in lambda of
/// det(A + lambda B) with A = Z_0jk and B = Z_1jk as 2x2 matrices.
template <Scalar S>
S det3_by_pencil(const ThreeQubitState<S> &z) {
    // det((a00 + l b00)(a11 + l b11) - (a01 + l b01)(a10 + l b10)) = c0 + c1 l + c2 l^2
    const S a00 = z[0], a01 = z[1], a10 = z[2], a11 = z[3];
    const S b00 = z[4], b01 = z[5], b10 = z[6], b11 = z[7];
    const S c0 = a00 * a11 - a01 * a10;
    const S c1 = a00 * b11 + b00 * a11 - a01 * b10 - b01 * a10;
    const S c2 = b00 * b11 - b01 * b10;
    return c1 * c1 - S(4) * c0 * c2;
}

// ---------------------------------------------------------------------------
// Group actions and rank.

/// Z' = (s1 (x) s2 (x) s3 (x) s4) Z as an explicit 16 x 16 product.
template <Scalar S>
FourQubitState<S> kron_apply(const FourQubitState<S> &z, const std::array<std::array<S, 4>, 4> &s) {
    std::array<S, 16> out;
    for (int r = 0; r < 16; ++r) {
        S acc(0);
        for (int c = 0; c < 16; ++c) {
            S k(1);
            for (int q = 0; q < 4; ++q) {
                const int bit_r = r >> (3 - q) & 1, bit_c = c >> (3 - q) & 1;
                k = k * s[q][2 * bit_r + bit_c];
            }
            acc = acc + k * z[c];
        }
        out[r] = acc;
    }
    return FourQubitState<S>(out);
}

/// Rank of a 4x4 matrix as the largest k with a nonzero k x k minor.
template <Scalar S>
int rank_by_minors(const Matrix4<S> &m, double tol) {
    auto minor_det = [&](const std::vector<int> &rows, const std::vector<int> &cols) {
        const size_t k = rows.size();
        // Leibniz expansion.
        std::vector<int> p(k);
        std::iota(p.begin(), p.end(), 0);
        S d(0);
        do {
            int inv = 0;
            for (size_t i = 0; i < k; ++i) {
                for (size_t j = i + 1; j < k; ++j) inv += p[i] > p[j];
            }
            S t(inv % 2 ? -1 : 1);
            for (size_t i = 0; i < k; ++i) t = t * m[rows[i]][cols[p[i]]];
            d = d + t;
        } while (std::next_permutation(p.begin(), p.end()));
        return d;
    };
    double scale = 0;
    for (const auto &row : m) {
        for (const auto &x : row) scale = std::max(scale, magnitude(x));
    }
    for (int k = 4; k >= 1; --k) {
        for (int rm = 0; rm < 16; ++rm) {
            if (__builtin_popcount(rm) != k) continue;
            for (int cm = 0; cm < 16; ++cm) {
                if (__builtin_popcount(cm) != k) continue;
                std::vector<int> rows, cols;
                for (int i = 0; i < 4; ++i) {
                    if (rm >> i & 1) rows.push_back(i);
                    if (cm >> i & 1) cols.push_back(i);
                }
                if (!is_zero(minor_det(rows, cols), tol * std::pow(scale, k))) return k;
            }
        }
    }
    return 0;
}

}  // namespace oracle
