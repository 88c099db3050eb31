#pragma once

// Exterior algebra over C^4 carrying the fixed quadric g = eps (x) eps.
//
// Conventions:
//   * g = [[0,0,0,1],[0,0,-1,0],[0,-1,0,0],[1,0,0,0]]; g*g = 1 so raising and
//     lowering an index are the same map v -> g v.
//   * eps_{0123} = +1. det g = +1, hence eps^{0123} = +1 as well.
//   * Bivectors store the six components 01,02,03,12,13,23.
//   * Trivectors store the four components 012,013,023,123.
//   * Hodge duality squares to +1 under these conventions, so the self-dual
//     and anti-self-dual parts are the +1 and -1 eigenspaces.

#include <array>
#include <string_view>
#include <utility>

#include "quartet/state.hpp"

namespace quartet {

template <Scalar S>
struct Vector4 {
    std::array<S, 4> v{S(0), S(0), S(0), S(0)};

    Vector4() = default;
    Vector4(S a, S b, S c, S d) : v{a, b, c, d} {}

    S &operator[](size_t i) { return v[i]; }
    const S &operator[](size_t i) const { return v[i]; }

    friend Vector4 operator+(const Vector4 &a, const Vector4 &b) {
        return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
    }
    friend Vector4 operator-(const Vector4 &a, const Vector4 &b) {
        return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
    }
    friend Vector4 operator*(const S &c, const Vector4 &a) { return {c * a[0], c * a[1], c * a[2], c * a[3]}; }
    friend bool operator==(const Vector4 &a, const Vector4 &b) { return a.v == b.v; }
};

/// Bivector index pairs in storage order.
inline constexpr std::array<std::pair<int, int>, 6> kBivectorIndex{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
inline constexpr std::array<std::string_view, 6> kLineLabels{"P01", "P02", "P03", "P12", "P13", "P23"};

/// Storage slot of the ordered pair (a,b), a != b, and the sign relating
/// p_{ab} to the stored component.
constexpr std::pair<int, int> bivector_slot(int a, int b) {
    const int lo = a < b ? a : b;
    const int hi = a < b ? b : a;
    const int sign = a < b ? 1 : -1;
    constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return {table[lo][hi], sign};
}

template <Scalar S>
struct Bivector {
    std::array<S, 6> c{S(0), S(0), S(0), S(0), S(0), S(0)};

    /// Antisymmetric-array view p_{ab}.
    S at(int a, int b) const {
        if (a == b) {
            return S(0);
        }
        auto [slot, sign] = bivector_slot(a, b);
        return sign > 0 ? c[slot] : -c[slot];
    }

    Matrix4<S> to_matrix() const {
        Matrix4<S> m;
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                m[a][b] = at(a, b);
            }
        }
        return m;
    }

    /// Reads the upper triangle; the caller guarantees antisymmetry.
    static Bivector from_matrix(const Matrix4<S> &m) {
        Bivector p;
        for (size_t i = 0; i < 6; ++i) {
            p.c[i] = m[kBivectorIndex[i].first][kBivectorIndex[i].second];
        }
        return p;
    }

    friend Bivector operator+(const Bivector &a, const Bivector &b) {
        Bivector r;
        for (size_t i = 0; i < 6; ++i) r.c[i] = a.c[i] + b.c[i];
        return r;
    }
    friend Bivector operator-(const Bivector &a, const Bivector &b) {
        Bivector r;
        for (size_t i = 0; i < 6; ++i) r.c[i] = a.c[i] - b.c[i];
        return r;
    }
    friend Bivector operator*(const S &s, const Bivector &a) {
        Bivector r;
        for (size_t i = 0; i < 6; ++i) r.c[i] = s * a.c[i];
        return r;
    }
    friend Bivector operator-(const Bivector &a) { return S(-1) * a; }
    friend bool operator==(const Bivector &a, const Bivector &b) { return a.c == b.c; }
};

inline constexpr std::array<std::array<int, 3>, 4> kTrivectorIndex{{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};

template <Scalar S>
struct Trivector {
    std::array<S, 4> c{S(0), S(0), S(0), S(0)};

    /// Totally antisymmetric view p_{abc}.
    S at(int a, int b, int c3) const {
        if (a == b || b == c3 || a == c3) {
            return S(0);
        }
        std::array<int, 3> idx{a, b, c3};
        int sign = 1;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 2 - i; ++j) {
                if (idx[j] > idx[j + 1]) {
                    std::swap(idx[j], idx[j + 1]);
                    sign = -sign;
                }
            }
        }
        const int missing = 6 - idx[0] - idx[1] - idx[2];
        const int slot = 3 - missing;  // 012 misses 3 -> slot 0, ..., 123 misses 0 -> slot 3
        return sign > 0 ? c[slot] : -c[slot];
    }

    friend bool operator==(const Trivector &a, const Trivector &b) { return a.c == b.c; }
};

// ---------------------------------------------------------------------------
// The quadric and its exterior square.

/// The fixed symmetric form g of the quadric dot(v, v) = 0.
template <Scalar S>
Matrix4<S> quadric_form() {
    Matrix4<S> g;
    for (auto &row : g) row.fill(S(0));
    g[0][3] = S(1);
    g[1][2] = S(-1);
    g[2][1] = S(-1);
    g[3][0] = S(1);
    return g;
}

/// Second exterior power of a 4x4 matrix on the basis 01,02,03,12,13,23:
/// (M^(2))_{IJ} = M_{i1 j1} M_{i2 j2} - M_{i1 j2} M_{i2 j1}.
template <Scalar S>
Matrix<S, 6> exterior_square(const Matrix4<S> &m) {
    Matrix<S, 6> out;
    for (size_t i = 0; i < 6; ++i) {
        auto [a, b] = kBivectorIndex[i];
        for (size_t j = 0; j < 6; ++j) {
            auto [c, d] = kBivectorIndex[j];
            out[i][j] = m[a][c] * m[b][d] - m[a][d] * m[b][c];
        }
    }
    return out;
}

/// The form G_IJ on bivectors, as tabulated (and equal to exterior_square(g)).
template <Scalar S>
Matrix<S, 6> exterior_square_form() {
    Matrix<S, 6> G;
    for (auto &row : G) row.fill(S(0));
    G[0][5] = S(1);
    G[1][4] = S(1);
    G[2][2] = S(-1);
    G[3][3] = S(-1);
    G[4][1] = S(1);
    G[5][0] = S(1);
    return G;
}

/// v^a = g^{ab} v_b.
template <Scalar S>
Vector4<S> raise(const Vector4<S> &x) {
    return {x[3], -x[2], -x[1], x[0]};
}

/// x . y = g_{ab} x^a y^b = x0 y3 - x1 y2 - x2 y1 + x3 y0.
template <Scalar S>
S dot(const Vector4<S> &x, const Vector4<S> &y) {
    return x[0] * y[3] - x[1] * y[2] - x[2] * y[1] + x[3] * y[0];
}

// ---------------------------------------------------------------------------
// Wedges and contractions.

template <Scalar S>
Bivector<S> wedge2(const Vector4<S> &x, const Vector4<S> &y) {
    Bivector<S> p;
    for (size_t i = 0; i < 6; ++i) {
        auto [a, b] = kBivectorIndex[i];
        p.c[i] = x[a] * y[b] - x[b] * y[a];
    }
    return p;
}

/// (x^y^z)_{abc} = 3! x_[a y_b z_c] (a 3x3 determinant per component).
template <Scalar S>
Trivector<S> wedge3(const Vector4<S> &x, const Vector4<S> &y, const Vector4<S> &z) {
    Trivector<S> t;
    for (size_t i = 0; i < 4; ++i) {
        const auto [a, b, c] = kTrivectorIndex[i];
        t.c[i] = x[a] * (y[b] * z[c] - y[c] * z[b]) - x[b] * (y[a] * z[c] - y[c] * z[a]) +
                 x[c] * (y[a] * z[b] - y[b] * z[a]);
    }
    return t;
}

/// Index-raised bivector p^{ab} = g^{ac} g^{bd} p_{cd}.
template <Scalar S>
Bivector<S> raise(const Bivector<S> &p) {
    // g maps 0<->3 (+), 1<->2 (-); on pairs: 01->32, 02->31, 03->30, 12->21, 13->20, 23->10.
    Bivector<S> r;
    r.c[0] = -p.at(3, 2);
    r.c[1] = -p.at(3, 1);
    r.c[2] = p.at(3, 0);
    r.c[3] = p.at(2, 1);
    r.c[4] = -p.at(2, 0);
    r.c[5] = -p.at(1, 0);
    return r;
}

/// p . q = p_{ab} q^{ab}, summed over all ordered index pairs.
template <Scalar S>
S bivector_dot(const Bivector<S> &p, const Bivector<S> &q) {
    const Bivector<S> qu = raise(q);
    S s(0);
    for (size_t i = 0; i < 6; ++i) {
        s = s + p.c[i] * qu.c[i];
    }
    return S(2) * s;
}

/// p . q = p_{abc} q^{abc}, summed over all ordered index triples.
template <Scalar S>
S trivector_dot(const Trivector<S> &p, const Trivector<S> &q) {
    // Raising maps the missing index m to 3 - m; the sign is the product of
    // the g entries (-1 for indices 1 and 2) of the three raised indices.
    //   012 <- 321: g-sign (+)(-)(-)=+, sort 321->123 odd  => -q123
    //   013 <- 320: (+)(-)(+)=-, sort 320->023 odd        => +q023
    //   023 <- 310: (+)(-)(+)=-, sort 310->013 odd        => +q013
    //   123 <- 210: (-)(-)(+)=+, sort 210->012 odd        => -q012
    const S s = -p.c[0] * q.c[3] + p.c[1] * q.c[2] + p.c[2] * q.c[1] - p.c[3] * q.c[0];
    return S(6) * s;
}

/// <p, q> = 1/4 eps^{abcd} p_{ab} q_{cd}.
template <Scalar S>
S bracket(const Bivector<S> &p, const Bivector<S> &q) {
    const auto &a = p.c;
    const auto &b = q.c;
    // Each of the six complementary pairs occurs in 4 orderings of eps.
    return a[0] * b[5] - a[1] * b[4] + a[2] * b[3] + a[3] * b[2] - a[4] * b[1] + a[5] * b[0];
}

/// (*p)_{ab} = 1/2 eps_{abcd} p^{cd}.
template <Scalar S>
Bivector<S> hodge_dual(const Bivector<S> &p) {
    const Bivector<S> u = raise(p);
    Bivector<S> r;
    r.c[0] = u.c[5];   // 01 <- 23
    r.c[1] = -u.c[4];  // 02 <- 13
    r.c[2] = u.c[3];   // 03 <- 12
    r.c[3] = u.c[2];   // 12 <- 03
    r.c[4] = -u.c[1];  // 13 <- 02
    r.c[5] = u.c[0];   // 23 <- 01
    return r;
}

/// ** = duality_square_sign * identity.
inline constexpr int duality_square_sign = +1;

template <Scalar S>
struct SelfDualSplit {
    Bivector<S> plus;   // *plus = +plus
    Bivector<S> minus;  // *minus = -minus
};

template <Scalar S>
SelfDualSplit<S> selfdual_split(const Bivector<S> &p) {
    const Bivector<S> d = hodge_dual(p);
    const S half = ratio<S>(1, 2);
    return {half * (p + d), half * (p - d)};
}

// ---------------------------------------------------------------------------
// Points, lines and planes of a four-qubit state.

template <Scalar S>
struct Columns {
    Vector4<S> A, B, C, D;

    const Vector4<S> &operator[](size_t mu) const {
        switch (mu) {
            case 0: return A;
            case 1: return B;
            case 2: return C;
            default: return D;
        }
    }
};

/// Columns of matrix_L: A = Z_{00kl}, B = Z_{01kl}, C = Z_{10kl}, D = Z_{11kl}.
template <Scalar S>
Columns<S> columns(const FourQubitState<S> &z) {
    auto col = [&](int c) { return Vector4<S>(z[4 * c], z[4 * c + 1], z[4 * c + 2], z[4 * c + 3]); };
    return {col(0), col(1), col(2), col(3)};
}

/// Plane coordinates (lower index) dual to three points:
/// w_a = eps_{abcd} x^b y^c z^d.
template <Scalar S>
Vector4<S> plane_through(const Vector4<S> &x, const Vector4<S> &y, const Vector4<S> &z) {
    const Vector4<S> xu = raise(x), yu = raise(y), zu = raise(z);
    // eps_{a bcd} with a fixed is the cofactor of the remaining 3x3 block.
    auto det3 = [](const S &a0, const S &a1, const S &a2, const S &b0, const S &b1, const S &b2, const S &c0,
                   const S &c1, const S &c2) {
        return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0);
    };
    Vector4<S> w;
    w[0] = det3(xu[1], xu[2], xu[3], yu[1], yu[2], yu[3], zu[1], zu[2], zu[3]);
    w[1] = -det3(xu[0], xu[2], xu[3], yu[0], yu[2], yu[3], zu[0], zu[2], zu[3]);
    w[2] = det3(xu[0], xu[1], xu[3], yu[0], yu[1], yu[3], zu[0], zu[1], zu[3]);
    w[3] = -det3(xu[0], xu[1], xu[2], yu[0], yu[1], yu[2], zu[0], zu[1], zu[2]);
    return w;
}

template <Scalar S>
struct DualPoints {
    Vector4<S> a, b, c, d;
};

/// a = -eps B C D, b = +eps A C D, c = +eps A B D, d = -eps A B C, with the
/// free index in the position of the omitted point.
template <Scalar S>
DualPoints<S> dual_points(const Vector4<S> &A, const Vector4<S> &B, const Vector4<S> &C, const Vector4<S> &D) {
    // Moving the free index of eps to the front costs (-1)^position.
    const Vector4<S> a = S(-1) * plane_through(B, C, D);
    const Vector4<S> b = S(-1) * plane_through(A, C, D);
    const Vector4<S> c = plane_through(A, B, D);
    const Vector4<S> d = plane_through(A, B, C);
    return {a, b, c, d};
}

template <Scalar S>
DualPoints<S> dual_points(const FourQubitState<S> &z) {
    const auto cols = columns(z);
    return dual_points(cols.A, cols.B, cols.C, cols.D);
}

template <Scalar S>
struct PlueckerSet {
    std::array<Bivector<S>, 6> lines;     // P01, P02, P03, P12, P13, P23
    std::array<Trivector<S>, 4> planes;   // P123, P023, P013, P012

    /// Line P_{mu nu} with the antisymmetric sign for mu > nu.
    Bivector<S> line(int mu, int nu) const {
        auto [slot, sign] = bivector_slot(mu, nu);
        return sign > 0 ? lines[slot] : -lines[slot];
    }
};

inline constexpr std::array<std::string_view, 4> kPlaneLabels{"P123", "P023", "P013", "P012"};

template <Scalar S>
PlueckerSet<S> pluecker_set(const FourQubitState<S> &z) {
    const auto cols = columns(z);
    PlueckerSet<S> set;
    for (size_t i = 0; i < 6; ++i) {
        auto [mu, nu] = kBivectorIndex[i];
        set.lines[i] = wedge2(cols[mu], cols[nu]);
    }
    set.planes[0] = wedge3(cols.B, cols.C, cols.D);
    set.planes[1] = wedge3(cols.A, cols.C, cols.D);
    set.planes[2] = wedge3(cols.A, cols.B, cols.D);
    set.planes[3] = wedge3(cols.A, cols.B, cols.C);
    return set;
}

// ---------------------------------------------------------------------------
// Lines against the quadric.

enum class LineQuadricClass { TwoPoints, Tangent, Isotropic, DegenerateLine };

inline std::string_view to_string(LineQuadricClass c) {
    switch (c) {
        case LineQuadricClass::TwoPoints: return "TwoPoints";
        case LineQuadricClass::Tangent: return "Tangent";
        case LineQuadricClass::Isotropic: return "Isotropic";
        case LineQuadricClass::DegenerateLine: return "DegenerateLine";
    }
    return "?";
}

template <Scalar S>
struct LineQuadricReport {
    LineQuadricClass cls;
    S xx, xy, yy;
    S discriminant;  // (x.y)^2 - (x.x)(y.y)
};

/// Classifies the line through x and y by the roots of
/// mu^2 (x.x) + 2 mu lambda (x.y) + lambda^2 (y.y). `tol` is relative to
/// |x|^2 |y|^2 and ignored in exact mode.
template <Scalar S>
LineQuadricReport<S> line_quadric_report(const Vector4<S> &x, const Vector4<S> &y, double tol = 1e-12) {
    LineQuadricReport<S> r{LineQuadricClass::DegenerateLine, dot(x, x), dot(x, y), dot(y, y), S(0)};
    r.discriminant = r.xy * r.xy - r.xx * r.yy;

    double nx = 0, ny = 0;
    for (int i = 0; i < 4; ++i) {
        nx += std::norm(to_complex(x[i]));
        ny += std::norm(to_complex(y[i]));
    }
    const double scale = nx * ny;
    const double unit = std::sqrt(scale);

    // Proportional (or vanishing) generators span no line.
    const Bivector<S> w = wedge2(x, y);
    bool proportional = true;
    for (const auto &c : w.c) {
        proportional = proportional && is_zero(c, tol * unit);
    }
    if (proportional) {
        return r;
    }
    if (is_zero(r.xx, tol * unit) && is_zero(r.xy, tol * unit) && is_zero(r.yy, tol * unit)) {
        r.cls = LineQuadricClass::Isotropic;
    } else if (is_zero(r.discriminant, tol * scale)) {
        r.cls = LineQuadricClass::Tangent;
    } else {
        r.cls = LineQuadricClass::TwoPoints;
    }
    return r;
}

template <Scalar S>
LineQuadricClass line_quadric_classify(const Vector4<S> &x, const Vector4<S> &y, double tol = 1e-12) {
    return line_quadric_report(x, y, tol).cls;
}

/// The line of a three-qubit state: x = Z_{0jk}, y = Z_{1jk}.
template <Scalar S>
std::pair<Vector4<S>, Vector4<S>> three_qubit_line(const ThreeQubitState<S> &z) {
    return {Vector4<S>(z[0], z[1], z[2], z[3]), Vector4<S>(z[4], z[5], z[6], z[7])};
}

template <Scalar S>
LineQuadricReport<S> classify_three_qubit(const ThreeQubitState<S> &z, double tol = 1e-12) {
    auto [x, y] = three_qubit_line(z);
    return line_quadric_report(x, y, tol);
}

}  // namespace quartet
