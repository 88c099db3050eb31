#pragma once

// Hyperdeterminants of formats 2x2, 2x2x2 and 2x2x2x2. The 2x2x2x2 one
// (degree 24, never expanded) is computed by three independent routes:
//   st        S^3 - 27 T^2 with S, T polynomial in I1..I4,
//   quartic   discriminant of w^4 - 4I1 w^3 + 6I2 w^2 - 4I3 w + I4^2, / 256,
//   schlaefli discriminant in lambda of det3(Z_0jkl + lambda Z_1jkl), / 256.

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "quartet/invariants.hpp"

namespace quartet {

/// e4 w^4 + e3 w^3 + e2 w^2 + e1 w + e0.
template <Scalar S>
struct QuarticPolynomial {
    S e4, e3, e2, e1, e0;

    S operator()(const S &w) const { return (((e4 * w + e3) * w + e2) * w + e1) * w + e0; }

    /// Coefficients from the constant term up.
    std::array<S, 5> ascending() const { return {e0, e1, e2, e3, e4}; }
};

/// Discriminant of the binary quartic (a leading coefficient of zero is
/// treated as a root at infinity). For monic p with roots x_i it equals
/// prod_{i<j} (x_i - x_j)^2.
template <Scalar S>
S quartic_discriminant(const QuarticPolynomial<S> &p) {
    const S &a = p.e4, &b = p.e3, &c = p.e2, &d = p.e1, &e = p.e0;
    const S a2 = a * a, b2 = b * b, c2 = c * c, d2 = d * d, e2 = e * e;
    return S(256) * a2 * a * e2 * e - S(192) * a2 * b * d * e2 - S(128) * a2 * c2 * e2 + S(144) * a2 * c * d2 * e -
           S(27) * a2 * d2 * d2 + S(144) * a * b2 * c * e2 - S(6) * a * b2 * d2 * e - S(80) * a * b * c2 * d * e +
           S(18) * a * b * c * d2 * d + S(16) * a * c2 * c2 * e - S(4) * a * c2 * c * d2 - S(27) * b2 * b2 * e2 +
           S(18) * b2 * b * c * d * e - S(4) * b2 * b * d2 * d - S(4) * b2 * c2 * c * e + b2 * c2 * d2;
}

/// The quartic whose roots on the generic orbit are (a^2, b^2, c^2, d^2).
template <Scalar S>
QuarticPolynomial<S> invariant_quartic(const S &I1, const S &I2, const S &I3, const S &I4) {
    return {S(1), S(-4) * I1, S(6) * I2, S(-4) * I3, I4 * I4};
}

template <Scalar S>
QuarticPolynomial<S> invariant_quartic(const InvariantSet<S> &inv) {
    return invariant_quartic(inv.I1, inv.I2, inv.I3, inv.I4);
}

// ---------------------------------------------------------------------------
// Two and three qubits.

/// Z00 Z11 - Z01 Z10; the concurrence is 2|det2|.
template <class R>
R det2(const R &z00, const R &z01, const R &z10, const R &z11) {
    return z00 * z11 - z01 * z10;
}

template <Scalar S>
double concurrence(const S &z00, const S &z01, const S &z10, const S &z11) {
    return 2.0 * magnitude(det2(z00, z01, z10, z11));
}

/// Cayley's 2x2x2 hyperdeterminant (12 monomials), indices s = 4i + 2j + k.
/// Generic over any commutative ring so that pencils can be expanded exactly.
template <class R>
R det3(const std::array<R, 8> &a) {
    const R &a000 = a[0], &a001 = a[1], &a010 = a[2], &a011 = a[3];
    const R &a100 = a[4], &a101 = a[5], &a110 = a[6], &a111 = a[7];
    const R squares = a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 + a010 * a010 * a101 * a101 +
                      a100 * a100 * a011 * a011;
    const R mixed = a000 * a001 * a110 * a111 + a000 * a010 * a101 * a111 + a000 * a100 * a011 * a111 +
                    a001 * a010 * a101 * a110 + a001 * a100 * a011 * a110 + a010 * a100 * a011 * a101;
    const R cross = a000 * a011 * a101 * a110 + a001 * a010 * a100 * a111;
    return squares - R(2) * mixed + R(4) * cross;
}

template <Scalar S>
S det3(const ThreeQubitState<S> &z) {
    return det3(z.amplitudes());
}

/// Three-tangle 4|det3|.
template <Scalar S>
double three_tangle(const ThreeQubitState<S> &z) {
    return 4.0 * magnitude(det3(z));
}

// ---------------------------------------------------------------------------
// Polynomials in the pencil parameter.

/// Dense univariate polynomial, coefficients from the constant term up.
template <Scalar S>
struct Polynomial {
    std::vector<S> c;

    Polynomial() = default;
    Polynomial(int k) : c{S(k)} {}  // NOLINT(google-explicit-constructor)
    Polynomial(std::vector<S> coeffs) : c(std::move(coeffs)) {}

    S coeff(size_t k) const { return k < c.size() ? c[k] : S(0); }

    friend Polynomial operator+(const Polynomial &a, const Polynomial &b) {
        std::vector<S> r(std::max(a.c.size(), b.c.size()), S(0));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
        return Polynomial(std::move(r));
    }
    friend Polynomial operator-(const Polynomial &a, const Polynomial &b) {
        std::vector<S> r(std::max(a.c.size(), b.c.size()), S(0));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
        return Polynomial(std::move(r));
    }
    friend Polynomial operator*(const Polynomial &a, const Polynomial &b) {
        if (a.c.empty() || b.c.empty()) return Polynomial();
        std::vector<S> r(a.c.size() + b.c.size() - 1, S(0));
        for (size_t i = 0; i < a.c.size(); ++i) {
            for (size_t j = 0; j < b.c.size(); ++j) {
                r[i + j] = r[i + j] + a.c[i] * b.c[j];
            }
        }
        return Polynomial(std::move(r));
    }
};

/// The pencil coefficients h_0..h_4 of det3(Z_0jkl + lambda Z_1jkl) by exact
/// symbolic expansion.
template <Scalar S>
QuarticPolynomial<S> pencil_expanded(const FourQubitState<S> &z) {
    std::array<Polynomial<S>, 8> slice;
    for (int s = 0; s < 8; ++s) {
        slice[s] = Polynomial<S>(std::vector<S>{z[s], z[8 + s]});
    }
    const Polynomial<S> h = det3(slice);
    return {h.coeff(4), h.coeff(3), h.coeff(2), h.coeff(1), h.coeff(0)};
}

/// Raised when the interpolated pencil fails its consistency check.
class IllConditionedPencil : public std::runtime_error {
  public:
    explicit IllConditionedPencil(double residual)
        : std::runtime_error("Schlaefli pencil interpolation is ill-conditioned (residual " +
                             std::to_string(residual) + ")"),
          residual_(residual) {}
    double residual() const { return residual_; }

  private:
    double residual_;
};

template <Scalar S>
struct PencilFit {
    QuarticPolynomial<S> h;
    double residual;  // relative mismatch at a sixth sample point
};

/// Pencil coefficients from samples of det3 at lambda in {0, +-1, +-2}; the
/// fit is checked against a direct evaluation at lambda = 3.
template <Scalar S>
PencilFit<S> pencil_interpolated(const FourQubitState<S> &z) {
    auto sample = [&](int lambda) {
        std::array<S, 8> a;
        for (int s = 0; s < 8; ++s) {
            a[s] = z[s] + S(lambda) * z[8 + s];
        }
        return det3(a);
    };
    const S f0 = sample(0), fp1 = sample(1), fm1 = sample(-1), fp2 = sample(2), fm2 = sample(-2);
    // Closed-form inverse of the Vandermonde system on the symmetric nodes.
    const S even1 = (fp1 + fm1) / S(2) - f0;  // h2 + h4
    const S even2 = (fp2 + fm2) / S(2) - f0;  // 4 h2 + 16 h4
    const S odd1 = (fp1 - fm1) / S(2);        // h1 + h3
    const S odd2 = (fp2 - fm2) / S(2);        // 2 h1 + 8 h3
    const S h4 = (even2 - S(4) * even1) / S(12);
    const S h2 = even1 - h4;
    const S h3 = (odd2 - S(2) * odd1) / S(6);
    const S h1 = odd1 - h3;
    QuarticPolynomial<S> h{h4, h3, h2, h1, f0};
    const S direct = sample(3);
    const S fitted = h(S(3));
    double scale = 0;
    for (const S &v : {f0, fp1, fm1, fp2, fm2, direct}) scale = std::max(scale, magnitude(v));
    const double residual = scale == 0 ? 0.0 : magnitude(direct - fitted) / scale;
    return {h, residual};
}

// ---------------------------------------------------------------------------
// The three D4 routes.

template <Scalar S>
struct STInvariants {
    S S_, T;
};

/// S = (I4^2 - I2^2) + 4(I2^2 - I1 I3),
/// T = (I4^2 - I2^2)(I1^2 - I2) + (I3 - I1 I2)^2.
template <Scalar S>
STInvariants<S> st_from_invariants(const InvariantSet<S> &inv) {
    const S a = inv.I4 * inv.I4 - inv.I2 * inv.I2;
    const S s = a + S(4) * (inv.I2 * inv.I2 - inv.I1 * inv.I3);
    const S t = a * (inv.I1 * inv.I1 - inv.I2) + (inv.I3 - inv.I1 * inv.I2) * (inv.I3 - inv.I1 * inv.I2);
    return {s, t};
}

/// 12 S = U^2 - 2V, 216 T = U^3 - 3UV + 216 D^2 with V = 12(HD + 2LM).
template <Scalar S>
STInvariants<S> st_from_luque_thibon(const InvariantSet<S> &inv) {
    const S V = S(12) * (inv.H * inv.D + S(2) * inv.L * inv.M);
    const S s = (inv.U * inv.U - S(2) * V) / S(12);
    const S t = (inv.U * inv.U * inv.U - S(3) * inv.U * V + S(216) * inv.D * inv.D) / S(216);
    return {s, t};
}

/// S^3 - 27 T^2. This is D4 itself (= discriminant / 256), not D4 * 256.
template <Scalar S>
S d4_from_ST(const InvariantSet<S> &inv) {
    const auto st = st_from_invariants(inv);
    return st.S_ * st.S_ * st.S_ - S(27) * st.T * st.T;
}

template <Scalar S>
S d4_from_quartic(const InvariantSet<S> &inv) {
    return quartic_discriminant(invariant_quartic(inv)) / S(256);
}

/// Exact expansion in exact mode; five-point interpolation otherwise, with
/// IllConditionedPencil thrown when the fit residual exceeds `fit_tol`.
template <Scalar S>
S d4_schlaefli(const FourQubitState<S> &z, double fit_tol = 1e-8) {
    if constexpr (is_exact_v<S>) {
        return quartic_discriminant(pencil_expanded(z)) / S(256);
    } else {
        const auto fit = pencil_interpolated(z);
        if (fit.residual > fit_tol) {
            throw IllConditionedPencil(fit.residual);
        }
        return quartic_discriminant(fit.h) / S(256);
    }
}

template <Scalar S>
struct HyperdetReport {
    S d4_st, d4_quartic, d4_schlaefli;
    std::optional<S> consensus;
    double max_relative_spread = 0;
    S S_, T, U, V;
};

/// Relative spread |x - y| / max(|x|, |y|, floor); exact mode reports 0 or 1.
template <Scalar S>
double relative_spread(const S &x, const S &y, double floor) {
    if constexpr (is_exact_v<S>) {
        return x == y ? 0.0 : 1.0;
    } else {
        const double scale = std::max({magnitude(x), magnitude(y), floor});
        return scale == 0 ? 0.0 : magnitude(x - y) / scale;
    }
}

template <Scalar S>
class RouteDisagreement : public std::runtime_error {
  public:
    explicit RouteDisagreement(HyperdetReport<S> report)
        : std::runtime_error("hyperdeterminant routes disagree"), report_(std::move(report)) {}
    const HyperdetReport<S> &report() const { return report_; }

  private:
    HyperdetReport<S> report_;
};

/// Absolute noise floor for D4 on a state of squared norm n2: values below
/// 1e-14 * |Z|^24 are indistinguishable from zero in double precision.
inline double d4_noise_floor(double norm_squared) { return 1e-14 * std::pow(norm_squared, 12); }

/// Runs the three routes. The consensus (the quartic-route value) is set
/// when every pairwise spread is within `tol` (exactly zero in exact mode);
/// otherwise RouteDisagreement is thrown carrying all three values.
template <Scalar S>
HyperdetReport<S> hyperdeterminant_report(const FourQubitState<S> &z, double tol = 1e-6) {
    const InvariantSet<S> inv = compute_invariants(z);
    HyperdetReport<S> r;
    const auto st = st_from_invariants(inv);
    r.S_ = st.S_;
    r.T = st.T;
    r.U = inv.U;
    r.V = S(12) * (inv.H * inv.D + S(2) * inv.L * inv.M);
    r.d4_st = d4_from_ST(inv);
    r.d4_quartic = d4_from_quartic(inv);
    r.d4_schlaefli = d4_schlaefli(z);
    const double floor = is_exact_v<S> ? 0.0 : d4_noise_floor(z.norm_squared());
    r.max_relative_spread = std::max({relative_spread(r.d4_st, r.d4_quartic, floor),
                                      relative_spread(r.d4_st, r.d4_schlaefli, floor),
                                      relative_spread(r.d4_quartic, r.d4_schlaefli, floor)});
    if (r.max_relative_spread > (is_exact_v<S> ? 0.0 : tol)) {
        throw RouteDisagreement<S>(r);
    }
    r.consensus = r.d4_quartic;
    return r;
}

}  // namespace quartet
