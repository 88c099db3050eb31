#pragma once

// Four- and three-qubit amplitude containers, matrix views and the local
// SL(2,C)^{x4} action.
//
// Amplitudes are stored in decimal order r = 8i + 4j + 2k + l, qubit 1 being
// the most significant bit.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "quartet/scalar.hpp"

namespace quartet {

template <Scalar S, size_t N>
using Matrix = std::array<std::array<S, N>, N>;

template <Scalar S>
using Matrix4 = Matrix<S, 4>;

/// Decimal index of |ijkl>.
constexpr int decimal_index(int i, int j, int k, int l) { return 8 * i + 4 * j + 2 * k + l; }

/// Bits (i, j, k, l) of a decimal index, qubit 1 first.
constexpr std::array<int, 4> binary_index(int r) { return {(r >> 3) & 1, (r >> 2) & 1, (r >> 1) & 1, r & 1}; }

template <Scalar S, size_t N>
class QubitState {
  public:
    static constexpr size_t size = N;

    QubitState() { z_.fill(S(0)); }
    explicit QubitState(const std::array<S, N> &z) : z_(z) {
        for (const auto &a : z_) {
            if (!ScalarTraits<S>::is_finite(a)) {
                throw std::invalid_argument("amplitude is not finite");
            }
        }
    }
    static QubitState from_span(std::span<const S> z) {
        if (z.size() != N) {
            throw std::invalid_argument("expected " + std::to_string(N) + " amplitudes, got " +
                                        std::to_string(z.size()));
        }
        std::array<S, N> a;
        std::copy(z.begin(), z.end(), a.begin());
        return QubitState(a);
    }
    static QubitState basis(size_t r) {
        QubitState s;
        s.z_.at(r) = S(1);
        return s;
    }

    const S &operator[](size_t r) const { return z_[r]; }
    const std::array<S, N> &amplitudes() const { return z_; }

    /// Squared 2-norm (as a double in both modes).
    double norm_squared() const {
        double n = 0;
        for (const auto &a : z_) {
            n += std::norm(to_complex(a));
        }
        return n;
    }

    QubitState scaled(const S &c) const {
        std::array<S, N> a = z_;
        for (auto &x : a) {
            x = x * c;
        }
        return QubitState(a);
    }

    friend bool operator==(const QubitState &a, const QubitState &b) { return a.z_ == b.z_; }

  private:
    std::array<S, N> z_;
};

template <Scalar S>
using FourQubitState = QubitState<S, 16>;

template <Scalar S>
using ThreeQubitState = QubitState<S, 8>;

/// Rescales a floating state to unit 2-norm.
template <size_t N>
QubitState<Complex, N> normalized(const QubitState<Complex, N> &s) {
    double n = std::sqrt(s.norm_squared());
    if (n == 0) {
        throw std::invalid_argument("cannot normalize the zero state");
    }
    return s.scaled(Complex(1.0 / n));
}

// ---------------------------------------------------------------------------
// Matrix views.

/// Columns A, B, C, D hold Z_{00kl}, Z_{01kl}, Z_{10kl}, Z_{11kl}.
template <Scalar S>
Matrix4<S> matrix_L(const FourQubitState<S> &z) {
    Matrix4<S> m;
    for (int row = 0; row < 4; ++row) {
        for (int col = 0; col < 4; ++col) {
            m[row][col] = z[4 * col + row];
        }
    }
    return m;
}

template <Scalar S>
Matrix4<S> matrix_M(const FourQubitState<S> &z) {
    static constexpr int idx[4][4] = {{0, 2, 8, 10}, {1, 3, 9, 11}, {4, 6, 12, 14}, {5, 7, 13, 15}};
    Matrix4<S> m;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            m[r][c] = z[idx[r][c]];
        }
    }
    return m;
}

template <Scalar S>
Matrix4<S> matrix_N(const FourQubitState<S> &z) {
    static constexpr int idx[4][4] = {{0, 1, 8, 9}, {2, 3, 10, 11}, {4, 5, 12, 13}, {6, 7, 14, 15}};
    Matrix4<S> m;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            m[r][c] = z[idx[r][c]];
        }
    }
    return m;
}

/// Division-free cofactor expansion; exact for rational input.
template <Scalar S>
S determinant(const Matrix<S, 2> &m) {
    return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

template <Scalar S>
S determinant(const Matrix<S, 3> &m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

template <Scalar S>
S determinant(const Matrix<S, 4> &m) {
    // Laplace expansion along the first two rows.
    auto minor2 = [&](int r0, int r1, int c0, int c1) { return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]; };
    return minor2(0, 1, 0, 1) * minor2(2, 3, 2, 3) - minor2(0, 1, 0, 2) * minor2(2, 3, 1, 3) +
           minor2(0, 1, 0, 3) * minor2(2, 3, 1, 2) + minor2(0, 1, 1, 2) * minor2(2, 3, 0, 3) -
           minor2(0, 1, 1, 3) * minor2(2, 3, 0, 2) + minor2(0, 1, 2, 3) * minor2(2, 3, 0, 1);
}

// ---------------------------------------------------------------------------
// Local operations.

/// An element of SL(2,C) acting on one qubit.
template <Scalar S>
class LocalOperation {
  public:
    /// Rejects matrices whose determinant differs from one (exactly, or by
    /// more than 1e-9 in floating mode).
    LocalOperation(S m00, S m01, S m10, S m11) : m_{{{m00, m01}, {m10, m11}}} {
        S det = m00 * m11 - m01 * m10;
        bool ok = false;
        if constexpr (is_exact_v<S>) {
            ok = det == S(1);
        } else {
            ok = magnitude(det - S(1)) <= 1e-9;
        }
        if (!ok) {
            throw std::invalid_argument("local operation is not in SL(2): determinant != 1");
        }
    }

    static LocalOperation identity() { return LocalOperation(S(1), S(0), S(0), S(1)); }

    const S &operator()(int r, int c) const { return m_[r][c]; }

    friend LocalOperation operator*(const LocalOperation &a, const LocalOperation &b) {
        return LocalOperation(a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
                              a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1));
    }

  private:
    std::array<std::array<S, 2>, 2> m_;
};

/// Z'_{ijkl} = sum s1_{ii'} s2_{jj'} s3_{kk'} s4_{ll'} Z_{i'j'k'l'}, applied
/// one qubit at a time.
template <Scalar S>
FourQubitState<S> apply_slocc(const FourQubitState<S> &state, const LocalOperation<S> &s1,
                              const LocalOperation<S> &s2, const LocalOperation<S> &s3,
                              const LocalOperation<S> &s4) {
    std::array<S, 16> z = state.amplitudes();
    const LocalOperation<S> *ops[4] = {&s1, &s2, &s3, &s4};
    for (int q = 0; q < 4; ++q) {
        const int bit = 3 - q;
        const LocalOperation<S> &s = *ops[q];
        std::array<S, 16> out;
        for (int r = 0; r < 16; ++r) {
            const int r0 = r & ~(1 << bit);
            const int r1 = r0 | (1 << bit);
            const int row = (r >> bit) & 1;
            out[r] = s(row, 0) * z[r0] + s(row, 1) * z[r1];
        }
        z = out;
    }
    return FourQubitState<S>(z);
}

/// A bijection of the qubit labels {1,2,3,4}.
class QubitPermutation {
  public:
    /// sigma[m-1] = sigma(m), one-based labels.
    explicit QubitPermutation(std::array<int, 4> sigma) : sigma_(sigma) {
        std::array<bool, 4> hit{};
        for (int t : sigma_) {
            if (t < 1 || t > 4 || hit[t - 1]) {
                throw std::invalid_argument("qubit permutation must be a bijection on {1,2,3,4}");
            }
            hit[t - 1] = true;
        }
    }
    static QubitPermutation identity() { return QubitPermutation({1, 2, 3, 4}); }

    int operator()(int m) const { return sigma_.at(m - 1); }

    /// (a * b)(m) = a(b(m)).
    friend QubitPermutation operator*(const QubitPermutation &a, const QubitPermutation &b) {
        std::array<int, 4> s{};
        for (int m = 1; m <= 4; ++m) {
            s[m - 1] = a(b(m));
        }
        return QubitPermutation(s);
    }

    /// All 24 permutations in lexicographic order.
    static std::vector<QubitPermutation> all() {
        std::array<int, 4> p{1, 2, 3, 4};
        std::vector<QubitPermutation> out;
        do {
            out.emplace_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    }

  private:
    std::array<int, 4> sigma_;
};

/// Qubit m of the input becomes qubit sigma(m) of the output:
/// Z'_{i_sigma(1) i_sigma(2) i_sigma(3) i_sigma(4)} = Z_{i1 i2 i3 i4}.
template <Scalar S>
FourQubitState<S> permute_qubits(const FourQubitState<S> &state, const QubitPermutation &sigma) {
    std::array<S, 16> out;
    for (int r = 0; r < 16; ++r) {
        const auto bits = binary_index(r);
        std::array<int, 4> target{};
        for (int m = 1; m <= 4; ++m) {
            target[sigma(m) - 1] = bits[m - 1];
        }
        out[decimal_index(target[0], target[1], target[2], target[3])] = state[r];
    }
    return FourQubitState<S>(out);
}

// ---------------------------------------------------------------------------
// Seeded generators.
//
// Floating: real and imaginary parts are independent N(0,1) draws from
// std::normal_distribution over std::mt19937_64(seed).
// Exact: real and imaginary parts are p/q with p uniform in [-6,6] and q
// uniform in [1,4].

inline FourQubitState<Complex> random_state(uint64_t seed, bool normalize) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::array<Complex, 16> z;
    for (auto &a : z) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        a = Complex(re, im);
    }
    FourQubitState<Complex> s(z);
    return normalize ? normalized(s) : s;
}

inline GaussianRational random_gaussian_rational(std::mt19937_64 &rng, int max_num = 6, int max_den = 4) {
    std::uniform_int_distribution<int> num(-max_num, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    const int a = num(rng);
    const int b = den(rng);
    const int c = num(rng);
    const int d = den(rng);
    return GaussianRational(mpq_class(a, b), mpq_class(c, d));
}

inline FourQubitState<GaussianRational> random_rational_state(uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::array<GaussianRational, 16> z;
    for (auto &a : z) {
        a = random_gaussian_rational(rng);
    }
    return FourQubitState<GaussianRational>(z);
}

/// 2-norm condition number of a unit-determinant 2x2 matrix.
inline double condition_number(const LocalOperation<Complex> &s) {
    const double f = std::norm(s(0, 0)) + std::norm(s(0, 1)) + std::norm(s(1, 0)) + std::norm(s(1, 1));
    return 0.5 * (f + std::sqrt(std::max(f * f - 4.0, 0.0)));
}

/// Four complex N(0,1) entries rescaled by an inverse square root of the
/// determinant; draws with |det| < 1e-6 are rejected, and so are draws whose
/// condition number exceeds `max_condition` (unbounded by default).
inline LocalOperation<Complex> random_slocc(std::mt19937_64 &rng,
                                            double max_condition = std::numeric_limits<double>::infinity()) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (;;) {
        std::array<Complex, 4> m;
        for (auto &x : m) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            x = Complex(re, im);
        }
        const Complex det = m[0] * m[3] - m[1] * m[2];
        if (std::abs(det) < 1e-6) {
            continue;
        }
        const Complex scale = 1.0 / std::sqrt(det);
        LocalOperation<Complex> s(m[0] * scale, m[1] * scale, m[2] * scale, m[3] * scale);
        if (condition_number(s) > max_condition) {
            continue;
        }
        return s;
    }
}

/// Exact SL(2, Q(i)) element: a product of a diagonal, an upper and a lower
/// unipotent factor with random Gaussian-rational parameters.
inline LocalOperation<GaussianRational> random_rational_slocc(std::mt19937_64 &rng) {
    using G = GaussianRational;
    G t;
    do {
        t = random_gaussian_rational(rng, 3, 3);
    } while (t.is_zero());
    const G u = random_gaussian_rational(rng, 3, 3);
    const G v = random_gaussian_rational(rng, 3, 3);
    LocalOperation<G> diag(t, G(0), G(0), G(1) / t);
    LocalOperation<G> upper(G(1), u, G(0), G(1));
    LocalOperation<G> lower(G(1), G(0), v, G(1));
    return diag * upper * lower;
}

}  // namespace quartet
