#pragma once

// Scalar abstraction shared by every module.
//
// Algorithms are templates over a field type S. Two instantiations are
// supported: std::complex<double> (floating, tolerance based) and
// GaussianRational (exact, Q(i) over GMP rationals). Exact mode is what lets
// the identity suite tell a transcription error from rounding noise.

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <complex>
#include <concepts>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace quartet {

using Complex = std::complex<double>;

class GaussianRational {
  public:
    GaussianRational() = default;
    GaussianRational(int re) : re_(re) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    const mpq_class &real() const { return re_; }
    const mpq_class &imag() const { return im_; }

    GaussianRational conj() const { return {re_, -im_}; }
    mpq_class norm() const { return re_ * re_ + im_ * im_; }
    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

    GaussianRational &operator+=(const GaussianRational &o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational &operator-=(const GaussianRational &o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational &operator*=(const GaussianRational &o) {
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GaussianRational &operator/=(const GaussianRational &o) {
        mpq_class den = o.norm();
        if (sgn(den) == 0) {
            throw std::domain_error("GaussianRational: division by zero");
        }
        mpq_class r = (re_ * o.re_ + im_ * o.im_) / den;
        mpq_class i = (im_ * o.re_ - re_ * o.im_) / den;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational &b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational &b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational &b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational &b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational &a) { return {-a.re_, -a.im_}; }
    friend bool operator==(const GaussianRational &a, const GaussianRational &b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

  private:
    mpq_class re_{0};
    mpq_class im_{0};
};

template <class S>
concept Field = requires(S a, S b) {
    S(1);
    { a + b } -> std::convertible_to<S>;
    { a - b } -> std::convertible_to<S>;
    { a * b } -> std::convertible_to<S>;
    { a / b } -> std::convertible_to<S>;
    { -a } -> std::convertible_to<S>;
    { a == b } -> std::convertible_to<bool>;
};

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
    static constexpr bool exact = false;
    static constexpr const char *mode_name = "float";
    static double magnitude(const Complex &z) { return std::abs(z); }
    static Complex to_complex(const Complex &z) { return z; }
    static bool is_finite(const Complex &z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
};

template <>
struct ScalarTraits<GaussianRational> {
    static constexpr bool exact = true;
    static constexpr const char *mode_name = "exact";
    static double magnitude(const GaussianRational &z) { return std::abs(z.to_complex()); }
    static Complex to_complex(const GaussianRational &z) { return z.to_complex(); }
    static bool is_finite(const GaussianRational &) { return true; }
};

template <class S>
concept Scalar = Field<S> && requires { ScalarTraits<S>::exact; };

template <Scalar S>
inline constexpr bool is_exact_v = ScalarTraits<S>::exact;

template <Scalar S>
double magnitude(const S &z) {
    return ScalarTraits<S>::magnitude(z);
}

template <Scalar S>
Complex to_complex(const S &z) {
    return ScalarTraits<S>::to_complex(z);
}

/// p/q as a scalar; p/q must be representable (q != 0).
template <Scalar S>
S ratio(int p, int q) {
    return S(p) / S(q);
}

/// Zero test: exact equality for exact scalars, |z| <= tol otherwise.
template <Scalar S>
bool is_zero(const S &z, double tol) {
    if constexpr (is_exact_v<S>) {
        return z == S(0);
    } else {
        return magnitude(z) <= tol;
    }
}

// ---------------------------------------------------------------------------
// Rational text conversions.

inline std::string to_string(const mpq_class &q) {
    if (q.get_den() == 1) {
        return q.get_num().get_str();
    }
    return q.get_str();
}

/// Parses "p", "p/q", or a decimal literal ("-1.25", "3e-2") exactly.
inline mpq_class parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) {
        throw std::invalid_argument("empty rational literal");
    }
    if (s.find('/') != std::string::npos) {
        mpq_class q;
        if (q.set_str(s, 10) != 0 || q.get_den() == 0) {
            throw std::invalid_argument("malformed rational literal: " + s);
        }
        q.canonicalize();
        return q;
    }
    std::string mantissa = s;
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        mantissa = s.substr(0, e);
        std::string exp_text = s.substr(e + 1);
        if (!exp_text.empty() && exp_text[0] == '+') {
            exp_text.erase(0, 1);
        }
        auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
        if (ec != std::errc() || ptr != exp_text.data() + exp_text.size()) {
            throw std::invalid_argument("malformed exponent: " + s);
        }
    }
    if (auto dot = mantissa.find('.'); dot != std::string::npos) {
        exponent -= static_cast<long>(mantissa.size() - dot - 1);
        mantissa.erase(dot, 1);
    }
    if (!mantissa.empty() && mantissa[0] == '+') {
        mantissa.erase(0, 1);
    }
    mpz_class num;
    if (mantissa.empty() || num.set_str(mantissa, 10) != 0) {
        throw std::invalid_argument("malformed rational literal: " + s);
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    mpq_class q = exponent >= 0 ? mpq_class(num * scale) : mpq_class(num, scale);
    q.canonicalize();
    return q;
}

/// Exact rational for a double via its shortest round-trip decimal form, so
/// that 0.1 read from JSON becomes 1/10 rather than the binary fraction.
inline mpq_class rational_from_double(double x) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("non-finite value has no rational form");
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) {
        throw std::invalid_argument("cannot format double");
    }
    return parse_rational(std::string_view(buf, static_cast<size_t>(ptr - buf)));
}

/// Exact square root of a non-negative rational, if it is a perfect square.
inline std::optional<mpq_class> exact_sqrt(const mpq_class &q) {
    if (sgn(q) < 0) {
        return std::nullopt;
    }
    const mpz_class &n = q.get_num();
    const mpz_class &d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) {
        return std::nullopt;
    }
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    mpq_class r(rn, rd);
    r.canonicalize();
    return r;
}

/// Exact square root in Q(i) when one exists. The root with non-negative real
/// part (and non-negative imaginary part on the imaginary axis) is returned.
inline std::optional<GaussianRational> exact_sqrt(const GaussianRational &z) {
    const mpq_class &x = z.real();
    const mpq_class &y = z.imag();
    if (sgn(y) == 0) {
        if (sgn(x) >= 0) {
            if (auto r = exact_sqrt(x)) {
                return GaussianRational(*r, 0);
            }
            return std::nullopt;
        }
        if (auto r = exact_sqrt(mpq_class(-x))) {
            return GaussianRational(0, *r);
        }
        return std::nullopt;
    }
    auto modulus = exact_sqrt(mpq_class(x * x + y * y));
    if (!modulus) {
        return std::nullopt;
    }
    auto u = exact_sqrt(mpq_class((*modulus + x) / 2));
    if (!u || sgn(*u) == 0) {
        return std::nullopt;
    }
    mpq_class v = y / (2 * *u);
    return GaussianRational(*u, v);
}

/// Best rational approximation with denominator at most max_den (continued
/// fraction convergents).
inline mpq_class approximate_rational(double x, long max_den) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("non-finite value");
    }
    mpq_class target(x);
    mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    mpq_class rem = target;
    for (int iter = 0; iter < 64; ++iter) {
        mpz_class a = rem.get_num() / rem.get_den();
        if (sgn(rem) < 0 && a * rem.get_den() != rem.get_num()) {
            a -= 1;
        }
        mpz_class h2 = a * h1 + h0;
        mpz_class k2 = a * k1 + k0;
        if (k2 > max_den) {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        mpq_class frac = rem - mpq_class(a);
        if (sgn(frac) == 0) {
            break;
        }
        rem = 1 / frac;
    }
    mpq_class r(h1, k1);
    r.canonicalize();
    return r;
}

}  // namespace quartet
