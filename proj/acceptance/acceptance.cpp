// Acceptance run: one PASS/FAIL line per criterion, followed by indented
// detail lines. `acceptance N` runs criterion N; no argument runs all.

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"

using namespace quartet;
using G = GaussianRational;

namespace {

constexpr uint64_t kSeed = 1;

struct Outcome {
    bool pass = true;
    std::string summary;
    std::vector<std::string> details;

    void require(bool ok, const std::string &what) {
        if (!ok) pass = false;
        details.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
    }
};

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

void report_tally(Outcome &o, const IdentityTally &t, const std::string &label) {
    for (const auto &s : t.stats()) {
        o.require(s.passed(), fmt("%s %-42s worst %.3g (tol %.0e, %ld checks)", label.c_str(), s.name.c_str(),
                                  s.worst_error, s.tolerance, s.checks));
    }
}

std::mt19937_64 stream(int criterion) { return std::mt19937_64(kSeed * 1000003ULL + static_cast<uint64_t>(criterion)); }

std::complex<double> gauss(std::mt19937_64 &rng) {
    std::normal_distribution<double> n;
    return {n(rng), n(rng)};
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
    Outcome o;
    auto rng = stream(1);
    IdentityTally fl, ex;
    for (int t = 0; t < 1000; ++t) {
        const auto z = random_state(rng(), true);
        for (const auto &c : state_identities(z)) fl.add(c, 1e-9);
        fl.add(opposite_sign_u_relation(compute_invariants(z)), 1e-9);
    }
    for (int t = 0; t < 100; ++t) {
        const auto z = random_rational_state(rng());
        for (const auto &c : state_identities(z)) ex.add(c, 0.0);
        ex.add(opposite_sign_u_relation(compute_invariants(z)), 0.0);
    }
    report_tally(o, fl, "float");
    report_tally(o, ex, "exact");
    o.summary = "identity suite, 1000 float states at 1e-9 and 100 exact states at zero residual";
    if (!o.pass) {
        o.details.push_back("note  U = 6(I4 - I2) contradicts 6 I2 = H^2 + 2L - 4M and U = H^2 - 4(L + M);");
        o.details.push_back("      the consistent form U = 6(I2 - I4) holds on every state above");
    }
    return o;
}

Outcome criterion2() {
    Outcome o;
    auto rng = stream(2);
    IdentityTally slocc, perm;
    for (int t = 0; t < 200; ++t) {
        const auto z = random_state(rng(), true);
        const auto moved = apply_slocc(z, random_slocc(rng), random_slocc(rng), random_slocc(rng), random_slocc(rng));
        const auto a = compute_invariants(z), b = compute_invariants(moved);
        for (const auto &c : invariant_set_agreement(a, b)) slocc.add(c, 1e-8);
        for (const auto &sigma : QubitPermutation::all()) {
            perm.add(IdentityCheck<Complex>{"I1 under qubit permutations", a.I1, invariant_I1(permute_qubits(z, sigma))},
                     1e-12);
        }
    }
    report_tally(o, slocc, "SLOCC");
    report_tally(o, perm, "perm ");
    o.summary = "SLOCC invariance over 200 pairs at 1e-8, I1 over 24 permutations at 1e-12";
    return o;
}

Outcome criterion3() {
    Outcome o;
    auto rng = stream(3);
    double worst_route = 0, worst_homog = 0;
    long pencil_failures = 0;
    const double c24 = std::pow(2.0, 24);
    for (int t = 0; t < 1000; ++t) {
        const auto z = random_state(rng(), true);
        const auto z2 = z.scaled(Complex(2));
        try {
            const auto inv = compute_invariants(z), inv2 = compute_invariants(z2);
            const Complex r[3] = {d4_from_ST(inv), d4_from_quartic(inv), d4_schlaefli(z)};
            const Complex r2[3] = {d4_from_ST(inv2), d4_from_quartic(inv2), d4_schlaefli(z2)};
            const double floor = d4_noise_floor(z.norm_squared());
            for (int i = 0; i < 3; ++i) {
                for (int j = i + 1; j < 3; ++j) worst_route = std::max(worst_route, relative_spread(r[i], r[j], floor));
                worst_homog = std::max(worst_homog, relative_spread(r2[i], c24 * r[i], c24 * floor));
            }
        } catch (const IllConditionedPencil &) {
            ++pencil_failures;
        }
    }
    o.require(pencil_failures == 0, fmt("float pencil interpolation failures: %ld", pencil_failures));
    o.require(worst_route <= 1e-6, fmt("float route spread over 1000 states: worst %.3g (tol 1e-6)", worst_route));
    o.require(worst_homog <= 1e-8, fmt("float degree-24 homogeneity at c = 2: worst %.3g (tol 1e-8)", worst_homog));

    long mismatches = 0, homog_mismatches = 0;
    for (int t = 0; t < 50; ++t) {
        const auto z = random_rational_state(rng());
        const auto inv = compute_invariants(z);
        const G a = d4_from_ST(inv), b = d4_from_quartic(inv), c = d4_schlaefli(z);
        mismatches += !(a == b) || !(b == c);
        homog_mismatches += !(d4_schlaefli(z.scaled(G(2))) == G(1 << 24) * c);
    }
    o.require(mismatches == 0, fmt("exact route disagreements over 50 states: %ld", mismatches));
    o.require(homog_mismatches == 0, fmt("exact degree-24 homogeneity failures: %ld", homog_mismatches));
    o.summary = "three D4 routes agree (1000 float at 1e-6, 50 exact), degree-24 homogeneity";
    return o;
}

Outcome criterion4() {
    Outcome o;
    auto rng = stream(4);
    long inv_mismatch = 0, d4_mismatch = 0;
    for (int t = 0; t < 200; ++t) {
        const std::array<G, 4> p{random_gaussian_rational(rng), random_gaussian_rational(rng),
                                 random_gaussian_rational(rng), random_gaussian_rational(rng)};
        const std::array<G, 4> sq{p[0] * p[0], p[1] * p[1], p[2] * p[2], p[3] * p[3]};
        const auto z = g_state<G>({p[0], p[1], p[2], p[3]});
        const auto inv = full_invariant_set(z);
        inv_mismatch += !(G(4) * inv.I1 == oracle::elementary(sq, 1)) || !(G(6) * inv.I2 == oracle::elementary(sq, 2)) ||
                        !(G(4) * inv.I3 == oracle::elementary(sq, 3)) || !(inv.I4 == p[0] * p[1] * p[2] * p[3]) ||
                        !(inv.I4 * inv.I4 == oracle::elementary(sq, 4));
        const auto r = hyperdeterminant_report(z);
        const G vandermonde = oracle::root_product_discriminant(std::vector<G>(sq.begin(), sq.end())) / G(256);
        d4_mismatch += !r.consensus || !(*r.consensus == vandermonde) || !(vandermonde_d4<G>({p[0], p[1], p[2], p[3]}) == vandermonde);
    }
    o.require(inv_mismatch == 0, fmt("invariants vs elementary symmetric oracle, 200 exact draws: %ld mismatches", inv_mismatch));
    o.require(d4_mismatch == 0, fmt("D4 consensus vs Vandermonde oracle, 200 exact draws: %ld mismatches", d4_mismatch));

    const auto z = g_state<G>({1, 2, 3, 4});
    const auto inv = full_invariant_set(z);
    const auto r = hyperdeterminant_report(z);
    o.require(inv.I4 == G(24), "G(1,2,3,4): I4 = " + to_string(inv.I4.real()) + " (want 24)");
    o.require(r.consensus && *r.consensus == G(89302500),
              "G(1,2,3,4): D4 = " + (r.consensus ? to_string(r.consensus->real()) : std::string("none")) +
                  " (want 89302500 = 151200^2/256)");
    o.summary = "generic orbit: invariants, Vandermonde D4 and the (1,2,3,4) instance, exact";
    return o;
}

Outcome criterion5() {
    Outcome o;
    auto rng = stream(5);
    auto squares = [](const std::array<Complex, 4> &p) {
        return std::array<Complex, 4>{p[0] * p[0], p[1] * p[1], p[2] * p[2], p[3] * p[3]};
    };
    auto min_gap = [](const std::vector<Complex> &x) {
        double g = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < x.size(); ++i) {
            for (size_t j = i + 1; j < x.size(); ++j) g = std::min(g, std::abs(x[i] - x[j]));
        }
        return g;
    };

    double worst = 0;
    long missing = 0;
    for (int t = 0; t < 100;) {
        std::array<Complex, 4> p{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
        const auto sq = squares(p);
        if (min_gap({sq.begin(), sq.end()}) < 0.1) continue;
        ++t;
        const auto rec = recover_parameters(compute_invariants(g_state<Complex>({p[0], p[1], p[2], p[3]})));
        if (rec.candidates.empty()) {
            ++missing;
            continue;
        }
        const auto got = squares(rec.candidates[0].as_array());
        std::array<int, 4> perm{0, 1, 2, 3};
        double best = std::numeric_limits<double>::infinity();
        do {
            double e = 0;
            for (int i = 0; i < 4; ++i) e = std::max(e, std::abs(got[perm[i]] - sq[i]));
            best = std::min(best, e);
        } while (std::next_permutation(perm.begin(), perm.end()));
        worst = std::max(worst, best);
    }
    o.require(missing == 0, fmt("separated draws without a candidate: %ld of 100", missing));
    o.require(worst <= 1e-8, fmt("squares recovered up to permutation: worst %.3g (tol 1e-8)", worst));

    // Coincident squares, built with random signs so that a^2 = b^2 need not mean a = b.
    const std::vector<std::vector<int>> shapes{{2, 1, 1}, {2, 2}, {3, 1}, {4}};
    for (const auto &shape : shapes) {
        long wrong = 0;
        for (int t = 0; t < 50;) {
            std::vector<Complex> base;
            for (size_t k = 0; k < shape.size(); ++k) base.push_back(gauss(rng));
            std::vector<Complex> bsq;
            for (const auto &b : base) bsq.push_back(b * b);
            if (min_gap(bsq) < 0.1) continue;
            ++t;
            std::array<Complex, 4> p;
            size_t k = 0;
            for (size_t b = 0; b < shape.size(); ++b) {
                for (int m = 0; m < shape[b]; ++m) p[k++] = (rng() & 1 ? 1.0 : -1.0) * base[b];
            }
            const auto rec = recover_parameters(compute_invariants(g_state<Complex>({p[0], p[1], p[2], p[3]})));
            wrong += rec.pattern != shape || !rec.degenerate;
        }
        std::string name;
        for (int m : shape) name += (name.empty() ? "" : ",") + std::to_string(m);
        o.require(wrong == 0, fmt("coincident pattern (%s): %ld wrong of 50", name.c_str(), wrong));
    }
    o.summary = "parameter recovery: 100 separated draws at 1e-8, coincident multiplicity patterns";
    return o;
}

Outcome criterion6() {
    Outcome o;
    auto rng = stream(6);
    auto unit = [](std::array<Complex, 8> a) {
        double n = 0;
        for (const auto &x : a) n += std::norm(x);
        for (auto &x : a) x /= std::sqrt(n);
        return ThreeQubitState<Complex>(a);
    };
    std::array<Complex, 8> ghz{}, w{};
    ghz[0] = ghz[7] = 1;
    w[1] = w[2] = w[4] = 1;
    const auto zg = unit(ghz), zw = unit(w);
    o.require(classify_three_qubit(zg).cls == LineQuadricClass::TwoPoints, "GHZ classifies TwoPoints");
    o.require(classify_three_qubit(zw).cls == LineQuadricClass::Tangent, "W classifies Tangent");
    o.require(std::abs(det3(zg)) > 1e-12, fmt("GHZ det3 = %.17g (nonzero)", std::abs(det3(zg))));

    // s = 4i + 2j + k with qubits (A, B, C); factorizations by pattern.
    enum Pattern { Product, A_BC, B_AC, C_AB };
    auto build = [&](Pattern pat) {
        std::array<Complex, 8> a;
        const std::array<Complex, 2> u{gauss(rng), gauss(rng)}, v{gauss(rng), gauss(rng)}, x{gauss(rng), gauss(rng)};
        const std::array<Complex, 4> psi{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
        for (int s = 0; s < 8; ++s) {
            const int i = s >> 2 & 1, j = s >> 1 & 1, k = s & 1;
            switch (pat) {
                case Product: a[s] = u[i] * v[j] * x[k]; break;
                case A_BC: a[s] = u[i] * psi[2 * j + k]; break;
                case B_AC: a[s] = v[j] * psi[2 * i + k]; break;
                case C_AB: a[s] = x[k] * psi[2 * i + j]; break;
            }
        }
        return unit(a);
    };
    const char *names[4] = {"A(B)(C) product", "A(BC)", "B(AC)", "C(AB)"};
    const LineQuadricClass want[4] = {LineQuadricClass::DegenerateLine, LineQuadricClass::DegenerateLine,
                                      LineQuadricClass::Isotropic, LineQuadricClass::Isotropic};
    for (int pat = 0; pat < 4; ++pat) {
        long wrong = 0;
        double worst = 0;
        for (int t = 0; t < 75; ++t) {
            const auto z = build(static_cast<Pattern>(pat));
            wrong += classify_three_qubit(z).cls != want[pat];
            worst = std::max(worst, std::abs(det3(z)) / std::pow(z.norm_squared(), 2));
        }
        o.require(wrong == 0, fmt("%-16s classifies %s: %ld wrong of 75", names[pat],
                                  std::string(to_string(want[pat])).c_str(), wrong));
        o.require(worst <= 1e-12, fmt("%-16s |det3| / |Z|^4 over 75 states: worst %.3g (tol 1e-12)", names[pat], worst));
    }
    o.summary = "three-qubit geometry: GHZ, W, biseparable classes, det3 on 300 factorized states";
    return o;
}

Outcome criterion7() {
    Outcome o;
    auto rng = stream(7);
    long false_pos = 0, false_neg = 0, rank_wrong = 0;
    int by_rank[5] = {0, 0, 0, 0, 0};
    for (int t = 0; t < 500; ++t) {
        const int target = 1 + t % 4;
        std::array<Complex, 16> a;
        for (auto &x : a) x = gauss(rng);
        for (int col = target; col < 4; ++col) {
            for (int r = 0; r < 4; ++r) a[4 * col + r] = 0;
            for (int k = 0; k < target; ++k) {
                const Complex coef = gauss(rng);
                for (int r = 0; r < 4; ++r) a[4 * col + r] += coef * a[4 * k + r];
            }
        }
        // Mix the columns so that the dependent ones are not always last.
        std::array<int, 4> order{0, 1, 2, 3};
        std::shuffle(order.begin(), order.end(), rng);
        std::array<Complex, 16> b;
        for (int col = 0; col < 4; ++col) {
            for (int r = 0; r < 4; ++r) b[4 * col + r] = a[4 * order[col] + r];
        }
        const auto z = normalized(FourQubitState<Complex>(b));
        const auto rep = tetrahedron_report(z);
        ++by_rank[target];
        const bool deficient = target <= 3;
        false_pos += rep.degenerate && !deficient;
        false_neg += !rep.degenerate && deficient;
        rank_wrong += rep.point_rank != target;
    }
    o.details.push_back(fmt("      constructed ranks 1/2/3/4: %d/%d/%d/%d", by_rank[1], by_rank[2], by_rank[3], by_rank[4]));
    o.require(false_pos == 0, fmt("degenerate but full rank: %ld", false_pos));
    o.require(false_neg == 0, fmt("rank-deficient but not degenerate: %ld", false_neg));
    o.require(rank_wrong == 0, fmt("reported point rank differs from constructed rank: %ld", rank_wrong));
    o.summary = "degeneracy semantics: degenerate iff rank(matrix_L) <= 3 on 500 states";
    return o;
}

}  // namespace

int main(int argc, char **argv) {
    const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                         criterion5, criterion6, criterion7};
    std::vector<int> which;
    if (argc > 1) {
        const int n = std::atoi(argv[1]);
        if (n < 1 || n > 7) {
            std::fprintf(stderr, "usage: acceptance [1-7]\n");
            return 2;
        }
        which.push_back(n);
    } else {
        for (int n = 1; n <= 7; ++n) which.push_back(n);
    }
    bool all = true;
    for (int n : which) {
        const Outcome o = criteria[n - 1]();
        all = all && o.pass;
        std::printf("criterion %d: %s  %s\n", n, o.pass ? "PASS" : "FAIL", o.summary.c_str());
        for (const auto &d : o.details) std::printf("    %s\n", d.c_str());
    }
    return all ? 0 : 1;
}
