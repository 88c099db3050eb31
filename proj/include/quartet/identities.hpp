#pragma once

// The identity-verification suite: every polynomial relation between the
// invariants, the alternative Pluecker/tensor forms, the bracket and duality
// identities, D4 route agreement, SLOCC and permutation invariance.

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "quartet/canonical.hpp"

namespace quartet {

template <Scalar S>
struct IdentityCheck {
    std::string name;
    S lhs, rhs;
    double scale = 0;  // error floor for sides that vanish identically
};

/// Worst error and failure count of one named identity over many trials.
struct IdentityStat {
    std::string name;
    double tolerance = 0;
    double worst_error = 0;
    long checks = 0;
    long failures = 0;

    bool passed() const { return failures == 0; }
};

/// Aggregates identity errors by name, keeping first-seen order.
class IdentityTally {
  public:
    void add(const std::string &name, double error, double tolerance) {
        auto [it, inserted] = index_.try_emplace(name, stats_.size());
        if (inserted) stats_.push_back({name, tolerance});
        IdentityStat &s = stats_[it->second];
        s.worst_error = std::max(s.worst_error, error);
        ++s.checks;
        if (!(error <= tolerance)) ++s.failures;  // NaN counts as failure
    }

    template <Scalar S>
    void add(const IdentityCheck<S> &c, double tolerance) {
        add(c.name, relation_error(c.lhs, c.rhs, c.scale), is_exact_v<S> ? 0.0 : tolerance);
    }

    void merge(const IdentityTally &other) {
        for (const auto &s : other.stats_) {
            auto [it, inserted] = index_.try_emplace(s.name, stats_.size());
            if (inserted) {
                stats_.push_back(s);
                continue;
            }
            IdentityStat &t = stats_[it->second];
            t.worst_error = std::max(t.worst_error, s.worst_error);
            t.checks += s.checks;
            t.failures += s.failures;
        }
    }

    const std::vector<IdentityStat> &stats() const { return stats_; }

    bool all_passed() const {
        return std::all_of(stats_.begin(), stats_.end(), [](const IdentityStat &s) { return s.passed(); });
    }

  private:
    std::vector<IdentityStat> stats_;
    std::map<std::string, size_t> index_;
};

/// Relations among the invariants, including the alternative Pluecker,
/// tensor and bracket forms of I2, I3 and I4. U is checked against the
/// sign consistent with the other relations, U = 6(I2 - I4).
template <Scalar S>
std::vector<IdentityCheck<S>> state_identities(const FourQubitState<S> &z) {
    const InvariantSet<S> inv = compute_invariants(z);
    const PlueckerSet<S> p = pluecker_set(z);
    const S half = ratio<S>(1, 2);
    auto P = [&](int mu, int nu) { return p.line(mu, nu); };
    auto star = [](const Bivector<S> &b) { return hodge_dual(b); };

    std::vector<IdentityCheck<S>> out;
    for (auto &r : invariant_relations(inv)) out.push_back({r.name, r.lhs, r.rhs});

    out.push_back({"I2 line form = Pluecker form", inv.I2, invariant_I2_pluecker(p)});
    out.push_back({"I2 Pluecker form = tensor form", invariant_I2_pluecker(p), invariant_I2_tensor(p)});
    out.push_back({"I3 dual-point form = trivector form", inv.I3, invariant_I3_pluecker(p)});
    out.push_back({"I3 trivector form = tensor form", invariant_I3_pluecker(p), invariant_I3_tensor(p)});

    // <P, Q> = <*P, *Q> on every pair of lines; most pairs meet, so both
    // sides vanish and the error is taken relative to |P| |Q|.
    auto norm = [](const Bivector<S> &b) {
        double n = 0;
        for (const S &x : b.c) n += magnitude(x) * magnitude(x);
        return std::sqrt(n);
    };
    for (int i = 0; i < 6; ++i) {
        for (int j = i; j < 6; ++j) {
            out.push_back({"<P,Q> = <*P,*Q>", bracket(p.lines[i], p.lines[j]),
                           bracket(star(p.lines[i]), star(p.lines[j])), norm(p.lines[i]) * norm(p.lines[j])});
        }
    }

    out.push_back({"I4 = <P01,P23>", inv.I4, bracket(P(0, 1), P(2, 3))});
    out.push_back({"I4 = <P02,P31>", inv.I4, bracket(P(0, 2), P(3, 1))});
    out.push_back({"I4 = <P03,P12>", inv.I4, bracket(P(0, 3), P(1, 2))});
    out.push_back({"I4 = <*P01,*P23>", inv.I4, bracket(star(P(0, 1)), star(P(2, 3)))});
    out.push_back({"I4 = <*P02,*P31>", inv.I4, bracket(star(P(0, 2)), star(P(3, 1)))});
    out.push_back({"I4 = <*P03,*P12>", inv.I4, bracket(star(P(0, 3)), star(P(1, 2)))});

    const auto c = columns(z);
    out.push_back({"<P01,*P23> = (A.C)(B.D) - (A.D)(B.C)", bracket(P(0, 1), star(P(2, 3))),
                   dot(c.A, c.C) * dot(c.B, c.D) - dot(c.A, c.D) * dot(c.B, c.C)});
    out.push_back({"<P01,*P23> = (A^B).(C^D)/2", bracket(P(0, 1), star(P(2, 3))), half * bivector_dot(P(0, 1), P(2, 3))});

    const S six_I2 = bracket(P(0, 1), star(P(2, 3))) + bracket(star(P(0, 1)), P(2, 3)) +
                     bracket(P(0, 2), star(P(1, 3))) + bracket(star(P(0, 2)), P(1, 3)) -
                     bracket(P(0, 3), star(P(0, 3))) - bracket(P(1, 2), star(P(1, 2)));
    out.push_back({"6 I2 = bracket form", S(6) * inv.I2, six_I2});

    for (int sign : {+1, -1}) {
        const S s(sign);
        auto split = [&](const Bivector<S> &b, const S &t) { return b + t * star(b); };
        const S rhs = s * bracket(split(P(0, 1), s), split(P(2, 3), s)) +
                      s * bracket(split(P(0, 2), -s), split(P(3, 1), -s)) -
                      bracket(P(1, 2) - s * star(P(0, 3)), star(P(1, 2)) - s * P(0, 3));
        out.push_back({sign > 0 ? "6(I2 + I4) = bracket form" : "6(I2 - I4) = bracket form",
                       S(6) * (inv.I2 + s * inv.I4), rhs});
    }
    return out;
}

/// U = 6(I4 - I2). Together with U = H^2 - 4(L + M) it contradicts
/// 6 I2 = H^2 + 2L - 4M unless I2 = I4.
template <Scalar S>
IdentityCheck<S> opposite_sign_u_relation(const InvariantSet<S> &inv) {
    return {"U = 6(I4 - I2) (opposite sign)", inv.U, S(6) * (inv.I4 - inv.I2)};
}

/// Relative difference of every InvariantSet field before/after a transform.
template <Scalar S>
std::vector<IdentityCheck<S>> invariant_set_agreement(const InvariantSet<S> &x, const InvariantSet<S> &y) {
    return {{"I1", x.I1, y.I1},       {"I2", x.I2, y.I2},       {"I3", x.I3, y.I3},       {"I4", x.I4, y.I4},
            {"H", x.H, y.H},          {"L", x.L, y.L},          {"M", x.M, y.M},          {"N", x.N, y.N},
            {"U", x.U, y.U},          {"D_xy", x.D_xy, y.D_xy}, {"D_zt", x.D_zt, y.D_zt}, {"D_xz", x.D_xz, y.D_xz},
            {"D_yt", x.D_yt, y.D_yt}, {"D_xt", x.D_xt, y.D_xt}, {"D_yz", x.D_yz, y.D_yz}, {"D", x.D, y.D}};
}

/// Tolerances used by run_verify; exact mode ignores them.
struct VerifyTolerances {
    double identity = 1e-9;
    double d4 = 1e-6;
    double slocc = 1e-8;
    double permutation = 1e-12;
    double max_slocc_condition = 30;  // per-factor bound on sampled SL(2) draws
};

/// Checks one state against everything in the suite.
template <Scalar S>
void verify_state(const FourQubitState<S> &z, const std::array<LocalOperation<S>, 4> &g, IdentityTally &tally,
                  const VerifyTolerances &tol) {
    for (const auto &c : state_identities(z)) tally.add(c, tol.identity);

    const InvariantSet<S> inv = compute_invariants(z);
    const S d4_st = d4_from_ST(inv), d4_q = d4_from_quartic(inv);
    S d4_sch;
    try {
        d4_sch = d4_schlaefli(z);
    } catch (const IllConditionedPencil &e) {
        tally.add("D4 Schlaefli pencil fit", e.residual(), 0.0);
        return;
    }
    const double floor = is_exact_v<S> ? 0.0 : d4_noise_floor(z.norm_squared());
    const double d4_tol = is_exact_v<S> ? 0.0 : tol.d4;
    tally.add("D4 S/T route = quartic route", relative_spread(d4_st, d4_q, floor), d4_tol);
    tally.add("D4 quartic route = Schlaefli route", relative_spread(d4_q, d4_sch, floor), d4_tol);
    tally.add("D4 S/T route = Schlaefli route", relative_spread(d4_st, d4_sch, floor), d4_tol);
    const auto st1 = st_from_invariants(inv), st2 = st_from_luque_thibon(inv);
    tally.add(IdentityCheck<S>{"S from I_k = S from U, V", st1.S_, st2.S_}, tol.identity);
    tally.add(IdentityCheck<S>{"T from I_k = T from U, V, D", st1.T, st2.T}, tol.identity);

    const InvariantSet<S> moved = compute_invariants(apply_slocc(z, g[0], g[1], g[2], g[3]));
    for (auto &c : invariant_set_agreement(inv, moved)) {
        c.name = "SLOCC invariance of " + c.name;
        tally.add(c, tol.slocc);
    }
    for (const auto &sigma : QubitPermutation::all()) {
        tally.add(IdentityCheck<S>{"I1 permutation invariance", inv.I1, invariant_I1(permute_qubits(z, sigma))},
                  tol.permutation);
    }
}

/// The seeded suite: trial t uses state seed (seed, t) and an SLOCC
/// quadruple drawn from the same stream.
template <Scalar S>
IdentityTally run_verify(int trials, uint64_t seed, const VerifyTolerances &tol = {}) {
    IdentityTally tally;
    for (int t = 0; t < trials; ++t) {
        const uint64_t trial_seed = seed * 1000003ULL + static_cast<uint64_t>(t);
        std::mt19937_64 rng(trial_seed ^ 0x5bd1e995ULL);
        if constexpr (is_exact_v<S>) {
            const auto z = random_rational_state(trial_seed);
            const std::array<LocalOperation<S>, 4> g{random_rational_slocc(rng), random_rational_slocc(rng),
                                                     random_rational_slocc(rng), random_rational_slocc(rng)};
            verify_state(z, g, tally, tol);
        } else {
            const auto z = random_state(trial_seed, true);
            const double k = tol.max_slocc_condition;
            const std::array<LocalOperation<S>, 4> g{random_slocc(rng, k), random_slocc(rng, k),
                                                     random_slocc(rng, k), random_slocc(rng, k)};
            verify_state(z, g, tally, tol);
        }
    }
    return tally;
}

}  // namespace quartet
