#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "collatzkit/phantom.hpp"
#include "collatzkit/rng.hpp"
#include "collatzkit/syracuse.hpp"
#include "collatzkit/walsh.hpp"

using namespace collatz;

TEST_CASE("phantom_root") {
    auto p = phantom_root(family("ell3"));
    CHECK(p.C == 19);
    CHECK(p.D == -19);
    CHECK(p.rho == -1);
    auto triv = phantom_root({{2}});
    CHECK(triv.rho == 1);
    auto e5 = phantom_root(family("ell5"));
    CHECK(e5.sig.depth() == 6);
    double delta = 5 * std::log2(3.0) - 6;
    CHECK(std::abs(delta - 1.93) < 0.01);
    // C odd for every composition with K <= 12 (exhaustive)
    for (unsigned long K = 2; K <= 12; ++K) {
        for (unsigned long mask = 0; mask < (1ul << (K - 1)); ++mask) {
            Signature s;
            unsigned long run = 1;
            for (unsigned long i = 0; i + 1 < K; ++i) {
                if (mask & (1ul << i)) {
                    s.k.push_back(run);
                    run = 1;
                } else
                    ++run;
            }
            s.k.push_back(run);
            if (s.ell() < 2) continue;
            auto pr = phantom_root(s);
            REQUIRE(mpz_odd_p(pr.C.get_mpz_t()));
            REQUIRE(mpz_odd_p(pr.D.get_mpz_t()));
        }
    }
}

TEST_CASE("orbit of rho realizes the prescribed valuations (K <= 10)") {
    for (unsigned long K = 3; K <= 10; ++K) {
        for (unsigned long mask = 0; mask < (1ul << (K - 1)); ++mask) {
            Signature s;
            unsigned long run = 1;
            for (unsigned long i = 0; i + 1 < K; ++i) {
                if (mask & (1ul << i)) {
                    s.k.push_back(run);
                    run = 1;
                } else
                    ++run;
            }
            s.k.push_back(run);
            if (s.ell() < 2) continue;
            auto pr = phantom_root(s);
            Rat x = pr.rho;
            for (auto k : s.k) {
                Rat t = 3 * x + 1;
                if (t != 0) REQUIRE(v2q(t) == static_cast<long>(k));
                x = t / pow2(k);
            }
        }
    }
}

TEST_CASE("repulsion") {
    CHECK(repulsion_check(family("ell5"), 6 + 3));
    CHECK(repulsion_check(family("ell8"), 10 + 2));
    CHECK_THROWS_AS(repulsion_check(family("ell5"), 3), std::invalid_argument);
    // repeated blocks drop jK after j blocks
    auto pr = phantom_root(family("ell5"));
    Rat x = pr.rho + pow2(20);
    for (int j = 1; j <= 3; ++j) {
        Rat y = x;
        for (auto k : pr.sig.k) {
            Rat t = 3 * y + 1;
            y = t / pow2(k);
        }
        x = y;
        CHECK(v2q(Rat(x - pr.rho)) == 20 - j * 6);
    }
}

TEST_CASE("rotation_deltas for the named families") {
    auto d5 = rotation_deltas(family("ell5"));
    long mx = 0;
    for (auto& d : d5)
        if (d) mx = std::max(mx, *d);
    CHECK(mx == 4);
    auto d10 = rotation_deltas(family("m10"));
    mx = 0;
    for (auto& d : d10)
        if (d) mx = std::max(mx, *d);
    CHECK(mx == 3);
}

TEST_CASE("census_iterate") {
    CHECK(census_iterate(family("ell5")).C_e == 16);
    CHECK(census_iterate(family("ell6")).C_e == 8);
    CHECK(census_iterate(family("ell7")).C_e == 32);
    CHECK(census_iterate(family("ell8")).C_e == 128);
    // universal-depth steps flagged; brute-force check at fidelity 2^10
    for (const char* name : {"ell5", "ell6", "ell7", "ell8"}) {
        auto sig = family(name);
        auto rep = census_iterate(sig);
        auto pr = phantom_root(sig);
        unsigned long K = sig.depth();
        Int shadow = mod_pow2(pr.C * mod_inverse_pow2(pr.D, K), K);
        std::vector<Rat> lifts;
        for (unsigned long u = 0; u < 1024; ++u) lifts.push_back(Rat(shadow + Int(u) * pow2(K)));
        for (size_t s = 1; s < sig.ell(); ++s) {
            for (auto& x : lifts) {
                Rat t = 3 * x + 1;
                long v = v2q(t);
                x = t / pow2(v);
            }
            auto& st = rep.steps[s];
            if (st.universal_depth) {
                for (auto& x : lifts) REQUIRE(v2q(Rat(x - pr.rho)) == *st.delta);
            }
        }
    }
}

TEST_CASE("census end-of-cycle ratio 1 for the seven named families") {
    for (const char* name : {"ell5", "ell6", "ell7", "ell8", "m10", "m11", "m20"}) {
        auto sig = family(name);
        auto pr = phantom_root(sig);
        unsigned long K = sig.depth();
        // v2(F_sigma(x) - rho) = v2(x - rho) - K over sampled lifts
        for (unsigned long u = 1; u <= 5; u += 2) {
            Rat x = pr.rho + Rat(u) * pow2(K + 4);
            Rat y = x;
            for (auto k : sig.k) {
                Rat t = 3 * y + 1;
                y = t / pow2(k);
            }
            REQUIRE(v2q(Rat(y - pr.rho)) == v2q(Rat(x - pr.rho)) - static_cast<long>(K));
        }
    }
}

TEST_CASE("necklace counts: Mobius vs brute force (required oracle)") {
    for (unsigned long K = 3; K <= 14; ++K) {
        auto a = necklace_counts(K);
        auto b = necklace_counts_bruteforce(K);
        REQUIRE(a.total == b.total);
        REQUIRE(a.expanding == b.expanding);
        for (auto& [l, c] : b.by_length) REQUIRE(a.by_length[l] == c);
    }
    auto n6 = necklace_counts(6);
    CHECK(n6.expanding == 3);
    auto n9 = necklace_counts(9);
    CHECK(n9.expanding == 14);
    auto n3 = necklace_counts(3);
    CHECK(n3.expanding == 1);
    CHECK(n3.by_length[2] == 1);
}

TEST_CASE("gain_series") {
    auto gs = gain_series(55);
    CHECK(std::abs(gs.partial_sum - 0.08783) < 5e-5);
    CHECK(gs.total_bound < 0.0893);
    // chernoff bound dominates each term
    for (unsigned long K = 10; K <= 55; ++K) CHECK(gs.r_of_k[K - 3] <= chernoff_bound(K));
    CHECK(std::abs(chernoff_exponent() - 0.05004) < 1e-5);
    double rstar = std::pow(2.0, -chernoff_exponent());
    CHECK(std::abs(rstar - 0.9659) < 1e-4);
}

TEST_CASE("overlap_and_period for the named families") {
    // family -> (m*, max delta, C_e bound 2^{m*-1})
    struct Row {
        const char* name;
        unsigned long mstar;
        long maxd;
    };
    for (auto& row : {Row{"ell5", 5, 4}, Row{"ell6", 5, 3}, Row{"ell7", 6, 5}, Row{"ell8", 8, 7},
                      Row{"m10", 5, 3}, Row{"m11", 6, 4}, Row{"m20", 5, 3}}) {
        auto rep = overlap_and_period(family(row.name), 2 * family(row.name).depth());
        CHECK(rep.m_star == row.mstar);
        CHECK(rep.max_delta == row.maxd);
        CHECK(rep.uniqueness_bound);
        for (auto& r : rep.per_m) CHECK(r.bounds_hold);
    }
}

TEST_CASE("overlap bounds on a random signature batch") {
    // deterministic batch: 200 signatures from a counter generator
    collatz::CounterRng rng(20240815);
    int pass = 0;
    for (int i = 0; i < 200; ++i) {
        Signature s;
        unsigned long K = 0;
        unsigned long l = 4 + rng.next_u64() % 8;
        for (unsigned long j = 0; j < l; ++j) {
            unsigned long k = 1 + rng.next_u64() % 3;
            s.k.push_back(k);
            K += k;
        }
        auto rep = overlap_and_period(s, 2 * K);
        bool ok = rep.uniqueness_bound || rep.m_star == 0;
        for (auto& r : rep.per_m) ok = ok && r.bounds_hold;
        pass += ok;
    }
    CHECK(pass == 200);  // 100% pass rate
}

TEST_CASE("periodic_core") {
    Signature tau{{1, 2}}, eta{{1, 3}};
    auto pc = periodic_core(tau, 3, eta);
    CHECK(pc.exact_identity);
    CHECK(pc.lhs_valuation == pc.rhs_valuation);
    // empty tail: exact agreement
    auto pc0 = periodic_core(tau, 3, Signature{});
    CHECK(pc0.exact_agreement);
    // first mismatch at position 0: v2 = min(a0, b0)
    Signature a{{1, 2}}, b{{3, 2}};
    CHECK(first_mismatch_valuation(a, b) == 1);
    // delta_p >= prefix valuation when the prefix has period p
    Signature per{{1, 2, 1, 2, 1, 3}};
    auto ds = rotation_deltas(per);
    REQUIRE(ds[1].has_value());  // s = 2 is the period of the prefix
    CHECK(*ds[1] >= 1 + 2);
}

TEST_CASE("gain_observable") {
    for (unsigned long K = 5; K <= 12; ++K) {
        auto g = gain_observable(K);
        CHECK(g.injective);
        CHECK(g.support_fraction >= 0.19);
        CHECK(g.support_fraction <= 0.50);
    }
    auto g14 = gain_observable(14);
    CHECK(g14.injective);
}

TEST_CASE("walsh_spectrum") {
    // delta at 0 -> flat spectrum
    std::vector<double> f(16, 0.0);
    f[0] = 1.0;
    auto fh = walsh_spectrum(f);
    for (auto x : fh) CHECK(x == doctest::Approx(1.0 / 16));
    // Parseval: sum f^2 = 2^K sum fhat^2
    collatz::CounterRng rng(5);
    std::vector<double> g(256);
    for (auto& x : g) x = rng.next_double() - 0.5;
    auto gh = walsh_spectrum(g);
    double lhs = 0, rhs = 0;
    for (auto x : g) lhs += x * x;
    for (auto x : gh) rhs += x * x;
    CHECK(lhs == doctest::Approx(256 * rhs).epsilon(1e-12));
}

TEST_CASE("h_K spectral concentration at K = 8") {
    auto g = gain_observable(8);
    // embed on all residues mod 2^8 (zero on even)
    std::vector<double> f(256, 0.0);
    for (size_t i = 0; i < g.values.size(); ++i) f[2 * i + 1] = g.values[i];
    auto fh = walsh_spectrum(f);
    auto bands = band_power(fh);
    double total = 0;
    for (auto b : bands) total += b;
    double low = bands[0] + bands[1];
    CHECK(low / total >= 0.70);
    CHECK(low / total <= 0.78);
}

TEST_CASE("orbit walsh content exceeds a random baseline at K = 8") {
    const unsigned long K = 8;
    auto t = orbit(Int(837799), 600);
    std::vector<double> mu(1ul << K, 0.0);
    for (size_t i = 0; i < t.steps(); ++i)
        mu[mpz_fdiv_ui(t.values[i].get_mpz_t(), 1ul << K)] += 1.0 / t.steps();
    auto muh = walsh_spectrum(mu);
    double s1 = 0;
    int n1 = 0;
    for (size_t xi = 0; xi < muh.size(); ++xi)
        if (__builtin_popcountll(xi) == 1) {
            s1 += muh[xi] * muh[xi];
            ++n1;
        }
    s1 /= n1;
    // random baseline with the same number of samples
    collatz::CounterRng rng(11);
    std::vector<double> nu(1ul << K, 0.0);
    for (size_t i = 0; i < t.steps(); ++i) nu[rng.next_u64() & ((1ul << K) - 1)] += 1.0 / t.steps();
    auto nuh = walsh_spectrum(nu);
    double r1 = 0;
    for (size_t xi = 0; xi < nuh.size(); ++xi)
        if (__builtin_popcountll(xi) == 1) r1 += nuh[xi] * nuh[xi];
    r1 /= n1;
    CHECK(s1 >= 3 * r1);
}

TEST_CASE("structural_checks") {
    auto c53 = structural_checks(5, 3);
    CHECK(c53.binomial_fibers);
    CHECK(c53.harmonic);
    auto c73 = structural_checks(7, 3);
    CHECK(c73.supnorm_ratio == Rat(1, 2));
    CHECK(c73.supnorm_ok);
    auto c83 = structural_checks(8, 3);
    CHECK(c83.binomial_fibers);
    CHECK(c83.harmonic);
    CHECK(theta_oscillation(19) > theta_oscillation(3));  // spike at K = 19
}

TEST_CASE("split budget inequality in equal-case splits") {
    // every equal-case split satisfies 2^{gamma'_0 - 1} + 2^{gamma'_1 - 1} <= 2^{gamma}
    // with gamma'_0 = 1, gamma'_1 = 0: 1 + 1/2 = 3/2 <= 2^gamma for gamma >= 1
    for (const char* name : {"ell5", "ell6", "ell7", "ell8"}) {
        auto sig = family(name);
        auto pr = phantom_root(sig);
        unsigned long K = sig.depth();
        Int shadow = mod_pow2(pr.C * mod_inverse_pow2(pr.D, K), K);
        Int A = shadow, B = pow2(K);
        for (unsigned long s = 0; s < K; ++s) {
            Int t = 3 * A + 1;
            unsigned long alpha = v2(t), gamma = v2(B);
            if (gamma == 0) break;
            if (alpha == gamma) {
                // children gammas: even-u -> v2(6b) = 1; odd-u -> 0 generically
                CHECK(Rat(pow2(1), 2) + Rat(1, 2) <= pow2(gamma));
                break;
            }
            if (alpha > gamma) break;
            mpz_fdiv_q_2exp(A.get_mpz_t(), t.get_mpz_t(), alpha);
            Int b3 = 3 * B;
            mpz_fdiv_q_2exp(B.get_mpz_t(), b3.get_mpz_t(), alpha);
        }
    }
}
