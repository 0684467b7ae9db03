#pragma once

#include <map>
#include <optional>
#include <vector>

#include "collatzkit/rational.hpp"

namespace collatz {

// signature (k_1, ..., k_l) of prescribed valuations
struct Signature {
    std::vector<unsigned long> k;
    unsigned long ell() const { return k.size(); }
    unsigned long depth() const {
        unsigned long K = 0;
        for (auto v : k) K += v;
        return K;
    }
    Signature rotate(size_t s) const {
        Signature r;
        r.k.reserve(k.size());
        for (size_t i = 0; i < k.size(); ++i) r.k.push_back(k[(s + i) % k.size()]);
        return r;
    }
};

// the seven named families used throughout the tests and suites
Signature family(const std::string& name);

struct PhantomRoot {
    Signature sig;
    Int C;        // carry constant
    Int D;        // 2^K - 3^l (odd, possibly negative)
    Rat rho;      // C / D
};

// C_sigma = sum 3^{l-1-j} 2^{k_1+...+k_j}; asserts F_sigma(rho) = rho exactly.
PhantomRoot phantom_root(const Signature& sig);

// v2(F_sigma(x) - rho) = v2(x - rho) - K for sampled x = rho (mod 2^m).
bool repulsion_check(const Signature& sig, unsigned long m, unsigned long samples = 8);

struct CensusStep {
    unsigned long s;
    long beta;   // v2(A_s - rho)
    long gamma;  // v2(B_s)
    std::optional<long> delta;  // intrinsic near-return v2(F_s(rho) - rho), s < l
    bool universal_depth;       // delta < gamma: every lift shares v2 = delta
};

struct CensusReport {
    std::vector<CensusStep> steps;
    Int C_e;  // max over steps of 2^{min(beta, gamma)}
};

// Affine census iteration on the shadow lifts (A_0, B_0) = (rho mod 2^K, 2^K).
CensusReport census_iterate(const Signature& sig);

// primitive (aperiodic) cyclic composition counts by Mobius inversion
struct NecklaceCounts {
    std::map<unsigned long, Int> by_length;  // ell -> M(K, ell)
    Int total;                               // sum over ell >= 2
    Int expanding;                           // M+(K): those with 3^l > 2^K
};
NecklaceCounts necklace_counts(unsigned long K);

// brute-force oracle used to validate the Mobius routine for small K
NecklaceCounts necklace_counts_bruteforce(unsigned long K);

struct GainSeries {
    std::vector<double> r_of_k;  // R(3..K_max)
    double partial_sum;
    double tail_bound;           // geometric envelope beyond K_max (ratio 0.979)
    double total_bound;
};
// R(K) = 2^{-K} sum_{3^l > 2^K} M(K,l) (log2 3 - K/l)
GainSeries gain_series(unsigned long K_max);
double gain_term(unsigned long K);

// (log2 3 - 1) 2^{-(K-1) D(alpha_K || 1/2)}
double chernoff_bound(unsigned long K);
double chernoff_exponent();  // D* = D(1/log2 3 || 1/2)

// delta_s by the rotation formula, cross-checked against the exact formula.
// nullopt entries mark rotations identical to sigma (periodic signatures).
std::vector<std::optional<long>> rotation_deltas(const Signature& sig);

struct OverlapReport {
    unsigned long m;
    unsigned long N_m;         // #{s : delta_s >= m}
    unsigned long occ;         // cyclic occurrences of the visible prefix
    std::vector<unsigned long> visible_prefix;
    unsigned long p_m;         // least period of the prefix
    bool bounds_hold;          // N(m) <= occ - 1 <= floor(l/p_m) - 1
};

struct OverlapAndPeriod {
    std::vector<OverlapReport> per_m;
    unsigned long m_star;      // least m with occ(P_m) = 1
    long max_delta;            // max finite delta_s
    bool uniqueness_bound;     // max_delta <= m_star - 1
};
OverlapAndPeriod overlap_and_period(const Signature& sig, unsigned long m_max);

struct PeriodicCoreCheck {
    long lhs_valuation;   // v2(C_l D_p - C_p D)
    long rhs_valuation;   // q K_p + v2(C_eta D_p - C_p D_eta)
    bool exact_identity;  // the factorization holds as integers
    bool exact_agreement; // empty tail: rho = rho_tau exactly
};
PeriodicCoreCheck periodic_core(const Signature& tau, unsigned long q, const Signature& eta);

// v2(E(tau, eta)) = M_r + min(a_r, b_r) at the first mismatch
long first_mismatch_valuation(const Signature& tau, const Signature& eta);

struct GainObservable {
    unsigned long K;
    std::vector<double> values;      // indexed by (odd residue - 1)/2
    std::vector<uint8_t> expanding;  // marks S+(K): aperiodic expanding shadows
    double support_fraction;         // |S+(K)| / 2^{K-1}
    bool injective;                  // coding map residue -> composition
};
GainObservable gain_observable(unsigned long K);

// composition of an odd residue a mod 2^K via its first K halvings
std::vector<unsigned long> residue_composition(const Int& a, unsigned long K);

struct StructuralChecks {
    bool binomial_fibers;      // suffix ell-counts exactly Bin(s, 1/2) per fiber
    bool harmonic;             // coarse average of centred h_{K+s} equals centred h_K
    Rat supnorm_ratio;         // (K-4)/(K-1)
    bool supnorm_ok;
    double theta_K;            // oscillation factor
    bool shadow_sparsity_ok;   // M+(K)/2^K <= 2^{-(K-1) D*/2} for K >= 10
};
StructuralChecks structural_checks(unsigned long K, unsigned long s);

double theta_oscillation(unsigned long K);

}  // namespace collatz
