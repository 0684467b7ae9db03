#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "collatzkit/matrix.hpp"
#include "collatzkit/modular.hpp"
#include "collatzkit/syracuse.hpp"

namespace collatz {

// One cascade-gap cycle.  A cascade runs through mod-8 states {1,3,7} from a
// burst entry (n = 3 mod 4) and ends at the first iterate = 5 (mod 8); the gap
// covers iterates = 1 (mod 4) until the next entry.
struct CascadeCycle {
    std::vector<std::pair<unsigned long, unsigned long>> episodes;  // (burst k, recovery j)
    std::vector<unsigned long> gap_valuations;                      // each >= 2
    unsigned long entry_mod32;
    unsigned long exit_mod32;  // next cascade entry
    long bit_growth_x1000;     // 1000*log2(next_entry/entry), rounded
    unsigned long s_cascade, s_gap;
};

struct CascadeStats {
    std::vector<CascadeCycle> cycles;
    double mean_episodes;  // E[L]
    double mean_s_cascade;
    double mean_s_gap;
};

CascadeStats classify_cascades(const OrbitTrace& t);

// Fraction of exact-recovery-depth-j odd classes mod 2^depth whose
// post-recovery iterate is = 3 (mod 4); equals 2/3 for every j.
Rat two_thirds_census(unsigned long j, unsigned long depth);

struct TransitionCensus {
    Distribution k_law;      // next burst length; k'=0 means cascade ends
    Distribution depth_law;  // next recovery depth j'
};
TransitionCensus transition_census(unsigned long depth);

// 4 if j even, 3 if j odd; expectation 19/5 under the (3/4)4^{-d} law.
unsigned long gap_first_valuation(unsigned long j);
Rat expected_gap_first_valuation();

struct GapCompensation {
    double deficit;   // D(j, L)
    double surplus;   // G1(j)
    bool compensated; // G1 >= D, decided exactly via power comparisons
};
GapCompensation gap_compensation(unsigned long j, unsigned long L);

struct CascadeMarkov {
    RatMatrix Q;                  // transient states 1, 3, 7 (mod 8)
    std::vector<Rat> exit_prob;   // to the absorbing state 5 (mod 8)
    RatMatrix fundamental;        // N = (I - Q)^{-1}
    Rat q3, q7;                   // episode continuation from states 3, 7
    Rat q_mean;                   // (q3 + q7)/2, reported alongside both
    Rat expected_S;               // expected cascade valuation from entry
    Rat burst_exit_gap_fraction;  // share of burst exits going straight to gap
};
// Re-derived by exhaustive residue enumeration mod 16/32.
CascadeMarkov cascade_markov();

struct CascadePgf {
    Rat value;        // G(z)
};
Rat cascade_pgf(const Rat& z);
Rat cascade_pgf_mean();          // G'(1) = 5
double cascade_pgf_alpha();      // log2(sqrt(5) - 1)
std::vector<Rat> cascade_pgf_coefficients(size_t count);

// Enumerates all inputs mod 2^{S+R} realizing the gap path and checks that
// every odd output residue mod 2^R has the same preimage count.
bool uniform_fiber_check(const ValuationWord& path, unsigned long R);

struct FullCycleFiber {
    Int c_tau;
    bool multiplier_check;
};
// Exit affine form n_exit(u) = c_tau + 2*3^K*u over u < 2^6, by simulation.
FullCycleFiber full_cycle_fiber(const std::vector<unsigned long>& trajectory);

// 8x8 fiber-averaged matrix on cascade-entry classes (3 mod 4) in mod 32.
RatMatrix fiber_transition_matrix(unsigned long R, const Int& offset = Int(100003));

// C * 2^{-alpha (B_min - R)} / (1 - 2^{-2 alpha})
double tv_summability_bound(unsigned long B_min, unsigned long R, double alpha, double C);

struct CarryDecorrelation {
    double burst_corr_lag1;
    double delta_corr_lag1;
    unsigned long max_pos_run;
    size_t pairs;
};
CarryDecorrelation carry_decorrelation(unsigned long n_max);

}  // namespace collatz
