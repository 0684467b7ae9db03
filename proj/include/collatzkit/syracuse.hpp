#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "collatzkit/rational.hpp"

namespace collatz {

inline Int collatz_step(const Int& n) {
    if (n < 1) throw std::domain_error("positive integers only");
    if (mpz_even_p(n.get_mpz_t())) return n / 2;
    return 3 * n + 1;
}

struct SyracuseStep {
    Int next;
    unsigned long valuation;
};

// T(n) = (3n+1) / 2^{v2(3n+1)} for odd n.
inline SyracuseStep syracuse_step(const Int& n) {
    if (n < 1 || mpz_even_p(n.get_mpz_t()))
        throw std::domain_error("Syracuse map requires odd argument");
    Int m = 3 * n + 1;
    unsigned long v = v2(m);
    Int next;
    mpz_fdiv_q_2exp(next.get_mpz_t(), m.get_mpz_t(), v);
    return {next, v};
}

// Per-step class in the cascade-gap decomposition (v-convention):
// burst v=1, recovery v=2 inside a cascade, gap v>=2 between cascades,
// pre-cascade v>=2 before the first burst.
enum class StepClass : uint8_t { Burst, Recovery, Gap, PreCascade };

struct OrbitTrace {
    Int start;
    // steps[t] = (odd value before step t+1, valuation of that step)
    std::vector<Int> values;               // values[0] = start, all odd
    std::vector<unsigned long> valuations; // valuations[t] = v2(3*values[t]+1)
    std::vector<StepClass> classes;        // class of step t
    bool reached_one = false;

    size_t steps() const { return valuations.size(); }
};

// Syracuse orbit from odd n0 until the value 1 or max_steps steps.
OrbitTrace orbit(const Int& n0, size_t max_steps);

// L(n) = v2(n+1) - 1: number of consecutive v=1 steps before the first v>=2.
inline unsigned long run_length(const Int& n) {
    if (mpz_even_p(n.get_mpz_t())) throw std::domain_error("odd argument required");
    Int t = n + 1;
    return v2(t) - 1;
}

struct CycleType {
    unsigned long L;  // run length (v=1 steps)
    unsigned long r;  // compensating valuation >= 2
    Rat lambda() const { return Rat(pow3(L + 1), pow2(L + r)); }
    Rat beta() const { return Rat(pow3(L + 1) - pow2(L + 1), pow2(L + r)); }
};

struct CycleDecomposition {
    std::vector<CycleType> cycles;
    size_t trailing_steps;  // steps of an incomplete final cycle that were dropped
};

// Partition a valuation sequence into run-compensate cycles (1,...,1,r>=2).
CycleDecomposition cycle_types(const std::vector<unsigned long>& valuations);
inline CycleDecomposition cycle_types(const OrbitTrace& t) { return cycle_types(t.valuations); }

// Burst-gap decomposition with the odd-run-length convention k_t = v2(n_t + 1):
// bursts are maximal runs with k >= 2, gaps maximal runs with k = 1.
struct BurstGapDecomposition {
    bool starts_with_burst;
    std::vector<size_t> lengths;  // alternating run lengths
};
BurstGapDecomposition burst_gap_decompose(const OrbitTrace& t);

// x_t = log2 n_t - log2 n_0 as doubles; sign cross-checked exactly.
std::vector<double> drift_signal(const OrbitTrace& t);

// First Syracuse step with value < n0; counts full Collatz steps instead
// when collatz_steps is set.
std::optional<size_t> sigma_crossing(const Int& n0, size_t cap, bool collatz_steps = false);

struct Autocorrelation {
    std::vector<double> rho;  // lags 1..max_lag
    double abs_sum;
};
Autocorrelation drift_autocorrelation(const OrbitTrace& t, size_t max_lag);

// #{m in [1,window] : m appears in some Collatz orbit started from a seed <= seed_cap}
size_t touched_set(size_t seed_cap, size_t window);

}  // namespace collatz
