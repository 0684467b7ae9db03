#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "collatzkit/rational.hpp"
#include "collatzkit/syracuse.hpp"

namespace collatz {

// affine endpoint map n -> lambda*n + beta of a cycle block
struct BlockAffine {
    Rat lambda{1};
    Rat beta{0};
    BlockAffine then(const CycleType& c) const {
        Rat l = c.lambda(), b = c.beta();
        return {Rat(l * lambda), Rat(l * beta + b)};
    }
};

using CycleBlock = std::vector<CycleType>;

BlockAffine block_compose(const CycleBlock& block);

struct CrossingThreshold {
    std::optional<Rat> n_star;
    bool crosses_never;
};

// Exact one-cycle crossing threshold n*(L, r).
CrossingThreshold crossing_threshold(unsigned long L, unsigned long r);

struct Thresholds {
    unsigned long r_min;  // least r with 2^{L+r} > 3^{L+1}
    unsigned long r_all;  // least r forcing n* < 1
};
Thresholds thresholds(unsigned long L);

// true iff Lambda_k < 1 and B_k < 1 - Lambda_k.
bool universal_block_check(const CycleBlock& block);

struct OneCycleDensities {
    Rat p1cyc;   // exact dyadic partial sum
    Rat p_all;
};
OneCycleDensities one_cycle_densities(unsigned long terms);

struct CumulativeDensity {
    std::vector<double> p_new;   // P_new(1..k)
    double p_cum;
    double truncation_deficit;   // per-cycle type mass beyond the budget
    bool budget_warning;
};
// Exact enumeration over k-cycle blocks with per-cycle L+r <= budget,
// first-universal-at-k bookkeeping.
CumulativeDensity cumulative_universal_density(unsigned long k, unsigned long budget);

struct KestenResult {
    double mass_below_1;
    std::vector<double> survival;  // R_k curve, k = 1..
    double rho0;                   // fitted survival ratio
    uint64_t seed;
};
KestenResult kesten_simulate(size_t steps, size_t burn_in, uint64_t seed,
                             size_t survival_trials = 100000, size_t kmax = 30);

struct LogDriftMoments {
    double mean;      // 2 log2 3 - 4
    double variance;  // 2((log2 3 - 1)^2 + 1)
    std::function<double(double)> mgf;
};
LogDriftMoments logdrift_moments();

struct CramerRate {
    double t_star;
    double I0;
};
CramerRate cramer_rate();

// C(n) = log2(1 + (1 - (2/3)^{L+1})/n) for the first cycle of n.
double cycle_correction(const Int& n);

struct AdversarialBlock {
    unsigned long t_min;
    Rat lambda, b;                 // at t_min
    bool universal_at_tmin;
    bool universal_at_tmin_plus_1;
};
// Block A^a B^t with A = (5,2), B = (0,3).
AdversarialBlock adversarial_block(unsigned long a);

double adversarial_theta_crit();

// beta_B^inf + lambda_B (1 + gamma_A) < 1, exact.
bool fragility_check(const CycleType& A, const CycleType& B);

// 2 if k even, else 3 + v2(k+1); cross-checked by simulating 2^{k+1}-1.
unsigned long post_mersenne_valuation(unsigned long k);

struct WeakRecoveryCylinder {
    Int residue;             // m = 3^{-k} mod 2^{2j}
    unsigned long modulus_exp;  // 2j
    Rat density;             // 2^{-(2j-1)} among odd m
};
WeakRecoveryCylinder weak_recovery_cylinder(unsigned long k, unsigned long j);

}  // namespace collatz
