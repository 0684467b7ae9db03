#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "collatzkit/matrix.hpp"
#include "collatzkit/rational.hpp"

namespace collatz {

// quotient residue q mod 8^r
struct OctalResidue {
    Int value;
    unsigned long depth;
};

inline Int octal_modulus(unsigned long r) {
    Int m;
    mpz_ui_pow_ui(m.get_mpz_t(), 8, r);
    return m;
}

// q -> 9q + 8 (mod 8^r)
inline Int chain_map(const Int& q, unsigned long r) {
    Int m = octal_modulus(r);
    Int t = 9 * q + 8;
    return t % m;
}

struct CoreSet {
    unsigned long depth;
    std::vector<Int> elements;       // sorted
    std::vector<Int> fixed_points;
    std::vector<Int> two_cycle;
};

// Largest subset of the depth-r Cantor set (digits in {0,3,7}) whose forward
// chain-map orbit stays inside the Cantor set.
CoreSet invariant_core(unsigned long r);

// elements of I_r that extend to compatible chains of the given extra depth;
// the infinite tower reduces to {8^r - 1}
std::vector<Int> projective_survivors(unsigned long r, unsigned long extra_depth);

struct Q7Return {
    Int step1;      // S(n) = 384m + 379
    Int step2;      // S^2(n) = 64(9m+8) + 57
    Int quotient;   // q' = 9m + 8
};
Q7Return q7_return(const Int& m);

// first four iterates mod 64 of n = 512m + 249; none is 57
std::vector<unsigned long> q3_trace(const Int& m);

struct Gap5Cylinder {
    Int a_w;                   // residue mod 2^{w+6}
    unsigned long modulus_exp; // w + 6
    Rat density;
};
Gap5Cylinder gap5_cylinder(unsigned long w);

// The 5x5 known-gap partial return kernel on I_2; Perron root 129/1024.
RatMatrix partial_kernel();

struct AbsorptionRun {
    unsigned long steps;        // Syracuse steps to reach 1 (mod 8^r)
    bool revisited_core;        // I_r re-entry after the seed chain first left it
};
AbsorptionRun absorption_run(unsigned long r, const Int& s, const Int& offset = Int(10000));

struct BottleneckConstants {
    double c0;        // log2(1024/129)
    double capacity;  // log2 5
    double deficit;
    Rat alpha;        // 645/1024 exact
};
BottleneckConstants bottleneck_constants();

struct InterchainRatio {
    double raw_fraction;
    double normalized;   // raw / (|I_r| / 8^r)
    double c_prime;      // -log2(normalized)
    size_t visits;
};
// fiber-57 visits separated by more than gap_threshold Collatz steps
InterchainRatio interchain_ratio(const Int& n0, unsigned long r, size_t min_visits,
                                 unsigned long gap_threshold = 5);
InterchainRatio interchain_ratio_batch(const std::vector<Int>& seeds, unsigned long r,
                                       unsigned long gap_threshold = 5);

// t -> (3^k t + d_pi) mod q is a bijection (exhaustive image check)
bool branch_bijection_check(const std::vector<unsigned long>& path, unsigned long q);

}  // namespace collatz
