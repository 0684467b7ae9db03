#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "collatzkit/rational.hpp"

namespace collatz {

// residue class value mod 2^modulus_exp
struct ResidueClass {
    Int value;
    unsigned long modulus_exp;
};

using ValuationWord = std::vector<unsigned long>;

// exact finite distribution; mass may sum to < 1, the rest is an
// unresolved tail reported as deficit
struct Distribution {
    std::vector<long> support;
    std::vector<Rat> mass;
    Rat deficit{0};
};

struct BlockResidue {
    ResidueClass cls;   // unique odd class mod 2^{sum(b)+1}
    Rat density;        // prod 2^{-b_j} among odd integers
};

// The unique odd class whose first m Syracuse valuations equal the word.
BlockResidue block_residue(const ValuationWord& word);

// Prop short-word-cylinder: unique odd c_w mod 2^V for words with entries >= 2.
BlockResidue short_word_residue(const ValuationWord& word);

enum class CensusLaw { Gap, Valuation, Quarter, Reload, PostBurst };

// Exhaustive residue census of the modular distribution laws at mod 2^depth.
// PostBurst takes the burst length k.
Distribution modular_census(CensusLaw law, unsigned long depth, unsigned long k = 0);

struct ScrambleDecomposition {
    unsigned long g;
    unsigned long V;         // total halvings over the g steps
    Int c_g;                 // additive correction
    unsigned long pattern_modulus;  // minimal M' fixing the halving pattern
};

// Halving-pattern decomposition of T^(g) on the class a mod 2^{a.modulus_exp};
// verifies T^(g)(a + d*2^{M'}) = (3^g a + c_g)/2^V + 3^g d 2^{M'-V} for d < 2^4.
ScrambleDecomposition scramble_decompose(const ResidueClass& a, unsigned long g);

struct KnownZoneTrace {
    std::vector<unsigned long> zone;  // Z_0 = M, then after each odd-to-odd block
    bool reached_one;                 // some member hit 1 before the zone emptied
};

// Known-zone sequence under iterated gap-map blocks (each block runs to and
// including the first v>=2 step), measured by brute force over 2^6 lifts.
KnownZoneTrace known_zone_trace(const ResidueClass& a, size_t steps);

// f_K: fraction of odd classes mod 2^K with a uniform crossing time for all
// members >= 3, by affine tracking.
Rat crossing_strata(unsigned long K, bool override_cost_guard = false);

// Exact survival probability of the barrier walk through J steps.
Rat lattice_path_f(unsigned long J);

// Fraction of odd residues mod 2^M whose deterministic valuation sequence
// keeps 2^{S_t} <= 3^t until the modular information is exhausted.
struct PositiveDrift {
    Rat fraction;
    unsigned long max_steps;
};
PositiveDrift positive_drift_fraction(unsigned long M);

// Fraction surviving exactly J determined steps (equals lattice_path_f(J)
// once M >= 2J+6).
Rat modular_survival_fraction(unsigned long M, unsigned long J);

}  // namespace collatz
