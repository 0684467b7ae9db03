#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "collatzkit/rational.hpp"

namespace collatz {

// Net-positive state graph on (odd residue mod 2^M, budget grain).  The budget
// is discretized in `grains` grains per bit with floored per-block drift
//   floor(grains * (K log2 3 - V)) = floor(log2 3^{grains*K}) - grains*V,
// clamped above at B bits; a step that would drive it negative exits.
// This discretization reproduces the published acyclicity/ranking tables.
struct StateGraph {
    unsigned long M, K, B, grains;
    std::vector<uint32_t> succ_residue;   // per odd residue index
    std::vector<long> drift;              // per odd residue index, in grains
    size_t levels() const { return grains * B + 1; }
    size_t vertices() const { return succ_residue.size() * levels(); }

    size_t index(size_t r_idx, size_t b) const { return r_idx * levels() + b; }
    // successor vertex or nullopt (exit)
    std::optional<size_t> successor(size_t v) const {
        size_t r_idx = v / levels();
        long b = static_cast<long>(v % levels());
        long nb = b + drift[r_idx];
        if (nb < 0) return std::nullopt;
        if (nb > static_cast<long>(levels() - 1)) nb = static_cast<long>(levels() - 1);
        return index(succ_residue[r_idx], static_cast<size_t>(nb));
    }
};

StateGraph build_state_graph(unsigned long M, unsigned long K, unsigned long B,
                             unsigned long grains = 2);

struct DagRanking {
    bool acyclic;
    std::vector<size_t> cycle_vertices;    // vertices on cycles when cyclic
    size_t cycle_residues;                 // distinct residues among them
    std::vector<std::vector<uint32_t>> residue_cycles;  // residue cycles found
    size_t max_rank;                       // longest path to an exit (acyclic only)
};
DagRanking dag_ranking(const StateGraph& g);

// carry parity of a residue cycle: sum of floor(T(r)/2^M) mod 2 with T
// evaluated mod 2^{M+1}
int carry_parity(const std::vector<uint32_t>& cycle, unsigned long M);

// net drift sign of a residue cycle (exact power comparison)
bool cycle_net_positive(const std::vector<uint32_t>& cycle, unsigned long M, unsigned long K);

// max d such that the cycle lifts to a net-positive cycle in G_{M+d}
unsigned long lift_depth(const std::vector<uint32_t>& cycle, unsigned long M, unsigned long K,
                         unsigned long d_max = 2);

struct AugmentedGraph {
    size_t core_states;
    size_t exits;
    size_t returns;
    size_t outside_cycles;
    size_t walk_limited;
    bool acyclic;
    size_t max_rank;
    std::vector<std::pair<size_t, size_t>> return_edges;  // exit vertex -> re-entry vertex
};
AugmentedGraph augmented_graph(unsigned long M, unsigned long B, unsigned long step_limit = 0,
                               unsigned long grains = 2);

struct ExitReturnMap {
    size_t h_edges;
    size_t max_L;           // longest path depth in H
    size_t max_composite;   // max of the composite ranking V(x)
    bool h_acyclic;
    bool equivalence;       // H acyclic == augmented graph acyclic
    bool composite_ok;      // V(y) <= V(x) - 1 verified on every edge
};
ExitReturnMap exit_return_map(unsigned long M, unsigned long B, unsigned long grains = 2);

struct SInvariantCheck {
    bool exact_decrement;   // s(T(r)) = s(r) - 1 on every v=1 edge
    unsigned long longest_chain;
    bool acyclic;
};
SInvariantCheck s_invariant_check(unsigned long M);

struct BudgetCheck {
    unsigned long drain;    // number of v=1 steps
    long reload;            // sum of s-increments over v>=2 steps
    bool balanced;
};
BudgetCheck budget_check(const std::vector<uint32_t>& cycle, unsigned long M);

// adjacency text export: "r b -> r' b'" per line, "exit" for exits
std::string export_adjacency(const StateGraph& g);

}  // namespace collatz
