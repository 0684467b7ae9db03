#include "collatzkit/stategraph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace collatz {

namespace {

// K Syracuse steps on the integer representative; returns (residue', V)
std::pair<uint64_t, unsigned long> kstep(uint64_t r, unsigned long M, unsigned long K) {
    Int x = r;
    unsigned long V = 0;
    for (unsigned long i = 0; i < K; ++i) {
        Int t = 3 * x + 1;
        unsigned long v = v2(t);
        mpz_fdiv_q_2exp(x.get_mpz_t(), t.get_mpz_t(), v);
        V += v;
    }
    Int rr = mod_pow2(x, M);
    return {rr.get_ui(), V};
}

long floor_drift(unsigned long K, unsigned long V, unsigned long grains) {
    return floor_log2_pow3(grains * K) - static_cast<long>(grains * V);
}

}  // namespace

StateGraph build_state_graph(unsigned long M, unsigned long K, unsigned long B,
                             unsigned long grains) {
    if (M < 6 || M > 22) throw std::invalid_argument("6 <= M <= 22 required");
    if (K < 1 || K > 8) throw std::invalid_argument("1 <= K <= 8 required");
    if (B < 1) throw std::invalid_argument("B >= 1 required");
    StateGraph g;
    g.M = M;
    g.K = K;
    g.B = B;
    g.grains = grains;
    const size_t n = 1ull << (M - 1);
    g.succ_residue.resize(n);
    g.drift.resize(n);
    for (size_t i = 0; i < n; ++i) {
        uint64_t r = 2 * i + 1;
        auto [rr, V] = kstep(r, M, K);
        g.succ_residue[i] = static_cast<uint32_t>((rr - 1) / 2);
        g.drift[i] = floor_drift(K, V, grains);
    }
    return g;
}

DagRanking dag_ranking(const StateGraph& g) {
    DagRanking out{};
    const size_t V = g.vertices();
    // Kahn peeling on the functional graph
    std::vector<uint32_t> indeg(V, 0);
    for (size_t v = 0; v < V; ++v)
        if (auto w = g.successor(v)) ++indeg[*w];
    std::deque<size_t> q;
    for (size_t v = 0; v < V; ++v)
        if (indeg[v] == 0) q.push_back(v);
    std::vector<char> removed(V, 0);
    size_t removed_count = 0;
    while (!q.empty()) {
        size_t v = q.front();
        q.pop_front();
        removed[v] = 1;
        ++removed_count;
        if (auto w = g.successor(v))
            if (--indeg[*w] == 0) q.push_back(*w);
    }
    out.acyclic = removed_count == V;
    if (!out.acyclic) {
        std::set<uint32_t> residues;
        std::vector<char> on_cycle(V, 0);
        for (size_t v = 0; v < V; ++v)
            if (!removed[v]) {
                out.cycle_vertices.push_back(v);
                on_cycle[v] = 1;
                residues.insert(static_cast<uint32_t>(v / g.levels()));
            }
        out.cycle_residues = residues.size();
        // extract the residue cycles by walking unvisited cycle vertices
        std::vector<char> visited(V, 0);
        for (size_t v = 0; v < V; ++v) {
            if (removed[v] || visited[v]) continue;
            std::vector<uint32_t> cyc;
            size_t x = v;
            while (!visited[x]) {
                visited[x] = 1;
                cyc.push_back(static_cast<uint32_t>(2 * (x / g.levels()) + 1));
                x = *g.successor(x);
            }
            if (x == v) out.residue_cycles.push_back(cyc);
        }
        out.max_rank = 0;
        return out;
    }
    // longest path to exit on the functional DAG
    std::vector<int32_t> rank(V, -1);
    size_t best = 0;
    for (size_t v0 = 0; v0 < V; ++v0) {
        if (rank[v0] >= 0) continue;
        std::vector<size_t> stack{v0};
        while (!stack.empty()) {
            size_t x = stack.back();
            auto w = g.successor(x);
            if (!w) {
                rank[x] = 0;
                stack.pop_back();
            } else if (rank[*w] >= 0) {
                rank[x] = rank[*w] + 1;
                stack.pop_back();
            } else {
                stack.push_back(*w);
            }
        }
        best = std::max(best, static_cast<size_t>(rank[v0]));
    }
    for (size_t v = 0; v < V; ++v) best = std::max(best, static_cast<size_t>(rank[v]));
    out.max_rank = best;
    return out;
}

int carry_parity(const std::vector<uint32_t>& cycle, unsigned long M) {
    if (cycle.empty()) throw std::invalid_argument("open walk");
    Int mod = pow2(M);
    int parity = 0;
    for (auto r : cycle) {
        // T evaluated mod 2^{M+1}: carry = bit M of T(rep)
        Int x = Int(r);
        Int t = 3 * x + 1;
        unsigned long v = v2(t);
        Int y;
        mpz_fdiv_q_2exp(y.get_mpz_t(), t.get_mpz_t(), v);
        Int carry = mod_pow2(y, M + 1) / mod;
        parity ^= static_cast<int>(carry.get_ui() & 1);
    }
    return parity;
}

bool cycle_net_positive(const std::vector<uint32_t>& cycle, unsigned long M, unsigned long K) {
    unsigned long V = 0;
    for (auto r : cycle) V += kstep(r, M, K).second;
    // net positive iff n*K*log2(3) > V, i.e. 3^{nK} > 2^V
    return pow3(cycle.size() * K) > pow2(V);
}

unsigned long lift_depth(const std::vector<uint32_t>& cycle, unsigned long M, unsigned long K,
                         unsigned long d_max) {
    unsigned long depth = 0;
    for (unsigned long d = 1; d <= d_max; ++d) {
        unsigned long MM = M + d;
        // residues at depth MM projecting onto the cycle; follow the
        // deterministic dynamics and look for a closed net-positive lift
        bool lifted = false;
        for (uint64_t hi = 0; hi < (1ull << d) && !lifted; ++hi) {
            uint64_t r0 = cycle[0] + (hi << M);
            uint64_t x = r0;
            std::vector<uint32_t> lift;
            for (size_t i = 0; i < cycle.size(); ++i) {
                lift.push_back(static_cast<uint32_t>(x));
                if (mod_pow2(Int(x), M).get_ui() != cycle[i % cycle.size()]) break;
                x = kstep(x, MM, K).first;
            }
            if (lift.size() == cycle.size() && x == r0 &&
                cycle_net_positive(lift, MM, K))
                lifted = true;
        }
        if (lifted)
            depth = d;
        else
            break;
    }
    return depth;
}

AugmentedGraph augmented_graph(unsigned long M, unsigned long B, unsigned long step_limit,
                               unsigned long grains) {
    if (step_limit == 0) step_limit = 4 * M;
    StateGraph g = build_state_graph(M, 1, B, grains);
    AugmentedGraph out{};
    out.core_states = g.vertices();
    const size_t levels = g.levels();
    // exits and their outside walks
    for (size_t v = 0; v < g.vertices(); ++v) {
        size_t r_idx = v / levels;
        long b = static_cast<long>(v % levels);
        long nb = b + g.drift[r_idx];
        if (nb >= 0) continue;
        ++out.exits;
        // walk outside with the real (negative) budget
        size_t rr = g.succ_residue[r_idx];
        long bb = nb;
        std::set<std::pair<size_t, long>> seen;
        bool returned = false, cycled = false;
        for (unsigned long s = 0; s < step_limit; ++s) {
            if (bb >= 0) {
                returned = true;
                break;
            }
            if (!seen.insert({rr, bb}).second) {
                cycled = true;
                break;
            }
            bb += g.drift[rr];
            rr = g.succ_residue[rr];
        }
        if (returned) {
            ++out.returns;
            long clamped = std::min<long>(bb, static_cast<long>(levels) - 1);
            out.return_edges.emplace_back(v, g.index(rr, static_cast<size_t>(clamped)));
        } else if (cycled) {
            ++out.outside_cycles;
        } else {
            ++out.walk_limited;
        }
    }
    // acyclicity of core + return edges: Kahn with the extra edges
    const size_t V = g.vertices();
    std::vector<uint32_t> indeg(V, 0);
    std::vector<int64_t> extra(V, -1);
    for (auto& [e, t] : out.return_edges) extra[e] = static_cast<int64_t>(t);
    auto succ_of = [&](size_t v) -> std::optional<size_t> {
        if (auto w = g.successor(v)) return w;
        if (extra[v] >= 0) return static_cast<size_t>(extra[v]);
        return std::nullopt;
    };
    for (size_t v = 0; v < V; ++v)
        if (auto w = succ_of(v)) ++indeg[*w];
    std::deque<size_t> q;
    for (size_t v = 0; v < V; ++v)
        if (indeg[v] == 0) q.push_back(v);
    size_t removed = 0;
    std::vector<char> rm(V, 0);
    while (!q.empty()) {
        size_t v = q.front();
        q.pop_front();
        rm[v] = 1;
        ++removed;
        if (auto w = succ_of(v))
            if (--indeg[*w] == 0) q.push_back(*w);
    }
    out.acyclic = removed == V;
    out.max_rank = 0;
    if (out.acyclic) {
        std::vector<int32_t> rank(V, -1);
        for (size_t v0 = 0; v0 < V; ++v0) {
            std::vector<size_t> stack{v0};
            while (!stack.empty()) {
                size_t x = stack.back();
                if (rank[x] >= 0) {
                    stack.pop_back();
                    continue;
                }
                auto w = succ_of(x);
                if (!w) {
                    rank[x] = 0;
                    stack.pop_back();
                } else if (rank[*w] >= 0) {
                    rank[x] = rank[*w] + 1;
                    stack.pop_back();
                } else {
                    stack.push_back(*w);
                }
            }
            out.max_rank = std::max(out.max_rank, static_cast<size_t>(rank[v0]));
        }
    }
    return out;
}

ExitReturnMap exit_return_map(unsigned long M, unsigned long B, unsigned long grains) {
    StateGraph g = build_state_graph(M, 1, B, grains);
    DagRanking core = dag_ranking(g);
    if (!core.acyclic) throw std::domain_error("cyclic core");
    AugmentedGraph aug = augmented_graph(M, B, 0, grains);
    ExitReturnMap out{};
    // H: exit -> exit reached by following the core path from the re-entry
    std::map<size_t, size_t> h;  // exit vertex -> exit vertex
    auto to_exit = [&](size_t v) {
        // follow core edges until the exit vertex (the one whose step leaves)
        size_t x = v;
        while (true) {
            auto w = g.successor(x);
            if (!w) return x;
            x = *w;
        }
    };
    for (auto& [e, t] : aug.return_edges) h[e] = to_exit(t);
    out.h_edges = h.size();
    // acyclicity of H (functional on its domain)
    std::map<size_t, int> state;  // 0 unvisited, 1 in-progress, 2 done
    std::map<size_t, size_t> depth;
    out.h_acyclic = true;
    for (auto& [e, _] : h) {
        if (state[e]) continue;
        std::vector<size_t> path;
        size_t x = e;
        while (true) {
            if (state[x] == 1) {
                out.h_acyclic = false;
                break;
            }
            if (state[x] == 2 || h.find(x) == h.end()) break;
            state[x] = 1;
            path.push_back(x);
            x = h[x];
        }
        if (!out.h_acyclic) break;
        size_t d = (h.find(x) == h.end()) ? 0 : depth[x];
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            state[*it] = 2;
            depth[*it] = ++d;
        }
    }
    out.max_L = 0;
    if (out.h_acyclic)
        for (auto& [v, d] : depth) out.max_L = std::max(out.max_L, d);
    out.equivalence = out.h_acyclic == aug.acyclic;
    // composite ranking V(x) = (D+1) L(e(x)) + d(x) over core vertices that
    // reach a returning exit; verify the decrement property on core edges
    out.composite_ok = true;
    out.max_composite = 0;
    if (out.h_acyclic) {
        // d(x): core distance to own exit; e(x): that exit
        // (functional graph: follow and memoize)
        std::map<size_t, std::pair<size_t, size_t>> info;  // v -> (exit, dist)
        auto exit_info = [&](size_t v) {
            std::vector<size_t> path;
            size_t x = v;
            while (info.find(x) == info.end()) {
                auto w = g.successor(x);
                path.push_back(x);
                if (!w) {
                    info[x] = {x, 0};
                    break;
                }
                x = *w;
            }
            auto base = info[path.empty() ? x : path.back()];
            for (auto it = path.rbegin(); it != path.rend(); ++it) {
                if (info.find(*it) == info.end()) {
                    auto w = g.successor(*it);
                    auto prev = info[*w];
                    info[*it] = {prev.first, prev.second + 1};
                }
            }
            (void)base;
            return info[v];
        };
        size_t D = 0;
        std::vector<std::pair<size_t, size_t>> cache(g.vertices());
        for (size_t v = 0; v < g.vertices(); ++v) {
            cache[v] = exit_info(v);
            D = std::max(D, cache[v].second);
        }
        auto Lof = [&](size_t ex) {
            auto it = depth.find(ex);
            return it == depth.end() ? size_t(0) : it->second;
        };
        for (size_t v = 0; v < g.vertices(); ++v) {
            size_t Vv = (D + 1) * Lof(cache[v].first) + cache[v].second;
            out.max_composite = std::max(out.max_composite, Vv);
            if (auto w = g.successor(v)) {
                size_t Vw = (D + 1) * Lof(cache[*w].first) + cache[*w].second;
                if (Vw > Vv - 1) out.composite_ok = false;
            }
        }
        // return edges must also decrement
        for (auto& [e, t] : aug.return_edges) {
            size_t Ve = (D + 1) * Lof(cache[e].first) + cache[e].second;
            size_t Vt = (D + 1) * Lof(cache[t].first) + cache[t].second;
            if (Vt > Ve - 1) out.composite_ok = false;
        }
    }
    return out;
}

SInvariantCheck s_invariant_check(unsigned long M) {
    if (M < 3) throw std::invalid_argument("M >= 3 required");
    SInvariantCheck out{true, 0, true};
    // positive-drift edges are the v=1 steps (r = 3 mod 4); s(r) = v2(r+1)
    const uint64_t mod = 1ull << M;
    std::vector<uint32_t> schain(mod / 2, 0);
    unsigned long longest = 0;
    for (uint64_t r = 3; r < mod; r += 4) {
        Int t = 3 * Int(r) + 1;
        if (v2(t) != 1) continue;  // representative with higher valuation
        Int y = t / 2;
        unsigned long sr = v2(Int(r + 1));
        unsigned long sy = v2(Int(y + 1));
        if (sy != sr - 1) out.exact_decrement = false;
        longest = std::max(longest, sr);
    }
    out.longest_chain = longest;  // chain from s = M down to 1
    return out;
}

BudgetCheck budget_check(const std::vector<uint32_t>& cycle, unsigned long M) {
    if (cycle.empty()) throw std::invalid_argument("closed cycle required");
    BudgetCheck out{0, 0, false};
    for (size_t i = 0; i < cycle.size(); ++i) {
        Int r(cycle[i]);
        Int t = 3 * r + 1;
        unsigned long v = v2(t);
        Int y;
        mpz_fdiv_q_2exp(y.get_mpz_t(), t.get_mpz_t(), v);
        Int next = mod_pow2(y, M);
        unsigned long s_r = v2(Int(r + 1));
        unsigned long s_n = v2(Int(next + 1));
        if (v == 1)
            ++out.drain;
        else
            out.reload += static_cast<long>(s_n) - static_cast<long>(s_r);
    }
    out.balanced = out.reload == static_cast<long>(out.drain);
    return out;
}

std::string export_adjacency(const StateGraph& g) {
    std::ostringstream os;
    os << "# net-positive state graph M=" << g.M << " K=" << g.K << " B=" << g.B
       << " grains=" << g.grains << "\n";
    const size_t levels = g.levels();
    for (size_t v = 0; v < g.vertices(); ++v) {
        size_t r = 2 * (v / levels) + 1;
        size_t b = v % levels;
        os << r << " " << b;
        if (auto w = g.successor(v)) {
            os << " -> " << 2 * (*w / levels) + 1 << " " << *w % levels << "\n";
        } else {
            os << " exit\n";
        }
    }
    return os.str();
}

}  // namespace collatz
