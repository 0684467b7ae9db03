#include "collatzkit/modular.hpp"

#include <map>

#include "collatzkit/syracuse.hpp"

namespace collatz {

namespace {

// valuation of (3x+1) readable from x known mod 2^rem; nullopt when the
// residue is 0 mod 2^rem (valuation undetermined at this depth)
std::optional<unsigned long> determined_valuation(const Int& x, unsigned long rem) {
    Int t = 3 * x + 1;
    Int res = mod_pow2(t, rem);
    if (res == 0) return std::nullopt;
    return v2(res);
}

}  // namespace

BlockResidue block_residue(const ValuationWord& word) {
    if (word.empty()) throw std::invalid_argument("empty word");
    for (auto b : word)
        if (b < 1) throw std::invalid_argument("word entries must be >= 1");
    // Built backwards.  Suffix class (c, E) starts as all odds (1 mod 2);
    // prepending a step of exact valuation b solves
    //   3n + 1 = 2^b * c  (mod 2^{b+E}),  i.e.  n = (2^b c - 1) 3^{-1}.
    // The odd class c keeps v2(3n+1) = b exact.
    Int c = 1;
    unsigned long E = 1;
    for (size_t i = word.size(); i-- > 0;) {
        unsigned long b = word[i];
        unsigned long E2 = b + E;
        Int inv3 = mod_inverse_pow2(Int(3), E2);
        c = mod_pow2((pow2(b) * c - 1) * inv3, E2);
        E = E2;
    }
    BlockResidue out;
    out.cls = {c, E};                    // E = sum(b) + 1
    out.density = Rat(1, pow2(E - 1));   // among odd integers
    return out;
}

BlockResidue short_word_residue(const ValuationWord& word) {
    if (word.empty()) throw std::invalid_argument("empty word");
    for (auto v : word)
        if (v < 2) throw std::invalid_argument("short-word entries must be >= 2");
    unsigned long V = 0;
    for (auto v : word) V += v;
    // backward: c' for the suffix; C = (2^{v1} c' - 1) * 3^{-1} mod 2^V
    Int c = 1;  // empty suffix
    unsigned long Vs = 0;
    for (size_t i = word.size(); i-- > 0;) {
        Vs += word[i];
        Int inv3 = mod_inverse_pow2(Int(3), Vs);
        Int t = pow2(word[i]) * c - 1;
        c = mod_pow2(t * inv3, Vs);
    }
    BlockResidue out;
    out.cls.value = c;
    out.cls.modulus_exp = V;
    out.density = Rat(1, pow2(V - 1));
    return out;
}

Distribution modular_census(CensusLaw law, unsigned long depth, unsigned long k) {
    Distribution d;
    switch (law) {
        case CensusLaw::Gap: {
            if (depth < 3) throw std::invalid_argument("gap law needs depth >= 3");
            // classes n = 3 (mod 4): gap length g = 1 + #{subsequent iterates = 3 mod 4}
            unsigned long gmax = depth - 2;  // depth >= g+2 resolvable
            std::map<long, Int> count;
            Int total = 0, unresolved = 0;
            Int mod = pow2(depth);
            for (Int r = 3; r < mod; r += 4) {
                ++total;
                Int x = r;
                unsigned long used = 2;  // bits pinning x = 3 mod 4
                unsigned long g = 0;
                bool resolved = false;
                while (used + 1 <= depth) {
                    ++g;
                    Int t = 3 * x + 1;
                    x = t / 2;  // v = 1 on this branch
                    ++used;
                    // continue iff x = 3 (mod 4), decidable with 2 more bits
                    if (used + 2 > depth) break;
                    if (mpz_fdiv_ui(x.get_mpz_t(), 4) == 1) {
                        resolved = true;
                        break;
                    }
                }
                if (resolved && g <= gmax)
                    count[static_cast<long>(g)] += 1;
                else
                    ++unresolved;
            }
            for (auto& [g, c] : count) {
                d.support.push_back(g);
                d.mass.push_back(Rat(c, total));
            }
            d.deficit = Rat(unresolved, total);
            break;
        }
        case CensusLaw::Valuation: {
            if (depth < 3) throw std::invalid_argument("valuation law needs depth >= 3");
            std::map<long, Int> count;
            Int total = 0, unresolved = 0;
            Int mod = pow2(depth);
            for (Int r = 1; r < mod; r += 4) {
                ++total;
                Int t = 3 * r + 1;
                Int res = mod_pow2(t, depth);
                if (res == 0) {
                    ++unresolved;
                    continue;
                }
                unsigned long v = v2(res);
                if (v + 1 <= depth)
                    count[static_cast<long>(v)] += 1;
                else
                    ++unresolved;
            }
            for (auto& [j, c] : count) {
                d.support.push_back(j);
                d.mass.push_back(Rat(c, total));
            }
            d.deficit = Rat(unresolved, total);
            break;
        }
        case CensusLaw::Quarter: {
            if (depth < 6) throw std::invalid_argument("quarter law needs depth >= 6");
            // per persistent state (k0, mu): successor persistent fraction.
            // successor of the burst from (k0, m): P = 3^{k0} m, n' = (P-1)/2,
            // k' = v2((P+1)/2), m' = (P+1)/2^{k'+1}; persistent iff 3^{k'} m' = 7 (mod 8).
            Int mod = pow2(depth);
            Int cont = 0, total = 0, unresolved = 0;
            for (unsigned long k0 = 2; k0 <= 5; ++k0) {
                for (unsigned long mu = 1; mu < 8; mu += 2) {
                    // persistent state?
                    if (mpz_fdiv_ui(Int(pow3(k0) * mu).get_mpz_t(), 8) != 7) continue;
                    for (Int m = mu; m < mod; m += 8) {
                        ++total;
                        Int P = pow3(k0) * m;
                        Int P1 = P + 1;
                        unsigned long vp = v2(P1);
                        if (vp + 3 > depth) {
                            ++unresolved;
                            continue;
                        }
                        unsigned long kprime = vp - 1;
                        Int mprime;
                        mpz_fdiv_q_2exp(mprime.get_mpz_t(), P1.get_mpz_t(), kprime + 1);
                        if (kprime >= 2 &&
                            mpz_fdiv_ui(Int(pow3(kprime) * mprime).get_mpz_t(), 8) == 7)
                            ++cont;
                    }
                }
            }
            d.support = {1, 0};  // 1 = successor persistent, 0 = safe
            d.mass = {Rat(cont, total), Rat(total - cont - unresolved, total)};
            d.deficit = Rat(unresolved, total);
            break;
        }
        case CensusLaw::Reload: {
            if (depth < 4) throw std::invalid_argument("reload law needs depth >= 4");
            // v2 = 2 steps: r = 1 (mod 8); reload = v2(q+1), q = (3r+1)/4
            std::map<long, Int> count;
            Int total = 0, unresolved = 0;
            Int mod = pow2(depth);
            for (Int r = 1; r < mod; r += 8) {
                ++total;
                Int q = (3 * r + 1) / 4;
                Int q1 = q + 1;
                Int res = mod_pow2(q1, depth - 3);
                if (res == 0) {
                    ++unresolved;
                    continue;
                }
                count[static_cast<long>(v2(res))] += 1;
            }
            for (auto& [j, c] : count) {
                d.support.push_back(j);
                d.mass.push_back(Rat(c, total));
            }
            d.deficit = Rat(unresolved, total);
            break;
        }
        case CensusLaw::PostBurst: {
            if (k < 1) throw std::invalid_argument("post-burst law needs k >= 1");
            if (depth < 6) throw std::invalid_argument("post-burst law needs depth >= 6");
            // n0 = 2^{k+1} m - 1, m odd: v_{k+1} = 1 + v2(3^{k+1} m - 1)
            std::map<long, Int> count;
            Int total = 0, unresolved = 0;
            Int mod = pow2(depth);
            Int p3 = pow3(k + 1);
            for (Int m = 1; m < mod; m += 2) {
                ++total;
                Int t = p3 * m - 1;
                Int res = mod_pow2(t, depth);
                if (res == 0) {
                    ++unresolved;
                    continue;
                }
                count[static_cast<long>(1 + v2(res))] += 1;
            }
            for (auto& [j, c] : count) {
                d.support.push_back(j);
                d.mass.push_back(Rat(c, total));
            }
            d.deficit = Rat(unresolved, total);
            break;
        }
    }
    return d;
}

ScrambleDecomposition scramble_decompose(const ResidueClass& a, unsigned long g) {
    if (g == 0) throw std::invalid_argument("g must be positive");
    const unsigned long M = a.modulus_exp;
    // halving pattern over the class: valuations must be determined at each step
    Int x = mod_pow2(a.value, M);
    unsigned long V = 0;
    std::vector<unsigned long> pattern;
    for (unsigned long i = 0; i < g; ++i) {
        unsigned long rem = M - V;
        if (rem == 0)
            throw std::domain_error("halving pattern splits at bit " + std::to_string(M) +
                                    " (class modulus exhausted)");
        auto v = determined_valuation(x, rem);
        if (!v)
            throw std::domain_error("halving pattern splits at bit " + std::to_string(M - V) +
                                    " of step " + std::to_string(i + 1));
        pattern.push_back(*v);
        Int t = 3 * x + 1;
        mpz_fdiv_q_2exp(x.get_mpz_t(), t.get_mpz_t(), *v);
        V += *v;
    }
    // minimal M' <= M for which the pattern is constant on the class
    unsigned long Mp = V + 1;
    for (; Mp <= M; ++Mp) {
        Int y = mod_pow2(a.value, Mp);
        unsigned long W = 0;
        bool ok = true;
        for (unsigned long i = 0; i < g && ok; ++i) {
            unsigned long rem = Mp - W;
            if (rem == 0) { ok = false; break; }
            auto v = determined_valuation(y, rem);
            if (!v || *v != pattern[i]) { ok = false; break; }
            Int t = 3 * y + 1;
            mpz_fdiv_q_2exp(y.get_mpz_t(), t.get_mpz_t(), *v);
            W += *v;
        }
        if (ok) break;
    }
    // c_g from the exact affine identity on the representative
    Int rep = mod_pow2(a.value, Mp);
    if (rep == 0) rep = pow2(Mp);
    Int img = rep;
    for (unsigned long i = 0; i < g; ++i) {
        Int t = 3 * img + 1;
        mpz_fdiv_q_2exp(img.get_mpz_t(), t.get_mpz_t(), pattern[i]);
    }
    // img = (3^g rep + c_g) / 2^V
    Int c_g = img * pow2(V) - pow3(g) * rep;
    // verify the scrambling identity over small lifts
    for (Int delta = 0; delta < 16; ++delta) {
        Int n = rep + delta * pow2(Mp);
        Int y = n;
        for (unsigned long i = 0; i < g; ++i) {
            Int t = 3 * y + 1;
            unsigned long v = v2(t);
            if (v != pattern[i]) throw std::logic_error("pattern not constant on lift");
            mpz_fdiv_q_2exp(y.get_mpz_t(), t.get_mpz_t(), v);
        }
        Int expect = (pow3(g) * rep + c_g) / pow2(V) + pow3(g) * delta * pow2(Mp - V);
        if (y != expect) throw std::logic_error("scrambling identity failed");
    }
    return {g, V, c_g, Mp};
}

KnownZoneTrace known_zone_trace(const ResidueClass& a, size_t steps) {
    if (a.modulus_exp < 4) throw std::invalid_argument("modulus_exp >= 4 required");
    KnownZoneTrace out;
    out.reached_one = false;
    const unsigned long M = a.modulus_exp;
    out.zone.push_back(M);
    // brute force over 2^6 lifts: one zone step = iterate each lift to and
    // including its first v>=2 step; the zone is the count of agreeing low bits.
    const int W = 6;
    std::vector<Int> lifts;
    Int base = mod_pow2(a.value, M);
    if (mpz_even_p(base.get_mpz_t())) throw std::invalid_argument("odd class required");
    for (int d = 0; d < (1 << W); ++d) lifts.push_back(base + Int(d) * pow2(M));
    for (size_t s = 0; s < steps && out.zone.back() > 0; ++s) {
        for (auto& x : lifts) {
            while (true) {
                if (x == 1) { out.reached_one = true; break; }
                auto st = syracuse_step(x);
                x = st.next;
                if (st.valuation >= 2) break;
            }
            if (out.reached_one) break;
        }
        if (out.reached_one) break;
        unsigned long z = M + W;  // cap
        for (size_t i = 1; i < lifts.size(); ++i) {
            Int diff = lifts[i] - lifts[0];
            if (diff == 0) continue;
            z = std::min(z, v2(diff));
        }
        if (z > M) z = M;
        out.zone.push_back(z);
    }
    return out;
}

Rat crossing_strata(unsigned long K, bool override_cost_guard) {
    if (K < 2) throw std::invalid_argument("K >= 2 required");
    if (K > 16 && !override_cost_guard)
        throw std::invalid_argument("K > 16 refused (cost guard; override to force)");
    Int mod = pow2(K);
    Int resolved = 0, total = 0;
    for (Int r = 1; r < mod; r += 2) {
        ++total;
        Int minrep = (r >= 3) ? r : (r + mod);
        Int A = r;
        unsigned long V = 0, s = 0;
        bool ok = false;
        while (true) {
            unsigned long rem = K - V;
            if (rem == 0) break;
            Int t = 3 * A + 1;
            Int res = mod_pow2(t, rem);
            if (res == 0) {
                // valuation >= rem for every member; the minimal image decides
                if (mpz_divisible_2exp_p(t.get_mpz_t(), rem)) {
                    Int Amin;
                    mpz_fdiv_q_2exp(Amin.get_mpz_t(), t.get_mpz_t(), rem);
                    unsigned long V2 = V + rem, s2 = s + 1;
                    if (pow2(V2) > pow3(s2)) {
                        Int Cs = pow2(V2) * Amin - pow3(s2) * r;
                        if (Rat(Cs, pow2(V2) - pow3(s2)) < minrep) ok = true;
                    }
                }
                break;
            }
            unsigned long v = v2(res);
            Int t2 = 3 * A + 1;
            mpz_fdiv_q_2exp(A.get_mpz_t(), t2.get_mpz_t(), v);
            V += v;
            ++s;
            if (pow2(V) > pow3(s)) {
                Int Cs = pow2(V) * A - pow3(s) * r;
                if (Rat(Cs, pow2(V) - pow3(s)) < minrep) {
                    ok = true;
                    break;
                }
            }
        }
        if (ok) ++resolved;
    }
    return Rat(resolved, total);
}

Rat lattice_path_f(unsigned long J) {
    // DP over partial sums with geometric step weights 2^{-j} and the exact
    // barrier b(t) = floor(t log2 3) from integer power comparison.
    std::map<unsigned long, Rat> cur{{0, Rat(1)}};
    for (unsigned long t = 1; t <= J; ++t) {
        long b = floor_log2_pow3(t);
        std::map<unsigned long, Rat> nxt;
        for (auto& [s, p] : cur) {
            for (unsigned long j = 1; static_cast<long>(s + j) <= b; ++j) {
                Rat w = p / pow2(j);
                nxt[s + j] += w;
            }
        }
        cur = std::move(nxt);
    }
    Rat f = 0;
    for (auto& [s, p] : cur) f += p;
    return f;
}

PositiveDrift positive_drift_fraction(unsigned long M) {
    if (M < 6 || M > 24) throw std::invalid_argument("6 <= M <= 24 required");
    Int mod = pow2(M);
    Int alive = 0, total = 0;
    unsigned long max_steps = 0;
    for (Int r = 1; r < mod; r += 2) {
        ++total;
        Int x = r;
        unsigned long V = 0, t = 0;
        bool ok = true;
        while (true) {
            unsigned long rem = M - V;
            if (rem == 0) break;
            Int t3 = 3 * x + 1;
            Int res = mod_pow2(t3, rem);
            if (res == 0) {
                if (t == 0) ok = false;  // valuation never determined
                break;
            }
            unsigned long v = v2(res);
            mpz_fdiv_q_2exp(x.get_mpz_t(), t3.get_mpz_t(), v);
            V += v;
            ++t;
            if (pow2(V) > pow3(t)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            ++alive;
            max_steps = std::max(max_steps, t);
        }
    }
    return {Rat(alive, mod / 2), max_steps};
}

Rat modular_survival_fraction(unsigned long M, unsigned long J) {
    Int mod = pow2(M);
    Int alive = 0;
    for (Int r = 1; r < mod; r += 2) {
        Int x = r;
        unsigned long V = 0, t = 0;
        bool ok = true;
        while (t < J) {
            unsigned long rem = M - V;
            Int t3 = 3 * x + 1;
            Int res = (rem == 0) ? Int(0) : mod_pow2(t3, rem);
            if (res == 0) {
                ok = false;
                break;
            }
            unsigned long v = v2(res);
            mpz_fdiv_q_2exp(x.get_mpz_t(), t3.get_mpz_t(), v);
            V += v;
            ++t;
            if (pow2(V) > pow3(t)) {
                ok = false;
                break;
            }
        }
        if (ok) ++alive;
    }
    return Rat(alive, mod / 2);
}

}  // namespace collatz
