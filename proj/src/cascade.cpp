#include "collatzkit/cascade.hpp"

#include <cmath>
#include <map>

namespace collatz {

namespace {

unsigned long mod8(const Int& n) { return mpz_fdiv_ui(n.get_mpz_t(), 8); }
unsigned long mod32(const Int& n) { return mpz_fdiv_ui(n.get_mpz_t(), 32); }

// run one full cascade-gap cycle from a cascade entry (n = 3 mod 4);
// returns the next entry, or 0 if the orbit reached 1 first
Int one_cycle(Int n, CascadeCycle* rec) {
    if (mpz_fdiv_ui(n.get_mpz_t(), 4) != 3) throw std::invalid_argument("entry must be 3 (mod 4)");
    if (rec) {
        rec->entry_mod32 = mod32(n);
        rec->s_cascade = rec->s_gap = 0;
    }
    unsigned long burst = 0, recovery = 0;
    bool in_burst = true;
    // cascade: states {1,3,7} mod 8 transient, 5 absorbing
    while (mod8(n) != 5) {
        auto s = syracuse_step(n);
        if (rec) {
            rec->s_cascade += s.valuation;
            if (s.valuation == 1) {
                if (!in_burst) {  // new episode begins
                    rec->episodes.emplace_back(burst, recovery);
                    burst = recovery = 0;
                    in_burst = true;
                }
                ++burst;
            } else {
                in_burst = false;
                ++recovery;
            }
        }
        n = s.next;
        if (n == 1) return Int(0);
    }
    if (rec) rec->episodes.emplace_back(burst, recovery);
    // gap: iterates = 1 (mod 4) until the next entry
    while (mpz_fdiv_ui(n.get_mpz_t(), 4) != 3) {
        auto s = syracuse_step(n);
        if (rec) {
            rec->gap_valuations.push_back(s.valuation);
            rec->s_gap += s.valuation;
        }
        n = s.next;
        if (n == 1) return Int(0);
    }
    if (rec) rec->exit_mod32 = mod32(n);
    return n;
}

}  // namespace

CascadeStats classify_cascades(const OrbitTrace& t) {
    CascadeStats out{};
    if (t.values.empty()) throw std::invalid_argument("empty trace");
    size_t i = 0;
    const size_t N = t.steps();
    auto val_mod = [&](size_t idx, unsigned long m) {
        return mpz_fdiv_ui(t.values[idx].get_mpz_t(), m);
    };
    while (i < N && val_mod(i, 4) != 3) ++i;  // skip the pre-cascade segment
    while (i < N) {
        CascadeCycle c{};
        c.entry_mod32 = val_mod(i, 32);
        size_t start = i;
        unsigned long burst = 0, recovery = 0;
        bool in_burst = true, complete = false;
        // cascade phase: states {1,3,7} mod 8
        for (; i < N; ++i) {
            if (val_mod(i, 8) == 5) break;
            if (t.valuations[i] == 1) {
                if (!in_burst) {
                    c.episodes.emplace_back(burst, recovery);
                    burst = recovery = 0;
                    in_burst = true;
                }
                ++burst;
            } else {
                in_burst = false;
                ++recovery;
            }
            c.s_cascade += t.valuations[i];
        }
        if (i >= N) break;  // truncated mid-cascade; drop the partial cycle
        c.episodes.emplace_back(burst, recovery);
        // gap phase: iterates = 1 (mod 4)
        for (; i < N; ++i) {
            if (val_mod(i, 4) == 3) {
                complete = true;
                break;
            }
            c.gap_valuations.push_back(t.valuations[i]);
            c.s_gap += t.valuations[i];
        }
        if (!complete) break;
        c.exit_mod32 = val_mod(i, 32);
        double g = std::log2(mpz_get_d(t.values[i].get_mpz_t())) -
                   std::log2(mpz_get_d(t.values[start].get_mpz_t()));
        c.bit_growth_x1000 = static_cast<long>(std::lround(1000.0 * g));
        out.cycles.push_back(std::move(c));
    }
    double e = 0, sc = 0, sg = 0;
    for (const auto& c : out.cycles) {
        e += static_cast<double>(c.episodes.size());
        sc += c.s_cascade;
        sg += c.s_gap;
    }
    size_t m = out.cycles.empty() ? 1 : out.cycles.size();
    out.mean_episodes = e / m;
    out.mean_s_cascade = sc / m;
    out.mean_s_gap = sg / m;
    return out;
}

namespace {

// exact recovery depth of odd C: consecutive v=2 steps; the depth is
// class-determined once 2j+3 bits are known
std::pair<unsigned long, Int> recovery_depth(Int C, unsigned long bit_budget) {
    unsigned long j = 0;
    while (2 * j + 3 <= bit_budget) {
        Int t = 3 * C + 1;
        if (v2(t) != 2) break;
        C = t / 4;
        ++j;
    }
    return {j, C};
}

}  // namespace

Rat two_thirds_census(unsigned long j, unsigned long depth) {
    if (depth < 2 * j + 3) throw std::invalid_argument("depth >= 2j+3 required");
    Int mod = pow2(depth);
    Int hits = 0, total = 0;
    for (Int C = 1; C < mod; C += 2) {
        auto [dj, x] = recovery_depth(C, depth);
        if (dj != j) continue;
        ++total;
        if (mpz_fdiv_ui(x.get_mpz_t(), 4) == 3) ++hits;
    }
    if (total == 0) throw std::domain_error("no exact-depth classes at this depth");
    return Rat(hits, total);
}

TransitionCensus transition_census(unsigned long depth) {
    if (depth < 10) throw std::invalid_argument("depth >= 10 required");
    Int mod = pow2(depth);
    std::map<long, Int> kc, jc;
    Int total = 0, kunres = 0, junres = 0, jtotal = 0;
    for (Int C = 1; C < mod; C += 2) {
        ++total;
        auto [dj, x] = recovery_depth(C, depth);
        (void)dj;
        // next burst length k' = v2(x+1) - 1 (0 when x = 1 mod 4)
        Int x1 = x + 1;
        Int res = mod_pow2(x1, depth);
        if (res == 0) {
            ++kunres;
            continue;
        }
        unsigned long k = v2(res) - 1;
        if (k + 4 > depth) {
            ++kunres;
            continue;
        }
        kc[static_cast<long>(k)] += 1;
        if (k >= 1) {
            // run the burst, then the next cofactor's depth
            ++jtotal;
            Int y = x;
            bool bad = false;
            for (unsigned long i = 0; i < k; ++i) {
                Int t = 3 * y + 1;
                if (v2(t) != 1) { bad = true; break; }
                y = t / 2;
            }
            if (bad) { ++junres; continue; }
            // y = 2*3^k m - 1; C' = 3^k m = (y+1)/2 * 3^k / 3^k ... = 3^k * m
            Int m = (y + 1) / 2;  // = 3^k * m0 with m0 odd
            // depth of C' = 3^k m0 = m
            Int u = m - 1;
            if (u == 0) { jc[0] += 1; continue; }
            Int ures = mod_pow2(u, depth);
            if (ures == 0) { ++junres; continue; }
            unsigned long vu = v2(ures);
            unsigned long jd = vu / 2;
            if (2 * jd + 4 > depth) { ++junres; continue; }
            jc[static_cast<long>(jd)] += 1;
        }
    }
    TransitionCensus out;
    for (auto& [k, c] : kc) {
        out.k_law.support.push_back(k);
        out.k_law.mass.push_back(Rat(c, total));
    }
    out.k_law.deficit = Rat(kunres, total);
    for (auto& [j, c] : jc) {
        out.depth_law.support.push_back(j);
        out.depth_law.mass.push_back(Rat(c, jtotal));
    }
    out.depth_law.deficit = Rat(junres, jtotal);
    return out;
}

unsigned long gap_first_valuation(unsigned long j) { return (j % 2 == 0) ? 4 : 3; }

Rat expected_gap_first_valuation() {
    // sum_d (3/4) 4^{-d} v1(d) = (3/4)(4 * 16/15 + 3 * 4/15) = 19/5
    Rat even(16, 15), odd(4, 15);
    Rat e = Rat(3, 4) * (Rat(4) * even + Rat(3) * odd);
    return e;
}

GapCompensation gap_compensation(unsigned long j, unsigned long L) {
    const double a = std::log2(3.0);
    double D = static_cast<double>(L) * (2 * (a - 1) + static_cast<double>(j) * (a - 2));
    double G1 = static_cast<double>(gap_first_valuation(j)) - a;
    // exact comparison G1 >= D:
    //   v1 - a >= L(2(a-1) + j(a-2))  <=>  (v1 + 2L + 2jL) >= a (1 + 2L + jL)
    //   <=>  3^{1 + 2L + jL} <= 2^{v1 + 2L + 2jL}   (a = log2 3)
    unsigned long v1 = gap_first_valuation(j);
    Int lhs = pow3(1 + 2 * L + j * L);
    Int rhs = pow2(v1 + 2 * L + 2 * j * L);
    return {D, G1, lhs <= rhs};
}

CascadeMarkov cascade_markov() {
    // enumerate mod-16 transitions for states 3, 7 and mod-32 for state 1
    auto out8 = [](unsigned long n, unsigned long mod) {
        unsigned long t = 3 * n + 1;
        unsigned long v = 0;
        while ((t & 1u) == 0) {
            t >>= 1;
            ++v;
        }
        (void)mod;
        return std::pair<unsigned long, unsigned long>(t % 8, v);
    };
    std::map<unsigned long, std::map<unsigned long, int>> counts;  // state -> out8 -> n
    std::map<unsigned long, int> totals;
    for (unsigned long n = 3; n < 16; n += 4) {  // 3, 7, 11, 15: states 3 and 7 mod 8
        auto [o, v] = out8(n, 16);
        (void)v;
        counts[n % 8][o] += 1;
        totals[n % 8] += 1;
    }
    for (unsigned long n = 1; n < 32; n += 8) {  // 1, 9, 17, 25: state 1 mod 8
        auto [o, v] = out8(n, 32);
        (void)v;
        counts[1][o] += 1;
        totals[1] += 1;
    }
    const unsigned long states[3] = {1, 3, 7};
    CascadeMarkov cm{RatMatrix(3), {}, RatMatrix(3), 0, 0, 0, 0, 0};
    cm.exit_prob.assign(3, Rat(0));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j)
            cm.Q.at(i, j) = Rat(counts[states[i]][states[j]], totals[states[i]]);
        cm.exit_prob[i] = Rat(counts[states[i]][5], totals[states[i]]);
    }
    RatMatrix ImQ = RatMatrix::identity(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) ImQ.at(i, j) -= cm.Q.at(i, j);
    cm.fundamental = ImQ.inverse();
    // continuation: from state 1, reach {3,7} before 5
    Rat from1 = (cm.Q.at(0, 1) + cm.Q.at(0, 2)) / (1 - cm.Q.at(0, 0));
    cm.q3 = cm.Q.at(1, 0) * from1;                     // state 3 enters burst w.p. 1/2
    cm.q7 = cm.Q.at(2, 1) + cm.Q.at(2, 2);             // state 7 stays in {3,7}
    // q7's residual mass re-enters {3,7} deterministically; resolve by absorption
    // probabilities: h(s) = Pr(hit {3,7} before 5 | start s), h(3)=?, h(7)=?
    // h(1) = q11 h(1) + q13 + q17 ; h(3) = q31 h(1) + q33 + q37; similarly h(7).
    {
        Rat h1 = from1;
        cm.q3 = cm.Q.at(1, 0) * h1 + cm.Q.at(1, 1) + cm.Q.at(1, 2);
        cm.q7 = cm.Q.at(2, 0) * h1 + cm.Q.at(2, 1) + cm.Q.at(2, 2);
    }
    cm.q_mean = (cm.q3 + cm.q7) / 2;
    // expected cascade valuation from the averaged entry (states 3 and 7):
    // visits to state 1 cost 2, states 3 and 7 cost 1
    Rat s = 0;
    for (int entry = 1; entry <= 2; ++entry) {
        Rat row = cm.fundamental.at(entry, 0) * 2 + cm.fundamental.at(entry, 1) +
                  cm.fundamental.at(entry, 2);
        s += row;
    }
    cm.expected_S = s / 2;
    // burst exits: out of state 1, non-returning mass splits 1/3 gap : 2/3 recovery
    Rat non_burst = 1 - cm.Q.at(0, 0);
    cm.burst_exit_gap_fraction = cm.exit_prob[0] / non_burst;
    return cm;
}

Rat cascade_pgf(const Rat& z) {
    Rat den = 4 - 2 * z - z * z;
    if (den == 0) throw std::domain_error("pole of the cascade PGF");
    return z / den;
}

Rat cascade_pgf_mean() {
    // G'(z) = (4 - 2z - z^2 + z(2 + 2z)) / (4 - 2z - z^2)^2 at z = 1
    Rat z = 1;
    Rat den = 4 - 2 * z - z * z;
    Rat num = den + z * (2 + 2 * z);
    return num / (den * den);
}

double cascade_pgf_alpha() { return std::log2(std::sqrt(5.0) - 1.0); }

std::vector<Rat> cascade_pgf_coefficients(size_t count) {
    // (4 - 2z - z^2) sum a_k z^k = z  =>  4 a_k = [k==1] + 2 a_{k-1} + a_{k-2}
    std::vector<Rat> a(count, Rat(0));
    for (size_t k = 1; k < count; ++k) {
        Rat t = (k == 1 ? Rat(1) : Rat(0)) + 2 * a[k - 1] + (k >= 2 ? a[k - 2] : Rat(0));
        a[k] = t / 4;
    }
    return a;
}

bool uniform_fiber_check(const ValuationWord& path, unsigned long R) {
    if (R < 1) throw std::invalid_argument("R >= 1 required");
    unsigned long S = 0;
    for (auto v : path) {
        if (v < 2) throw std::invalid_argument("gap path entries must be >= 2");
        S += v;
    }
    if (S + R > 24) throw std::invalid_argument("S + R <= 24 (cost guard)");
    auto base = short_word_residue(path);
    // enumerate the class members mod 2^{S+R}
    std::map<unsigned long, size_t> preimages;
    Int mod_out = pow2(R);
    size_t members = 0;
    Int step = pow2(base.cls.modulus_exp);
    for (Int n = base.cls.value; n < pow2(S + R); n += step) {
        if (mpz_even_p(n.get_mpz_t())) continue;
        ++members;
        Int x = n;
        for (auto v : path) {
            Int t = 3 * x + 1;
            if (!mpz_divisible_2exp_p(t.get_mpz_t(), v))
                throw std::domain_error("path not realizable on this class");
            mpz_fdiv_q_2exp(x.get_mpz_t(), t.get_mpz_t(), v);
        }
        Int r = mod_pow2(x, R);
        if (mpz_odd_p(r.get_mpz_t())) preimages[r.get_ui()] += 1;
    }
    if (members == 0) throw std::domain_error("path not realizable");
    size_t expect = 0;
    bool first = true;
    for (auto& [r, c] : preimages) {
        if (first) {
            expect = c;
            first = false;
        } else if (c != expect) {
            return false;
        }
    }
    // every odd residue must appear
    return preimages.size() == (1u << (R - 1));
}

FullCycleFiber full_cycle_fiber(const std::vector<unsigned long>& trajectory) {
    if (trajectory.empty()) throw std::invalid_argument("empty trajectory");
    unsigned long S = 0;
    for (auto v : trajectory) S += v;
    unsigned long K = trajectory.size();
    // the realizing residues are the exact-word class mod 2^{S+1}
    Int mod = pow2(S + 1);
    Int rep = block_residue(trajectory).cls.value;
    if (rep == 0 || mpz_even_p(rep.get_mpz_t())) throw std::domain_error("trajectory not realizable");
    // c_tau = (3^K r + C_tau)/2^S: read it off by applying the affine steps
    Int img = rep;
    for (auto v : trajectory) {
        Int t = 3 * img + 1;
        mpz_fdiv_q_2exp(img.get_mpz_t(), t.get_mpz_t(), v);
    }
    FullCycleFiber out;
    out.c_tau = img;
    out.multiplier_check = true;
    Int mult = 2 * pow3(K);
    for (Int u = 0; u < 64; ++u) {
        Int n = rep + u * mod;
        Int x = n;
        for (auto v : trajectory) {
            Int t = 3 * x + 1;
            if (!mpz_divisible_2exp_p(t.get_mpz_t(), v)) {
                out.multiplier_check = false;
                break;
            }
            mpz_fdiv_q_2exp(x.get_mpz_t(), t.get_mpz_t(), v);
        }
        if (x != out.c_tau + mult * u) out.multiplier_check = false;
    }
    return out;
}

RatMatrix fiber_transition_matrix(unsigned long R, const Int& offset) {
    if (R < 7 || R > 13) throw std::invalid_argument("7 <= R <= 13 required");
    if (offset * pow2(R) < pow2(20)) throw std::invalid_argument("offset too small");
    const unsigned long classes[8] = {3, 7, 11, 15, 19, 23, 27, 31};
    RatMatrix T(8);
    Int modR = pow2(R);
    for (int i = 0; i < 8; ++i) {
        long counts[8] = {0};
        long total = 0;
        for (Int r = classes[i]; r < modR; r += 32) {
            if (mpz_even_p(r.get_mpz_t())) continue;
            Int n = r + modR * offset;
            Int nx = one_cycle(n, nullptr);
            if (nx == 0) throw std::domain_error("offset too small: orbit reached 1 in-cycle");
            unsigned long c = mod32(nx);
            for (int j = 0; j < 8; ++j)
                if (classes[j] == c) {
                    ++counts[j];
                    break;
                }
            ++total;
        }
        for (int j = 0; j < 8; ++j) T.at(i, j) = Rat(counts[j], total);
    }
    return T;
}

double tv_summability_bound(unsigned long B_min, unsigned long R, double alpha, double C) {
    if (alpha <= 0) throw std::invalid_argument("alpha > 0 required");
    return C * std::pow(2.0, -alpha * (static_cast<double>(B_min) - static_cast<double>(R))) /
           (1.0 - std::pow(2.0, -2.0 * alpha));
}

CarryDecorrelation carry_decorrelation(unsigned long n_max) {
    if (n_max < 10000) throw std::invalid_argument("n_max >= 1e4 required");
    std::vector<double> b0, b1, d0, d1;
    unsigned long max_run = 0;
    for (unsigned long n0 = 3; n0 <= n_max; n0 += 2) {
        Int n = n0;
        while (n != 1 && mpz_fdiv_ui(n.get_mpz_t(), 4) != 3) n = syracuse_step(n).next;
        std::vector<unsigned long> bursts;
        std::vector<double> deltas;
        unsigned long run = 0;
        while (n != 1) {
            CascadeCycle c{};
            Int entry = n;
            n = one_cycle(n, &c);
            if (n == 0) break;
            unsigned long maxb = 0;
            for (auto& [k, j] : c.episodes) {
                (void)j;
                maxb = std::max(maxb, k);
            }
            bursts.push_back(maxb);
            double g = std::log2(mpz_get_d(n.get_mpz_t())) -
                       std::log2(mpz_get_d(entry.get_mpz_t()));
            deltas.push_back(g);
            if (g > 0)
                ++run;
            else
                run = 0;
            max_run = std::max(max_run, run);
        }
        for (size_t i = 0; i + 1 < bursts.size(); ++i) {
            b0.push_back(static_cast<double>(bursts[i]));
            b1.push_back(static_cast<double>(bursts[i + 1]));
            d0.push_back(deltas[i]);
            d1.push_back(deltas[i + 1]);
        }
    }
    auto pearson = [](const std::vector<double>& x, const std::vector<double>& y) {
        double mx = 0, my = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            mx += x[i];
            my += y[i];
        }
        mx /= x.size();
        my /= y.size();
        double sxy = 0, sxx = 0, syy = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            sxy += (x[i] - mx) * (y[i] - my);
            sxx += (x[i] - mx) * (x[i] - mx);
            syy += (y[i] - my) * (y[i] - my);
        }
        return sxy / std::sqrt(sxx * syy);
    };
    return {pearson(b0, b1), pearson(d0, d1), max_run, b0.size()};
}

}  // namespace collatz
