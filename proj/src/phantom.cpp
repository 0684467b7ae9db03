#include "collatzkit/phantom.hpp"

#include <algorithm>
#include <cmath>

namespace collatz {

Signature family(const std::string& name) {
    // ell5..ell8 are the paper's small families; m10/m11/m20 are frozen
    // deterministic representatives matching the published (K, l, m*, max
    // delta) statistics (the originals were never printed).
    if (name == "ell3") return {{1, 1, 1}};
    if (name == "ell5") return {{1, 1, 1, 1, 2}};
    if (name == "ell6") return {{1, 1, 2, 1, 1, 1}};
    if (name == "ell7") return {{1, 1, 1, 1, 1, 2, 2}};
    if (name == "ell8") return {{1, 1, 1, 1, 1, 1, 1, 3}};
    if (name == "m10") return {{2, 2, 1, 1, 1, 1, 8, 14, 10, 1}};
    if (name == "m11") return {{2, 3, 10, 5, 7, 2, 2, 1, 4, 3, 2}};
    if (name == "m20") return {{1, 3, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 1, 2, 2, 1, 2, 1, 1, 2}};
    throw std::invalid_argument("unknown family: " + name);
}

namespace {

Int carry_constant(const Signature& sig) {
    Int C = 0;
    unsigned long V = 0;
    const unsigned long l = sig.ell();
    for (unsigned long j = 0; j < l; ++j) {
        C += pow3(l - 1 - j) * pow2(V);
        V += sig.k[j];
    }
    return C;
}

Rat block_map(const Signature& sig, const Rat& x) {
    Rat y = x;
    for (auto k : sig.k) {
        Rat t = 3 * y + 1;
        y = t / pow2(k);
    }
    return y;
}

}  // namespace

PhantomRoot phantom_root(const Signature& sig) {
    if (sig.k.empty()) throw std::invalid_argument("empty signature");
    for (auto v : sig.k)
        if (v < 1) throw std::invalid_argument("signature entries must be >= 1");
    PhantomRoot out;
    out.sig = sig;
    out.C = carry_constant(sig);
    out.D = pow2(sig.depth()) - pow3(sig.ell());
    out.rho = Rat(out.C, out.D);
    out.rho.canonicalize();
    if (block_map(sig, out.rho) != out.rho) throw std::logic_error("block map does not fix rho");
    return out;
}

bool repulsion_check(const Signature& sig, unsigned long m, unsigned long samples) {
    const unsigned long K = sig.depth();
    if (m < K) throw std::invalid_argument("m >= K required");
    PhantomRoot pr = phantom_root(sig);
    for (unsigned long i = 0; i < samples; ++i) {
        Rat x = pr.rho + Rat(2 * i + 1) * pow2(m);  // odd multiple of 2^m
        long before = v2q(Rat(x - pr.rho));
        Rat y = block_map(sig, x);
        if (y == pr.rho) continue;  // infinite-valuation sentinel, skipped
        long after = v2q(Rat(y - pr.rho));
        if (after != before - static_cast<long>(K)) return false;
    }
    return true;
}

std::vector<std::optional<long>> rotation_deltas(const Signature& sig) {
    const unsigned long l = sig.ell();
    if (l < 2) throw std::invalid_argument("l >= 2 required");
    const unsigned long K = sig.depth();
    Int C = carry_constant(sig);
    Int D = pow2(K) - pow3(l);
    std::vector<std::optional<long>> out;
    for (size_t s = 1; s < l; ++s) {
        Int Cs = carry_constant(sig.rotate(s));
        std::optional<long> d1;
        if (Cs != C) d1 = static_cast<long>(v2(Int(Cs - C)));
        // cross-check: delta_s = v2((3^s - 2^{K_s}) C + C_prefix D) - K_s
        unsigned long Ks = 0;
        for (size_t j = 0; j < s; ++j) Ks += sig.k[j];
        Signature prefix;
        prefix.k.assign(sig.k.begin(), sig.k.begin() + s);
        Int Cpre = carry_constant(prefix);
        Int Delta = (pow3(s) - pow2(Ks)) * C + Cpre * D;
        std::optional<long> d2;
        if (Delta != 0) d2 = static_cast<long>(v2(Delta)) - static_cast<long>(Ks);
        if (d1 != d2) throw std::logic_error("delta formulas disagree");
        out.push_back(d1);
    }
    return out;
}

CensusReport census_iterate(const Signature& sig) {
    const unsigned long K = sig.depth();
    PhantomRoot pr = phantom_root(sig);
    auto ds = rotation_deltas(sig);
    // shadow class representative
    Int shadow = mod_pow2(pr.C * mod_inverse_pow2(pr.D, K), K);
    CensusReport out;
    Int A = shadow;
    Int B = pow2(K);
    long best = 0;
    for (unsigned long s = 0; s <= K; ++s) {
        CensusStep step;
        step.s = s;
        Rat dA = Rat(A) - pr.rho;
        step.beta = (dA == 0) ? static_cast<long>(K) + 64 : v2q(dA);
        step.gamma = static_cast<long>(v2(B));
        step.delta = (s >= 1 && s <= ds.size()) ? ds[s - 1] : std::nullopt;
        step.universal_depth = step.delta && *step.delta < step.gamma;
        best = std::max(best, std::min(step.beta, step.gamma));
        out.steps.push_back(step);
        if (step.gamma == 0 || s == K) break;
        // affine update; the equal/reverse cases split the lift population,
        // and gamma strictly decreases in every child, so following the
        // even-u child keeps the (beta, gamma) bookkeeping well-defined
        Int t = 3 * A + 1;
        unsigned long alpha = v2(t);
        unsigned long gamma = v2(B);
        if (alpha < gamma) {
            mpz_fdiv_q_2exp(A.get_mpz_t(), t.get_mpz_t(), alpha);
            Int b3 = 3 * B;
            mpz_fdiv_q_2exp(B.get_mpz_t(), b3.get_mpz_t(), alpha);
        } else {
            B = 2 * B;  // split on u parity; continue with the even-u child
            Int t2 = 3 * A + 1;
            unsigned long a2 = v2(t2);
            if (a2 >= v2(B)) break;  // affine structure dissolves
            mpz_fdiv_q_2exp(A.get_mpz_t(), t2.get_mpz_t(), a2);
            Int b3 = 3 * B;
            mpz_fdiv_q_2exp(B.get_mpz_t(), b3.get_mpz_t(), a2);
        }
    }
    out.C_e = pow2(best);
    return out;
}

namespace {

int mobius(unsigned long n) {
    int r = 1;
    for (unsigned long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            r = -r;
        }
    }
    if (n > 1) r = -r;
    return r;
}

Int binom(unsigned long n, unsigned long k) {
    Int r;
    if (k > n) return Int(0);
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace

NecklaceCounts necklace_counts(unsigned long K) {
    if (K < 3 || K > 60) throw std::invalid_argument("3 <= K <= 60 required (cost guard)");
    NecklaceCounts out;
    out.total = 0;
    out.expanding = 0;
    for (unsigned long l = 2; l <= K; ++l) {
        Int s = 0;
        unsigned long g = std::__gcd(K, l);
        for (unsigned long d = 1; d <= g; ++d) {
            if (K % d || l % d) continue;
            int mu = mobius(d);
            if (mu == 0) continue;
            s += mu * binom(K / d - 1, l / d - 1);
        }
        Int m = s / l;
        if (m != 0) out.by_length[l] = m;
        out.total += m;
        if (pow3(l) > pow2(K)) out.expanding += m;
    }
    return out;
}

NecklaceCounts necklace_counts_bruteforce(unsigned long K) {
    if (K > 18) throw std::invalid_argument("brute force capped at K = 18");
    NecklaceCounts out;
    out.total = 0;
    out.expanding = 0;
    // enumerate compositions as bitmasks: composition of K <-> subset of cuts
    std::vector<char> seen(1u << (K - 1), 0);
    auto decode = [&](unsigned long mask) {
        std::vector<unsigned long> parts;
        unsigned long run = 1;
        for (unsigned long i = 0; i + 1 < K; ++i) {
            if (mask & (1ul << i)) {
                parts.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        parts.push_back(run);
        return parts;
    };
    auto encode = [&](const std::vector<unsigned long>& parts) {
        unsigned long mask = 0, pos = 0;
        for (size_t i = 0; i + 1 < parts.size(); ++i) {
            pos += parts[i];
            mask |= 1ul << (pos - 1);
        }
        return mask;
    };
    for (unsigned long mask = 0; mask < (1u << (K - 1)); ++mask) {
        if (seen[mask]) continue;
        auto parts = decode(mask);
        unsigned long l = parts.size();
        // collect the rotation orbit
        std::vector<unsigned long> orbit;
        for (unsigned long s = 0; s < l; ++s) {
            std::vector<unsigned long> rot;
            for (unsigned long i = 0; i < l; ++i) rot.push_back(parts[(s + i) % l]);
            orbit.push_back(encode(rot));
        }
        bool aperiodic = true;
        for (unsigned long s = 1; s < l; ++s)
            if (orbit[s] == orbit[0]) {
                aperiodic = false;
                break;
            }
        for (auto m : orbit) seen[m] = 1;
        if (l >= 2 && aperiodic) {
            out.by_length[l] += 1;
            out.total += 1;
            if (pow3(l) > pow2(K)) out.expanding += 1;
        }
    }
    return out;
}

double gain_term(unsigned long K) {
    const double a = std::log2(3.0);
    auto nc = necklace_counts(K);
    double sum = 0;
    for (auto& [l, m] : nc.by_length) {
        if (!(pow3(l) > pow2(K))) continue;  // exact expanding cutoff
        sum += m.get_d() * (a - static_cast<double>(K) / static_cast<double>(l));
    }
    return std::ldexp(sum, -static_cast<int>(K));
}

GainSeries gain_series(unsigned long K_max) {
    if (K_max < 10) throw std::invalid_argument("K_max >= 10 required");
    GainSeries out;
    out.partial_sum = 0;
    for (unsigned long K = 3; K <= K_max; ++K) {
        double r = gain_term(K);
        out.r_of_k.push_back(r);
        out.partial_sum += r;
    }
    const double ratio = 0.979;  // verified envelope
    out.tail_bound = out.r_of_k.back() * ratio / (1 - ratio);
    out.total_bound = out.partial_sum + out.tail_bound;
    return out;
}

double chernoff_exponent() {
    const double a = 1.0 / std::log2(3.0);
    return a * std::log2(2 * a) + (1 - a) * std::log2(2 * (1 - a));
}

double chernoff_bound(unsigned long K) {
    if (K < 10) throw std::invalid_argument("K >= 10 required");
    const double a = std::log2(3.0);
    double alphaK =
        (std::ceil(static_cast<double>(K) / a) - 1.0) / (static_cast<double>(K) - 1.0);
    double D = alphaK * std::log2(2 * alphaK) + (1 - alphaK) * std::log2(2 * (1 - alphaK));
    return (a - 1.0) * std::pow(2.0, -(static_cast<double>(K) - 1.0) * D);
}

namespace {

unsigned long occurrences(const Signature& sig, const std::vector<unsigned long>& prefix) {
    const unsigned long l = sig.ell();
    unsigned long cnt = 0;
    for (unsigned long t = 0; t < l; ++t) {
        bool match = true;
        for (size_t j = 0; j < prefix.size(); ++j)
            if (sig.k[(t + j) % l] != prefix[j]) {
                match = false;
                break;
            }
        cnt += match;
    }
    return cnt;
}

std::vector<unsigned long> visible_prefix(const Signature& sig, unsigned long m) {
    std::vector<unsigned long> p;
    unsigned long s = 0;
    for (auto k : sig.k) {
        if (s + k >= m) break;
        p.push_back(k);
        s += k;
    }
    return p;
}

unsigned long least_period(const std::vector<unsigned long>& w) {
    for (unsigned long p = 1; p <= w.size(); ++p) {
        bool ok = true;
        for (size_t j = 0; j + p < w.size(); ++j)
            if (w[j] != w[j + p]) {
                ok = false;
                break;
            }
        if (ok) return p;
    }
    return w.size();
}

}  // namespace

OverlapAndPeriod overlap_and_period(const Signature& sig, unsigned long m_max) {
    auto ds = rotation_deltas(sig);
    OverlapAndPeriod out;
    out.max_delta = 0;
    bool has = false;
    for (auto& d : ds)
        if (d) {
            out.max_delta = std::max(out.max_delta, *d);
            has = true;
        }
    if (!has) out.max_delta = -1;
    out.m_star = 0;
    const unsigned long l = sig.ell();
    for (unsigned long m = 1; m <= m_max; ++m) {
        auto P = visible_prefix(sig, m);
        if (P.empty()) continue;
        OverlapReport rep;
        rep.m = m;
        rep.visible_prefix = P;
        rep.occ = occurrences(sig, P);
        rep.p_m = least_period(P);
        rep.N_m = 0;
        for (auto& d : ds)
            if (!d || *d >= static_cast<long>(m)) ++rep.N_m;
        unsigned long cap = l / rep.p_m;
        rep.bounds_hold = rep.N_m <= rep.occ - 1 && rep.occ <= cap;
        out.per_m.push_back(rep);
        if (out.m_star == 0 && rep.occ == 1) out.m_star = m;
    }
    out.uniqueness_bound = out.m_star > 0 && out.max_delta <= static_cast<long>(out.m_star) - 1;
    return out;
}

PeriodicCoreCheck periodic_core(const Signature& tau, unsigned long q, const Signature& eta) {
    if (tau.k.empty()) throw std::invalid_argument("empty core");
    Signature sigma;
    for (unsigned long i = 0; i < q; ++i)
        sigma.k.insert(sigma.k.end(), tau.k.begin(), tau.k.end());
    sigma.k.insert(sigma.k.end(), eta.k.begin(), eta.k.end());
    Int Cl = carry_constant(sigma);
    Int D = pow2(sigma.depth()) - pow3(sigma.ell());
    Int Cp = carry_constant(tau);
    Int Dp = pow2(tau.depth()) - pow3(tau.ell());
    Int lhs = Cl * Dp - Cp * D;
    PeriodicCoreCheck out{};
    if (eta.k.empty()) {
        out.exact_agreement = (lhs == 0);
        out.exact_identity = out.exact_agreement;
        out.lhs_valuation = out.rhs_valuation = -1;
        return out;
    }
    Int Ce = carry_constant(eta);
    Int De = pow2(eta.depth()) - pow3(eta.ell());
    Int rhs = pow2(q * tau.depth()) * (Ce * Dp - Cp * De);
    out.exact_identity = (lhs == rhs);
    out.exact_agreement = false;
    out.lhs_valuation = (lhs == 0) ? -1 : static_cast<long>(v2(lhs));
    Int E = Ce * Dp - Cp * De;
    out.rhs_valuation =
        (E == 0) ? -1 : static_cast<long>(q * tau.depth()) + static_cast<long>(v2(E));
    return out;
}

long first_mismatch_valuation(const Signature& tau, const Signature& eta) {
    Int Ct = carry_constant(tau), Ce = carry_constant(eta);
    Int Dt = pow2(tau.depth()) - pow3(tau.ell());
    Int De = pow2(eta.depth()) - pow3(eta.ell());
    Int E = Ce * Dt - Ct * De;
    if (E == 0) return -1;
    return static_cast<long>(v2(E));
}

std::vector<unsigned long> residue_composition(const Int& a, unsigned long K) {
    if (mpz_even_p(a.get_mpz_t())) throw std::invalid_argument("odd residue required");
    std::vector<unsigned long> comp;
    Int x = mod_pow2(a, K);
    unsigned long used = 0;
    while (used < K) {
        unsigned long rem = K - used;
        Int t = 3 * x + 1;
        Int res = mod_pow2(t, rem);
        unsigned long v = (res == 0) ? rem : std::min(v2(res), static_cast<unsigned long>(rem));
        comp.push_back(v);
        used += v;
        mpz_fdiv_q_2exp(x.get_mpz_t(), t.get_mpz_t(), v);
    }
    return comp;
}

namespace {

bool aperiodic(const std::vector<unsigned long>& w) {
    const size_t l = w.size();
    for (size_t p = 1; p < l; ++p) {
        if (l % p) continue;
        bool per = true;
        for (size_t j = 0; j < l; ++j)
            if (w[j] != w[j % p]) {
                per = false;
                break;
            }
        if (per) return false;
    }
    return true;
}

}  // namespace

GainObservable gain_observable(unsigned long K) {
    if (K < 3 || K > 16) throw std::invalid_argument("3 <= K <= 16 required");
    const double a = std::log2(3.0);
    GainObservable out;
    out.K = K;
    size_t count = 1ull << (K - 1);
    out.values.assign(count, 0.0);
    out.expanding.assign(count, 0);
    out.injective = true;
    std::vector<char> seen(1ull << K, 0);  // compositions as cut masks, < 2^{K-1}
    size_t support = 0;
    for (size_t i = 0; i < count; ++i) {
        Int res = Int(2 * i + 1);
        auto comp = residue_composition(res, K);
        // injectivity of residue -> composition
        unsigned long mask = 0, pos = 0;
        for (size_t j = 0; j + 1 < comp.size(); ++j) {
            pos += comp[j];
            mask |= 1ul << (pos - 1);
        }
        if (seen[mask]) out.injective = false;
        seen[mask] = 1;
        unsigned long l = comp.size();
        if (pow3(l) > pow2(K) && aperiodic(comp)) {
            out.expanding[i] = 1;
            out.values[i] = a - static_cast<double>(K) / static_cast<double>(l);
            ++support;
        }
    }
    out.support_fraction = static_cast<double>(support) / static_cast<double>(count);
    return out;
}

double theta_oscillation(unsigned long K) {
    const double a = std::log2(3.0);
    // floor(K / a) = max{l : 3^l <= 2^K}
    unsigned long fl = 0;
    while (pow3(fl + 1) <= pow2(K)) ++fl;
    double rK = static_cast<double>(K) / a - static_cast<double>(fl);
    return (a - 1) / a * (static_cast<double>(fl) + 1) / (1 - rK);
}

StructuralChecks structural_checks(unsigned long K, unsigned long s) {
    if (K + s > 16) throw std::invalid_argument("K + s <= 16 required");
    const double a = std::log2(3.0);
    StructuralChecks out{};
    // ell(a) for every odd residue at depths K and K+s
    auto ell_of = [](const Int& r, unsigned long depth) {
        return residue_composition(r, depth).size();
    };
    // (i) suffix ell-counts binomial over every fiber
    out.binomial_fibers = true;
    std::vector<Int> binrow(s + 1);
    for (unsigned long j = 0; j <= s; ++j) binrow[j] = binom(s, j);
    size_t base_count = 1ull << (K - 1);
    for (size_t i = 0; i < base_count && out.binomial_fibers; ++i) {
        Int r = Int(2 * i + 1);
        unsigned long l0 = ell_of(r, K);
        std::vector<Int> hist(s + 1, Int(0));
        for (unsigned long e = 0; e < (1ul << s); ++e) {
            Int rr = r + Int(e) * pow2(K);
            unsigned long l1 = ell_of(rr, K + s);
            if (l1 < l0 || l1 > l0 + s) {
                out.binomial_fibers = false;
                break;
            }
            hist[l1 - l0] += 1;
        }
        for (unsigned long j = 0; j <= s && out.binomial_fibers; ++j)
            if (hist[j] != binrow[j]) out.binomial_fibers = false;
    }
    // (ii) harmonic property for the centred linear-in-ell observable
    out.harmonic = true;
    for (size_t i = 0; i < base_count && out.harmonic; ++i) {
        Int r = Int(2 * i + 1);
        double hK = (static_cast<double>(ell_of(r, K)) - (K + 1) / 2.0) * a;
        double avg = 0;
        for (unsigned long e = 0; e < (1ul << s); ++e) {
            Int rr = r + Int(e) * pow2(K);
            avg += (static_cast<double>(ell_of(rr, K + s)) - (K + s + 1) / 2.0) * a;
        }
        avg /= static_cast<double>(1ul << s);
        if (std::abs(avg - hK) > 1e-9) out.harmonic = false;
    }
    // (iii) sup-norm ratio of the coarse average: (K-4)/(K-1) for the 3-bit step
    out.supnorm_ratio = Rat(static_cast<long>(K) - 4, static_cast<long>(K) - 1);
    {
        double hmax = (static_cast<double>(K - 1) / 2.0) * a;
        double havg_max = 0;
        size_t coarse = 1ull << (K - 4);
        for (size_t i = 0; i < coarse; ++i) {
            Int y = Int(2 * i + 1);
            double avg = 0;
            for (unsigned long e = 0; e < 8; ++e) {
                Int rr = y + Int(e) * pow2(K - 3);
                avg += (static_cast<double>(ell_of(rr, K)) - (K + 1) / 2.0) * a;
            }
            havg_max = std::max(havg_max, std::abs(avg / 8.0));
        }
        out.supnorm_ok = std::abs(havg_max / hmax - out.supnorm_ratio.get_d()) < 1e-9;
    }
    out.theta_K = theta_oscillation(K);
    out.shadow_sparsity_ok = true;
    if (K >= 10) {
        double frac = necklace_counts(K).expanding.get_d() / std::ldexp(1.0, K);
        out.shadow_sparsity_ok =
            frac <= std::pow(2.0, -(static_cast<double>(K) - 1) * chernoff_exponent() / 2);
    }
    return out;
}

}  // namespace collatz
