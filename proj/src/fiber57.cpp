#include "collatzkit/fiber57.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "collatzkit/syracuse.hpp"

namespace collatz {

namespace {

bool in_cantor(Int q, unsigned long r) {
    for (unsigned long i = 0; i < r; ++i) {
        unsigned long d = mpz_fdiv_ui(q.get_mpz_t(), 8);
        if (d != 0 && d != 3 && d != 7) return false;
        q /= 8;
    }
    return true;
}

}  // namespace

CoreSet invariant_core(unsigned long r) {
    if (r < 2 || r > 10) throw std::invalid_argument("2 <= r <= 10 required");
    Int mod = octal_modulus(r);
    std::set<Int> S;
    // Cantor set via digit enumeration
    std::vector<Int> cur{Int(0)};
    for (unsigned long i = 0; i < r; ++i) {
        std::vector<Int> nxt;
        nxt.reserve(cur.size() * 3);
        for (const auto& q : cur)
            for (unsigned long d : {0ul, 3ul, 7ul}) nxt.push_back(q + Int(d) * pow2(3 * i));
        cur = std::move(nxt);
    }
    S.insert(cur.begin(), cur.end());
    while (true) {
        std::set<Int> keep;
        for (const auto& q : S)
            if (S.count(chain_map(q, r))) keep.insert(q);
        if (keep.size() == S.size()) break;
        S = std::move(keep);
    }
    CoreSet out;
    out.depth = r;
    out.elements.assign(S.begin(), S.end());
    for (const auto& q : out.elements) {
        if (chain_map(q, r) == q)
            out.fixed_points.push_back(q);
        else
            out.two_cycle.push_back(q);
    }
    return out;
}

std::vector<Int> projective_survivors(unsigned long r, unsigned long extra_depth) {
    CoreSet base = invariant_core(r);
    std::set<Int> survivors(base.elements.begin(), base.elements.end());
    Int mod = octal_modulus(r);
    for (unsigned long d = 1; d <= extra_depth; ++d) {
        CoreSet deep = invariant_core(r + d);
        std::set<Int> projected;
        for (const auto& q : deep.elements) projected.insert(q % mod);
        std::set<Int> keep;
        for (const auto& q : survivors)
            if (projected.count(q)) keep.insert(q);
        survivors = std::move(keep);
    }
    return {survivors.begin(), survivors.end()};
}

Q7Return q7_return(const Int& m) {
    Int n = 512 * m + 505;  // q = 8m + 7
    auto s1 = syracuse_step(n);
    auto s2 = syracuse_step(s1.next);
    Q7Return out{s1.next, s2.next, (s2.next - 57) / 64};
    if (s1.next != 384 * m + 379 || mpz_fdiv_ui(s1.next.get_mpz_t(), 64) != 59)
        throw std::logic_error("q7 step-1 form failed");
    if (s2.next != 576 * m + 569 || out.quotient != 9 * m + 8)
        throw std::logic_error("q7 step-2 form failed");
    return out;
}

std::vector<unsigned long> q3_trace(const Int& m) {
    Int n = 512 * m + 249;  // q = 8m + 3
    std::vector<unsigned long> out;
    Int x = n;
    for (int i = 0; i < 4; ++i) {
        x = syracuse_step(x).next;
        out.push_back(mpz_fdiv_ui(x.get_mpz_t(), 64));
        if (out.back() == 57) throw std::logic_error("q3 returned before step 5");
    }
    return out;
}

Gap5Cylinder gap5_cylinder(unsigned long w) {
    if (w > 40) throw std::invalid_argument("w <= 40 required");
    unsigned long e = w + 6;
    Int inv = mod_inverse_pow2(Int(243), e);
    Int target = mod_pow2(Int(57) * pow2(w) - 119, e);
    Gap5Cylinder out;
    out.a_w = mod_pow2(target * inv, e);
    out.modulus_exp = e;
    out.density = Rat(1, pow2(e));
    return out;
}

RatMatrix partial_kernel() {
    // rows/cols indexed by I_2 = {7, 27, 31, 59, 63}
    const int idx7 = 0, idx27 = 1, idx31 = 2, idx59 = 3, idx63 = 4;
    RatMatrix B(5);
    // q = 3 rows (octal x3): the gap-5 cylinder family, 1/2048 per target
    for (int j = 0; j < 5; ++j) {
        B.at(idx27, j) = Rat(1, 2048);
        B.at(idx59, j) = Rat(1, 2048);
    }
    // q = 7 rows (octal x7): two-step return, uniform over q' mod 8 restricted to I_2
    B.at(idx31, idx27) = Rat(1, 8);
    B.at(idx31, idx59) = Rat(1, 8);
    B.at(idx63, idx7) = Rat(1, 8);
    B.at(idx63, idx31) = Rat(1, 8);
    B.at(idx63, idx63) = Rat(1, 8);
    // row 7 (octal 07): destination quotient = 0 (mod 8), never in I_2
    return B;
}

AbsorptionRun absorption_run(unsigned long r, const Int& s, const Int& offset) {
    if (r < 2 || r > 8) throw std::invalid_argument("2 <= r <= 8 required");
    if (offset < 1) throw std::invalid_argument("offset >= 1 required");
    CoreSet core = invariant_core(r);
    std::set<Int> I(core.elements.begin(), core.elements.end());
    Int mod = octal_modulus(r);
    Int n = 64 * (s + mod * offset) + 57;
    AbsorptionRun out{0, false};
    bool chain_broken = false;
    while (n % mod != 1) {
        auto st = syracuse_step(n);
        n = st.next;
        ++out.steps;
        if (out.steps > 1000) throw std::domain_error("absorption cap (10^3 steps) exceeded");
        if (mpz_fdiv_ui(n.get_mpz_t(), 64) == 57) {
            Int q = (n / 64) % mod;
            bool in_core = I.count(q) > 0;
            if (in_core && chain_broken) out.revisited_core = true;
            if (!in_core) chain_broken = true;
        }
    }
    return out;
}

BottleneckConstants bottleneck_constants() {
    BottleneckConstants out;
    out.c0 = std::log2(1024.0 / 129.0);
    out.capacity = std::log2(5.0);
    out.deficit = out.c0 - out.capacity;
    out.alpha = Rat(5) * Rat(129, 1024);
    out.alpha.canonicalize();
    return out;
}

namespace {

InterchainRatio ratio_from_counts(size_t hits, size_t visits, unsigned long r) {
    InterchainRatio out;
    out.visits = visits;
    out.raw_fraction = visits ? static_cast<double>(hits) / visits : 0.0;
    double base = 5.0 / std::pow(8.0, static_cast<double>(r));
    out.normalized = out.raw_fraction / base;
    out.c_prime = out.normalized > 0 ? -std::log2(out.normalized) : 0.0;
    return out;
}

void count_interchain(const Int& n0, unsigned long r, unsigned long gap_threshold,
                      const std::set<Int>& I, const Int& mod, size_t& hits, size_t& visits) {
    Int n = n0;
    long last = -1;
    long tc = 0;
    while (n != 1) {
        auto s = syracuse_step(n);
        n = s.next;
        tc += 1 + static_cast<long>(s.valuation);  // Collatz steps
        if (mpz_fdiv_ui(n.get_mpz_t(), 64) == 57) {
            if (last >= 0 && tc - last > static_cast<long>(gap_threshold)) {
                ++visits;
                if (I.count((n / 64) % mod)) ++hits;
            }
            last = tc;
        }
    }
}

}  // namespace

InterchainRatio interchain_ratio(const Int& n0, unsigned long r, size_t min_visits,
                                 unsigned long gap_threshold) {
    CoreSet core = invariant_core(r);
    std::set<Int> I(core.elements.begin(), core.elements.end());
    Int mod = octal_modulus(r);
    size_t hits = 0, visits = 0;
    count_interchain(n0, r, gap_threshold, I, mod, hits, visits);
    if (visits == 0) throw std::domain_error("no inter-chain fiber-57 visits");
    auto out = ratio_from_counts(hits, visits, r);
    if (visits < min_visits) out.c_prime = 0;  // partial result, flagged by visit count
    return out;
}

InterchainRatio interchain_ratio_batch(const std::vector<Int>& seeds, unsigned long r,
                                       unsigned long gap_threshold) {
    CoreSet core = invariant_core(r);
    std::set<Int> I(core.elements.begin(), core.elements.end());
    Int mod = octal_modulus(r);
    size_t hits = 0, visits = 0;
    for (const auto& n0 : seeds) count_interchain(n0, r, gap_threshold, I, mod, hits, visits);
    if (visits == 0) throw std::domain_error("no inter-chain fiber-57 visits");
    return ratio_from_counts(hits, visits, r);
}

bool branch_bijection_check(const std::vector<unsigned long>& path, unsigned long q) {
    if (q != 8 && q != 16 && q != 1) throw std::invalid_argument("q in {1, 8, 16}");
    unsigned long V = 0;
    for (auto v : path) V += v;
    if (V < 3) throw std::invalid_argument("total valuation >= 3 required");
    unsigned long k = path.size();
    Int mult = pow3(k);
    std::set<unsigned long> image;
    for (unsigned long t = 0; t < q; ++t) image.insert(mpz_fdiv_ui(Int(mult * t).get_mpz_t(), q));
    return image.size() == q;
}

}  // namespace collatz
