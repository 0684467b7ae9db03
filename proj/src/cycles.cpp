#include "collatzkit/cycles.hpp"

#include <cmath>

#include "collatzkit/rng.hpp"

namespace collatz {

BlockAffine block_compose(const CycleBlock& block) {
    BlockAffine a;
    for (const auto& c : block) a = a.then(c);
    return a;
}

CrossingThreshold crossing_threshold(unsigned long L, unsigned long r) {
    if (r < 2) throw std::invalid_argument("r >= 2 required");
    Int num = pow3(L + 1) - pow2(L + 1);
    Int den = pow2(L + r) - pow3(L + 1);
    if (den <= 0) return {std::nullopt, true};
    return {Rat(num, den), false};
}

Thresholds thresholds(unsigned long L) {
    unsigned long r = 2;
    while (pow2(L + r) <= pow3(L + 1)) ++r;
    unsigned long r_min = r;
    while (true) {
        auto ct = crossing_threshold(L, r);
        if (!ct.crosses_never && *ct.n_star < 1) break;
        ++r;
    }
    return {r_min, r};
}

bool universal_block_check(const CycleBlock& block) {
    if (block.empty()) throw std::invalid_argument("empty block");
    BlockAffine a = block_compose(block);
    return a.lambda < 1 && a.beta < 1 - a.lambda;
}

OneCycleDensities one_cycle_densities(unsigned long terms) {
    if (terms < 50) throw std::invalid_argument("terms >= 50 required");
    Rat p1 = 0, pall = 0;
    for (unsigned long l = 0; l < terms; ++l) {
        // floor((log2 3 - 1)(l+1)) = floor(log2 3^{l+1}) - (l+1)
        long fl = floor_log2_pow3(l + 1) - static_cast<long>(l + 1);
        p1 += Rat(1, pow2(l + 1 + fl));
    }
    for (unsigned long L = 0; L < terms; ++L) {
        unsigned long ra = thresholds(L).r_all;
        pall += Rat(1, pow2(L + ra - 1));
    }
    return {p1, pall};
}

namespace {

struct TypeEntry {
    double lambda, beta, prob;
};

std::vector<TypeEntry> budget_types(unsigned long budget, double* deficit) {
    std::vector<TypeEntry> types;
    double mass = 0;
    for (unsigned long s = 2; s <= budget; ++s) {
        for (unsigned long L = 0; L + 2 <= s; ++L) {
            unsigned long r = s - L;
            double lam = Rat(pow3(L + 1), pow2(L + r)).get_d();
            double bet = Rat(pow3(L + 1) - pow2(L + 1), pow2(L + r)).get_d();
            double p = std::ldexp(1.0, -static_cast<int>(L + 1)) *
                       std::ldexp(1.0, -static_cast<int>(r - 1));
            types.push_back({lam, bet, p});
            mass += p;
        }
    }
    if (deficit) *deficit = 1.0 - mass;
    return types;
}

void cum_rec(const std::vector<TypeEntry>& types, unsigned long k, unsigned long kmax,
             double lam, double bet, double p, std::vector<double>& pnew) {
    if (k > kmax) return;
    for (const auto& t : types) {
        double l2 = lam * t.lambda;
        double b2 = t.lambda * bet + t.beta;
        double pp = p * t.prob;
        if (pp < 1e-18) continue;
        if (l2 < 1.0 && b2 < 1.0 - l2)
            pnew[k] += pp;
        else
            cum_rec(types, k + 1, kmax, l2, b2, pp, pnew);
    }
}

}  // namespace

CumulativeDensity cumulative_universal_density(unsigned long k, unsigned long budget) {
    if (k == 0) throw std::invalid_argument("k >= 1 required");
    CumulativeDensity out;
    double deficit = 0;
    auto types = budget_types(budget, &deficit);
    std::vector<double> pnew(k + 1, 0.0);
    cum_rec(types, 1, k, 1.0, 0.0, 1.0, pnew);
    out.p_new.assign(pnew.begin() + 1, pnew.end());
    out.p_cum = 0;
    for (double p : out.p_new) out.p_cum += p;
    out.truncation_deficit = deficit;
    out.budget_warning = deficit > 0.002;
    return out;
}

KestenResult kesten_simulate(size_t steps, size_t burn_in, uint64_t seed,
                             size_t survival_trials, size_t kmax) {
    if (steps < 10000) throw std::invalid_argument("steps >= 1e4 required");
    KestenResult out;
    out.seed = seed;
    // stationary mass below 1 from a single long chain
    CounterRng rng(seed, 0);
    auto draw = [](CounterRng& g, double& lam, double& bet) {
        unsigned long L = g.next_geometric();           // Pr(L=l) = 2^{-(l+1)}
        unsigned long r = 2 + g.next_geometric();       // Pr(r=k) = 2^{-(k-1)}
        double p3 = std::pow(3.0, static_cast<double>(L + 1));
        double p2 = std::ldexp(1.0, static_cast<int>(L + r));
        lam = p3 / p2;
        bet = (p3 - std::ldexp(1.0, static_cast<int>(L + 1))) / p2;
    };
    double X = 1.0;
    size_t below = 0;
    for (size_t i = 0; i < steps + burn_in; ++i) {
        double lam, bet;
        draw(rng, lam, bet);
        X = lam * X + bet;
        if (X > 1e300) X = 1e300;
        if (i >= burn_in && X < 1.0) ++below;
    }
    out.mass_below_1 = static_cast<double>(below) / steps;

    // running-min survival curve over fresh trials
    std::vector<size_t> surv(kmax + 1, 0);
    for (size_t tr = 0; tr < survival_trials; ++tr) {
        CounterRng g(seed, tr + 1);
        double lam = 1.0, bet = 0.0;
        bool alive = true;
        for (size_t k = 1; k <= kmax && alive; ++k) {
            double l, b;
            draw(g, l, b);
            bet = l * bet + b;
            lam = lam * l;
            if (lam < 1.0 && bet < 1.0 - lam) alive = false;
            if (alive) ++surv[k];
        }
    }
    out.survival.resize(kmax);
    for (size_t k = 1; k <= kmax; ++k)
        out.survival[k - 1] = static_cast<double>(surv[k]) / survival_trials;
    // least-squares slope of log R_k over k = 5..min(25, kmax)
    size_t k0 = 5, k1 = std::min<size_t>(25, kmax);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t n = 0;
    for (size_t k = k0; k <= k1; ++k) {
        if (out.survival[k - 1] <= 0) break;
        double x = static_cast<double>(k), y = std::log(out.survival[k - 1]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    out.rho0 = n >= 2 ? std::exp((n * sxy - sx * sy) / (n * sxx - sx * sx)) : 0.0;
    return out;
}

LogDriftMoments logdrift_moments() {
    const double a = std::log2(3.0);
    LogDriftMoments m;
    m.mean = 2 * a - 4;
    m.variance = 2 * ((a - 1) * (a - 1) + 1);
    m.mgf = [a](double t) -> double {
        const double lo = -std::log(2.0), hi = std::log(2.0) / (a - 1);
        if (t <= lo || t >= hi) throw std::domain_error("t outside the MGF strip");
        return std::exp(t * (a - 2)) /
               (4 * (1 - 0.5 * std::exp(t * (a - 1))) * (1 - 0.5 * std::exp(-t)));
    };
    return m;
}

CramerRate cramer_rate() {
    auto m = logdrift_moments();
    auto L = [&](double t) { return std::log(m.mgf(t)); };
    const double a = std::log2(3.0);
    double lo = 1e-4, hi = std::log(2.0) / (a - 1) - 1e-4;
    auto dL = [&](double t) { return (L(t + 1e-7) - L(t - 1e-7)) / 2e-7; };
    if (dL(lo) >= 0 || dL(hi) <= 0) throw std::domain_error("bracket failure");
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (dL(mid) < 0)
            lo = mid;
        else
            hi = mid;
    }
    double t = 0.5 * (lo + hi);
    return {t, -L(t)};
}

double cycle_correction(const Int& n) {
    if (n < 3 || mpz_even_p(n.get_mpz_t())) throw std::domain_error("odd n >= 3 required");
    unsigned long L = run_length(n);
    double nn = mpz_get_d(n.get_mpz_t());
    double c = std::log2(1.0 + (1.0 - std::pow(2.0 / 3.0, static_cast<double>(L + 1))) / nn);
    if (!(c > 0 && c < std::log2(1.0 + 1.0 / nn))) throw std::logic_error("correction out of bounds");
    return c;
}

AdversarialBlock adversarial_block(unsigned long a) {
    if (a < 1) throw std::invalid_argument("a >= 1 required");
    const CycleType A{5, 2}, B{0, 3};
    // t_min(a) = least t with Lambda < 1: 128^a > ... exact power comparison
    Int lamA_num = pow3(6), lamA_den = pow2(7);  // 729/128
    // Lambda(a,t) = (729/128)^a (3/8)^t < 1  <=>  729^a 3^t < 128^a 8^t
    Int num = 1, den = 1;
    for (unsigned long i = 0; i < a; ++i) {
        num *= lamA_num;
        den *= lamA_den;
    }
    unsigned long t = 0;
    while (num > den) {
        num *= 3;
        den *= 8;
        ++t;
    }
    unsigned long t_min = t;
    auto make = [&](unsigned long tt) {
        CycleBlock blk;
        for (unsigned long i = 0; i < a; ++i) blk.push_back(A);
        for (unsigned long i = 0; i < tt; ++i) blk.push_back(B);
        return block_compose(blk);
    };
    BlockAffine at_min = make(t_min);
    AdversarialBlock out;
    out.t_min = t_min;
    out.lambda = at_min.lambda;
    out.b = at_min.beta;
    out.universal_at_tmin = at_min.lambda < 1 && at_min.beta < 1 - at_min.lambda;
    BlockAffine nxt = make(t_min + 1);
    out.universal_at_tmin_plus_1 = nxt.lambda < 1 && nxt.beta < 1 - nxt.lambda;
    return out;
}

double adversarial_theta_crit() {
    return 1.0 - std::log(1202.0 / 3165.0) / std::log(3.0 / 8.0);
}

bool fragility_check(const CycleType& A, const CycleType& B) {
    Rat lamA = A.lambda(), lamB = B.lambda();
    if (lamA <= 1) throw std::invalid_argument("A must be expanding");
    if (lamB >= 1 || lamB <= 0) throw std::invalid_argument("B must be contracting");
    Rat gammaA = A.beta() / (lamA - 1);
    Rat betaBinf = B.beta() / (1 - lamB);
    Rat lhs = betaBinf + lamB * (1 + gammaA);
    return lhs < 1;
}

unsigned long post_mersenne_valuation(unsigned long k) {
    if (k < 2) throw std::invalid_argument("k >= 2 required");
    unsigned long predicted = (k % 2 == 0) ? 2 : 3 + v2(Int(k + 1));
    // cross-check by simulating n0 = 2^{k+1} - 1
    Int n = pow2(k + 1) - 1;
    for (unsigned long i = 0; i < k; ++i) {
        auto s = syracuse_step(n);
        if (s.valuation != 1) throw std::logic_error("burst shorter than expected");
        n = s.next;
    }
    auto s = syracuse_step(n);
    if (s.valuation != predicted) throw std::logic_error("post-mersenne formula mismatch");
    return predicted;
}

WeakRecoveryCylinder weak_recovery_cylinder(unsigned long k, unsigned long j) {
    if (k < 1 || j < 1) throw std::invalid_argument("k, j >= 1 required");
    Int m = mod_inverse_pow2(pow3(k), 2 * j);
    return {m, 2 * j, Rat(1, pow2(2 * j - 1))};
}

}  // namespace collatz
