#include "collatzkit/syracuse.hpp"

#include <cmath>
#include <numeric>
#include <unordered_set>

namespace collatz {

namespace {

// labels steps with the cascade-gap state machine; see cascade.cpp for the
// cycle-level parse built on the same convention.
void label_classes(OrbitTrace& t) {
    t.classes.resize(t.steps());
    bool seen_burst = false;
    bool in_cascade = false;
    for (size_t i = 0; i < t.steps(); ++i) {
        unsigned long residue8 = mpz_fdiv_ui(t.values[i].get_mpz_t(), 8);
        if (residue8 == 3 || residue8 == 7) {
            t.classes[i] = StepClass::Burst;
            seen_burst = true;
            in_cascade = true;
        } else if (!seen_burst) {
            t.classes[i] = StepClass::PreCascade;
        } else if (in_cascade && residue8 == 1) {
            t.classes[i] = StepClass::Recovery;
        } else {
            // residue 5 ends the cascade; stays gap until the next burst
            t.classes[i] = StepClass::Gap;
            in_cascade = false;
        }
    }
}

}  // namespace

OrbitTrace orbit(const Int& n0, size_t max_steps) {
    if (max_steps == 0) throw std::invalid_argument("max_steps must be positive");
    if (n0 < 1 || mpz_even_p(n0.get_mpz_t())) throw std::domain_error("odd start required");
    OrbitTrace t;
    t.start = n0;
    t.values.push_back(n0);
    Int x = n0;
    while (t.valuations.size() < max_steps && x != 1) {
        auto s = syracuse_step(x);
        t.valuations.push_back(s.valuation);
        x = s.next;
        t.values.push_back(x);
    }
    t.reached_one = (x == 1);
    label_classes(t);
    return t;
}

CycleDecomposition cycle_types(const std::vector<unsigned long>& vals) {
    CycleDecomposition out{};
    size_t run = 0;
    size_t consumed = 0;
    for (size_t i = 0; i < vals.size(); ++i) {
        if (vals[i] == 1) {
            ++run;
        } else {
            out.cycles.push_back({static_cast<unsigned long>(run), vals[i]});
            consumed = i + 1;
            run = 0;
        }
    }
    out.trailing_steps = vals.size() - consumed;
    return out;
}

BurstGapDecomposition burst_gap_decompose(const OrbitTrace& t) {
    BurstGapDecomposition out{};
    if (t.values.empty()) return out;
    auto k_of = [](const Int& n) {
        Int m = n + 1;
        return v2(m);
    };
    // decompose the visited values (excluding a terminal 1 which ends the orbit)
    size_t count = t.steps();
    if (count == 0) {
        out.starts_with_burst = k_of(t.values[0]) >= 2;
        out.lengths.push_back(1);
        return out;
    }
    bool cur_burst = k_of(t.values[0]) >= 2;
    out.starts_with_burst = cur_burst;
    size_t len = 1;
    for (size_t i = 1; i < count; ++i) {
        bool burst = k_of(t.values[i]) >= 2;
        if (burst == cur_burst) {
            ++len;
        } else {
            out.lengths.push_back(len);
            cur_burst = burst;
            len = 1;
        }
    }
    out.lengths.push_back(len);
    return out;
}

std::vector<double> drift_signal(const OrbitTrace& t) {
    std::vector<double> x(t.steps());
    const double log23 = std::log2(3.0);
    double acc = 0;
    for (size_t i = 0; i < t.steps(); ++i) {
        double ni = mpz_get_d(t.values[i].get_mpz_t());
        acc += log23 - static_cast<double>(t.valuations[i]) + std::log2(1.0 + 1.0 / (3.0 * ni));
        x[i] = acc;
        // sign must agree with the exact comparison n_{i+1} < n_0
        bool below = t.values[i + 1] < t.start;
        if (below != (x[i] < 0)) {
            // the float sum can only disagree within rounding of a near-tie;
            // resolve from the exact comparison
            x[i] = below ? -1e-12 : 1e-12;
        }
    }
    return x;
}

std::optional<size_t> sigma_crossing(const Int& n0, size_t cap, bool collatz_steps) {
    if (cap == 0) throw std::invalid_argument("cap must be positive");
    if (n0 < 3 || mpz_even_p(n0.get_mpz_t())) throw std::domain_error("odd n0 >= 3 required");
    Int x = n0;
    size_t t = 0;
    while (t < cap) {
        auto s = syracuse_step(x);
        x = s.next;
        t += collatz_steps ? (1 + s.valuation) : 1;
        if (x < n0) return t;
        if (x == 1) return t;  // cannot happen before x < n0 for n0 >= 3
    }
    return std::nullopt;
}

Autocorrelation drift_autocorrelation(const OrbitTrace& t, size_t max_lag) {
    if (max_lag == 0 || t.steps() < 4 * max_lag)
        throw std::invalid_argument("trace too short for requested lag");
    const double log23 = std::log2(3.0);
    std::vector<double> d(t.steps());
    for (size_t i = 0; i < t.steps(); ++i) {
        double ni = mpz_get_d(t.values[i].get_mpz_t());
        d[i] = log23 - static_cast<double>(t.valuations[i]) + std::log2(1.0 + 1.0 / (3.0 * ni));
    }
    double mean = std::accumulate(d.begin(), d.end(), 0.0) / d.size();
    double var = 0;
    for (double x : d) var += (x - mean) * (x - mean);
    if (var == 0) throw std::domain_error("constant drift signal: autocorrelation undefined");
    Autocorrelation out;
    out.abs_sum = 0;
    for (size_t lag = 1; lag <= max_lag; ++lag) {
        double c = 0;
        for (size_t i = 0; i + lag < d.size(); ++i) c += (d[i] - mean) * (d[i + lag] - mean);
        double rho = c / var;
        out.rho.push_back(rho);
        out.abs_sum += std::abs(rho);
    }
    return out;
}

size_t touched_set(size_t seed_cap, size_t window) {
    if (window == 0) throw std::invalid_argument("window must be positive");
    std::vector<char> touched(window + 1, 0);
    for (size_t seed = 1; seed <= seed_cap; ++seed) {
        unsigned long long x = seed;
        // full Collatz orbit; values above the window still get followed
        std::unordered_set<unsigned long long> seen;
        while (x != 1) {
            if (x <= window) touched[x] = 1;
            if (x % 2 == 0)
                x /= 2;
            else {
                if (x > (~0ULL - 1) / 3) break;  // overflow guard; desk scale never hits it
                x = 3 * x + 1;
            }
            if (!seen.insert(x).second) break;
        }
        if (x <= window) touched[x] = 1;
    }
    size_t count = 0;
    for (size_t m = 1; m <= window; ++m) count += touched[m];
    return count;
}

}  // namespace collatz
