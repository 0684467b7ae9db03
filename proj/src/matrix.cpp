#include "collatzkit/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace collatz {

Polynomial char_poly(const RatMatrix& m) {
    const size_t n = m.order();
    // Faddeev-LeVerrier: M_1 = A, c_{n-1} = -tr(M_1);
    // M_{k+1} = A (M_k + c_{n-k} I), c_{n-k-1} = -tr(M_{k+1})/(k+1).
    std::vector<Rat> c(n + 1, Rat(0));
    c[n] = 1;
    RatMatrix M = m;
    Rat ck = -M.trace();
    c[n - 1] = ck;
    for (size_t k = 2; k <= n; ++k) {
        RatMatrix t = M;
        for (size_t i = 0; i < n; ++i) t.at(i, i) += ck;
        M = m * t;
        ck = -M.trace() / static_cast<long>(k);
        c[n - k] = ck;
    }
    return Polynomial(std::move(c));
}

namespace {

// Largest real root of p isolated to an interval of width <= tol.
// Requires p to have at least one real root >= lo_hint.
std::pair<Rat, Rat> bisect_largest_root(const Polynomial& p, const Rat& tol) {
    Rat hi = p.root_bound();
    Rat lo = -hi;
    auto chain = p.sturm_chain();
    auto count_above = [&](const Rat& x) {
        return Polynomial::sign_changes(chain, x) - Polynomial::sign_changes(chain, hi);
    };
    if (count_above(lo) == 0) throw std::domain_error("no real root");
    // push lo up until exactly the largest root remains above
    Rat a = lo, b = hi;
    while (b - a > tol) {
        Rat mid = (a + b) / 2;
        mid.canonicalize();
        if (count_above(mid) >= 1)
            a = mid;
        else
            b = mid;
    }
    return {a, b};
}

// Reconstruct the unique rational with denominator <= qmax inside (a, b),
// if any, via the Stern-Brocot walk.
std::optional<Rat> rational_in_interval(Rat a, Rat b, const Int& qmax) {
    // walk on nonnegative values; handle sign by shifting with floor
    if (a > b) std::swap(a, b);
    Int lo_num = 0, lo_den = 1, hi_num = 1, hi_den = 0;  // [0/1, 1/0)
    Rat shift = 0;
    if (a < 0) {
        Int fl = a.get_num() / a.get_den();
        if (a < fl) fl -= 1;  // floor for negatives
        shift = Rat(fl);
        a -= shift;
        b -= shift;
    }
    // Stern-Brocot binary search for simplest fraction in (a, b)
    Int pa = 0, qa = 1, pb = 1, qb = 0;
    for (int iter = 0; iter < 20000; ++iter) {
        Int pm = pa + pb, qm = qa + qb;
        if (qm > qmax) return std::nullopt;
        Rat med(pm, qm);
        med.canonicalize();
        if (med <= a) {
            // move right: replace left bound (use jumps for speed)
            Rat t = (a * qb - pb) / (pa - a * qa);
            Int k = t.get_num() / t.get_den();
            if (k < 1) k = 1;
            pa += k * pb;
            qa += k * qb;
        } else if (med >= b) {
            Rat t = (pb - b * qb) / (b * qa - pa);
            Int k = t.get_num() / t.get_den();
            if (k < 1) k = 1;
            pb += k * pa;
            qb += k * qa;
        } else {
            return Rat(med + shift);
        }
    }
    return std::nullopt;
}

std::vector<std::complex<double>> durand_kerner(const std::vector<double>& monic) {
    // monic: c0..c_{n-1} with p(x) = x^n + c_{n-1}x^{n-1} + ... + c0
    const size_t n = monic.size();
    std::vector<std::complex<double>> z(n);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> w(1.0, 0.0);
    for (size_t i = 0; i < n; ++i) {
        w *= seed;
        z[i] = w;
    }
    auto eval = [&](std::complex<double> x) {
        std::complex<double> acc(1.0, 0.0);
        for (size_t i = n; i-- > 0;) acc = acc * x + monic[i];
        return acc;
    };
    for (int it = 0; it < 500; ++it) {
        double moved = 0;
        for (size_t i = 0; i < n; ++i) {
            std::complex<double> num = eval(z[i]), den(1.0, 0.0);
            for (size_t j = 0; j < n; ++j)
                if (j != i) den *= (z[i] - z[j]);
            std::complex<double> d = num / den;
            z[i] -= d;
            moved = std::max(moved, std::abs(d));
        }
        if (moved < 1e-14) break;
    }
    return z;
}

}  // namespace

std::vector<std::complex<double>> eigenvalues_fp(const RatMatrix& m) {
    Polynomial p = char_poly(m);
    size_t n = m.order();
    std::vector<double> monic(n);
    for (size_t i = 0; i < n; ++i) monic[i] = p[i].get_d();
    return durand_kerner(monic);
}

PerronResult perron_root(const RatMatrix& m, const Rat& tol) {
    if (m.order() == 0) throw std::invalid_argument("empty matrix");
    if (!m.nonnegative()) throw std::invalid_argument("perron_root needs a nonnegative matrix");
    if (tol <= 0) throw std::invalid_argument("tol must be positive");
    Polynomial p = char_poly(m);

    // strip lambda = 0 factors first
    std::vector<Rat> c = p.coeffs();
    size_t shift = 0;
    while (shift < c.size() && c[shift] == 0) ++shift;
    std::vector<Rat> reduced(c.begin() + shift, c.end());
    Polynomial q{std::vector<Rat>(reduced)};

    Rat width = tol / 4;
    auto [lo, hi] = bisect_largest_root(q, width);
    PerronResult res;
    res.lower = lo;
    res.upper = hi;
    if (q.eval(lo) == 0) {
        res.exact = lo;
        return res;
    }
    if (q.eval(hi) == 0) {
        res.exact = hi;
        return res;
    }

    // rational-root candidates: p/q with p | constant and q | leading, after
    // clearing denominators.  Reconstructing the unique small-denominator
    // rational in the isolating interval and testing it exactly covers the
    // same candidates without factoring.
    Int qmax("1000000000000000000");  // 10^18 denominator guard
    if (auto cand = rational_in_interval(lo, hi, qmax)) {
        if (q.eval(*cand) == 0) {
            res.exact = *cand;
            res.lower = *cand;
            res.upper = *cand;
            return res;
        }
    }
    // floating cross-check: power iteration should agree with the interval
    auto eigs = eigenvalues_fp(m);
    double best = 0;
    for (auto& z : eigs) best = std::max(best, std::abs(z));
    Rat midpoint = (lo + hi) / 2;
    double mid = midpoint.get_d();
    if (std::abs(best - mid) > 1e-6 + tol.get_d())
        throw std::runtime_error("perron_root: floating cross-check disagrees");
    return res;
}

bool second_eigenvalue_bound(const RatMatrix& m, const Rat& radius) {
    if (radius <= 0) throw std::invalid_argument("radius must be positive");
    Polynomial p = char_poly(m);

    // deflate the Perron root when it is rational (the usual case here)
    PerronResult pr = perron_root(m, Rat(1, 1000000));
    Polynomial q = p;
    if (pr.exact) {
        // divide by (lambda - rho)
        std::vector<Rat> lin{-*pr.exact, Rat(1)};
        q = p.divide_exact(Polynomial(std::move(lin)));
    } else {
        return false;  // cannot certify without an exact dominant root
    }

    // 1) no real eigenvalue of the deflated polynomial outside (-radius, radius)
    Rat bound = q.root_bound();
    if (q.count_real_roots(-bound - 1, -radius) > 0) return false;
    if (q.count_real_roots(radius, bound + 1) > 0) return false;
    if (q.eval(radius) == 0 || q.eval(-radius) == 0) return false;

    // 2) 64-point exact grid on the circle |z| = radius via the rational
    //    parametrization z = radius*(1-t^2, 2t)/(1+t^2): det check q(z) != 0.
    for (int k = 0; k < 64; ++k) {
        Rat t(k - 32, 8);  // slopes from -4 to 4 cover the circle densely enough
        Rat denom = 1 + t * t;
        Rat re = radius * (1 - t * t) / denom;
        Rat im = radius * (2 * t) / denom;
        // evaluate q at z = re + i*im with exact rational real/imag parts
        Rat ar = 0, ai = 0;
        const auto& c = q.coeffs();
        for (size_t i = c.size(); i-- > 0;) {
            Rat nr = ar * re - ai * im + c[i];
            Rat ni = ar * im + ai * re;
            ar = nr;
            ai = ni;
        }
        if (ar == 0 && ai == 0) return false;
    }

    // 3) floating eigensolve agreement
    auto eigs = eigenvalues_fp(m);
    double r = radius.get_d();
    int outside = 0;
    for (auto& z : eigs)
        if (std::abs(z) >= r - 1e-9) ++outside;
    // exactly the Perron root may sit on/outside the circle
    return outside <= 1;
}

std::vector<Rat> stationary_distribution(const RatMatrix& m) {
    const size_t n = m.order();
    if (!m.row_stochastic()) throw std::invalid_argument("matrix is not row-stochastic");
    // solve pi (Q - I) = 0 with sum pi = 1:  (Q^T - I) x = 0
    RatMatrix a = m.transpose();
    for (size_t i = 0; i < n; ++i) a.at(i, i) -= 1;
    // replace last equation by sum = 1
    std::vector<Rat> rhs(n, Rat(0));
    for (size_t j = 0; j < n; ++j) a.at(n - 1, j) = 1;
    rhs[n - 1] = 1;
    // gaussian solve
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && a.at(piv, c) == 0) ++piv;
        if (piv == n) throw std::domain_error("reducible chain: stationary distribution not unique");
        if (piv != c) {
            for (size_t j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(c, j));
            std::swap(rhs[piv], rhs[c]);
        }
        Rat f = 1 / a.at(c, c);
        for (size_t j = 0; j < n; ++j) {
            Rat t = a.at(c, j) * f;
            a.at(c, j) = t;
        }
        rhs[c] = Rat(rhs[c] * f);
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a.at(i, c) == 0) continue;
            Rat g = a.at(i, c);
            for (size_t j = 0; j < n; ++j) {
                Rat t = a.at(i, j) - g * a.at(c, j);
                a.at(i, j) = t;
            }
            rhs[i] = Rat(rhs[i] - g * rhs[c]);
        }
    }
    for (const auto& x : rhs)
        if (x < 0) throw std::domain_error("negative stationary mass: chain not irreducible?");
    return rhs;
}

}  // namespace collatz
