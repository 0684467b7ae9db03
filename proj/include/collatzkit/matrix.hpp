#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "collatzkit/polynomial.hpp"
#include "collatzkit/rational.hpp"

namespace collatz {

// Square matrix over Q, row-major.  Desk scale (order <= 16).
class RatMatrix {
  public:
    RatMatrix() : n_(0) {}
    explicit RatMatrix(size_t n) : n_(n), a_(n * n, Rat(0)) {}
    RatMatrix(size_t n, std::vector<Rat> entries) : n_(n), a_(std::move(entries)) {
        if (a_.size() != n_ * n_) throw std::invalid_argument("entry count mismatch");
    }

    size_t order() const { return n_; }
    Rat& at(size_t i, size_t j) { return a_[i * n_ + j]; }
    const Rat& at(size_t i, size_t j) const { return a_[i * n_ + j]; }

    static RatMatrix identity(size_t n) {
        RatMatrix m(n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    RatMatrix operator*(const RatMatrix& o) const {
        RatMatrix r(n_);
        for (size_t i = 0; i < n_; ++i)
            for (size_t k = 0; k < n_; ++k) {
                if (at(i, k) == 0) continue;
                for (size_t j = 0; j < n_; ++j) {
                    Rat t = r.at(i, j) + at(i, k) * o.at(k, j);
                    r.at(i, j) = t;
                }
            }
        return r;
    }

    RatMatrix transpose() const {
        RatMatrix r(n_);
        for (size_t i = 0; i < n_; ++i)
            for (size_t j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Rat trace() const {
        Rat t = 0;
        for (size_t i = 0; i < n_; ++i) t += at(i, i);
        return t;
    }

    bool nonnegative() const {
        for (const auto& x : a_)
            if (x < 0) return false;
        return true;
    }

    bool row_stochastic() const {
        for (size_t i = 0; i < n_; ++i) {
            Rat s = 0;
            for (size_t j = 0; j < n_; ++j) s += at(i, j);
            if (s != 1) return false;
        }
        return nonnegative();
    }

    // Gaussian elimination; returns det and (optionally) the inverse.
    Rat det() const {
        RatMatrix m = *this;
        Rat d = 1;
        for (size_t c = 0; c < n_; ++c) {
            size_t p = c;
            while (p < n_ && m.at(p, c) == 0) ++p;
            if (p == n_) return Rat(0);
            if (p != c) {
                for (size_t j = 0; j < n_; ++j) std::swap(m.at(p, j), m.at(c, j));
                d = -d;
            }
            d *= m.at(c, c);
            Rat inv = 1 / m.at(c, c);
            for (size_t i = c + 1; i < n_; ++i) {
                if (m.at(i, c) == 0) continue;
                Rat f = m.at(i, c) * inv;
                for (size_t j = c; j < n_; ++j) {
                    Rat t = m.at(i, j) - f * m.at(c, j);
                    m.at(i, j) = t;
                }
            }
        }
        return d;
    }

    RatMatrix inverse() const {
        RatMatrix m = *this, inv = identity(n_);
        for (size_t c = 0; c < n_; ++c) {
            size_t p = c;
            while (p < n_ && m.at(p, c) == 0) ++p;
            if (p == n_) throw std::domain_error("singular matrix");
            if (p != c)
                for (size_t j = 0; j < n_; ++j) {
                    std::swap(m.at(p, j), m.at(c, j));
                    std::swap(inv.at(p, j), inv.at(c, j));
                }
            Rat f = 1 / m.at(c, c);
            for (size_t j = 0; j < n_; ++j) {
                Rat t1 = m.at(c, j) * f;
                m.at(c, j) = t1;
                Rat t2 = inv.at(c, j) * f;
                inv.at(c, j) = t2;
            }
            for (size_t i = 0; i < n_; ++i) {
                if (i == c || m.at(i, c) == 0) continue;
                Rat g = m.at(i, c);
                for (size_t j = 0; j < n_; ++j) {
                    Rat t1 = m.at(i, j) - g * m.at(c, j);
                    m.at(i, j) = t1;
                    Rat t2 = inv.at(i, j) - g * inv.at(c, j);
                    inv.at(i, j) = t2;
                }
            }
        }
        return inv;
    }

  private:
    size_t n_;
    std::vector<Rat> a_;
};

// det(lambda*I - m) by Faddeev-LeVerrier; exact coefficients, monic.
Polynomial char_poly(const RatMatrix& m);

struct PerronResult {
    std::optional<Rat> exact;  // set when the dominant eigenvalue is rational
    Rat lower, upper;          // enclosing interval in every case
};

// Dominant eigenvalue of a nonnegative matrix.  Rational roots are
// certified exactly (candidate reconstruction + exact polynomial check);
// otherwise an interval of width <= tol from Sturm bisection.
PerronResult perron_root(const RatMatrix& m, const Rat& tol);

// True iff every eigenvalue except the Perron root has modulus < radius.
// Real eigenvalues are excluded by exact Sturm counts outside [-radius, radius];
// complex ones by a 64-point exact rational grid on the circle |z| = radius
// (Pythagorean parametrization) plus a floating eigensolve cross-check.
bool second_eigenvalue_bound(const RatMatrix& m, const Rat& radius);

// Left Perron vector of a row-stochastic irreducible matrix, normalized to sum 1.
std::vector<Rat> stationary_distribution(const RatMatrix& m);

// All eigenvalues in double precision (Durand-Kerner on the char poly).
std::vector<std::complex<double>> eigenvalues_fp(const RatMatrix& m);

}  // namespace collatz
