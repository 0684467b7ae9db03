#pragma once

#include <vector>

#include "collatzkit/rational.hpp"

namespace collatz {

// Dense polynomial over Q, constant term first.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial zero() { return Polynomial(); }

    const std::vector<Rat>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const Rat& operator[](size_t i) const { return c_[i]; }

    Rat eval(const Rat& x) const {
        Rat acc = 0;
        for (size_t i = c_.size(); i-- > 0;) {
            acc = acc * x + c_[i];
        }
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return Polynomial();
        std::vector<Rat> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
        return Polynomial(std::move(d));
    }

    // polynomial remainder of *this by g
    Polynomial rem(const Polynomial& g) const {
        if (g.is_zero()) throw std::domain_error("division by zero polynomial");
        std::vector<Rat> r = c_;
        const auto& gc = g.c_;
        while (r.size() >= gc.size() && !r.empty()) {
            Rat q = r.back() / gc.back();
            size_t off = r.size() - gc.size();
            for (size_t i = 0; i < gc.size(); ++i) {
                Rat t = r[off + i] - q * gc[i];
                r[off + i] = t;
            }
            while (!r.empty() && r.back() == 0) r.pop_back();
        }
        return Polynomial(std::move(r));
    }

    // exact quotient; throws if division is not exact
    Polynomial divide_exact(const Polynomial& g) const {
        if (g.is_zero()) throw std::domain_error("division by zero polynomial");
        std::vector<Rat> r = c_, q(c_.size() >= g.c_.size() ? c_.size() - g.c_.size() + 1 : 0, Rat(0));
        while (r.size() >= g.c_.size() && !r.empty()) {
            Rat f = r.back() / g.c_.back();
            size_t off = r.size() - g.c_.size();
            q[off] = f;
            for (size_t i = 0; i < g.c_.size(); ++i) {
                Rat t = r[off + i] - f * g.c_[i];
                r[off + i] = t;
            }
            while (!r.empty() && r.back() == 0) r.pop_back();
        }
        if (!r.empty()) throw std::domain_error("inexact polynomial division");
        return Polynomial(std::move(q));
    }

    // Sturm sequence; count of distinct real roots in (a, b].
    int count_real_roots(const Rat& a, const Rat& b) const {
        auto chain = sturm_chain();
        return sign_changes(chain, a) - sign_changes(chain, b);
    }

    // Cauchy bound: all real roots lie in [-B, B].
    Rat root_bound() const {
        if (c_.size() <= 1) return Rat(1);
        Rat m = 0;
        for (size_t i = 0; i + 1 < c_.size(); ++i) {
            Rat t = abs(Rat(c_[i] / c_.back()));
            if (t > m) m = t;
        }
        Rat b = m + 1;
        return b;
    }

    std::vector<Polynomial> sturm_chain() const {
        std::vector<Polynomial> chain;
        chain.push_back(*this);
        chain.push_back(derivative());
        while (!chain.back().is_zero()) {
            Polynomial r = chain[chain.size() - 2].rem(chain.back());
            if (r.is_zero()) break;
            std::vector<Rat> neg(r.coeffs());
            for (auto& x : neg) x = -x;
            chain.push_back(Polynomial(std::move(neg)));
        }
        return chain;
    }

    static int sign_changes(const std::vector<Polynomial>& chain, const Rat& x) {
        int changes = 0, last = 0;
        for (const auto& p : chain) {
            Rat v = p.eval(x);
            int s = v == 0 ? 0 : (v > 0 ? 1 : -1);
            if (s == 0) continue;
            if (last != 0 && s != last) ++changes;
            last = s;
        }
        return changes;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

}  // namespace collatz
