#ifndef GEODISCOVER_POLY_HPP
#define GEODISCOVER_POLY_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geodiscover/rational.hpp"

namespace gd {

struct Variable {
    std::uint32_t id = 0;
    std::string label;
};

// Sparse exponent vector, sorted by variable id, no zero exponents stored.
class Monomial {
  public:
    using Entry = std::pair<std::uint32_t, std::uint32_t>;  // (var id, exponent)

    Monomial() = default;
    explicit Monomial(std::vector<Entry> entries) : exps_(std::move(entries)) {
        std::sort(exps_.begin(), exps_.end());
        std::size_t out = 0;
        for (const auto& e : exps_)
            if (e.second != 0) exps_[out++] = e;
        exps_.resize(out);
    }
    static Monomial var(std::uint32_t id, std::uint32_t exp = 1) {
        Monomial m;
        if (exp != 0) m.exps_.push_back({id, exp});
        return m;
    }

    const std::vector<Entry>& entries() const { return exps_; }
    bool is_one() const { return exps_.empty(); }
    std::uint32_t degree() const {
        std::uint32_t d = 0;
        for (const auto& e : exps_) d += e.second;
        return d;
    }
    std::uint32_t degree_of(std::uint32_t var) const {
        for (const auto& e : exps_)
            if (e.first == var) return e.second;
        return 0;
    }

    bool divides(const Monomial& m) const {
        auto it = m.exps_.begin();
        for (const auto& e : exps_) {
            while (it != m.exps_.end() && it->first < e.first) ++it;
            if (it == m.exps_.end() || it->first != e.first || it->second < e.second) return false;
        }
        return true;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r;
        auto ia = a.exps_.begin(), ib = b.exps_.begin();
        while (ia != a.exps_.end() || ib != b.exps_.end()) {
            if (ib == b.exps_.end() || (ia != a.exps_.end() && ia->first < ib->first))
                r.exps_.push_back(*ia++);
            else if (ia == a.exps_.end() || ib->first < ia->first)
                r.exps_.push_back(*ib++);
            else {
                r.exps_.push_back({ia->first, ia->second + ib->second});
                ++ia, ++ib;
            }
        }
        return r;
    }
    // Requires b.divides(a).
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        Monomial r;
        auto ib = b.exps_.begin();
        for (const auto& e : a.exps_) {
            if (ib != b.exps_.end() && ib->first == e.first) {
                if (e.second > ib->second) r.exps_.push_back({e.first, e.second - ib->second});
                ++ib;
            } else {
                r.exps_.push_back(e);
            }
        }
        return r;
    }
    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r;
        auto ia = a.exps_.begin(), ib = b.exps_.begin();
        while (ia != a.exps_.end() || ib != b.exps_.end()) {
            if (ib == b.exps_.end() || (ia != a.exps_.end() && ia->first < ib->first))
                r.exps_.push_back(*ia++);
            else if (ia == a.exps_.end() || ib->first < ia->first)
                r.exps_.push_back(*ib++);
            else {
                r.exps_.push_back({ia->first, std::max(ia->second, ib->second)});
                ++ia, ++ib;
            }
        }
        return r;
    }
    static bool coprime(const Monomial& a, const Monomial& b) {
        auto ia = a.exps_.begin(), ib = b.exps_.begin();
        while (ia != a.exps_.end() && ib != b.exps_.end()) {
            if (ia->first < ib->first)
                ++ia;
            else if (ib->first < ia->first)
                ++ib;
            else
                return false;
        }
        return true;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
    // Storage order only; term orders live in TermOrder.
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.exps_ < b.exps_; }

  private:
    std::vector<Entry> exps_;
};

// Graded reverse lexicographic order; ties in total degree are broken by the
// variable priority permutation (rank 0 = highest priority).
class TermOrder {
  public:
    TermOrder() = default;
    // Identity priority: variable id == rank.
    static TermOrder grevlex(std::uint32_t var_count) {
        TermOrder o;
        o.rank_of_.resize(var_count);
        for (std::uint32_t i = 0; i < var_count; ++i) o.rank_of_[i] = i;
        return o;
    }
    // priority[k] = id of the variable with rank k.
    static TermOrder grevlex_with_priority(const std::vector<std::uint32_t>& priority) {
        TermOrder o;
        std::uint32_t n = 0;
        for (auto id : priority) n = std::max(n, id + 1);
        o.rank_of_.assign(n, 0);
        for (std::uint32_t k = 0; k < priority.size(); ++k) o.rank_of_[priority[k]] = k;
        return o;
    }

    std::uint32_t rank(std::uint32_t var) const {
        return var < rank_of_.size() ? rank_of_[var] : var;
    }

    // true iff a precedes b (a is the larger monomial).
    bool greater(const Monomial& a, const Monomial& b) const {
        std::uint32_t da = a.degree(), db = b.degree();
        if (da != db) return da > db;
        // Reverse lex: scan from the lowest-priority variable upward; the
        // monomial with the smaller exponent at the first difference wins.
        thread_local std::vector<std::pair<std::uint32_t, std::int64_t>> diff;
        diff.clear();
        for (const auto& e : a.entries()) diff.push_back({rank(e.first), e.second});
        for (const auto& e : b.entries()) diff.push_back({rank(e.first), -(std::int64_t)e.second});
        std::sort(diff.begin(), diff.end(),
                  [](const auto& x, const auto& y) { return x.first > y.first; });
        std::size_t i = 0;
        while (i < diff.size()) {
            std::int64_t d = diff[i].second;
            std::uint32_t r = diff[i].first;
            ++i;
            if (i < diff.size() && diff[i].first == r) {
                d += diff[i].second;
                ++i;
            }
            if (d != 0) return d < 0;
        }
        return false;
    }

  private:
    std::vector<std::uint32_t> rank_of_;
};

// Exact sparse polynomial over arbitrary-precision rationals.
class Polynomial {
  public:
    using TermMap = std::map<Monomial, Rat>;

    Polynomial() = default;
    static Polynomial constant(const Rat& c) {
        Polynomial p;
        if (c != 0) p.terms_[Monomial{}] = c;
        return p;
    }
    static Polynomial variable(std::uint32_t id) {
        Polynomial p;
        p.terms_[Monomial::var(id)] = 1;
        return p;
    }
    static Polynomial term(const Monomial& m, const Rat& c) {
        Polynomial p;
        if (c != 0) p.terms_[m] = c;
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }
    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }
    std::uint32_t degree_of(std::uint32_t var) const {
        std::uint32_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree_of(var));
        return d;
    }
    bool mentions(std::uint32_t var) const {
        for (const auto& [m, c] : terms_)
            if (m.degree_of(var) > 0) return true;
        return false;
    }
    std::vector<std::uint32_t> variables() const {
        std::vector<std::uint32_t> vs;
        for (const auto& [m, c] : terms_)
            for (const auto& e : m.entries()) vs.push_back(e.first);
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return vs;
    }

    void add_term(const Monomial& m, const Rat& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        Polynomial r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        Polynomial r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    friend Polynomial operator-(const Polynomial& a) {
        Polynomial r;
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    friend Polynomial operator*(const Rat& c, const Polynomial& a) {
        Polynomial r;
        if (c == 0) return r;
        for (const auto& [m, k] : a.terms_) r.terms_.emplace(m, c * k);
        return r;
    }
    Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
    Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.terms_ == b.terms_;
    }

    // Replaces every occurrence of `var` by `value`.
    Polynomial substituted(std::uint32_t var, const Polynomial& value) const {
        Polynomial r;
        std::vector<Polynomial> powers{Polynomial::constant(1)};
        for (const auto& [m, c] : terms_) {
            std::uint32_t e = m.degree_of(var);
            Monomial rest;
            {
                std::vector<Monomial::Entry> es;
                for (const auto& en : m.entries())
                    if (en.first != var) es.push_back(en);
                rest = Monomial(std::move(es));
            }
            while (powers.size() <= e) powers.push_back(powers.back() * value);
            r += Polynomial::term(rest, c) * powers[e];
        }
        return r;
    }

    const std::pair<const Monomial, Rat>& leading_term(const TermOrder& order) const {
        auto best = terms_.begin();
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
            if (order.greater(it->first, best->first)) best = it;
        return *best;
    }

    // Scales so the leading coefficient is 1.
    Polynomial monic(const TermOrder& order) const {
        if (is_zero()) return *this;
        Rat lc = leading_term(order).second;
        Polynomial r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, c / lc);
        return r;
    }

    // Scales to integer coefficients with content 1; sign fixed so the
    // order-leading coefficient is positive.
    Polynomial primitive(const TermOrder& order) const {
        if (is_zero()) return *this;
        mpz_class den = 1;
        for (const auto& [m, c] : terms_) den = den / gcd(den, c.get_den()) * c.get_den();
        mpz_class num = 0;
        for (const auto& [m, c] : terms_) num = gcd(num, mpz_class(c.get_num() * (den / c.get_den())));
        Rat scale(den, num);
        scale.canonicalize();
        if (leading_term(order).second < 0) scale = -scale;
        Polynomial r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, Rat(c * scale));
        return r;
    }

    std::string str(const std::vector<std::string>& labels = {}) const {
        if (is_zero()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += to_string(c);
            for (const auto& e : m.entries()) {
                s += "*";
                s += e.first < labels.size() ? labels[e.first] : "v" + std::to_string(e.first);
                if (e.second > 1) s += "^" + std::to_string(e.second);
            }
        }
        return s;
    }

  private:
    TermMap terms_;
};

// Cooperative wall-clock budget polled by the basis computation.
class Deadline {
  public:
    explicit Deadline(std::chrono::milliseconds budget)
        : end_(std::chrono::steady_clock::now() + budget) {}
    static Deadline unlimited() { return Deadline(std::chrono::hours(24 * 365)); }
    bool expired() const { return std::chrono::steady_clock::now() >= end_; }

  private:
    std::chrono::steady_clock::time_point end_;
};

struct TimedOut {};

}  // namespace gd

#endif
