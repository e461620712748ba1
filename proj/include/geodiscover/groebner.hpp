#ifndef GEODISCOVER_GROEBNER_HPP
#define GEODISCOVER_GROEBNER_HPP

#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "geodiscover/poly.hpp"

namespace gd {

namespace detail {

// Work representation: terms keyed descending by the term order, so the
// leading term is begin().
struct OrderGreater {
    const TermOrder* order;
    bool operator()(const Monomial& a, const Monomial& b) const { return order->greater(a, b); }
};
using OrderedTerms = std::map<Monomial, Rat, OrderGreater>;

inline OrderedTerms to_ordered(const Polynomial& f, const TermOrder& order) {
    OrderedTerms t{OrderGreater{&order}};
    for (const auto& [m, c] : f.terms()) t.emplace(m, c);
    return t;
}

inline Polynomial from_ordered(const OrderedTerms& t) {
    Polynomial p;
    for (const auto& [m, c] : t) p.add_term(m, c);
    return p;
}

// work -= coeff * mono * g
inline void subtract_multiple(OrderedTerms& work, const Rat& coeff, const Monomial& mono,
                              const Polynomial& g) {
    for (const auto& [m, c] : g.terms()) {
        Monomial key = m * mono;
        auto it = work.find(key);
        if (it == work.end()) {
            work.emplace(key, Rat(-coeff * c));
        } else {
            it->second -= coeff * c;
            if (it->second == 0) work.erase(it);
        }
    }
}

}  // namespace detail

// Remainder of multivariate division of f by the listed sequence G.
inline Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& G,
                              const TermOrder& order, const Deadline* deadline = nullptr,
                              bool* timed_out = nullptr) {
    std::vector<std::pair<Monomial, Rat>> leads;
    leads.reserve(G.size());
    for (const auto& g : G) leads.push_back(g.leading_term(order));

    detail::OrderedTerms work = detail::to_ordered(f, order);
    Polynomial remainder;
    while (!work.empty()) {
        if (deadline && deadline->expired()) {
            if (timed_out) *timed_out = true;
            return remainder;
        }
        auto [m, c] = *work.begin();
        bool reduced = false;
        for (std::size_t i = 0; i < G.size(); ++i) {
            if (leads[i].first.divides(m)) {
                // Cancels the leading term of work exactly.
                detail::subtract_multiple(work, Rat(c / leads[i].second), m / leads[i].first,
                                          G[i]);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            remainder.add_term(m, c);
            work.erase(work.begin());
        }
    }
    return remainder;
}

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const TermOrder& order) {
    const auto& [mf, cf] = f.leading_term(order);
    const auto& [mg, cg] = g.leading_term(order);
    Monomial l = Monomial::lcm(mf, mg);
    return Polynomial::term(l / mf, Rat(1 / cf)) * f - Polynomial::term(l / mg, Rat(1 / cg)) * g;
}

using GroebnerResult = std::variant<std::vector<Polynomial>, TimedOut>;

// Buchberger with the coprime and chain criteria, normal pair selection.
// Returns the reduced basis (monic, mutually irreducible leading terms).
inline GroebnerResult groebner_basis(const std::vector<Polynomial>& F, const TermOrder& order,
                                     const Deadline& deadline) {
    std::vector<Polynomial> basis;
    for (const auto& f : F)
        if (!f.is_zero()) basis.push_back(f.primitive(order));
    if (basis.empty()) return std::vector<Polynomial>{};
    for (const auto& f : basis)
        if (f.is_constant()) return std::vector<Polynomial>{Polynomial::constant(1)};

    struct Pair {
        std::size_t i, j;
        Monomial lcm;
        std::uint32_t deg;
    };
    std::vector<Pair> pending;
    std::set<std::pair<std::size_t, std::size_t>> treated;
    auto push_pairs = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            Monomial l = Monomial::lcm(basis[i].leading_term(order).first,
                                       basis[j].leading_term(order).first);
            pending.push_back({i, j, l, l.degree()});
        }
    };
    for (std::size_t j = 1; j < basis.size(); ++j) push_pairs(j);

    while (!pending.empty()) {
        if (deadline.expired()) return TimedOut{};
        std::size_t best = 0;
        for (std::size_t k = 1; k < pending.size(); ++k) {
            if (pending[k].deg < pending[best].deg ||
                (pending[k].deg == pending[best].deg &&
                 std::pair{pending[k].i, pending[k].j} < std::pair{pending[best].i, pending[best].j}))
                best = k;
        }
        Pair p = pending[best];
        pending.erase(pending.begin() + best);
        treated.insert({p.i, p.j});

        const Monomial& li = basis[p.i].leading_term(order).first;
        const Monomial& lj = basis[p.j].leading_term(order).first;
        if (Monomial::coprime(li, lj)) continue;
        // Chain criterion: skip if some k with LT(k) | lcm has both pairs done.
        bool skip = false;
        for (std::size_t k = 0; k < basis.size() && !skip; ++k) {
            if (k == p.i || k == p.j) continue;
            if (!basis[k].leading_term(order).first.divides(p.lcm)) continue;
            auto a = std::minmax(p.i, k);
            auto b = std::minmax(p.j, k);
            if (treated.count({a.first, a.second}) && treated.count({b.first, b.second}))
                skip = true;
        }
        if (skip) continue;

        bool to = false;
        Polynomial h =
            normal_form(s_polynomial(basis[p.i], basis[p.j], order), basis, order, &deadline, &to);
        if (to) return TimedOut{};
        if (h.is_zero()) continue;
        if (h.is_constant()) return std::vector<Polynomial>{Polynomial::constant(1)};
        basis.push_back(h.primitive(order));
        push_pairs(basis.size() - 1);
    }

    // Minimalize: drop elements whose lead is divisible by another lead.
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Monomial& li = basis[i].leading_term(order).first;
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            const Monomial& lj = basis[j].leading_term(order).first;
            if (lj.divides(li) && !(li == lj && j > i)) redundant = true;
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    // Reduce tails and make monic.
    std::vector<Polynomial> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        bool to = false;
        Polynomial r = others.empty()
                           ? minimal[i]
                           : normal_form(minimal[i], others, order, &deadline, &to);
        if (to) return TimedOut{};
        if (!r.is_zero()) reduced.push_back(r.monic(order));
    }
    return reduced;
}

enum class Ternary { Yes, No, TimedOut };

// Whether 1 lies in the ideal generated by F.
inline Ternary contains_one(const std::vector<Polynomial>& F, const TermOrder& order,
                            const Deadline& deadline) {
    std::vector<Polynomial> nonzero;
    for (const auto& f : F)
        if (!f.is_zero()) nonzero.push_back(f);
    if (nonzero.empty()) return Ternary::No;
    GroebnerResult r = groebner_basis(nonzero, order, deadline);
    if (std::holds_alternative<TimedOut>(r)) return Ternary::TimedOut;
    const auto& basis = std::get<std::vector<Polynomial>>(r);
    return basis.size() == 1 && basis[0].is_constant() && !basis[0].is_zero() ? Ternary::Yes
                                                                              : Ternary::No;
}

}  // namespace gd

#endif
