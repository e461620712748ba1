#ifndef GEODISCOVER_PROVER_HPP
#define GEODISCOVER_PROVER_HPP

#include <array>
#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "geodiscover/construction.hpp"
#include "geodiscover/groebner.hpp"
#include "geodiscover/predicate.hpp"

namespace gd {

// Polynomial model of a construction: two coordinate variables per geometric
// point (unless pinned by normalization), rotation auxiliaries for regular
// polygons, hypothesis polynomials for every dependent step, and the
// nondegeneracy polynomials collected from the step witnesses.
// Optional precomputed Groebner basis of the hypotheses saturated by the
// product of all nondegeneracy witnesses; shared by all copies of the system.
// Statements whose polynomials reduce to zero against it are generically true
// without a per-statement basis computation.
struct SaturatedBasis {
    enum class State { NotTried, Ready, Failed };
    State state = State::NotTried;
    std::vector<Polynomial> basis;
    std::optional<TermOrder> order;
};

struct HypothesisSystem {
    std::vector<std::string> labels;  // by variable id
    std::map<std::string, std::pair<Polynomial, Polynomial>> coords;  // name -> (x, y)
    std::vector<Polynomial> hypotheses;
    std::vector<Polynomial> nondegeneracy;
    // Variable ids by decreasing priority: step auxiliaries, dependent
    // coordinates, free coordinates. Rabinowitsch auxiliaries are prepended
    // at decision time.
    std::vector<std::uint32_t> aux_vars, dependent_vars, free_vars;
    int point_count = 0;
    int pinned_points = 0;
    // Dependency cone bookkeeping: referenced points per point and the owning
    // point of each hypothesis / witness polynomial, so a decision can drop
    // equations of points the statement does not depend on.
    std::map<std::string, std::vector<std::string>> point_deps;
    std::vector<std::string> hypothesis_owner;  // parallel to hypotheses
    std::vector<std::string> witness_owner;     // parallel to nondegeneracy
    std::shared_ptr<SaturatedBasis> saturated = std::make_shared<SaturatedBasis>();

    std::uint32_t var_count() const { return (std::uint32_t)labels.size(); }
    const Polynomial& px(const std::string& name) const { return coords.at(name).first; }
    const Polynomial& py(const std::string& name) const { return coords.at(name).second; }

    // All points the given ones depend on, transitively, including themselves.
    std::set<std::string> ancestor_closure(const std::vector<std::string>& pts) const {
        std::set<std::string> closed;
        std::vector<std::string> work(pts.begin(), pts.end());
        while (!work.empty()) {
            std::string n = work.back();
            work.pop_back();
            if (!closed.insert(n).second) continue;
            auto it = point_deps.find(n);
            if (it != point_deps.end())
                for (const auto& d : it->second) work.push_back(d);
        }
        return closed;
    }
};

struct Verdict {
    enum class Kind { GenericallyTrue, GenericallyFalse, Timeout };
    Kind kind = Kind::Timeout;
    std::chrono::milliseconds elapsed{0};
    int basis_size = 0;  // diagnostics: largest completed basis
};

// Minimal polynomial of cos(2*pi/n) for the supported polygon sizes,
// as coefficient lists c0 + c1*x + c2*x^2 + ...
inline const std::vector<long>& cos_min_poly(int n) {
    static const std::map<int, std::vector<long>> table = {
        {3, {1, 2}},          {4, {0, 1}},           {5, {-1, 2, 4}},
        {6, {-1, 2}},         {8, {-1, 0, 2}},       {10, {-1, -2, 4}},
        {12, {-3, 0, 4}},     {20, {5, 0, -20, 0, 16}},
    };
    return table.at(n);
}

namespace detail {

struct PointExpr {
    Polynomial x, y;
};

inline PointExpr point(const HypothesisSystem& sys, const std::string& name) {
    return {sys.px(name), sys.py(name)};
}

inline Polynomial cross_expr(const PointExpr& u, const PointExpr& v) {
    return u.x * v.y - u.y * v.x;
}
inline Polynomial dot_expr(const PointExpr& u, const PointExpr& v) {
    return u.x * v.x + u.y * v.y;
}
inline PointExpr diff(const PointExpr& a, const PointExpr& b) {
    return {a.x - b.x, a.y - b.y};
}
inline Polynomial dist2(const PointExpr& a, const PointExpr& b) {
    PointExpr d = diff(a, b);
    return d.x * d.x + d.y * d.y;
}

// Direction vector of a line reference.
inline PointExpr line_direction(const HypothesisSystem& sys, const LineRef& l) {
    switch (l.kind) {
        case LineRef::Kind::Through: {
            PointExpr d = diff(point(sys, l.pts[1]), point(sys, l.pts[0]));
            return d;
        }
        case LineRef::Kind::PerpBisector: {
            PointExpr d = diff(point(sys, l.pts[1]), point(sys, l.pts[0]));
            return {-d.y, d.x};
        }
        case LineRef::Kind::PerpAt: {
            PointExpr d = diff(point(sys, l.pts[2]), point(sys, l.pts[1]));
            return {-d.y, d.x};
        }
        case LineRef::Kind::ParallelAt: {
            return diff(point(sys, l.pts[2]), point(sys, l.pts[1]));
        }
    }
    return {};
}

// Membership polynomial: vanishes iff X lies on the referenced line.
inline Polynomial line_membership(const HypothesisSystem& sys, const LineRef& l,
                                  const PointExpr& X) {
    switch (l.kind) {
        case LineRef::Kind::Through: {
            PointExpr p = point(sys, l.pts[0]);
            return cross_expr(diff(point(sys, l.pts[1]), p), diff(X, p));
        }
        case LineRef::Kind::PerpBisector:
            return dist2(X, point(sys, l.pts[0])) - dist2(X, point(sys, l.pts[1]));
        case LineRef::Kind::PerpAt: {
            PointExpr d = diff(point(sys, l.pts[2]), point(sys, l.pts[1]));
            return dot_expr(d, diff(X, point(sys, l.pts[0])));
        }
        case LineRef::Kind::ParallelAt: {
            PointExpr d = diff(point(sys, l.pts[2]), point(sys, l.pts[1]));
            return cross_expr(d, diff(X, point(sys, l.pts[0])));
        }
    }
    return {};
}

inline Polynomial concyclic_det(const PointExpr& a, const PointExpr& b, const PointExpr& c,
                                const PointExpr& d) {
    // 4x4 determinant with rows (x, y, x^2+y^2, 1), expanded along the last
    // column via 3x3 cofactors.
    auto row = [](const PointExpr& p) {
        return std::array<Polynomial, 3>{p.x, p.y, p.x * p.x + p.y * p.y};
    };
    std::array<std::array<Polynomial, 3>, 4> rows{row(a), row(b), row(c), row(d)};
    auto det3 = [](const std::array<Polynomial, 3>& r0, const std::array<Polynomial, 3>& r1,
                   const std::array<Polynomial, 3>& r2) {
        return r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) -
               r0[1] * (r1[0] * r2[2] - r1[2] * r2[0]) +
               r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]);
    };
    // Expansion along the all-ones column with alternating signs.
    return -det3(rows[1], rows[2], rows[3]) + det3(rows[0], rows[2], rows[3]) -
           det3(rows[0], rows[1], rows[3]) + det3(rows[0], rows[1], rows[2]);
}

inline Polynomial circle_membership(const HypothesisSystem& sys, const CircleRef& c,
                                    const PointExpr& X) {
    if (c.kind == CircleRef::Kind::CenterThrough) {
        PointExpr o = point(sys, c.pts[0]);
        return dist2(X, o) - dist2(point(sys, c.pts[1]), o);
    }
    return concyclic_det(X, point(sys, c.pts[0]), point(sys, c.pts[1]), point(sys, c.pts[2]));
}

inline Polynomial witness_polynomial(const HypothesisSystem& sys, const Witness& w) {
    if (const auto* np = std::get_if<NotParallel>(&w))
        return cross_expr(line_direction(sys, np->l1), line_direction(sys, np->l2));
    if (const auto* dp = std::get_if<DistinctPoints>(&w))
        return dist2(point(sys, dp->a), point(sys, dp->b));
    const auto& nc = std::get<NonCollinear>(w);
    PointExpr a = point(sys, nc.a);
    return cross_expr(diff(point(sys, nc.b), a), diff(point(sys, nc.c), a));
}

}  // namespace detail

class UnsupportedPolygon : public std::runtime_error {
  public:
    explicit UnsupportedPolygon(int n)
        : std::runtime_error("unsupported polygon n=" + std::to_string(n)) {}
};

// Builds the polynomial hypothesis system for a valid construction. With
// normalize set, the first two free points are pinned to (0,0) and (1,0).
inline HypothesisSystem translate(const Construction& c, bool normalize = false) {
    HypothesisSystem sys;
    int free_seen = 0;

    auto new_var = [&](const std::string& label, bool dependent) {
        std::uint32_t id = sys.var_count();
        sys.labels.push_back(label);
        (dependent ? sys.dependent_vars : sys.free_vars).push_back(id);
        return Polynomial::variable(id);
    };
    auto new_aux = [&](const std::string& label) {
        std::uint32_t id = sys.var_count();
        sys.labels.push_back(label);
        sys.aux_vars.push_back(id);
        return Polynomial::variable(id);
    };
    auto declare_point = [&](const std::string& name, bool dependent) {
        sys.coords[name] = {new_var("x" + name, dependent), new_var("y" + name, dependent)};
        ++sys.point_count;
        return detail::point(sys, name);
    };

    std::string owner;
    auto push_hyp = [&](const Polynomial& p) {
        sys.hypotheses.push_back(p);
        sys.hypothesis_owner.push_back(owner);
    };

    for (const auto& step : c.steps) {
        owner = step.names[0];
        {
            // dependency cone: each defined point depends on every referenced
            // point; co-defined regular vertices depend on each other.
            std::vector<std::string> deps = step.referenced();
            for (const auto& n : step.names) {
                std::vector<std::string> d = deps;
                if (step.names.size() > 1)
                    for (const auto& sib : step.names)
                        if (sib != n) d.push_back(sib);
                sys.point_deps[n] = d;
            }
        }
        if (const auto* f = std::get_if<FreeDef>(&step.def)) {
            (void)f;
            if (normalize && free_seen < 2) {
                sys.coords[step.names[0]] = {Polynomial::constant(Rat(free_seen)),
                                             Polynomial::constant(Rat(0))};
                ++sys.point_count;
                ++sys.pinned_points;
            } else {
                declare_point(step.names[0], false);
            }
            ++free_seen;
        } else if (const auto* m = std::get_if<MidpointDef>(&step.def)) {
            auto D = declare_point(step.names[0], true);
            auto A = detail::point(sys, m->a), B = detail::point(sys, m->b);
            push_hyp(Polynomial::constant(2) * D.x - A.x - B.x);
            push_hyp(Polynomial::constant(2) * D.y - A.y - B.y);
        } else if (const auto* il = std::get_if<IntersectLinesDef>(&step.def)) {
            auto X = declare_point(step.names[0], true);
            push_hyp(detail::line_membership(sys, il->l1, X));
            push_hyp(detail::line_membership(sys, il->l2, X));
        } else if (const auto* lc = std::get_if<IntersectLineCircleDef>(&step.def)) {
            auto X = declare_point(step.names[0], true);
            push_hyp(detail::line_membership(sys, lc->line, X));
            push_hyp(detail::circle_membership(sys, lc->circle, X));
        } else if (const auto* ft = std::get_if<FootDef>(&step.def)) {
            auto F = declare_point(step.names[0], true);
            auto A = detail::point(sys, ft->a), B = detail::point(sys, ft->b);
            auto P = detail::point(sys, ft->p);
            push_hyp(
                detail::cross_expr(detail::diff(B, A), detail::diff(F, A)));
            push_hyp(detail::dot_expr(detail::diff(B, A), detail::diff(F, P)));
        } else if (const auto* reg = std::get_if<RegularDef>(&step.def)) {
            if (!supported_polygons().count(reg->n)) throw UnsupportedPolygon(reg->n);
            std::string tag = step.names[0];
            detail::PointExpr O{new_aux("ox" + tag), new_aux("oy" + tag)};
            Polynomial cn = new_aux("c" + tag);
            Polynomial sn = new_aux("s" + tag);
            const auto& mp = cos_min_poly(reg->n);
            Polynomial minpoly;
            Polynomial cpow = Polynomial::constant(1);
            for (std::size_t i = 0; i < mp.size(); ++i) {
                minpoly += Polynomial::constant(Rat(mp[i])) * cpow;
                cpow = cpow * cn;
            }
            push_hyp(minpoly);
            push_hyp(cn * cn + sn * sn - Polynomial::constant(1));
            std::vector<detail::PointExpr> verts;
            verts.push_back(detail::point(sys, reg->a));
            verts.push_back(detail::point(sys, reg->b));
            for (const auto& n : step.names) verts.push_back(declare_point(n, true));
            for (std::size_t k = 0; k + 1 < verts.size(); ++k) {
                detail::PointExpr d = detail::diff(verts[k], O);
                push_hyp(verts[k + 1].x - O.x - (cn * d.x - sn * d.y));
                push_hyp(verts[k + 1].y - O.y - (sn * d.x + cn * d.y));
            }
        }
        for (const auto& w : nondegeneracy_witnesses(step)) {
            sys.nondegeneracy.push_back(detail::witness_polynomial(sys, w));
            sys.witness_owner.push_back(owner);
        }
    }
    // Drop identically-zero hypotheses (possible under pinning).
    for (std::size_t i = sys.hypotheses.size(); i-- > 0;)
        if (sys.hypotheses[i].is_zero()) {
            sys.hypotheses.erase(sys.hypotheses.begin() + i);
            sys.hypothesis_owner.erase(sys.hypothesis_owner.begin() + i);
        }
    return sys;
}

// Polynomials that vanish iff the statement holds.
inline std::vector<Polynomial> statement_polynomials(const Predicate& p,
                                                     const HypothesisSystem& sys) {
    auto pt = [&](int i) { return detail::point(sys, p.pts[i]); };
    switch (p.kind) {
        case Predicate::Kind::Identical:
            return {pt(0).x - pt(1).x, pt(0).y - pt(1).y};
        case Predicate::Kind::Collinear:
            return {detail::cross_expr(detail::diff(pt(1), pt(0)), detail::diff(pt(2), pt(0)))};
        case Predicate::Kind::Concyclic:
            return {detail::concyclic_det(pt(0), pt(1), pt(2), pt(3))};
        case Predicate::Kind::Parallel:
            return {detail::cross_expr(detail::diff(pt(1), pt(0)), detail::diff(pt(3), pt(2)))};
        case Predicate::Kind::Congruent:
            return {detail::dist2(pt(0), pt(1)) - detail::dist2(pt(2), pt(3))};
    }
    return {};
}

namespace detail {

// Eliminates variables that occur in exactly one term of some polynomial,
// linearly and with a constant coefficient (midpoints, rotation equations,
// pinned-coordinate consequences). Preserves 1-membership of the generated
// ideal in both directions. Returns false if a nonzero constant shows up,
// meaning the ideal is the whole ring.
inline bool eliminate_linear(std::vector<Polynomial>& polys, const Deadline* dl = nullptr) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < polys.size(); ++i) {
            // a partially simplified list is still an equivalent generating
            // set, so an expired deadline just stops simplifying
            if (dl && dl->expired()) return true;
            const Polynomial& p = polys[i];
            if (p.is_zero()) continue;
            if (p.is_constant()) return false;
            std::uint32_t var = 0;
            Rat coeff;
            bool found = false;
            for (const auto& [m, c] : p.terms()) {
                if (m.entries().size() != 1 || m.entries()[0].second != 1) continue;
                std::uint32_t v = m.entries()[0].first;
                // v must not occur in any other term of p
                bool sole = true;
                for (const auto& [m2, c2] : p.terms())
                    if (!(m2 == m) && m2.degree_of(v) > 0) sole = false;
                if (sole) {
                    var = v;
                    coeff = c;
                    found = true;
                    break;
                }
            }
            if (!found) continue;
            Polynomial rest = p - Polynomial::term(Monomial::var(var), coeff);
            Polynomial value = (Rat(-1) / coeff) * rest;
            polys.erase(polys.begin() + i);
            for (auto& q : polys)
                if (q.mentions(var)) q = q.substituted(var, value);
            std::erase_if(polys, [](const Polynomial& q) { return q.is_zero(); });
            for (const auto& q : polys)
                if (q.is_constant() && !q.is_zero()) return false;
            changed = true;
            break;
        }
    }
    return true;
}

}  // namespace detail

// Best-effort precomputation of the saturated hypothesis basis within the
// given deadline. Safe to skip: decisions fall back to per-statement bases.
inline void prepare_saturated_basis(const HypothesisSystem& sys, const Deadline& deadline) {
    SaturatedBasis& cache = *sys.saturated;
    if (cache.state != SaturatedBasis::State::NotTried) return;
    cache.state = SaturatedBasis::State::Failed;

    std::vector<Polynomial> ideal = sys.hypotheses;
    std::uint32_t next = sys.var_count();
    std::vector<std::uint32_t> sat_vars;
    for (const auto& g : sys.nondegeneracy) {
        if (g.is_zero()) continue;
        std::uint32_t s = next++;
        sat_vars.push_back(s);
        ideal.push_back(Polynomial::variable(s) * g - Polynomial::constant(1));
    }
    if (!detail::eliminate_linear(ideal, &deadline))
        return;  // inconsistent hypotheses; leave Failed

    std::vector<std::uint32_t> priority = sat_vars;
    priority.insert(priority.end(), sys.aux_vars.begin(), sys.aux_vars.end());
    priority.insert(priority.end(), sys.dependent_vars.begin(), sys.dependent_vars.end());
    priority.insert(priority.end(), sys.free_vars.begin(), sys.free_vars.end());
    TermOrder order = TermOrder::grevlex_with_priority(priority);

    GroebnerResult r = groebner_basis(ideal, order, deadline);
    if (std::holds_alternative<TimedOut>(r)) return;
    cache.basis = std::get<std::vector<Polynomial>>(r);
    cache.order = order;
    cache.state = SaturatedBasis::State::Ready;
}

// Decides generic truth of a predicate over the hypothesis variety off the
// degeneracy locus, via saturation with fresh inverter variables. Stage 1
// omits the nondegeneracy saturators (strict truth); a negative answer is
// retried with them before concluding GenericallyFalse. Two speedups: a
// statement polynomial that reduces to zero against the precomputed saturated
// basis is accepted outright, and the fallback basis computation only uses
// the hypotheses of points the statement transitively depends on.
inline Verdict decide(const Predicate& p, const HypothesisSystem& sys, const Deadline& deadline) {
    auto start = std::chrono::steady_clock::now();
    auto finish = [&](Verdict::Kind k, int basis) {
        return Verdict{k, std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start),
                       basis};
    };

    std::set<std::string> cone = sys.ancestor_closure(p.pts);
    std::vector<Polynomial> cone_hyps, cone_witnesses;
    for (std::size_t i = 0; i < sys.hypotheses.size(); ++i)
        if (cone.count(sys.hypothesis_owner[i])) cone_hyps.push_back(sys.hypotheses[i]);
    for (std::size_t i = 0; i < sys.nondegeneracy.size(); ++i)
        if (cone.count(sys.witness_owner[i])) cone_witnesses.push_back(sys.nondegeneracy[i]);

    std::vector<Polynomial> parts = statement_polynomials(p, sys);
    bool any_timeout = false;
    int basis_size = 0;
    for (const Polynomial& target : parts) {
        if (target.is_zero()) continue;  // identically satisfied

        if (sys.saturated->state == SaturatedBasis::State::Ready) {
            bool timed_out = false;
            Polynomial nf = normal_form(target, sys.saturated->basis, *sys.saturated->order,
                                        &deadline, &timed_out);
            if (!timed_out && nf.is_zero()) continue;  // in the saturated ideal
            if (timed_out) {
                any_timeout = true;
                continue;
            }
        }

        auto run_stage = [&](bool with_saturators) -> Ternary {
            std::uint32_t next = sys.var_count();
            std::vector<std::uint32_t> rabinowitsch;
            std::vector<Polynomial> ideal = cone_hyps;
            if (with_saturators) {
                for (const auto& g : cone_witnesses) {
                    if (g.is_zero()) continue;
                    std::uint32_t s = next++;
                    rabinowitsch.push_back(s);
                    ideal.push_back(Polynomial::variable(s) * g - Polynomial::constant(1));
                }
            }
            std::uint32_t t = next++;
            rabinowitsch.push_back(t);
            ideal.push_back(Polynomial::variable(t) * target - Polynomial::constant(1));

            if (!detail::eliminate_linear(ideal, &deadline)) return Ternary::Yes;
            if (ideal.empty()) return Ternary::No;

            std::vector<std::uint32_t> priority = rabinowitsch;
            priority.insert(priority.end(), sys.aux_vars.begin(), sys.aux_vars.end());
            priority.insert(priority.end(), sys.dependent_vars.begin(),
                            sys.dependent_vars.end());
            priority.insert(priority.end(), sys.free_vars.begin(), sys.free_vars.end());
            TermOrder order = TermOrder::grevlex_with_priority(priority);

            GroebnerResult r = groebner_basis(ideal, order, deadline);
            if (std::holds_alternative<TimedOut>(r)) return Ternary::TimedOut;
            const auto& basis = std::get<std::vector<Polynomial>>(r);
            basis_size = std::max(basis_size, (int)basis.size());
            return basis.size() == 1 && basis[0].is_constant() ? Ternary::Yes : Ternary::No;
        };

        Ternary verdict = run_stage(false);
        if (verdict == Ternary::No && !cone_witnesses.empty()) verdict = run_stage(true);
        if (verdict == Ternary::No) return finish(Verdict::Kind::GenericallyFalse, basis_size);
        if (verdict == Ternary::TimedOut) any_timeout = true;
    }
    if (any_timeout) return finish(Verdict::Kind::Timeout, basis_size);
    return finish(Verdict::Kind::GenericallyTrue, basis_size);
}

}  // namespace gd

#endif
