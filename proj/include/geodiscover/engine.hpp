#ifndef GEODISCOVER_ENGINE_HPP
#define GEODISCOVER_ENGINE_HPP

#include <chrono>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "geodiscover/numeric.hpp"
#include "geodiscover/pool.hpp"
#include "geodiscover/prover.hpp"

namespace gd {

struct Options {
    std::chrono::milliseconds per_check_timeout{5000};
    NumericConfig numeric;
    bool show_trivial = false;
    bool normalize_coordinates = false;
    int parallel_workers = 1;  // reserved; discovery currently runs sequentially
    std::uint64_t base_seed = 0;
};

struct Finding {
    Predicate statement;
    bool trivial = false;
    bool involves_target = false;
    std::chrono::milliseconds decide_time{0};
};

struct DiscoveryReport {
    std::string target;
    bool aborted = false;
    bool normalized = false;
    std::vector<Finding> findings;  // accepted statements in discovery order
    Findings pool;                  // per-target class summary
    std::map<Phase, int> enumerated;
    std::map<Phase, int> dispatched;  // numeric-positive candidates per phase
    std::chrono::milliseconds total_time{0};
    std::chrono::milliseconds max_check_time{0};

    std::vector<Finding> theorems() const {
        std::vector<Finding> out;
        for (const auto& f : findings)
            if (!f.trivial && f.involves_target) out.push_back(f);
        return out;
    }
    std::vector<Finding> trivia() const {
        std::vector<Finding> out;
        for (const auto& f : findings)
            if (f.trivial && f.involves_target) out.push_back(f);
        return out;
    }
};

namespace detail {

// Canonical encoding of a point's defining step with every referenced point
// replaced by its current class root; two points with equal encodings are
// definitionally the same point. Free points get a unique encoding.
inline std::string canonical_definition(const std::string& name, const Construction& c,
                                        const Pool& pool) {
    auto cls = [&](const std::string& n) { return std::to_string(pool.find(n)); };
    auto line_key = [&](const LineRef& l) {
        std::string s = "L" + std::to_string((int)l.kind);
        for (const auto& p : l.referenced()) s += ":" + cls(p);
        return s;
    };
    auto circle_key = [&](const CircleRef& cr) {
        std::string s = "C" + std::to_string((int)cr.kind);
        for (const auto& p : cr.referenced()) s += ":" + cls(p);
        return s;
    };
    for (const auto& step : c.steps) {
        for (std::size_t pos = 0; pos < step.names.size(); ++pos) {
            if (step.names[pos] != name) continue;
            std::ostringstream os;
            if (std::holds_alternative<FreeDef>(step.def)) {
                os << "free:" << name;  // free points are never definitionally equal
            } else if (const auto* m = std::get_if<MidpointDef>(&step.def)) {
                std::string a = cls(m->a), b = cls(m->b);
                if (b < a) std::swap(a, b);
                os << "mid:" << a << ":" << b;
            } else if (const auto* il = std::get_if<IntersectLinesDef>(&step.def)) {
                std::string k1 = line_key(il->l1), k2 = line_key(il->l2);
                if (k2 < k1) std::swap(k1, k2);
                os << "ill:" << k1 << "|" << k2;
            } else if (const auto* lc = std::get_if<IntersectLineCircleDef>(&step.def)) {
                os << "ilc:" << line_key(lc->line) << "|" << circle_key(lc->circle) << "|"
                   << lc->near_x << "," << lc->near_y;
            } else if (const auto* ft = std::get_if<FootDef>(&step.def)) {
                os << "foot:" << cls(ft->p) << ":" << cls(ft->a) << ":" << cls(ft->b);
            } else if (const auto* reg = std::get_if<RegularDef>(&step.def)) {
                os << "reg:" << reg->n << ":" << cls(reg->a) << ":" << cls(reg->b) << ":" << pos;
            }
            return os.str();
        }
    }
    return "?";
}

}  // namespace detail

// A statement is trivial when a single construction step already entails it,
// reading the statement's points up to known coincidence: midpoints, feet, and
// points defined on an explicit two-point line entail the collinearity of that
// triple; a point cut from a circumcircle entails the concyclicity of the
// four; two points with definitionally equal steps entail their identity.
// Parallelisms and congruences are never trivial.
inline bool is_trivial(const Predicate& p, const Pool& pool, const Construction& c) {
    auto cls = [&](const std::string& n) { return pool.find(n); };

    if (p.kind == Predicate::Kind::Identical) {
        for (int x : pool.members(cls(p.pts[0])))
            for (int y : pool.members(cls(p.pts[1]))) {
                std::string dx = detail::canonical_definition(pool.name_of(x), c, pool);
                std::string dy = detail::canonical_definition(pool.name_of(y), c, pool);
                if (dx.rfind("free:", 0) == 0) continue;
                if (dx == dy) return true;
            }
        return false;
    }
    if (p.kind == Predicate::Kind::Collinear) {
        std::set<int> S{cls(p.pts[0]), cls(p.pts[1]), cls(p.pts[2])};
        for (const auto& step : c.steps) {
            auto entails = [&](const std::string& m, const std::string& a,
                              const std::string& b) {
                return std::set<int>{cls(m), cls(a), cls(b)} == S;
            };
            if (const auto* md = std::get_if<MidpointDef>(&step.def)) {
                if (entails(step.names[0], md->a, md->b)) return true;
            } else if (const auto* ft = std::get_if<FootDef>(&step.def)) {
                if (entails(step.names[0], ft->a, ft->b)) return true;
            } else if (const auto* il = std::get_if<IntersectLinesDef>(&step.def)) {
                for (const LineRef* l : {&il->l1, &il->l2})
                    if (l->kind == LineRef::Kind::Through &&
                        entails(step.names[0], l->pts[0], l->pts[1]))
                        return true;
            } else if (const auto* lc = std::get_if<IntersectLineCircleDef>(&step.def)) {
                if (lc->line.kind == LineRef::Kind::Through &&
                    entails(step.names[0], lc->line.pts[0], lc->line.pts[1]))
                    return true;
            }
        }
        return false;
    }
    if (p.kind == Predicate::Kind::Concyclic) {
        std::set<int> S{cls(p.pts[0]), cls(p.pts[1]), cls(p.pts[2]), cls(p.pts[3])};
        for (const auto& step : c.steps) {
            const auto* lc = std::get_if<IntersectLineCircleDef>(&step.def);
            if (!lc || lc->circle.kind != CircleRef::Kind::Circumcircle) continue;
            std::set<int> T{cls(step.names[0]), cls(lc->circle.pts[0]), cls(lc->circle.pts[1]),
                            cls(lc->circle.pts[2])};
            if (T == S) return true;
        }
        return false;
    }
    return false;
}

// Full discovery pipeline: numeric filtering over several instances, phased
// candidate enumeration with re-enumeration after each accepted statement,
// trivial-statement short-circuit, and symbolic confirmation of the rest.
// Throws DegenerateInstance when no numeric realization can be drawn. A
// timed-out identity check aborts the run with empty findings, because the
// merge structure of everything downstream would be unknown.
inline DiscoveryReport discover(const Construction& c, const std::string& target,
                                const Options& opts = {}) {
    auto t0 = std::chrono::steady_clock::now();
    DiscoveryReport report;
    report.target = target;
    report.normalized = opts.normalize_coordinates;

    HypothesisSystem sys = translate(c, opts.normalize_coordinates);
    // Best-effort shared basis; statements reducing to zero against it skip
    // their own basis computation entirely.
    prepare_saturated_basis(sys, Deadline(opts.per_check_timeout));
    std::vector<Instance> instances;
    for (int k = 0; k < opts.numeric.instance_count; ++k)
        instances.push_back(instantiate(c, opts.base_seed + k, opts.numeric));

    Pool pool(c);
    std::set<std::string> decided;

    auto involves = [&](const Predicate& p) {
        int t = pool.find(target);
        for (const auto& n : p.pts)
            if (pool.find(n) == t) return true;
        return false;
    };
    auto apply = [&](const Predicate& p) {
        auto idx = [&](int i) { return pool.index_of(p.pts[i]); };
        switch (p.kind) {
            case Predicate::Kind::Identical:
                pool.merge_points(p.pts[0], p.pts[1]);
                break;
            case Predicate::Kind::Collinear:
                pool.add_collinear(idx(0), idx(1), idx(2));
                break;
            case Predicate::Kind::Concyclic:
                pool.add_concyclic(idx(0), idx(1), idx(2), idx(3));
                break;
            case Predicate::Kind::Parallel:
                pool.add_parallel(pool.ensure_line(idx(0), idx(1)),
                                  pool.ensure_line(idx(2), idx(3)));
                break;
            case Predicate::Kind::Congruent:
                pool.add_congruent({idx(0), idx(1)}, {idx(2), idx(3)});
                break;
        }
    };

    for (Phase phase : {Phase::Identical, Phase::Collinear, Phase::Concyclic, Phase::Parallel,
                        Phase::Congruent}) {
        if (phase == Phase::Parallel) {
            // Materialize a line for every pair of point classes so parallel
            // candidates cover segment directions, not only proved lines.
            auto reps = pool.roots();
            for (std::size_t i = 0; i < reps.size(); ++i)
                for (std::size_t j = i + 1; j < reps.size(); ++j)
                    pool.ensure_line(reps[i], reps[j]);
        }
        bool repeat = true;
        while (repeat) {
            repeat = false;
            for (const Predicate& cand : candidates_for_phase(pool, phase)) {
                if (!decided.insert(cand.str()).second) continue;
                ++report.enumerated[phase];
                if (!holds_on(cand, instances, opts.numeric.epsilon_rel)) continue;
                ++report.dispatched[phase];

                Finding f;
                f.statement = cand;
                f.trivial = is_trivial(cand, pool, c);
                if (!f.trivial) {
                    Verdict v = decide(cand, sys, Deadline(opts.per_check_timeout));
                    f.decide_time = v.elapsed;
                    report.max_check_time = std::max(report.max_check_time, v.elapsed);
                    if (v.kind == Verdict::Kind::Timeout) {
                        if (phase == Phase::Identical) {
                            report.aborted = true;
                            report.findings.clear();
                            report.total_time =
                                std::chrono::duration_cast<std::chrono::milliseconds>(
                                    std::chrono::steady_clock::now() - t0);
                            return report;
                        }
                        continue;
                    }
                    if (v.kind == Verdict::Kind::GenericallyFalse) continue;
                }
                f.involves_target = involves(cand);
                apply(cand);
                report.findings.push_back(f);
                repeat = true;
                break;
            }
        }
    }

    report.pool = findings_for(pool, target);
    report.total_time = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - t0);
    return report;
}

}  // namespace gd

#endif
