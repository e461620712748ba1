#ifndef GEODISCOVER_POOL_HPP
#define GEODISCOVER_POOL_HPP

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "geodiscover/construction.hpp"
#include "geodiscover/predicate.hpp"

namespace gd {

using Segment = std::pair<int, int>;  // point roots, first < second

// The five equivalence-class families over the construction's points.
// Merge cascades keep the sharing invariants: no two line classes share two
// point classes, no two circle classes share three.
class Pool {
  public:
    explicit Pool(const Construction& c) {
        for (const auto& name : c.point_names()) {
            index_[name] = (int)names_.size();
            names_.push_back(name);
        }
        parent_.resize(names_.size());
        for (std::size_t i = 0; i < parent_.size(); ++i) parent_[i] = (int)i;
    }

    int index_of(const std::string& name) const { return index_.at(name); }
    const std::string& name_of(int idx) const { return names_[idx]; }

    int find(int i) const {
        while (parent_[i] != i) i = parent_[i];
        return i;
    }
    int find(const std::string& name) const { return find(index_of(name)); }
    std::string representative(const std::string& name) const { return names_[find(name)]; }

    // Representatives in definition order.
    std::vector<int> roots() const {
        std::vector<int> r;
        for (int i = 0; i < (int)parent_.size(); ++i)
            if (find(i) == i) r.push_back(i);
        return r;
    }
    std::vector<int> members(int root) const {
        std::vector<int> m;
        for (int i = 0; i < (int)parent_.size(); ++i)
            if (find(i) == root) m.push_back(i);
        return m;
    }

    void merge_points(const std::string& p, const std::string& q) {
        int a = find(p), b = find(q);
        if (a == b) return;
        if (a > b) std::swap(a, b);  // earliest-defined member is the root
        parent_[b] = a;
        normalize();
    }

    void add_collinear(int p, int q, int r) {
        p = find(p), q = find(q), r = find(r);
        if (p == q || q == r || p == r)
            throw std::invalid_argument("add_collinear: repeated point class");
        lines_[next_line_id_++] = {p, q, r};
        normalize();
    }

    void add_concyclic(int p, int q, int r, int s) {
        p = find(p), q = find(q), r = find(r), s = find(s);
        std::set<int> cls{p, q, r, s};
        if (cls.size() != 4) throw std::invalid_argument("add_concyclic: repeated point class");
        circles_[next_circle_id_++] = cls;
        normalize();
    }

    // Ensures a line class containing exactly {p,q} exists (unless a larger
    // class already covers both); returns its id.
    int ensure_line(int p, int q) {
        p = find(p), q = find(q);
        for (const auto& [id, pts] : lines_)
            if (pts.count(p) && pts.count(q)) return id;
        lines_[next_line_id_] = {p, q};
        return next_line_id_++;
    }
    std::optional<int> line_through(int p, int q) const {
        p = find(p), q = find(q);
        for (const auto& [id, pts] : lines_)
            if (pts.count(p) && pts.count(q)) return id;
        return std::nullopt;
    }

    void add_parallel(int line_a, int line_b) {
        if (line_a == line_b) return;
        int da = direction_of(line_a), db = direction_of(line_b);
        if (da < 0 && db < 0) {
            directions_[next_direction_id_++] = {line_a, line_b};
        } else if (da >= 0 && db < 0) {
            directions_[da].insert(line_b);
        } else if (da < 0 && db >= 0) {
            directions_[db].insert(line_a);
        } else if (da != db) {
            directions_[da].insert(directions_[db].begin(), directions_[db].end());
            directions_.erase(db);
        }
    }

    void add_congruent(Segment u, Segment v) {
        u = norm_segment(u), v = norm_segment(v);
        int cu = congruence_of(u), cv = congruence_of(v);
        if (cu < 0 && cv < 0) {
            if (u == v) return;
            congruences_[next_congruence_id_++] = {u, v};
        } else if (cu >= 0 && cv < 0) {
            congruences_[cu].insert(v);
        } else if (cu < 0 && cv >= 0) {
            congruences_[cv].insert(u);
        } else if (cu != cv) {
            congruences_[cu].insert(congruences_[cv].begin(), congruences_[cv].end());
            congruences_.erase(cv);
        }
    }

    const std::map<int, std::set<int>>& lines() const { return lines_; }
    const std::map<int, std::set<int>>& circles() const { return circles_; }
    const std::map<int, std::set<int>>& directions() const { return directions_; }
    const std::map<int, std::set<Segment>>& congruences() const { return congruences_; }

    int direction_of(int line_id) const {
        for (const auto& [id, ls] : directions_)
            if (ls.count(line_id)) return id;
        return -1;
    }
    int congruence_of(const Segment& s) const {
        for (const auto& [id, segs] : congruences_)
            if (segs.count(s)) return id;
        return -1;
    }
    Segment norm_segment(Segment s) const {
        int a = find(s.first), b = find(s.second);
        if (a > b) std::swap(a, b);
        return {a, b};
    }

    bool same_line(int p, int q, int r) const {
        p = find(p), q = find(q), r = find(r);
        for (const auto& [id, pts] : lines_)
            if (pts.count(p) && pts.count(q) && pts.count(r)) return true;
        return false;
    }
    bool same_circle(const std::set<int>& quad) const {
        for (const auto& [id, pts] : circles_) {
            bool all = true;
            for (int x : quad)
                if (!pts.count(find(x))) all = false;
            if (all) return true;
        }
        return false;
    }
    // Three or more of the four point classes on one known line.
    bool mostly_collinear(const std::set<int>& quad) const {
        for (const auto& [id, pts] : lines_) {
            int hits = 0;
            for (int x : quad)
                if (pts.count(find(x))) ++hits;
            if (hits >= 3) return true;
        }
        return false;
    }

  private:
    void normalize() {
        bool changed = true;
        while (changed) {
            changed = false;
            // Re-root all memberships.
            for (auto& [id, pts] : lines_) {
                std::set<int> np;
                for (int p : pts) np.insert(find(p));
                if (np != pts) {
                    pts = std::move(np);
                    changed = true;
                }
            }
            for (auto& [id, pts] : circles_) {
                std::set<int> np;
                for (int p : pts) np.insert(find(p));
                if (np != pts) {
                    pts = std::move(np);
                    changed = true;
                }
            }
            // Line classes that collapsed below two points disappear.
            for (auto it = lines_.begin(); it != lines_.end();) {
                if (it->second.size() < 2) {
                    drop_line(it->first);
                    it = lines_.erase(it);
                    changed = true;
                } else {
                    ++it;
                }
            }
            for (auto it = circles_.begin(); it != circles_.end();) {
                if (it->second.size() < 3) {
                    it = circles_.erase(it);
                    changed = true;
                } else {
                    ++it;
                }
            }
            // Two lines sharing two point classes are the same line.
            if (merge_family(lines_, 2, /*is_lines=*/true)) changed = true;
            // Two circles sharing three point classes are the same circle.
            if (merge_family(circles_, 3, /*is_lines=*/false)) changed = true;
            // Segments re-keyed; degenerate ones dropped.
            for (auto& [id, segs] : congruences_) {
                std::set<Segment> ns;
                bool dirty = false;
                for (const auto& s : segs) {
                    Segment n = norm_segment(s);
                    if (n.first == n.second) {
                        dirty = true;
                        continue;
                    }
                    if (n != s) dirty = true;
                    ns.insert(n);
                }
                if (dirty) {
                    segs = std::move(ns);
                    changed = true;
                }
            }
            for (auto it = congruences_.begin(); it != congruences_.end();) {
                if (it->second.empty())
                    it = congruences_.erase(it);
                else
                    ++it;
            }
            // Congruence classes sharing a segment are unioned.
            for (auto it = congruences_.begin(); it != congruences_.end() && !changed; ++it) {
                for (auto jt = std::next(it); jt != congruences_.end(); ++jt) {
                    bool share = false;
                    for (const auto& s : jt->second)
                        if (it->second.count(s)) share = true;
                    if (share) {
                        it->second.insert(jt->second.begin(), jt->second.end());
                        congruences_.erase(jt);
                        changed = true;
                        break;
                    }
                }
            }
        }
    }

    template <class Family>
    bool merge_family(Family& fam, std::size_t threshold, bool is_lines) {
        for (auto it = fam.begin(); it != fam.end(); ++it) {
            for (auto jt = std::next(it); jt != fam.end(); ++jt) {
                std::size_t shared = 0;
                for (int p : jt->second)
                    if (it->second.count(p)) ++shared;
                if (shared >= threshold) {
                    it->second.insert(jt->second.begin(), jt->second.end());
                    int dead = jt->first;
                    fam.erase(jt);
                    if (is_lines) replace_line(dead, it->first);
                    return true;
                }
            }
        }
        return false;
    }

    void replace_line(int dead, int survivor) {
        int dd = direction_of(dead);
        if (dd >= 0) {
            directions_[dd].erase(dead);
            directions_[dd].insert(survivor);
            int ds = -1;
            for (const auto& [id, ls] : directions_)
                if (id != dd && ls.count(survivor)) ds = id;
            if (ds >= 0) {
                directions_[dd].insert(directions_[ds].begin(), directions_[ds].end());
                directions_.erase(ds);
            }
            if (directions_[dd].size() < 2) directions_.erase(dd);
        }
    }
    void drop_line(int id) {
        int d = direction_of(id);
        if (d >= 0) {
            directions_[d].erase(id);
            if (directions_[d].size() < 2) directions_.erase(d);
        }
    }

    std::vector<std::string> names_;
    std::map<std::string, int> index_;
    mutable std::vector<int> parent_;

    std::map<int, std::set<int>> lines_;       // line id -> point roots
    std::map<int, std::set<int>> circles_;     // circle id -> point roots
    std::map<int, std::set<int>> directions_;  // direction id -> line ids
    std::map<int, std::set<Segment>> congruences_;
    int next_line_id_ = 0;
    int next_circle_id_ = 0;
    int next_direction_id_ = 0;
    int next_congruence_id_ = 0;
};

// Candidate enumeration in the scan order: identities, collinearities,
// concyclicities, parallelisms, congruences; lexicographic by definition
// order within each phase. Statements already entailed by the pool's
// classes are skipped.
enum class Phase { Identical, Collinear, Concyclic, Parallel, Congruent };

inline std::vector<Predicate> candidates_for_phase(const Pool& pool, Phase phase) {
    std::vector<Predicate> out;
    std::vector<int> reps = pool.roots();
    auto name = [&](int i) { return pool.name_of(i); };
    switch (phase) {
        case Phase::Identical:
            for (std::size_t i = 0; i < reps.size(); ++i)
                for (std::size_t j = i + 1; j < reps.size(); ++j)
                    out.push_back(Predicate::identical(name(reps[i]), name(reps[j])));
            break;
        case Phase::Collinear:
            for (std::size_t i = 0; i < reps.size(); ++i)
                for (std::size_t j = i + 1; j < reps.size(); ++j)
                    for (std::size_t k = j + 1; k < reps.size(); ++k) {
                        if (pool.same_line(reps[i], reps[j], reps[k])) continue;
                        out.push_back(
                            Predicate::collinear(name(reps[i]), name(reps[j]), name(reps[k])));
                    }
            break;
        case Phase::Concyclic:
            for (std::size_t i = 0; i < reps.size(); ++i)
                for (std::size_t j = i + 1; j < reps.size(); ++j)
                    for (std::size_t k = j + 1; k < reps.size(); ++k)
                        for (std::size_t l = k + 1; l < reps.size(); ++l) {
                            std::set<int> quad{reps[i], reps[j], reps[k], reps[l]};
                            if (pool.mostly_collinear(quad)) continue;
                            if (pool.same_circle(quad)) continue;
                            out.push_back(Predicate::concyclic(name(reps[i]), name(reps[j]),
                                                               name(reps[k]), name(reps[l])));
                        }
            break;
        case Phase::Parallel: {
            // Pairs of distinct line classes not already co-directional,
            // named by their two earliest points.
            std::vector<std::pair<int, std::set<int>>> lines(pool.lines().begin(),
                                                             pool.lines().end());
            for (std::size_t i = 0; i < lines.size(); ++i)
                for (std::size_t j = i + 1; j < lines.size(); ++j) {
                    int di = pool.direction_of(lines[i].first);
                    if (di >= 0 && di == pool.direction_of(lines[j].first)) continue;
                    auto a = lines[i].second.begin();
                    auto b = lines[j].second.begin();
                    int p1 = *a, p2 = *std::next(a);
                    int q1 = *b, q2 = *std::next(b);
                    out.push_back(Predicate::parallel(name(p1), name(p2), name(q1), name(q2)));
                }
            break;
        }
        case Phase::Congruent: {
            std::vector<Segment> segs;
            for (std::size_t i = 0; i < reps.size(); ++i)
                for (std::size_t j = i + 1; j < reps.size(); ++j)
                    segs.push_back({reps[i], reps[j]});
            for (std::size_t i = 0; i < segs.size(); ++i)
                for (std::size_t j = i + 1; j < segs.size(); ++j) {
                    int ci = pool.congruence_of(segs[i]);
                    if (ci >= 0 && ci == pool.congruence_of(segs[j])) continue;
                    out.push_back(Predicate::congruent(name(segs[i].first), name(segs[i].second),
                                                       name(segs[j].first),
                                                       name(segs[j].second)));
                }
            break;
        }
    }
    return out;
}

inline std::vector<Predicate> candidate_statements(const Pool& pool) {
    std::vector<Predicate> out;
    for (Phase ph : {Phase::Identical, Phase::Collinear, Phase::Concyclic, Phase::Parallel,
                     Phase::Congruent}) {
        auto v = candidates_for_phase(pool, ph);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

// Non-degenerate classes involving the target: point classes with >= 2
// members, lines with >= 3 points, circles with >= 4, directions with >= 2
// lines (one through the target), congruence classes with >= 2 segments (one
// on the target).
using NamedSegment = std::pair<std::string, std::string>;

struct Findings {
    std::vector<std::string> identical_group;             // members of the target's class
    std::vector<std::vector<std::string>> lines;          // point names per line class
    std::vector<std::vector<std::string>> circles;        // point names per circle class
    std::vector<std::vector<NamedSegment>> directions;    // line name pairs per direction
    std::vector<std::vector<NamedSegment>> congruences;   // segments per class
};

inline Findings findings_for(const Pool& pool, const std::string& target) {
    Findings f;
    int t = pool.find(target);
    auto mem = pool.members(t);
    if (mem.size() >= 2)
        for (int m : mem) f.identical_group.push_back(pool.name_of(m));

    for (const auto& [id, pts] : pool.lines()) {
        if (pts.size() >= 3 && pts.count(t)) {
            std::vector<std::string> v;
            for (int p : pts) v.push_back(pool.name_of(p));
            f.lines.push_back(v);
        }
    }
    for (const auto& [id, pts] : pool.circles()) {
        if (pts.size() >= 4 && pts.count(t)) {
            std::vector<std::string> v;
            for (int p : pts) v.push_back(pool.name_of(p));
            f.circles.push_back(v);
        }
    }
    for (const auto& [id, ls] : pool.directions()) {
        if (ls.size() < 2) continue;
        bool through = false;
        std::vector<NamedSegment> v;
        for (int lid : ls) {
            const auto& pts = pool.lines().at(lid);
            if (pts.count(t)) through = true;
            auto it = pts.begin();
            v.push_back({pool.name_of(*it), pool.name_of(*std::next(it))});
        }
        if (through) f.directions.push_back(v);
    }
    for (const auto& [id, segs] : pool.congruences()) {
        if (segs.size() < 2) continue;
        bool on_target = false;
        std::vector<NamedSegment> v;
        for (const auto& s : segs) {
            if (s.first == t || s.second == t) on_target = true;
            v.push_back({pool.name_of(s.first), pool.name_of(s.second)});
        }
        if (on_target) f.congruences.push_back(v);
    }
    return f;
}

}  // namespace gd

#endif
