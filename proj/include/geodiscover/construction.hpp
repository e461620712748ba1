#ifndef GEODISCOVER_CONSTRUCTION_HPP
#define GEODISCOVER_CONSTRUCTION_HPP

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "geodiscover/rational.hpp"

namespace gd {

inline const std::set<int>& supported_polygons() {
    static const std::set<int> s{3, 4, 5, 6, 8, 10, 12, 20};
    return s;
}

// Unnamed line reference used inside point definitions.
struct LineRef {
    enum class Kind { Through, PerpBisector, PerpAt, ParallelAt };
    Kind kind = Kind::Through;
    // Through/PerpBisector use pts[0], pts[1]; PerpAt/ParallelAt use all three:
    // the line through pts[0] perpendicular/parallel to pts[1]pts[2].
    std::array<std::string, 3> pts;

    std::vector<std::string> referenced() const {
        if (kind == Kind::Through || kind == Kind::PerpBisector) return {pts[0], pts[1]};
        return {pts[0], pts[1], pts[2]};
    }
    friend bool operator==(const LineRef&, const LineRef&) = default;
};

struct CircleRef {
    enum class Kind { CenterThrough, Circumcircle };
    Kind kind = Kind::CenterThrough;
    // CenterThrough uses pts[0] (center), pts[1]; Circumcircle uses all three.
    std::array<std::string, 3> pts;

    std::vector<std::string> referenced() const {
        if (kind == Kind::CenterThrough) return {pts[0], pts[1]};
        return {pts[0], pts[1], pts[2]};
    }
    friend bool operator==(const CircleRef&, const CircleRef&) = default;
};

struct FreeDef {
    Rat x, y;  // numeric hint only; no symbolic constraint
    friend bool operator==(const FreeDef& a, const FreeDef& b) {
        return a.x == b.x && a.y == b.y;
    }
};
struct MidpointDef {
    std::string a, b;
    friend bool operator==(const MidpointDef&, const MidpointDef&) = default;
};
struct IntersectLinesDef {
    LineRef l1, l2;
    friend bool operator==(const IntersectLinesDef&, const IntersectLinesDef&) = default;
};
struct IntersectLineCircleDef {
    LineRef line;
    CircleRef circle;
    Rat near_x, near_y;  // branch hint
    friend bool operator==(const IntersectLineCircleDef& a, const IntersectLineCircleDef& b) {
        return a.line == b.line && a.circle == b.circle && a.near_x == b.near_x &&
               a.near_y == b.near_y;
    }
};
struct FootDef {
    std::string p, a, b;  // foot of the perpendicular from p onto line ab
    friend bool operator==(const FootDef&, const FootDef&) = default;
};
struct RegularDef {
    int n = 3;
    std::string a, b;  // two adjacent vertices; the step names the other n-2
    friend bool operator==(const RegularDef&, const RegularDef&) = default;
};

using StepDef = std::variant<FreeDef, MidpointDef, IntersectLinesDef, IntersectLineCircleDef,
                             FootDef, RegularDef>;

struct Step {
    std::vector<std::string> names;  // one name, except RegularDef (n-2 names)
    StepDef def;

    std::vector<std::string> referenced() const {
        return std::visit(
            [](const auto& d) -> std::vector<std::string> {
                using T = std::decay_t<decltype(d)>;
                if constexpr (std::is_same_v<T, FreeDef>) return {};
                if constexpr (std::is_same_v<T, MidpointDef>) return {d.a, d.b};
                if constexpr (std::is_same_v<T, IntersectLinesDef>) {
                    auto r = d.l1.referenced();
                    auto r2 = d.l2.referenced();
                    r.insert(r.end(), r2.begin(), r2.end());
                    return r;
                }
                if constexpr (std::is_same_v<T, IntersectLineCircleDef>) {
                    auto r = d.line.referenced();
                    auto r2 = d.circle.referenced();
                    r.insert(r.end(), r2.begin(), r2.end());
                    return r;
                }
                if constexpr (std::is_same_v<T, FootDef>) return {d.p, d.a, d.b};
                if constexpr (std::is_same_v<T, RegularDef>) return {d.a, d.b};
            },
            def);
    }
    bool is_free() const { return std::holds_alternative<FreeDef>(def); }
    friend bool operator==(const Step&, const Step&) = default;
};

struct StepError {
    enum class Kind { DuplicateName, UnknownReference, UnsupportedPolygon };
    Kind kind;
    std::string name;  // offending identifier
};

struct Violation {
    std::size_t step_index;  // steps.size() for construction-level violations
    std::string message;
};

// Degeneracy witness templates, translated to polynomials by the prover.
struct NotParallel {
    LineRef l1, l2;
};
struct DistinctPoints {
    std::string a, b;
};
struct NonCollinear {
    std::string a, b, c;
};
using Witness = std::variant<NotParallel, DistinctPoints, NonCollinear>;

struct Construction {
    std::vector<Step> steps;
    std::vector<std::string> targets;
    std::map<std::string, std::string> options;  // `option key = value` lines

    bool defines(const std::string& name) const {
        for (const auto& s : steps)
            for (const auto& n : s.names)
                if (n == name) return true;
        return false;
    }
    std::vector<std::string> point_names() const {
        std::vector<std::string> r;
        for (const auto& s : steps)
            for (const auto& n : s.names) r.push_back(n);
        return r;
    }
    // Index of the step defining a point, by definition order.
    std::optional<std::size_t> step_of(const std::string& name) const {
        for (std::size_t i = 0; i < steps.size(); ++i)
            for (const auto& n : steps[i].names)
                if (n == name) return i;
        return std::nullopt;
    }
    friend bool operator==(const Construction&, const Construction&) = default;
};

inline std::optional<StepError> add_step(Construction& c, const Step& s) {
    for (const auto& n : s.names)
        if (c.defines(n)) return StepError{StepError::Kind::DuplicateName, n};
    {
        std::set<std::string> dup;
        for (const auto& n : s.names)
            if (!dup.insert(n).second) return StepError{StepError::Kind::DuplicateName, n};
    }
    for (const auto& r : s.referenced())
        if (!c.defines(r)) return StepError{StepError::Kind::UnknownReference, r};
    if (const auto* reg = std::get_if<RegularDef>(&s.def)) {
        if (!supported_polygons().count(reg->n))
            return StepError{StepError::Kind::UnsupportedPolygon, std::to_string(reg->n)};
        if ((int)s.names.size() != reg->n - 2)
            return StepError{StepError::Kind::UnsupportedPolygon, std::to_string(reg->n)};
    }
    c.steps.push_back(s);
    return std::nullopt;
}

inline std::vector<Violation> validate(const Construction& c) {
    std::vector<Violation> out;
    std::set<std::string> defined;
    bool has_free = false;
    for (std::size_t i = 0; i < c.steps.size(); ++i) {
        const Step& s = c.steps[i];
        for (const auto& n : s.names) {
            if (!defined.insert(n).second) out.push_back({i, "duplicate name " + n});
        }
        for (const auto& r : s.referenced())
            if (!defined.count(r)) out.push_back({i, "unknown reference " + r});
        if (const auto* reg = std::get_if<RegularDef>(&s.def)) {
            if (!supported_polygons().count(reg->n))
                out.push_back({i, "unsupported polygon n=" + std::to_string(reg->n)});
            else if ((int)s.names.size() != reg->n - 2)
                out.push_back({i, "regular(" + std::to_string(reg->n) + ") needs " +
                                      std::to_string(reg->n - 2) + " names"});
        }
        if (const auto* m = std::get_if<MidpointDef>(&s.def)) {
            if (m->a == m->b) out.push_back({i, "midpoint endpoints coincide"});
        }
        if (s.is_free()) has_free = true;
    }
    if (!has_free) out.push_back({c.steps.size(), "no free point"});
    for (const auto& t : c.targets)
        if (!defined.count(t)) out.push_back({c.steps.size(), "unknown target " + t});
    return out;
}

// Predicates whose failure makes the step degenerate.
inline std::vector<Witness> nondegeneracy_witnesses(const Step& s) {
    std::vector<Witness> out;
    if (const auto* il = std::get_if<IntersectLinesDef>(&s.def)) {
        out.push_back(NotParallel{il->l1, il->l2});
    } else if (const auto* f = std::get_if<FootDef>(&s.def)) {
        out.push_back(DistinctPoints{f->a, f->b});
    } else if (const auto* r = std::get_if<RegularDef>(&s.def)) {
        out.push_back(DistinctPoints{r->a, r->b});
    } else if (const auto* lc = std::get_if<IntersectLineCircleDef>(&s.def)) {
        if (lc->circle.kind == CircleRef::Kind::Circumcircle)
            out.push_back(NonCollinear{lc->circle.pts[0], lc->circle.pts[1], lc->circle.pts[2]});
    }
    return out;
}

}  // namespace gd

#endif
