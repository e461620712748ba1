#ifndef GEODISCOVER_REPORT_HPP
#define GEODISCOVER_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "geodiscover/engine.hpp"
#include "geodiscover/numeric.hpp"

namespace gd {

namespace detail {

// One rendered finding line, e.g. "Parallel: DE, AB", plus its triviality.
struct ReportLine {
    std::string text;
    bool trivial = false;
};

inline std::string seg_name(const NamedSegment& s) { return s.first + s.second; }

// Orders class members so those containing the target come first; ties break
// lexicographically. Matches the presentation of the discovery examples.
inline std::vector<NamedSegment> target_first(std::vector<NamedSegment> v,
                                              const std::set<std::string>& target_names) {
    std::stable_sort(v.begin(), v.end(), [&](const NamedSegment& a, const NamedSegment& b) {
        bool ta = target_names.count(a.first) || target_names.count(a.second);
        bool tb = target_names.count(b.first) || target_names.count(b.second);
        if (ta != tb) return ta;
        return seg_name(a) < seg_name(b);
    });
    return v;
}

inline std::vector<ReportLine> report_lines(const DiscoveryReport& r) {
    std::vector<ReportLine> out;
    std::set<std::string> target_names{r.target};
    for (const auto& n : r.pool.identical_group) target_names.insert(n);

    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
        return s;
    };
    // a class is a theorem if some accepted non-trivial statement of the
    // matching kind lies entirely inside it; otherwise it only restates
    // construction steps and is trivial
    auto class_trivial = [&](Predicate::Kind kind, const std::vector<std::string>& members) {
        std::set<std::string> in(members.begin(), members.end());
        for (const auto& f : r.findings) {
            if (f.trivial || f.statement.kind != kind) continue;
            bool all = true;
            for (const auto& p : f.statement.pts)
                if (!in.count(p)) all = false;
            if (all) return false;
        }
        return true;
    };

    if (!r.pool.identical_group.empty())
        out.push_back({"Identical: " + join(r.pool.identical_group),
                       class_trivial(Predicate::Kind::Identical, r.pool.identical_group)});
    for (const auto& line : r.pool.lines)
        out.push_back({"Collinear: " + join(line), class_trivial(Predicate::Kind::Collinear, line)});
    for (const auto& circle : r.pool.circles)
        out.push_back(
            {"Concyclic: " + join(circle), class_trivial(Predicate::Kind::Concyclic, circle)});
    for (const auto& dir : r.pool.directions) {
        std::vector<std::string> names;
        for (const auto& s : target_first(dir, target_names)) names.push_back(seg_name(s));
        out.push_back({"Parallel: " + join(names), false});
    }
    for (const auto& cls : r.pool.congruences) {
        std::vector<std::string> names;
        for (const auto& s : target_first(cls, target_names)) names.push_back(seg_name(s));
        out.push_back({"Congruent: " + join(names), false});
    }
    return out;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out;
}

}  // namespace detail

// Human-readable report: one finding per line in stable order (identities,
// collinearities, concyclicities, directions, congruences). Trivial findings
// appear only on request, prefixed TRIVIAL.
inline std::string render_text(const DiscoveryReport& r, bool show_trivial = false) {
    std::ostringstream os;
    if (r.aborted) {
        os << "Discovery aborted: an identity conjecture could not be decided in time.\n";
        return os.str();
    }
    int shown = 0;
    for (const auto& line : detail::report_lines(r)) {
        if (line.trivial && !show_trivial) continue;
        os << (line.trivial ? "TRIVIAL " : "") << line.text << "\n";
        if (!line.trivial) ++shown;
    }
    if (shown == 0) os << "No non-trivial findings for " << r.target << ".\n";
    if (r.normalized)
        os << "Note: coordinates were normalized (first two free points pinned to (0,0) and "
              "(1,0)).\n";
    return os.str();
}

// Machine-readable report, schema version 1.
inline std::string render_json(const DiscoveryReport& r) {
    std::ostringstream os;
    auto arr = [&](const std::vector<std::string>& v) {
        os << "[";
        for (std::size_t i = 0; i < v.size(); ++i)
            os << (i ? "," : "") << "\"" << detail::json_escape(v[i]) << "\"";
        os << "]";
    };
    std::vector<std::string> theorems, trivial;
    for (const auto& line : detail::report_lines(r))
        (line.trivial ? trivial : theorems).push_back(line.text);

    os << "{\"format\":1,\"target\":\"" << detail::json_escape(r.target) << "\",";
    os << "\"aborted\":" << (r.aborted ? "true" : "false") << ",";
    os << "\"normalized\":" << (r.normalized ? "true" : "false") << ",";
    os << "\"theorems\":";
    arr(r.aborted ? std::vector<std::string>{} : theorems);
    os << ",\"trivial\":";
    arr(r.aborted ? std::vector<std::string>{} : trivial);
    os << ",\"pool_summary\":{";
    os << "\"identical\":";
    arr(r.pool.identical_group);
    auto classes = [&](const char* key, const std::vector<std::vector<std::string>>& cs) {
        os << ",\"" << key << "\":[";
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (i) os << ",";
            arr(cs[i]);
        }
        os << "]";
    };
    auto seg_classes = [&](const char* key, const std::vector<std::vector<NamedSegment>>& cs) {
        os << ",\"" << key << "\":[";
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (i) os << ",";
            std::vector<std::string> names;
            for (const auto& s : cs[i]) names.push_back(detail::seg_name(s));
            arr(names);
        }
        os << "]";
    };
    classes("lines", r.pool.lines);
    classes("circles", r.pool.circles);
    seg_classes("directions", r.pool.directions);
    seg_classes("congruences", r.pool.congruences);
    os << "},\"timings\":{\"total_ms\":" << r.total_time.count()
       << ",\"max_check_ms\":" << r.max_check_time.count() << "}}";
    return os.str();
}

namespace detail {

inline const std::vector<std::string>& palette() {
    static const std::vector<std::string> p = {
        "#e6194b", "#3cb44b", "#0082c8", "#f58231", "#911eb4", "#46999f",
        "#d4a017", "#f032e6", "#808000", "#aa6e28", "#000080", "#e56793",
    };
    return p;
}

}  // namespace detail

// SVG rendering of one numeric instance with findings highlighted: every
// direction class and every congruent-segment class gets its own stroke color
// from a fixed 12-color palette.
inline std::string render_svg(const Construction& c, const Instance& inst,
                              const DiscoveryReport& r) {
    double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
    for (const auto& [name, v] : inst.coordinates) {
        min_x = std::min(min_x, v.x);
        max_x = std::max(max_x, v.x);
        min_y = std::min(min_y, v.y);
        max_y = std::max(max_y, v.y);
    }
    if (min_x > max_x) min_x = max_x = min_y = max_y = 0;
    double w = std::max(max_x - min_x, 1e-6), h = std::max(max_y - min_y, 1e-6);
    double margin = 0.1 * std::max(w, h);
    double diag = std::hypot(w, h);
    double stroke = 0.006 * diag, thick = 0.011 * diag, dot = 0.012 * diag;
    double font = 0.045 * diag;

    // flip y so the figure appears in the usual mathematical orientation
    auto X = [&](const std::string& n) { return inst.at(n).x; };
    auto Y = [&](const std::string& n) { return min_y + max_y - inst.at(n).y; };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << (min_x - margin) << " "
       << (min_y - margin) << " " << (w + 2 * margin) << " " << (h + 2 * margin) << "\">\n";

    auto seg = [&](const std::string& a, const std::string& b, const std::string& color,
                   double sw, double extend) {
        double x1 = X(a), y1 = Y(a), x2 = X(b), y2 = Y(b);
        double dx = x2 - x1, dy = y2 - y1;
        os << "  <line x1=\"" << (x1 - extend * dx) << "\" y1=\"" << (y1 - extend * dy)
           << "\" x2=\"" << (x2 + extend * dx) << "\" y2=\"" << (y2 + extend * dy)
           << "\" stroke=\"" << color << "\" stroke-width=\"" << sw << "\"/>\n";
    };

    // base construction segments in black
    std::set<NamedSegment> base;
    auto add_base = [&](std::string a, std::string b) {
        if (b < a) std::swap(a, b);
        base.insert({a, b});
    };
    for (const auto& step : c.steps) {
        auto line_base = [&](const LineRef& l) {
            if (l.kind == LineRef::Kind::Through || l.kind == LineRef::Kind::PerpBisector)
                add_base(l.pts[0], l.pts[1]);
            else
                add_base(l.pts[1], l.pts[2]);
        };
        if (const auto* m = std::get_if<MidpointDef>(&step.def)) {
            add_base(m->a, m->b);
        } else if (const auto* il = std::get_if<IntersectLinesDef>(&step.def)) {
            line_base(il->l1);
            line_base(il->l2);
        } else if (const auto* lc = std::get_if<IntersectLineCircleDef>(&step.def)) {
            line_base(lc->line);
        } else if (const auto* ft = std::get_if<FootDef>(&step.def)) {
            add_base(ft->a, ft->b);
        } else if (const auto* reg = std::get_if<RegularDef>(&step.def)) {
            std::vector<std::string> ring{reg->a, reg->b};
            ring.insert(ring.end(), step.names.begin(), step.names.end());
            for (std::size_t i = 0; i < ring.size(); ++i)
                add_base(ring[i], ring[(i + 1) % ring.size()]);
        }
    }
    for (const auto& [a, b] : base) seg(a, b, "#000000", stroke, 0.0);

    // circle classes as outlines through their first three points
    for (const auto& circle : r.pool.circles) {
        if (circle.size() < 3) continue;
        Vec2 a = inst.at(circle[0]), b = inst.at(circle[1]), cc = inst.at(circle[2]);
        Vec2 ab = b - a, ac = cc - a;
        double d = 2.0 * cross(ab, ac);
        if (std::abs(d) < 1e-12) continue;
        double ab2 = ab.norm2(), ac2 = ac.norm2();
        Vec2 o = a + (1.0 / d) * Vec2{ac.y * ab2 - ab.y * ac2, ab.x * ac2 - ac.x * ab2};
        os << "  <circle cx=\"" << o.x << "\" cy=\"" << (min_y + max_y - o.y) << "\" r=\""
           << (o - a).norm() << "\" fill=\"none\" stroke=\"#666666\" stroke-width=\"" << stroke
           << "\"/>\n";
    }

    // colored classes: directions first, then congruences, one color each
    std::size_t color_index = 0;
    const auto& pal = detail::palette();
    for (const auto& dir : r.pool.directions) {
        const std::string& color = pal[color_index++ % pal.size()];
        for (const auto& s : dir) seg(s.first, s.second, color, stroke, 0.2);
    }
    for (const auto& cls : r.pool.congruences) {
        const std::string& color = pal[color_index++ % pal.size()];
        for (const auto& s : cls) seg(s.first, s.second, color, thick, 0.0);
    }

    // points with labels on top
    for (const auto& [name, v] : inst.coordinates) {
        os << "  <circle cx=\"" << v.x << "\" cy=\"" << (min_y + max_y - v.y) << "\" r=\"" << dot
           << "\" fill=\"#000000\"/>\n";
        os << "  <text x=\"" << (v.x + 1.2 * dot) << "\" y=\"" << (min_y + max_y - v.y - 1.2 * dot)
           << "\" font-size=\"" << font << "\" font-family=\"sans-serif\">" << name
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace gd

#endif
