#ifndef GEODISCOVER_NUMERIC_HPP
#define GEODISCOVER_NUMERIC_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "geodiscover/construction.hpp"
#include "geodiscover/predicate.hpp"

namespace gd {

struct Vec2 {
    double x = 0, y = 0;
    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
};
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

struct Instance {
    std::map<std::string, Vec2> coordinates;
    std::uint64_t seed = 0;

    Vec2 at(const std::string& name) const { return coordinates.at(name); }
};

struct NumericConfig {
    double epsilon_rel = 1e-8;
    int instance_count = 3;
    double coordinate_min = -10.0;
    double coordinate_max = 10.0;
    int max_retries = 10;
};

class DegenerateInstance : public std::runtime_error {
  public:
    explicit DegenerateInstance(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// Deterministic uniform draw independent of the standard library's
// distribution implementation.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    double u = double(rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

struct NumLine {
    Vec2 p, d;  // point + direction
};

inline NumLine eval_line(const LineRef& l, const Instance& inst) {
    switch (l.kind) {
        case LineRef::Kind::Through: {
            Vec2 a = inst.at(l.pts[0]), b = inst.at(l.pts[1]);
            return {a, b - a};
        }
        case LineRef::Kind::PerpBisector: {
            Vec2 a = inst.at(l.pts[0]), b = inst.at(l.pts[1]);
            return {0.5 * (a + b), perp(b - a)};
        }
        case LineRef::Kind::PerpAt: {
            Vec2 p = inst.at(l.pts[0]);
            Vec2 a = inst.at(l.pts[1]), b = inst.at(l.pts[2]);
            return {p, perp(b - a)};
        }
        case LineRef::Kind::ParallelAt: {
            Vec2 p = inst.at(l.pts[0]);
            Vec2 a = inst.at(l.pts[1]), b = inst.at(l.pts[2]);
            return {p, b - a};
        }
    }
    return {};
}

struct NumCircle {
    Vec2 center;
    double r2 = 0;
    bool degenerate = false;
};

inline NumCircle eval_circle(const CircleRef& c, const Instance& inst) {
    if (c.kind == CircleRef::Kind::CenterThrough) {
        Vec2 o = inst.at(c.pts[0]), p = inst.at(c.pts[1]);
        return {o, (p - o).norm2(), false};
    }
    Vec2 a = inst.at(c.pts[0]), b = inst.at(c.pts[1]), cc = inst.at(c.pts[2]);
    Vec2 ab = b - a, ac = cc - a;
    double d = 2.0 * cross(ab, ac);
    double scale = ab.norm() * ac.norm();
    if (std::abs(d) <= 1e-12 * std::max(scale, 1.0)) return {{}, 0, true};
    double ab2 = ab.norm2(), ac2 = ac.norm2();
    Vec2 o = a + (1.0 / d) * Vec2{ac.y * ab2 - ab.y * ac2, ab.x * ac2 - ac.x * ab2};
    return {o, (o - a).norm2(), false};
}

}  // namespace detail

// Deterministic numeric realization of the construction. Seed 0 (the default
// base seed) uses the free-point hints; other seeds draw uniform coordinates.
inline Instance instantiate(const Construction& c, std::uint64_t seed,
                            const NumericConfig& cfg = {}) {
    for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
        std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + attempt + 1);
        Instance inst;
        inst.seed = seed;
        bool ok = true;
        for (const auto& step : c.steps) {
            if (const auto* f = std::get_if<FreeDef>(&step.def)) {
                Vec2 v;
                if (seed == 0 && attempt == 0) {
                    v = {f->x.get_d(), f->y.get_d()};
                } else {
                    v.x = detail::uniform(rng, cfg.coordinate_min, cfg.coordinate_max);
                    v.y = detail::uniform(rng, cfg.coordinate_min, cfg.coordinate_max);
                }
                inst.coordinates[step.names[0]] = v;
            } else if (const auto* m = std::get_if<MidpointDef>(&step.def)) {
                inst.coordinates[step.names[0]] = 0.5 * (inst.at(m->a) + inst.at(m->b));
            } else if (const auto* il = std::get_if<IntersectLinesDef>(&step.def)) {
                auto l1 = detail::eval_line(il->l1, inst);
                auto l2 = detail::eval_line(il->l2, inst);
                double det = cross(l1.d, l2.d);
                double scale = l1.d.norm() * l2.d.norm();
                if (std::abs(det) <= 1e-12 * std::max(scale, 1.0)) {
                    ok = false;
                    break;
                }
                double t = cross(l2.p - l1.p, l2.d) / det;
                inst.coordinates[step.names[0]] = l1.p + t * l1.d;
            } else if (const auto* lc = std::get_if<IntersectLineCircleDef>(&step.def)) {
                auto l = detail::eval_line(lc->line, inst);
                auto circ = detail::eval_circle(lc->circle, inst);
                if (circ.degenerate) {
                    ok = false;
                    break;
                }
                Vec2 w = l.p - circ.center;
                double a = l.d.norm2();
                double b = 2.0 * dot(w, l.d);
                double cc = w.norm2() - circ.r2;
                double disc = b * b - 4 * a * cc;
                if (a <= 0 || disc < 0) {
                    ok = false;
                    break;
                }
                double sq = std::sqrt(disc);
                Vec2 hint{lc->near_x.get_d(), lc->near_y.get_d()};
                Vec2 s1 = l.p + ((-b + sq) / (2 * a)) * l.d;
                Vec2 s2 = l.p + ((-b - sq) / (2 * a)) * l.d;
                inst.coordinates[step.names[0]] =
                    (s1 - hint).norm2() <= (s2 - hint).norm2() ? s1 : s2;
            } else if (const auto* ft = std::get_if<FootDef>(&step.def)) {
                Vec2 a = inst.at(ft->a), b = inst.at(ft->b), p = inst.at(ft->p);
                Vec2 ab = b - a;
                if (ab.norm2() <= 1e-24) {
                    ok = false;
                    break;
                }
                inst.coordinates[step.names[0]] = a + (dot(p - a, ab) / ab.norm2()) * ab;
            } else if (const auto* reg = std::get_if<RegularDef>(&step.def)) {
                Vec2 a = inst.at(reg->a), b = inst.at(reg->b);
                Vec2 ab = b - a;
                if (ab.norm2() <= 1e-24) {
                    ok = false;
                    break;
                }
                double n = reg->n;
                double apothem = 0.5 / std::tan(M_PI / n);
                Vec2 center = 0.5 * (a + b) + apothem * perp(ab);
                double ca = std::cos(2 * M_PI / n), sa = std::sin(2 * M_PI / n);
                Vec2 v = b - center;
                for (const auto& name : step.names) {
                    v = {ca * v.x - sa * v.y, sa * v.x + ca * v.y};
                    inst.coordinates[name] = center + v;
                }
            }
        }
        if (ok) return inst;
    }
    throw DegenerateInstance("construction degenerate after retries (seed " +
                             std::to_string(seed) + ")");
}

// Residual and scale of one predicate on one instance.
struct Residual {
    double value = 0;
    double scale = 0;
    bool pass(double eps) const { return value <= eps * std::max(scale, 1.0); }
};

inline Residual evaluate(const Predicate& p, const Instance& inst) {
    auto P = [&](int i) { return inst.at(p.pts[i]); };
    switch (p.kind) {
        case Predicate::Kind::Identical: {
            Vec2 a = P(0), b = P(1);
            double r = std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
            double s = std::max({std::abs(a.x), std::abs(a.y), std::abs(b.x), std::abs(b.y)});
            return {r, s};
        }
        case Predicate::Kind::Collinear: {
            Vec2 u = P(1) - P(0), v = P(2) - P(0);
            double s = std::max(std::abs(u.x * v.y), std::abs(u.y * v.x));
            return {std::abs(cross(u, v)), s};
        }
        case Predicate::Kind::Concyclic: {
            double m[4][4];
            for (int i = 0; i < 4; ++i) {
                Vec2 v = P(i);
                m[i][0] = v.x;
                m[i][1] = v.y;
                m[i][2] = v.norm2();
                m[i][3] = 1.0;
            }
            // 4x4 determinant by permutation expansion; scale is the largest
            // absolute expansion term.
            double det = 0, scale = 0;
            std::array<int, 4> a{0, 1, 2, 3};
            std::vector<std::array<int, 4>> perms;
            do {
                perms.push_back(a);
            } while (std::next_permutation(a.begin(), a.end()));
            for (const auto& pr : perms) {
                int sign = 1;
                for (int i = 0; i < 4; ++i)
                    for (int j = i + 1; j < 4; ++j)
                        if (pr[i] > pr[j]) sign = -sign;
                double t = m[0][pr[0]] * m[1][pr[1]] * m[2][pr[2]] * m[3][pr[3]];
                det += sign * t;
                scale = std::max(scale, std::abs(t));
            }
            return {std::abs(det), scale};
        }
        case Predicate::Kind::Parallel: {
            Vec2 u = P(1) - P(0), v = P(3) - P(2);
            double s = std::max(std::abs(u.x * v.y), std::abs(u.y * v.x));
            return {std::abs(cross(u, v)), s};
        }
        case Predicate::Kind::Congruent: {
            double l1 = (P(1) - P(0)).norm2(), l2 = (P(3) - P(2)).norm2();
            return {std::abs(l1 - l2), std::max(l1, l2)};
        }
    }
    return {};
}

inline bool holds_on(const Predicate& p, const std::vector<Instance>& instances, double eps) {
    for (const auto& inst : instances)
        if (!evaluate(p, inst).pass(eps)) return false;
    return !instances.empty();
}

// The numeric first filter: true iff the predicate passes the scale-aware
// tolerance test on instance_count instances with consecutive seeds.
inline bool holds_numerically(const Predicate& p, const Construction& c, const NumericConfig& cfg,
                              std::uint64_t base_seed = 0) {
    std::vector<Instance> instances;
    for (int k = 0; k < cfg.instance_count; ++k)
        instances.push_back(instantiate(c, base_seed + k, cfg));
    return holds_on(p, instances, cfg.epsilon_rel);
}

}  // namespace gd

#endif
