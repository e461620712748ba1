#ifndef GEODISCOVER_PREDICATE_HPP
#define GEODISCOVER_PREDICATE_HPP

#include <string>
#include <vector>

namespace gd {

// A statement over named points. Arity: Identical 2, Collinear 3,
// Concyclic 4, Parallel 4 (P,Q ; R,S), Congruent 4 (P,Q ; R,S).
struct Predicate {
    enum class Kind { Identical, Collinear, Concyclic, Parallel, Congruent };
    Kind kind;
    std::vector<std::string> pts;

    static Predicate identical(std::string p, std::string q) {
        return {Kind::Identical, {std::move(p), std::move(q)}};
    }
    static Predicate collinear(std::string p, std::string q, std::string r) {
        return {Kind::Collinear, {std::move(p), std::move(q), std::move(r)}};
    }
    static Predicate concyclic(std::string p, std::string q, std::string r, std::string s) {
        return {Kind::Concyclic, {std::move(p), std::move(q), std::move(r), std::move(s)}};
    }
    static Predicate parallel(std::string p, std::string q, std::string r, std::string s) {
        return {Kind::Parallel, {std::move(p), std::move(q), std::move(r), std::move(s)}};
    }
    static Predicate congruent(std::string p, std::string q, std::string r, std::string s) {
        return {Kind::Congruent, {std::move(p), std::move(q), std::move(r), std::move(s)}};
    }

    std::string str() const {
        const char* names[] = {"identical", "collinear", "concyclic", "parallel", "congruent"};
        std::string s = names[(int)kind];
        s += "(";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) s += (pts.size() == 4 && kind != Kind::Concyclic && i == 2) ? "; " : ", ";
            s += pts[i];
        }
        return s + ")";
    }

    friend bool operator==(const Predicate&, const Predicate&) = default;
    friend bool operator<(const Predicate& a, const Predicate& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.pts < b.pts;
    }
};

}  // namespace gd

#endif
