#ifndef GEODISCOVER_PARSER_HPP
#define GEODISCOVER_PARSER_HPP

#include <cctype>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "geodiscover/construction.hpp"

namespace gd {

struct SourceError {
    int line = 1;    // 1-based
    int column = 1;  // 1-based
    std::string message;
    enum class Kind { Lex, Syntax, Semantic } kind = Kind::Syntax;
};

using ParseResult = std::variant<Construction, std::vector<SourceError>>;

namespace detail {

// Line-oriented tokenizer + recursive-descent parser for one statement.
class LineParser {
  public:
    LineParser(const std::string& text, int line_no) : text_(text), line_(line_no) {}

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size() || text_[pos_] == '#';
    }
    int column() const { return (int)pos_ + 1; }
    int line() const { return line_; }

    bool peek_word(const std::string& w) {
        skip_ws();
        std::size_t save = pos_;
        bool ok = accept_word(w);
        pos_ = save;
        return ok;
    }
    bool accept_word(const std::string& w) {
        skip_ws();
        if (text_.compare(pos_, w.size(), w) != 0) return false;
        std::size_t after = pos_ + w.size();
        if (after < text_.size() && (std::isalnum((unsigned char)text_[after]) || text_[after] == '_'))
            return false;
        pos_ = after;
        return true;
    }
    bool accept_char(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_'))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    std::string number_token() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        while (pos_ < text_.size() &&
               (std::isdigit((unsigned char)text_[pos_]) || text_[pos_] == '.'))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    SourceError error(const std::string& msg, SourceError::Kind k = SourceError::Kind::Syntax) {
        skip_ws();
        return SourceError{line_, column(), msg, k};
    }

  private:
    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }
    const std::string& text_;
    std::size_t pos_ = 0;
    int line_;
};

struct StmtParser {
    LineParser& lp;
    std::vector<SourceError>& errors;
    bool failed = false;

    void fail(const std::string& msg, SourceError::Kind k = SourceError::Kind::Syntax) {
        if (!failed) errors.push_back(lp.error(msg, k));
        failed = true;
    }
    std::string expect_ident(const std::string& what) {
        std::string id = lp.ident();
        if (id.empty()) fail("expected " + what);
        return id;
    }
    void expect_char(char c) {
        if (!lp.accept_char(c)) fail(std::string("expected '") + c + "'");
    }
    Rat expect_num() {
        std::string tok = lp.number_token();
        auto r = parse_decimal(tok);
        if (!r) {
            fail(tok.empty() ? "expected number" : "bad numeric literal '" + tok + "'",
                 SourceError::Kind::Lex);
            return Rat(0);
        }
        if (lp.accept_char('/')) {  // p/q fallback form emitted by unparse
            std::string dtok = lp.number_token();
            auto den = parse_decimal(dtok);
            if (!den || *den == 0) {
                fail("bad denominator", SourceError::Kind::Lex);
                return Rat(0);
            }
            return Rat(*r / *den);
        }
        return *r;
    }

    LineRef lref() {
        LineRef r;
        if (lp.accept_word("line"))
            r.kind = LineRef::Kind::Through;
        else if (lp.accept_word("perp_bisector"))
            r.kind = LineRef::Kind::PerpBisector;
        else if (lp.accept_word("perp_at"))
            r.kind = LineRef::Kind::PerpAt;
        else if (lp.accept_word("parallel_at"))
            r.kind = LineRef::Kind::ParallelAt;
        else {
            fail("expected line reference");
            return r;
        }
        int n = (r.kind == LineRef::Kind::Through || r.kind == LineRef::Kind::PerpBisector) ? 2 : 3;
        expect_char('(');
        for (int i = 0; i < n; ++i) {
            if (i) expect_char(',');
            r.pts[i] = expect_ident("point name");
        }
        expect_char(')');
        return r;
    }

    CircleRef cref() {
        CircleRef r;
        if (lp.accept_word("circle"))
            r.kind = CircleRef::Kind::CenterThrough;
        else if (lp.accept_word("circumcircle"))
            r.kind = CircleRef::Kind::Circumcircle;
        else {
            fail("expected circle reference");
            return r;
        }
        int n = r.kind == CircleRef::Kind::CenterThrough ? 2 : 3;
        expect_char('(');
        for (int i = 0; i < n; ++i) {
            if (i) expect_char(',');
            r.pts[i] = expect_ident("point name");
        }
        expect_char(')');
        return r;
    }

    StepDef pexpr() {
        if (lp.accept_word("free")) {
            FreeDef d;
            expect_char('(');
            d.x = expect_num();
            expect_char(',');
            d.y = expect_num();
            expect_char(')');
            return d;
        }
        if (lp.accept_word("midpoint")) {
            MidpointDef d;
            expect_char('(');
            d.a = expect_ident("point name");
            expect_char(',');
            d.b = expect_ident("point name");
            expect_char(')');
            return d;
        }
        if (lp.accept_word("foot")) {
            FootDef d;
            expect_char('(');
            d.p = expect_ident("point name");
            expect_char(',');
            d.a = expect_ident("point name");
            expect_char(',');
            d.b = expect_ident("point name");
            expect_char(')');
            return d;
        }
        if (lp.accept_word("intersect")) {
            expect_char('(');
            LineRef l1 = lref();
            expect_char(',');
            if (lp.peek_word("circle") || lp.peek_word("circumcircle")) {
                IntersectLineCircleDef d;
                d.line = l1;
                d.circle = cref();
                expect_char(',');
                if (!lp.accept_word("near")) fail("expected near(x, y) branch hint");
                expect_char('(');
                d.near_x = expect_num();
                expect_char(',');
                d.near_y = expect_num();
                expect_char(')');
                expect_char(')');
                return d;
            }
            IntersectLinesDef d;
            d.l1 = l1;
            d.l2 = lref();
            expect_char(')');
            return d;
        }
        fail("expected point expression");
        return FreeDef{};
    }
};

}  // namespace detail

inline ParseResult parse(const std::string& source) {
    Construction c;
    std::vector<SourceError> errors;
    std::istringstream in(source);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        detail::LineParser lp(raw, line_no);
        if (lp.at_end()) continue;
        detail::StmtParser sp{lp, errors};

        if (lp.accept_word("point")) {
            std::string name = sp.expect_ident("point name");
            sp.expect_char('=');
            StepDef def = sp.pexpr();
            if (!sp.failed && !lp.at_end()) sp.fail("trailing input");
            if (sp.failed) continue;
            if (auto err = add_step(c, Step{{name}, def})) {
                switch (err->kind) {
                    case StepError::Kind::DuplicateName:
                        errors.push_back({line_no, 1, "duplicate name " + err->name,
                                          SourceError::Kind::Semantic});
                        break;
                    case StepError::Kind::UnknownReference:
                        errors.push_back({line_no, 1, "unknown reference " + err->name,
                                          SourceError::Kind::Semantic});
                        break;
                    default:
                        errors.push_back({line_no, 1, "invalid step", SourceError::Kind::Semantic});
                }
            }
        } else if (lp.accept_word("points")) {
            std::vector<std::string> names;
            while (!lp.peek_word("=")) {
                std::string id = lp.ident();
                if (id.empty()) break;
                names.push_back(id);
            }
            sp.expect_char('=');
            if (!lp.accept_word("regular")) sp.fail("expected regular(n, A, B)");
            RegularDef d;
            sp.expect_char('(');
            {
                Rat n = sp.expect_num();
                if (n.get_den() != 1) sp.fail("polygon size must be an integer");
                d.n = (int)n.get_num().get_si();
            }
            sp.expect_char(',');
            d.a = sp.expect_ident("point name");
            sp.expect_char(',');
            d.b = sp.expect_ident("point name");
            sp.expect_char(')');
            if (!sp.failed && !lp.at_end()) sp.fail("trailing input");
            if (sp.failed) continue;
            if (names.empty()) {
                errors.push_back(
                    {line_no, 1, "expected vertex names", SourceError::Kind::Syntax});
                continue;
            }
            if (auto err = add_step(c, Step{names, d})) {
                std::string msg;
                switch (err->kind) {
                    case StepError::Kind::DuplicateName: msg = "duplicate name " + err->name; break;
                    case StepError::Kind::UnknownReference:
                        msg = "unknown reference " + err->name;
                        break;
                    case StepError::Kind::UnsupportedPolygon:
                        msg = "unsupported polygon n=" + std::to_string(d.n) + " (expected " +
                              std::to_string(d.n - 2) + " vertex names, one of n=3,4,5,6,8,10,12,20)";
                        break;
                }
                errors.push_back({line_no, 1, msg, SourceError::Kind::Semantic});
            }
        } else if (lp.accept_word("discover")) {
            std::string t = sp.expect_ident("target point");
            if (!sp.failed && !lp.at_end()) sp.fail("trailing input");
            if (sp.failed) continue;
            if (!c.defines(t)) {
                errors.push_back(
                    {line_no, 1, "unknown target " + t, SourceError::Kind::Semantic});
                continue;
            }
            c.targets.push_back(t);
        } else if (lp.accept_word("option")) {
            std::string key = sp.expect_ident("option name");
            sp.expect_char('=');
            std::string value = lp.ident();
            if (value.empty()) value = lp.number_token();
            if (value.empty()) sp.fail("expected option value");
            if (!sp.failed && !lp.at_end()) sp.fail("trailing input");
            if (sp.failed) continue;
            c.options[key] = value;
        } else {
            errors.push_back(
                {line_no, lp.column(), "expected statement", SourceError::Kind::Syntax});
        }
    }
    if (!errors.empty()) return errors;
    return c;
}

namespace detail {

inline std::string lref_text(const LineRef& l) {
    switch (l.kind) {
        case LineRef::Kind::Through: return "line(" + l.pts[0] + ", " + l.pts[1] + ")";
        case LineRef::Kind::PerpBisector:
            return "perp_bisector(" + l.pts[0] + ", " + l.pts[1] + ")";
        case LineRef::Kind::PerpAt:
            return "perp_at(" + l.pts[0] + ", " + l.pts[1] + ", " + l.pts[2] + ")";
        case LineRef::Kind::ParallelAt:
            return "parallel_at(" + l.pts[0] + ", " + l.pts[1] + ", " + l.pts[2] + ")";
    }
    return {};
}

inline std::string cref_text(const CircleRef& c) {
    if (c.kind == CircleRef::Kind::CenterThrough)
        return "circle(" + c.pts[0] + ", " + c.pts[1] + ")";
    return "circumcircle(" + c.pts[0] + ", " + c.pts[1] + ", " + c.pts[2] + ")";
}

// Exact decimal when the denominator is 2^a*5^b (always the case for parsed
// input); otherwise p/q, which expect_num also accepts.
inline std::string num_text(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    mpz_class den = r.get_den();
    int twos = 0, fives = 0;
    while (den % 2 == 0) den /= 2, ++twos;
    while (den % 5 == 0) den /= 5, ++fives;
    if (den != 1) return r.get_str();
    int k = std::max(twos, fives);
    mpz_class pow10 = 1;
    for (int i = 0; i < k; ++i) pow10 *= 10;
    mpz_class scaled = r.get_num() * (pow10 / r.get_den());
    bool neg = scaled < 0;
    std::string digits = mpz_class(abs(scaled)).get_str();
    if ((int)digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
    digits.insert(digits.size() - k, ".");
    return (neg ? "-" : "") + digits;
}

}  // namespace detail

// Canonical text form; parse(unparse(c)) reproduces c structurally.
inline std::string unparse(const Construction& c) {
    std::string out;
    for (const auto& [k, v] : c.options) out += "option " + k + " = " + v + "\n";
    for (const auto& s : c.steps) {
        if (const auto* r = std::get_if<RegularDef>(&s.def)) {
            out += "points";
            for (const auto& n : s.names) out += " " + n;
            out += " = regular(" + std::to_string(r->n) + ", " + r->a + ", " + r->b + ")\n";
            continue;
        }
        out += "point " + s.names[0] + " = ";
        std::visit(
            [&](const auto& d) {
                using T = std::decay_t<decltype(d)>;
                if constexpr (std::is_same_v<T, FreeDef>)
                    out += "free(" + detail::num_text(d.x) + ", " + detail::num_text(d.y) + ")";
                else if constexpr (std::is_same_v<T, MidpointDef>)
                    out += "midpoint(" + d.a + ", " + d.b + ")";
                else if constexpr (std::is_same_v<T, IntersectLinesDef>)
                    out += "intersect(" + detail::lref_text(d.l1) + ", " + detail::lref_text(d.l2) +
                           ")";
                else if constexpr (std::is_same_v<T, IntersectLineCircleDef>)
                    out += "intersect(" + detail::lref_text(d.line) + ", " +
                           detail::cref_text(d.circle) + ", near(" + detail::num_text(d.near_x) +
                           ", " + detail::num_text(d.near_y) + "))";
                else if constexpr (std::is_same_v<T, FootDef>)
                    out += "foot(" + d.p + ", " + d.a + ", " + d.b + ")";
            },
            s.def);
        out += "\n";
    }
    for (const auto& t : c.targets) out += "discover " + t + "\n";
    return out;
}

}  // namespace gd

#endif
