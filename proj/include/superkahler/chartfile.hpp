#pragma once

// Expression grammar and the ChartFile text format.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' INT)?
//   primary := INT ('/' INT)? | IDENT | '(' expr ')'
//
// Exponents are non-negative integer literals.  An odd variable raised to
// k >= 2 is 0 and produces a warning.  Juxtaposition ("2x") is an error.

#include "superkahler/search.hpp"

#include <cctype>
#include <fstream>

namespace superkahler {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& msg)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line(line), column(column) {}
    std::size_t line, column;
};

namespace detail {

class ExpressionParser {
public:
    ExpressionParser(const std::string& src, const VarsPtr& vars, std::size_t line, std::size_t column0,
                     std::vector<std::string>* warnings)
        : src_(src), vars_(vars), line_(line), col0_(column0), warnings_(warnings) {}

    SuperPolynomial parse() {
        skip();
        if (pos_ >= src_.size()) fail("empty expression");
        auto r = expr();
        skip();
        if (pos_ < src_.size()) {
            if (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '(' || src_[pos_] == '_')
                fail("juxtaposition is not allowed, use '*'");
            fail(std::string("unexpected '") + src_[pos_] + "'");
        }
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col0_ + pos_, msg); }

    void skip() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    SuperPolynomial expr() {
        auto r = term();
        for (;;) {
            if (accept('+')) r += term();
            else if (accept('-')) r -= term();
            else return r;
        }
    }
    SuperPolynomial term() {
        auto r = unary();
        while (accept('*')) r = r * unary();
        return r;
    }
    SuperPolynomial unary() {
        if (accept('-')) return -unary();
        return power();
    }

    unsigned long integer() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        try {
            return std::stoul(src_.substr(start, pos_ - start));
        } catch (const std::out_of_range&) {
            pos_ = start;
            fail("integer too large");
        }
    }

    SuperPolynomial power() {
        const std::size_t basePos = pos_;
        auto [base, oddVar] = primary();
        if (!accept('^')) return base;
        skip();
        if (pos_ < src_.size() && src_[pos_] == '-') fail("negative exponent");
        const auto k = integer();
        if (k > 64) fail("exponent too large");
        if (oddVar && k >= 2) {
            if (warnings_)
                warnings_->push_back(std::to_string(line_) + ":" + std::to_string(col0_ + basePos) +
                                     ": odd variable raised to " + std::to_string(k) + " is 0");
            return SuperPolynomial(vars_);
        }
        SuperPolynomial r = SuperPolynomial::constant(vars_, 1);
        for (unsigned long i = 0; i < k; ++i) r = r * base;
        return r;
    }

    std::pair<SuperPolynomial, bool> primary() {
        skip();
        if (pos_ >= src_.size()) fail("unexpected end of expression");
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rational v(integer());
            if (accept('/')) {
                skip();
                const std::size_t at = pos_;
                const auto den = integer();
                if (den == 0) {
                    pos_ = at;
                    fail("zero denominator");
                }
                v /= Rational(den);
                v.canonicalize();
            }
            return {SuperPolynomial::constant(vars_, v), false};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            const std::string name = src_.substr(start, pos_ - start);
            for (std::size_t i = 0; i < vars_->size(); ++i)
                if ((*vars_)[i].name == name) return {SuperPolynomial::variable(vars_, i), vars_->isOdd(i)};
            pos_ = start;
            fail("unknown identifier '" + name + "'");
        }
        if (accept('(')) {
            auto r = expr();
            if (!accept(')')) fail("expected ')'");
            return {r, false};
        }
        if (c == '/') fail("'/' is only allowed inside a rational literal p/q");
        fail(std::string("unexpected '") + c + "'");
    }

    const std::string& src_;
    VarsPtr vars_;
    std::size_t line_, col0_;
    std::vector<std::string>* warnings_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses one expression over the chart's coordinates.  `line`/`column` locate
/// the string inside a larger file for error messages (column is 1-based).
inline SuperPolynomial parseExpression(const std::string& src, const Chart& chart,
                                       std::vector<std::string>* warnings = nullptr, std::size_t line = 1,
                                       std::size_t column = 1) {
    return detail::ExpressionParser(src, chart.coordinates(), line, column, warnings).parse();
}

// ChartFile
//
//   superkahler-chart 1
//   [chart]
//   even = x1, x2
//   odd = xi1, xi2
//   [tensor J]
//   kind = J
//   parity = ev
//   square = -1
//   row = 0, -1, 0, 0
//   ...
//
// '#' starts a comment.  Keys inside a tensor: kind (J | h | omega | B),
// parity (ev | od), square (+1 | -1, J only), and exactly n+m row lines of
// n+m comma-separated expressions.

enum class TensorKind { J, h, omega, B };

inline const char* toString(TensorKind k) {
    switch (k) {
        case TensorKind::J: return "J";
        case TensorKind::h: return "h";
        case TensorKind::omega: return "omega";
        default: return "B";
    }
}

struct TensorEntry {
    std::string name;
    TensorKind kind = TensorKind::J;
    Parity parity = Parity::even;
    int squareSign = -1;
    Matrix components;
    std::string comment;
};

struct ChartFile {
    Chart chart;
    std::vector<TensorEntry> tensors;
    std::vector<std::string> comments;  // header comment lines, written verbatim after '# '
    std::vector<std::string> warnings;  // filled by the reader

    std::vector<const TensorEntry*> ofKind(TensorKind k) const {
        std::vector<const TensorEntry*> r;
        for (const auto& t : tensors)
            if (t.kind == k) r.push_back(&t);
        return r;
    }
    Tensor11 tensor11(const TensorEntry& e) const { return Tensor11(chart, e.components, e.parity, e.squareSign); }
    BilinearForm form(const TensorEntry& e) const { return BilinearForm(chart, e.components, e.parity); }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline bool isIdentifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

}  // namespace detail

inline ChartFile readChartFile(std::istream& in) {
    struct RawTensor {
        std::string name;
        std::size_t line;
        std::optional<TensorKind> kind;
        std::optional<Parity> parity;
        std::optional<int> square;
        std::vector<std::pair<std::size_t, std::string>> rows;  // (line, text after '=')
        std::vector<std::size_t> rowColumns;
    };
    std::vector<std::string> even, odd;
    bool haveEven = false, haveOdd = false, sawHeader = false, sawChart = false;
    std::vector<RawTensor> raw;
    enum class Section { none, chart, tensor } section = Section::none;

    std::vector<std::string> headerComments;
    std::string text;
    std::size_t lineNo = 0;
    while (std::getline(in, text)) {
        ++lineNo;
        if (auto hash = text.find('#'); hash != std::string::npos) {
            // Whole-line comments before the first section are kept for rewriting.
            if (sawHeader && section == Section::none && detail::trim(text.substr(0, hash)).empty()) {
                std::string c = text.substr(hash + 1);
                if (!c.empty() && c.front() == ' ') c.erase(0, 1);
                headerComments.push_back(c);
            }
            text.erase(hash);
        }
        const std::string line = detail::trim(text);
        if (line.empty()) continue;
        if (!sawHeader) {
            if (line != "superkahler-chart 1") throw ParseError(lineNo, 1, "expected header 'superkahler-chart 1'");
            sawHeader = true;
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(lineNo, 1, "unterminated section header");
            const std::string head = detail::trim(line.substr(1, line.size() - 2));
            if (head == "chart") {
                if (sawChart) throw ParseError(lineNo, 1, "duplicate [chart] section");
                sawChart = true;
                section = Section::chart;
            } else if (head.rfind("tensor", 0) == 0 && head.size() > 6 && std::isspace(static_cast<unsigned char>(head[6]))) {
                const std::string name = detail::trim(head.substr(6));
                if (!detail::isIdentifier(name)) throw ParseError(lineNo, 2, "tensor name must be an identifier");
                for (const auto& t : raw)
                    if (t.name == name) throw ParseError(lineNo, 2, "duplicate tensor '" + name + "'");
                raw.push_back({name, lineNo, {}, {}, {}, {}, {}});
                section = Section::tensor;
            } else {
                throw ParseError(lineNo, 2, "unknown section '" + head + "'");
            }
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw ParseError(lineNo, 1, "expected 'key = value'");
        const std::string key = detail::trim(text.substr(0, eq));
        const std::string value = detail::trim(text.substr(eq + 1));
        const std::size_t valueCol = text.find_first_not_of(" \t", eq + 1) + 1;
        auto splitNames = [&](const std::string& v) {
            std::vector<std::string> r;
            if (v.empty()) return r;
            std::size_t start = 0;
            for (;;) {
                const auto comma = v.find(',', start);
                const std::string item = detail::trim(v.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
                if (!detail::isIdentifier(item))
                    throw ParseError(lineNo, valueCol + start, "'" + item + "' is not a variable name");
                r.push_back(item);
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
            return r;
        };
        if (section == Section::chart) {
            if (key == "even") even = splitNames(value), haveEven = true;
            else if (key == "odd") odd = splitNames(value), haveOdd = true;
            else throw ParseError(lineNo, 1, "unknown chart key '" + key + "'");
        } else if (section == Section::tensor) {
            auto& t = raw.back();
            if (key == "kind") {
                if (value == "J") t.kind = TensorKind::J;
                else if (value == "h") t.kind = TensorKind::h;
                else if (value == "omega") t.kind = TensorKind::omega;
                else if (value == "B") t.kind = TensorKind::B;
                else throw ParseError(lineNo, valueCol, "kind must be J, h, omega or B");
            } else if (key == "parity") {
                try {
                    t.parity = parseParity(value);
                } catch (const std::invalid_argument& e) {
                    throw ParseError(lineNo, valueCol, e.what());
                }
            } else if (key == "square") {
                if (value == "-1") t.square = -1;
                else if (value == "+1" || value == "1") t.square = 1;
                else throw ParseError(lineNo, valueCol, "square must be +1 or -1");
            } else if (key == "row") {
                t.rows.emplace_back(lineNo, text.substr(eq + 1));
                t.rowColumns.push_back(eq + 2);
            } else {
                throw ParseError(lineNo, 1, "unknown tensor key '" + key + "'");
            }
        } else {
            throw ParseError(lineNo, 1, "key outside of a section");
        }
    }
    if (!sawHeader) throw ParseError(lineNo + 1, 1, "empty file");
    if (!sawChart || (!haveEven && !haveOdd)) throw ParseError(lineNo + 1, 1, "missing [chart] section");

    auto makeChart = [&]() {
        try {
            return Chart(even, odd);
        } catch (const std::exception& e) {
            throw ParseError(lineNo + 1, 1, std::string("bad chart: ") + e.what());
        }
    };
    ChartFile out{makeChart(), {}, headerComments, {}};
    const std::size_t n = out.chart.size();
    for (auto& t : raw) {
        if (!t.kind) throw ParseError(t.line, 1, "tensor '" + t.name + "' has no kind");
        if (!t.parity) throw ParseError(t.line, 1, "tensor '" + t.name + "' has no parity");
        if (t.square && t.kind != TensorKind::J) throw ParseError(t.line, 1, "square applies to kind J only");
        if (t.rows.size() != n)
            throw ParseError(t.line, 1, "tensor '" + t.name + "' has " + std::to_string(t.rows.size()) +
                                            " rows, expected " + std::to_string(n));
        TensorEntry e{t.name, *t.kind, *t.parity, t.square.value_or(-1), Matrix(n, out.chart.coordinates()), {}};
        for (std::size_t r = 0; r < n; ++r) {
            const auto& [ln, rowText] = t.rows[r];
            std::size_t start = 0, col = 0;
            for (;;) {
                const auto comma = rowText.find(',', start);
                const std::string cell = rowText.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
                if (col >= n)
                    throw ParseError(ln, t.rowColumns[r] + start, "row has more than " + std::to_string(n) + " entries");
                e.components(r, col++) = parseExpression(cell, out.chart, &out.warnings, ln, t.rowColumns[r] + start);
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
            if (col != n)
                throw ParseError(ln, 1, "row has " + std::to_string(col) + " entries, expected " + std::to_string(n));
        }
        try {
            if (e.kind == TensorKind::J) (void)out.tensor11(e);
            else if (e.kind == TensorKind::B) (void)Bivector(out.chart, e.components, e.parity);
            else (void)out.form(e);
        } catch (const AlgebraError& ex) {
            throw ParseError(t.line, 1, "tensor '" + e.name + "': " + ex.what());
        }
        out.tensors.push_back(std::move(e));
    }
    return out;
}

inline ChartFile readChartFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return readChartFile(in);
}

inline ChartFile parseChartFile(const std::string& text) {
    std::istringstream in(text);
    return readChartFile(in);
}

inline std::string writeChartFile(const ChartFile& f) {
    std::ostringstream os;
    os << "superkahler-chart 1\n";
    for (const auto& c : f.comments) os << "# " << c << "\n";
    auto join = [](const std::vector<std::string>& v) {
        std::string r;
        for (std::size_t i = 0; i < v.size(); ++i) r += (i ? ", " : "") + v[i];
        return r;
    };
    auto names = [&](const std::vector<std::string>& v) { return v.empty() ? std::string() : " " + join(v); };
    os << "[chart]\neven =" << names(f.chart.evenNames()) << "\nodd =" << names(f.chart.oddNames()) << "\n";
    for (const auto& t : f.tensors) {
        os << "[tensor " << t.name << "]\n";
        if (!t.comment.empty()) os << "# " << t.comment << "\n";
        os << "kind = " << toString(t.kind) << "\nparity = " << toString(t.parity) << "\n";
        if (t.kind == TensorKind::J) os << "square = " << (t.squareSign > 0 ? "+1" : "-1") << "\n";
        for (std::size_t r = 0; r < t.components.size(); ++r) {
            os << "row = ";
            for (std::size_t c = 0; c < t.components.size(); ++c)
                os << (c ? ", " : "") << t.components(r, c).toString();
            os << "\n";
        }
    }
    return os.str();
}

inline ChartFile chartFileFor(const Tensor11& j, const BilinearForm& h) {
    ChartFile f{h.chart, {}, {}, {}};
    f.tensors.push_back({"J", TensorKind::J, j.parity, j.squareSign, j.components, {}});
    f.tensors.push_back({"h", TensorKind::h, h.parity, -1, h.components, {}});
    return f;
}

}  // namespace superkahler
