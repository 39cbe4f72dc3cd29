#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cla/array.hpp"
#include "cla/errors.hpp"
#include "cla/model.hpp"

namespace cla {

// Pass/fail outcome per row of an array.
struct OutcomeVector {
    std::vector<bool> failed;  // true = fail

    int size() const { return static_cast<int>(failed.size()); }
};

namespace detail {

struct Token {
    enum class Kind { Ident, Symbol, String, End };
    Kind kind;
    std::string text;
    int line;
    int column;
};

// Word characters for identifiers and value names; value names may be numerals.
inline bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-' || c == '+';
}

class Lexer {
public:
    Lexer(std::string_view text, int line) : text_(text), line_(line) {}

    Token next() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
        int col = static_cast<int>(pos_) + 1;
        if (pos_ >= text_.size() || text_[pos_] == '#')
            return {Token::Kind::End, "", line_, col};
        char c = text_[pos_];
        if (c == '"') {
            std::size_t end = text_.find('"', pos_ + 1);
            if (end == std::string_view::npos) throw ParseError("unterminated string", line_, col);
            std::string s(text_.substr(pos_ + 1, end - pos_ - 1));
            pos_ = end + 1;
            return {Token::Kind::String, s, line_, col};
        }
        if (ident_char(c)) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
            return {Token::Kind::Ident, std::string(text_.substr(start, pos_ - start)), line_, col};
        }
        // multi-char operators first
        for (std::string_view op : {"!=", "&&", "||", "=>"}) {
            if (text_.substr(pos_).starts_with(op)) {
                pos_ += op.size();
                return {Token::Kind::Symbol, std::string(op), line_, col};
            }
        }
        if (c == '{' || c == '}' || c == ',' || c == '(' || c == ')' || c == '!' || c == '=') {
            ++pos_;
            return {Token::Kind::Symbol, std::string(1, c), line_, col};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_;
};

// Recursive-descent parser for one constraint expression.
// Precedence: ! > && > || > =>, with => right-associative.
class ExprParser {
public:
    ExprParser(const SutModel& model, std::string_view text, int line)
        : model_(model), lexer_(text, line), line_(line) {
        advance();
    }

    ConstraintExpr parse() {
        ConstraintExpr e = parse_implies();
        if (tok_.kind != Token::Kind::End)
            throw ParseError("unexpected trailing token '" + tok_.text + "'", tok_.line, tok_.column);
        return e;
    }

private:
    void advance() { tok_ = lexer_.next(); }

    bool accept_symbol(std::string_view s) {
        if (tok_.kind == Token::Kind::Symbol && tok_.text == s) {
            advance();
            return true;
        }
        return false;
    }

    void expect_symbol(std::string_view s) {
        if (!accept_symbol(s))
            throw ParseError("expected '" + std::string(s) + "', got '" + tok_.text + "'",
                             tok_.line, tok_.column);
    }

    ConstraintExpr parse_implies() {
        ConstraintExpr lhs = parse_or();
        if (accept_symbol("=>")) return ConstraintExpr::implies(std::move(lhs), parse_implies());
        return lhs;
    }

    ConstraintExpr parse_or() {
        std::vector<ConstraintExpr> parts;
        parts.push_back(parse_and());
        while (accept_symbol("||")) parts.push_back(parse_and());
        return ConstraintExpr::disjunction(std::move(parts));
    }

    ConstraintExpr parse_and() {
        std::vector<ConstraintExpr> parts;
        parts.push_back(parse_not());
        while (accept_symbol("&&")) parts.push_back(parse_not());
        return ConstraintExpr::conjunction(std::move(parts));
    }

    ConstraintExpr parse_not() {
        if (accept_symbol("!")) return ConstraintExpr::negation(parse_not());
        if (accept_symbol("(")) {
            ConstraintExpr e = parse_implies();
            expect_symbol(")");
            return e;
        }
        return parse_atom();
    }

    ConstraintExpr parse_atom() {
        if (tok_.kind != Token::Kind::Ident)
            throw ParseError("expected factor name, got '" + tok_.text + "'", tok_.line, tok_.column);
        Token name = tok_;
        advance();
        int factor = model_.find_factor(name.text);
        if (factor < 0)
            throw ParseError("unknown factor '" + name.text + "'", name.line, name.column);
        bool equals;
        if (accept_symbol("=")) {
            equals = true;
        } else if (accept_symbol("!=")) {
            equals = false;
        } else {
            throw ParseError("expected '=' or '!=' after factor name", tok_.line, tok_.column);
        }
        if (tok_.kind != Token::Kind::Ident)
            throw ParseError("expected value name, got '" + tok_.text + "'", tok_.line, tok_.column);
        int value = model_.factors[factor].find_value(tok_.text);
        if (value < 0)
            throw ParseError("factor '" + name.text + "' has no value '" + tok_.text + "' (atom " +
                                 name.text + (equals ? " = " : " != ") + tok_.text + ")",
                             tok_.line, tok_.column);
        advance();
        return ConstraintExpr::atom(factor, value, equals);
    }

    const SutModel& model_;
    Lexer lexer_;
    Token tok_;
    int line_;
};

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(cur);
    for (auto& cell : cells) {
        std::size_t a = cell.find_first_not_of(" \t\r");
        std::size_t b = cell.find_last_not_of(" \t\r");
        cell = (a == std::string::npos) ? "" : cell.substr(a, b - a + 1);
    }
    return cells;
}

inline std::string strip_line(std::string line) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t a = line.find_first_not_of(" \t\r");
    std::size_t b = line.find_last_not_of(" \t\r");
    return (a == std::string::npos) ? "" : line.substr(a, b - a + 1);
}

}  // namespace detail

// Line-oriented model format:
//   model "name"
//   factor IDENT { value, value, ... }
//   constraint EXPR
// Constraint lines combine by conjunction; '#' starts a comment.
inline SutModel parse_model(const std::string& text) {
    SutModel model;
    std::vector<ConstraintExpr> constraints;
    std::vector<std::string> pending_constraints;
    std::vector<int> pending_lines;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool factors_done = false;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::strip_line(raw);
        if (line.empty()) continue;

        detail::Lexer lexer(line, lineno);
        detail::Token head = lexer.next();
        if (head.kind != detail::Token::Kind::Ident)
            throw ParseError("expected 'model', 'factor' or 'constraint'", lineno, head.column);

        if (head.text == "model") {
            detail::Token name = lexer.next();
            if (name.kind != detail::Token::Kind::String && name.kind != detail::Token::Kind::Ident)
                throw ParseError("expected model name", lineno, name.column);
            model.name = name.text;
        } else if (head.text == "factor") {
            if (factors_done)
                throw ParseError("factor declared after constraints", lineno, head.column);
            detail::Token name = lexer.next();
            if (name.kind != detail::Token::Kind::Ident)
                throw ParseError("expected factor name", lineno, name.column);
            if (model.find_factor(name.text) >= 0)
                throw ParseError("duplicate factor name '" + name.text + "'", lineno, name.column);
            Factor factor;
            factor.name = name.text;
            detail::Token tok = lexer.next();
            if (tok.kind != detail::Token::Kind::Symbol || tok.text != "{")
                throw ParseError("expected '{'", lineno, tok.column);
            for (;;) {
                tok = lexer.next();
                if (tok.kind != detail::Token::Kind::Ident)
                    throw ParseError("expected value name", lineno, tok.column);
                if (factor.find_value(tok.text) >= 0)
                    throw ParseError("duplicate value '" + tok.text + "' in factor '" + factor.name + "'",
                                     lineno, tok.column);
                factor.values.push_back(tok.text);
                tok = lexer.next();
                if (tok.kind == detail::Token::Kind::Symbol && tok.text == ",") continue;
                if (tok.kind == detail::Token::Kind::Symbol && tok.text == "}") break;
                throw ParseError("expected ',' or '}'", lineno, tok.column);
            }
            if (factor.values.size() < 2)
                throw ParseError("factor '" + factor.name + "' needs at least 2 values", lineno,
                                 name.column);
            model.factors.push_back(std::move(factor));
        } else if (head.text == "constraint") {
            factors_done = true;
            std::string expr_text = line.substr(line.find("constraint") + 10);
            pending_constraints.push_back(expr_text);
            pending_lines.push_back(lineno);
        } else {
            throw ParseError("unknown directive '" + head.text + "'", lineno, head.column);
        }
    }

    if (model.factors.empty()) throw ParseError("model declares no factors", lineno, 1);

    // Constraints can only be parsed once all factors are known.
    for (std::size_t i = 0; i < pending_constraints.size(); ++i) {
        detail::ExprParser parser(model, pending_constraints[i], pending_lines[i]);
        constraints.push_back(parser.parse());
    }
    model.constraint = ConstraintExpr::conjunction(std::move(constraints));
    return model;
}

// Array format: header line of comma-separated factor names (any order),
// then one row of value names per line. Rows are mapped to model factor
// order. Constraint satisfaction is deliberately not checked here.
inline TestArray parse_array(const std::string& text, const SutModel& model) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::vector<int> column_to_factor;
    TestArray array;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::strip_line(raw);
        if (line.empty()) continue;
        std::vector<std::string> cells = detail::split_csv(line);
        if (column_to_factor.empty()) {
            if (static_cast<int>(cells.size()) != model.factor_count())
                throw ParseError("header has " + std::to_string(cells.size()) + " columns, model has " +
                                     std::to_string(model.factor_count()) + " factors",
                                 lineno, 1);
            std::vector<bool> seen(model.factor_count(), false);
            for (const auto& cell : cells) {
                int f = model.find_factor(cell);
                if (f < 0) throw ParseError("unknown factor '" + cell + "' in header", lineno, 1);
                if (seen[f]) throw ParseError("factor '" + cell + "' repeated in header", lineno, 1);
                seen[f] = true;
                column_to_factor.push_back(f);
            }
            continue;
        }
        if (static_cast<int>(cells.size()) != model.factor_count())
            throw ParseError("row has " + std::to_string(cells.size()) + " cells, expected " +
                                 std::to_string(model.factor_count()),
                             lineno, 1);
        Test row(model.factor_count(), -1);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            int f = column_to_factor[c];
            int v = model.factors[f].find_value(cells[c]);
            if (v < 0)
                throw ParseError("factor '" + model.factors[f].name + "' has no value '" + cells[c] + "'",
                                 lineno, 1);
            row[f] = v;
        }
        array.rows.push_back(std::move(row));
    }
    if (column_to_factor.empty()) throw ParseError("array file has no header line", lineno, 1);
    return array;
}

// Canonical text form: header in model factor order, values by name.
inline std::string serialize_array(const TestArray& array, const SutModel& model) {
    std::string out;
    for (int f = 0; f < model.factor_count(); ++f) {
        if (f) out += ',';
        out += model.factors[f].name;
    }
    out += '\n';
    for (const auto& row : array.rows) {
        for (int f = 0; f < model.factor_count(); ++f) {
            if (f) out += ',';
            out += model.factors[f].values[row[f]];
        }
        out += '\n';
    }
    return out;
}

// One 'pass' or 'fail' token per line, row order.
inline OutcomeVector parse_outcomes(const std::string& text, const TestArray& array) {
    OutcomeVector out;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::strip_line(raw);
        if (line.empty()) continue;
        if (line == "pass") {
            out.failed.push_back(false);
        } else if (line == "fail") {
            out.failed.push_back(true);
        } else {
            throw ParseError("expected 'pass' or 'fail', got '" + line + "'", lineno, 1);
        }
    }
    if (out.size() != array.row_count())
        throw InputError("outcome file has " + std::to_string(out.size()) + " entries, array has " +
                         std::to_string(array.row_count()) + " rows");
    return out;
}

}  // namespace cla
