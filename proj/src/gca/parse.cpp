#include "dsi/gca.hpp"

#include <cctype>

namespace dsi {

ParseError::ParseError(const std::string& msg, std::size_t col) : std::runtime_error(msg), column(col) {}

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view s) : s_(s) {}

    void skip_space() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool done() {
        skip_space();
        return i_ >= s_.size();
    }
    char peek() {
        skip_space();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++i_;
        return true;
    }
    std::size_t column() const { return i_ + 1; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, column()); }

    std::string digits() {
        skip_space();
        std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (start == i_) fail("expected digits");
        return std::string(s_.substr(start, i_ - start));
    }
    std::string name() {
        skip_space();
        std::size_t start = i_;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '\''))
            ++i_;
        return std::string(s_.substr(start, i_ - start));
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;
};

Rational read_number(Cursor& cur) {
    mpz_class num(cur.digits());
    mpz_class den(1);
    if (cur.accept('/')) {
        den = mpz_class(cur.digits());
        if (den == 0) cur.fail("zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Element read_term(const AlgebraPtr& alg, Cursor& cur) {
    Element term = Element::constant(alg, Rational(1));
    do {
        const char c = cur.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            term = term.scaled(read_number(cur));
            continue;
        }
        const std::size_t col = cur.column();
        std::string id = cur.name();
        if (id.empty()) cur.fail("expected a coefficient or a name");
        auto slot = alg->slot(id);
        if (!slot) throw ParseError("unknown name '" + id + "'", col);
        int power = 1;
        if (cur.accept('^')) {
            const bool neg = cur.accept('-');
            power = std::stoi(cur.digits());
            if (neg) power = -power;
        }
        if (power < 0 && !(*slot < alg->nvars() && alg->variables()[*slot].invertible))
            throw ParseError("negative power of non-invertible '" + id + "'", col);
        term = term * Element::slot(alg, id, power);
    } while (cur.accept('*'));
    return term;
}

}  // namespace

Element parse_element(const AlgebraPtr& alg, std::string_view text) {
    Cursor cur(text);
    Element out(alg);
    if (cur.done()) throw ParseError("empty expression", 1);
    bool negative = false;
    if (cur.accept('-')) negative = true;
    else cur.accept('+');
    for (;;) {
        Element t = read_term(alg, cur);
        out += negative ? -t : t;
        if (cur.done()) break;
        if (cur.accept('+')) negative = false;
        else if (cur.accept('-')) negative = true;
        else cur.fail("expected '+' or '-'");
    }
    return out;
}

Rational parse_rational(std::string_view text) {
    Cursor cur(text);
    const bool neg = cur.accept('-');
    if (!neg) cur.accept('+');
    Rational q = read_number(cur);
    if (!cur.done()) cur.fail("trailing characters after rational");
    return neg ? Rational(-q) : q;
}

}  // namespace dsi
