#include "relcluster/parse.hpp"

#include <cctype>

namespace relcluster {

namespace {

class Parser {
public:
    Parser(const std::string& text, const RingPtr& ring) : s_(text), ring_(ring) {}

    Polynomial run()
    {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != s_.size())
            throw ParseError(pos_, "unexpected trailing input");
        return p;
    }

private:
    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    char peek()
    {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Polynomial expr()
    {
        bool neg = false;
        if (peek() == '-') {
            ++pos_;
            neg = true;
        } else if (peek() == '+') {
            ++pos_;
        }
        Polynomial acc = term();
        if (neg)
            acc = -acc;
        while (true) {
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                Polynomial t = term();
                acc = (c == '+') ? acc + t : acc - t;
            } else {
                break;
            }
        }
        return acc;
    }

    Polynomial term()
    {
        Polynomial acc = factor();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc = acc * factor();
            } else if (c == '(') {
                acc = acc * factor(); // juxtaposed parenthesized group
            } else {
                break;
            }
        }
        return acc;
    }

    Polynomial factor()
    {
        Polynomial b = base();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            std::size_t at = pos_;
            unsigned long e = natural(at);
            if (e > 0xffffu)
                throw ParseError(at, "exponent exceeds 16-bit bound");
            try {
                return b.pow(static_cast<unsigned>(e));
            } catch (const ExponentOverflow&) {
                throw ParseError(at, "exponent overflow while expanding power");
            }
        }
        return b;
    }

    Polynomial base()
    {
        char c = peek();
        std::size_t at = pos_;
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            if (peek() != ')')
                throw ParseError(pos_, "expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            unsigned long num = natural(at);
            if (peek() == '/') {
                ++pos_;
                skip_ws();
                std::size_t dat = pos_;
                unsigned long den = natural(dat);
                if (den == 0)
                    throw ParseError(dat, "zero denominator");
                return Polynomial::constant(ring_, mpq_class(static_cast<long>(num), static_cast<long>(den)));
            }
            return Polynomial::constant(ring_, mpq_class(static_cast<long>(num)));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                name += s_[pos_++];
            int v = ring_->var_index(name);
            if (v < 0)
                throw ParseError(at, "unknown variable '" + name + "'");
            return Polynomial::variable(ring_, v);
        }
        throw ParseError(pos_, "expected a number, variable or '('");
    }

    unsigned long natural(std::size_t at)
    {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            throw ParseError(pos_, "expected a natural number");
        unsigned long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + static_cast<unsigned long>(s_[pos_] - '0');
            if (v > 1000000000UL)
                throw ParseError(at, "numeric literal too large");
            ++pos_;
        }
        return v;
    }

    const std::string& s_;
    RingPtr ring_;
    std::size_t pos_ = 0;
};

} // namespace

Polynomial parse_polynomial(const std::string& text, const RingPtr& ring)
{
    return Parser(text, ring).run();
}

} // namespace relcluster
