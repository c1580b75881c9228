#include "gp/expr.hpp"

#include <cctype>
#include <sstream>

namespace gp {

namespace {

class Parser {
public:
    Parser(const std::string& s, const AlgebraSignature& sig) : s_(s), sig_(sig) {}

    MultiDerivation run() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("empty expression", pos_);
        MultiDerivation r = expr();
        skip();
        if (pos_ < s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return r;
    }

private:
    const std::string& s_;
    const AlgebraSignature& sig_;
    std::size_t pos_ = 0;

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MultiDerivation one() const {
        return MultiDerivation::from_polynomial(GradedPolynomial::constant(sig_.m, sig_.n, 1));
    }

    MultiDerivation expr() {
        bool neg = false;
        skip();
        if (accept('-'))
            neg = true;
        else
            accept('+');
        MultiDerivation r = term();
        if (neg) r = -r;
        for (;;) {
            if (accept('+'))
                r += term();
            else if (accept('-'))
                r -= term();
            else
                break;
        }
        return r;
    }

    MultiDerivation term() {
        MultiDerivation r = factor();
        while (accept('*')) r = wedge(r, factor());
        return r;
    }

    MultiDerivation factor() {
        skip();
        std::size_t start = pos_;
        int kind = 0;  // 0 generic, 1 odd variable, 2 even derivation
        MultiDerivation base = primary(kind);
        if (accept('^')) {
            skip();
            std::size_t p = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (p == pos_) throw ParseError("expected exponent", pos_);
            unsigned long e = std::stoul(s_.substr(p, pos_ - p));
            if (kind == 1 && e > 1) throw ParseError("odd variable raised to a power > 1", start);
            if (kind == 2 && e > 1) throw ParseError("even derivation raised to a power > 1", start);
            MultiDerivation r = one();
            for (unsigned long i = 0; i < e; ++i) r = wedge(r, base);
            return r;
        }
        return base;
    }

    MultiDerivation primary(int& kind) {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MultiDerivation r = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t p = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string num = s_.substr(p, pos_ - p);
            if (pos_ < s_.size() && s_[pos_] == '/' && pos_ + 1 < s_.size() &&
                std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
                ++pos_;
                std::size_t q = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                num += "/" + s_.substr(q, pos_ - q);
            }
            Rational v(num);
            if (v.get_den() == 0) throw ParseError("zero denominator", p);
            v.canonicalize();
            return MultiDerivation::from_polynomial(GradedPolynomial::constant(sig_.m, sig_.n, v));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t p = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string id = s_.substr(p, pos_ - p);
            if (auto v = sig_.index_of(id)) {
                kind = sig_.is_odd(*v) ? 1 : 0;
                return MultiDerivation::from_polynomial(GradedPolynomial::variable(sig_.m, sig_.n, *v));
            }
            if (id.size() > 1 && id[0] == 'D') {
                if (auto v = sig_.index_of(id.substr(1))) {
                    kind = sig_.is_odd(*v) ? 0 : 2;
                    return derivation_word(sig_.m, sig_.n, {*v}, GradedPolynomial::constant(sig_.m, sig_.n, 1));
                }
            }
            throw ParseError("unknown symbol '" + id + "'", p);
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }
};

std::string atom_body(const GradedMonomial& mono, const ExteriorMonomial* e, const AlgebraSignature& sig) {
    std::vector<std::string> f;
    for (int i = 0; i < sig.m; ++i) {
        if (mono.exps[i] == 0) continue;
        f.push_back(sig.name(i) + (mono.exps[i] > 1 ? "^" + std::to_string(mono.exps[i]) : ""));
    }
    for (int j = 0; j < sig.n; ++j)
        if (mono.odd_mask >> j & 1u) f.push_back(sig.name(sig.m + j));
    if (e) {
        for (int i = 0; i < sig.m; ++i)
            if (e->even_mask >> i & 1u) f.push_back("D" + sig.name(i));
        for (int j = 0; j < sig.n; ++j) {
            auto a = e->odd_exps[j];
            if (a) f.push_back("D" + sig.name(sig.m + j) + (a > 1 ? "^" + std::to_string(a) : ""));
        }
    }
    std::string out;
    for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "*" : "") + f[i];
    return out;
}

void append_atom(std::string& out, const Rational& c, const std::string& body) {
    bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    if (out.empty())
        out += neg ? "-" : "";
    else
        out += neg ? " - " : " + ";
    if (body.empty())
        out += to_string(a);
    else if (a == 1)
        out += body;
    else
        out += to_string(a) + "*" + body;
}

}  // namespace

std::string to_string(const Rational& q) { return q.get_str(); }

MultiDerivation parse_multiderivation(const std::string& text, const AlgebraSignature& sig) {
    return Parser(text, sig).run();
}

GradedPolynomial parse_polynomial(const std::string& text, const AlgebraSignature& sig) {
    MultiDerivation r = parse_multiderivation(text, sig);
    if (r.is_zero()) return GradedPolynomial(sig.m, sig.n);
    if (r.max_symbols() != 0) throw ParseError("expected an algebra element, found derivation symbols", 0);
    return r.coefficient(ExteriorMonomial(sig.n));
}

std::string to_string(const GradedPolynomial& f, const AlgebraSignature& sig) {
    std::string out;
    for (const auto& [mono, c] : f.terms()) append_atom(out, c, atom_body(mono, nullptr, sig));
    return out.empty() ? "0" : out;
}

std::string to_string(const MultiDerivation& a, const AlgebraSignature& sig) {
    std::string out;
    for (const auto& [e, f] : a.terms())
        for (const auto& [mono, c] : f.terms()) append_atom(out, c, atom_body(mono, &e, sig));
    return out.empty() ? "0" : out;
}

}  // namespace gp
