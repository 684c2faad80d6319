#include "tangentcat/polynomial.hpp"

#include "tangentcat/errors.hpp"

#include <cctype>
#include <numeric>

namespace tangentcat::poly {

namespace {

std::uint32_t total(const Exponent& e) { return std::accumulate(e.begin(), e.end(), std::uint32_t(0)); }

} // namespace

bool GradedLex::operator()(const Exponent& a, const Exponent& b) const {
    auto da = total(a), db = total(b);
    if (da != db) return da > db;
    return a > b;
}

Polynomial Polynomial::constant(Domain dom, std::size_t nvars, const mpq_class& c) {
    Polynomial p(dom, nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
}

Polynomial Polynomial::variable(Domain dom, std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw ArityMismatch("variable x" + std::to_string(i) + " with " + std::to_string(nvars) + " variables");
    Polynomial p(dom, nvars);
    Exponent e(nvars, 0);
    e[i] = 1;
    p.add_term(e, 1);
    return p;
}

std::uint32_t Polynomial::degree() const { return terms_.empty() ? 0 : total(terms_.begin()->first); }

void Polynomial::add_term(const Exponent& e, const mpq_class& c) {
    if (e.size() != nvars_) throw ArityMismatch("exponent length differs from variable count");
    mpq_class v = dom_.reduce(c);
    if (v == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, v);
        return;
    }
    it->second = dom_.add(it->second, v);
    if (it->second == 0) terms_.erase(it);
}

void Polynomial::check(const Polynomial& o) const {
    if (dom_ != o.dom_) throw DomainMismatch(dom_.tag() + " vs " + o.dom_.tag());
    if (nvars_ != o.nvars_) throw ArityMismatch(std::to_string(nvars_) + " vs " + std::to_string(o.nvars_) + " variables");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check(o);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    check(o);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) {
        auto it = r.terms_.find(e);
        mpq_class cur = it == r.terms_.end() ? mpq_class(0) : it->second;
        mpq_class v = dom_.sub(cur, c);
        if (it != r.terms_.end()) r.terms_.erase(it);
        if (v != 0) r.terms_.emplace(e, v);
    }
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check(o);
    Polynomial r(dom_, nvars_);
    Exponent e(nvars_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, dom_.mul(ca, cb));
        }
    return r;
}

Polynomial Polynomial::scaled(const mpq_class& c) const {
    Polynomial r(dom_, nvars_);
    mpq_class s = dom_.reduce(c);
    if (s == 0) return r;
    for (const auto& [e, v] : terms_) r.terms_.emplace(e, dom_.mul(v, s));
    return r;
}

Polynomial Polynomial::pow(std::uint32_t k) const {
    Polynomial r = constant(dom_, nvars_, 1);
    Polynomial base = *this;
    while (k) {
        if (k & 1) r = r * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return r;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        bool negative = c < 0;
        mpq_class mag = negative ? mpq_class(-c) : c;
        std::string mono;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(i);
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        std::string term;
        if (mono.empty()) term = format_value(mag);
        else if (mag == 1) term = mono;
        else term = format_value(mag) + "*" + mono;
        if (first) s += negative ? "-" + term : term;
        else s += (negative ? " - " : " + ") + term;
        first = false;
    }
    return s;
}

Polynomial partial(const Polynomial& p, std::size_t i) {
    if (i >= p.variable_count()) throw ArityMismatch("partial derivative in x" + std::to_string(i));
    Polynomial r(p.domain(), p.variable_count());
    for (const auto& [e, c] : p.terms()) {
        if (e[i] == 0) continue;
        Exponent d = e;
        --d[i];
        r.add_term(d, p.domain().mul(c, p.domain().from_integer(static_cast<long>(e[i]))));
    }
    return r;
}

Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& values, std::size_t nvars) {
    if (values.size() != p.variable_count())
        throw ArityMismatch("substituting " + std::to_string(values.size()) + " values into " +
                            std::to_string(p.variable_count()) + " variables");
    const Domain& dom = p.domain();
    for (const auto& v : values) {
        if (v.domain() != dom) throw DomainMismatch(dom.tag() + " vs " + v.domain().tag());
        if (v.variable_count() != nvars) throw ArityMismatch("substituted values have mixed variable counts");
    }
    Polynomial r(dom, nvars);

    // Renaming fast path: every value is zero or a monic monomial.
    bool renaming = true;
    for (const auto& v : values)
        if (!(v.is_zero() || (v.terms().size() == 1 && v.terms().begin()->second == 1))) renaming = false;
    if (renaming) {
        Exponent e(nvars);
        for (const auto& [pe, c] : p.terms()) {
            std::fill(e.begin(), e.end(), 0);
            bool vanishes = false;
            for (std::size_t j = 0; j < values.size() && !vanishes; ++j) {
                if (pe[j] == 0) continue;
                if (values[j].is_zero()) {
                    vanishes = true;
                    break;
                }
                const Exponent& ve = values[j].terms().begin()->first;
                for (std::size_t t = 0; t < nvars; ++t) e[t] += ve[t] * pe[j];
            }
            if (!vanishes) r.add_term(e, c);
        }
        return r;
    }

    std::vector<std::vector<Polynomial>> powers(values.size());
    auto power = [&](std::size_t j, std::uint32_t k) -> const Polynomial& {
        auto& cache = powers[j];
        if (cache.empty()) cache.push_back(Polynomial::constant(dom, nvars, 1));
        while (cache.size() <= k) cache.push_back(cache.back() * values[j]);
        return cache[k];
    };
    for (const auto& [pe, c] : p.terms()) {
        Polynomial term = Polynomial::constant(dom, nvars, c);
        for (std::size_t j = 0; j < values.size() && !term.is_zero(); ++j)
            if (pe[j]) term = term * power(j, pe[j]);
        for (const auto& [e, v] : term.terms()) r.add_term(e, v);
    }
    return r;
}

namespace {

class Parser {
public:
    Parser(std::string_view text, Domain dom, std::size_t nvars) : s_(text), dom_(dom), nvars_(nvars) {}

    Polynomial run() {
        Polynomial p = expr();
        skip();
        if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }

    [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < at && i < s_.size(); ++i) {
            if (s_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw PolynomialParse(line, col, msg);
    }

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

    bool accept_word(std::string_view w) {
        skip();
        if (s_.substr(pos_, w.size()) == w) {
            std::size_t end = pos_ + w.size();
            if (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) return false;
            pos_ = end;
            return true;
        }
        return false;
    }

    mpz_class integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        return mpz_class(std::string(s_.substr(start, pos_ - start)));
    }

    Polynomial guarded(std::size_t at, auto&& op) {
        try {
            return op();
        } catch (const DomainError& e) {
            fail_at(at, e.what());
        }
    }

    Polynomial expr() {
        skip();
        std::size_t at = pos_;
        Polynomial acc(dom_, nvars_);
        if (accept('-')) {
            Polynomial t = term();
            acc = guarded(at, [&] { return acc - t; });
        } else {
            acc = term();
        }
        for (;;) {
            skip();
            at = pos_;
            if (accept('+')) {
                acc = acc + term();
            } else if (accept('-')) {
                Polynomial t = term();
                acc = guarded(at, [&] { return acc - t; });
            } else {
                return acc;
            }
        }
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (accept('*')) acc = acc * factor();
        return acc;
    }

    Polynomial factor() {
        Polynomial base = atom();
        if (accept('^')) {
            mpz_class k = integer();
            if (!k.fits_uint_p()) fail("exponent too large");
            return base.pow(static_cast<std::uint32_t>(k.get_ui()));
        }
        return base;
    }

    Polynomial atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (c == 'x') {
            ++pos_;
            std::size_t at = pos_;
            mpz_class idx = integer();
            if (!idx.fits_ulong_p() || idx.get_ui() >= nvars_)
                fail_at(at, "variable x" + idx.get_str() + " out of range for " + std::to_string(nvars_) + " variables");
            return Polynomial::variable(dom_, nvars_, idx.get_ui());
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t at = pos_;
            mpq_class value(integer());
            if (accept('/')) {
                mpz_class den = integer();
                if (den == 0) fail_at(at, "zero denominator");
                value = mpq_class(value.get_num(), den);
                value.canonicalize();
            }
            if (accept_word("mod")) {
                std::size_t pat = pos_;
                mpz_class p = integer();
                if (dom_.kind() != DomainKind::Modular || p != dom_.prime())
                    fail_at(pat, "modulus " + p.get_str() + " does not match domain " + dom_.tag());
            }
            try {
                return Polynomial::constant(dom_, nvars_, value);
            } catch (const DomainError& e) {
                fail_at(at, e.what());
            }
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    Domain dom_;
    std::size_t nvars_;
    std::size_t pos_ = 0;
};

} // namespace

Polynomial parse(std::string_view text, Domain dom, std::size_t nvars) { return Parser(text, dom, nvars).run(); }

} // namespace tangentcat::poly
