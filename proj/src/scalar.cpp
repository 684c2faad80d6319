#include "tangentcat/scalar.hpp"

#include "tangentcat/errors.hpp"

#include <charconv>

namespace tangentcat {

bool is_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Domain Domain::modular(unsigned long p) {
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    return Domain(DomainKind::Modular, p);
}

Domain Domain::parse(std::string_view tag) {
    if (tag == "nat" || tag == "natural") return natural();
    if (tag == "rational" || tag == "q") return rational();
    if (tag.rfind("zp:", 0) == 0) {
        auto digits = tag.substr(3);
        unsigned long p = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
        if (ec != std::errc() || ptr != digits.data() + digits.size())
            throw DomainError("bad modulus in domain tag '" + std::string(tag) + "'");
        return modular(p);
    }
    throw DomainError("unknown domain tag '" + std::string(tag) + "'");
}

std::string Domain::tag() const {
    switch (kind_) {
    case DomainKind::Natural: return "nat";
    case DomainKind::Rational: return "rational";
    case DomainKind::Modular: return "zp:" + std::to_string(prime_);
    }
    return "?";
}

mpq_class Domain::reduce(const mpq_class& x) const {
    switch (kind_) {
    case DomainKind::Natural:
        if (x.get_den() != 1 || x < 0)
            throw DomainError("value " + format_value(x) + " is not a natural number");
        return x;
    case DomainKind::Rational: {
        mpq_class r(x);
        r.canonicalize();
        return r;
    }
    case DomainKind::Modular: {
        mpz_class p(prime_);
        mpz_class num = x.get_num() % p;
        mpz_class den = x.get_den() % p;
        if (den < 0) den += p;
        if (den == 0) throw DomainError("denominator divisible by " + std::to_string(prime_));
        mpz_class den_inv;
        mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        mpz_class r = (num * den_inv) % p;
        if (r < 0) r += p;
        return mpq_class(r);
    }
    }
    return x;
}

mpq_class Domain::add(const mpq_class& a, const mpq_class& b) const {
    if (kind_ == DomainKind::Modular) {
        mpz_class r = a.get_num() + b.get_num();
        if (r >= prime_) r -= prime_;
        return mpq_class(r);
    }
    return a + b;
}

mpq_class Domain::sub(const mpq_class& a, const mpq_class& b) const {
    if (kind_ == DomainKind::Natural && b > a)
        throw DomainError("subtraction leaves the natural numbers");
    if (kind_ == DomainKind::Modular) {
        mpz_class r = a.get_num() - b.get_num();
        if (r < 0) r += prime_;
        return mpq_class(r);
    }
    return a - b;
}

mpq_class Domain::mul(const mpq_class& a, const mpq_class& b) const {
    if (kind_ == DomainKind::Modular) {
        mpz_class r = (a.get_num() * b.get_num()) % prime_;
        return mpq_class(r);
    }
    return a * b;
}

mpq_class Domain::neg(const mpq_class& a) const { return sub(mpq_class(0), a); }

mpq_class Domain::inv(const mpq_class& a) const {
    if (a == 0) throw DomainError("division by zero");
    if (kind_ == DomainKind::Natural) {
        if (a != 1) throw DomainError("no inverse in the natural numbers");
        return a;
    }
    return reduce(1 / a);
}

std::string format_value(const mpq_class& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

void Scalar::same_domain(const Scalar& o) const {
    if (dom_ != o.dom_) throw DomainMismatch(dom_.tag() + " vs " + o.dom_.tag());
}

Scalar Scalar::operator+(const Scalar& o) const {
    same_domain(o);
    return Scalar(dom_, dom_.add(v_, o.v_));
}

Scalar Scalar::operator-(const Scalar& o) const {
    same_domain(o);
    return Scalar(dom_, dom_.sub(v_, o.v_));
}

Scalar Scalar::operator*(const Scalar& o) const {
    same_domain(o);
    return Scalar(dom_, dom_.mul(v_, o.v_));
}

Scalar Scalar::operator/(const Scalar& o) const {
    same_domain(o);
    return Scalar(dom_, dom_.mul(v_, dom_.inv(o.v_)));
}

Scalar Scalar::operator-() const { return Scalar(dom_, dom_.neg(v_)); }

Scalar Scalar::inverse() const { return Scalar(dom_, dom_.inv(v_)); }

std::string Scalar::to_string() const { return format_value(v_); }

} // namespace tangentcat
