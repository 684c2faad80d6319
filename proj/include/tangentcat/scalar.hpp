#ifndef TANGENTCAT_SCALAR_HPP
#define TANGENTCAT_SCALAR_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tangentcat {

enum class DomainKind { Natural, Rational, Modular };

// Scalar domain of a polynomial category or of a linear map.
// Values are kept as mpq_class in canonical form: integers >= 0 for Natural,
// reduced fractions for Rational, integers in [0, p) for Modular.
class Domain {
public:
    Domain() = default;

    static Domain natural() { return Domain(DomainKind::Natural, 0); }
    static Domain rational() { return Domain(DomainKind::Rational, 0); }
    static Domain modular(unsigned long p);
    // Accepts "nat", "rational", "zp:<prime>".
    static Domain parse(std::string_view tag);

    DomainKind kind() const { return kind_; }
    unsigned long prime() const { return prime_; }
    bool is_field() const { return kind_ != DomainKind::Natural; }
    std::string tag() const;

    // Canonical value of an arbitrary rational in this domain.
    mpq_class reduce(const mpq_class& x) const;
    mpq_class from_integer(long k) const { return reduce(mpq_class(k)); }

    mpq_class add(const mpq_class& a, const mpq_class& b) const;
    mpq_class sub(const mpq_class& a, const mpq_class& b) const;
    mpq_class mul(const mpq_class& a, const mpq_class& b) const;
    mpq_class neg(const mpq_class& a) const;
    mpq_class inv(const mpq_class& a) const;

    bool operator==(const Domain& o) const { return kind_ == o.kind_ && prime_ == o.prime_; }
    bool operator!=(const Domain& o) const { return !(*this == o); }

private:
    Domain(DomainKind k, unsigned long p) : kind_(k), prime_(p) {}

    DomainKind kind_ = DomainKind::Rational;
    unsigned long prime_ = 0;
};

bool is_prime(unsigned long n);

class Scalar {
public:
    explicit Scalar(Domain d) : dom_(d), v_(0) {}
    Scalar(Domain d, long k) : dom_(d), v_(d.from_integer(k)) {}
    Scalar(Domain d, const mpq_class& v) : dom_(d), v_(d.reduce(v)) {}

    const Domain& domain() const { return dom_; }
    const mpq_class& value() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inverse() const;

    bool operator==(const Scalar& o) const { return dom_ == o.dom_ && v_ == o.v_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    void same_domain(const Scalar& o) const;

    Domain dom_;
    mpq_class v_;
};

// Decimal or a/b rendering of a canonical value.
std::string format_value(const mpq_class& v);

} // namespace tangentcat

#endif
