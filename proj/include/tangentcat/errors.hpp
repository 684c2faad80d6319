#ifndef TANGENTCAT_ERRORS_HPP
#define TANGENTCAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tangentcat {

class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define TANGENTCAT_ERROR(Name)                                                   \
    class Name : public Error {                                                  \
    public:                                                                      \
        explicit Name(const std::string& what) : Error(#Name, what) {}          \
    }

TANGENTCAT_ERROR(RelationNotEquivalence);
TANGENTCAT_ERROR(ProductUndefined);
TANGENTCAT_ERROR(CompositionMismatch);
TANGENTCAT_ERROR(InvalidWeilMorphism);
TANGENTCAT_ERROR(ArityMismatch);
TANGENTCAT_ERROR(DomainMismatch);
TANGENTCAT_ERROR(DomainError);
TANGENTCAT_ERROR(PullbackUnavailable);
TANGENTCAT_ERROR(NonLinearComparison);
TANGENTCAT_ERROR(ProviderBoundTooSmall);
TANGENTCAT_ERROR(NotOverBase);
TANGENTCAT_ERROR(NotAdditive);
TANGENTCAT_ERROR(NotADifferentialFunctor);
TANGENTCAT_ERROR(ManifestParse);
TANGENTCAT_ERROR(UnknownBuiltin);

#undef TANGENTCAT_ERROR

// Polynomial grammar errors carry a source position.
class PolynomialParse : public Error {
public:
    PolynomialParse(std::size_t line, std::size_t column, const std::string& what)
        : Error("PolynomialParse",
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace tangentcat

#endif
