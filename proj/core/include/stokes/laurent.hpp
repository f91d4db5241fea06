#pragma once

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "stokes/gauss_rational.hpp"

namespace stokes::laurent {

using Complex = std::complex<double>;
using Exponents = std::vector<int>;
using TermMap = std::map<Exponents, GaussRational>;

/// Ordered, shared list of symbol names. Symbol `Z1` stands for the
/// variable exp(Z1/4), so an exponent e on it means exp(e·Z1/4).
using Variables = std::shared_ptr<const std::vector<std::string>>;

Variables make_variables(std::vector<std::string> names);

/// Union of two variable lists: `a` in order, then the names of `b` missing from `a`.
Variables merge_variables(const Variables& a, const Variables& b);

/// Exact multivariate Laurent polynomial with Gaussian-rational coefficients.
///
/// Terms are kept in a lexicographically ordered map with no zero coefficients,
/// which makes the representation canonical. Values are immutable in practice:
/// every operation returns a fresh object.
class LaurentScalar {
public:
    LaurentScalar();
    LaurentScalar(long c);
    LaurentScalar(const GaussRational& c);

    static LaurentScalar constant(Variables vars, const GaussRational& c);
    static LaurentScalar monomial(Variables vars, Exponents e, const GaussRational& c = 1);
    /// The variable `name` raised to `power`; throws if `name` is not in `vars`.
    static LaurentScalar variable(Variables vars, std::string_view name, int power = 1);
    /// Adopts a term map over `vars`, dropping zero coefficients.
    static LaurentScalar from_terms(Variables vars, TermMap terms);

    const Variables& variables() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Re-expresses the value over `superset`, which must contain every current variable.
    LaurentScalar over(const Variables& superset) const;

    LaurentScalar operator-() const;
    LaurentScalar& operator+=(const LaurentScalar& o);
    LaurentScalar& operator-=(const LaurentScalar& o);
    LaurentScalar& operator*=(const LaurentScalar& o);
    LaurentScalar& scale(const GaussRational& c);

    friend LaurentScalar operator+(LaurentScalar a, const LaurentScalar& b) { return a += b; }
    friend LaurentScalar operator-(LaurentScalar a, const LaurentScalar& b) { return a -= b; }
    friend LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b);
    friend bool operator==(const LaurentScalar& a, const LaurentScalar& b);

    /// Substitutes complex values for the variables themselves (not the coordinates).
    /// Throws on a missing assignment or on a zero value under a negative exponent.
    Complex evaluate(const std::map<std::string, Complex>& values) const;

    /// Substitutes coordinate values: each variable becomes exp(value/4).
    Complex evaluate_shear(const std::map<std::string, Complex>& coordinates) const;

    /// d/d(coordinate), where the variable is exp(coordinate/4).
    LaurentScalar shear_derivative(std::string_view coordinate) const;

    /// Replaces each source variable k by the monomial with exponents `images[k]` over `target`.
    LaurentScalar substitute_monomials(const Variables& target, const std::vector<Exponents>& images) const;

    /// Header line of variable names, then one `re/im : e1,...,ek` line per term.
    std::string serialize() const;
    static LaurentScalar parse(std::string_view text);

private:
    Variables vars_;
    TermMap terms_;

    void add_term(const Exponents& e, const GaussRational& c);
};

} // namespace stokes::laurent
