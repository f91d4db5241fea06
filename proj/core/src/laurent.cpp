#include "stokes/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace stokes::laurent {

namespace {

const Variables& no_variables() {
    static const Variables empty = std::make_shared<const std::vector<std::string>>();
    return empty;
}

int index_of(const std::vector<std::string>& names, std::string_view name) {
    auto it = std::find(names.begin(), names.end(), name);
    return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        out.emplace_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

} // namespace

Variables make_variables(std::vector<std::string> names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        for (std::size_t j = i + 1; j < names.size(); ++j) {
            if (names[i] == names[j]) {
                throw std::invalid_argument("duplicate variable name '" + names[i] + "'");
            }
        }
    }
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

Variables merge_variables(const Variables& a, const Variables& b) {
    if (a == b || b->empty()) return a;
    if (a->empty()) return b;
    std::vector<std::string> names = *a;
    bool grew = false;
    for (const auto& name : *b) {
        if (index_of(*a, name) < 0) {
            names.push_back(name);
            grew = true;
        }
    }
    if (!grew) return a;
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

LaurentScalar::LaurentScalar() : vars_(no_variables()) {}

LaurentScalar::LaurentScalar(long c) : LaurentScalar(GaussRational(c)) {}

LaurentScalar::LaurentScalar(const GaussRational& c) : vars_(no_variables()) {
    if (!c.is_zero()) terms_.emplace(Exponents{}, c);
}

LaurentScalar LaurentScalar::constant(Variables vars, const GaussRational& c) {
    return monomial(std::move(vars), {}, c);
}

LaurentScalar LaurentScalar::monomial(Variables vars, Exponents e, const GaussRational& c) {
    LaurentScalar out;
    out.vars_ = std::move(vars);
    if (e.empty()) e.assign(out.vars_->size(), 0);
    if (e.size() != out.vars_->size()) {
        throw std::invalid_argument("monomial: exponent length does not match variable count");
    }
    if (!c.is_zero()) out.terms_.emplace(std::move(e), c);
    return out;
}

LaurentScalar LaurentScalar::variable(Variables vars, std::string_view name, int power) {
    int k = index_of(*vars, name);
    if (k < 0) throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
    Exponents e(vars->size(), 0);
    e[k] = power;
    return monomial(std::move(vars), std::move(e));
}

LaurentScalar LaurentScalar::from_terms(Variables vars, TermMap terms) {
    LaurentScalar out;
    out.vars_ = std::move(vars);
    for (auto it = terms.begin(); it != terms.end();) {
        if (it->first.size() != out.vars_->size()) {
            throw std::invalid_argument("from_terms: exponent length does not match variable count");
        }
        it = it->second.is_zero() ? terms.erase(it) : std::next(it);
    }
    out.terms_ = std::move(terms);
    return out;
}

LaurentScalar LaurentScalar::over(const Variables& superset) const {
    if (superset == vars_) return *this;
    std::vector<int> pos(vars_->size());
    for (std::size_t k = 0; k < vars_->size(); ++k) {
        pos[k] = index_of(*superset, (*vars_)[k]);
        if (pos[k] < 0) {
            throw std::invalid_argument("over: variable '" + (*vars_)[k] + "' missing from target list");
        }
    }
    LaurentScalar out;
    out.vars_ = superset;
    for (const auto& [e, c] : terms_) {
        Exponents f(superset->size(), 0);
        for (std::size_t k = 0; k < e.size(); ++k) f[pos[k]] = e[k];
        out.terms_.emplace(std::move(f), c);
    }
    return out;
}

void LaurentScalar::add_term(const Exponents& e, const GaussRational& c) {
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LaurentScalar LaurentScalar::operator-() const {
    LaurentScalar out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

LaurentScalar& LaurentScalar::operator+=(const LaurentScalar& o) {
    if (&o == this) return scale(2);
    Variables common = merge_variables(vars_, o.vars_);
    if (common != vars_) *this = over(common);
    if (o.vars_ == common) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
    } else {
        const LaurentScalar rhs = o.over(common);
        for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    }
    return *this;
}

LaurentScalar& LaurentScalar::operator-=(const LaurentScalar& o) {
    return *this += -o;
}

LaurentScalar& LaurentScalar::scale(const GaussRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b) {
    Variables common = merge_variables(a.vars_, b.vars_);
    const LaurentScalar lhs = a.over(common);
    const LaurentScalar rhs = b.over(common);
    LaurentScalar out;
    out.vars_ = common;
    Exponents e(common->size());
    for (const auto& [ea, ca] : lhs.terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

LaurentScalar& LaurentScalar::operator*=(const LaurentScalar& o) {
    *this = *this * o;
    return *this;
}

bool operator==(const LaurentScalar& a, const LaurentScalar& b) {
    if (a.vars_ == b.vars_ || *a.vars_ == *b.vars_) return a.terms_ == b.terms_;
    Variables common = merge_variables(a.vars_, b.vars_);
    return a.over(common).terms_ == b.over(common).terms_;
}

Complex LaurentScalar::evaluate(const std::map<std::string, Complex>& values) const {
    const std::size_t m = vars_->size();
    std::vector<Complex> x(m);
    for (std::size_t k = 0; k < m; ++k) {
        auto it = values.find((*vars_)[k]);
        if (it == values.end()) {
            throw std::invalid_argument("evaluate: no value for variable '" + (*vars_)[k] + "'");
        }
        x[k] = it->second;
    }
    Complex sum = 0.0;
    for (const auto& [e, c] : terms_) {
        Complex term = c.to_complex();
        for (std::size_t k = 0; k < m; ++k) {
            if (e[k] == 0) continue;
            if (x[k] == Complex(0.0) && e[k] < 0) {
                throw std::domain_error("evaluate: zero value for variable '" + (*vars_)[k] +
                                        "' under a negative exponent");
            }
            term *= std::pow(x[k], e[k]);
        }
        sum += term;
    }
    return sum;
}

Complex LaurentScalar::evaluate_shear(const std::map<std::string, Complex>& coordinates) const {
    const std::size_t m = vars_->size();
    std::vector<Complex> z(m);
    for (std::size_t k = 0; k < m; ++k) {
        auto it = coordinates.find((*vars_)[k]);
        if (it == coordinates.end()) {
            throw std::invalid_argument("evaluate_shear: no value for coordinate '" + (*vars_)[k] + "'");
        }
        z[k] = it->second;
    }
    Complex sum = 0.0;
    for (const auto& [e, c] : terms_) {
        Complex exponent = 0.0;
        for (std::size_t k = 0; k < m; ++k) exponent += static_cast<double>(e[k]) * z[k];
        sum += c.to_complex() * std::exp(exponent / 4.0);
    }
    return sum;
}

LaurentScalar LaurentScalar::shear_derivative(std::string_view coordinate) const {
    int k = index_of(*vars_, coordinate);
    if (k < 0) {
        throw std::invalid_argument("shear_derivative: unknown coordinate '" + std::string(coordinate) + "'");
    }
    LaurentScalar out;
    out.vars_ = vars_;
    for (const auto& [e, c] : terms_) {
        if (e[k] == 0) continue;
        out.terms_.emplace(e, c * GaussRational(mpq_class(e[k], 4)));
    }
    return out;
}

LaurentScalar LaurentScalar::substitute_monomials(const Variables& target,
                                                  const std::vector<Exponents>& images) const {
    if (images.size() != vars_->size()) {
        throw std::invalid_argument("substitute_monomials: one image per source variable required");
    }
    for (const auto& img : images) {
        if (img.size() != target->size()) {
            throw std::invalid_argument("substitute_monomials: image length does not match target");
        }
    }
    LaurentScalar out;
    out.vars_ = target;
    Exponents f(target->size());
    for (const auto& [e, c] : terms_) {
        std::fill(f.begin(), f.end(), 0);
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            for (std::size_t t = 0; t < f.size(); ++t) f[t] += e[k] * images[k][t];
        }
        out.add_term(f, c);
    }
    return out;
}

std::string LaurentScalar::serialize() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < vars_->size(); ++k) {
        if (k) os << ',';
        os << (*vars_)[k];
    }
    os << '\n';
    for (const auto& [e, c] : terms_) {
        os << c.to_string() << " : ";
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (k) os << ',';
            os << e[k];
        }
        os << '\n';
    }
    return os.str();
}

LaurentScalar LaurentScalar::parse(std::string_view text) {
    std::vector<std::string> lines = split(text, '\n');
    if (lines.empty()) throw std::invalid_argument("parse: missing header line");
    std::vector<std::string> names;
    if (!lines[0].empty()) names = split(lines[0], ',');
    LaurentScalar out;
    out.vars_ = make_variables(std::move(names));
    for (std::size_t li = 1; li < lines.size(); ++li) {
        std::string_view line = trim(lines[li]);
        if (line.empty()) continue;
        std::size_t colon = line.find(':');
        if (colon == std::string_view::npos) {
            throw std::invalid_argument("parse: term line without ':' -> " + std::string(line));
        }
        GaussRational c = GaussRational::parse(std::string(trim(line.substr(0, colon))));
        std::string_view rest = trim(line.substr(colon + 1));
        Exponents e;
        if (!rest.empty()) {
            for (const auto& tok : split(rest, ',')) e.push_back(std::stoi(tok));
        }
        if (e.size() != out.vars_->size()) {
            throw std::invalid_argument("parse: exponent count mismatch -> " + std::string(line));
        }
        out.add_term(e, c);
    }
    return out;
}

} // namespace stokes::laurent
