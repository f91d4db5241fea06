#include "stokes/gauss_rational.hpp"

#include <stdexcept>

namespace stokes::laurent {

GaussRational::GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

GaussRational GaussRational::operator-() const {
    return GaussRational(-re_, -im_);
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
    if (o.is_zero()) {
        throw std::domain_error("GaussRational: division by zero");
    }
    mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
    mpq_class re = (re_ * o.re_ + im_ * o.im_) / norm;
    mpq_class im = (im_ * o.re_ - re_ * o.im_) / norm;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

namespace {

std::string part_to_string(const mpq_class& q) {
    if (q.get_den() == 1) {
        return q.get_num().get_str();
    }
    return "(" + q.get_str() + ")";
}

mpq_class parse_part(const std::string& s) {
    std::string body = s;
    if (!body.empty() && body.front() == '(') {
        if (body.back() != ')') {
            throw std::invalid_argument("GaussRational: unbalanced parenthesis in '" + s + "'");
        }
        body = body.substr(1, body.size() - 2);
    }
    mpq_class q;
    if (body.empty() || q.set_str(body, 10) != 0) {
        throw std::invalid_argument("GaussRational: bad rational '" + s + "'");
    }
    q.canonicalize();
    return q;
}

} // namespace

std::string GaussRational::to_string() const {
    return part_to_string(re_) + "/" + part_to_string(im_);
}

GaussRational GaussRational::parse(const std::string& text) {
    // the separating slash is the first one outside parentheses
    int depth = 0;
    for (std::size_t k = 0; k < text.size(); ++k) {
        char c = text[k];
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        else if (c == '/' && depth == 0) {
            return GaussRational(parse_part(text.substr(0, k)), parse_part(text.substr(k + 1)));
        }
    }
    throw std::invalid_argument("GaussRational: expected 're/im', got '" + text + "'");
}

} // namespace stokes::laurent
