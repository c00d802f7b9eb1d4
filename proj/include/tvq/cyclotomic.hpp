#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <complex>
#include <gmpxx.h>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tvq {

class FieldContext;

// Element of Q(x) / (Phi_{2r}(x)), stored as an integer numerator vector over a common
// positive denominator, always reduced: gcd(den, num...) = 1. The field generator x is a
// primitive 2r-th root of unity exp(i pi / r); the Turaev-Viro parameter zeta is x^q.
class CycElement {
  public:
    CycElement() = default;

    const FieldContext *context() const { return ctx_; }
    const std::vector<mpz_class> &numerators() const { return num_; }
    const mpz_class &denominator() const { return den_; }
    mpq_class coefficient(std::size_t k) const {
        mpq_class c(num_[k], den_);
        c.canonicalize();
        return c;
    }

    bool is_zero() const {
        for (const auto &c : num_)
            if (c != 0)
                return false;
        return true;
    }
    // True if the element lies in Q (all non-constant coefficients vanish).
    bool is_rational() const {
        for (std::size_t k = 1; k < num_.size(); ++k)
            if (num_[k] != 0)
                return false;
        return true;
    }

    CycElement &operator+=(const CycElement &b);
    CycElement &operator-=(const CycElement &b);
    CycElement &operator*=(const CycElement &b);
    friend CycElement operator+(CycElement a, const CycElement &b) { return a += b; }
    friend CycElement operator-(CycElement a, const CycElement &b) { return a -= b; }
    friend CycElement operator*(CycElement a, const CycElement &b) { return a *= b; }
    CycElement operator-() const {
        CycElement out = *this;
        for (auto &c : out.num_)
            c = -c;
        return out;
    }

    CycElement inverse() const;
    // Complex conjugate: x -> x^{-1}.
    CycElement conjugate() const;

    friend bool operator==(const CycElement &a, const CycElement &b) {
        return a.ctx_ == b.ctx_ && a.den_ == b.den_ && a.num_ == b.num_;
    }

  private:
    friend class FieldContext;
    CycElement(const FieldContext *ctx, std::vector<mpz_class> num, mpz_class den)
        : ctx_(ctx), num_(std::move(num)), den_(std::move(den)) {
        normalise();
    }
    void normalise();
    void check_same(const CycElement &b) const {
        if (ctx_ != b.ctx_)
            throw std::invalid_argument("CycElement: operands belong to different fields");
    }

    const FieldContext *ctx_ = nullptr;
    std::vector<mpz_class> num_;
    mpz_class den_{1};
};

// Arithmetic context for Q(zeta_{2r}) with zeta = x^q. Immutable after construction and safe
// to share between threads; elements keep a raw pointer to it, so it must outlive them.
class FieldContext {
  public:
    FieldContext(int r, int q) : r_(r), q_(q) {
        if (r < 3)
            throw std::invalid_argument("field: r must be at least 3");
        if (q <= 0 || q >= 2 * r)
            throw std::invalid_argument("field: q must satisfy 0 < q < 2r");
        if (std::gcd(r, q) != 1)
            throw std::invalid_argument("field: gcd(r, q) must be 1");
        phi_ = cyclotomic_polynomial(2 * r);
        degree_ = static_cast<int>(phi_.size()) - 1;
        // x^m mod Phi for 0 <= m < 2r
        powers_.assign(static_cast<std::size_t>(2 * r), std::vector<long>(static_cast<std::size_t>(degree_), 0));
        std::vector<long> cur(static_cast<std::size_t>(degree_), 0);
        cur[0] = 1;
        for (int m = 0; m < 2 * r; ++m) {
            powers_[static_cast<std::size_t>(m)] = cur;
            // multiply by x and reduce with the monic Phi
            long top = cur[static_cast<std::size_t>(degree_ - 1)];
            for (int k = degree_ - 1; k > 0; --k)
                cur[static_cast<std::size_t>(k)] = cur[static_cast<std::size_t>(k - 1)];
            cur[0] = 0;
            for (int k = 0; k < degree_; ++k)
                cur[static_cast<std::size_t>(k)] -= top * phi_[static_cast<std::size_t>(k)];
        }
        build_caches();
    }

    FieldContext(const FieldContext &) = delete;
    FieldContext &operator=(const FieldContext &) = delete;

    int r() const { return r_; }
    int q() const { return q_; }
    int degree() const { return degree_; }
    // Coefficients of Phi_{2r}, constant term first.
    const std::vector<long> &cyclotomic() const { return phi_; }

    CycElement zero() const { return from_integer(0); }
    CycElement one() const { return from_integer(1); }
    CycElement from_integer(long v) const { return from_rational(mpq_class(v)); }
    CycElement from_rational(const mpq_class &v) const {
        std::vector<mpz_class> num(static_cast<std::size_t>(degree_), 0);
        num[0] = v.get_num();
        return CycElement(this, std::move(num), v.get_den());
    }
    CycElement from_coefficients(const std::vector<mpq_class> &coeffs) const {
        if (static_cast<int>(coeffs.size()) != degree_)
            throw std::invalid_argument("field: coefficient vector has the wrong length");
        mpz_class den = 1;
        for (const auto &c : coeffs)
            den = lcm(den, mpz_class(c.get_den()));
        std::vector<mpz_class> num(coeffs.size());
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            num[k] = coeffs[k].get_num() * (den / coeffs[k].get_den());
        return CycElement(this, std::move(num), den);
    }
    // x^m for any integer m (x is the primitive 2r-th root exp(i pi / r)).
    CycElement generator_power(long m) const {
        long e = ((m % (2 * r_)) + 2 * r_) % (2 * r_);
        const auto &p = powers_[static_cast<std::size_t>(e)];
        std::vector<mpz_class> num(p.begin(), p.end());
        return CycElement(this, std::move(num), 1);
    }
    CycElement zeta_power(long k) const { return generator_power(static_cast<long>(q_) * k); }
    CycElement zeta() const { return zeta_power(1); }

    // [i] = (zeta^i - zeta^-i) / (zeta - zeta^-1) = zeta^{i-1} + zeta^{i-3} + ... + zeta^{1-i}; [0] = 1.
    CycElement quantum_integer(int i) const {
        if (i < 0)
            throw std::invalid_argument("quantum_integer: negative argument");
        if (i == 0)
            return one();
        CycElement sum = zero();
        for (int k = 0; k < i; ++k)
            sum += zeta_power(i - 1 - 2 * k);
        return sum;
    }

    // [i]! = [i][i-1]...[0]; zero for i >= r.
    const CycElement &bracket_factorial(int i) const {
        if (i < 0)
            throw std::invalid_argument("bracket_factorial: negative argument");
        return i < r_ ? factorials_[static_cast<std::size_t>(i)] : zero_;
    }
    // 1 / [i]! for 0 <= i < r.
    const CycElement &inverse_bracket_factorial(int i) const {
        if (i < 0 || i >= r_)
            throw std::invalid_argument("inverse_bracket_factorial: argument must lie in 0..r-1");
        return inverseFactorials_[static_cast<std::size_t>(i)];
    }

    // |zeta - zeta^-1|^2 / (2r) = (2 - zeta^2 - zeta^-2) / (2r).
    const CycElement &vertex_weight() const { return vertexWeight_; }

    // Numeric value at x = exp(i pi / r), for display only.
    std::complex<double> to_complex(const CycElement &a) const {
        std::complex<double> acc = 0;
        const double pi = 3.14159265358979323846;
        for (std::size_t k = 0; k < a.numerators().size(); ++k)
            acc += a.coefficient(k).get_d() * std::polar(1.0, pi * static_cast<double>(k) / r_);
        return acc;
    }

    // Decimal strings of the real and imaginary parts with `digits` significant digits.
    std::pair<std::string, std::string> numeric_eval(const CycElement &a, int digits) const {
        if (digits < 1)
            throw std::invalid_argument("numeric_eval: digits must be positive");
        using boost::multiprecision::mpfr_float;
        mpfr_float::default_precision(static_cast<unsigned>(digits + 20));
        mpfr_float re = 0, im = 0;
        const mpfr_float piConst = boost::math::constants::pi<mpfr_float>();
        for (std::size_t k = 0; k < a.numerators().size(); ++k) {
            if (a.numerators()[k] == 0)
                continue;
            mpfr_float c = mpfr_float(a.numerators()[k].get_mpz_t()) / mpfr_float(a.denominator().get_mpz_t());
            mpfr_float angle = piConst * static_cast<long>(k) / r_;
            re += c * cos(angle);
            im += c * sin(angle);
        }
        // flush values below the working precision to exact zero
        mpfr_float eps = pow(mpfr_float(10), -(digits + 10));
        if (abs(re) < eps)
            re = 0;
        if (abs(im) < eps)
            im = 0;
        return {re.str(digits, std::ios_base::fmtflags{}), im.str(digits, std::ios_base::fmtflags{})};
    }

    // Coefficients of the n-th cyclotomic polynomial, constant term first.
    static std::vector<long> cyclotomic_polynomial(int n) {
        // x^n - 1 divided by Phi_d for every proper divisor d
        std::vector<long> poly(static_cast<std::size_t>(n + 1), 0);
        poly[0] = -1;
        poly[static_cast<std::size_t>(n)] = 1;
        for (int d = 1; d < n; ++d) {
            if (n % d)
                continue;
            std::vector<long> divisor = cyclotomic_polynomial(d);
            // exact division by a monic polynomial
            std::size_t dd = divisor.size() - 1;
            std::vector<long> quotient(poly.size() - dd, 0);
            for (std::size_t k = poly.size() - 1; k + 1 > dd; --k) {
                long coef = poly[k];
                quotient[k - dd] = coef;
                for (std::size_t j = 0; j <= dd; ++j)
                    poly[k - dd + j] -= coef * divisor[j];
                if (k == dd)
                    break;
            }
            poly = std::move(quotient);
        }
        return poly;
    }

  private:
    friend class CycElement;

    void build_caches() {
        zero_ = zero();
        factorials_.clear();
        inverseFactorials_.clear();
        CycElement acc = one();
        factorials_.push_back(acc);
        for (int i = 1; i < r_; ++i) {
            acc *= quantum_integer(i);
            factorials_.push_back(acc);
        }
        for (const auto &f : factorials_)
            inverseFactorials_.push_back(f.inverse());
        vertexWeight_ = (from_integer(2) - zeta_power(2) - zeta_power(-2)) * from_rational(mpq_class(1, 2 * r_));
    }

    int r_;
    int q_;
    int degree_ = 0;
    std::vector<long> phi_;
    std::vector<std::vector<long>> powers_;
    CycElement zero_;
    std::vector<CycElement> factorials_;
    std::vector<CycElement> inverseFactorials_;
    CycElement vertexWeight_;
};

inline void CycElement::normalise() {
    if (den_ < 0) {
        den_ = -den_;
        for (auto &c : num_)
            c = -c;
    }
    if (den_ == 1)
        return;
    mpz_class g = den_;
    for (const auto &c : num_) {
        if (g == 1)
            break;
        if (c != 0)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    if (g != 1) {
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
        for (auto &c : num_)
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    }
}

inline CycElement &CycElement::operator+=(const CycElement &b) {
    check_same(b);
    if (den_ == b.den_) {
        for (std::size_t k = 0; k < num_.size(); ++k)
            num_[k] += b.num_[k];
    } else {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), den_.get_mpz_t(), b.den_.get_mpz_t());
        mpz_class fa = b.den_ / g;
        mpz_class fb = den_ / g;
        for (std::size_t k = 0; k < num_.size(); ++k) {
            num_[k] *= fa;
            mpz_addmul(num_[k].get_mpz_t(), b.num_[k].get_mpz_t(), fb.get_mpz_t());
        }
        den_ *= fa;
    }
    normalise();
    return *this;
}

inline CycElement &CycElement::operator-=(const CycElement &b) { return *this += -b; }

inline CycElement &CycElement::operator*=(const CycElement &b) {
    check_same(b);
    const std::size_t d = num_.size();
    std::vector<mpz_class> prod(2 * d - 1, 0);
    for (std::size_t i = 0; i < d; ++i) {
        if (num_[i] == 0)
            continue;
        for (std::size_t j = 0; j < d; ++j)
            if (b.num_[j] != 0)
                mpz_addmul(prod[i + j].get_mpz_t(), num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
    }
    std::vector<mpz_class> out(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(d));
    for (std::size_t k = d; k < prod.size(); ++k) {
        if (prod[k] == 0)
            continue;
        const auto &red = ctx_->powers_[k];
        for (std::size_t m = 0; m < d; ++m)
            if (red[m] > 0)
                mpz_addmul_ui(out[m].get_mpz_t(), prod[k].get_mpz_t(), static_cast<unsigned long>(red[m]));
            else if (red[m] < 0)
                mpz_submul_ui(out[m].get_mpz_t(), prod[k].get_mpz_t(), static_cast<unsigned long>(-red[m]));
    }
    num_ = std::move(out);
    den_ *= b.den_;
    normalise();
    return *this;
}

inline CycElement CycElement::conjugate() const {
    const std::size_t d = num_.size();
    const int order = 2 * ctx_->r_;
    std::vector<mpz_class> out(d, 0);
    for (std::size_t k = 0; k < d; ++k) {
        if (num_[k] == 0)
            continue;
        const auto &p = ctx_->powers_[static_cast<std::size_t>((order - static_cast<int>(k)) % order)];
        for (std::size_t m = 0; m < d; ++m)
            if (p[m] != 0)
                out[m] += num_[k] * p[m];
    }
    return CycElement(ctx_, std::move(out), den_);
}

namespace detail {

using QPoly = std::vector<mpq_class>; // constant term first

inline void trim(QPoly &p) {
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

inline QPoly poly_sub_mul(const QPoly &a, const QPoly &b, const QPoly &c) {
    // a - b * c
    QPoly out = a;
    if (!b.empty() && !c.empty()) {
        if (out.size() < b.size() + c.size() - 1)
            out.resize(b.size() + c.size() - 1, 0);
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = 0; j < c.size(); ++j)
                out[i + j] -= b[i] * c[j];
    }
    trim(out);
    return out;
}

inline void poly_divmod(QPoly a, const QPoly &b, QPoly &quot, QPoly &rem) {
    trim(a);
    quot.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    while (!a.empty() && a.size() >= b.size()) {
        std::size_t shift = a.size() - b.size();
        mpq_class coef = a.back() / b.back();
        quot[shift] = coef;
        for (std::size_t j = 0; j < b.size(); ++j)
            a[shift + j] -= coef * b[j];
        trim(a);
    }
    rem = std::move(a);
}

} // namespace detail

// Extended Euclid in Q[x] against Phi_{2r}.
inline CycElement CycElement::inverse() const {
    if (is_zero())
        throw std::domain_error("CycElement: inverse of zero");
    using detail::QPoly;
    QPoly a(num_.size());
    for (std::size_t k = 0; k < num_.size(); ++k)
        a[k] = coefficient(k);
    detail::trim(a);
    QPoly m(ctx_->phi_.begin(), ctx_->phi_.end());
    // invariant: s0 * a == r0, s1 * a == r1 (mod m)
    QPoly r0 = m, r1 = a, s0, s1{mpq_class(1)};
    while (r1.size() > 1) {
        QPoly quot, rem;
        detail::poly_divmod(r0, r1, quot, rem);
        QPoly s2 = detail::poly_sub_mul(s0, quot, s1);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty())
        throw std::domain_error("CycElement: element is not invertible");
    // s1 * a == r1[0] (constant)
    QPoly quot, sRed;
    detail::poly_divmod(s1, m, quot, sRed);
    std::vector<mpq_class> coeffs(num_.size(), 0);
    for (std::size_t k = 0; k < sRed.size(); ++k)
        coeffs[k] = sRed[k] / r1[0];
    return ctx_->from_coefficients(coeffs);
}

inline std::ostream &operator<<(std::ostream &os, const CycElement &a) {
    os << '[';
    for (std::size_t k = 0; k < a.numerators().size(); ++k)
        os << (k ? ", " : "") << a.coefficient(k).get_str();
    return os << ']';
}

} // namespace tvq
