#pragma once

#include "rational.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qca {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Exponent lattice for scalar monomials. The four dimensions are interpreted
// per backend:
//   multiplicative:  q^(e0/4) * q^(c*e1/4) * q^(c1*e2/4) * q^(c2*e3/4)
//   additive:        H^e0 * Hc^e1 * exp(hbar*e2/16) * exp(c*hbar*e3/16)
// where H = i*hbar and c, c1, c2 are formal central symbols.
struct Exp {
    std::array<int, 4> e{0, 0, 0, 0};

    friend bool operator==(const Exp& a, const Exp& b) { return a.e == b.e; }
    friend auto operator<=>(const Exp& a, const Exp& b) { return a.e <=> b.e; }
    Exp operator+(const Exp& o) const {
        Exp r;
        for (int i = 0; i < 4; ++i) r.e[i] = e[i] + o.e[i];
        return r;
    }
    Exp operator-(const Exp& o) const {
        Exp r;
        for (int i = 0; i < 4; ++i) r.e[i] = e[i] - o.e[i];
        return r;
    }
    Exp operator-() const {
        Exp r;
        for (int i = 0; i < 4; ++i) r.e[i] = -e[i];
        return r;
    }
    bool isZero() const { return e == std::array<int, 4>{0, 0, 0, 0}; }
};

// Sparse Laurent polynomial over Q with exponents in the lattice above.
// Terms are kept sorted ascending by exponent with nonzero coefficients.
class SPoly {
public:
    using Term = std::pair<Exp, Rational>;

    SPoly() = default;
    static SPoly zero() { return SPoly(); }
    static SPoly one() { return monomial(Exp{}, 1); }
    static SPoly monomial(const Exp& x, const Rational& c) {
        SPoly p;
        if (c != 0) p.t_.push_back({x, c});
        return p;
    }
    static SPoly constant(const Rational& c) { return monomial(Exp{}, c); }

    const std::vector<Term>& terms() const { return t_; }
    bool isZero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }

    bool isConstant() const {
        return t_.empty() || (t_.size() == 1 && t_[0].first.isZero());
    }
    bool isMonomial() const { return t_.size() == 1; }
    bool isOne() const {
        return t_.size() == 1 && t_[0].first.isZero() && t_[0].second == 1;
    }

    friend bool operator==(const SPoly& a, const SPoly& b) { return a.t_ == b.t_; }
    friend std::weak_ordering operator<=>(const SPoly& a, const SPoly& b) {
        return std::weak_ordering(a.t_ <=> b.t_);
    }

    SPoly operator-() const {
        SPoly r = *this;
        for (auto& [x, c] : r.t_) c = -c;
        return r;
    }

    friend SPoly operator+(const SPoly& a, const SPoly& b) {
        SPoly r;
        r.t_.reserve(a.t_.size() + b.t_.size());
        std::size_t i = 0, j = 0;
        while (i < a.t_.size() && j < b.t_.size()) {
            if (a.t_[i].first < b.t_[j].first) {
                r.t_.push_back(a.t_[i++]);
            } else if (b.t_[j].first < a.t_[i].first) {
                r.t_.push_back(b.t_[j++]);
            } else {
                Rational c = a.t_[i].second + b.t_[j].second;
                if (c != 0) r.t_.push_back({a.t_[i].first, c});
                ++i;
                ++j;
            }
        }
        for (; i < a.t_.size(); ++i) r.t_.push_back(a.t_[i]);
        for (; j < b.t_.size(); ++j) r.t_.push_back(b.t_[j]);
        return r;
    }
    friend SPoly operator-(const SPoly& a, const SPoly& b) { return a + (-b); }

    friend SPoly operator*(const SPoly& a, const SPoly& b) {
        if (a.isZero() || b.isZero()) return SPoly();
        std::map<Exp, Rational> acc;
        for (const auto& [xa, ca] : a.t_)
            for (const auto& [xb, cb] : b.t_) acc[xa + xb] += ca * cb;
        SPoly r;
        for (auto& [x, c] : acc)
            if (c != 0) r.t_.push_back({x, c});
        return r;
    }

    SPoly mulMonomial(const Exp& x, const Rational& c) const {
        SPoly r;
        if (c == 0) return r;
        r.t_.reserve(t_.size());
        for (const auto& [xe, ce] : t_) r.t_.push_back({xe + x, ce * c});
        return r;
    }
    SPoly scaled(const Rational& c) const { return mulMonomial(Exp{}, c); }

    Exp minExp() const {
        if (t_.empty()) return Exp{};
        Exp m = t_.front().first;
        for (const auto& [x, c] : t_)
            for (int i = 0; i < 4; ++i) m.e[i] = std::min(m.e[i], x.e[i]);
        return m;
    }
    // Leading term under the lattice order (lex-max exponent).
    const Term& leading() const {
        if (t_.empty()) throw Error("leading term of zero polynomial");
        return t_.back();
    }

    // Degree span in one dimension.
    int maxDeg(int dim) const {
        int m = 0;
        bool first = true;
        for (const auto& [x, c] : t_) {
            if (first || x.e[dim] > m) m = x.e[dim];
            first = false;
        }
        return m;
    }
    int minDeg(int dim) const {
        int m = 0;
        bool first = true;
        for (const auto& [x, c] : t_) {
            if (first || x.e[dim] < m) m = x.e[dim];
            first = false;
        }
        return m;
    }
    bool usesDim(int dim) const {
        for (const auto& [x, c] : t_)
            if (x.e[dim] != 0) return true;
        return false;
    }

    // Exact division in the Laurent ring; nullopt when not divisible.
    static std::optional<SPoly> divideExact(const SPoly& a, const SPoly& b);

    // GCD up to a unit, deterministically normalized: min exponent zero and
    // lex-leading coefficient one.
    static SPoly gcd(SPoly a, SPoly b);

    std::string str(bool additive = false) const;

private:
    std::vector<Term> t_;

    SPoly shiftedToMin() const {
        Exp m = minExp();
        if (m.isZero()) return *this;
        return mulMonomial(-m, 1);
    }
    SPoly normalizedUnit() const {
        if (isZero()) return *this;
        SPoly p = shiftedToMin();
        return p.scaled(Rational(1) / p.leading().second);
    }

    // Univariate view in dimension `dim`: dense coefficient list (degree ->
    // SPoly free of `dim`).
    static std::vector<SPoly> univariate(const SPoly& p, int dim) {
        std::vector<SPoly> cs(static_cast<std::size_t>(p.maxDeg(dim)) + 1);
        for (const auto& [x, c] : p.t_) {
            Exp y = x;
            int d = y.e[dim];
            y.e[dim] = 0;
            auto& slot = cs[static_cast<std::size_t>(d)];
            slot = slot + monomial(y, c);
        }
        return cs;
    }
    static SPoly fromUnivariate(const std::vector<SPoly>& cs, int dim) {
        SPoly r;
        for (std::size_t d = 0; d < cs.size(); ++d) {
            Exp shift{};
            shift.e[dim] = static_cast<int>(d);
            r = r + cs[d].mulMonomial(shift, 1);
        }
        return r;
    }
    static SPoly contentIn(const SPoly& p, int dim) {
        SPoly g;
        for (const auto& c : univariate(p, dim))
            if (!c.isZero()) g = gcd(g, c);
        return g;
    }
    friend class Scalar;
};

inline std::optional<SPoly> SPoly::divideExact(const SPoly& a, const SPoly& b) {
    if (b.isZero()) return std::nullopt;
    if (a.isZero()) return SPoly();
    Exp sa = a.minExp(), sb = b.minExp();
    SPoly rem = a.mulMonomial(-sa, 1);
    SPoly div = b.mulMonomial(-sb, 1);
    SPoly q;
    while (!rem.isZero()) {
        const auto& lr = rem.leading();
        const auto& lb = div.leading();
        Exp x = lr.first - lb.first;
        for (int i = 0; i < 4; ++i)
            if (x.e[i] < 0) return std::nullopt;
        Rational c = lr.second / lb.second;
        SPoly t = monomial(x, c);
        q = q + t;
        rem = rem - t * div;
    }
    return q.mulMonomial(sa - sb, 1);
}

inline SPoly SPoly::gcd(SPoly a, SPoly b) {
    if (a.isZero()) return b.normalizedUnit();
    if (b.isZero()) return a.normalizedUnit();
    a = a.shiftedToMin();
    b = b.shiftedToMin();
    int dim = -1;
    for (int i = 3; i >= 0; --i) {
        if (a.usesDim(i) || b.usesDim(i)) {
            dim = i;
            break;
        }
    }
    if (dim < 0) return one();

    bool aMulti = false, bMulti = false;
    for (int i = 0; i < 4; ++i) {
        if (i != dim) {
            aMulti = aMulti || a.usesDim(i);
            bMulti = bMulti || b.usesDim(i);
        }
    }
    if (!aMulti && !bMulti && !a.usesDim(dim)) return one();

    if (!aMulti && !bMulti) {
        // univariate Euclid over Q
        while (!b.isZero()) {
            // remainder of a by b in dimension dim
            SPoly r = a;
            while (!r.isZero() && r.maxDeg(dim) >= b.maxDeg(dim)) {
                Exp x = r.leading().first - b.leading().first;
                Rational c = r.leading().second / b.leading().second;
                r = r - b.mulMonomial(x, c);
            }
            a = b;
            b = r.shiftedToMin();
        }
        return a.normalizedUnit();
    }

    SPoly ca = contentIn(a, dim);
    SPoly cb = contentIn(b, dim);
    SPoly pa = *divideExact(a, ca);
    SPoly pb = *divideExact(b, cb);
    if (pa.maxDeg(dim) < pb.maxDeg(dim)) std::swap(pa, pb);
    while (!pb.isZero()) {
        // pseudo-remainder of pa by pb in dimension dim
        auto ub = univariate(pb, dim);
        SPoly lcb = ub.back();
        SPoly r = pa;
        int db = pb.maxDeg(dim);
        while (!r.isZero() && r.maxDeg(dim) >= db) {
            auto ur = univariate(r, dim);
            SPoly lcr = ur.back();
            Exp shift{};
            shift.e[dim] = static_cast<int>(ur.size() - ub.size());
            r = r * lcb - pb * lcr.mulMonomial(shift, 1);
        }
        pa = pb;
        if (r.isZero()) {
            pb = SPoly();
        } else {
            r = r.shiftedToMin();
            pb = *divideExact(r, contentIn(r, dim));
        }
    }
    SPoly g = gcd(ca, cb) * (*divideExact(pa, contentIn(pa, dim)));
    return g.normalizedUnit();
}

// Exact scalar field element: a canonical fraction of two SPolys. The
// denominator has minimal exponent zero and lex-leading coefficient one, and
// gcd(num, den) = 1, so equal values have identical representations.
class Scalar {
public:
    Scalar() : num_(), den_(SPoly::one()) {}
    Scalar(int v) : num_(SPoly::constant(v)), den_(SPoly::one()) {}
    Scalar(const Rational& v) : num_(SPoly::constant(v)), den_(SPoly::one()) {}
    Scalar(SPoly num, SPoly den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }
    explicit Scalar(SPoly num) : num_(std::move(num)), den_(SPoly::one()) {}

    static Scalar monomial(const Exp& x, const Rational& c = 1) {
        return Scalar(SPoly::monomial(x, c));
    }
    // q^(k/4) in the multiplicative reading.
    static Scalar qpow4(int quarters, int centralQuarters = 0) {
        Exp x;
        x.e[0] = quarters;
        x.e[1] = centralQuarters;
        return monomial(x);
    }
    static Scalar qpow(int n) { return qpow4(4 * n); }

    const SPoly& num() const { return num_; }
    const SPoly& den() const { return den_; }
    bool isZero() const { return num_.isZero(); }
    bool isOne() const { return num_.isOne() && den_.isOne(); }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::weak_ordering operator<=>(const Scalar& a, const Scalar& b) {
        if (auto c = a.num_ <=> b.num_; c != 0) return c;
        return a.den_ <=> b.den_;
    }

    Scalar operator-() const {
        Scalar r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (a.isZero()) return b;
        if (b.isZero()) return a;
        if (a.den_ == b.den_) return Scalar(a.num_ + b.num_, a.den_);
        return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.isZero() || b.isZero()) return Scalar();
        return Scalar(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.isZero()) throw Error("scalar division by zero");
        if (a.isZero()) return Scalar();
        return Scalar(a.num_ * b.den_, a.den_ * b.num_);
    }
    Scalar inv() const { return Scalar(1) / *this; }

    std::string str(bool additive = false) const;

private:
    SPoly num_, den_;

    void normalize() {
        if (den_.isZero()) throw Error("scalar with zero denominator");
        if (num_.isZero()) {
            den_ = SPoly::one();
            return;
        }
        if (!den_.isOne()) {
            SPoly g = SPoly::gcd(num_, den_);
            if (!g.isOne()) {
                num_ = *SPoly::divideExact(num_, g);
                den_ = *SPoly::divideExact(den_, g);
            }
        }
        Exp m = den_.minExp();
        if (!m.isZero()) {
            den_ = den_.mulMonomial(-m, 1);
            num_ = num_.mulMonomial(-m, 1);
        }
        Rational lead = den_.leading().second;
        if (lead != 1) {
            Rational inv = Rational(1) / lead;
            den_ = den_.scaled(inv);
            num_ = num_.scaled(inv);
        }
    }
};

// Symmetric q-integer [n]_q = (q^n - q^-n)/(q - q^-1).
inline Scalar qnum(int n) {
    if (n == 0) return Scalar();
    int a = std::abs(n);
    SPoly p;
    for (int k = 0; k < a; ++k) {
        Exp x;
        x.e[0] = 4 * (a - 1 - 2 * k);
        p = p + SPoly::monomial(x, 1);
    }
    Scalar r{p};
    return n > 0 ? r : -r;
}

// 1/(n)_p! with (n)_p! = prod_{k=1..n} (1 + p + ... + p^(k-1)).
inline Scalar exp_p_coeff(int n, const Scalar& p) {
    if (n < 0) throw Error("exp_p_coeff: negative order");
    Scalar fact(1);
    Scalar pk(1);
    Scalar partial;
    for (int k = 1; k <= n; ++k) {
        partial = partial + pk; // 1 + p + ... + p^(k-1)
        pk = pk * p;
        if (partial.isZero()) throw Error("exp_p_coeff: q-factorial vanishes");
        fact = fact * partial;
    }
    return fact.inv();
}

// --- rendering -------------------------------------------------------------

namespace detail {

inline void renderFrac(std::ostringstream& os, int num, int den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    int g = std::__gcd(std::abs(num), den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (den == 1) {
        os << num;
    } else {
        os << num << "/" << den;
    }
}

inline std::string expStr(const Exp& x, bool additive) {
    std::ostringstream os;
    bool any = false;
    auto piece = [&](const char* base, int val, int unit) {
        if (val == 0) return;
        if (any) os << "*";
        any = true;
        os << base;
        if (val != unit) {
            os << "^(";
            renderFrac(os, val, unit);
            os << ")";
        }
    };
    if (!additive) {
        if (x.e[0] != 0 || x.e[1] != 0 || x.e[2] != 0 || x.e[3] != 0) {
            if (x.e[0] != 0 && x.e[1] == 0 && x.e[2] == 0 && x.e[3] == 0) {
                if (x.e[0] == 4) {
                    os << "q";
                } else if (x.e[0] % 4 == 0) {
                    os << "q^" << x.e[0] / 4;
                } else {
                    os << "q^(";
                    renderFrac(os, x.e[0], 4);
                    os << ")";
                }
                any = true;
            } else {
                os << "q^(";
                bool first = true;
                auto add = [&](int val, const char* sym) {
                    if (val == 0) return;
                    if (!first && val > 0) os << "+";
                    first = false;
                    renderFrac(os, val, 4);
                    if (*sym) os << "*" << sym;
                };
                add(x.e[0], "");
                add(x.e[1], "c");
                add(x.e[2], "c1");
                add(x.e[3], "c2");
                os << ")";
                any = true;
            }
        }
    } else {
        piece("H", x.e[0], 1);
        piece("Hc", x.e[1], 1);
        if (x.e[2] != 0) {
            if (any) os << "*";
            any = true;
            os << "exp(";
            renderFrac(os, x.e[2], 16);
            os << "*hb)";
        }
        if (x.e[3] != 0) {
            if (any) os << "*";
            any = true;
            os << "exp(";
            renderFrac(os, x.e[3], 16);
            os << "*c*hb)";
        }
    }
    return os.str();
}

} // namespace detail

inline std::string SPoly::str(bool additive) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [x, c] : t_) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        std::string m = detail::expStr(x, additive);
        if (m.empty()) {
            os << to_string(a);
        } else if (a == 1) {
            os << m;
        } else {
            os << to_string(a) << "*" << m;
        }
    }
    return os.str();
}

inline std::string Scalar::str(bool additive) const {
    if (den_.isOne()) {
        if (num_.size() <= 1) return num_.str(additive);
        return "(" + num_.str(additive) + ")";
    }
    return "(" + num_.str(additive) + ")/(" + den_.str(additive) + ")";
}

} // namespace qca
