#pragma once

#include "scalar.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace qca {

// Backend selector: multiplicative spectral parameters (quantum affine) or
// additive ones (Yangian double).
enum class Alg : uint8_t { Mult, Add };

using VarId = int;

// Argument shift: multiplicative z * q^(plain/4 + central/4 * c), additive
// u + (plain/4 + central/4 * c) * i*hbar. Quarter units keep both the q^(c/2)
// shifts of the affine case and the i*hbar*c/4 shifts of the Yangian exact.
struct Shift {
    int plain4 = 0;
    int central4 = 0;

    friend bool operator==(const Shift&, const Shift&) = default;
    friend auto operator<=>(const Shift&, const Shift&) = default;
    Shift operator+(const Shift& o) const { return {plain4 + o.plain4, central4 + o.central4}; }
    Shift operator-(const Shift& o) const { return {plain4 - o.plain4, central4 - o.central4}; }
    Shift operator-() const { return {-plain4, -central4}; }
    bool isZero() const { return plain4 == 0 && central4 == 0; }

    static Shift q(int n) { return {4 * n, 0}; }      // q^n  /  n*i*hbar
    static Shift qc(int n4) { return {0, n4}; }       // q^(c*n4/4) / (n4/4)*i*hbar*c
    static Shift half(int n) { return {2 * n, 0}; }   // q^(n/2) / (n/2)*i*hbar
};

// Scalar value of the pure shift monomial q^s (multiplicative reading).
inline Scalar shiftMonomial(const Shift& s) {
    Exp x;
    x.e[0] = s.plain4;
    x.e[1] = s.central4;
    return Scalar::monomial(x);
}

// Scalar value of the additive shift constant (plain/4)H + (central/4)Hc.
inline Scalar shiftConstant(const Shift& s) {
    SPoly p;
    if (s.plain4 != 0) {
        Exp h;
        h.e[0] = 1;
        p = p + SPoly::monomial(h, Rational(s.plain4) / 4);
    }
    if (s.central4 != 0) {
        Exp hc;
        hc.e[1] = 1;
        p = p + SPoly::monomial(hc, Rational(s.central4) / 4);
    }
    return Scalar(p);
}

// exp factor picked up by e^{i eps v} under v -> v + shift (additive backend):
// exp(i*(eps4/4)*(plain4/4 + central4/4 c)*i*hbar) = exp(-(eps4*plain4/16)hbar - ...c hbar).
inline Scalar epsShiftMonomial(int eps4, const Shift& s) {
    Exp x;
    x.e[2] = -eps4 * s.plain4;
    x.e[3] = -eps4 * s.central4;
    return Scalar::monomial(x);
}

// --- monomials in the spectral variables ------------------------------------

struct VarPow {
    VarId v = 0;
    int pow = 0;  // Laurent power of the variable
    int eps4 = 0; // formal exp(i*(eps4/4)*v) factor (additive backend)

    friend bool operator==(const VarPow&, const VarPow&) = default;
    friend auto operator<=>(const VarPow&, const VarPow&) = default;
};

struct VarMono {
    std::vector<VarPow> ps; // sorted by v, no trivial entries

    friend bool operator==(const VarMono&, const VarMono&) = default;
    friend auto operator<=>(const VarMono&, const VarMono&) = default;

    static VarMono var(VarId v, int pow = 1, int eps4 = 0) {
        VarMono m;
        if (pow != 0 || eps4 != 0) m.ps.push_back({v, pow, eps4});
        return m;
    }
    bool isTrivial() const { return ps.empty(); }
    VarMono operator*(const VarMono& o) const {
        VarMono r;
        std::size_t i = 0, j = 0;
        while (i < ps.size() && j < o.ps.size()) {
            if (ps[i].v < o.ps[j].v) {
                r.ps.push_back(ps[i++]);
            } else if (o.ps[j].v < ps[i].v) {
                r.ps.push_back(o.ps[j++]);
            } else {
                VarPow p{ps[i].v, ps[i].pow + o.ps[j].pow, ps[i].eps4 + o.ps[j].eps4};
                if (p.pow != 0 || p.eps4 != 0) r.ps.push_back(p);
                ++i;
                ++j;
            }
        }
        for (; i < ps.size(); ++i) r.ps.push_back(ps[i]);
        for (; j < o.ps.size(); ++j) r.ps.push_back(o.ps[j]);
        return r;
    }
    const VarPow* find(VarId v) const {
        for (const auto& p : ps)
            if (p.v == v) return &p;
        return nullptr;
    }
    bool uses(VarId v) const { return find(v) != nullptr; }
};

// Multivariate Laurent polynomial in the spectral variables over Scalar.
class MPoly {
public:
    using Term = std::pair<VarMono, Scalar>;

    MPoly() = default;
    static MPoly zero() { return {}; }
    static MPoly fromScalar(const Scalar& c) {
        MPoly p;
        if (!c.isZero()) p.t_.push_back({VarMono{}, c});
        return p;
    }
    static MPoly one() { return fromScalar(Scalar(1)); }
    static MPoly monomial(const VarMono& m, const Scalar& c) {
        MPoly p;
        if (!c.isZero()) p.t_.push_back({m, c});
        return p;
    }

    const std::vector<Term>& terms() const { return t_; }
    bool isZero() const { return t_.empty(); }
    bool isScalar() const {
        return t_.empty() || (t_.size() == 1 && t_[0].first.isTrivial());
    }
    Scalar scalarValue() const {
        if (t_.empty()) return Scalar();
        if (t_.size() == 1 && t_[0].first.isTrivial()) return t_[0].second;
        throw Error("MPoly is not a scalar");
    }

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.t_ == b.t_; }
    friend std::weak_ordering operator<=>(const MPoly& a, const MPoly& b) {
        return std::weak_ordering(a.t_ <=> b.t_);
    }

    MPoly operator-() const {
        MPoly r = *this;
        for (auto& [m, c] : r.t_) c = -c;
        return r;
    }
    friend MPoly operator+(const MPoly& a, const MPoly& b) {
        MPoly r;
        std::size_t i = 0, j = 0;
        while (i < a.t_.size() && j < b.t_.size()) {
            if (a.t_[i].first < b.t_[j].first) {
                r.t_.push_back(a.t_[i++]);
            } else if (b.t_[j].first < a.t_[i].first) {
                r.t_.push_back(b.t_[j++]);
            } else {
                Scalar c = a.t_[i].second + b.t_[j].second;
                if (!c.isZero()) r.t_.push_back({a.t_[i].first, c});
                ++i;
                ++j;
            }
        }
        for (; i < a.t_.size(); ++i) r.t_.push_back(a.t_[i]);
        for (; j < b.t_.size(); ++j) r.t_.push_back(b.t_[j]);
        return r;
    }
    friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        if (a.isZero() || b.isZero()) return {};
        std::map<VarMono, Scalar> acc;
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_) {
                auto key = ma * mb;
                auto it = acc.find(key);
                if (it == acc.end()) {
                    acc.emplace(key, ca * cb);
                } else {
                    it->second = it->second + ca * cb;
                }
            }
        MPoly r;
        for (auto& [m, c] : acc)
            if (!c.isZero()) r.t_.push_back({m, c});
        return r;
    }
    MPoly scaled(const Scalar& c) const {
        if (c.isZero()) return {};
        MPoly r = *this;
        for (auto& [m, cc] : r.t_) cc = cc * c;
        return r;
    }
    MPoly mulMono(const VarMono& m) const {
        MPoly r;
        r.t_.reserve(t_.size());
        std::map<VarMono, Scalar> acc;
        for (const auto& [mm, c] : t_) acc[mm * m] = c;
        for (auto& [mm, c] : acc) r.t_.push_back({mm, c});
        return r;
    }
    bool uses(VarId v) const {
        for (const auto& [m, c] : t_)
            if (m.uses(v)) return true;
        return false;
    }

private:
    std::vector<Term> t_;
};

// Binomial denominator atom, canonically oriented with x < y:
//   multiplicative: (X - q^s Y), additive: (X - Y - s~)
// Its vanishing locus is X = q^s Y (resp. X = Y + s~).
struct Binom {
    VarId x = 0, y = 0;
    Shift s;

    friend bool operator==(const Binom&, const Binom&) = default;
    friend auto operator<=>(const Binom&, const Binom&) = default;
    bool uses(VarId v) const { return x == v || y == v; }
};

// Expansion-region tag for a denominator factor: which side of the pole the
// committed series lives on. Untagged factors are plain rational.
enum class Orient : uint8_t { None = 0, FirstBig = 1, SecondBig = 2 };

struct DenFactor {
    Binom b;
    Orient tag = Orient::None;

    friend bool operator==(const DenFactor&, const DenFactor&) = default;
    friend auto operator<=>(const DenFactor&, const DenFactor&) = default;
};

inline MPoly binomPoly(const Binom& b, Alg alg) {
    if (alg == Alg::Mult) {
        return MPoly::monomial(VarMono::var(b.x), Scalar(1)) +
               MPoly::monomial(VarMono::var(b.y), -shiftMonomial(b.s));
    }
    MPoly r = MPoly::monomial(VarMono::var(b.x), Scalar(1)) +
              MPoly::monomial(VarMono::var(b.y), Scalar(-1));
    Scalar c = shiftConstant(b.s);
    if (!c.isZero()) r = r + MPoly::fromScalar(-c);
    return r;
}

// Build (argX - q^extra * argY) with argX = (vx, sx): returns a unit scalar u
// and either a canonical binomial or, when the variables coincide, a pure
// monomial value u * (scalar) * var^1.
struct LinearValue {
    Scalar unit;                // overall scalar factor
    std::optional<Binom> binom; // canonical binomial when two distinct vars
    VarId var = -1;             // for the coincident case: unit * var
    bool zero = false;
};

inline LinearValue makeLinear(VarId vx, Shift sx, VarId vy, Shift sy, Shift extra, Alg alg) {
    LinearValue r;
    Shift rel = sy + extra - sx; // (x - q^rel y) after pulling out arg-x shift
    if (alg == Alg::Mult) {
        if (vx == vy) {
            // q^sx * x * (1 - q^rel)
            Scalar c = Scalar(1) - shiftMonomial(rel);
            if (c.isZero()) {
                r.zero = true;
                return r;
            }
            r.unit = shiftMonomial(sx) * c;
            r.var = vx;
            return r;
        }
        r.unit = shiftMonomial(sx);
        if (vx < vy) {
            r.binom = Binom{vx, vy, rel};
        } else {
            // (x - q^rel y) = -q^rel (y - q^{-rel} x)
            r.unit = r.unit * (-shiftMonomial(rel));
            r.binom = Binom{vy, vx, -rel};
        }
        return r;
    }
    // additive: (x + sx~) - (y + sy~ + extra~) = x - y - rel~
    if (vx == vy) {
        Scalar c = -shiftConstant(rel);
        if (c.isZero()) {
            r.zero = true;
            return r;
        }
        r.unit = c;
        r.var = -1; // pure scalar, no variable left
        return r;
    }
    r.unit = Scalar(1);
    if (vx < vy) {
        r.binom = Binom{vx, vy, rel};
    } else {
        r.unit = Scalar(-1);
        r.binom = Binom{vy, vx, -rel};
    }
    return r;
}

// Rational prefactor: numerator Laurent polynomial over a product of binomial
// denominator factors. Reduction cancels numerator-divisible factors, so terms
// with equal values compare equal once merged over a common denominator.
class Pref {
public:
    MPoly num;
    std::vector<std::pair<DenFactor, int>> den; // sorted, positive counts

    Pref() : num(MPoly::one()) {}
    explicit Pref(MPoly n) : num(std::move(n)) {}
    static Pref zero() { return Pref(MPoly::zero()); }
    static Pref fromScalar(const Scalar& c) { return Pref(MPoly::fromScalar(c)); }

    bool isZero() const { return num.isZero(); }

    friend bool operator==(const Pref&, const Pref&) = default;
    friend std::weak_ordering operator<=>(const Pref& a, const Pref& b) {
        if (auto c = a.num <=> b.num; c != 0) return c;
        return std::weak_ordering(a.den <=> b.den);
    }

    void mulDen(const DenFactor& f, int count = 1) {
        for (auto& [g, c] : den) {
            if (g == f) {
                c += count;
                return;
            }
        }
        den.push_back({f, count});
        std::sort(den.begin(), den.end());
    }

    Pref operator*(const Pref& o) const {
        Pref r;
        r.num = num * o.num;
        r.den = den;
        for (const auto& [f, c] : o.den) r.mulDen(f, c);
        return r;
    }
    Pref scaled(const Scalar& c) const {
        Pref r = *this;
        r.num = r.num.scaled(c);
        return r;
    }
    Pref operator-() const { return scaled(Scalar(-1)); }

    bool uses(VarId v) const {
        if (num.uses(v)) return true;
        for (const auto& [f, c] : den)
            if (f.b.uses(v)) return true;
        return false;
    }

    // Divide numerator by denominator binomials wherever exact; drops
    // fully-cancelled factors (their tags disappear with them).
    void reduce(Alg alg) {
        if (num.isZero()) {
            den.clear();
            return;
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto& [f, c] : den) {
                while (c > 0) {
                    auto q = divByBinom(num, f.b, alg);
                    if (!q) break;
                    num = *q;
                    --c;
                    changed = true;
                }
            }
            den.erase(std::remove_if(den.begin(), den.end(),
                                     [](const auto& p) { return p.second == 0; }),
                      den.end());
        }
    }

    // Exact division of an MPoly by a binomial via synthetic division in b.x.
    static std::optional<MPoly> divByBinom(const MPoly& p, const Binom& b, Alg alg);

    Pref addOver(const Pref& o, Alg alg) const {
        // common denominator = per-factor max counts
        Pref r;
        std::map<DenFactor, int> common;
        for (const auto& [f, c] : den) common[f] = c;
        for (const auto& [f, c] : o.den) {
            auto it = common.find(f);
            if (it == common.end() || it->second < c) common[f] = c;
        }
        MPoly na = num, nb = o.num;
        for (const auto& [f, c] : common) {
            int ca = 0, cb = 0;
            for (const auto& [g, k] : den)
                if (g == f) ca = k;
            for (const auto& [g, k] : o.den)
                if (g == f) cb = k;
            MPoly fb = binomPoly(f.b, alg);
            for (int k = ca; k < c; ++k) na = na * fb;
            for (int k = cb; k < c; ++k) nb = nb * fb;
        }
        r.num = na + nb;
        r.den.assign(common.begin(), common.end());
        std::sort(r.den.begin(), r.den.end());
        r.reduce(alg);
        return r;
    }
};

inline std::optional<MPoly> Pref::divByBinom(const MPoly& p, const Binom& b, Alg alg) {
    if (p.isZero()) return p;
    // divisor = x - A where A = q^s y (mult) or y + s~ (add)
    MPoly A = alg == Alg::Mult
                  ? MPoly::monomial(VarMono::var(b.y), shiftMonomial(b.s))
                  : MPoly::monomial(VarMono::var(b.y), Scalar(1)) +
                        MPoly::fromScalar(shiftConstant(b.s));
    // Group by the exp-part of x (untouched by the divisor), then run a
    // synthetic division in the power of x with full multivariate coefficients.
    std::map<int, std::map<int, MPoly>> slices; // x-eps4 -> x-pow -> coeff
    for (const auto& [m, c] : p.terms()) {
        VarMono rest;
        int xpow = 0, xeps = 0;
        for (const auto& vp : m.ps) {
            if (vp.v == b.x) {
                xpow = vp.pow;
                xeps = vp.eps4;
            } else {
                rest.ps.push_back(vp);
            }
        }
        auto& slot = slices[xeps][xpow];
        slot = slot + MPoly::monomial(rest, c);
    }
    MPoly quotient;
    for (auto& [xeps, byPow] : slices) {
        int hi = byPow.rbegin()->first;
        int lo = byPow.begin()->first;
        // p = (x - A) * Q with Q_j x^j terms gives c_k = Q_{k-1} - A*Q_k,
        // so Q_{k-1} = c_k + A*Q_k walking down from k = hi (Q_hi = 0).
        std::map<int, MPoly> Q;
        MPoly prev;
        for (int k = hi; k > lo; --k) {
            auto it = byPow.find(k);
            MPoly ck = it == byPow.end() ? MPoly() : it->second;
            MPoly qk = ck + A * prev;
            if (!qk.isZero()) Q[k - 1] = qk;
            prev = qk;
        }
        MPoly rem = byPow.begin()->second + A * prev;
        if (!rem.isZero()) return std::nullopt;
        for (auto& [k, qk] : Q) {
            MPoly shifted = qk.mulMono(VarMono::var(b.x, k, xeps));
            quotient = quotient + shifted;
        }
    }
    return quotient;
}

} // namespace qca
