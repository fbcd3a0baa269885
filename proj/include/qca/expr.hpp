#pragma once

#include "prefactor.hpp"

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace qca {

enum class Kind : uint8_t { KPlus, KPlusInv, KMinus, KMinusInv, E, F, Abs };

inline bool isKFamily(Kind k) {
    return k == Kind::KPlus || k == Kind::KPlusInv || k == Kind::KMinus ||
           k == Kind::KMinusInv;
}
inline Kind inverseKind(Kind k) {
    switch (k) {
    case Kind::KPlus: return Kind::KPlusInv;
    case Kind::KPlusInv: return Kind::KPlus;
    case Kind::KMinus: return Kind::KMinusInv;
    case Kind::KMinusInv: return Kind::KMinus;
    default: throw Error("only K symbols have inverses");
    }
}
inline bool isKPlusFamily(Kind k) { return k == Kind::KPlus || k == Kind::KPlusInv; }

// Root label: a simple root {i} or a composition path {i, j} recording the
// order of composition, with the check variant flag for the T^{-1} images.
struct Root {
    std::vector<int8_t> path;
    bool check = false;

    friend bool operator==(const Root&, const Root&) = default;
    friend auto operator<=>(const Root&, const Root&) = default;

    static Root simple(int i) {
        Root r;
        r.path.push_back(static_cast<int8_t>(i));
        return r;
    }
    static Root composed(int a, int b, bool chk) {
        Root r;
        r.path = {static_cast<int8_t>(a), static_cast<int8_t>(b)};
        r.check = chk;
        return r;
    }
    bool isSimple() const { return path.size() == 1 && !check; }
    int simpleIndex() const { return path.at(0); }
    std::string str() const {
        std::string s = check ? "c[" : "[";
        for (std::size_t i = 0; i < path.size(); ++i) {
            if (i) s += "+";
            s += std::to_string(int(path[i]));
        }
        return s + "]";
    }
};

struct SymKey {
    Kind kind = Kind::E;
    Root root;
    int8_t slot = 0;   // tensor slot
    int16_t absId = 0; // abstract symbol id (Kind::Abs)

    friend bool operator==(const SymKey&, const SymKey&) = default;
    friend auto operator<=>(const SymKey&, const SymKey&) = default;
};

struct Sym {
    SymKey key;
    VarId var = 0;
    Shift shift;

    friend bool operator==(const Sym&, const Sym&) = default;
    friend auto operator<=>(const Sym&, const Sym&) = default;
};

using Word = std::vector<Sym>;

// Formal delta factor with support x = q^s y (mult) / x = y + s~ (add),
// canonically oriented x < y.
struct Delta {
    VarId x = 0, y = 0;
    Shift s;

    friend bool operator==(const Delta&, const Delta&) = default;
    friend auto operator<=>(const Delta&, const Delta&) = default;
    bool uses(VarId v) const { return x == v || y == v; }
};

// Result of canonicalizing a support relation: either a delta, a scalar
// statement (term dies or is ill-formed), or nothing.
struct DeltaBuild {
    bool dead = false; // delta at a non-unit constant: the term vanishes
    bool ill = false;  // delta(1): genuinely ill-formed
    Delta d;
};

// Support: (vx, sx) = q^ds (vy, sy)
inline DeltaBuild makeDelta(VarId vx, Shift sx, VarId vy, Shift sy, Shift ds) {
    DeltaBuild r;
    Shift rel = sy + ds - sx; // vx = q^rel vy
    if (vx == vy) {
        if (rel.isZero()) {
            r.ill = true;
        } else {
            r.dead = true;
        }
        return r;
    }
    if (vx < vy) {
        r.d = Delta{vx, vy, rel};
    } else {
        r.d = Delta{vy, vx, -rel};
    }
    return r;
}

// Contour bookkeeping for one formal integration: the variable, and for each
// pole locus whether it lies inside the contour.
struct RecLocus {
    Binom b;
    bool inside = true;

    friend bool operator==(const RecLocus&, const RecLocus&) = default;
    friend auto operator<=>(const RecLocus&, const RecLocus&) = default;
};

struct Rec {
    VarId v = 0;
    std::vector<RecLocus> loci; // sorted by binom

    friend bool operator==(const Rec&, const Rec&) = default;
    friend auto operator<=>(const Rec&, const Rec&) = default;

    const RecLocus* find(const Binom& b) const {
        for (const auto& l : loci)
            if (l.b == b) return &l;
        return nullptr;
    }
};

struct Term {
    Pref pref;
    std::vector<Delta> deltas; // sorted
    Word word;
    std::vector<Rec> recs; // in nesting order; innermost last

    Term() = default;
    explicit Term(Pref p) : pref(std::move(p)) {}

    bool isZero() const { return pref.isZero(); }

    friend bool operator==(const Term&, const Term&) = default;

    bool usesVar(VarId v) const {
        if (pref.uses(v)) return true;
        for (const auto& d : deltas)
            if (d.uses(v)) return true;
        for (const auto& s : word)
            if (s.var == v) return true;
        for (const auto& r : recs) {
            if (r.v == v) return true;
            for (const auto& l : r.loci)
                if (l.b.uses(v)) return true;
        }
        return false;
    }
    int maxVar() const {
        int m = -1;
        auto upd = [&](VarId v) { m = std::max(m, v); };
        for (const auto& [mono, c] : pref.num.terms())
            for (const auto& p : mono.ps) upd(p.v);
        for (const auto& [f, c] : pref.den) {
            upd(f.b.x);
            upd(f.b.y);
        }
        for (const auto& d : deltas) {
            upd(d.x);
            upd(d.y);
        }
        for (const auto& s : word) upd(s.var);
        for (const auto& r : recs) {
            upd(r.v);
            for (const auto& l : r.loci) {
                upd(l.b.x);
                upd(l.b.y);
            }
        }
        return m;
    }
};

struct Expr {
    std::vector<Term> terms;

    Expr() = default;
    explicit Expr(Term t) { terms.push_back(std::move(t)); }

    static Expr zero() { return {}; }
    static Expr scalar(const Scalar& c) {
        Expr e;
        Term t{Pref::fromScalar(c)};
        if (!t.isZero()) e.terms.push_back(std::move(t));
        return e;
    }
    static Expr symbol(const SymKey& k, VarId v, Shift s = {}) {
        Term t;
        t.word.push_back(Sym{k, v, s});
        return Expr(std::move(t));
    }

    bool isZero() const { return terms.empty(); }
    Expr operator-() const {
        Expr r = *this;
        for (auto& t : r.terms) t.pref = -t.pref;
        return r;
    }
    friend Expr operator+(const Expr& a, const Expr& b) {
        Expr r = a;
        r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
        return r;
    }
    friend Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

    Expr scaled(const Scalar& c) const {
        if (c.isZero()) return {};
        Expr r = *this;
        for (auto& t : r.terms) t.pref = t.pref.scaled(c);
        return r;
    }

    // Algebra product: words concatenate. The caller keeps record variables of
    // the two factors distinct.
    friend Expr operator*(const Expr& a, const Expr& b) {
        Expr r;
        for (const auto& ta : a.terms)
            for (const auto& tb : b.terms) {
                Term t;
                t.pref = ta.pref * tb.pref;
                t.deltas = ta.deltas;
                t.deltas.insert(t.deltas.end(), tb.deltas.begin(), tb.deltas.end());
                std::sort(t.deltas.begin(), t.deltas.end());
                t.word = ta.word;
                t.word.insert(t.word.end(), tb.word.begin(), tb.word.end());
                t.recs = ta.recs;
                t.recs.insert(t.recs.end(), tb.recs.begin(), tb.recs.end());
                r.terms.push_back(std::move(t));
            }
        return r;
    }

    int maxVar() const {
        int m = -1;
        for (const auto& t : terms) m = std::max(m, t.maxVar());
        return m;
    }
};

// --- substitution -----------------------------------------------------------

// Substitute v := (v2, t), i.e. v -> v2 * q^t (mult) or v -> v2 + t~ (add).
// Returns false when the term dies (zero); throws on ill-formed results.
inline bool substVar(Term& term, VarId v, VarId v2, Shift t, Alg alg) {
    // word arguments
    for (auto& s : term.word) {
        if (s.var == v) {
            s.var = v2;
            s.shift = s.shift + t;
        }
    }
    // deltas
    std::vector<Delta> nds;
    for (const auto& d : term.deltas) {
        if (!d.uses(v)) {
            nds.push_back(d);
            continue;
        }
        VarId ax = d.x, ay = d.y;
        Shift sx{}, sy{};
        if (ax == v) {
            ax = v2;
            sx = t;
        }
        if (ay == v) {
            ay = v2;
            sy = t;
        }
        DeltaBuild b = makeDelta(ax, sx, ay, sy, d.s);
        if (b.ill) throw Error("delta collapses to delta(1)");
        if (b.dead) return false;
        nds.push_back(b.d);
    }
    std::sort(nds.begin(), nds.end());
    term.deltas = std::move(nds);
    // record loci
    for (auto& r : term.recs) {
        if (r.v == v) throw Error("substituting an active integration variable");
        std::vector<RecLocus> nl;
        for (auto& l : r.loci) {
            if (!l.b.uses(v)) {
                nl.push_back(l);
                continue;
            }
            VarId bx = l.b.x, by = l.b.y;
            Shift sx{}, sy{};
            if (bx == v) {
                bx = v2;
                sx = t;
            }
            if (by == v) {
                by = v2;
                sy = t;
            }
            // locus: bx*q^sx = q^{l.b.s} by*q^sy
            if (bx == by) continue; // locus degenerated to a constant relation
            Shift rel = sy + l.b.s - sx;
            bool flip = !(bx < by);
            RecLocus nlc;
            nlc.b = flip ? Binom{by, bx, -rel} : Binom{bx, by, rel};
            nlc.inside = l.inside;
            nl.push_back(nlc);
        }
        std::sort(nl.begin(), nl.end());
        nl.erase(std::unique(nl.begin(), nl.end()), nl.end());
        r.loci = std::move(nl);
    }
    // prefactor numerator
    {
        MPoly nn;
        for (const auto& [m, c] : term.pref.num.terms()) {
            const VarPow* p = m.find(v);
            if (!p) {
                nn = nn + MPoly::monomial(m, c);
                continue;
            }
            VarMono rest;
            for (const auto& vp : m.ps)
                if (vp.v != v) rest.ps.push_back(vp);
            Scalar coeff = c;
            if (alg == Alg::Mult) {
                if (p->eps4 != 0) throw Error("exp factors need the additive backend");
                // v^pow -> q^{t*pow} v2^pow
                Shift ts{t.plain4 * p->pow, t.central4 * p->pow};
                coeff = coeff * shiftMonomial(ts);
                VarMono nm = rest * VarMono::var(v2, p->pow, 0);
                nn = nn + MPoly::monomial(nm, coeff);
            } else {
                // exp(i eps/4 v) -> exp-monomial * exp(i eps/4 v2)
                if (p->eps4 != 0) coeff = coeff * epsShiftMonomial(p->eps4, t);
                // v^pow -> (v2 + t~)^pow (non-negative powers only)
                if (p->pow < 0) throw Error("negative additive variable power");
                MPoly base = MPoly::monomial(VarMono::var(v2), Scalar(1)) +
                             MPoly::fromScalar(shiftConstant(t));
                MPoly powp = MPoly::one();
                for (int k = 0; k < p->pow; ++k) powp = powp * base;
                MPoly piece = powp.scaled(coeff).mulMono(rest * VarMono::var(v2, 0, p->eps4));
                nn = nn + piece;
            }
        }
        term.pref.num = nn;
    }
    // prefactor denominator
    {
        auto oldDen = term.pref.den;
        term.pref.den.clear();
        for (const auto& [f, count] : oldDen) {
            if (!f.b.uses(v)) {
                term.pref.mulDen(f, count);
                continue;
            }
            VarId bx = f.b.x, by = f.b.y;
            Shift sx{}, sy{};
            if (bx == v) {
                bx = v2;
                sx = t;
            }
            if (by == v) {
                by = v2;
                sy = t;
            }
            LinearValue lv = makeLinear(bx, sx, by, sy, f.b.s, alg);
            if (lv.zero) throw Error("prefactor pole pinched by delta substitution");
            // dividing by (unit * [binom or monomial])^count
            Scalar invUnit = lv.unit.inv();
            for (int k = 0; k < count; ++k) term.pref.num = term.pref.num.scaled(invUnit);
            if (lv.binom) {
                DenFactor nf;
                nf.b = *lv.binom;
                nf.tag = f.tag;
                if (nf.b.x != bx && f.tag != Orient::None) {
                    // canonical orientation flipped relative to the original
                    nf.tag = f.tag == Orient::FirstBig ? Orient::SecondBig : Orient::FirstBig;
                }
                // Orientation bookkeeping: the original first slot was f.b.x.
                // If f.b.x == v it became bx=v2; flip handled above via bx check.
                term.pref.mulDen(nf, count);
            } else if (lv.var >= 0) {
                term.pref.num = term.pref.num.mulMono(VarMono::var(lv.var, -count, 0));
            }
        }
    }
    term.pref.reduce(alg);
    return !term.pref.isZero();
}

// --- rendering ---------------------------------------------------------------

inline std::string kindStr(Kind k) {
    switch (k) {
    case Kind::KPlus: return "K+";
    case Kind::KPlusInv: return "K+^-1";
    case Kind::KMinus: return "K-";
    case Kind::KMinusInv: return "K-^-1";
    case Kind::E: return "e";
    case Kind::F: return "f";
    case Kind::Abs: return "x";
    }
    return "?";
}

inline std::string varName(VarId v) {
    static const char* names[] = {"z", "w", "u", "v", "s", "t"};
    if (v >= 0 && v < 6) return names[v];
    return "v" + std::to_string(v);
}

inline std::string argStr(VarId v, const Shift& s, Alg alg) {
    std::ostringstream os;
    if (s.isZero()) {
        os << varName(v);
        return os.str();
    }
    if (alg == Alg::Mult) {
        Exp x;
        x.e[0] = s.plain4;
        x.e[1] = s.central4;
        os << detail::expStr(x, false) << "*" << varName(v);
    } else {
        os << varName(v);
        Scalar c = shiftConstant(s);
        os << "+" << c.str(true);
    }
    return os.str();
}

inline std::string symStr(const Sym& s, Alg alg) {
    std::ostringstream os;
    os << kindStr(s.key.kind);
    if (s.key.kind == Kind::Abs) {
        os << int(s.key.absId);
    } else {
        os << s.key.root.str();
    }
    if (s.key.slot) os << "'" << int(s.key.slot);
    os << "(" << argStr(s.var, s.shift, alg) << ")";
    return os.str();
}

inline std::string termStr(const Term& t, Alg alg) {
    std::ostringstream os;
    os << "[";
    os << t.pref.num.terms().size() << "t num";
    for (const auto& [f, c] : t.pref.den) {
        os << " / (" << varName(f.b.x) << "-"
           << argStr(f.b.y, f.b.s, alg) << ")^" << c;
        if (f.tag != Orient::None) os << (f.tag == Orient::FirstBig ? "<" : ">");
    }
    os << "]";
    for (const auto& d : t.deltas)
        os << " d(" << varName(d.x) << "/" << argStr(d.y, d.s, alg) << ")";
    for (const auto& s : t.word) os << " " << symStr(s, alg);
    for (const auto& r : t.recs) {
        os << " @" << varName(r.v) << "{";
        for (const auto& l : r.loci)
            os << (l.inside ? "+" : "-") << varName(l.b.x) << "="
               << argStr(l.b.y, l.b.s, alg) << ";";
        os << "}";
    }
    return os.str();
}

} // namespace qca
