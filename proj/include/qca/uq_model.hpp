#pragma once

#include "calculus.hpp"

namespace qca {

// Legs of a composed-root current with their definition shifts, in definition
// order (Eqs. 12/11 and the Yangian analogs).
struct CompLegs {
    SymKey first, second;
    Shift firstShift, secondShift;
    bool movingIsFirst; // the integrated leg
    Shift poleShift;    // pole of the moving leg at w = q^poleShift z
};

namespace detail {

inline SymKey sym(Kind k, const Root& r, int slot = 0) {
    SymKey s;
    s.kind = k;
    s.root = r;
    s.slot = static_cast<int8_t>(slot);
    return s;
}

} // namespace detail

// Quantum affine backend: the Drinfeld current relations of the simply-laced
// algebra, with composed-root currents labelled by composition paths.
class UqModel : public Model {
public:
    explicit UqModel(RootSystem sys) : sys_(std::move(sys)) {}

    Alg alg() const override { return Alg::Mult; }
    const RootSystem& system() const { return sys_; }

    std::vector<int> rootVec(const Root& r) const {
        std::vector<int> v(sys_.rank(), 0);
        for (int8_t i : r.path) v[static_cast<std::size_t>(i)] += 1;
        return v;
    }
    int pair(const Root& a, const Root& b) const {
        return sys_.pairing(rootVec(a), rootVec(b));
    }

    // Definition data of composed currents: Eqs. (12) and (11).
    CompLegs legs(const SymKey& k) const {
        if (k.root.path.size() != 2) throw Error("not a composed current");
        int a = k.root.path[0], b = k.root.path[1];
        if (sys_.pairing(a, b) != -1) throw Error("composed current of non-adjacent roots");
        CompLegs l;
        bool e = k.kind == Kind::E;
        if (k.kind != Kind::E && k.kind != Kind::F)
            throw Error("composed current must be an e or f current");
        Root ra = Root::simple(a), rb = Root::simple(b);
        if (!k.root.check) {
            if (e) {
                // e_{a+b}(z) = :e_a(qz) e_b(q^2 z):
                l.first = detail::sym(Kind::E, ra, k.slot);
                l.second = detail::sym(Kind::E, rb, k.slot);
                l.firstShift = Shift::q(1);
                l.secondShift = Shift::q(2);
                l.movingIsFirst = true;
                l.poleShift = Shift::q(1);
            } else {
                // f_{a+b}(z) = :f_b(q^2 z) f_a(qz):
                l.first = detail::sym(Kind::F, rb, k.slot);
                l.second = detail::sym(Kind::F, ra, k.slot);
                l.firstShift = Shift::q(2);
                l.secondShift = Shift::q(1);
                l.movingIsFirst = false;
                l.poleShift = Shift::q(1);
            }
        } else {
            if (e) {
                // ě_{a+b}(z) = :e_b(q^-2 z) e_a(q^-1 z):
                l.first = detail::sym(Kind::E, rb, k.slot);
                l.second = detail::sym(Kind::E, ra, k.slot);
                l.firstShift = Shift::q(-2);
                l.secondShift = Shift::q(-1);
                l.movingIsFirst = false;
                l.poleShift = Shift::q(-1);
            } else {
                // f̌_{a+b}(z) = :f_a(q^-1 z) f_b(q^-2 z):
                l.first = detail::sym(Kind::F, ra, k.slot);
                l.second = detail::sym(Kind::F, rb, k.slot);
                l.firstShift = Shift::q(-1);
                l.secondShift = Shift::q(-2);
                l.movingIsFirst = true;
                l.poleShift = Shift::q(-1);
            }
        }
        return l;
    }

    std::optional<UnfoldDef> unfoldDef(const SymKey& k) const override {
        if (k.kind != Kind::E && k.kind != Kind::F) return std::nullopt;
        if (k.root.path.size() != 2) return std::nullopt;
        CompLegs l = legs(k);
        UnfoldDef d;
        if (l.movingIsFirst) {
            d.moving = l.first;
            d.fixed = l.second;
            d.movingShift = l.firstShift;
            d.fixedShift = l.secondShift;
        } else {
            d.moving = l.second;
            d.fixed = l.first;
            d.movingShift = l.secondShift;
            d.fixedShift = l.firstShift;
        }
        d.movingFirst = l.movingIsFirst;
        d.poleShift = l.poleShift;
        return d;
    }

    std::optional<PairRule> rule(const SymKey& A, const SymKey& B) const override {
        if (A.kind == Kind::Abs || B.kind == Kind::Abs) return std::nullopt;
        bool aK = isKFamily(A.kind), bK = isKFamily(B.kind);
        if (aK && bK) return kkRule(A, B);
        if (aK || bK) return kCurrentRule(A, B);
        if (A.kind == B.kind) return sameFamilyRule(A, B);
        return efRule(A, B);
    }

private:
    RootSystem sys_;

    static PairRule trivial() { return PairRule{}; }

    // (anal)-type continuation (q^p X - Y)/(X - q^p Y), with an overall shift
    // offset on both arguments of the second symbol.
    static void anal(PairRule& r, int p, Shift offA = {}, Shift offB = {}) {
        r.gnum.push_back(LinForm{offA + Shift::q(p), offB});
        r.gden.push_back(LinForm{offA, offB + Shift::q(p)});
    }

    // legs with shifts for K-conjugation products
    std::vector<std::pair<SymKey, Shift>> flatLegs(const SymKey& k) const {
        if (k.root.path.size() == 1)
            return {{k, Shift{}}};
        CompLegs l = legs(k);
        return {{l.first, l.firstShift}, {l.second, l.secondShift}};
    }

    std::optional<PairRule> kkRule(const SymKey& A, const SymKey& B) const {
        bool aPlus = isKPlusFamily(A.kind), bPlus = isKPlusFamily(B.kind);
        if (aPlus == bPlus) return trivial(); // (7a)
        PairRule r;
        int p = pair(A.root, B.root);
        // (7): K+(z)K-(w) = [(q^{p+c}z-w)(q^{-p-c}z-w)]/[(z-q^{p-c}w)(z-q^{-p+c}w)] K-K+
        bool invert = false;
        if (!aPlus) invert = true; // rule for K-(z)K+(w): inverse factor
        if (A.kind == Kind::KPlusInv || A.kind == Kind::KMinusInv) invert = !invert;
        if (B.kind == Kind::KPlusInv || B.kind == Kind::KMinusInv) invert = !invert;
        auto& num = invert ? r.gden : r.gnum;
        auto& den = invert ? r.gnum : r.gden;
        num.push_back(LinForm{Shift{4 * p, 4}, Shift{}});
        num.push_back(LinForm{Shift{-4 * p, -4}, Shift{}});
        den.push_back(LinForm{Shift{}, Shift{4 * p, -4}});
        den.push_back(LinForm{Shift{}, Shift{-4 * p, 4}});
        return r;
    }

    // Exchange of a K current past an e/f current; composed roots multiply the
    // factors over their legs (the residue commutes with the K conjugation).
    std::optional<PairRule> kCurrentRule(const SymKey& A, const SymKey& B) const {
        bool aK = isKFamily(A.kind);
        const SymKey& K = aK ? A : B;
        const SymKey& X = aK ? B : A;
        if (K.root.path.size() != 1) return std::nullopt;
        PairRule r;
        for (const auto& [leg, legShift] : flatLegs(X)) {
            int p = sys_.pairing(K.root.simpleIndex(), leg.root.simpleIndex());
            bool ef = leg.kind == Kind::E;
            // Phi for K(z) X(w) -> X(w) K(z):
            //  (3) K+ e: (q^{p+c/2}z - w)/(q^{c/2}z - q^p w)
            //  (4) K- e: (q^{p-c/2}z - w)/(q^{-c/2}z - q^p w)
            //  (5) K+ f: (q^{-p-c/2}z - w)/(q^{-c/2}z - q^{-p} w)
            //  (6) K- f: (q^{-p+c/2}z - w)/(q^{c/2}z - q^{-p} w)
            Kind kk = K.kind == Kind::KPlusInv ? Kind::KPlus
                      : K.kind == Kind::KMinusInv ? Kind::KMinus
                                                  : K.kind;
            int c2; // central quarter-units on the z side of the numerator
            int pp; // q-power paired with p
            if (kk == Kind::KPlus) {
                c2 = ef ? 2 : -2;
                pp = ef ? p : -p;
            } else {
                c2 = ef ? -2 : 2;
                pp = ef ? p : -p;
            }
            LinForm numF{Shift{4 * pp, c2}, Shift{}};
            LinForm denF{Shift{0, c2}, Shift{4 * pp, 0}};
            bool invert = K.kind == Kind::KPlusInv || K.kind == Kind::KMinusInv;
            if (!aK) invert = !invert; // X(w) K(z): inverse factor
            // arguments: LinForms are (argA, argB); the K argument carries the
            // c-shifts, the leg argument the leg offset.
            Shift kOffN = numF.a, kOffD = denF.a;
            Shift xOffN = numF.b + legShift, xOffD = denF.b + legShift;
            LinForm n, d;
            if (aK) {
                n = LinForm{kOffN, xOffN};
                d = LinForm{kOffD, xOffD};
            } else {
                n = LinForm{xOffN, kOffN};
                d = LinForm{xOffD, kOffD};
            }
            if (invert) std::swap(n, d);
            r.gnum.push_back(n);
            r.gden.push_back(d);
        }
        return r;
    }

    Scalar qdiffInv() const {
        return (Scalar::qpow(1) - Scalar::qpow(-1)).inv();
    }

    std::optional<PairRule> efRule(const SymKey& A, const SymKey& B) const {
        // e/f mixed family
        const bool aE = A.kind == Kind::E;
        if (A.root.path.size() == 1 && B.root.path.size() == 1) {
            if (A.root != B.root) return trivial();
            // (10): commutator with two delta terms
            PairRule r;
            r.symmetric = true;
            Scalar c = qdiffInv();
            Root root = A.root;
            if (aE) {
                // e(z) f(w) = f(w) e(z) + c[δ(z/q^c w)K+(zq^{-c/2}) - δ(zq^c/w)K-(wq^{-c/2})]
                Emission e1;
                e1.ds = Shift::qc(4);
                e1.coeff = c;
                e1.word = {EmitSym{detail::sym(Kind::KPlus, root, A.slot), 0, Shift::qc(-2)}};
                Emission e2;
                e2.ds = Shift::qc(-4);
                e2.coeff = -c;
                e2.word = {EmitSym{detail::sym(Kind::KMinus, root, A.slot), 1, Shift::qc(-2)}};
                r.emissions = {e1, e2};
            } else {
                // f(w) e(z) = e(z) f(w) - [the same deltas]
                Emission e1;
                e1.ds = Shift::qc(-4);
                e1.coeff = -c;
                e1.word = {EmitSym{detail::sym(Kind::KPlus, root, A.slot), 1, Shift::qc(-2)}};
                Emission e2;
                e2.ds = Shift::qc(4);
                e2.coeff = c;
                e2.word = {EmitSym{detail::sym(Kind::KMinus, root, A.slot), 0, Shift::qc(-2)}};
                r.emissions = {e1, e2};
            }
            return r;
        }
        // composed against the opposite family: not a stated relation
        return std::nullopt;
    }

    std::optional<PairRule> sameFamilyRule(const SymKey& A, const SymKey& B) const {
        const bool eFam = A.kind == Kind::E;
        const std::size_t la = A.root.path.size(), lb = B.root.path.size();
        if (la == 1 && lb == 1) {
            int p = pair(A.root, B.root);
            PairRule r;
            anal(r, eFam ? p : -p);
            if (p == -1) {
                // (13)/(14): composed-current delta emission
                int x = A.root.simpleIndex(), y = B.root.simpleIndex();
                Emission em;
                em.coeff = Scalar(1);
                if (eFam) {
                    // e_X(z) e_Y(w): δ(zq/w) e_{X+Y}(q^{-1}z)
                    em.ds = Shift::q(-1);
                    em.word = {EmitSym{detail::sym(Kind::E, Root::composed(x, y, false), A.slot),
                                       0, Shift::q(-1)}};
                } else {
                    // f_X(z) f_Y(w): δ(z/qw) f_{Y+X}(q^{-1}w)
                    em.ds = Shift::q(1);
                    em.word = {EmitSym{detail::sym(Kind::F, Root::composed(y, x, false), A.slot),
                                       1, Shift::q(-1)}};
                }
                r.emissions.push_back(em);
            }
            return r;
        }
        if (la + lb == 3) {
            // composed against simple: relations (15)-(18) for plain paths
            const SymKey& comp = la == 2 ? A : B;
            const SymKey& simp = la == 2 ? B : A;
            if (comp.root.check) return std::nullopt;
            int a = comp.root.path[0], b = comp.root.path[1];
            int s = simp.root.simpleIndex();
            if (s != a && s != b) {
                int p = pair(A.root, B.root);
                if (p == 0) return trivial();
                return std::nullopt;
            }
            PairRule r;
            if (eFam) {
                if (la == 1) {
                    if (s == a) {
                        // (15): e_a(z) e_{a+b}(w) = (qz-w)/(z-qw) swap
                        r.gnum.push_back(LinForm{Shift::q(1), Shift{}});
                        r.gden.push_back(LinForm{Shift{}, Shift::q(1)});
                    } else {
                        // reverse of (16)
                        r.gnum.push_back(LinForm{Shift::q(-1), Shift::q(1)});
                        r.gden.push_back(LinForm{Shift::q(-2), Shift::q(2)});
                    }
                } else {
                    if (s == b) {
                        // (16): e_{a+b}(z) e_b(w) = (q^2 z - q^-2 w)/(qz - q^-1 w) swap
                        r.gnum.push_back(LinForm{Shift::q(2), Shift::q(-2)});
                        r.gden.push_back(LinForm{Shift::q(1), Shift::q(-1)});
                    } else {
                        // reverse of (15)
                        r.gnum.push_back(LinForm{Shift::q(1), Shift{}});
                        r.gden.push_back(LinForm{Shift{}, Shift::q(1)});
                    }
                }
            } else {
                if (la == 1) {
                    if (s == b) {
                        // (17): f_b(z) f_{a+b}(w) = (q^-2 z - q^2 w)/(q^-1 z - q w) swap
                        r.gnum.push_back(LinForm{Shift::q(-2), Shift::q(2)});
                        r.gden.push_back(LinForm{Shift::q(-1), Shift::q(1)});
                    } else {
                        // reverse of (18)
                        r.gnum.push_back(LinForm{Shift::q(-1), Shift{}});
                        r.gden.push_back(LinForm{Shift{}, Shift::q(-1)});
                    }
                } else {
                    if (s == a) {
                        // (18): f_{a+b}(z) f_a(w) = (q^-1 z - w)/(z - q^-1 w) swap
                        r.gnum.push_back(LinForm{Shift::q(-1), Shift{}});
                        r.gden.push_back(LinForm{Shift{}, Shift::q(-1)});
                    } else {
                        // reverse of (17)
                        r.gnum.push_back(LinForm{Shift::q(1), Shift::q(-1)});
                        r.gden.push_back(LinForm{Shift::q(2), Shift::q(-2)});
                    }
                }
            }
            return r;
        }
        return std::nullopt;
    }
};

// Yangian double backend: additive spectral parameters, §6 relations.
class YangianModel : public Model {
public:
    explicit YangianModel(RootSystem sys) : sys_(std::move(sys)) {}

    Alg alg() const override { return Alg::Add; }
    const RootSystem& system() const { return sys_; }

    int pair(const Root& a, const Root& b) const {
        std::vector<int> va(sys_.rank(), 0), vb(sys_.rank(), 0);
        for (int8_t i : a.path) va[static_cast<std::size_t>(i)] += 1;
        for (int8_t i : b.path) vb[static_cast<std::size_t>(i)] += 1;
        return sys_.pairing(va, vb);
    }

    CompLegs legs(const SymKey& k) const {
        if (k.root.path.size() != 2) throw Error("not a composed current");
        int a = k.root.path[0], b = k.root.path[1];
        if (sys_.pairing(a, b) != -1) throw Error("composed current of non-adjacent roots");
        CompLegs l;
        bool e = k.kind == Kind::E;
        Root ra = Root::simple(a), rb = Root::simple(b);
        if (!k.root.check) {
            if (e) {
                // e_{a+b}(v) = :e_a(v - ih/2) e_b(v - ih):
                l.first = detail::sym(Kind::E, ra, k.slot);
                l.second = detail::sym(Kind::E, rb, k.slot);
                l.firstShift = Shift{-2, 0};
                l.secondShift = Shift{-4, 0};
                l.movingIsFirst = true;
                l.poleShift = Shift{-2, 0};
            } else {
                // f_{a+b}(v) = :f_b(v - ih) f_a(v - ih/2):
                l.first = detail::sym(Kind::F, rb, k.slot);
                l.second = detail::sym(Kind::F, ra, k.slot);
                l.firstShift = Shift{-4, 0};
                l.secondShift = Shift{-2, 0};
                l.movingIsFirst = false;
                l.poleShift = Shift{-2, 0};
            }
        } else {
            if (e) {
                // ě_{a+b}(v) = :e_b(v + ih) e_a(v + ih/2):
                l.first = detail::sym(Kind::E, rb, k.slot);
                l.second = detail::sym(Kind::E, ra, k.slot);
                l.firstShift = Shift{4, 0};
                l.secondShift = Shift{2, 0};
                l.movingIsFirst = false;
                l.poleShift = Shift{2, 0};
            } else {
                // f̌_{a+b}(v) = :f_a(v + ih/2) f_b(v + ih):
                l.first = detail::sym(Kind::F, ra, k.slot);
                l.second = detail::sym(Kind::F, rb, k.slot);
                l.firstShift = Shift{2, 0};
                l.secondShift = Shift{4, 0};
                l.movingIsFirst = true;
                l.poleShift = Shift{2, 0};
            }
        }
        return l;
    }

    std::optional<UnfoldDef> unfoldDef(const SymKey& k) const override {
        if (k.kind != Kind::E && k.kind != Kind::F) return std::nullopt;
        if (k.root.path.size() != 2) return std::nullopt;
        CompLegs l = legs(k);
        UnfoldDef d;
        if (l.movingIsFirst) {
            d.moving = l.first;
            d.fixed = l.second;
            d.movingShift = l.firstShift;
            d.fixedShift = l.secondShift;
        } else {
            d.moving = l.second;
            d.fixed = l.first;
            d.movingShift = l.secondShift;
            d.fixedShift = l.firstShift;
        }
        d.movingFirst = l.movingIsFirst;
        d.poleShift = l.poleShift;
        return d;
    }

    std::optional<PairRule> rule(const SymKey& A, const SymKey& B) const override {
        if (A.kind == Kind::Abs || B.kind == Kind::Abs) return std::nullopt;
        bool aK = isKFamily(A.kind), bK = isKFamily(B.kind);
        if (aK && bK) return kkRule(A, B);
        if (aK || bK) return kCurrentRule(A, B);
        if (A.kind == B.kind) return sameFamilyRule(A, B);
        return efRule(A, B);
    }

private:
    RootSystem sys_;

    static PairRule trivial() { return PairRule{}; }

    std::vector<std::pair<SymKey, Shift>> flatLegs(const SymKey& k) const {
        if (k.root.path.size() == 1) return {{k, Shift{}}};
        CompLegs l = legs(k);
        return {{l.first, l.firstShift}, {l.second, l.secondShift}};
    }

    std::optional<PairRule> kkRule(const SymKey& A, const SymKey& B) const {
        bool aPlus = isKPlusFamily(A.kind), bPlus = isKPlusFamily(B.kind);
        if (aPlus == bPlus) return trivial();
        PairRule r;
        int p = pair(A.root, B.root);
        bool invert = !aPlus;
        if (A.kind == Kind::KPlusInv || A.kind == Kind::KMinusInv) invert = !invert;
        if (B.kind == Kind::KPlusInv || B.kind == Kind::KMinusInv) invert = !invert;
        auto& num = invert ? r.gden : r.gnum;
        auto& den = invert ? r.gnum : r.gden;
        // K+ K- = [(u-v+ihp/2+ihc/2)(u-v-ihp/2-ihc/2)]
        //        /[(u-v+ihp/2-ihc/2)(u-v-ihp/2+ihc/2)] K- K+
        num.push_back(LinForm{Shift{}, Shift{-2 * p, -2}});
        num.push_back(LinForm{Shift{}, Shift{2 * p, 2}});
        den.push_back(LinForm{Shift{}, Shift{-2 * p, 2}});
        den.push_back(LinForm{Shift{}, Shift{2 * p, -2}});
        return r;
    }

    std::optional<PairRule> kCurrentRule(const SymKey& A, const SymKey& B) const {
        bool aK = isKFamily(A.kind);
        const SymKey& K = aK ? A : B;
        const SymKey& X = aK ? B : A;
        if (K.root.path.size() != 1) return std::nullopt;
        PairRule r;
        for (const auto& [leg, legShift] : flatLegs(X)) {
            int p = sys_.pairing(K.root.simpleIndex(), leg.root.simpleIndex());
            bool ef = leg.kind == Kind::E;
            Kind kk = K.kind == Kind::KPlusInv ? Kind::KPlus
                      : K.kind == Kind::KMinusInv ? Kind::KMinus
                                                  : K.kind;
            // K(u) X(v) = [(u-v-ihp'/2-eps*ihc/4)/(u-v+ihp'/2-eps*ihc/4)] X K
            // with p' = p, eps = +1 for K+ e; p' = p, eps = -1 for K- e;
            //      p' = -p, eps = -1 for K+ f; p' = -p, eps = +1 for K- f.
            int pp = ef ? p : -p;
            int eps = (kk == Kind::KPlus) == ef ? 1 : -1;
            // numerator: u - v - ih pp/2 - eps ihc/4   => b - a = {2pp, eps}
            LinForm n{Shift{}, Shift{2 * pp, eps} };
            LinForm d{Shift{}, Shift{-2 * pp, eps} };
            n.b = n.b + legShift;
            d.b = d.b + legShift;
            bool invert = K.kind == Kind::KPlusInv || K.kind == Kind::KMinusInv;
            if (!aK) {
                invert = !invert;
                std::swap(n.a, n.b);
                std::swap(d.a, d.b);
            }
            if (invert) std::swap(n, d);
            r.gnum.push_back(n);
            r.gden.push_back(d);
        }
        return r;
    }

    Scalar hInv() const {
        Exp h;
        h.e[0] = 1;
        return Scalar(SPoly::one(), SPoly::monomial(h, 1));
    }

    std::optional<PairRule> efRule(const SymKey& A, const SymKey& B) const {
        const bool aE = A.kind == Kind::E;
        if (A.root.path.size() == 1 && B.root.path.size() == 1) {
            if (A.root != B.root) return trivial();
            PairRule r;
            r.symmetric = true;
            // [e(u), f(v)] = (i/h)[δ(u-v+ihc/2)K+(u+ihc/4) - δ(u-v-ihc/2)K-(v+ihc/4)]
            // i/h = -1/H with H = ih
            Scalar c = -hInv();
            Root root = A.root;
            if (aE) {
                Emission e1;
                e1.ds = Shift{0, -2};
                e1.coeff = c;
                e1.word = {EmitSym{detail::sym(Kind::KPlus, root, A.slot), 0, Shift{0, 1}}};
                Emission e2;
                e2.ds = Shift{0, 2};
                e2.coeff = -c;
                e2.word = {EmitSym{detail::sym(Kind::KMinus, root, A.slot), 1, Shift{0, 1}}};
                r.emissions = {e1, e2};
            } else {
                Emission e1;
                e1.ds = Shift{0, 2};
                e1.coeff = -c;
                e1.word = {EmitSym{detail::sym(Kind::KPlus, root, A.slot), 1, Shift{0, 1}}};
                Emission e2;
                e2.ds = Shift{0, -2};
                e2.coeff = c;
                e2.word = {EmitSym{detail::sym(Kind::KMinus, root, A.slot), 0, Shift{0, 1}}};
                r.emissions = {e1, e2};
            }
            return r;
        }
        return std::nullopt;
    }

    std::optional<PairRule> sameFamilyRule(const SymKey& A, const SymKey& B) const {
        const bool eFam = A.kind == Kind::E;
        const std::size_t la = A.root.path.size(), lb = B.root.path.size();
        if (la == 1 && lb == 1) {
            int p = pair(A.root, B.root);
            PairRule r;
            // e: (u-v-ihp/2)/(u-v+ihp/2); f: (u-v+ihp/2)/(u-v-ihp/2)
            int sgn = eFam ? 1 : -1;
            r.gnum.push_back(LinForm{Shift{}, Shift{sgn * 2 * p, 0}});
            r.gden.push_back(LinForm{Shift{}, Shift{-sgn * 2 * p, 0}});
            if (p == -1) {
                int x = A.root.simpleIndex(), y = B.root.simpleIndex();
                Emission em;
                em.coeff = Scalar(1);
                if (eFam) {
                    // pole at argA = argB + ih/2; e_{X+Y} at argA + ih/2
                    em.ds = Shift{2, 0};
                    em.word = {EmitSym{detail::sym(Kind::E, Root::composed(x, y, false), A.slot),
                                       0, Shift{2, 0}}};
                } else {
                    // pole at argA = argB - ih/2; f_{Y+X} at argB + ih/2
                    em.ds = Shift{-2, 0};
                    em.word = {EmitSym{detail::sym(Kind::F, Root::composed(y, x, false), A.slot),
                                       1, Shift{2, 0}}};
                }
                r.emissions.push_back(em);
            }
            return r;
        }
        if (la + lb == 3) {
            const SymKey& comp = la == 2 ? A : B;
            const SymKey& simp = la == 2 ? B : A;
            if (comp.root.check) return std::nullopt;
            int a = comp.root.path[0], b = comp.root.path[1];
            int s = simp.root.simpleIndex();
            if (s != a && s != b) {
                int p = pair(A.root, B.root);
                if (p == 0) return trivial();
                return std::nullopt;
            }
            PairRule r;
            auto form = [&](int num4, int den4) {
                // (argA - argB - num4~)/(argA - argB - den4~)
                r.gnum.push_back(LinForm{Shift{}, Shift{num4, 0}});
                r.gden.push_back(LinForm{Shift{}, Shift{den4, 0}});
            };
            if (eFam) {
                if (la == 1) {
                    if (s == a) {
                        // §6: e_a(u) e_{a+b}(v) = [(u-v-ih/2)/(u-v+ih/2)] swap
                        form(2, -2);
                    } else {
                        // reverse of e_{a+b} e_b
                        form(-4, -8);
                    }
                } else {
                    if (s == b) {
                        // §6: e_{a+b}(u) e_b(v) = [(u-v-2ih)/(u-v-ih)] swap
                        form(8, 4);
                    } else {
                        form(2, -2);
                    }
                }
            } else {
                if (la == 1) {
                    if (s == b) {
                        // corrected §6 third relation:
                        // f_b(u) f_{a+b}(v) = [(u-v+2ih)/(u-v+ih)] swap
                        form(-8, -4);
                    } else {
                        form(-2, 2);
                    }
                } else {
                    if (s == a) {
                        // §6: f_{a+b}(u) f_a(v) = [(u-v+ih/2)/(u-v-ih/2)] swap
                        form(-2, 2);
                    } else {
                        form(4, 8);
                    }
                }
            }
            return r;
        }
        return std::nullopt;
    }
};

} // namespace qca
