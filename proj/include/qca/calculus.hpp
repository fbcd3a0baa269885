#pragma once

#include "expr.hpp"
#include "root_data.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace qca {

// Linear form in two symbol arguments: multiplicative (q^a X' - q^b Y'),
// additive (X' + a~) - (Y' + b~), where X', Y' are the full shifted args.
struct LinForm {
    Shift a, b;
};

// One delta term emitted by a transposition X(argA) Y(argB) -> Y X. The delta
// has support argA = q^ds argB; the replacement word is built from the pair's
// arguments.
struct EmitSym {
    SymKey key;
    int fromArg = 0; // 0: argA, 1: argB
    Shift shift;
};
struct Emission {
    Scalar coeff{1};
    Shift ds;
    std::vector<EmitSym> word;
};

struct PairRule {
    std::vector<LinForm> gnum, gden; // empty: g = 1
    std::vector<Emission> emissions; // direct-form deltas for this order
    bool symmetric = false;          // commutator-style rule: both orders direct
};

// Composition data of a composed-root current (Eqs. 12/11 and the Yangian
// analogs): the moving leg is integrated around the pole.
struct UnfoldDef {
    SymKey moving, fixed;
    Shift movingShift, fixedShift; // definition arguments relative to z
    bool movingFirst = true;       // order in the :: definition
    Shift poleShift;               // pole at w = q^poleShift z
};

class Model {
public:
    virtual ~Model() = default;
    virtual Alg alg() const = 0;
    virtual std::optional<PairRule> rule(const SymKey& a, const SymKey& b) const = 0;
    virtual std::optional<UnfoldDef> unfoldDef(const SymKey& k) const = 0;

    // total order used by canonical / resolution sorting
    virtual int classRank(const SymKey& k, bool resolution) const {
        switch (k.kind) {
        case Kind::KPlus:
        case Kind::KPlusInv:
        case Kind::KMinus:
        case Kind::KMinusInv: return 0;
        case Kind::E: return resolution ? 2 : 1;
        case Kind::F: return resolution ? 1 : 2;
        case Kind::Abs: return 3;
        }
        return 4;
    }
    bool symLess(const Sym& a, const Sym& b, bool resolution) const {
        auto key = [&](const Sym& s) {
            return std::tuple(int(s.key.slot), classRank(s.key, resolution), s.key.root,
                              int(s.key.absId), int(s.key.kind), s.var, s.shift);
        };
        return key(a) < key(b);
    }
};

// --- generic engine ----------------------------------------------------------

class Engine {
public:
    explicit Engine(const Model& m) : m_(m) {}

    // Multiply a term's prefactor by the linear-form ratio evaluated at the
    // two arguments. Returns false if the term dies (zero numerator factor).
    // `pinLocus`/`pinTag`: orientation to commit for a denominator factor that
    // lands on the pinned locus.
    bool applyG(Term& t, const std::vector<LinForm>& num, const std::vector<LinForm>& den,
                VarId vx, Shift sx, VarId vy, Shift sy,
                const std::optional<Binom>& pinLocus = std::nullopt,
                Orient pinTag = Orient::None) const {
        Alg alg = m_.alg();
        for (const auto& lf : num) {
            LinearValue lv = makeLinear(vx, sx + lf.a, vy, sy + lf.b, Shift{}, alg);
            if (lv.zero) return false;
            t.pref.num = t.pref.num.scaled(lv.unit);
            if (lv.binom) {
                t.pref.num = t.pref.num * binomPoly(*lv.binom, alg);
            } else if (lv.var >= 0) {
                t.pref.num = t.pref.num.mulMono(VarMono::var(lv.var));
            }
        }
        for (const auto& lf : den) {
            LinearValue lv = makeLinear(vx, sx + lf.a, vy, sy + lf.b, Shift{}, alg);
            if (lv.zero) throw Error("exchange function pole at coincident arguments");
            t.pref.num = t.pref.num.scaled(lv.unit.inv());
            if (lv.binom) {
                Orient tag = Orient::None;
                if (pinLocus && *lv.binom == *pinLocus) tag = pinTag;
                t.pref.mulDen(DenFactor{*lv.binom, tag});
            } else if (lv.var >= 0) {
                t.pref.num = t.pref.num.mulMono(VarMono::var(lv.var, -1, 0));
            }
        }
        return true;
    }

    // Locus of an emission's delta support as a canonical binomial (when the
    // two arguments live on distinct variables).
    static std::optional<Binom> supportLocus(const Sym& A, const Sym& B, Shift ds) {
        if (A.var == B.var) return std::nullopt;
        Shift rel = B.shift + ds - A.shift;
        if (A.var < B.var) return Binom{A.var, B.var, rel};
        return Binom{B.var, A.var, -rel};
    }

    // Orientation the term pins at the given locus, expressed as which side is
    // big on the canonical binomial (None when unconstrained).
    Orient constraintAt(const Term& t, const Binom& b) const {
        for (const auto& [f, c] : t.pref.den)
            if (f.b == b && f.tag != Orient::None) return f.tag;
        for (const auto& r : t.recs) {
            if (const RecLocus* l = r.find(b)) {
                // pole inside the contour of r.v means |r.v| is on the big side
                bool xIsRec = b.x == r.v;
                if (!xIsRec && b.y != r.v) continue;
                bool xBig = xIsRec == l->inside;
                return xBig ? Orient::FirstBig : Orient::SecondBig;
            }
        }
        return Orient::None;
    }

    // Orientation "argument of symbol S is on the small side" at the locus of
    // a binomial, translated to the canonical FirstBig/SecondBig form.
    static Orient smallSideOf(const Binom& b, VarId v) {
        // v-side small: the other side is big
        return b.x == v ? Orient::SecondBig : Orient::FirstBig;
    }

    // Transpose word positions i, i+1. Appends the resulting terms to `out`.
    // Returns false when the pair cannot be transposed (no rule, or the
    // exchange data is singular at these arguments).
    bool transpose(const Term& t, std::size_t i, std::vector<Term>& out) const {
        const Sym A = t.word[i];
        const Sym B = t.word[i + 1];
        if (A.key.slot != B.key.slot) {
            Term main = t;
            std::swap(main.word[i], main.word[i + 1]);
            out.push_back(std::move(main));
            return true;
        }
        auto rAB = m_.rule(A.key, B.key);
        if (!rAB) return false;

        // Candidate identities for an emission pair:
        //   direct   X(A)Y(B) = g [A-side small at L] Y X + (deltas at L)
        //   solved   X(A)Y(B) = g [A-side big at L'] Y X - g (deltas of Y X)
        // where L is the direct support and L' the support of the reversed
        // rule. A flag or tag at the relevant locus selects the form whose
        // committed region matches; unconstrained pairs use the direct form.
        bool useSolved = false;
        std::optional<Binom> pinLocus;
        Orient pinTag = Orient::None;
        std::optional<PairRule> rBA;
        if (!rAB->symmetric && (!rAB->emissions.empty() || true)) {
            rBA = m_.rule(B.key, A.key);
            std::optional<Binom> Ldir, Lrev;
            if (!rAB->emissions.empty()) Ldir = supportLocus(A, B, rAB->emissions[0].ds);
            if (rBA && !rBA->emissions.empty()) Lrev = supportLocus(B, A, rBA->emissions[0].ds);
            if (Ldir) {
                Orient want = smallSideOf(*Ldir, A.var); // direct: A-side small
                Orient have = constraintAt(t, *Ldir);
                if (have == Orient::None || have == want) {
                    pinLocus = Ldir;
                    pinTag = want;
                } else if (rBA && !rBA->emissions.empty()) {
                    // direct region mismatches; the solved form pins the same
                    // locus with the opposite orientation
                    useSolved = true;
                    pinLocus = Ldir;
                    pinTag = have;
                } else {
                    throw Error("no region-consistent exchange identity");
                }
            } else if (Lrev && rBA && !rBA->emissions.empty()) {
                // only the reversed identity emits; honor a constraint at its
                // main-denominator locus (the direct locus of (B,A))
                std::optional<Binom> LdirBA = supportLocus(B, A, rBA->emissions[0].ds);
                if (LdirBA) {
                    Orient have = constraintAt(t, *LdirBA);
                    Orient bigA = smallSideOf(*LdirBA, B.var); // == A-side big
                    if (have == bigA) {
                        useSolved = true;
                        pinLocus = LdirBA;
                        pinTag = have;
                    }
                }
                if (!useSolved && !rAB->emissions.empty()) {
                    pinLocus = Ldir;
                    pinTag = Ldir ? smallSideOf(*Ldir, A.var) : Orient::None;
                }
            }
        }

        Term main = t;
        std::swap(main.word[i], main.word[i + 1]);
        bool alive = applyG(main, rAB->gnum, rAB->gden, A.var, A.shift, B.var, B.shift,
                            pinLocus, pinTag);
        if (alive) {
            main.pref.reduce(m_.alg());
            if (!main.pref.isZero()) out.push_back(std::move(main));
        }

        auto emitTerm = [&](const Emission& em, const Sym& first, const Sym& second,
                            bool solvedExtra) {
            Term e = t;
            DeltaBuild db = makeDelta(first.var, first.shift, second.var, second.shift, em.ds);
            if (db.ill) throw Error("emission delta at a constant point");
            if (db.dead) return;
            e.deltas.push_back(db.d);
            std::sort(e.deltas.begin(), e.deltas.end());
            Word nw;
            for (std::size_t k = 0; k < e.word.size(); ++k) {
                if (k == i) {
                    for (const auto& es : em.word) {
                        const Sym& src = es.fromArg == 0 ? first : second;
                        nw.push_back(Sym{es.key, src.var, src.shift + es.shift});
                    }
                    ++k; // skip the pair
                    if (k >= e.word.size()) break;
                }
                nw.push_back(e.word[k]);
            }
            e.word = std::move(nw);
            e.pref.num = e.pref.num.scaled(em.coeff);
            if (solvedExtra) {
                // solved form: X Y = g Y X - g (emission of the Y X identity)
                e.pref.num = e.pref.num.scaled(Scalar(-1));
                if (!applyG(e, rAB->gnum, rAB->gden, A.var, A.shift, B.var, B.shift,
                            pinLocus, pinTag))
                    return;
            }
            e.pref.reduce(m_.alg());
            if (!e.pref.isZero()) out.push_back(std::move(e));
        };

        if (rAB->symmetric) {
            for (const auto& em : rAB->emissions) emitTerm(em, A, B, false);
        } else if (useSolved) {
            for (const auto& em : rBA->emissions) emitTerm(em, B, A, true);
        } else {
            for (const auto& em : rAB->emissions) emitTerm(em, A, B, false);
        }
        return true;
    }

    // Cancel adjacent exact inverse K pairs (same root, slot and argument).
    static void cancelInverses(Term& t) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i + 1 < t.word.size(); ++i) {
                const Sym& a = t.word[i];
                const Sym& b = t.word[i + 1];
                if (isKFamily(a.key.kind) && isKFamily(b.key.kind) &&
                    a.key.root == b.key.root && a.key.slot == b.key.slot &&
                    a.var == b.var && a.shift == b.shift &&
                    b.key.kind == inverseKind(a.key.kind)) {
                    t.word.erase(t.word.begin() + i, t.word.begin() + i + 2);
                    changed = true;
                    break;
                }
            }
        }
    }

    // Bubble-sort a term's word under the given order; emissions are queued
    // and sorted recursively. Untransposable pairs are left in place.
    std::vector<Term> sortWord(Term t, bool resolution) const {
        std::vector<Term> done;
        std::vector<Term> work{std::move(t)};
        while (!work.empty()) {
            Term cur = std::move(work.back());
            work.pop_back();
            cancelInverses(cur);
            bool restart = false;
            for (std::size_t pass = 0; !restart; ++pass) {
                bool swapped = false;
                for (std::size_t i = 0; i + 1 < cur.word.size(); ++i) {
                    if (m_.symLess(cur.word[i + 1], cur.word[i], resolution)) {
                        std::vector<Term> res;
                        if (!transpose(cur, i, res)) continue; // stuck pair
                        // first result is the main term when it survived
                        bool gotMain = false;
                        for (auto& r : res) {
                            if (!gotMain && r.word.size() == cur.word.size()) {
                                cancelInverses(r);
                                cur = std::move(r);
                                gotMain = true;
                            } else {
                                work.push_back(std::move(r));
                            }
                        }
                        if (!gotMain) {
                            restart = true; // main term died; nothing to sort
                            cur.pref.num = MPoly::zero();
                        }
                        swapped = true;
                        break;
                    }
                }
                if (!swapped) break;
                if (pass > 10000) throw Error("word sorting exceeded step budget");
            }
            if (!cur.pref.isZero()) done.push_back(std::move(cur));
        }
        return done;
    }

    // --- delta application ----------------------------------------------------

    // Substitute one delta constraint; returns false if the term dies.
    bool applyDeltas(Term& t) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t di = 0; di < t.deltas.size(); ++di) {
                Delta d = t.deltas[di];
                // choose the variable to eliminate: a record variable if one
                // side is one, otherwise the later variable
                int recIdxX = recIndex(t, d.x), recIdxY = recIndex(t, d.y);
                VarId elim;
                VarId keep;
                Shift sub; // elim := (keep, sub)
                if (recIdxX >= 0 || recIdxY >= 0) {
                    bool pickX = recIdxX >= 0 && (recIdxY < 0 || recIdxX > recIdxY);
                    if (pickX) {
                        elim = d.x;
                        keep = d.y;
                        sub = d.s; // x = q^s y
                    } else {
                        elim = d.y;
                        keep = d.x;
                        sub = -d.s; // y = q^{-s} x
                    }
                    if (!consumeRecWithDelta(t, elim, keep, sub, di)) return false;
                    changed = true;
                    break;
                }
                // external-external: substitute the later variable everywhere
                // outside the delta itself
                VarId later = std::max(d.x, d.y);
                if (!variableUsedOutsideDelta(t, later, di)) continue;
                Delta saved = d;
                t.deltas.erase(t.deltas.begin() + di);
                bool alive;
                if (later == saved.x) {
                    alive = substVar(t, saved.x, saved.y, saved.s, m_.alg());
                } else {
                    alive = substVar(t, saved.y, saved.x, -saved.s, m_.alg());
                }
                t.deltas.push_back(saved);
                std::sort(t.deltas.begin(), t.deltas.end());
                if (!alive) return false;
                changed = true;
                break;
            }
        }
        return true;
    }

    static int recIndex(const Term& t, VarId v) {
        for (std::size_t i = 0; i < t.recs.size(); ++i)
            if (t.recs[i].v == v) return static_cast<int>(i);
        return -1;
    }

    static bool variableUsedOutsideDelta(const Term& t, VarId v, std::size_t di) {
        Term probe = t;
        probe.deltas.erase(probe.deltas.begin() + di);
        return probe.usesVar(v);
    }

    // Integrate out rec var `elim` against a delta: flags of matching
    // denominator loci become orientation tags, the record and delta vanish.
    bool consumeRecWithDelta(Term& t, VarId elim, VarId keep, Shift sub, std::size_t di) const {
        int ri = recIndex(t, elim);
        Rec rec = t.recs[ri];
        // transfer flags to tags on denominator factors containing elim
        for (auto& [f, c] : t.pref.den) {
            if (!f.b.uses(elim)) continue;
            const RecLocus* l = rec.find(f.b);
            if (!l) throw Error("unflagged pole in integration variable");
            Orient o;
            if (f.b.x == elim) {
                o = l->inside ? Orient::FirstBig : Orient::SecondBig;
            } else {
                o = l->inside ? Orient::SecondBig : Orient::FirstBig;
            }
            if (f.tag != Orient::None && f.tag != o)
                throw Error("inconsistent expansion regions");
            f.tag = o;
        }
        t.recs.erase(t.recs.begin() + ri);
        t.deltas.erase(t.deltas.begin() + di);
        return substVar(t, elim, keep, sub, m_.alg());
    }

    // --- record consumption -----------------------------------------------

    // Try to evaluate the innermost record of a term whose word is free of the
    // record variable: single-contour residue evaluation.
    bool consumeRationalRec(Term& t) const {
        if (t.recs.empty()) return false;
        Rec rec = t.recs.back();
        VarId v = rec.v;
        for (const auto& s : t.word)
            if (s.var == v) return false;
        for (const auto& d : t.deltas)
            if (d.uses(v)) return false; // handled by applyDeltas
        if (m_.alg() == Alg::Add) return false; // line integrals stay formal
        // ensure every denominator pole in v is flagged
        std::vector<std::pair<Binom, bool>> poles; // binom, effective-inside
        for (const auto& [f, c] : t.pref.den) {
            if (!f.b.uses(v)) continue;
            if (c > 1) throw Error("higher-order pole in residue evaluation");
            bool inside;
            if (f.tag != Orient::None) {
                inside = (f.b.x == v) == (f.tag == Orient::FirstBig);
            } else {
                const RecLocus* l = rec.find(f.b);
                if (!l) throw Error("unflagged pole in integration variable");
                inside = l->inside;
            }
            poles.push_back({f.b, inside});
        }
        Term base = t;
        base.recs.pop_back();
        Expr out;
        // residues at inside poles
        for (const auto& [b, inside] : poles) {
            if (!inside) continue;
            Term r = base;
            if (!residueAt(r, v, b)) continue;
            out.terms.push_back(std::move(r));
        }
        // residue at the origin
        {
            Term r = base;
            if (originResidue(r, v)) out.terms.push_back(std::move(r));
        }
        // replace t by the sum; caller integrates `out` into the worklist
        pendingRec_ = std::move(out);
        return true;
    }

    // Residue of pref/v at the pole of binom b (which must divide den once),
    // substituting the word and remaining structure at the pole.
    bool residueAt(Term& t, VarId v, const Binom& b) const {
        Alg alg = m_.alg();
        // remove the factor
        bool found = false;
        for (auto& [f, c] : t.pref.den) {
            if (f.b == b) {
                c -= 1;
                found = true;
                break;
            }
        }
        if (!found) throw Error("residueAt: factor not present");
        t.pref.den.erase(std::remove_if(t.pref.den.begin(), t.pref.den.end(),
                                        [](const auto& p) { return p.second == 0; }),
                         t.pref.den.end());
        VarId keep;
        Shift sub;
        Scalar dfactor; // d(binom)/dv at the pole
        if (b.x == v) {
            keep = b.y;
            sub = b.s;
            dfactor = Scalar(1);
        } else {
            keep = b.x;
            sub = -b.s;
            dfactor = alg == Alg::Mult ? -shiftMonomial(b.s) : Scalar(-1);
        }
        // transfer flags on other den loci in v
        Rec rec;
        for (const auto& r : t.recs)
            if (r.v == v) rec = r;
        for (auto& [f, c] : t.pref.den) {
            if (!f.b.uses(v)) continue;
            const RecLocus* l = rec.find(f.b);
            if (!l) throw Error("unflagged pole in integration variable");
            Orient o = (f.b.x == v) == l->inside ? Orient::FirstBig : Orient::SecondBig;
            if (f.tag != Orient::None && f.tag != o)
                throw Error("inconsistent expansion regions");
            f.tag = o;
        }
        t.recs.erase(t.recs.begin() + recIndex(t, v));
        t.pref.num = t.pref.num.scaled(dfactor.inv());
        if (alg == Alg::Mult) {
            // measure dv/v contributes 1/pole = q^{-sub} keep^{-1}
            t.pref.num = t.pref.num.scaled(shiftMonomial(-sub));
            t.pref.num = t.pref.num.mulMono(VarMono::var(keep, -1, 0));
        }
        return substVar(t, v, keep, sub, alg);
    }

    // Residue at the origin of pref(v)/v dv: the v^0 coefficient of num/den
    // with denominator factors expanded locally at v = 0 (multiplicative).
    bool originResidue(Term& t, VarId v) const {
        // split num by powers of v
        std::map<int, MPoly> numByPow;
        for (const auto& [m, c] : t.pref.num.terms()) {
            VarMono rest;
            int pw = 0;
            for (const auto& vp : m.ps) {
                if (vp.v == v) {
                    if (vp.eps4) throw Error("exp factor in multiplicative residue");
                    pw = vp.pow;
                } else {
                    rest.ps.push_back(vp);
                }
            }
            auto& slot = numByPow[pw];
            slot = slot + MPoly::monomial(rest, c);
        }
        int minPow = numByPow.empty() ? 0 : numByPow.begin()->first;
        int order = std::max(0, -minPow);
        // series of 1/den at v = 0 up to v^order
        std::vector<MPoly> invSeries(static_cast<std::size_t>(order) + 1);
        invSeries[0] = MPoly::one();
        auto oldDen = t.pref.den;
        std::vector<std::pair<DenFactor, int>> keepDen;
        for (const auto& [f, c] : oldDen) {
            if (!f.b.uses(v)) {
                keepDen.push_back({f, c});
                continue;
            }
            for (int rep = 0; rep < c; ++rep) {
                // factor: (x - q^s y); local series in v
                std::vector<MPoly> fs(static_cast<std::size_t>(order) + 1);
                if (f.b.x == v) {
                    // 1/(v - A) = -(1/A) sum (v/A)^k, A = q^s y
                    MPoly Ainv = MPoly::monomial(VarMono::var(f.b.y, -1, 0),
                                                 shiftMonomial(-f.b.s));
                    MPoly pw = Ainv;
                    for (int k = 0; k <= order; ++k) {
                        fs[static_cast<std::size_t>(k)] = -pw;
                        pw = pw * Ainv;
                    }
                } else {
                    // 1/(x - q^s v) = (1/x) sum (q^s v / x)^k
                    MPoly Xinv = MPoly::monomial(VarMono::var(f.b.x, -1, 0), Scalar(1));
                    MPoly ratio = Xinv.scaled(shiftMonomial(f.b.s));
                    MPoly pw = Xinv;
                    for (int k = 0; k <= order; ++k) {
                        fs[static_cast<std::size_t>(k)] = pw;
                        pw = pw * ratio;
                    }
                }
                std::vector<MPoly> ns(static_cast<std::size_t>(order) + 1);
                for (int a = 0; a <= order; ++a)
                    for (int bb = 0; a + bb <= order; ++bb)
                        ns[static_cast<std::size_t>(a + bb)] =
                            ns[static_cast<std::size_t>(a + bb)] +
                            invSeries[static_cast<std::size_t>(a)] * fs[static_cast<std::size_t>(bb)];
                invSeries = std::move(ns);
            }
        }
        MPoly result;
        for (const auto& [pw, coeff] : numByPow) {
            if (pw > 0) continue; // needs v^{-pw} from the series: only k = -pw
            int k = -pw;
            if (k <= order) result = result + coeff * invSeries[static_cast<std::size_t>(k)];
        }
        t.pref.num = result;
        t.pref.den = keepDen;
        t.recs.erase(t.recs.begin() + recIndex(t, v));
        t.pref.reduce(m_.alg());
        return !t.pref.isZero();
    }

    mutable Expr pendingRec_;

    const Model& m_;
};

} // namespace qca
