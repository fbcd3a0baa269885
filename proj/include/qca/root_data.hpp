#pragma once

#include "scalar.hpp"

#include <string>
#include <vector>

namespace qca {

// Simply-laced Cartan data (types A, D, E) with positive-root enumeration and
// reduced decompositions of the longest Weyl element.
class RootSystem {
public:
    RootSystem(char type, int rank) : type_(type), rank_(rank) {
        if (rank < 1) throw Error("root system rank must be positive");
        buildCartan();
        enumerateRoots();
    }

    static RootSystem parse(const std::string& name) {
        if (name.size() < 2) throw Error("bad root system name: " + name);
        return RootSystem(name[0], std::stoi(name.substr(1)));
    }

    char type() const { return type_; }
    int rank() const { return rank_; }
    std::string name() const { return std::string(1, type_) + std::to_string(rank_); }
    const std::vector<std::vector<int>>& cartan() const { return cartan_; }
    const std::vector<std::vector<int>>& positiveRoots() const { return roots_; }

    int pairing(const std::vector<int>& u, const std::vector<int>& v) const {
        long s = 0;
        for (int i = 0; i < rank_; ++i)
            for (int j = 0; j < rank_; ++j) s += static_cast<long>(u[i]) * cartan_[i][j] * v[j];
        return static_cast<int>(s);
    }
    int pairing(int i, int j) const {
        check(i);
        check(j);
        return cartan_[i][j];
    }

    std::vector<int> simpleRoot(int i) const {
        check(i);
        std::vector<int> v(rank_, 0);
        v[i] = 1;
        return v;
    }

    // s_i acting in simple-root coordinates.
    std::vector<int> reflect(int i, const std::vector<int>& v) const {
        check(i);
        std::vector<int> r = v;
        long pair = 0;
        for (int j = 0; j < rank_; ++j) pair += static_cast<long>(cartan_[i][j]) * v[j];
        r[i] -= static_cast<int>(pair);
        return r;
    }

    // Reflection on weights given in fundamental-weight coordinates:
    // s_i(lambda) = lambda - <lambda, alpha_i^vee> alpha_i, and alpha_i in
    // fundamental-weight coordinates is the i-th Cartan column.
    std::vector<int> reflectWeight(int i, const std::vector<int>& lambda) const {
        check(i);
        std::vector<int> r = lambda;
        int coeff = lambda[i];
        for (int j = 0; j < rank_; ++j) r[j] -= coeff * cartan_[i][j];
        return r;
    }

    // Lexicographically smallest reduced word for the longest element w0,
    // built by always removing the smallest available left descent.
    std::vector<int> reducedLongestWord() const {
        // Track w^{-1} acting on simple-root coordinates, starting from w = w0
        // conceptually; instead we peel descents off the identity-complement:
        // maintain v = current remaining element acting on roots, starting as
        // w0 unknown. Equivalent approach: walk rho down to -rho.
        std::vector<long> lambda(rank_, 1); // rho in fundamental-weight coords
        std::vector<int> word;
        const std::size_t target = roots_.size();
        while (word.size() < target) {
            int pick = -1;
            for (int i = 0; i < rank_; ++i) {
                if (lambda[i] > 0) {
                    pick = i;
                    break;
                }
            }
            if (pick < 0) throw Error("longest word construction stalled");
            // lambda <- s_pick(lambda)
            long coeff = lambda[pick];
            for (int j = 0; j < rank_; ++j) lambda[j] -= coeff * cartan_[pick][j];
            word.push_back(pick);
        }
        for (int i = 0; i < rank_; ++i)
            if (lambda[i] != -1) throw Error("longest word did not reach -rho");
        return word;
    }

    // gamma_k = s_{i_N} ... s_{i_{k+1}} (alpha_{i_k}) for k = 1..N (1-based in
    // the paper; 0-based here). Enumerates every positive root exactly once.
    std::vector<std::vector<int>> rootSequence(const std::vector<int>& word) const {
        std::vector<std::vector<int>> gamma(word.size());
        for (std::size_t k = 0; k < word.size(); ++k) {
            std::vector<int> v = simpleRoot(word[k]);
            for (std::size_t j = k + 1; j < word.size(); ++j) v = reflect(word[j], v);
            gamma[k] = v;
        }
        return gamma;
    }

private:
    char type_;
    int rank_;
    std::vector<std::vector<int>> cartan_;
    std::vector<std::vector<int>> roots_;

    void check(int i) const {
        if (i < 0 || i >= rank_) throw Error("root index out of range");
    }

    void buildCartan() {
        cartan_.assign(rank_, std::vector<int>(rank_, 0));
        for (int i = 0; i < rank_; ++i) cartan_[i][i] = 2;
        auto link = [&](int i, int j) {
            cartan_[i][j] = -1;
            cartan_[j][i] = -1;
        };
        switch (type_) {
        case 'A':
            for (int i = 0; i + 1 < rank_; ++i) link(i, i + 1);
            break;
        case 'D':
            if (rank_ < 4) throw Error("type D needs rank >= 4");
            for (int i = 0; i + 2 < rank_; ++i) link(i, i + 1);
            link(rank_ - 3, rank_ - 1);
            break;
        case 'E':
            if (rank_ < 6 || rank_ > 8) throw Error("type E needs rank 6..8");
            // chain 0-1-2-3-4(-5)(-6), last node attached to node 2
            for (int i = 0; i + 2 < rank_; ++i) link(i, i + 1);
            link(2, rank_ - 1);
            break;
        default:
            throw Error("only simply-laced types A, D, E are supported");
        }
    }

    void enumerateRoots() {
        std::vector<std::vector<int>> all;
        for (int i = 0; i < rank_; ++i) all.push_back(simpleRoot(i));
        for (std::size_t k = 0; k < all.size(); ++k) {
            for (int i = 0; i < rank_; ++i) {
                std::vector<int> r = reflect(i, all[k]);
                bool positive = false, negative = false;
                for (int x : r) {
                    if (x > 0) positive = true;
                    if (x < 0) negative = true;
                }
                if (negative && !positive) continue;
                if (std::find(all.begin(), all.end(), r) == all.end()) all.push_back(r);
            }
        }
        std::sort(all.begin(), all.end());
        roots_ = std::move(all);
    }
};

// One letter of a braid/lattice word: a signed braid generator T_i^{+-1} or an
// affine shift P_lambda with lambda in fundamental-weight coordinates.
struct BraidLetter {
    enum Kind { Braid, Shift } kind = Braid;
    int root = 0;
    int sign = +1;
    std::vector<int> weight; // for Shift

    static BraidLetter T(int root, int sign = +1) {
        BraidLetter l;
        l.kind = Braid;
        l.root = root;
        l.sign = sign;
        return l;
    }
    static BraidLetter P(std::vector<int> weight) {
        BraidLetter l;
        l.kind = Shift;
        l.weight = std::move(weight);
        return l;
    }
};

using BraidWord = std::vector<BraidLetter>;

} // namespace qca
