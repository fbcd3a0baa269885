#include "qca/root_data.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace qca;

namespace {

// Brute-force Weyl group enumeration: orbit of the identity action under the
// simple reflections, acting on simple-root coordinates.
std::size_t weylOrder(const RootSystem& sys) {
    int n = sys.rank();
    using Mat = std::vector<std::vector<int>>;
    Mat id(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) id[i][i] = 1;
    auto apply = [&](int i, const Mat& m) {
        Mat r = m;
        for (int col = 0; col < n; ++col) {
            std::vector<int> v(n);
            for (int row = 0; row < n; ++row) v[row] = m[row][col];
            v = sys.reflect(i, v);
            for (int row = 0; row < n; ++row) r[row][col] = v[row];
        }
        return r;
    };
    std::set<Mat> seen{id};
    std::vector<Mat> frontier{id};
    while (!frontier.empty()) {
        std::vector<Mat> next;
        for (const auto& m : frontier) {
            for (int i = 0; i < n; ++i) {
                Mat r = apply(i, m);
                if (seen.insert(r).second) next.push_back(r);
            }
        }
        frontier = std::move(next);
    }
    return seen.size();
}

// Shortest word reaching the longest element, by BFS: the longest element is
// the unique one sending all positive roots negative.
std::vector<int> bruteLongestWord(const RootSystem& sys) {
    int n = sys.rank();
    using State = std::vector<std::vector<int>>; // images of simple roots
    State id;
    for (int i = 0; i < n; ++i) id.push_back(sys.simpleRoot(i));
    auto isLongest = [&](const State& st) {
        for (const auto& v : st)
            for (int x : v)
                if (x > 0) return false;
        return true;
    };
    std::map<State, std::vector<int>> dist{{id, {}}};
    std::vector<State> frontier{id};
    while (!frontier.empty()) {
        std::vector<State> next;
        for (const auto& st : frontier) {
            auto word = dist[st];
            if (isLongest(st)) return word;
            for (int i = 0; i < n; ++i) {
                State r = st;
                for (auto& v : r) v = sys.reflect(i, v);
                // left multiplication: s_i ∘ w — order does not matter for
                // reaching w0; we only need some shortest word.
                if (dist.find(r) == dist.end()) {
                    auto w2 = word;
                    w2.push_back(i);
                    dist[r] = w2;
                    next.push_back(r);
                }
            }
        }
        frontier = std::move(next);
    }
    throw Error("longest element not found");
}

} // namespace

TEST_CASE("cartan pairings") {
    RootSystem a2('A', 2);
    CHECK(a2.pairing(0, 0) == 2);
    CHECK(a2.pairing(0, 1) == -1);
    std::vector<int> sum{1, 1};
    CHECK(a2.pairing(sum, a2.simpleRoot(1)) == 1); // (alpha+beta, beta) = -1+2
    CHECK(a2.pairing(sum, sum) == 2);
}

TEST_CASE("only simply-laced types accepted") {
    CHECK_THROWS_AS(RootSystem('B', 2), Error);
    CHECK_THROWS_AS(RootSystem('D', 3), Error);
    CHECK_THROWS_AS(RootSystem('E', 9), Error);
    CHECK_NOTHROW(RootSystem('D', 4));
    CHECK_NOTHROW(RootSystem('E', 6));
}

TEST_CASE("positive root counts") {
    CHECK(RootSystem('A', 1).positiveRoots().size() == 1);
    CHECK(RootSystem('A', 2).positiveRoots().size() == 3);
    CHECK(RootSystem('A', 3).positiveRoots().size() == 6);
    CHECK(RootSystem('D', 4).positiveRoots().size() == 12);
    CHECK(RootSystem('E', 6).positiveRoots().size() == 36);
}

TEST_CASE("longest word for A1 and A2") {
    CHECK(RootSystem('A', 1).reducedLongestWord() == std::vector<int>{0});
    CHECK(RootSystem('A', 2).reducedLongestWord() == std::vector<int>{0, 1, 0});
}

TEST_CASE("longest word length matches the brute-force Weyl oracle") {
    for (auto name : {"A2", "A3"}) {
        RootSystem sys = RootSystem::parse(name);
        auto word = sys.reducedLongestWord();
        auto brute = bruteLongestWord(sys);
        CHECK(word.size() == brute.size());
        CHECK(word.size() == sys.positiveRoots().size());
    }
    CHECK(weylOrder(RootSystem('A', 2)) == 6);
    CHECK(weylOrder(RootSystem('A', 3)) == 24);
}

TEST_CASE("root sequence of the longest word enumerates positive roots") {
    for (auto name : {"A2", "A3", "D4"}) {
        RootSystem sys = RootSystem::parse(name);
        auto word = sys.reducedLongestWord();
        auto gamma = sys.rootSequence(word);
        std::set<std::vector<int>> seen(gamma.begin(), gamma.end());
        CHECK(seen.size() == gamma.size());
        std::set<std::vector<int>> pos(sys.positiveRoots().begin(),
                                       sys.positiveRoots().end());
        CHECK(seen == pos);
    }
}

TEST_CASE("A2 gamma sequence for word s1 s2 s1") {
    RootSystem a2('A', 2);
    auto gamma = a2.rootSequence({0, 1, 0});
    REQUIRE(gamma.size() == 3);
    CHECK(gamma[0] == std::vector<int>{0, 1});
    CHECK(gamma[1] == std::vector<int>{1, 1});
    CHECK(gamma[2] == std::vector<int>{1, 0});
}

TEST_CASE("weight reflection") {
    RootSystem a2('A', 2);
    // s_0(omega_0) = omega_0 - alpha_0: in weight coords alpha_0 = (2,-1)
    auto r = a2.reflectWeight(0, {1, 0});
    CHECK(r == std::vector<int>{-1, 1});
}
