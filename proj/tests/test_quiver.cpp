#include "doctest.h"

#include "oracles.hpp"
#include "quiverkit/quiver.hpp"

#include <random>

using namespace quiverkit;

namespace {

std::vector<Arrow> arrows_of(std::initializer_list<std::array<int, 3>> list)
{
    std::vector<Arrow> out;
    for (auto [f, t, m] : list)
        out.push_back({f, t, m});
    return out;
}

const char* kA2 = "vertices: 2 0\narrow: 1 2\n";
const char* kC3 = "vertices: 3 0\narrow: 1 2\narrow: 2 3\narrow: 3 1\n";
const char* kMarkov = "vertices: 3 0\narrow: 1 2 2\narrow: 2 3 2\narrow: 3 1 2\n";
const char* kBanff = "vertices: 4 0\narrow: 1 2\narrow: 2 3\narrow: 3 1\narrow: 1 4\narrow: 2 4\narrow: 3 4\n";
const char* kTorus = "vertices: 4 0\narrow: 1 2\narrow: 1 3\narrow: 2 3\narrow: 4 1\narrow: 4 2\narrow: 3 4 2\n";
const char* kDirectSum =
    "vertices: 6 0\narrow: 1 2\narrow: 2 3\narrow: 3 1\narrow: 4 5\narrow: 6 5\narrow: 1 4\narrow: 1 5\n"
    "arrow: 2 4\narrow: 2 5 2\narrow: 2 6\n";

}  // namespace

TEST_CASE("parse_quiver reads the line format")
{
    auto a2 = parse_quiver(kA2);
    CHECK(a2.n_mutable() == 2);
    CHECK(a2.n_frozen() == 0);
    CHECK(a2.arrows() == arrows_of({{1, 2, 1}}));

    auto c3 = parse_quiver("# comment\nvertices: 3 0\n\narrow: 1 2\narrow: 2 3  # trailing\narrow: 3 1\n");
    CHECK(c3.arrows() == arrows_of({{1, 2, 1}, {2, 3, 1}, {3, 1, 1}}));

    CHECK(serialize(parse_quiver(kMarkov)) == kMarkov);
    CHECK(serialize(a2) == kA2);
}

TEST_CASE("parse_quiver rejects invalid input")
{
    CHECK_THROWS_WITH_AS(parse_quiver("vertices: 1 0\narrow: 1 1\n"), doctest::Contains("loop"), QuiverError);
    CHECK_THROWS_WITH_AS(parse_quiver("vertices: 2 0\narrow: 1 2\narrow: 2 1\n"), doctest::Contains("2-cycle"),
                         QuiverError);
    CHECK_THROWS_WITH_AS(parse_quiver("vertices: 1 2\narrow: 2 3\n"), doctest::Contains("frozen"), QuiverError);
    CHECK_THROWS_AS(parse_quiver("vertices: 2 0\narrow: 1\n"), QuiverError);
    CHECK_THROWS_AS(parse_quiver("vertices: 2 0\narrow: 1 5\n"), QuiverError);
    CHECK_THROWS_AS(parse_quiver("vertices: 2 0\narrow: 1 2 0\n"), QuiverError);
    CHECK_THROWS_AS(parse_quiver("arrow: 1 2\n"), QuiverError);
    CHECK_THROWS_AS(parse_quiver("vertices: 2 0\nedge: 1 2\n"), QuiverError);
    CHECK_THROWS_AS(parse_quiver(""), QuiverError);
}

TEST_CASE("big multiplicities survive parsing and mutation")
{
    auto q = parse_quiver("vertices: 3 0\narrow: 1 2 100000000000000000000\narrow: 2 3 100000000000000000000\n");
    auto m = mutate(q, 2);
    CHECK(m.b(1, 3) == Integer("10000000000000000000000000000000000000000"));
    CHECK(mutate(m, 2) == q);
}

TEST_CASE("mutate examples")
{
    auto a2 = parse_quiver(kA2);
    CHECK(mutate(a2, 1).arrows() == arrows_of({{2, 1, 1}}));
    CHECK(a2.arrows() == arrows_of({{1, 2, 1}}));  // input untouched

    auto c3 = parse_quiver(kC3);
    auto m2 = mutate(c3, 2);
    CHECK(m2.arrows() == arrows_of({{2, 1, 1}, {3, 2, 1}}));
    CHECK(oracle::dense(m2) == oracle::mutate(oracle::dense(c3), 1, 3));

    auto markov = parse_quiver(kMarkov);
    auto mk = mutate(markov, 1);
    CHECK(mk.arrows() == arrows_of({{1, 3, 2}, {2, 1, 2}, {3, 2, 2}}));
    CHECK(oracle::dense(mk) == oracle::mutate(oracle::dense(markov), 0, 3));

    CHECK_THROWS_AS(mutate(a2, 0), QuiverError);
    CHECK_THROWS_AS(mutate(a2, 3), QuiverError);
    CHECK_THROWS_AS(mutate(frame(a2), 3), QuiverError);
}

TEST_CASE("apply_sequence composes left to right")
{
    auto a2 = parse_quiver(kA2);
    auto c3 = parse_quiver(kC3);
    CHECK(apply_sequence(a2, std::vector{1, 2}) == mutate(mutate(a2, 1), 2));
    CHECK(apply_sequence(c3, std::vector{2}) == mutate(c3, 2));
    for (int k = 1; k <= 3; ++k)
        CHECK(apply_sequence(c3, std::vector{k, k}) == c3);
    CHECK_THROWS_AS(apply_sequence(a2, std::vector{1, 7}), QuiverError);
}

TEST_CASE("frame and coframe")
{
    auto a2 = parse_quiver(kA2);
    auto framed = frame(a2, Framing::framed);
    CHECK(framed.n_mutable() == 2);
    CHECK(framed.n_frozen() == 2);
    CHECK(framed.arrows() == arrows_of({{1, 2, 1}, {1, 3, 1}, {2, 4, 1}}));
    auto coframed = frame(a2, Framing::coframed);
    CHECK(coframed.arrows() == arrows_of({{1, 2, 1}, {3, 1, 1}, {4, 2, 1}}));
    CHECK(frame(Quiver(1, 0)).arrows() == arrows_of({{1, 2, 1}}));
    CHECK_THROWS_AS(frame(framed), QuiverError);
}

TEST_CASE("induced_subquiver")
{
    auto banff = parse_quiver(kBanff);
    auto acyclic = induced_subquiver(banff, std::vector{1, 2, 4});
    CHECK(acyclic.index_map == std::vector{1, 2, 4});
    CHECK(acyclic.quiver.arrows() == arrows_of({{1, 2, 1}, {1, 3, 1}, {2, 3, 1}}));
    CHECK(acyclic.quiver.label(3) == "4");

    auto cyc = induced_subquiver(banff, std::vector{3, 1, 2});
    CHECK(cyc.quiver == parse_quiver(kC3));

    CHECK(induced_subquiver(banff, std::vector{1, 2, 3, 4}).quiver == banff);
    CHECK_THROWS_AS(induced_subquiver(banff, std::vector{1, 9}), QuiverError);
    CHECK_THROWS_AS(induced_subquiver(banff, std::vector{1, 1}), QuiverError);

    auto framed = frame(parse_quiver(kA2));
    auto part = induced_subquiver(framed, std::vector{4, 2});
    CHECK(part.quiver.n_mutable() == 1);
    CHECK(part.quiver.n_frozen() == 1);
    CHECK(part.quiver.arrows() == arrows_of({{1, 2, 1}}));
}

TEST_CASE("vertex_status")
{
    auto a2 = parse_quiver(kA2);
    auto framed = frame(a2);
    CHECK(vertex_status(framed, 1) == VertexColor::green);
    CHECK(vertex_status(framed, 2) == VertexColor::green);
    auto once = apply_sequence(framed, std::vector{1});
    CHECK(vertex_status(once, 1) == VertexColor::red);
    CHECK(vertex_status(once, 2) == VertexColor::green);
    auto co = frame(parse_quiver(kTorus), Framing::coframed);
    for (int v = 1; v <= 4; ++v)
        CHECK(vertex_status(co, v) == VertexColor::red);

    Quiver mixed(1, 2);
    mixed.add_arrows(1, 2);
    mixed.add_arrows(3, 1);
    CHECK_THROWS_WITH_AS(vertex_status(mixed, 1), doctest::Contains("sign-coherence"), QuiverError);
    CHECK_THROWS_AS(vertex_status(a2, 1), QuiverError);
    CHECK_THROWS_AS(vertex_status(framed, 3), QuiverError);
}

TEST_CASE("acyclicity and condensation")
{
    auto a2 = acyclicity(parse_quiver(kA2));
    CHECK(a2.acyclic);
    CHECK(a2.order == std::vector{1, 2});

    auto c3 = acyclicity(parse_quiver(kC3));
    CHECK_FALSE(c3.acyclic);
    CHECK(c3.cycle == std::vector{1, 2, 3});

    auto banff = acyclicity(parse_quiver(kBanff));
    CHECK_FALSE(banff.acyclic);
    CHECK(banff.cycle == std::vector{1, 2, 3});

    // Frozen vertices are ignored.
    CHECK(acyclicity(frame(parse_quiver(kA2))).order == std::vector{1, 2});

    auto cc3 = condensation(parse_quiver(kC3));
    CHECK(cc3.components == std::vector<std::vector<int>>{{1, 2, 3}});

    auto cds = condensation(parse_quiver(kDirectSum));
    CHECK(cds.components == std::vector<std::vector<int>>{{1, 2, 3}, {4}, {6}, {5}});
    CHECK(cds.edges[0] == std::vector{1, 2, 3});

    auto ca2 = condensation(parse_quiver(kA2));
    CHECK(ca2.components == std::vector<std::vector<int>>{{1}, {2}});
    CHECK(ca2.edges[0] == std::vector{1});
}

TEST_CASE("sources_and_sinks")
{
    auto banff = sources_and_sinks(parse_quiver(kBanff));
    CHECK(banff.sources.empty());
    CHECK(banff.sinks == std::vector{4});
    auto torus = sources_and_sinks(parse_quiver(kTorus));
    CHECK(torus.sources.empty());
    CHECK(torus.sinks.empty());
    auto a2 = sources_and_sinks(parse_quiver(kA2));
    CHECK(a2.sources == std::vector{1});
    CHECK(a2.sinks == std::vector{2});
}

TEST_CASE("parse_sequence")
{
    CHECK(parse_sequence("1,3,4,2,1,3") == std::vector{1, 3, 4, 2, 1, 3});
    CHECK(parse_sequence("(1, 2)") == std::vector{1, 2});
    CHECK(parse_sequence("") == std::vector<int>{});
    CHECK(format_sequence(std::vector{1, 2}) == "(1,2)");
    CHECK_THROWS_AS(parse_sequence("1,,2"), QuiverError);
    CHECK_THROWS_AS(parse_sequence("1,x"), QuiverError);
}

TEST_CASE("property: mutation agrees with the matrix oracle and is an involution")
{
    std::mt19937 rng(20240601);
    for (int trial = 0; trial < 400; ++trial) {
        const int n = 1 + trial % 5;
        auto q = oracle::random_quiver(rng, n, 3);
        if (trial % 2)
            q = frame(q);
        for (int k = 1; k <= q.n_mutable(); ++k) {
            auto m = mutate(q, k);
            CHECK(oracle::dense(m) == oracle::mutate(oracle::dense(q), k - 1, q.n_mutable()));
            CHECK(mutate(m, k) == q);
            for (int i = 1; i <= m.size(); ++i) {
                CHECK(m.b(i, i) == 0);
                for (int j = 1; j <= m.size(); ++j) {
                    CHECK(m.b(i, j) == -m.b(j, i));
                    if (m.is_frozen(i) && m.is_frozen(j))
                        CHECK(m.b(i, j) == 0);
                }
            }
        }
        CHECK(parse_quiver(serialize(q)) == q);
    }
}

TEST_CASE("property: sign-coherence along framed mutation sequences")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + trial % 4;
        auto q = frame(oracle::random_quiver(rng, n, 2));
        for (int k : oracle::random_sequence(rng, n, 8)) {
            q = mutate(q, k);
            for (int v = 1; v <= n; ++v)
                CHECK_NOTHROW(vertex_status(q, v));
        }
    }
}
