#include "doctest.h"

#include "oracles.hpp"
#include "trees.hpp"
#include "quiverkit/structure.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace quiverkit;

namespace {

const char* kA2 = "vertices: 2 0\narrow: 1 2\n";
const char* kC3 = "vertices: 3 0\narrow: 1 2\narrow: 2 3\narrow: 3 1\n";
const char* kMarkov = "vertices: 3 0\narrow: 1 2 2\narrow: 2 3 2\narrow: 3 1 2\n";
const char* kBanff = "vertices: 4 0\narrow: 1 2\narrow: 2 3\narrow: 3 1\narrow: 1 4\narrow: 2 4\narrow: 3 4\n";
const char* kTorus = "vertices: 4 0\narrow: 1 2\narrow: 1 3\narrow: 2 3\narrow: 4 1\narrow: 4 2\narrow: 3 4 2\n";
const char* kDirectSum =
    "vertices: 6 0\narrow: 1 2\narrow: 2 3\narrow: 3 1\narrow: 4 5\narrow: 6 5\narrow: 1 4\narrow: 1 5\n"
    "arrow: 2 4\narrow: 2 5 2\narrow: 2 6\n";

SearchLimits small_limits()
{
    SearchLimits lim;
    lim.max_depth = 10;
    lim.max_states = 20'000;
    lim.max_millis = std::chrono::milliseconds(20'000);
    return lim;
}

bool has_isolated(const Quiver& q)
{
    for (int v = 1; v <= q.n_mutable(); ++v)
        if (q.successors(v).empty() && q.predecessors(v).empty())
            return true;
    return false;
}

ClassPTree c3_tree()
{
    // The path 1 -> 2 -> 3 mutated at 2 is the cycle 1 -> 3 -> 2 -> 1.
    auto a2 = ClassPTree::extension(ClassPTree::one_vertex(), ClassPTree::one_vertex(), {{1, 2, 1}},
                                    ClassPTree::Direction::left_to_right);
    auto path = ClassPTree::extension(a2, ClassPTree::one_vertex(), {{2, 3, 1}}, ClassPTree::Direction::left_to_right);
    return ClassPTree::mutated(path, {2});
}

}  // namespace

TEST_CASE("on_biinfinite_path examples")
{
    CHECK(on_biinfinite_path(parse_quiver(kC3), 1, 2));
    CHECK_FALSE(on_biinfinite_path(parse_quiver(kBanff), 3, 4));
    CHECK_FALSE(on_biinfinite_path(parse_quiver(kA2), 1, 2));
    CHECK_THROWS_AS(on_biinfinite_path(parse_quiver(kA2), 2, 1), QuiverError);
}

TEST_CASE("covering_pairs examples")
{
    CHECK(covering_pairs(parse_quiver(kBanff)) == std::vector<CoveringPair>{{1, 4}, {2, 4}, {3, 4}});
    CHECK(covering_pairs(parse_quiver(kC3)).empty());
    CHECK(covering_pairs(parse_quiver(kTorus)).empty());
}

TEST_CASE("descendant_split examples")
{
    CHECK(descendant_split(parse_quiver(kBanff), 4) == VertexSplit{{1, 2, 3}, {4}});
    CHECK(descendant_split(parse_quiver(kDirectSum), 4) == VertexSplit{{1, 2, 3, 6}, {4, 5}});
    CHECK(descendant_split(parse_quiver(kC3), 1) == VertexSplit{{}, {1, 2, 3}});
}

TEST_CASE("triangular_decompositions examples")
{
    const auto ds = parse_quiver(kDirectSum);
    const auto splits = triangular_decompositions(ds, 100);
    std::vector<std::vector<int>> a_sides;
    for (const auto& s : splits)
        a_sides.push_back(s.a_side);
    std::sort(a_sides.begin(), a_sides.end());
    CHECK(a_sides == std::vector<std::vector<int>>{{1, 2, 3}, {1, 2, 3, 4}, {1, 2, 3, 4, 6}, {1, 2, 3, 6}});
    CHECK(std::find(splits.begin(), splits.end(), VertexSplit{{1, 2, 3}, {4, 5, 6}}) != splits.end());
    CHECK(triangular_decompositions(ds, 2).size() == 2);
    CHECK(triangular_decompositions(parse_quiver(kC3), 100).empty());
}

TEST_CASE("is_triangular_split")
{
    const auto ds = parse_quiver(kDirectSum);
    CHECK(is_triangular_split(ds, {{1, 2, 3}, {4, 5, 6}}));
    CHECK_FALSE(is_triangular_split(ds, {{4, 5, 6}, {1, 2, 3}}));
    CHECK_FALSE(is_triangular_split(ds, {{1, 2}, {4, 5, 6}}));
}

TEST_CASE("check_source_sink_equivalence examples")
{
    CHECK(check_source_sink_equivalence(parse_quiver(kBanff)));
    CHECK(check_source_sink_equivalence(parse_quiver(kTorus)));
    CHECK(check_source_sink_equivalence(parse_quiver(kC3)));
    CHECK_THROWS_AS(check_source_sink_equivalence(Quiver(2, 0)), QuiverError);
}

TEST_CASE("certify_banff on the covering-pair example")
{
    const auto q = parse_quiver(kBanff);
    const auto r = certify_banff(q, small_limits());
    REQUIRE(r.answer == Answer::yes);
    REQUIRE(r.certificate);
    const auto& c = *r.certificate;
    CHECK(c.kind == BanffCertificate::Kind::covering_split);
    CHECK(c.sequence.empty());
    CHECK(c.pair == CoveringPair{3, 4});
    CHECK(c.without_i->kind == BanffCertificate::Kind::acyclic_leaf);
    CHECK(c.without_j->kind == BanffCertificate::Kind::mutation_acyclic_leaf);
    CHECK_FALSE(banff_certificate_error(q, c));
}

TEST_CASE("certify_banff on the torus and Markov quivers")
{
    const auto torus = parse_quiver(kTorus);
    auto r = certify_banff(torus, small_limits());
    REQUIRE(r.answer == Answer::no);
    REQUIRE(r.refutation);
    CHECK(r.refutation->representatives.size() == 1);
    CHECK(r.refutation->pairs.empty());
    CHECK_FALSE(banff_refutation_error(torus, *r.refutation));

    r = certify_banff(parse_quiver(kMarkov), small_limits());
    CHECK(r.answer == Answer::no);
}

TEST_CASE("certify_banff leaves and forged certificates")
{
    const auto a2 = parse_quiver(kA2);
    auto r = certify_banff(a2, small_limits());
    REQUIRE(r.answer == Answer::yes);
    CHECK(r.certificate->kind == BanffCertificate::Kind::acyclic_leaf);
    CHECK(r.certificate->sequence == MutationSequence{1, 2});

    BanffCertificate bad{BanffCertificate::Kind::acyclic_leaf, {2, 1}, {}, nullptr, nullptr};
    CHECK(banff_certificate_error(a2, bad));

    const auto torus = parse_quiver(kTorus);
    BanffCertificate forged{BanffCertificate::Kind::mutation_acyclic_leaf, {1, 2}, {}, nullptr, nullptr};
    CHECK(banff_certificate_error(torus, forged));
    BanffCertificate split{BanffCertificate::Kind::covering_split, {}, {1, 2}, nullptr, nullptr};
    CHECK(banff_certificate_error(torus, split));
}

TEST_CASE("certify_banff on a quiver needing mutation before a split")
{
    // The framed-style quiver with a 3-cycle and one extra vertex is cyclic
    // everywhere only after mutation; whatever the path, the certificate must replay.
    const auto q = mutate(parse_quiver(kBanff), 4);
    const auto r = certify_banff(q, small_limits());
    REQUIRE(r.answer == Answer::yes);
    CHECK_FALSE(banff_certificate_error(q, *r.certificate));
}

TEST_CASE("relabeled certificates replay on relabeled quivers")
{
    const auto q = parse_quiver(kDirectSum);
    const auto r = certify_banff(q, small_limits());
    REQUIRE(r.answer == Answer::yes);
    const std::vector<int> perm{6, 4, 2, 1, 3, 5};
    const auto c = relabel_certificate(*r.certificate, perm);
    CHECK_FALSE(banff_certificate_error(relabel(q, perm), c));
}

TEST_CASE("verify_class_p_tree examples")
{
    const auto a2_tree = ClassPTree::extension(ClassPTree::one_vertex(), ClassPTree::one_vertex(), {{1, 2, 1}},
                                               ClassPTree::Direction::left_to_right);
    auto m = verify_class_p_tree(a2_tree);
    CHECK(m.quiver == parse_quiver(kA2));
    CHECK(m.in_p);
    CHECK(m.in_p_prime);
    CHECK(m.in_p_prime_m(0));
    CHECK(m.min_m == 0u);

    m = verify_class_p_tree(ClassPTree::mutated(a2_tree, {1}));
    CHECK(m.quiver == parse_quiver("vertices: 2 0\narrow: 2 1\n"));
    CHECK(m.in_p);

    m = verify_class_p_tree(ClassPTree::one_vertex());
    CHECK(m.quiver == Quiver(1, 0));

    m = verify_class_p_tree(c3_tree());
    CHECK(oracle::isomorphic(m.quiver, parse_quiver(kC3)));
    CHECK(m.in_p_prime);

    // The direct-sum example: the cycle on 1, 2, 3 and 4 -> 5 <- 6.
    CHECK(verify_class_p_tree(trees::cycle_tree()).quiver == parse_quiver(kC3));
    CHECK(verify_class_p_tree(trees::sink_tree()).quiver == parse_quiver("vertices: 3 0\narrow: 1 2\narrow: 3 2\n"));
    m = verify_class_p_tree(trees::direct_sum_tree());
    CHECK(m.quiver == parse_quiver(kDirectSum));
    CHECK(m.in_p);
    CHECK_FALSE(m.in_p_prime);
    CHECK_FALSE(m.min_m);
}

TEST_CASE("verify_class_p_tree rejects malformed trees")
{
    const auto v = ClassPTree::one_vertex();
    CHECK_THROWS_AS(verify_class_p_tree(ClassPTree::extension(v, v, {{1, 3, 1}}, ClassPTree::Direction::left_to_right)),
                    QuiverError);
    const auto a2 = ClassPTree::extension(v, v, {{1, 2, 1}}, ClassPTree::Direction::left_to_right);
    CHECK_THROWS_AS(verify_class_p_tree(ClassPTree::extension(a2, v, {{1, 3, 1}, {3, 2, 1}},
                                                              ClassPTree::Direction::left_to_right)),
                    QuiverError);
    CHECK_THROWS_AS(verify_class_p_tree(ClassPTree::extension(v, v, {{1, 2, 1}}, ClassPTree::Direction::right_to_left)),
                    QuiverError);
    CHECK_THROWS_AS(verify_class_p_tree(ClassPTree::extension(v, v, {{1, 1, 1}}, ClassPTree::Direction::left_to_right)),
                    QuiverError);
}

TEST_CASE("P'_m counts non-neighbours of the lone vertex")
{
    const auto v = ClassPTree::one_vertex();
    const auto two = ClassPTree::extension(v, v, {}, ClassPTree::Direction::left_to_right);
    // Lone vertex 3 sees only vertex 1 on the other side.
    const auto m = verify_class_p_tree(ClassPTree::extension(two, v, {{1, 3, 1}}, ClassPTree::Direction::left_to_right));
    CHECK(m.in_p_prime);
    CHECK(m.min_m == 1u);
    CHECK_FALSE(m.in_p_prime_m(0));
    CHECK(m.in_p_prime_m(1));
}

TEST_CASE("property: source/sink equivalence on random quivers")
{
    std::mt19937 rng(41);
    int tested = 0;
    while (tested < 500) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const auto q = oracle::random_quiver(rng, n, 2);
        if (has_isolated(q))
            continue;
        CHECK(check_source_sink_equivalence(q));
        ++tested;
    }
}

TEST_CASE("property: bi-infinite paths agree with walk enumeration")
{
    std::mt19937 rng(43);
    for (int trial = 0; trial < 400; ++trial) {
        const int n = 1 + trial % 5;
        const auto q = oracle::random_quiver(rng, n, 2);
        for (const auto& a : q.arrows())
            CHECK(on_biinfinite_path(q, a.from, a.to) == oracle::on_biinfinite_path(q, a.from, a.to));
    }
}

TEST_CASE("property: splits have no backward arrows")
{
    std::mt19937 rng(47);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + trial % 6;
        const auto q = oracle::random_quiver(rng, n, 1);
        const auto b = oracle::dense(q);
        for (const auto& s : triangular_decompositions(q, 64)) {
            CHECK(!s.a_side.empty());
            CHECK(!s.b_side.empty());
            for (int v : s.b_side)
                for (int w : s.a_side)
                    CHECK(b[v - 1][w - 1] <= 0);
        }
        for (const auto& p : covering_pairs(q)) {
            const auto s = descendant_split(q, p.j);
            CHECK(std::find(s.a_side.begin(), s.a_side.end(), p.i) != s.a_side.end());
            CHECK(is_triangular_split(q, s));
        }
    }
}

TEST_CASE("property: Banff answers replay")
{
    std::mt19937 rng(53);
    int yes = 0;
    for (int trial = 0; trial < 80; ++trial) {
        const int n = 2 + trial % 4;
        const auto q = oracle::random_quiver(rng, n, 2);
        auto lim = small_limits();
        lim.max_states = 2'000;
        const auto r = certify_banff(q, lim);
        if (r.answer == Answer::yes) {
            ++yes;
            CHECK_FALSE(banff_certificate_error(q, *r.certificate));
        } else if (r.answer == Answer::no) {
            CHECK_FALSE(banff_refutation_error(q, *r.refutation));
        }
    }
    CHECK(yes > 40);
}
