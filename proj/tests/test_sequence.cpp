#include "doctest.h"

#include "oracles.hpp"
#include "quiverkit/sequence.hpp"

#include <random>

using namespace quiverkit;

namespace {

const char* kA2 = "vertices: 2 0\narrow: 1 2\n";
const char* kC3 = "vertices: 3 0\narrow: 1 2\narrow: 2 3\narrow: 3 1\n";
const char* kMarkov = "vertices: 3 0\narrow: 1 2 2\narrow: 2 3 2\narrow: 3 1 2\n";
const char* kTorus = "vertices: 4 0\narrow: 1 2\narrow: 1 3\narrow: 2 3\narrow: 4 1\narrow: 4 2\narrow: 3 4 2\n";

SearchLimits desk(std::size_t depth, std::size_t states = 200'000)
{
    SearchLimits lim;
    lim.max_depth = depth;
    lim.max_states = states;
    lim.max_millis = std::chrono::milliseconds(20'000);
    return lim;
}

}  // namespace

TEST_CASE("verify_reddening examples")
{
    const auto a2 = parse_quiver(kA2);
    auto v = verify_reddening(a2, std::vector{1, 2});
    CHECK(v.ok);
    REQUIRE(v.permutation);
    CHECK(*v.permutation == std::vector{1, 2});

    v = verify_reddening(parse_quiver(kTorus), std::vector{1, 3, 4, 2, 1, 3});
    CHECK(v.ok);

    v = verify_reddening(a2, std::vector{1});
    CHECK_FALSE(v.ok);
    CHECK(v.failure_reason == "vertex 2 green");

    CHECK_THROWS_AS(verify_reddening(a2, std::vector{3}), QuiverError);
    CHECK_THROWS_AS(verify_reddening(a2, std::vector{0}), QuiverError);
    CHECK_THROWS_AS(verify_reddening(frame(a2), std::vector{1}), QuiverError);
}

TEST_CASE("verify_maximal_green examples")
{
    CHECK(verify_maximal_green(parse_quiver(kTorus), std::vector{1, 3, 4, 2, 1, 3}).ok);

    const auto v = verify_maximal_green(parse_quiver(kA2), std::vector{1, 1});
    CHECK_FALSE(v.ok);
    CHECK(v.failing_step == 2u);
    CHECK(v.failure_reason == "step 2 mutates red vertex 1");

    CHECK(verify_maximal_green(Quiver(1, 0), std::vector{1}).ok);
}

TEST_CASE("the final quiver is the coframe relabeled by sigma")
{
    const auto torus = parse_quiver(kTorus);
    const auto v = verify_reddening(torus, std::vector{1, 3, 4, 2, 1, 3});
    REQUIRE(v.permutation);
    const auto& sigma = *v.permutation;
    const auto co = frame(torus, Framing::coframed);
    const int n = torus.n_mutable();
    for (int a = 1; a <= 2 * n; ++a)
        for (int b = 1; b <= 2 * n; ++b) {
            auto image = [&](int x) { return x <= n ? sigma[x - 1] : x; };
            CHECK(v.final_quiver.b(a, b) == co.b(image(a), image(b)));
        }
}

TEST_CASE("acyclic_mgs examples")
{
    CHECK(acyclic_mgs(parse_quiver(kA2)) == MutationSequence{1, 2});
    CHECK(acyclic_mgs(Quiver(3, 0)) == MutationSequence{1, 2, 3});
    const auto acyclic_part = parse_quiver("vertices: 4 0\narrow: 1 2\narrow: 1 4\narrow: 2 4\n");
    const auto s = acyclic_mgs(acyclic_part);
    CHECK(verify_maximal_green(acyclic_part, s).ok);
    CHECK(s == MutationSequence{1, 2, 3, 4});
    CHECK_THROWS_AS(acyclic_mgs(parse_quiver(kC3)), QuiverError);
}

TEST_CASE("search_maximal_green examples")
{
    auto r = search_maximal_green(parse_quiver(kC3), desk(12));
    REQUIRE(r.answer == Answer::yes);
    CHECK(r.sequence == MutationSequence{1, 2, 3, 1});
    CHECK(verify_maximal_green(parse_quiver(kC3), r.sequence).ok);

    r = search_maximal_green(parse_quiver(kTorus), desk(6));
    REQUIRE(r.answer == Answer::yes);
    CHECK(r.sequence.size() <= 6);
    CHECK(r.sequence == MutationSequence{1, 3, 4, 2, 1, 3});

    r = search_maximal_green(parse_quiver(kMarkov), desk(10, 50'000));
    CHECK(r.answer != Answer::yes);
}

TEST_CASE("search_reddening examples")
{
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 4;
        auto q = oracle::random_quiver(rng, n, 2);
        if (!acyclicity(q).acyclic)
            continue;
        CHECK(search_reddening(q, desk(12)).answer == Answer::yes);
    }
    CHECK(search_reddening(parse_quiver(kTorus), desk(8)).answer == Answer::yes);
    CHECK(search_reddening(parse_quiver(kA2), desk(4)).sequence == MutationSequence{1, 2});
    CHECK(search_reddening(parse_quiver(kMarkov), desk(7, 50'000)).answer == Answer::unknown);
}

TEST_CASE("explore_mutation_class examples")
{
    auto e = explore_mutation_class(parse_quiver(kA2), desk(12));
    CHECK(e.closed);
    CHECK(e.representatives.size() == 1);

    e = explore_mutation_class(parse_quiver(kMarkov), desk(12));
    CHECK(e.closed);
    CHECK(e.representatives.size() == 1);

    e = explore_mutation_class(parse_quiver(kTorus), desk(12));
    CHECK(e.closed);
    CHECK(e.representatives.size() == 1);
    CHECK(check_class_closure(parse_quiver(kTorus), e.representatives));

    e = explore_mutation_class(parse_quiver(kC3), desk(12));
    CHECK(e.closed);
    CHECK(e.representatives.size() == 4);
    CHECK(check_class_closure(parse_quiver(kC3), e.representatives));
    // Dropping a representative breaks closure.
    auto partial = e.representatives;
    partial.pop_back();
    CHECK_FALSE(check_class_closure(parse_quiver(kC3), partial));
}

TEST_CASE("is_mutation_acyclic and decide_reddening_small")
{
    auto d = is_mutation_acyclic(parse_quiver(kC3), desk(12));
    CHECK(d.answer == Answer::yes);
    CHECK(d.witness.size() == 1);
    CHECK(acyclicity(apply_sequence(parse_quiver(kC3), d.witness)).acyclic);

    d = is_mutation_acyclic(parse_quiver(kMarkov), desk(12));
    CHECK(d.answer == Answer::no);
    CHECK(d.exploration.closed);

    d = is_mutation_acyclic(parse_quiver(kA2), desk(12));
    CHECK(d.answer == Answer::yes);
    CHECK(d.witness.empty());

    CHECK(decide_reddening_small(parse_quiver(kMarkov), desk(12)).answer == Answer::no);
    CHECK(decide_reddening_small(parse_quiver(kC3), desk(12)).answer == Answer::yes);
    CHECK(decide_reddening_small(Quiver(1, 0), desk(12)).answer == Answer::yes);
    CHECK_THROWS_AS(decide_reddening_small(parse_quiver(kTorus), desk(12)), QuiverError);
}

TEST_CASE("search limits are validated and reported")
{
    SearchLimits bad;
    bad.max_depth = 0;
    CHECK_THROWS_AS(bad.validate(), QuiverError);
    const auto r = search_reddening(parse_quiver(kMarkov), desk(3));
    CHECK(r.answer == Answer::unknown);
    CHECK(r.stats.exhausted == "depth");
    CHECK_FALSE(r.stats.closed);
}

TEST_CASE("check_search_closure rejects forged closures")
{
    const auto markov = parse_quiver(kMarkov);
    CHECK_FALSE(check_search_closure(markov, {MutationSequence{}}, true));
    // A closure containing a reddening sequence is not a refutation.
    CHECK_FALSE(check_search_closure(parse_quiver(kA2), {MutationSequence{}, MutationSequence{1}, MutationSequence{1, 2}}, true));
}

TEST_CASE("property: search lengths match a brute-force oracle")
{
    std::mt19937 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + trial % 3;
        const auto q = oracle::random_quiver(rng, n, 2);
        for (bool green : {true, false}) {
            const int expect = oracle::shortest_reddening(q, 6, green);
            const auto r = green ? search_maximal_green(q, desk(6)) : search_reddening(q, desk(6));
            if (expect < 0) {
                CHECK(r.answer != Answer::yes);
            } else {
                REQUIRE(r.answer == Answer::yes);
                CHECK(static_cast<int>(r.sequence.size()) == expect);
            }
        }
    }
}

TEST_CASE("property: induced subquivers and mutations keep reddening sequences")
{
    std::mt19937 rng(31);
    int checked = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 3;
        const auto q = oracle::random_quiver(rng, n, trial % 2 ? 1 : 2);
        const auto r = search_reddening(q, desk(8, 20'000));
        if (r.answer != Answer::yes)
            continue;
        ++checked;
        for (int mask = 1; mask < (1 << n) - 1; ++mask) {
            std::vector<int> keep;
            for (int v = 1; v <= n; ++v)
                if (mask & (1 << (v - 1)))
                    keep.push_back(v);
            const auto sub = induced_subquiver(q, keep).quiver;
            CHECK(search_reddening(sub, desk(10, 50'000)).answer == Answer::yes);
        }
        for (int k = 1; k <= n; ++k)
            CHECK(search_reddening(mutate(q, k), desk(10, 50'000)).answer == Answer::yes);
    }
    CHECK(checked >= 10);
}
