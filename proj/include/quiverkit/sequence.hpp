#pragma once

#include "quiverkit/quiver.hpp"

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace quiverkit {

/// Budget for bounded searches. Exhausting any limit yields Answer::unknown.
struct SearchLimits {
    std::size_t max_depth = 12;
    std::size_t max_states = 1'000'000;
    std::chrono::milliseconds max_millis{60'000};

    /// Throws QuiverError unless every limit is positive.
    void validate() const;
};

enum class Answer { yes, no, unknown };

std::string_view to_string(Answer a);

/// Outcome of replaying a mutation sequence on the framed quiver.
struct Verdict {
    bool ok = false;
    Quiver final_quiver;
    /// permutation[v - 1] is the vertex of the original quiver whose frozen
    /// copy points at final vertex v; the final quiver is the coframe relabeled
    /// by this map.
    std::optional<std::vector<int>> permutation;
    std::optional<std::string> failure_reason;
    /// 1-based index of the first offending mutation (maximal green checks).
    std::optional<std::size_t> failing_step;
};

Verdict verify_reddening(const Quiver& q, std::span<const int> sequence);
Verdict verify_maximal_green(const Quiver& q, std::span<const int> sequence);

/// Topological order of an acyclic quiver, verified as a maximal green
/// sequence before it is returned.
MutationSequence acyclic_mgs(const Quiver& q);

struct SearchStats {
    std::size_t states = 0;
    std::size_t depth = 0;
    bool closed = false;
    /// Which budget ran out: "depth", "states", "time", or empty.
    std::string exhausted;
};

/// Tri-state answer of a sequence search.
///
/// Yes carries a re-verified sequence. No carries `closure`: one sequence per
/// visited state, and every allowed move from a listed state lands on a state
/// isomorphic to a listed one. Unknown reports the exhausted limit in `stats`.
struct SequenceSearch {
    Answer answer = Answer::unknown;
    MutationSequence sequence;
    std::optional<Verdict> verdict;
    std::vector<MutationSequence> closure;
    SearchStats stats;
};

/// Breadth-first search over green mutations of the framed quiver, deduped by
/// the canonical form of the whole framed state. Returns a shortest sequence,
/// lowest vertex first among equals.
SequenceSearch search_maximal_green(const Quiver& q, const SearchLimits& limits);

/// As search_maximal_green, but red vertices may be mutated too.
SequenceSearch search_reddening(const Quiver& q, const SearchLimits& limits);

struct Representative {
    Quiver quiver;
    /// Mutation sequence taking the explored quiver to this representative.
    MutationSequence path;
};

struct ClassExploration {
    std::vector<Representative> representatives;
    /// True iff the whole mutation class (up to isomorphism) was enumerated.
    bool closed = false;
    SearchStats stats;
};

ClassExploration explore_mutation_class(const Quiver& q, const SearchLimits& limits);

struct AcyclicityDecision {
    Answer answer = Answer::unknown;
    /// Yes: mutating along the witness yields an acyclic quiver.
    MutationSequence witness;
    /// No: the closed class, none of whose members is acyclic.
    ClassExploration exploration;
};

AcyclicityDecision is_mutation_acyclic(const Quiver& q, const SearchLimits& limits);

/// For quivers on at most three vertices a reddening sequence exists exactly
/// when the quiver is mutation-acyclic, so this decides reddening existence.
AcyclicityDecision decide_reddening_small(const Quiver& q, const SearchLimits& limits);

/// Independent re-check of a No answer from a sequence search: replays every
/// closure sequence (green moves only when `green_only`), confirms none of
/// them reddens, and that the listed states are closed under allowed moves.
bool check_search_closure(const Quiver& q, const std::vector<MutationSequence>& closure, bool green_only);

/// Re-check of a closed exploration: every representative is reached by its
/// path, representatives are pairwise non-isomorphic, and every mutation of a
/// representative is isomorphic to one of them.
bool check_class_closure(const Quiver& q, const std::vector<Representative>& representatives);

}  // namespace quiverkit
