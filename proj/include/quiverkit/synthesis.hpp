#pragma once

#include "quiverkit/quiver.hpp"
#include "quiverkit/sequence.hpp"
#include "quiverkit/structure.hpp"

#include <string>
#include <vector>

namespace quiverkit {

/// One rule application recorded while building a sequence.
struct DerivationStep {
    /// "leaf", "concat", "conjugate" or "fallback-search".
    std::string rule;
    /// Which variant was accepted, e.g. "source side first" or "(k, r', sigma(k))".
    std::string detail;
    /// Number of mutable vertices of the quiver the step produced a sequence for.
    int vertices = 0;
    MutationSequence sequence;
};

/// A reddening sequence together with its passing verdict.
struct SynthesisResult {
    MutationSequence sequence;
    Verdict verdict;
    std::vector<DerivationStep> derivation;
};

/// Candidate for q from sequences for q|A and q|B: rA then rB in q's labels.
/// Throws QuiverError if `split` is not triangular.
MutationSequence concat_rule(const Quiver& q, const VertexSplit& split, const MutationSequence& r_a,
                             const MutationSequence& r_b);

/// Candidates for q from a reddening sequence r' of mutate(q, k), in the
/// order they are tried: (k, r', sigma(k)), (k, r', sigma^-1(k)), and (k, r', g)
/// when g is the only vertex still green after (k, r'). Throws QuiverError if
/// r' is empty or does not redden mutate(q, k).
std::vector<MutationSequence> conjugate_candidates(const Quiver& q, int k, const MutationSequence& r_prime);

/// First conjugation candidate.
MutationSequence conjugate_rule(const Quiver& q, int k, const MutationSequence& r_prime);

/// Structural recursion over the tree. Every intermediate sequence is
/// verified; bounded search (within `limits`) is the last resort.
SynthesisResult synthesize_from_tree(const ClassPTree& tree, const SearchLimits& limits = {});

/// Builds a reddening sequence for q from a Banff certificate. Throws
/// QuiverError if the certificate does not replay on q.
SynthesisResult synthesize_from_banff(const Quiver& q, const BanffCertificate& certificate,
                                      const SearchLimits& limits = {});

}  // namespace quiverkit
