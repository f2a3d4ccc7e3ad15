#pragma once

#include "quiverkit/quiver.hpp"
#include "quiverkit/sequence.hpp"

#include <compare>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace quiverkit {

/// An arrow i -> j between mutable vertices lying on no bi-infinite path.
struct CoveringPair {
    int i = 0;
    int j = 0;

    auto operator<=>(const CoveringPair&) const = default;
};

/// True iff i is reachable from a directed cycle and j reaches one, which
/// is exactly when the arrow i -> j extends to a bi-infinite walk.
bool on_biinfinite_path(const Quiver& q, int i, int j);

/// All covering pairs, sorted by (i, j).
std::vector<CoveringPair> covering_pairs(const Quiver& q);

/// A partition of the mutable vertices with every crossing arrow a -> b
/// running from `a_side` to `b_side`.
struct VertexSplit {
    std::vector<int> a_side;
    std::vector<int> b_side;

    bool operator==(const VertexSplit&) const = default;
};

/// b_side is everything reachable from j (j included), a_side the rest.
VertexSplit descendant_split(const Quiver& q, int j);

/// Nonempty proper splits whose crossing arrows all run a_side -> b_side,
/// i.e. the nonempty proper predecessor-closed unions of strongly connected
/// components. At most `max_results` are returned.
std::vector<VertexSplit> triangular_decompositions(const Quiver& q, std::size_t max_results);

/// True iff crossing arrows exist only in the a_side -> b_side direction and
/// both sides partition the mutable vertices.
bool is_triangular_split(const Quiver& q, const VertexSplit& split);

/// Self-test of "covering pair exists iff some arrow leaves a source or
/// enters a sink". Throws when a mutable vertex has no arrows at all.
bool check_source_sink_equivalence(const Quiver& q);

/// Evidence that a quiver is Banff.
///
/// Vertex indices in a node refer to the quiver the node certifies; children
/// certify the deletions (mutate(q, sequence) \ {i}) and (... \ {j}) with
/// vertices compacted in increasing order.
struct BanffCertificate {
    enum class Kind { acyclic_leaf, mutation_acyclic_leaf, covering_split };

    Kind kind = Kind::acyclic_leaf;
    /// Topological order, acyclicity witness, or path to the representative
    /// carrying the covering pair, depending on `kind`.
    MutationSequence sequence;
    CoveringPair pair;
    std::shared_ptr<const BanffCertificate> without_i;
    std::shared_ptr<const BanffCertificate> without_j;
};

/// Evidence that a quiver is not Banff: its mutation class is closed, no
/// member is acyclic, and each covering pair of each member has a deletion
/// that is itself refuted.
struct BanffRefutation {
    struct PairRefutation {
        std::size_t representative = 0;
        CoveringPair pair;
        /// The endpoint (pair.i or pair.j) whose deletion is not Banff.
        int deleted = 0;
        std::shared_ptr<const BanffRefutation> child;
    };

    std::vector<Representative> representatives;
    std::vector<PairRefutation> pairs;
};

struct BanffResult {
    Answer answer = Answer::unknown;
    std::optional<BanffCertificate> certificate;
    std::optional<BanffRefutation> refutation;
    /// Which budget ran out when the answer is unknown.
    std::string exhausted;
};

/// Recursive Banff certification within a single per-call budget.
///
/// Order of attempts at each level: acyclic leaf; covering pairs of the quiver
/// itself (highest pair first); a mutation-acyclic leaf; covering pairs of the
/// remaining mutation-class representatives in breadth-first order. Results
/// are memoized by canonical form.
BanffResult certify_banff(const Quiver& q, const SearchLimits& limits);

/// Replays a certificate; returns the first problem found, or nullopt.
std::optional<std::string> banff_certificate_error(const Quiver& q, const BanffCertificate& certificate);
std::optional<std::string> banff_refutation_error(const Quiver& q, const BanffRefutation& refutation);

/// Relabels a certificate for relabel(q, perm).
BanffCertificate relabel_certificate(const BanffCertificate& c, std::span<const int> perm);
BanffRefutation relabel_refutation(const BanffRefutation& r, std::span<const int> perm);

/// Construction tree for a member of the class generated from the one-vertex
/// quiver by mutation and triangular extension.
struct ClassPTree {
    enum class Kind { one_vertex, mutate, extension };
    enum class Direction { left_to_right, right_to_left };

    Kind kind = Kind::one_vertex;
    /// mutate: one child; extension: left then right.
    std::vector<ClassPTree> children;
    MutationSequence sequence;
    /// Extension arrows in combined numbering: left vertices 1..n_left,
    /// right vertices n_left+1..n_left+n_right.
    std::vector<Arrow> cross_arrows;
    Direction direction = Direction::left_to_right;

    static ClassPTree one_vertex();
    static ClassPTree mutated(ClassPTree child, MutationSequence sequence);
    static ClassPTree extension(ClassPTree left, ClassPTree right, std::vector<Arrow> cross_arrows, Direction direction);
};

struct ClassPMembership {
    Quiver quiver;
    bool in_p = false;
    /// Every extension has a one-vertex side.
    bool in_p_prime = false;
    /// Smallest m with the tree witnessing membership in P'_m (only when
    /// in_p_prime).
    std::optional<std::size_t> min_m;

    bool in_p_prime_m(std::size_t m) const { return in_p_prime && min_m && *min_m <= m; }
};

/// Evaluates the tree; throws QuiverError on malformed trees.
ClassPMembership verify_class_p_tree(const ClassPTree& tree);

}  // namespace quiverkit
