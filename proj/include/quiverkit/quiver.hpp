#pragma once

#include "quiverkit/integer.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace quiverkit {

/// Raised for malformed input and for operations invoked outside their domain
/// (mutation at a frozen vertex, framing a framed quiver, ...).
class QuiverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Ordered list of 1-based mutable vertex indices, applied left to right.
using MutationSequence = std::vector<int>;

struct Arrow {
    int from = 0;
    int to = 0;
    Integer multiplicity = 1;

    bool operator==(const Arrow&) const = default;
};

/// A quiver with frozen vertices, stored as a skew-symmetric integer matrix.
///
/// Vertices are 1-based. Mutable vertices come first (1..n_mutable), frozen
/// vertices follow (n_mutable+1..n_mutable+n_frozen). Entry b(i, j) is the
/// number of arrows i->j minus the number of arrows j->i. Loops and 2-cycles
/// cannot be represented, and arrows between two frozen vertices are never
/// stored.
class Quiver {
public:
    Quiver() = default;
    Quiver(int n_mutable, int n_frozen);

    static Quiver from_arrows(int n_mutable, int n_frozen, std::span<const Arrow> arrows);

    int n_mutable() const { return n_mutable_; }
    int n_frozen() const { return n_frozen_; }
    int size() const { return n_mutable_ + n_frozen_; }

    bool is_mutable(int v) const { return v >= 1 && v <= n_mutable_; }
    bool is_frozen(int v) const { return v > n_mutable_ && v <= size(); }
    bool contains(int v) const { return v >= 1 && v <= size(); }

    const Integer& b(int i, int j) const { return b_[index(i, j)]; }

    /// Number of arrows i->j (zero if the arrows run the other way).
    Integer arrows_between(int i, int j) const;

    /// Adds `multiplicity` arrows from -> to. Rejects loops, arrows that
    /// would form a 2-cycle with existing ones, and frozen-frozen arrows.
    void add_arrows(int from, int to, const Integer& multiplicity = 1);

    /// All arrows sorted by (from, to).
    std::vector<Arrow> arrows() const;

    /// Mutable vertices with an arrow v->w (resp. w->v), ascending.
    std::vector<int> successors(int v) const;
    std::vector<int> predecessors(int v) const;

    bool has_labels() const { return !labels_.empty(); }
    std::string label(int v) const;
    void set_labels(std::vector<std::string> labels);

    /// Structural equality; labels are ignored.
    bool operator==(const Quiver& other) const;

    // Raw access for algorithms that own the invariants (mutation, relabeling).
    Integer& raw(int i0, int j0) { return b_[static_cast<std::size_t>(i0) * size() + j0]; }
    const Integer& raw(int i0, int j0) const { return b_[static_cast<std::size_t>(i0) * size() + j0]; }

private:
    std::size_t index(int i, int j) const;

    int n_mutable_ = 0;
    int n_frozen_ = 0;
    std::vector<Integer> b_;
    std::vector<std::string> labels_;
};

Quiver parse_quiver(std::string_view text);
std::string serialize(const Quiver& q);

/// Mutation at mutable vertex k (1-based). The input is left untouched.
Quiver mutate(const Quiver& q, int k);
Quiver apply_sequence(const Quiver& q, std::span<const int> sequence);

enum class Framing { framed, coframed };

/// Adds frozen copies i' = n + i with arrows i -> i' (framed) or i' -> i
/// (coframed). The input must have no frozen vertices.
Quiver frame(const Quiver& q, Framing kind = Framing::framed);

struct Restriction {
    Quiver quiver;
    /// index_map[new - 1] is the vertex of the original quiver.
    std::vector<int> index_map;
};

/// Induced subquiver on `vertices` (any order, duplicates rejected).
/// Mutable vertices are compacted ahead of frozen ones, each in increasing
/// original order.
Restriction induced_subquiver(const Quiver& q, std::span<const int> vertices);

/// Q with the given vertices removed.
Restriction delete_vertices(const Quiver& q, std::span<const int> vertices);

enum class VertexColor { green, red };

/// Green: no arrows from frozen vertices into k. Red: no arrows from k to
/// frozen vertices. Throws if k has both kinds (a sign-coherence failure) or
/// no frozen arrows at all.
VertexColor vertex_status(const Quiver& q, int k);

struct Acyclicity {
    bool acyclic = true;
    /// Topological order of the mutable vertices (lowest index first among
    /// available vertices) when acyclic.
    std::vector<int> order;
    /// A directed cycle starting at its smallest vertex when cyclic.
    std::vector<int> cycle;
};

/// Considers the mutable part only.
Acyclicity acyclicity(const Quiver& q);

struct Condensation {
    /// Strongly connected components of the mutable part, each sorted,
    /// listed in topological order (ties broken by smallest member).
    std::vector<std::vector<int>> components;
    /// component_of[v - 1] indexes into `components` for mutable v.
    std::vector<int> component_of;
    /// edges[c] lists the components reachable from c by a single arrow.
    std::vector<std::vector<int>> edges;
};

Condensation condensation(const Quiver& q);

struct SourcesAndSinks {
    std::vector<int> sources;
    std::vector<int> sinks;
};

SourcesAndSinks sources_and_sinks(const Quiver& q);

/// Mutable vertices reachable from `start` along arrows (including start).
std::vector<int> forward_reachable(const Quiver& q, int start);

/// Relabels mutable vertices: vertex v of q becomes perm[v - 1] in the result.
/// Frozen vertices are relabeled by frozen_perm in the same way (identity when
/// empty).
Quiver relabel(const Quiver& q, std::span<const int> perm, std::span<const int> frozen_perm = {});

std::string format_sequence(std::span<const int> sequence);
MutationSequence parse_sequence(std::string_view text);

}  // namespace quiverkit
