#pragma once

#include "quiverkit/quiver.hpp"

#include <string>
#include <vector>

namespace quiverkit {

/// Byte string identifying a quiver up to relabeling of mutable vertices and,
/// separately, of frozen vertices.
struct CanonicalForm {
    std::string bytes;

    bool operator==(const CanonicalForm&) const = default;
    auto operator<=>(const CanonicalForm&) const = default;
};

struct CanonicalLabeling {
    CanonicalForm form;
    /// order[p] is the original 1-based vertex placed at canonical position p
    /// (0-based position). Mutable vertices occupy the first n_mutable slots.
    std::vector<int> order;
};

/// Colour-preserving canonical labeling: equitable refinement of the
/// mutable/frozen partition, then individualization over every remaining
/// choice, keeping the smallest encoding.
CanonicalLabeling canonical_labeling(const Quiver& q);

CanonicalForm canonical_form(const Quiver& q);

/// The quiver relabeled into canonical position order.
Quiver canonical_quiver(const Quiver& q, const CanonicalLabeling& labeling);

bool isomorphic(const Quiver& a, const Quiver& b);

struct CanonicalFormHash {
    std::size_t operator()(const CanonicalForm& f) const noexcept { return std::hash<std::string>{}(f.bytes); }
};

}  // namespace quiverkit
