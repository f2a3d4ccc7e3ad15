#include "quiverkit/structure.hpp"

#include "quiverkit/canonical.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>

namespace quiverkit {

namespace {

// Vertices reachable from `seeds` along arrows (forward) or against them.
std::vector<bool> closure(const Quiver& q, std::vector<bool> seeds, bool forward)
{
    const int n = q.n_mutable();
    std::vector<int> todo;
    for (int v = 0; v < n; ++v)
        if (seeds[v])
            todo.push_back(v);
    while (!todo.empty()) {
        const int v = todo.back();
        todo.pop_back();
        for (int w = 0; w < n; ++w) {
            const bool arrow = forward ? q.raw(v, w) > 0 : q.raw(w, v) > 0;
            if (arrow && !seeds[w]) {
                seeds[w] = true;
                todo.push_back(w);
            }
        }
    }
    return seeds;
}

std::vector<bool> on_cycles(const Quiver& q)
{
    const auto cond = condensation(q);
    std::vector<bool> cyclic(q.n_mutable(), false);
    for (const auto& comp : cond.components)
        if (comp.size() > 1)
            for (int v : comp)
                cyclic[v - 1] = true;
    return cyclic;
}

void require_arrow(const Quiver& q, int i, int j)
{
    if (!q.is_mutable(i) || !q.is_mutable(j) || q.b(i, j) <= 0)
        throw QuiverError("no arrow " + std::to_string(i) + "->" + std::to_string(j) + " between mutable vertices");
}

// Induced permutation on the compacted quiver after deleting `removed`.
std::vector<int> induced_permutation(std::span<const int> perm, int removed)
{
    std::vector<int> images;
    for (int v = 1; v <= static_cast<int>(perm.size()); ++v)
        if (v != removed)
            images.push_back(perm[v - 1]);
    std::vector<int> sorted = images;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> out;
    out.reserve(images.size());
    for (int img : images)
        out.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), img) - sorted.begin()) + 1);
    return out;
}

MutationSequence map_sequence(std::span<const int> perm, const MutationSequence& s)
{
    MutationSequence out;
    out.reserve(s.size());
    for (int v : s)
        out.push_back(perm[v - 1]);
    return out;
}

Quiver delete_one(const Quiver& q, int v)
{
    return delete_vertices(q, std::vector{v}).quiver;
}

std::vector<CoveringPair> pairs_descending(const Quiver& q)
{
    auto pairs = covering_pairs(q);
    std::reverse(pairs.begin(), pairs.end());
    return pairs;
}

class BanffCertifier {
public:
    explicit BanffCertifier(const SearchLimits& limits)
        : limits_(limits), deadline_(std::chrono::steady_clock::now() + limits.max_millis)
    {
    }

    BanffResult certify(const Quiver& q)
    {
        const auto labeling = canonical_labeling(q);
        std::vector<int> to_canonical(q.n_mutable());
        for (int p = 0; p < q.n_mutable(); ++p)
            to_canonical[labeling.order[p] - 1] = p + 1;

        if (auto it = memo_.find(labeling.form); it != memo_.end())
            return relabel_result(it->second, labeling.order);

        BanffResult result = compute(q);
        memo_.emplace(labeling.form, relabel_result(result, to_canonical));
        return result;
    }

private:
    struct PairOutcome {
        Answer answer = Answer::unknown;
        BanffResult without_i;
        BanffResult without_j;
        int refuted_by = 0;
    };

    static BanffResult relabel_result(const BanffResult& r, std::span<const int> perm)
    {
        BanffResult out;
        out.answer = r.answer;
        out.exhausted = r.exhausted;
        if (r.certificate)
            out.certificate = relabel_certificate(*r.certificate, perm);
        if (r.refutation)
            out.refutation = relabel_refutation(*r.refutation, perm);
        return out;
    }

    bool out_of_time() const { return std::chrono::steady_clock::now() > deadline_; }

    SearchLimits remaining_limits() const
    {
        SearchLimits sub = limits_;
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline_ - std::chrono::steady_clock::now());
        sub.max_millis = std::max(left, std::chrono::milliseconds(1));
        return sub;
    }

    PairOutcome try_pair(const Quiver& r, const CoveringPair& pair)
    {
        PairOutcome out;
        out.without_i = certify(delete_one(r, pair.i));
        if (out.without_i.answer == Answer::no) {
            out.answer = Answer::no;
            out.refuted_by = pair.i;
            return out;
        }
        out.without_j = certify(delete_one(r, pair.j));
        if (out.without_j.answer == Answer::no) {
            out.answer = Answer::no;
            out.refuted_by = pair.j;
        } else if (out.without_i.answer == Answer::yes && out.without_j.answer == Answer::yes) {
            out.answer = Answer::yes;
        }
        return out;
    }

    static BanffResult split_result(const MutationSequence& path, const CoveringPair& pair, PairOutcome& outcome)
    {
        BanffCertificate c;
        c.kind = BanffCertificate::Kind::covering_split;
        c.sequence = path;
        c.pair = pair;
        c.without_i = std::make_shared<const BanffCertificate>(std::move(*outcome.without_i.certificate));
        c.without_j = std::make_shared<const BanffCertificate>(std::move(*outcome.without_j.certificate));
        BanffResult out;
        out.answer = Answer::yes;
        out.certificate = std::move(c);
        return out;
    }

    BanffResult compute(const Quiver& q)
    {
        BanffResult out;
        const auto acyc = acyclicity(q);
        if (acyc.acyclic) {
            out.answer = Answer::yes;
            out.certificate = BanffCertificate{BanffCertificate::Kind::acyclic_leaf, acyc.order, {}, nullptr, nullptr};
            return out;
        }
        if (out_of_time()) {
            out.exhausted = "time";
            return out;
        }

        std::vector<BanffRefutation::PairRefutation> refuted;
        bool all_refuted = true;
        std::string exhausted;
        auto note = [&](std::size_t rep, const CoveringPair& pair, PairOutcome& outcome) {
            if (outcome.answer == Answer::no) {
                const auto& child = outcome.refuted_by == pair.i ? outcome.without_i : outcome.without_j;
                refuted.push_back({rep, pair, outcome.refuted_by,
                                   std::make_shared<const BanffRefutation>(*child.refutation)});
            } else {
                all_refuted = false;
                for (const auto* child : {&outcome.without_i, &outcome.without_j})
                    if (exhausted.empty() && !child->exhausted.empty())
                        exhausted = child->exhausted;
            }
        };

        for (const auto& pair : pairs_descending(q)) {
            auto outcome = try_pair(q, pair);
            if (outcome.answer == Answer::yes)
                return split_result({}, pair, outcome);
            note(0, pair, outcome);
        }

        auto decision = is_mutation_acyclic(q, remaining_limits());
        if (decision.answer == Answer::yes) {
            out.answer = Answer::yes;
            out.certificate =
                BanffCertificate{BanffCertificate::Kind::mutation_acyclic_leaf, decision.witness, {}, nullptr, nullptr};
            return out;
        }

        auto& reps = decision.exploration.representatives;
        for (std::size_t t = 1; t < reps.size(); ++t) {
            if (out_of_time()) {
                out.exhausted = "time";
                return out;
            }
            for (const auto& pair : pairs_descending(reps[t].quiver)) {
                auto outcome = try_pair(reps[t].quiver, pair);
                if (outcome.answer == Answer::yes)
                    return split_result(reps[t].path, pair, outcome);
                note(t, pair, outcome);
            }
        }

        if (decision.answer == Answer::no && all_refuted) {
            out.answer = Answer::no;
            BanffRefutation refutation;
            refutation.representatives = std::move(reps);
            refutation.pairs = std::move(refuted);
            out.refutation = std::move(refutation);
            return out;
        }
        out.exhausted = !decision.exploration.stats.exhausted.empty() ? decision.exploration.stats.exhausted : exhausted;
        if (out.exhausted.empty())
            out.exhausted = "time";
        return out;
    }

    SearchLimits limits_;
    std::chrono::steady_clock::time_point deadline_;
    std::unordered_map<CanonicalForm, BanffResult, CanonicalFormHash> memo_;
};

Quiver evaluate(const ClassPTree& t, bool& one_vertex_sides, std::size_t& max_m)
{
    switch (t.kind) {
    case ClassPTree::Kind::one_vertex:
        if (!t.children.empty())
            throw QuiverError("one-vertex node must not have children");
        return Quiver(1, 0);
    case ClassPTree::Kind::mutate: {
        if (t.children.size() != 1)
            throw QuiverError("mutate node needs exactly one child");
        const Quiver child = evaluate(t.children[0], one_vertex_sides, max_m);
        return apply_sequence(child, t.sequence);
    }
    case ClassPTree::Kind::extension: {
        if (t.children.size() != 2)
            throw QuiverError("extension node needs exactly two children");
        const Quiver left = evaluate(t.children[0], one_vertex_sides, max_m);
        const Quiver right = evaluate(t.children[1], one_vertex_sides, max_m);
        const int nl = left.n_mutable();
        const int nr = right.n_mutable();
        Quiver q(nl + nr, 0);
        for (int i = 0; i < nl; ++i)
            for (int j = 0; j < nl; ++j)
                q.raw(i, j) = left.raw(i, j);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nr; ++j)
                q.raw(nl + i, nl + j) = right.raw(i, j);

        bool forward = false;
        bool backward = false;
        for (const auto& a : t.cross_arrows) {
            if (a.from < 1 || a.from > nl + nr || a.to < 1 || a.to > nl + nr)
                throw QuiverError("cross arrow " + std::to_string(a.from) + "->" + std::to_string(a.to) +
                                  " references an unknown vertex");
            const bool from_left = a.from <= nl;
            const bool to_left = a.to <= nl;
            if (from_left == to_left)
                throw QuiverError("cross arrow " + std::to_string(a.from) + "->" + std::to_string(a.to) +
                                  " does not cross between the two sides");
            (from_left ? forward : backward) = true;
            q.add_arrows(a.from, a.to, a.multiplicity);
        }
        if (forward && backward)
            throw QuiverError("cross arrows in both directions");
        if ((t.direction == ClassPTree::Direction::left_to_right && backward) ||
            (t.direction == ClassPTree::Direction::right_to_left && forward))
            throw QuiverError("cross arrows run against the declared direction");

        if (nl == 1 || nr == 1) {
            // Count vertices on the other side not adjacent to the lone vertex.
            const int lone = nl == 1 ? 0 : nl;
            const int lo = nl == 1 ? 1 : 0;
            const int hi = nl == 1 ? nl + nr : nl;
            std::size_t missing = 0;
            for (int w = lo; w < hi; ++w)
                if (q.raw(lone, w).is_zero())
                    ++missing;
            max_m = std::max(max_m, missing);
        } else {
            one_vertex_sides = false;
        }
        return q;
    }
    }
    throw QuiverError("unknown tree node");
}

}  // namespace

bool on_biinfinite_path(const Quiver& q, int i, int j)
{
    require_arrow(q, i, j);
    const auto cyclic = on_cycles(q);
    const auto from_cycle = closure(q, cyclic, true);
    const auto to_cycle = closure(q, cyclic, false);
    return from_cycle[i - 1] && to_cycle[j - 1];
}

std::vector<CoveringPair> covering_pairs(const Quiver& q)
{
    const auto cyclic = on_cycles(q);
    const auto from_cycle = closure(q, cyclic, true);
    const auto to_cycle = closure(q, cyclic, false);
    std::vector<CoveringPair> out;
    for (int i = 0; i < q.n_mutable(); ++i)
        for (int j = 0; j < q.n_mutable(); ++j)
            if (q.raw(i, j) > 0 && !(from_cycle[i] && to_cycle[j]))
                out.push_back({i + 1, j + 1});
    return out;
}

VertexSplit descendant_split(const Quiver& q, int j)
{
    VertexSplit split;
    split.b_side = forward_reachable(q, j);
    for (int v = 1; v <= q.n_mutable(); ++v)
        if (!std::binary_search(split.b_side.begin(), split.b_side.end(), v))
            split.a_side.push_back(v);
    return split;
}

bool is_triangular_split(const Quiver& q, const VertexSplit& split)
{
    std::vector<int> side(q.n_mutable(), -1);
    for (int v : split.a_side) {
        if (!q.is_mutable(v) || side[v - 1] != -1)
            return false;
        side[v - 1] = 0;
    }
    for (int v : split.b_side) {
        if (!q.is_mutable(v) || side[v - 1] != -1)
            return false;
        side[v - 1] = 1;
    }
    if (std::count(side.begin(), side.end(), -1) != 0)
        return false;
    for (int v : split.b_side)
        for (int w : split.a_side)
            if (q.b(v, w) > 0)
                return false;
    return true;
}

std::vector<VertexSplit> triangular_decompositions(const Quiver& q, std::size_t max_results)
{
    const auto cond = condensation(q);
    const auto m = cond.components.size();
    std::vector<std::vector<int>> preds(m);
    for (std::size_t c = 0; c < m; ++c)
        for (int d : cond.edges[c])
            preds[d].push_back(static_cast<int>(c));

    std::vector<VertexSplit> out;
    std::vector<bool> chosen(m, false);
    // Components are in topological order, so predecessors are decided first.
    auto recurse = [&](auto&& self, std::size_t c, std::size_t count) -> void {
        if (out.size() >= max_results)
            return;
        if (c == m) {
            if (count == 0 || count == m)
                return;
            VertexSplit split;
            for (std::size_t k = 0; k < m; ++k)
                for (int v : cond.components[k])
                    (chosen[k] ? split.a_side : split.b_side).push_back(v);
            std::sort(split.a_side.begin(), split.a_side.end());
            std::sort(split.b_side.begin(), split.b_side.end());
            out.push_back(std::move(split));
            return;
        }
        const bool allowed = std::all_of(preds[c].begin(), preds[c].end(), [&](int p) { return chosen[p]; });
        if (allowed) {
            chosen[c] = true;
            self(self, c + 1, count + 1);
            chosen[c] = false;
        }
        self(self, c + 1, count);
    };
    recurse(recurse, 0, 0);
    std::sort(out.begin(), out.end(), [](const VertexSplit& x, const VertexSplit& y) {
        if (x.a_side.size() != y.a_side.size())
            return x.a_side.size() < y.a_side.size();
        return x.a_side < y.a_side;
    });
    return out;
}

bool check_source_sink_equivalence(const Quiver& q)
{
    for (int v = 1; v <= q.n_mutable(); ++v)
        if (q.successors(v).empty() && q.predecessors(v).empty())
            throw QuiverError("check_source_sink_equivalence: vertex " + std::to_string(v) + " is isolated");
    const auto ss = sources_and_sinks(q);
    bool source_or_sink_arrow = false;
    for (int i = 1; i <= q.n_mutable(); ++i)
        for (int j = 1; j <= q.n_mutable(); ++j)
            if (q.b(i, j) > 0 && (std::binary_search(ss.sources.begin(), ss.sources.end(), i) ||
                                  std::binary_search(ss.sinks.begin(), ss.sinks.end(), j)))
                source_or_sink_arrow = true;
    return covering_pairs(q).empty() != source_or_sink_arrow;
}

BanffResult certify_banff(const Quiver& q, const SearchLimits& limits)
{
    if (q.n_frozen() != 0)
        throw QuiverError("certify_banff: expected a quiver without frozen vertices");
    limits.validate();
    BanffCertifier certifier(limits);
    return certifier.certify(q);
}

std::optional<std::string> banff_certificate_error(const Quiver& q, const BanffCertificate& c)
{
    if (q.n_frozen() != 0)
        return "certificate quiver has frozen vertices";
    for (int v : c.sequence)
        if (!q.is_mutable(v))
            return "sequence entry " + std::to_string(v) + " is out of range";

    switch (c.kind) {
    case BanffCertificate::Kind::acyclic_leaf: {
        const int n = q.n_mutable();
        if (static_cast<int>(c.sequence.size()) != n)
            return "acyclic leaf order has the wrong length";
        std::vector<int> position(n, -1);
        for (std::size_t p = 0; p < c.sequence.size(); ++p) {
            if (position[c.sequence[p] - 1] != -1)
                return "acyclic leaf order repeats a vertex";
            position[c.sequence[p] - 1] = static_cast<int>(p);
        }
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                if (q.b(i, j) > 0 && position[i - 1] > position[j - 1])
                    return "acyclic leaf order is not topological";
        return std::nullopt;
    }
    case BanffCertificate::Kind::mutation_acyclic_leaf:
        if (!acyclicity(apply_sequence(q, c.sequence)).acyclic)
            return "mutation-acyclic witness " + format_sequence(c.sequence) + " does not reach an acyclic quiver";
        return std::nullopt;
    case BanffCertificate::Kind::covering_split: {
        const Quiver r = apply_sequence(q, c.sequence);
        if (!r.is_mutable(c.pair.i) || !r.is_mutable(c.pair.j) || r.b(c.pair.i, c.pair.j) <= 0)
            return "covering split names a missing arrow";
        if (on_biinfinite_path(r, c.pair.i, c.pair.j))
            return "(" + std::to_string(c.pair.i) + "," + std::to_string(c.pair.j) + ") is not a covering pair";
        if (!c.without_i || !c.without_j)
            return "covering split is missing a child";
        if (auto e = banff_certificate_error(delete_one(r, c.pair.i), *c.without_i))
            return "without " + std::to_string(c.pair.i) + ": " + *e;
        if (auto e = banff_certificate_error(delete_one(r, c.pair.j), *c.without_j))
            return "without " + std::to_string(c.pair.j) + ": " + *e;
        return std::nullopt;
    }
    }
    return "unknown certificate node";
}

std::optional<std::string> banff_refutation_error(const Quiver& q, const BanffRefutation& r)
{
    if (!check_class_closure(q, r.representatives))
        return "representatives do not form a closed mutation class";
    for (std::size_t t = 0; t < r.representatives.size(); ++t) {
        const auto& rep = r.representatives[t].quiver;
        if (acyclicity(rep).acyclic)
            return "representative " + std::to_string(t) + " is acyclic";
        for (const auto& pair : covering_pairs(rep)) {
            auto it = std::find_if(r.pairs.begin(), r.pairs.end(), [&](const auto& p) {
                return p.representative == t && p.pair == pair;
            });
            if (it == r.pairs.end())
                return "covering pair (" + std::to_string(pair.i) + "," + std::to_string(pair.j) +
                       ") of representative " + std::to_string(t) + " is not refuted";
            if ((it->deleted != pair.i && it->deleted != pair.j) || !it->child)
                return "malformed pair refutation";
            if (auto e = banff_refutation_error(delete_one(rep, it->deleted), *it->child))
                return "without " + std::to_string(it->deleted) + ": " + *e;
        }
    }
    return std::nullopt;
}

BanffCertificate relabel_certificate(const BanffCertificate& c, std::span<const int> perm)
{
    BanffCertificate out;
    out.kind = c.kind;
    out.sequence = map_sequence(perm, c.sequence);
    if (c.kind == BanffCertificate::Kind::covering_split) {
        out.pair = {perm[c.pair.i - 1], perm[c.pair.j - 1]};
        out.without_i = std::make_shared<const BanffCertificate>(
            relabel_certificate(*c.without_i, induced_permutation(perm, c.pair.i)));
        out.without_j = std::make_shared<const BanffCertificate>(
            relabel_certificate(*c.without_j, induced_permutation(perm, c.pair.j)));
    }
    return out;
}

BanffRefutation relabel_refutation(const BanffRefutation& r, std::span<const int> perm)
{
    BanffRefutation out;
    for (const auto& rep : r.representatives)
        out.representatives.push_back({relabel(rep.quiver, perm), map_sequence(perm, rep.path)});
    for (const auto& p : r.pairs) {
        BanffRefutation::PairRefutation np;
        np.representative = p.representative;
        np.pair = {perm[p.pair.i - 1], perm[p.pair.j - 1]};
        np.deleted = perm[p.deleted - 1];
        np.child = std::make_shared<const BanffRefutation>(relabel_refutation(*p.child, induced_permutation(perm, p.deleted)));
        out.pairs.push_back(std::move(np));
    }
    return out;
}

ClassPTree ClassPTree::one_vertex()
{
    return ClassPTree{};
}

ClassPTree ClassPTree::mutated(ClassPTree child, MutationSequence sequence)
{
    ClassPTree t;
    t.kind = Kind::mutate;
    t.children.push_back(std::move(child));
    t.sequence = std::move(sequence);
    return t;
}

ClassPTree ClassPTree::extension(ClassPTree left, ClassPTree right, std::vector<Arrow> cross_arrows, Direction direction)
{
    ClassPTree t;
    t.kind = Kind::extension;
    t.children.push_back(std::move(left));
    t.children.push_back(std::move(right));
    t.cross_arrows = std::move(cross_arrows);
    t.direction = direction;
    return t;
}

ClassPMembership verify_class_p_tree(const ClassPTree& tree)
{
    bool one_vertex_sides = true;
    std::size_t max_m = 0;
    ClassPMembership out;
    out.quiver = evaluate(tree, one_vertex_sides, max_m);
    out.in_p = true;
    out.in_p_prime = one_vertex_sides;
    if (one_vertex_sides)
        out.min_m = max_m;
    return out;
}

}  // namespace quiverkit
