#include "quiverkit/sequence.hpp"

#include "quiverkit/canonical.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace quiverkit {

void SearchLimits::validate() const
{
    if (max_depth == 0 || max_states == 0 || max_millis.count() <= 0)
        throw QuiverError("search limits must all be positive");
}

std::string_view to_string(Answer a)
{
    switch (a) {
    case Answer::yes:
        return "yes";
    case Answer::no:
        return "no";
    case Answer::unknown:
        return "unknown";
    }
    return "unknown";
}

namespace {

void require_unframed(const Quiver& q, const char* what)
{
    if (q.n_frozen() != 0)
        throw QuiverError(std::string(what) + ": expected a quiver without frozen vertices");
}

void require_valid_sequence(const Quiver& q, std::span<const int> sequence)
{
    for (int k : sequence)
        if (!q.is_mutable(k))
            throw QuiverError("sequence entry " + std::to_string(k) + " is not a mutable vertex");
}

bool all_red(const Quiver& framed)
{
    for (int v = 1; v <= framed.n_mutable(); ++v)
        if (vertex_status(framed, v) != VertexColor::red)
            return false;
    return true;
}

// Completes a verdict for the framed quiver reached after a sequence.
Verdict judge_final(const Quiver& q, Quiver final_quiver)
{
    Verdict verdict;
    verdict.final_quiver = std::move(final_quiver);
    const Quiver& f = verdict.final_quiver;
    const int n = q.n_mutable();

    for (int v = 1; v <= n; ++v) {
        if (vertex_status(f, v) == VertexColor::green) {
            verdict.failure_reason = "vertex " + std::to_string(v) + " green";
            return verdict;
        }
    }

    // Each final vertex must receive exactly one arrow, from a distinct frozen
    // vertex, for the result to be a relabeled coframe.
    std::vector<int> sigma(n, 0);
    std::vector<bool> used(n, false);
    for (int v = 1; v <= n; ++v) {
        int source = 0;
        for (int fz = n + 1; fz <= f.size(); ++fz) {
            const auto& m = f.b(fz, v);
            if (m.is_zero())
                continue;
            if (m != 1 || source != 0) {
                verdict.failure_reason = "frozen arrows at vertex " + std::to_string(v) + " do not match a coframe";
                return verdict;
            }
            source = fz - n;
        }
        if (source == 0 || used[source - 1]) {
            verdict.failure_reason = "frozen arrows at vertex " + std::to_string(v) + " do not match a coframe";
            return verdict;
        }
        used[source - 1] = true;
        sigma[v - 1] = source;
    }
    for (int v = 1; v <= n; ++v)
        for (int w = 1; w <= n; ++w)
            if (f.b(v, w) != q.b(sigma[v - 1], sigma[w - 1])) {
                verdict.failure_reason = "mutable part is not isomorphic to the coframe via the frozen matching";
                return verdict;
            }
    verdict.ok = true;
    verdict.permutation = std::move(sigma);
    return verdict;
}

struct Node {
    Quiver quiver;
    MutationSequence path;
};

struct BfsResult {
    std::vector<Node> nodes;
    std::optional<std::size_t> goal;
    SearchStats stats;
};

template <class Moves, class Goal>
BfsResult breadth_first(const Quiver& start, const SearchLimits& limits, Moves moves, Goal goal)
{
    limits.validate();
    using clock = std::chrono::steady_clock;
    const auto deadline = clock::now() + limits.max_millis;

    BfsResult r;
    std::unordered_set<CanonicalForm, CanonicalFormHash> seen;
    seen.insert(canonical_form(start));
    r.nodes.push_back({start, {}});
    r.stats.states = 1;
    if (goal(start)) {
        r.goal = 0;
        return r;
    }

    bool truncated = false;
    std::size_t head = 0;
    while (head < r.nodes.size() && !truncated) {
        if (clock::now() > deadline) {
            truncated = true;
            r.stats.exhausted = "time";
            break;
        }
        const Quiver current = r.nodes[head].quiver;
        const MutationSequence path = r.nodes[head].path;
        ++head;
        const bool at_depth_limit = path.size() >= limits.max_depth;
        for (int k : moves(current)) {
            Quiver next = mutate(current, k);
            auto form = canonical_form(next);
            if (seen.contains(form))
                continue;
            if (at_depth_limit) {
                // Everything left in the queue sits at the depth limit too.
                truncated = true;
                r.stats.exhausted = "depth";
                break;
            }
            if (seen.size() >= limits.max_states) {
                truncated = true;
                r.stats.exhausted = "states";
                break;
            }
            seen.insert(std::move(form));
            MutationSequence next_path = path;
            next_path.push_back(k);
            r.stats.depth = std::max(r.stats.depth, next_path.size());
            r.nodes.push_back({std::move(next), std::move(next_path)});
            r.stats.states = r.nodes.size();
            if (goal(r.nodes.back().quiver)) {
                r.goal = r.nodes.size() - 1;
                return r;
            }
        }
    }
    r.stats.closed = !truncated;
    return r;
}

std::vector<int> all_moves(const Quiver& q)
{
    std::vector<int> out(q.n_mutable());
    for (int v = 1; v <= q.n_mutable(); ++v)
        out[v - 1] = v;
    return out;
}

std::vector<int> green_moves(const Quiver& q)
{
    std::vector<int> out;
    for (int v = 1; v <= q.n_mutable(); ++v)
        if (vertex_status(q, v) == VertexColor::green)
            out.push_back(v);
    return out;
}

SequenceSearch sequence_search(const Quiver& q, const SearchLimits& limits, bool green_only)
{
    require_unframed(q, green_only ? "search_maximal_green" : "search_reddening");
    auto result = green_only ? breadth_first(frame(q), limits, green_moves, all_red)
                             : breadth_first(frame(q), limits, all_moves, all_red);
    SequenceSearch out;
    out.stats = result.stats;
    if (result.goal) {
        out.sequence = result.nodes[*result.goal].path;
        auto verdict = green_only ? verify_maximal_green(q, out.sequence) : verify_reddening(q, out.sequence);
        if (!verdict.ok)
            throw std::logic_error("search produced a sequence that fails verification: " + format_sequence(out.sequence));
        out.verdict = std::move(verdict);
        out.answer = Answer::yes;
    } else if (result.stats.closed) {
        out.answer = Answer::no;
        out.closure.reserve(result.nodes.size());
        for (auto& node : result.nodes)
            out.closure.push_back(std::move(node.path));
    } else {
        out.answer = Answer::unknown;
    }
    return out;
}

}  // namespace

Verdict verify_reddening(const Quiver& q, std::span<const int> sequence)
{
    require_unframed(q, "verify_reddening");
    require_valid_sequence(q, sequence);
    return judge_final(q, apply_sequence(frame(q), sequence));
}

Verdict verify_maximal_green(const Quiver& q, std::span<const int> sequence)
{
    require_unframed(q, "verify_maximal_green");
    require_valid_sequence(q, sequence);
    Quiver current = frame(q);
    for (std::size_t step = 0; step < sequence.size(); ++step) {
        const int k = sequence[step];
        if (vertex_status(current, k) != VertexColor::green) {
            Verdict verdict;
            verdict.failing_step = step + 1;
            verdict.failure_reason =
                "step " + std::to_string(step + 1) + " mutates red vertex " + std::to_string(k);
            verdict.final_quiver = std::move(current);
            return verdict;
        }
        current = mutate(current, k);
    }
    return judge_final(q, std::move(current));
}

MutationSequence acyclic_mgs(const Quiver& q)
{
    require_unframed(q, "acyclic_mgs");
    auto acyc = acyclicity(q);
    if (!acyc.acyclic)
        throw QuiverError("acyclic_mgs: quiver has the cycle " + format_sequence(acyc.cycle));
    auto verdict = verify_maximal_green(q, acyc.order);
    if (!verdict.ok)
        throw std::logic_error("topological order " + format_sequence(acyc.order) +
                               " failed maximal green verification: " + verdict.failure_reason.value_or(""));
    return acyc.order;
}

SequenceSearch search_maximal_green(const Quiver& q, const SearchLimits& limits)
{
    return sequence_search(q, limits, true);
}

SequenceSearch search_reddening(const Quiver& q, const SearchLimits& limits)
{
    return sequence_search(q, limits, false);
}

ClassExploration explore_mutation_class(const Quiver& q, const SearchLimits& limits)
{
    require_unframed(q, "explore_mutation_class");
    auto result = breadth_first(q, limits, all_moves, [](const Quiver&) { return false; });
    ClassExploration out;
    out.closed = result.stats.closed;
    out.stats = result.stats;
    for (auto& node : result.nodes)
        out.representatives.push_back({std::move(node.quiver), std::move(node.path)});
    return out;
}

AcyclicityDecision is_mutation_acyclic(const Quiver& q, const SearchLimits& limits)
{
    require_unframed(q, "is_mutation_acyclic");
    auto result = breadth_first(q, limits, all_moves, [](const Quiver& r) { return acyclicity(r).acyclic; });
    AcyclicityDecision out;
    out.exploration.stats = result.stats;
    out.exploration.closed = result.stats.closed;
    if (result.goal) {
        out.answer = Answer::yes;
        out.witness = result.nodes[*result.goal].path;
        out.exploration.closed = false;
    } else {
        out.answer = result.stats.closed ? Answer::no : Answer::unknown;
    }
    for (auto& node : result.nodes)
        out.exploration.representatives.push_back({std::move(node.quiver), std::move(node.path)});
    return out;
}

AcyclicityDecision decide_reddening_small(const Quiver& q, const SearchLimits& limits)
{
    if (q.n_mutable() > 3)
        throw QuiverError("decide_reddening_small: only quivers on at most three vertices are decided");
    return is_mutation_acyclic(q, limits);
}

bool check_search_closure(const Quiver& q, const std::vector<MutationSequence>& closure, bool green_only)
{
    if (q.n_frozen() != 0 || closure.empty())
        return false;
    const Quiver start = frame(q);
    std::unordered_set<CanonicalForm, CanonicalFormHash> listed;
    std::vector<Quiver> states;
    bool has_root = false;
    for (const auto& seq : closure) {
        Quiver cur = start;
        for (int k : seq) {
            if (!cur.is_mutable(k))
                return false;
            if (green_only && vertex_status(cur, k) != VertexColor::green)
                return false;
            cur = mutate(cur, k);
        }
        if (all_red(cur))
            return false;
        has_root |= seq.empty();
        listed.insert(canonical_form(cur));
        states.push_back(std::move(cur));
    }
    if (!has_root)
        return false;
    for (const auto& s : states) {
        for (int k : green_only ? green_moves(s) : all_moves(s))
            if (!listed.contains(canonical_form(mutate(s, k))))
                return false;
    }
    return true;
}

bool check_class_closure(const Quiver& q, const std::vector<Representative>& representatives)
{
    if (q.n_frozen() != 0 || representatives.empty())
        return false;
    std::unordered_set<CanonicalForm, CanonicalFormHash> listed;
    for (const auto& rep : representatives) {
        for (int k : rep.path)
            if (!q.is_mutable(k))
                return false;
        if (!(apply_sequence(q, rep.path) == rep.quiver))
            return false;
        if (!listed.insert(canonical_form(rep.quiver)).second)
            return false;
    }
    if (!listed.contains(canonical_form(q)))
        return false;
    for (const auto& rep : representatives)
        for (int k = 1; k <= rep.quiver.n_mutable(); ++k)
            if (!listed.contains(canonical_form(mutate(rep.quiver, k))))
                return false;
    return true;
}

}  // namespace quiverkit
