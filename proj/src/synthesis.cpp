#include "quiverkit/synthesis.hpp"

#include <algorithm>

namespace quiverkit {

namespace {

struct Candidate {
    MutationSequence sequence;
    std::string detail;
};

class Synthesizer {
public:
    explicit Synthesizer(const SearchLimits& limits) : limits_(limits) { limits_.validate(); }

    std::vector<DerivationStep> take_trace() { return std::move(trace_); }

    MutationSequence leaf(const Quiver& q)
    {
        auto s = acyclic_mgs(q);
        record("leaf", "topological order", q, s);
        return s;
    }

    MutationSequence accept(const Quiver& q, const std::string& rule, const std::vector<Candidate>& candidates,
                            std::size_t fallback_depth)
    {
        for (const auto& c : candidates)
            if (verify_reddening(q, c.sequence).ok) {
                record(rule, c.detail, q, c.sequence);
                return c.sequence;
            }
        SearchLimits sub = limits_;
        sub.max_depth = std::max<std::size_t>(fallback_depth, 1);
        auto found = search_reddening(q, sub);
        if (found.answer != Answer::yes)
            throw QuiverError(rule + " failed on a " + std::to_string(q.n_mutable()) +
                              "-vertex quiver and bounded search returned " + std::string(to_string(found.answer)) +
                              (found.stats.exhausted.empty() ? "" : " (" + found.stats.exhausted + ")"));
        record("fallback-search", "after " + rule, q, found.sequence);
        return found.sequence;
    }

    MutationSequence concat(const Quiver& q, const VertexSplit& split, const MutationSequence& r_a,
                            const MutationSequence& r_b)
    {
        const auto forward = concat_rule(q, split, r_a, r_b);
        const auto a_part = MutationSequence(forward.begin(), forward.begin() + static_cast<long>(r_a.size()));
        const auto b_part = MutationSequence(forward.begin() + static_cast<long>(r_a.size()), forward.end());
        MutationSequence reversed = b_part;
        reversed.insert(reversed.end(), a_part.begin(), a_part.end());
        return accept(q, "concat", {{forward, "source side first"}, {reversed, "sink side first"}}, limits_.max_depth);
    }

    MutationSequence conjugate(const Quiver& q, int k, const MutationSequence& r_prime)
    {
        static const char* names[] = {"(k, r', sigma(k))", "(k, r', sigma^-1(k))", "(k, r', last green)"};
        std::vector<Candidate> candidates;
        const auto raw = conjugate_candidates(q, k, r_prime);
        // Candidates come in a fixed order, but some may be absent or coincide.
        const auto v = verify_reddening(mutate(q, k), r_prime);
        const auto& sigma = *v.permutation;
        const int inverse = static_cast<int>(std::find(sigma.begin(), sigma.end(), k) - sigma.begin()) + 1;
        for (const auto& c : raw) {
            const int last = c.back();
            const char* name = last == sigma[k - 1] ? names[0] : last == inverse ? names[1] : names[2];
            candidates.push_back({c, name});
        }
        return accept(q, "conjugate", candidates, r_prime.size() + 2);
    }

    // r reddens apply_sequence(q, path); returns a sequence reddening q.
    MutationSequence conjugate_back(const Quiver& q, const MutationSequence& path, MutationSequence r)
    {
        std::vector<Quiver> chain{q};
        for (int k : path)
            chain.push_back(mutate(chain.back(), k));
        for (std::size_t t = path.size(); t > 0; --t)
            r = conjugate(chain[t - 1], path[t - 1], r);
        return r;
    }

    MutationSequence from_tree(const ClassPTree& t, Quiver& out)
    {
        switch (t.kind) {
        case ClassPTree::Kind::one_vertex:
            out = Quiver(1, 0);
            return leaf(out);
        case ClassPTree::Kind::mutate: {
            Quiver child;
            auto r = from_tree(t.children.at(0), child);
            // Walk the mutations forward; each step conjugates back by one.
            for (int k : t.sequence) {
                const Quiver next = mutate(child, k);
                r = conjugate(next, k, r);
                child = next;
            }
            out = child;
            return r;
        }
        case ClassPTree::Kind::extension: {
            Quiver left;
            Quiver right;
            const auto r_left = from_tree(t.children.at(0), left);
            const auto r_right = from_tree(t.children.at(1), right);
            out = verify_class_p_tree(t).quiver;
            VertexSplit split;
            for (int v = 1; v <= left.n_mutable(); ++v)
                split.a_side.push_back(v);
            for (int v = 1; v <= right.n_mutable(); ++v)
                split.b_side.push_back(left.n_mutable() + v);
            if (t.direction == ClassPTree::Direction::right_to_left)
                return concat(out, {split.b_side, split.a_side}, r_right, r_left);
            return concat(out, split, r_left, r_right);
        }
        }
        throw QuiverError("unknown tree node");
    }

    MutationSequence restricted(const Quiver& r, const std::vector<int>& side, int other_end,
                                const BanffCertificate& child_cert)
    {
        // When the side is everything but one vertex the child certificate applies.
        if (static_cast<int>(side.size()) == r.n_mutable() - 1 &&
            std::find(side.begin(), side.end(), other_end) == side.end())
            return from_banff(induced_subquiver(r, side).quiver, child_cert);
        const auto sub = induced_subquiver(r, side).quiver;
        const auto cert = certify_banff(sub, limits_);
        if (cert.answer == Answer::yes)
            return from_banff(sub, *cert.certificate);
        return accept(sub, "restriction", {}, limits_.max_depth);
    }

    MutationSequence from_banff(const Quiver& q, const BanffCertificate& c)
    {
        switch (c.kind) {
        case BanffCertificate::Kind::acyclic_leaf:
            return leaf(q);
        case BanffCertificate::Kind::mutation_acyclic_leaf:
            return conjugate_back(q, c.sequence, leaf(apply_sequence(q, c.sequence)));
        case BanffCertificate::Kind::covering_split: {
            const Quiver r = apply_sequence(q, c.sequence);
            const auto split = descendant_split(r, c.pair.j);
            const auto r_a = restricted(r, split.a_side, c.pair.j, *c.without_j);
            const auto r_b = restricted(r, split.b_side, c.pair.i, *c.without_i);
            return conjugate_back(q, c.sequence, concat(r, split, r_a, r_b));
        }
        }
        throw QuiverError("unknown certificate node");
    }

private:
    void record(const std::string& rule, const std::string& detail, const Quiver& q, const MutationSequence& s)
    {
        trace_.push_back({rule, detail, q.n_mutable(), s});
    }

    SearchLimits limits_;
    std::vector<DerivationStep> trace_;
};

SynthesisResult finish(const Quiver& q, MutationSequence s, std::vector<DerivationStep> trace)
{
    SynthesisResult out;
    out.verdict = verify_reddening(q, s);
    if (!out.verdict.ok)
        throw std::logic_error("synthesized sequence " + format_sequence(s) + " failed verification");
    out.sequence = std::move(s);
    out.derivation = std::move(trace);
    return out;
}

}  // namespace

MutationSequence concat_rule(const Quiver& q, const VertexSplit& split, const MutationSequence& r_a,
                             const MutationSequence& r_b)
{
    if (!is_triangular_split(q, split))
        throw QuiverError("concat_rule: split is not triangular");
    auto a_side = split.a_side;
    auto b_side = split.b_side;
    std::sort(a_side.begin(), a_side.end());
    std::sort(b_side.begin(), b_side.end());
    MutationSequence out;
    out.reserve(r_a.size() + r_b.size());
    for (int v : r_a) {
        if (v < 1 || v > static_cast<int>(a_side.size()))
            throw QuiverError("concat_rule: index " + std::to_string(v) + " outside the source side");
        out.push_back(a_side[v - 1]);
    }
    for (int v : r_b) {
        if (v < 1 || v > static_cast<int>(b_side.size()))
            throw QuiverError("concat_rule: index " + std::to_string(v) + " outside the sink side");
        out.push_back(b_side[v - 1]);
    }
    return out;
}

std::vector<MutationSequence> conjugate_candidates(const Quiver& q, int k, const MutationSequence& r_prime)
{
    if (!q.is_mutable(k))
        throw QuiverError("conjugate_rule: vertex " + std::to_string(k) + " is not mutable");
    if (r_prime.empty())
        throw QuiverError("conjugate_rule: empty sequence");
    const auto v = verify_reddening(mutate(q, k), r_prime);
    if (!v.ok)
        throw QuiverError("conjugate_rule: " + format_sequence(r_prime) + " does not redden the mutated quiver");
    const auto& sigma = *v.permutation;

    MutationSequence prefix{k};
    prefix.insert(prefix.end(), r_prime.begin(), r_prime.end());
    std::vector<MutationSequence> out;
    auto add = [&](int last) {
        auto s = prefix;
        s.push_back(last);
        if (std::find(out.begin(), out.end(), s) == out.end())
            out.push_back(std::move(s));
    };
    add(sigma[k - 1]);
    add(static_cast<int>(std::find(sigma.begin(), sigma.end(), k) - sigma.begin()) + 1);

    const Quiver state = apply_sequence(frame(q), prefix);
    std::vector<int> green;
    for (int u = 1; u <= q.n_mutable(); ++u)
        if (vertex_status(state, u) == VertexColor::green)
            green.push_back(u);
    if (green.size() == 1)
        add(green.front());
    return out;
}

MutationSequence conjugate_rule(const Quiver& q, int k, const MutationSequence& r_prime)
{
    return conjugate_candidates(q, k, r_prime).front();
}

SynthesisResult synthesize_from_tree(const ClassPTree& tree, const SearchLimits& limits)
{
    verify_class_p_tree(tree);
    Synthesizer s(limits);
    Quiver q;
    auto seq = s.from_tree(tree, q);
    return finish(q, std::move(seq), s.take_trace());
}

SynthesisResult synthesize_from_banff(const Quiver& q, const BanffCertificate& certificate, const SearchLimits& limits)
{
    if (auto e = banff_certificate_error(q, certificate))
        throw QuiverError("certificate invalid: " + *e);
    Synthesizer s(limits);
    auto seq = s.from_banff(q, certificate);
    return finish(q, std::move(seq), s.take_trace());
}

}  // namespace quiverkit
