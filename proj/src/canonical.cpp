#include "quiverkit/canonical.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace quiverkit {

namespace {

using Cells = std::vector<std::vector<int>>;  // 0-based vertices

void append_varint(std::string& out, std::uint64_t v)
{
    while (v >= 0x80) {
        out.push_back(static_cast<char>((v & 0x7f) | 0x80));
        v >>= 7;
    }
    out.push_back(static_cast<char>(v));
}

void append_entry(std::string& out, const Integer& v)
{
    if (v >= std::numeric_limits<std::int64_t>::min() / 2 && v <= std::numeric_limits<std::int64_t>::max() / 2) {
        const auto s = static_cast<std::int64_t>(v);
        out.push_back('\0');
        append_varint(out, (static_cast<std::uint64_t>(s) << 1) ^ static_cast<std::uint64_t>(s >> 63));
    } else {
        const auto text = v.str();
        out.push_back('\1');
        append_varint(out, text.size());
        out += text;
    }
}

class Canonizer {
public:
    explicit Canonizer(const Quiver& q) : q_(q), n_(q.size()) {}

    CanonicalLabeling run()
    {
        Cells cells;
        std::vector<int> mut, frz;
        for (int v = 0; v < n_; ++v)
            (v < q_.n_mutable() ? mut : frz).push_back(v);
        if (!mut.empty())
            cells.push_back(mut);
        if (!frz.empty())
            cells.push_back(frz);
        refine(cells);
        search(cells);

        CanonicalLabeling out;
        out.form.bytes = std::move(best_bytes_);
        for (int v : best_order_)
            out.order.push_back(v + 1);
        return out;
    }

private:
    void refine(Cells& cells) const
    {
        std::vector<int> cell_of(n_);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t c = 0; c < cells.size(); ++c)
                for (int v : cells[c])
                    cell_of[v] = static_cast<int>(c);

            Cells next;
            next.reserve(cells.size());
            for (const auto& cell : cells) {
                if (cell.size() == 1) {
                    next.push_back(cell);
                    continue;
                }
                std::map<std::vector<std::pair<int, Integer>>, std::vector<int>> groups;
                for (int v : cell) {
                    std::vector<std::pair<int, Integer>> sig;
                    for (int u = 0; u < n_; ++u)
                        if (u != v && !q_.raw(v, u).is_zero())
                            sig.emplace_back(cell_of[u], q_.raw(v, u));
                    std::sort(sig.begin(), sig.end());
                    groups[std::move(sig)].push_back(v);
                }
                if (groups.size() > 1)
                    changed = true;
                for (auto& [sig, members] : groups)
                    next.push_back(std::move(members));
            }
            cells = std::move(next);
        }
    }

    // Swapping v and w (same cell) is an automorphism of q fixing all other
    // vertices; both branches then produce the same leaf encodings.
    bool twins(int v, int w) const
    {
        if (!q_.raw(v, w).is_zero())
            return false;
        for (int u = 0; u < n_; ++u)
            if (u != v && u != w && q_.raw(v, u) != q_.raw(w, u))
                return false;
        return true;
    }

    void search(const Cells& cells)
    {
        auto target = std::find_if(cells.begin(), cells.end(), [](const auto& c) { return c.size() > 1; });
        if (target == cells.end()) {
            leaf(cells);
            return;
        }
        const auto t = static_cast<std::size_t>(target - cells.begin());
        std::vector<int> tried;
        for (int v : cells[t]) {
            if (std::any_of(tried.begin(), tried.end(), [&](int w) { return twins(v, w); }))
                continue;
            tried.push_back(v);
            Cells child;
            child.reserve(cells.size() + 1);
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (c != t) {
                    child.push_back(cells[c]);
                    continue;
                }
                child.push_back({v});
                std::vector<int> rest;
                for (int w : cells[c])
                    if (w != v)
                        rest.push_back(w);
                child.push_back(std::move(rest));
            }
            refine(child);
            search(child);
        }
    }

    void leaf(const Cells& cells)
    {
        std::vector<int> order;
        order.reserve(n_);
        for (const auto& c : cells)
            order.push_back(c.front());
        std::string bytes;
        append_varint(bytes, static_cast<std::uint64_t>(q_.n_mutable()));
        append_varint(bytes, static_cast<std::uint64_t>(q_.n_frozen()));
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                append_entry(bytes, q_.raw(order[i], order[j]));
        if (!have_best_ || bytes < best_bytes_) {
            best_bytes_ = std::move(bytes);
            best_order_ = std::move(order);
            have_best_ = true;
        }
    }

    const Quiver& q_;
    int n_;
    bool have_best_ = false;
    std::string best_bytes_;
    std::vector<int> best_order_;
};

}  // namespace

CanonicalLabeling canonical_labeling(const Quiver& q)
{
    return Canonizer(q).run();
}

CanonicalForm canonical_form(const Quiver& q)
{
    return canonical_labeling(q).form;
}

Quiver canonical_quiver(const Quiver& q, const CanonicalLabeling& labeling)
{
    const int nm = q.n_mutable();
    std::vector<int> perm(nm), fperm(q.n_frozen());
    for (int p = 0; p < q.size(); ++p) {
        const int v = labeling.order[p];
        if (p < nm)
            perm[v - 1] = p + 1;
        else
            fperm[v - nm - 1] = p - nm + 1;
    }
    return relabel(q, perm, fperm);
}

bool isomorphic(const Quiver& a, const Quiver& b)
{
    return a.n_mutable() == b.n_mutable() && a.n_frozen() == b.n_frozen() && canonical_form(a) == canonical_form(b);
}

}  // namespace quiverkit
