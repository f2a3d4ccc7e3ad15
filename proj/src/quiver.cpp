#include "quiverkit/quiver.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <queue>
#include <sstream>

namespace quiverkit {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t'))
            ++pos;
        if (pos >= s.size())
            break;
        auto end = pos;
        while (end < s.size() && s[end] != ' ' && s[end] != '\t')
            ++end;
        out.push_back(s.substr(pos, end - pos));
        pos = end;
    }
    return out;
}

int parse_int(std::string_view tok, int line_no)
{
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw QuiverError("line " + std::to_string(line_no) + ": expected an integer, got '" +
                          std::string(tok) + "'");
    return value;
}

Integer parse_positive_integer(std::string_view tok, int line_no)
{
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw QuiverError("line " + std::to_string(line_no) + ": bad multiplicity '" + std::string(tok) + "'");
    Integer value{std::string(tok)};
    if (value <= 0)
        throw QuiverError("line " + std::to_string(line_no) + ": multiplicity must be positive");
    return value;
}

}  // namespace

Quiver::Quiver(int n_mutable, int n_frozen) : n_mutable_(n_mutable), n_frozen_(n_frozen)
{
    if (n_mutable < 0 || n_frozen < 0)
        throw QuiverError("vertex counts must be non-negative");
    b_.assign(static_cast<std::size_t>(size()) * size(), Integer(0));
}

Quiver Quiver::from_arrows(int n_mutable, int n_frozen, std::span<const Arrow> arrows)
{
    Quiver q(n_mutable, n_frozen);
    for (const auto& a : arrows)
        q.add_arrows(a.from, a.to, a.multiplicity);
    return q;
}

std::size_t Quiver::index(int i, int j) const
{
    if (!contains(i) || !contains(j))
        throw QuiverError("vertex index out of range: (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    return static_cast<std::size_t>(i - 1) * size() + (j - 1);
}

Integer Quiver::arrows_between(int i, int j) const
{
    const auto& v = b(i, j);
    return v > 0 ? v : Integer(0);
}

void Quiver::add_arrows(int from, int to, const Integer& multiplicity)
{
    if (!contains(from) || !contains(to))
        throw QuiverError("arrow " + std::to_string(from) + "->" + std::to_string(to) + " references an unknown vertex");
    if (from == to)
        throw QuiverError("loop at vertex " + std::to_string(from));
    if (is_frozen(from) && is_frozen(to))
        throw QuiverError("arrow between frozen vertices " + std::to_string(from) + " and " + std::to_string(to));
    if (multiplicity <= 0)
        throw QuiverError("arrow multiplicity must be positive");
    if (b(from, to) < 0)
        throw QuiverError("2-cycle between " + std::to_string(from) + " and " + std::to_string(to));
    b_[index(from, to)] += multiplicity;
    b_[index(to, from)] -= multiplicity;
}

std::vector<Arrow> Quiver::arrows() const
{
    std::vector<Arrow> out;
    for (int i = 1; i <= size(); ++i)
        for (int j = 1; j <= size(); ++j)
            if (b(i, j) > 0)
                out.push_back({i, j, b(i, j)});
    return out;
}

std::vector<int> Quiver::successors(int v) const
{
    std::vector<int> out;
    for (int w = 1; w <= n_mutable_; ++w)
        if (raw(v - 1, w - 1) > 0)
            out.push_back(w);
    return out;
}

std::vector<int> Quiver::predecessors(int v) const
{
    std::vector<int> out;
    for (int w = 1; w <= n_mutable_; ++w)
        if (raw(w - 1, v - 1) > 0)
            out.push_back(w);
    return out;
}

std::string Quiver::label(int v) const
{
    if (!contains(v))
        throw QuiverError("vertex index out of range: " + std::to_string(v));
    return labels_.empty() ? std::to_string(v) : labels_[v - 1];
}

void Quiver::set_labels(std::vector<std::string> labels)
{
    if (!labels.empty() && static_cast<int>(labels.size()) != size())
        throw QuiverError("label count does not match vertex count");
    labels_ = std::move(labels);
}

bool Quiver::operator==(const Quiver& other) const
{
    return n_mutable_ == other.n_mutable_ && n_frozen_ == other.n_frozen_ && b_ == other.b_;
}

Quiver parse_quiver(std::string_view text)
{
    Quiver q;
    bool have_header = false;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        auto line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        const auto colon = line.find(':');
        if (colon == std::string_view::npos)
            throw QuiverError("line " + std::to_string(line_no) + ": expected 'key: values'");
        const auto key = trim(line.substr(0, colon));
        const auto fields = split_ws(line.substr(colon + 1));

        if (key == "vertices") {
            if (have_header)
                throw QuiverError("line " + std::to_string(line_no) + ": duplicate 'vertices' line");
            if (fields.size() != 2)
                throw QuiverError("line " + std::to_string(line_no) + ": 'vertices' takes <n_mutable> <n_frozen>");
            const int nm = parse_int(fields[0], line_no);
            const int nf = parse_int(fields[1], line_no);
            if (nm < 0 || nf < 0)
                throw QuiverError("line " + std::to_string(line_no) + ": vertex counts must be non-negative");
            q = Quiver(nm, nf);
            have_header = true;
        } else if (key == "arrow") {
            if (!have_header)
                throw QuiverError("line " + std::to_string(line_no) + ": 'arrow' before 'vertices'");
            if (fields.size() != 2 && fields.size() != 3)
                throw QuiverError("line " + std::to_string(line_no) + ": 'arrow' takes <from> <to> [mult]");
            const int from = parse_int(fields[0], line_no);
            const int to = parse_int(fields[1], line_no);
            const Integer mult = fields.size() == 3 ? parse_positive_integer(fields[2], line_no) : Integer(1);
            try {
                q.add_arrows(from, to, mult);
            } catch (const QuiverError& e) {
                throw QuiverError("line " + std::to_string(line_no) + ": " + e.what());
            }
        } else {
            throw QuiverError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
        }
    }
    if (!have_header)
        throw QuiverError("missing 'vertices' line");
    return q;
}

std::string serialize(const Quiver& q)
{
    std::ostringstream out;
    out << "vertices: " << q.n_mutable() << ' ' << q.n_frozen() << '\n';
    for (const auto& a : q.arrows()) {
        out << "arrow: " << a.from << ' ' << a.to;
        if (a.multiplicity != 1)
            out << ' ' << a.multiplicity;
        out << '\n';
    }
    return out.str();
}

Quiver mutate(const Quiver& q, int k)
{
    if (!q.is_mutable(k))
        throw QuiverError("cannot mutate at vertex " + std::to_string(k) + ": not a mutable vertex");
    const int n = q.size();
    const int k0 = k - 1;
    Quiver out = q;
    // Compose every path i -> k -> j into arrows i -> j (and the reverse for
    // j -> k -> i); opposite arrows cancel through the signed sum.
    for (int i = 0; i < n; ++i) {
        if (i == k0)
            continue;
        const Integer& bik = q.raw(i, k0);
        const int sik = bik.sign();
        if (sik == 0)
            continue;
        for (int j = 0; j < n; ++j) {
            if (j == k0 || j == i)
                continue;
            const Integer& bkj = q.raw(k0, j);
            if (bkj.sign() != sik)
                continue;
            if (sik > 0)
                out.raw(i, j) += bik * bkj;
            else
                out.raw(i, j) -= bik * bkj;
        }
    }
    for (int j = 0; j < n; ++j) {
        out.raw(k0, j) = -q.raw(k0, j);
        out.raw(j, k0) = -q.raw(j, k0);
    }
    for (int i = q.n_mutable(); i < n; ++i)
        for (int j = q.n_mutable(); j < n; ++j)
            out.raw(i, j) = 0;
    return out;
}

Quiver apply_sequence(const Quiver& q, std::span<const int> sequence)
{
    Quiver out = q;
    for (int k : sequence)
        out = mutate(out, k);
    return out;
}

Quiver frame(const Quiver& q, Framing kind)
{
    if (q.n_frozen() != 0)
        throw QuiverError("cannot frame a quiver that already has frozen vertices");
    const int n = q.n_mutable();
    Quiver out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.raw(i, j) = q.raw(i, j);
    for (int i = 1; i <= n; ++i) {
        if (kind == Framing::framed)
            out.add_arrows(i, n + i);
        else
            out.add_arrows(n + i, i);
    }
    return out;
}

Restriction induced_subquiver(const Quiver& q, std::span<const int> vertices)
{
    std::vector<int> chosen(vertices.begin(), vertices.end());
    std::sort(chosen.begin(), chosen.end());
    if (std::adjacent_find(chosen.begin(), chosen.end()) != chosen.end())
        throw QuiverError("induced_subquiver: duplicate vertex");
    for (int v : chosen)
        if (!q.contains(v))
            throw QuiverError("induced_subquiver: unknown vertex " + std::to_string(v));

    // Sorted order already places mutable vertices before frozen ones.
    const auto n_mut = static_cast<int>(std::count_if(chosen.begin(), chosen.end(), [&](int v) { return q.is_mutable(v); }));
    Restriction r{Quiver(n_mut, static_cast<int>(chosen.size()) - n_mut), chosen};
    for (std::size_t a = 0; a < chosen.size(); ++a)
        for (std::size_t c = 0; c < chosen.size(); ++c)
            r.quiver.raw(static_cast<int>(a), static_cast<int>(c)) = q.raw(chosen[a] - 1, chosen[c] - 1);
    std::vector<std::string> labels;
    labels.reserve(chosen.size());
    for (int v : chosen)
        labels.push_back(q.label(v));
    r.quiver.set_labels(std::move(labels));
    return r;
}

Restriction delete_vertices(const Quiver& q, std::span<const int> vertices)
{
    std::vector<int> keep;
    for (int v = 1; v <= q.size(); ++v)
        if (std::find(vertices.begin(), vertices.end(), v) == vertices.end())
            keep.push_back(v);
    for (int v : vertices)
        if (!q.contains(v))
            throw QuiverError("delete_vertices: unknown vertex " + std::to_string(v));
    return induced_subquiver(q, keep);
}

VertexColor vertex_status(const Quiver& q, int k)
{
    if (!q.is_mutable(k))
        throw QuiverError("vertex_status: " + std::to_string(k) + " is not a mutable vertex");
    bool incoming = false;
    bool outgoing = false;
    for (int f = q.n_mutable(); f < q.size(); ++f) {
        const int s = q.raw(k - 1, f).sign();
        outgoing |= s > 0;
        incoming |= s < 0;
    }
    if (incoming && outgoing)
        throw QuiverError("sign-coherence violated at vertex " + std::to_string(k));
    if (!incoming && !outgoing)
        throw QuiverError("vertex " + std::to_string(k) + " has no frozen arrows");
    return incoming ? VertexColor::red : VertexColor::green;
}

Acyclicity acyclicity(const Quiver& q)
{
    const int n = q.n_mutable();
    Acyclicity result;

    std::vector<int> indegree(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (q.raw(i, j) > 0)
                ++indegree[j];
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int i = 0; i < n; ++i)
        if (indegree[i] == 0)
            ready.push(i);
    while (!ready.empty()) {
        const int v = ready.top();
        ready.pop();
        result.order.push_back(v + 1);
        for (int j = 0; j < n; ++j)
            if (q.raw(v, j) > 0 && --indegree[j] == 0)
                ready.push(j);
    }
    if (static_cast<int>(result.order.size()) == n)
        return result;

    result.acyclic = false;
    result.order.clear();
    // Iterative DFS in index order; the first back edge closes a cycle.
    std::vector<int> state(n, 0);  // 0 unseen, 1 on stack, 2 done
    std::vector<int> stack;
    std::function<bool(int)> dfs = [&](int v) {
        state[v] = 1;
        stack.push_back(v);
        for (int w = 0; w < n; ++w) {
            if (q.raw(v, w) <= 0)
                continue;
            if (state[w] == 1) {
                auto it = std::find(stack.begin(), stack.end(), w);
                std::vector<int> cycle(it, stack.end());
                auto lowest = std::min_element(cycle.begin(), cycle.end());
                std::rotate(cycle.begin(), lowest, cycle.end());
                for (int c : cycle)
                    result.cycle.push_back(c + 1);
                return true;
            }
            if (state[w] == 0 && dfs(w))
                return true;
        }
        stack.pop_back();
        state[v] = 2;
        return false;
    };
    for (int v = 0; v < n && result.cycle.empty(); ++v)
        if (state[v] == 0)
            dfs(v);
    return result;
}

Condensation condensation(const Quiver& q)
{
    const int n = q.n_mutable();
    // Tarjan's algorithm.
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    std::vector<std::vector<int>> raw_components;
    int counter = 0;
    std::function<void(int)> strongconnect = [&](int v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (int w = 0; w < n; ++w) {
            if (q.raw(v, w) <= 0)
                continue;
            if (index[w] < 0) {
                strongconnect(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<int> members;
            int w = -1;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp[w] = static_cast<int>(raw_components.size());
                members.push_back(w + 1);
            } while (w != v);
            std::sort(members.begin(), members.end());
            raw_components.push_back(std::move(members));
        }
    };
    for (int v = 0; v < n; ++v)
        if (index[v] < 0)
            strongconnect(v);

    const int m = static_cast<int>(raw_components.size());
    std::vector<std::vector<bool>> adj(m, std::vector<bool>(m, false));
    std::vector<int> indegree(m, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (q.raw(i, j) > 0 && comp[i] != comp[j] && !adj[comp[i]][comp[j]]) {
                adj[comp[i]][comp[j]] = true;
                ++indegree[comp[j]];
            }

    // Kahn's order over components, smallest member first.
    auto cmp = [&](int a, int b) { return raw_components[a].front() > raw_components[b].front(); };
    std::priority_queue<int, std::vector<int>, decltype(cmp)> ready(cmp);
    for (int c = 0; c < m; ++c)
        if (indegree[c] == 0)
            ready.push(c);
    std::vector<int> renumber(m, -1);
    Condensation out;
    while (!ready.empty()) {
        const int c = ready.top();
        ready.pop();
        renumber[c] = static_cast<int>(out.components.size());
        out.components.push_back(raw_components[c]);
        for (int d = 0; d < m; ++d)
            if (adj[c][d] && --indegree[d] == 0)
                ready.push(d);
    }
    out.component_of.resize(n);
    for (int v = 0; v < n; ++v)
        out.component_of[v] = renumber[comp[v]];
    out.edges.assign(m, {});
    for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d)
            if (adj[c][d])
                out.edges[renumber[c]].push_back(renumber[d]);
    for (auto& e : out.edges)
        std::sort(e.begin(), e.end());
    return out;
}

SourcesAndSinks sources_and_sinks(const Quiver& q)
{
    SourcesAndSinks out;
    for (int v = 1; v <= q.n_mutable(); ++v) {
        if (q.predecessors(v).empty())
            out.sources.push_back(v);
        if (q.successors(v).empty())
            out.sinks.push_back(v);
    }
    return out;
}

std::vector<int> forward_reachable(const Quiver& q, int start)
{
    if (!q.is_mutable(start))
        throw QuiverError("forward_reachable: " + std::to_string(start) + " is not a mutable vertex");
    std::vector<bool> seen(q.n_mutable(), false);
    std::vector<int> todo{start - 1};
    seen[start - 1] = true;
    while (!todo.empty()) {
        const int v = todo.back();
        todo.pop_back();
        for (int w = 0; w < q.n_mutable(); ++w)
            if (!seen[w] && q.raw(v, w) > 0) {
                seen[w] = true;
                todo.push_back(w);
            }
    }
    std::vector<int> out;
    for (int v = 0; v < q.n_mutable(); ++v)
        if (seen[v])
            out.push_back(v + 1);
    return out;
}

Quiver relabel(const Quiver& q, std::span<const int> perm, std::span<const int> frozen_perm)
{
    const int nm = q.n_mutable();
    const int nf = q.n_frozen();
    if (static_cast<int>(perm.size()) != nm || (!frozen_perm.empty() && static_cast<int>(frozen_perm.size()) != nf))
        throw QuiverError("relabel: permutation size mismatch");
    std::vector<int> target(q.size());
    std::vector<bool> used(q.size(), false);
    for (int v = 0; v < q.size(); ++v) {
        int t = v < nm ? perm[v] - 1 : nm + (frozen_perm.empty() ? v - nm : frozen_perm[v - nm] - 1);
        const bool ok = v < nm ? (t >= 0 && t < nm) : (t >= nm && t < q.size());
        if (!ok || used[t])
            throw QuiverError("relabel: not a permutation");
        used[t] = true;
        target[v] = t;
    }
    Quiver out(nm, nf);
    for (int i = 0; i < q.size(); ++i)
        for (int j = 0; j < q.size(); ++j)
            out.raw(target[i], target[j]) = q.raw(i, j);
    if (q.has_labels()) {
        std::vector<std::string> labels(q.size());
        for (int v = 0; v < q.size(); ++v)
            labels[target[v]] = q.label(v + 1);
        out.set_labels(std::move(labels));
    }
    return out;
}

std::string format_sequence(std::span<const int> sequence)
{
    std::string out = "(";
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(sequence[i]);
    }
    return out + ")";
}

MutationSequence parse_sequence(std::string_view text)
{
    text = trim(text);
    if (!text.empty() && text.front() == '(') {
        if (text.back() != ')')
            throw QuiverError("unbalanced parentheses in sequence");
        text = trim(text.substr(1, text.size() - 2));
    }
    MutationSequence out;
    if (text.empty())
        return out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find(',', pos);
        if (end == std::string_view::npos)
            end = text.size();
        auto tok = trim(text.substr(pos, end - pos));
        int v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
            throw QuiverError("bad sequence entry '" + std::string(tok) + "'");
        out.push_back(v);
        pos = end + 1;
    }
    return out;
}

}  // namespace quiverkit
