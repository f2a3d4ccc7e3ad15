#include "cli.hpp"

#include "quiverkit/certificate.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace quiverkit::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string file;
    std::string seq;
    std::string limits;
    std::string tree;
    std::string expect;
    std::size_t max_depth = 0;
    std::size_t max_states = 0;
    long long max_millis = 0;
    std::size_t max_results = 64;
    int threads = 1;
    bool json = false;
    bool coefficients_only = false;
};

/// Input problem that maps to exit code 3.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Quiver load_quiver(const std::string& path)
{
    return parse_quiver(read_file(path));
}

json load_json(const std::string& path)
{
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

MutationSequence require_sequence(const Options& o)
{
    if (o.seq.empty())
        throw InputError("--seq is required");
    return parse_sequence(o.seq);
}

SearchLimits resolve_limits(const Options& o)
{
    SearchLimits l;
    if (!o.limits.empty()) {
        std::vector<long long> v;
        std::stringstream ss(o.limits);
        std::string part;
        while (std::getline(ss, part, ',')) {
            try {
                std::size_t used = 0;
                v.push_back(std::stoll(part, &used));
                if (used != part.size())
                    throw std::invalid_argument(part);
            } catch (const std::exception&) {
                throw InputError("--limits expects depth,states,millis");
            }
        }
        if (v.size() != 3 || std::any_of(v.begin(), v.end(), [](long long x) { return x <= 0; }))
            throw InputError("--limits expects three positive integers depth,states,millis");
        l.max_depth = static_cast<std::size_t>(v[0]);
        l.max_states = static_cast<std::size_t>(v[1]);
        l.max_millis = std::chrono::milliseconds(v[2]);
    }
    if (o.max_depth)
        l.max_depth = o.max_depth;
    if (o.max_states)
        l.max_states = o.max_states;
    if (o.max_millis)
        l.max_millis = std::chrono::milliseconds(o.max_millis);
    return l;
}

int exit_for(Answer a)
{
    switch (a) {
    case Answer::yes:
        return exit_yes;
    case Answer::no:
        return exit_no;
    case Answer::unknown:
        return exit_unknown;
    }
    return exit_error;
}

std::string plural(std::size_t n, const std::string& noun)
{
    return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

std::string format_pair(const CoveringPair& p)
{
    return "(" + std::to_string(p.i) + "," + std::to_string(p.j) + ")";
}

std::string format_set(const std::vector<int>& v)
{
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

std::string format_trop(const TropMonomial& m)
{
    std::string s;
    for (std::size_t l = 0; l < m.exponents.size(); ++l) {
        const auto& e = m.exponents[l];
        if (e.is_zero())
            continue;
        if (!s.empty())
            s += "*";
        s += "y" + std::to_string(l + 1);
        if (e != 1)
            s += "^" + e.str();
    }
    return s.empty() ? "1" : s;
}

void emit_document(std::ostream& out, const std::string& kind, const Quiver& q, json payload, const SearchLimits& l)
{
    CertificateDocument doc;
    doc.kind = kind;
    doc.quiver = q;
    doc.payload = std::move(payload);
    doc.limits = l;
    out << to_json(doc).dump(2) << "\n";
}

void print_certificate(std::ostream& out, const BanffCertificate& c, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    switch (c.kind) {
    case BanffCertificate::Kind::acyclic_leaf:
        out << pad << "acyclic, order " << format_sequence(c.sequence) << "\n";
        return;
    case BanffCertificate::Kind::mutation_acyclic_leaf:
        out << pad << "mutation acyclic, witness " << format_sequence(c.sequence) << "\n";
        return;
    case BanffCertificate::Kind::covering_split:
        out << pad << "covering pair " << format_pair(c.pair) << " after " << format_sequence(c.sequence) << "\n";
        out << pad << "  without " << c.pair.i << ":\n";
        print_certificate(out, *c.without_i, indent + 4);
        out << pad << "  without " << c.pair.j << ":\n";
        print_certificate(out, *c.without_j, indent + 4);
        return;
    }
}

int cmd_mutate(const Options& o, std::ostream& out)
{
    const auto q = load_quiver(o.file);
    const auto seq = require_sequence(o);
    const auto r = apply_sequence(q, seq);
    if (o.json)
        out << json{{"sequence", seq}, {"quiver", serialize(r)}}.dump(2) << "\n";
    else
        out << serialize(r);
    return exit_yes;
}

int cmd_verify(const Options& o, std::ostream& out, SequenceMode mode)
{
    const auto q = load_quiver(o.file);
    const auto seq = require_sequence(o);
    const auto v = mode == SequenceMode::maximal_green ? verify_maximal_green(q, seq) : verify_reddening(q, seq);
    const std::string what = mode == SequenceMode::maximal_green ? "MAXIMAL GREEN" : "REDDENING";
    if (o.json) {
        emit_document(out, "verdict", q, verdict_payload(mode, seq, v), resolve_limits(o));
    } else if (v.ok) {
        out << what << " verified; final quiver ≅ coframe via σ = " << format_sequence(*v.permutation) << "\n";
    } else {
        out << "NOT " << what << ": " << v.failure_reason.value_or("rejected");
        if (v.failing_step)
            out << " (step " << *v.failing_step << ")";
        out << "\n";
    }
    return v.ok ? exit_yes : exit_no;
}

int cmd_search(const Options& o, std::ostream& out, SequenceMode mode)
{
    const auto q = load_quiver(o.file);
    const auto l = resolve_limits(o);
    const auto s = mode == SequenceMode::maximal_green ? search_maximal_green(q, l) : search_reddening(q, l);
    const std::string what = mode == SequenceMode::maximal_green ? "maximal green" : "reddening";
    if (o.json) {
        emit_document(out, "verdict", q, search_payload(mode, s), l);
    } else {
        switch (s.answer) {
        case Answer::yes:
            out << "FOUND " << what << " sequence " << format_sequence(s.sequence) << " (" << s.stats.states
                << " states)\n";
            break;
        case Answer::no:
            out << "NONE: no " << what << " sequence exists; closure of " << s.closure.size()
                << " states verified\n";
            break;
        case Answer::unknown:
            out << "UNKNOWN: limits exhausted (" << s.stats.exhausted << ") after " << s.stats.states
                << " states, depth " << s.stats.depth << "\n";
            break;
        }
    }
    return exit_for(s.answer);
}

int cmd_explore(const Options& o, std::ostream& out)
{
    const auto q = load_quiver(o.file);
    const auto l = resolve_limits(o);
    const auto e = explore_mutation_class(q, l);
    if (o.json) {
        emit_document(out, "exploration", q, exploration_payload(e), l);
    } else {
        out << (e.closed ? "CLOSED" : "UNKNOWN: limits exhausted (" + e.stats.exhausted + "), partial")
            << " mutation class: " << plural(e.representatives.size(), "representative") << "\n";
        for (const auto& r : e.representatives)
            out << "  " << format_sequence(r.path) << "\n";
    }
    return e.closed ? exit_yes : exit_unknown;
}

int cmd_covering_pairs(const Options& o, std::ostream& out)
{
    const auto q = load_quiver(o.file);
    const auto pairs = covering_pairs(q);
    if (o.json) {
        json arr = json::array();
        for (const auto& p : pairs)
            arr.push_back({p.i, p.j});
        out << json{{"covering_pairs", arr}}.dump(2) << "\n";
    } else if (pairs.empty()) {
        out << "no covering pairs\n";
    } else {
        for (const auto& p : pairs)
            out << format_pair(p) << "\n";
    }
    return pairs.empty() ? exit_no : exit_yes;
}

int cmd_decompose(const Options& o, std::ostream& out)
{
    const auto q = load_quiver(o.file);
    const auto splits = triangular_decompositions(q, o.max_results);
    if (o.json) {
        json arr = json::array();
        for (const auto& s : splits)
            arr.push_back({{"a_side", s.a_side}, {"b_side", s.b_side}});
        out << json{{"decompositions", arr}}.dump(2) << "\n";
    } else if (splits.empty()) {
        out << "no triangular decomposition\n";
    } else {
        for (const auto& s : splits)
            out << format_set(s.a_side) << " -> " << format_set(s.b_side) << "\n";
    }
    return splits.empty() ? exit_no : exit_yes;
}

int cmd_certify_banff(const Options& o, std::ostream& out)
{
    const auto q = load_quiver(o.file);
    const auto l = resolve_limits(o);
    const auto r = certify_banff(q, l);
    if (o.json) {
        emit_document(out, "banff", q, banff_payload(r), l);
    } else {
        switch (r.answer) {
        case Answer::yes:
            out << "BANFF\n";
            print_certificate(out, *r.certificate, 2);
            break;
        case Answer::no:
            out << "NOT BANFF: closed mutation class of " << plural(r.refutation->representatives.size(), "representative")
                << ", every covering pair refuted\n";
            break;
        case Answer::unknown:
            out << "UNKNOWN: limits exhausted (" << r.exhausted << ")\n";
            break;
        }
    }
    return exit_for(r.answer);
}

/// Accepts a bare tree or a class_p_tree document.
ClassPTree load_tree(const std::string& path)
{
    const auto j = load_json(path);
    if (j.is_object() && j.contains("schema_version")) {
        const auto doc = parse_document(j);
        if (doc.kind != "class_p_tree" || !doc.payload.is_object() || !doc.payload.contains("tree"))
            throw DocumentError(path + ": not a class_p_tree document");
        return tree_from_json(doc.payload.at("tree"));
    }
    return tree_from_json(j);
}

int cmd_verify_tree(const Options& o, std::ostream& out)
{
    const auto tree = load_tree(o.file);
    ClassPMembership m;
    try {
        m = verify_class_p_tree(tree);
    } catch (const QuiverError& e) {
        out << "INVALID TREE: " << e.what() << "\n";
        return exit_no;
    }
    bool matches = true;
    if (!o.expect.empty())
        matches = m.quiver == load_quiver(o.expect);
    if (o.json) {
        emit_document(out, "class_p_tree", m.quiver, class_p_payload(tree, m), resolve_limits(o));
    } else {
        out << "TREE valid; in P: " << (m.in_p ? "yes" : "no") << ", in P': " << (m.in_p_prime ? "yes" : "no");
        if (m.min_m)
            out << ", m = " << *m.min_m;
        out << "\n" << serialize(m.quiver);
        if (!matches)
            out << "MISMATCH: tree does not evaluate to " << o.expect << "\n";
    }
    return matches ? exit_yes : exit_no;
}

int cmd_synthesize(const Options& o, std::ostream& out)
{
    const auto l = resolve_limits(o);
    Quiver q;
    SynthesisResult result;
    std::string source;
    json extra;
    if (!o.tree.empty()) {
        const auto tree = load_tree(o.tree);
        q = verify_class_p_tree(tree).quiver;
        result = synthesize_from_tree(tree, l);
        source = "tree";
        extra = tree_to_json(tree);
    } else {
        if (o.file.empty())
            throw InputError("synthesize needs a quiver file or --tree");
        q = load_quiver(o.file);
        const auto banff = certify_banff(q, l);
        if (banff.answer != Answer::yes) {
            if (o.json)
                emit_document(out, "banff", q, banff_payload(banff), l);
            else if (banff.answer == Answer::no)
                out << "NOT BANFF: no certificate to synthesize from\n";
            else
                out << "UNKNOWN: limits exhausted (" << banff.exhausted << ") while certifying\n";
            return exit_for(banff.answer);
        }
        result = synthesize_from_banff(q, *banff.certificate, l);
        source = "banff";
        extra = certificate_to_json(*banff.certificate);
    }
    if (o.json) {
        auto payload = synthesis_payload(source, result);
        payload[source == "tree" ? "tree" : "certificate"] = extra;
        emit_document(out, "synthesis", q, payload, l);
    } else {
        out << "REDDENING synthesized and verified: " << format_sequence(result.sequence) << "\n";
        for (const auto& s : result.derivation)
            out << "  " << s.rule << " [" << s.detail << "] on " << s.vertices
                << " vertices: " << format_sequence(s.sequence) << "\n";
    }
    return exit_yes;
}

int cmd_seed_mutate(const Options& o, std::ostream& out)
{
    const auto q = load_quiver(o.file);
    const auto seq = o.seq.empty() ? MutationSequence{} : parse_sequence(o.seq);
    const auto s = seed_apply(seed_initial(q, !o.coefficients_only), seq);
    if (o.json) {
        auto j = seed_to_json(s);
        j["sequence"] = seq;
        out << j.dump(2) << "\n";
        return exit_yes;
    }
    const auto names = seed_variable_names(s.rank());
    for (int i = 0; i < static_cast<int>(s.cluster.size()); ++i)
        out << "x" << i + 1 << " = " << s.cluster[static_cast<std::size_t>(i)].to_string(names) << "\n";
    for (int i = 0; i < s.rank(); ++i)
        out << "y" << i + 1 << " = " << format_trop(s.coeffs[static_cast<std::size_t>(i)]) << "\n";
    out << "c-vectors (columns):\n";
    for (const auto& row : c_vectors(s)) {
        out << " ";
        for (const auto& v : row)
            out << " " << v.str();
        out << "\n";
    }
    return exit_yes;
}

int cmd_check(const Options& o, std::ostream& out)
{
    const auto doc = parse_document(load_json(o.file));
    const auto r = check_document(doc);
    if (o.json)
        out << json{{"valid", r.valid}, {"kind", doc.kind}, {"message", r.message}}.dump(2) << "\n";
    else
        out << (r.valid ? "VALID " : "INVALID ") << doc.kind << ": " << r.message << "\n";
    return r.valid ? exit_yes : exit_no;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Quiver mutation, green sequences, Banff certificates and principal-coefficient seeds",
                 "quiverkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);

    auto with_common = [&](CLI::App* sub) {
        sub->add_flag("--json", o.json, "Emit JSON");
        sub->add_option("--threads", o.threads, "Worker threads (searches run single-threaded)")
            ->check(CLI::PositiveNumber);
        return sub;
    };
    auto with_limits = [&](CLI::App* sub) {
        sub->add_option("--limits", o.limits, "depth,states,millis");
        sub->add_option("--max-depth", o.max_depth, "Search depth limit")->check(CLI::PositiveNumber);
        sub->add_option("--max-states", o.max_states, "State limit")->check(CLI::PositiveNumber);
        sub->add_option("--max-millis", o.max_millis, "Time limit in milliseconds")->check(CLI::PositiveNumber);
        return sub;
    };
    auto with_file = [&](CLI::App* sub, const char* what) {
        sub->add_option("file", o.file, what)->required();
        return sub;
    };
    auto with_seq = [&](CLI::App* sub) {
        sub->add_option("--seq", o.seq, "Comma-separated 1-based vertices");
        return sub;
    };

    with_seq(with_file(with_common(app.add_subcommand("mutate", "Apply a mutation sequence")), "Quiver file"));
    with_limits(with_seq(with_file(with_common(app.add_subcommand("verify-mgs", "Verify a maximal green sequence")),
                                   "Quiver file")));
    with_limits(with_seq(
        with_file(with_common(app.add_subcommand("verify-red", "Verify a reddening sequence")), "Quiver file")));
    with_limits(
        with_file(with_common(app.add_subcommand("search-mgs", "Search for a maximal green sequence")), "Quiver file"));
    with_limits(
        with_file(with_common(app.add_subcommand("search-red", "Search for a reddening sequence")), "Quiver file"));
    with_limits(with_file(with_common(app.add_subcommand("explore", "Enumerate the mutation class")), "Quiver file"));
    with_file(with_common(app.add_subcommand("covering-pairs", "List covering pairs")), "Quiver file");
    with_file(with_common(app.add_subcommand("decompose", "List triangular decompositions")), "Quiver file")
        ->add_option("--max-results", o.max_results, "Maximum number of splits")
        ->check(CLI::PositiveNumber);
    with_limits(with_file(with_common(app.add_subcommand("certify-banff", "Certify or refute the Banff property")),
                          "Quiver file"));
    with_limits(with_file(with_common(app.add_subcommand("verify-tree", "Evaluate a class-P construction tree")),
                          "Tree JSON (bare tree or document)"))
        ->add_option("--quiver", o.expect, "Quiver file the tree must evaluate to");
    auto* synth = with_limits(with_common(app.add_subcommand("synthesize", "Build a verified reddening sequence")));
    synth->add_option("file", o.file, "Quiver file (certified as Banff first)");
    synth->add_option("--tree", o.tree, "Class-P tree JSON to synthesize from instead");
    with_seq(with_file(with_common(app.add_subcommand("seed-mutate", "Mutate the principal-coefficient seed")),
                       "Quiver file"))
        ->add_flag("--coefficients-only", o.coefficients_only, "Skip cluster variables");
    with_file(with_common(app.add_subcommand("check", "Re-check a certificate document")), "Document JSON");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return exit_yes;
        }
        err << "quiverkit: " << e.what() << "\n";
        return exit_error;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        if (cmd == "mutate")
            return cmd_mutate(o, out);
        if (cmd == "verify-mgs")
            return cmd_verify(o, out, SequenceMode::maximal_green);
        if (cmd == "verify-red")
            return cmd_verify(o, out, SequenceMode::reddening);
        if (cmd == "search-mgs")
            return cmd_search(o, out, SequenceMode::maximal_green);
        if (cmd == "search-red")
            return cmd_search(o, out, SequenceMode::reddening);
        if (cmd == "explore")
            return cmd_explore(o, out);
        if (cmd == "covering-pairs")
            return cmd_covering_pairs(o, out);
        if (cmd == "decompose")
            return cmd_decompose(o, out);
        if (cmd == "certify-banff")
            return cmd_certify_banff(o, out);
        if (cmd == "verify-tree")
            return cmd_verify_tree(o, out);
        if (cmd == "synthesize")
            return cmd_synthesize(o, out);
        if (cmd == "seed-mutate")
            return cmd_seed_mutate(o, out);
        if (cmd == "check")
            return cmd_check(o, out);
    } catch (const InputError& e) {
        err << "quiverkit: " << e.what() << "\n";
    } catch (const DocumentError& e) {
        err << "quiverkit: malformed document: " << e.what() << "\n";
    } catch (const QuiverError& e) {
        err << "quiverkit: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "quiverkit: internal error: " << e.what() << "\n";
    }
    return exit_error;
}

}  // namespace quiverkit::cli
