#include "quiverkit/certificate.hpp"

#include <algorithm>
#include <set>

namespace quiverkit {

using nlohmann::json;

namespace {

void expect_object(const json& j, const std::string& what, std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional = {})
{
    if (!j.is_object())
        throw DocumentError(what + ": expected an object");
    std::set<std::string> allowed;
    for (const char* k : required) {
        if (!j.contains(k))
            throw DocumentError(what + ": missing field \"" + k + "\"");
        allowed.insert(k);
    }
    for (const char* k : optional)
        allowed.insert(k);
    for (const auto& item : j.items())
        if (!allowed.count(item.key()))
            throw DocumentError(what + ": unknown field \"" + item.key() + "\"");
}

std::string get_string(const json& j, const char* key)
{
    const auto& v = j.at(key);
    if (!v.is_string())
        throw DocumentError(std::string("field \"") + key + "\" must be a string");
    return v.get<std::string>();
}

bool get_bool(const json& j, const char* key)
{
    const auto& v = j.at(key);
    if (!v.is_boolean())
        throw DocumentError(std::string("field \"") + key + "\" must be a boolean");
    return v.get<bool>();
}

long long get_int(const json& j, const char* key)
{
    const auto& v = j.at(key);
    if (!v.is_number_integer())
        throw DocumentError(std::string("field \"") + key + "\" must be an integer");
    return v.get<long long>();
}

std::vector<int> int_list(const json& v, const std::string& what)
{
    if (!v.is_array())
        throw DocumentError(what + " must be an array of integers");
    std::vector<int> out;
    for (const auto& x : v) {
        if (!x.is_number_integer())
            throw DocumentError(what + " must be an array of integers");
        out.push_back(x.get<int>());
    }
    return out;
}

std::vector<int> get_ints(const json& j, const char* key)
{
    return int_list(j.at(key), std::string("field \"") + key + "\"");
}

Answer parse_answer(const std::string& s)
{
    if (s == "yes")
        return Answer::yes;
    if (s == "no")
        return Answer::no;
    if (s == "unknown")
        return Answer::unknown;
    throw DocumentError("answer must be yes, no or unknown");
}

std::string mode_name(SequenceMode m)
{
    return m == SequenceMode::maximal_green ? "maximal_green" : "reddening";
}

SequenceMode parse_mode(const std::string& s)
{
    if (s == "maximal_green")
        return SequenceMode::maximal_green;
    if (s == "reddening")
        return SequenceMode::reddening;
    throw DocumentError("mode must be maximal_green or reddening");
}

Verdict replay(SequenceMode mode, const Quiver& q, const MutationSequence& s)
{
    return mode == SequenceMode::maximal_green ? verify_maximal_green(q, s) : verify_reddening(q, s);
}

const char* kind_name(BanffCertificate::Kind k)
{
    switch (k) {
    case BanffCertificate::Kind::acyclic_leaf:
        return "acyclic_leaf";
    case BanffCertificate::Kind::mutation_acyclic_leaf:
        return "mutation_acyclic_leaf";
    case BanffCertificate::Kind::covering_split:
        return "covering_split";
    }
    return "";
}

CheckResult ok(std::string msg) { return {true, std::move(msg)}; }
CheckResult bad(std::string msg) { return {false, std::move(msg)}; }

CheckResult check_verdict(const Quiver& q, const json& p)
{
    expect_object(p, "verdict payload", {"mode", "answer", "sequence"},
                  {"permutation", "failure_reason", "failing_step", "closure", "states", "depth", "exhausted"});
    const auto mode = parse_mode(get_string(p, "mode"));
    const auto answer = parse_answer(get_string(p, "answer"));
    const auto seq = get_ints(p, "sequence");
    switch (answer) {
    case Answer::yes: {
        const auto v = replay(mode, q, seq);
        if (!v.ok)
            return bad("sequence " + format_sequence(seq) + " does not verify: " + v.failure_reason.value_or(""));
        if (p.contains("permutation") && get_ints(p, "permutation") != *v.permutation)
            return bad("recorded permutation differs from the replayed one");
        return ok("sequence " + format_sequence(seq) + " verified");
    }
    case Answer::no: {
        if (p.contains("closure")) {
            std::vector<MutationSequence> closure;
            if (!p.at("closure").is_array())
                throw DocumentError("closure must be an array");
            for (const auto& s : p.at("closure"))
                closure.push_back(int_list(s, "closure entry"));
            if (!check_search_closure(q, closure, mode == SequenceMode::maximal_green))
                return bad("closure does not refute the existence of a sequence");
            return ok("closure of " + std::to_string(closure.size()) + " states verified");
        }
        const auto v = replay(mode, q, seq);
        if (v.ok)
            return bad("sequence " + format_sequence(seq) + " verifies, but the document says no");
        if (p.contains("failure_reason") && get_string(p, "failure_reason") != v.failure_reason.value_or(""))
            return bad("recorded failure reason differs from the replayed one");
        return ok("sequence " + format_sequence(seq) + " fails as recorded");
    }
    case Answer::unknown:
        return ok("nothing to verify (answer unknown)");
    }
    return bad("unreachable");
}

CheckResult check_banff(const Quiver& q, const json& p)
{
    expect_object(p, "banff payload", {"answer"}, {"certificate", "refutation", "exhausted"});
    switch (parse_answer(get_string(p, "answer"))) {
    case Answer::yes: {
        if (!p.contains("certificate"))
            throw DocumentError("banff payload: yes needs a certificate");
        if (auto e = banff_certificate_error(q, certificate_from_json(p.at("certificate"))))
            return bad("certificate does not replay: " + *e);
        return ok("Banff certificate replayed");
    }
    case Answer::no: {
        if (!p.contains("refutation"))
            throw DocumentError("banff payload: no needs a refutation");
        if (auto e = banff_refutation_error(q, refutation_from_json(p.at("refutation"), q)))
            return bad("refutation does not replay: " + *e);
        return ok("refutation replayed");
    }
    case Answer::unknown:
        return ok("nothing to verify (answer unknown)");
    }
    return bad("unreachable");
}

CheckResult check_exploration(const Quiver& q, const json& p)
{
    expect_object(p, "exploration payload", {"closed", "representatives"}, {"states", "exhausted"});
    std::vector<Representative> reps;
    if (!p.at("representatives").is_array())
        throw DocumentError("representatives must be an array");
    for (const auto& r : p.at("representatives")) {
        auto path = int_list(r, "representative path");
        reps.push_back({apply_sequence(q, path), path});
    }
    if (get_bool(p, "closed")) {
        if (!check_class_closure(q, reps))
            return bad("representatives do not form a closed mutation class");
        return ok("closed class of " + std::to_string(reps.size()) + " representatives verified");
    }
    return ok(std::to_string(reps.size()) + " representatives replayed (class not closed)");
}

CheckResult check_class_p(const Quiver& q, const json& p)
{
    expect_object(p, "class_p_tree payload", {"tree", "in_p", "in_p_prime", "min_m"});
    const auto m = verify_class_p_tree(tree_from_json(p.at("tree")));
    if (!(m.quiver == q))
        return bad("tree evaluates to a different quiver");
    if (get_bool(p, "in_p") != m.in_p || get_bool(p, "in_p_prime") != m.in_p_prime)
        return bad("recorded membership flags differ");
    const auto& mm = p.at("min_m");
    if (mm.is_null() != !m.min_m || (m.min_m && (!mm.is_number_integer() || mm.get<long long>() != static_cast<long long>(*m.min_m))))
        return bad("recorded m differs");
    return ok("tree evaluates to the quiver");
}

CheckResult check_synthesis(const Quiver& q, const json& p)
{
    expect_object(p, "synthesis payload", {"source", "sequence", "derivation"}, {"permutation", "certificate", "tree"});
    const auto source = get_string(p, "source");
    if (source != "banff" && source != "tree")
        throw DocumentError("synthesis source must be banff or tree");
    if (!p.at("derivation").is_array())
        throw DocumentError("derivation must be an array");
    for (const auto& step : p.at("derivation")) {
        expect_object(step, "derivation step", {"rule", "detail", "vertices", "sequence"});
        get_string(step, "rule");
        get_string(step, "detail");
        get_int(step, "vertices");
        get_ints(step, "sequence");
    }
    if (p.contains("certificate"))
        if (auto e = banff_certificate_error(q, certificate_from_json(p.at("certificate"))))
            return bad("embedded certificate does not replay: " + *e);
    if (p.contains("tree") && !(verify_class_p_tree(tree_from_json(p.at("tree"))).quiver == q))
        return bad("embedded tree evaluates to a different quiver");
    const auto seq = get_ints(p, "sequence");
    const auto v = verify_reddening(q, seq);
    if (!v.ok)
        return bad("sequence " + format_sequence(seq) + " does not redden the quiver");
    if (p.contains("permutation") && get_ints(p, "permutation") != *v.permutation)
        return bad("recorded permutation differs from the replayed one");
    return ok("reddening sequence " + format_sequence(seq) + " verified");
}

}  // namespace

json limits_to_json(const SearchLimits& limits)
{
    return {{"max_depth", limits.max_depth},
            {"max_states", limits.max_states},
            {"max_millis", limits.max_millis.count()}};
}

SearchLimits limits_from_json(const json& j)
{
    expect_object(j, "limits", {"max_depth", "max_states", "max_millis"});
    SearchLimits l;
    const auto d = get_int(j, "max_depth");
    const auto s = get_int(j, "max_states");
    const auto m = get_int(j, "max_millis");
    if (d <= 0 || s <= 0 || m <= 0)
        throw DocumentError("limits must be positive");
    l.max_depth = static_cast<std::size_t>(d);
    l.max_states = static_cast<std::size_t>(s);
    l.max_millis = std::chrono::milliseconds(m);
    return l;
}

json to_json(const CertificateDocument& doc)
{
    return {{"schema_version", schema_version},
            {"kind", doc.kind},
            {"quiver", serialize(doc.quiver)},
            {"payload", doc.payload},
            {"limits", limits_to_json(doc.limits)},
            {"tool_version", doc.version}};
}

CertificateDocument parse_document(const json& j)
{
    expect_object(j, "document", {"schema_version", "kind", "quiver", "payload", "limits", "tool_version"});
    if (get_string(j, "schema_version") != schema_version)
        throw DocumentError("unsupported schema_version \"" + get_string(j, "schema_version") + "\"");
    CertificateDocument doc;
    doc.kind = get_string(j, "kind");
    static const std::set<std::string> kinds{"verdict", "banff", "class_p_tree", "synthesis", "exploration"};
    if (!kinds.count(doc.kind))
        throw DocumentError("unknown kind \"" + doc.kind + "\"");
    try {
        doc.quiver = parse_quiver(get_string(j, "quiver"));
    } catch (const QuiverError& e) {
        throw DocumentError(std::string("quiver: ") + e.what());
    }
    doc.payload = j.at("payload");
    doc.limits = limits_from_json(j.at("limits"));
    doc.version = get_string(j, "tool_version");
    return doc;
}

json verdict_payload(SequenceMode mode, const MutationSequence& sequence, const Verdict& verdict)
{
    json p{{"mode", mode_name(mode)}, {"answer", verdict.ok ? "yes" : "no"}, {"sequence", sequence}};
    if (verdict.permutation)
        p["permutation"] = *verdict.permutation;
    if (verdict.failure_reason)
        p["failure_reason"] = *verdict.failure_reason;
    if (verdict.failing_step)
        p["failing_step"] = *verdict.failing_step;
    return p;
}

json search_payload(SequenceMode mode, const SequenceSearch& search)
{
    json p{{"mode", mode_name(mode)},
           {"answer", std::string(to_string(search.answer))},
           {"sequence", search.sequence},
           {"states", search.stats.states},
           {"depth", search.stats.depth}};
    if (search.verdict && search.verdict->permutation)
        p["permutation"] = *search.verdict->permutation;
    if (search.answer == Answer::no)
        p["closure"] = search.closure;
    if (!search.stats.exhausted.empty())
        p["exhausted"] = search.stats.exhausted;
    return p;
}

json certificate_to_json(const BanffCertificate& c)
{
    json j{{"type", kind_name(c.kind)}, {"sequence", c.sequence}};
    if (c.kind == BanffCertificate::Kind::covering_split) {
        j["pair"] = {c.pair.i, c.pair.j};
        j["without_i"] = certificate_to_json(*c.without_i);
        j["without_j"] = certificate_to_json(*c.without_j);
    }
    return j;
}

BanffCertificate certificate_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("type"))
        throw DocumentError("certificate node: expected an object with a type");
    const auto type = get_string(j, "type");
    BanffCertificate c;
    c.sequence = {};
    if (type == "acyclic_leaf" || type == "mutation_acyclic_leaf") {
        expect_object(j, "certificate leaf", {"type", "sequence"});
        c.kind = type == "acyclic_leaf" ? BanffCertificate::Kind::acyclic_leaf
                                        : BanffCertificate::Kind::mutation_acyclic_leaf;
    } else if (type == "covering_split") {
        expect_object(j, "covering split", {"type", "sequence", "pair", "without_i", "without_j"});
        c.kind = BanffCertificate::Kind::covering_split;
        const auto pair = get_ints(j, "pair");
        if (pair.size() != 2)
            throw DocumentError("pair must have two entries");
        c.pair = {pair[0], pair[1]};
        c.without_i = std::make_shared<const BanffCertificate>(certificate_from_json(j.at("without_i")));
        c.without_j = std::make_shared<const BanffCertificate>(certificate_from_json(j.at("without_j")));
    } else {
        throw DocumentError("unknown certificate node type \"" + type + "\"");
    }
    c.sequence = get_ints(j, "sequence");
    return c;
}

json refutation_to_json(const BanffRefutation& r)
{
    json reps = json::array();
    for (const auto& rep : r.representatives)
        reps.push_back(rep.path);
    json pairs = json::array();
    for (const auto& p : r.pairs)
        pairs.push_back({{"representative", p.representative},
                         {"pair", {p.pair.i, p.pair.j}},
                         {"deleted", p.deleted},
                         {"child", refutation_to_json(*p.child)}});
    return {{"representatives", reps}, {"pairs", pairs}};
}

BanffRefutation refutation_from_json(const json& j, const Quiver& q)
{
    expect_object(j, "refutation", {"representatives", "pairs"});
    BanffRefutation r;
    if (!j.at("representatives").is_array() || !j.at("pairs").is_array())
        throw DocumentError("refutation: representatives and pairs must be arrays");
    for (const auto& path_json : j.at("representatives")) {
        auto path = int_list(path_json, "representative path");
        for (int v : path)
            if (!q.is_mutable(v))
                throw DocumentError("representative path names vertex " + std::to_string(v));
        r.representatives.push_back({apply_sequence(q, path), path});
    }
    for (const auto& pj : j.at("pairs")) {
        expect_object(pj, "pair refutation", {"representative", "pair", "deleted", "child"});
        BanffRefutation::PairRefutation p;
        const auto t = get_int(pj, "representative");
        if (t < 0 || t >= static_cast<long long>(r.representatives.size()))
            throw DocumentError("pair refutation names an unknown representative");
        p.representative = static_cast<std::size_t>(t);
        const auto pair = get_ints(pj, "pair");
        if (pair.size() != 2)
            throw DocumentError("pair must have two entries");
        p.pair = {pair[0], pair[1]};
        p.deleted = static_cast<int>(get_int(pj, "deleted"));
        const auto& rep = r.representatives[p.representative].quiver;
        if (!rep.is_mutable(p.deleted))
            throw DocumentError("pair refutation deletes an unknown vertex");
        p.child = std::make_shared<const BanffRefutation>(
            refutation_from_json(pj.at("child"), delete_vertices(rep, std::vector{p.deleted}).quiver));
        r.pairs.push_back(std::move(p));
    }
    return r;
}

json banff_payload(const BanffResult& result)
{
    json p{{"answer", std::string(to_string(result.answer))}};
    if (result.certificate)
        p["certificate"] = certificate_to_json(*result.certificate);
    if (result.refutation)
        p["refutation"] = refutation_to_json(*result.refutation);
    if (!result.exhausted.empty())
        p["exhausted"] = result.exhausted;
    return p;
}

json exploration_payload(const ClassExploration& exploration)
{
    json reps = json::array();
    for (const auto& r : exploration.representatives)
        reps.push_back(r.path);
    json p{{"closed", exploration.closed}, {"representatives", reps}, {"states", exploration.stats.states}};
    if (!exploration.stats.exhausted.empty())
        p["exhausted"] = exploration.stats.exhausted;
    return p;
}

json tree_to_json(const ClassPTree& tree)
{
    switch (tree.kind) {
    case ClassPTree::Kind::one_vertex:
        return {{"type", "one_vertex"}};
    case ClassPTree::Kind::mutate:
        return {{"type", "mutate"}, {"sequence", tree.sequence}, {"child", tree_to_json(tree.children.at(0))}};
    case ClassPTree::Kind::extension: {
        json arrows = json::array();
        for (const auto& a : tree.cross_arrows)
            arrows.push_back(json::array({a.from, a.to, a.multiplicity.convert_to<long long>()}));
        return {{"type", "extension"},
                {"direction", tree.direction == ClassPTree::Direction::left_to_right ? "left_to_right" : "right_to_left"},
                {"cross_arrows", arrows},
                {"left", tree_to_json(tree.children.at(0))},
                {"right", tree_to_json(tree.children.at(1))}};
    }
    }
    throw DocumentError("unknown tree node");
}

ClassPTree tree_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("type"))
        throw DocumentError("tree node: expected an object with a type");
    const auto type = get_string(j, "type");
    if (type == "one_vertex") {
        expect_object(j, "one_vertex node", {"type"});
        return ClassPTree::one_vertex();
    }
    if (type == "mutate") {
        expect_object(j, "mutate node", {"type", "sequence", "child"});
        return ClassPTree::mutated(tree_from_json(j.at("child")), get_ints(j, "sequence"));
    }
    if (type == "extension") {
        expect_object(j, "extension node", {"type", "direction", "cross_arrows", "left", "right"});
        const auto dir = get_string(j, "direction");
        if (dir != "left_to_right" && dir != "right_to_left")
            throw DocumentError("direction must be left_to_right or right_to_left");
        std::vector<Arrow> arrows;
        if (!j.at("cross_arrows").is_array())
            throw DocumentError("cross_arrows must be an array");
        for (const auto& a : j.at("cross_arrows")) {
            const auto v = int_list(a, "cross arrow");
            if (v.size() != 2 && v.size() != 3)
                throw DocumentError("cross arrow must be [from, to] or [from, to, multiplicity]");
            const int mult = v.size() == 3 ? v[2] : 1;
            if (mult <= 0)
                throw DocumentError("cross arrow multiplicity must be positive");
            arrows.push_back({v[0], v[1], mult});
        }
        return ClassPTree::extension(tree_from_json(j.at("left")), tree_from_json(j.at("right")), std::move(arrows),
                                     dir == "left_to_right" ? ClassPTree::Direction::left_to_right
                                                            : ClassPTree::Direction::right_to_left);
    }
    throw DocumentError("unknown tree node type \"" + type + "\"");
}

json class_p_payload(const ClassPTree& tree, const ClassPMembership& membership)
{
    return {{"tree", tree_to_json(tree)},
            {"in_p", membership.in_p},
            {"in_p_prime", membership.in_p_prime},
            {"min_m", membership.min_m ? json(*membership.min_m) : json(nullptr)}};
}

json synthesis_payload(const std::string& source, const SynthesisResult& result)
{
    json steps = json::array();
    for (const auto& s : result.derivation)
        steps.push_back({{"rule", s.rule}, {"detail", s.detail}, {"vertices", s.vertices}, {"sequence", s.sequence}});
    json p{{"source", source}, {"sequence", result.sequence}, {"derivation", steps}};
    if (result.verdict.permutation)
        p["permutation"] = *result.verdict.permutation;
    return p;
}

json seed_to_json(const Seed& s)
{
    json cluster = json::array();
    for (const auto& x : s.cluster) {
        json terms = json::array();
        for (const auto& [e, c] : x.terms())
            terms.push_back({std::vector<int>(e.begin(), e.end()), c.str()});
        cluster.push_back(terms);
    }
    json coeffs = json::array();
    for (const auto& y : s.coeffs) {
        json e = json::array();
        for (const auto& v : y.exponents)
            e.push_back(v.str());
        coeffs.push_back(e);
    }
    json cv = json::array();
    for (const auto& row : c_vectors(s)) {
        json r = json::array();
        for (const auto& v : row)
            r.push_back(v.str());
        cv.push_back(r);
    }
    return {{"rank", s.rank()},
            {"quiver", serialize(s.quiver)},
            {"variables", seed_variable_names(s.rank())},
            {"cluster", cluster},
            {"coefficients", coeffs},
            {"c_vectors", cv}};
}

CheckResult check_document(const CertificateDocument& doc)
{
    try {
        if (doc.kind == "verdict")
            return check_verdict(doc.quiver, doc.payload);
        if (doc.kind == "banff")
            return check_banff(doc.quiver, doc.payload);
        if (doc.kind == "exploration")
            return check_exploration(doc.quiver, doc.payload);
        if (doc.kind == "class_p_tree")
            return check_class_p(doc.quiver, doc.payload);
        if (doc.kind == "synthesis")
            return check_synthesis(doc.quiver, doc.payload);
    } catch (const QuiverError& e) {
        return bad(e.what());
    }
    throw DocumentError("unknown kind \"" + doc.kind + "\"");
}

}  // namespace quiverkit
