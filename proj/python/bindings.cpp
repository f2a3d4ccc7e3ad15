#include "cli.hpp"
#include "quiverkit/canonical.hpp"
#include "quiverkit/certificate.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace quiverkit;

namespace {

py::object to_python(const nlohmann::json& j)
{
    return py::module_::import("json").attr("loads")(j.dump());
}

py::int_ to_int(const Integer& v)
{
    return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(v.str().c_str(), nullptr, 10)));
}

SearchLimits make_limits(std::size_t max_depth, std::size_t max_states, long long max_millis)
{
    SearchLimits l;
    l.max_depth = max_depth;
    l.max_states = max_states;
    l.max_millis = std::chrono::milliseconds(max_millis);
    l.validate();
    return l;
}

py::object document(const std::string& kind, const Quiver& q, nlohmann::json payload, const SearchLimits& l)
{
    CertificateDocument doc;
    doc.kind = kind;
    doc.quiver = q;
    doc.payload = std::move(payload);
    doc.limits = l;
    return to_python(to_json(doc));
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Quiver mutation, green sequences, Banff certificates and principal-coefficient seeds";
    m.attr("__version__") = tool_version;

    py::register_exception<QuiverError>(m, "QuiverError", PyExc_ValueError);
    py::register_exception<DocumentError>(m, "DocumentError", PyExc_ValueError);
    py::register_exception<LaurentError>(m, "LaurentError", PyExc_ArithmeticError);

    py::class_<Quiver>(m, "Quiver")
        .def(py::init([](const std::string& text) { return parse_quiver(text); }), py::arg("text"))
        .def_static(
            "from_arrows",
            [](int n_mutable, int n_frozen, const std::vector<std::tuple<int, int, py::int_>>& arrows) {
                std::vector<Arrow> a;
                for (const auto& [from, to, mult] : arrows)
                    a.push_back({from, to, Integer(py::str(mult).cast<std::string>())});
                return Quiver::from_arrows(n_mutable, n_frozen, a);
            },
            py::arg("n_mutable"), py::arg("n_frozen"), py::arg("arrows"))
        .def_property_readonly("n_mutable", &Quiver::n_mutable)
        .def_property_readonly("n_frozen", &Quiver::n_frozen)
        .def("b", [](const Quiver& q, int i, int j) { return to_int(q.b(i, j)); })
        .def("arrows",
             [](const Quiver& q) {
                 py::list out;
                 for (const auto& a : q.arrows())
                     out.append(py::make_tuple(a.from, a.to, to_int(a.multiplicity)));
                 return out;
             })
        .def("mutate", [](const Quiver& q, int k) { return mutate(q, k); }, py::arg("k"))
        .def("apply", [](const Quiver& q, const MutationSequence& s) { return apply_sequence(q, s); },
             py::arg("sequence"))
        .def("frame", [](const Quiver& q) { return frame(q); })
        .def("is_acyclic", [](const Quiver& q) { return acyclicity(q).acyclic; })
        .def("is_isomorphic", [](const Quiver& a, const Quiver& b) { return isomorphic(a, b); })
        .def("covering_pairs",
             [](const Quiver& q) {
                 std::vector<std::pair<int, int>> out;
                 for (const auto& p : covering_pairs(q))
                     out.emplace_back(p.i, p.j);
                 return out;
             })
        .def("__eq__", [](const Quiver& a, const Quiver& b) { return a == b; })
        .def("__str__", [](const Quiver& q) { return serialize(q); })
        .def("__repr__", [](const Quiver& q) {
            return "<Quiver " + std::to_string(q.n_mutable()) + "+" + std::to_string(q.n_frozen()) + " vertices>";
        });

    const auto depth = py::arg("max_depth") = 12;
    const auto states = py::arg("max_states") = 1'000'000;
    const auto millis = py::arg("max_millis") = 60'000;

    m.def(
        "verify_maximal_green",
        [](const Quiver& q, const MutationSequence& s) {
            return document("verdict", q, verdict_payload(SequenceMode::maximal_green, s, verify_maximal_green(q, s)),
                            {});
        },
        py::arg("quiver"), py::arg("sequence"));
    m.def(
        "verify_reddening",
        [](const Quiver& q, const MutationSequence& s) {
            return document("verdict", q, verdict_payload(SequenceMode::reddening, s, verify_reddening(q, s)), {});
        },
        py::arg("quiver"), py::arg("sequence"));
    m.def(
        "search_maximal_green",
        [](const Quiver& q, std::size_t d, std::size_t s, long long ms) {
            const auto l = make_limits(d, s, ms);
            return document("verdict", q, search_payload(SequenceMode::maximal_green, search_maximal_green(q, l)), l);
        },
        py::arg("quiver"), depth, states, millis);
    m.def(
        "search_reddening",
        [](const Quiver& q, std::size_t d, std::size_t s, long long ms) {
            const auto l = make_limits(d, s, ms);
            return document("verdict", q, search_payload(SequenceMode::reddening, search_reddening(q, l)), l);
        },
        py::arg("quiver"), depth, states, millis);
    m.def(
        "explore_mutation_class",
        [](const Quiver& q, std::size_t d, std::size_t s, long long ms) {
            const auto l = make_limits(d, s, ms);
            return document("exploration", q, exploration_payload(explore_mutation_class(q, l)), l);
        },
        py::arg("quiver"), depth, states, millis);
    m.def(
        "certify_banff",
        [](const Quiver& q, std::size_t d, std::size_t s, long long ms) {
            const auto l = make_limits(d, s, ms);
            return document("banff", q, banff_payload(certify_banff(q, l)), l);
        },
        py::arg("quiver"), depth, states, millis);
    m.def(
        "synthesize_from_banff",
        [](const Quiver& q, std::size_t d, std::size_t s, long long ms) -> py::object {
            const auto l = make_limits(d, s, ms);
            const auto banff = certify_banff(q, l);
            if (banff.answer != Answer::yes)
                return py::none();
            auto payload = synthesis_payload("banff", synthesize_from_banff(q, *banff.certificate, l));
            payload["certificate"] = certificate_to_json(*banff.certificate);
            return document("synthesis", q, payload, l);
        },
        py::arg("quiver"), depth, states, millis);
    m.def(
        "synthesize_from_tree",
        [](const std::string& tree_json) {
            const auto tree = tree_from_json(nlohmann::json::parse(tree_json));
            const auto q = verify_class_p_tree(tree).quiver;
            auto payload = synthesis_payload("tree", synthesize_from_tree(tree));
            payload["tree"] = tree_to_json(tree);
            return document("synthesis", q, payload, {});
        },
        py::arg("tree_json"));
    m.def(
        "verify_class_p_tree",
        [](const std::string& tree_json) {
            const auto tree = tree_from_json(nlohmann::json::parse(tree_json));
            const auto membership = verify_class_p_tree(tree);
            return document("class_p_tree", membership.quiver, class_p_payload(tree, membership), {});
        },
        py::arg("tree_json"));
    m.def(
        "seed_mutate",
        [](const Quiver& q, const MutationSequence& s, bool with_cluster) {
            return to_python(seed_to_json(seed_apply(seed_initial(q, with_cluster), s)));
        },
        py::arg("quiver"), py::arg("sequence"), py::arg("with_cluster") = true);
    m.def(
        "check_document",
        [](const std::string& text) {
            const auto r = check_document(parse_document(nlohmann::json::parse(text)));
            return py::make_tuple(r.valid, r.message);
        },
        py::arg("document_json"));
    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out;
            std::ostringstream err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
