#pragma once

#include "quiverkit/seed.hpp"
#include "quiverkit/sequence.hpp"
#include "quiverkit/structure.hpp"
#include "quiverkit/synthesis.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace quiverkit {

inline constexpr const char* tool_version = "0.1.0";
inline constexpr const char* schema_version = "1";

/// Malformed JSON document: wrong shape, unknown field, bad value.
class DocumentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SequenceMode { maximal_green, reddening };

/// Self-contained, re-checkable record of a result.
///
/// kind is one of "verdict", "banff", "class_p_tree", "synthesis",
/// "exploration"; the payload layout depends on the kind.
struct CertificateDocument {
    std::string kind;
    Quiver quiver;
    nlohmann::json payload;
    SearchLimits limits;
    std::string version = tool_version;
};

nlohmann::json to_json(const CertificateDocument& doc);
/// Strict: unknown fields anywhere in the document are rejected.
CertificateDocument parse_document(const nlohmann::json& j);

nlohmann::json limits_to_json(const SearchLimits& limits);
SearchLimits limits_from_json(const nlohmann::json& j);

nlohmann::json verdict_payload(SequenceMode mode, const MutationSequence& sequence, const Verdict& verdict);
nlohmann::json search_payload(SequenceMode mode, const SequenceSearch& search);
nlohmann::json banff_payload(const BanffResult& result);
nlohmann::json exploration_payload(const ClassExploration& exploration);
nlohmann::json class_p_payload(const ClassPTree& tree, const ClassPMembership& membership);
nlohmann::json synthesis_payload(const std::string& source, const SynthesisResult& result);

nlohmann::json certificate_to_json(const BanffCertificate& c);
BanffCertificate certificate_from_json(const nlohmann::json& j);
nlohmann::json refutation_to_json(const BanffRefutation& r);
/// Representatives are rebuilt by replaying their paths from `q`.
BanffRefutation refutation_from_json(const nlohmann::json& j, const Quiver& q);

nlohmann::json tree_to_json(const ClassPTree& tree);
ClassPTree tree_from_json(const nlohmann::json& j);

/// Terms as [exponent vector, coefficient string] pairs.
nlohmann::json seed_to_json(const Seed& s);

struct CheckResult {
    bool valid = false;
    std::string message;
};

/// Revalidates a document by replay only; never searches.
CheckResult check_document(const CertificateDocument& doc);

}  // namespace quiverkit
