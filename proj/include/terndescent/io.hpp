#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "terndescent/algebra.hpp"
#include "terndescent/amalgam.hpp"
#include "terndescent/ideal.hpp"
#include "terndescent/rewrite.hpp"
#include "terndescent/ring_bridge.hpp"

namespace terndescent::io {

using json = nlohmann::json;

// References to algebras are either "builtin:<name>" (see
// bridge::builtin_ring), a path to a JSON file (relative paths resolve
// against `base`), or an inline JSON object.

/// Raw tables as read from disk, before any axiom check. Exactly one of
/// the two is set.
struct AlgebraSource {
  std::optional<algebra::TernaryTables> ternary;
  std::optional<algebra::RingTables> ring;
  std::string label;
};

/// Throws parse_error, malformed_table or foreign_element.
AlgebraSource read_algebra(const json& ref, const std::filesystem::path& base = {});
AlgebraSource read_algebra(const std::string& ref, const std::filesystem::path& base = {});

/// Ring sources go through from_unital_ring. Throws invalid_algebra or
/// not_a_ring on top of read_algebra's errors.
algebra::RingPtr load_algebra(const json& ref, const std::filesystem::path& base = {});
algebra::RingPtr load_algebra(const std::string& ref, const std::filesystem::path& base = {});

/// Commutative ring from a builtin name or add/mul JSON. Throws not_a_ring.
bridge::CommRingPtr load_comm_ring(const std::string& ref, const std::filesystem::path& base = {});

/// {"source": ref, "target": ref, "map": {"a": "b", ...}} or "map" as an
/// array of target names in source carrier order.
algebra::Homomorphism load_homomorphism(const std::filesystem::path& file);
algebra::Homomorphism homomorphism_from_json(const json& j, const std::filesystem::path& base = {});

/// {"algebras": [ref, ...], "shared": {"elements": [...], "maps": [{...}, ...]}}.
amalgam::Amalgam load_amalgam(const std::filesystem::path& file);
amalgam::Amalgam amalgam_from_json(const json& j, const std::filesystem::path& base = {});

/// "sigma", "sigma-prime", or a JSON rule file [{"label", "lhs", "rhs"}, ...].
trs::RewriteSystem load_system(const std::string& ref);
trs::RewriteSystem system_from_json(const json& j);

/// Comma-separated element names; an empty string gives the empty set.
algebra::ElementSet parse_element_set(const algebra::FiniteTernaryRing& a, const std::string& text);

json read_json_file(const std::filesystem::path& file);

// Report fragments.
json to_json(const trs::Position& p);
json to_json(const trs::Redex& r);
json to_json(const trs::Normalization& n);
json to_json(const trs::CriticalPair& cp);
json to_json(const trs::CriticalPairClass& c);
json to_json(const trs::ConditionReport& r);
json to_json(const trs::ConfluenceVerdict& v);
json to_json(const algebra::AxiomViolation& v);
json to_json(const algebra::FiniteTernaryRing& a, algebra::ElementSet s);
json to_json(const algebra::FiniteTernaryRing& a, const ideal::ClosureTrace& trace);
json to_json(const algebra::Homomorphism& h);
json to_json(const ideal::MorphismVerdict& v, const algebra::Homomorphism& h);
json to_json(const amalgam::UniqueNfReport& r);
json to_json(const amalgam::StrongAmalgamationReport& r);
json to_json(const bridge::RingMorphism& m);
json to_json(const bridge::ClassComparisonReport& r);

}  // namespace terndescent::io
