#pragma once

#include <json.hpp>

#include "overt/adversaries.hpp"
#include "overt/choquet.hpp"
#include "overt/quasipolish.hpp"
#include "overt/reductions.hpp"

// JSON codecs for the file formats the CLI speaks: names with tail
// descriptors, exact intervals, problem instances with ground truth,
// answers, certificates and game transcripts.

namespace overt {

nlohmann::json name_to_json(const Name& name, std::uint64_t prefix_len = 16);
Name name_from_json(const nlohmann::json& j);

nlohmann::json rat_to_json(const Rat& r);
Rat rat_from_json(const nlohmann::json& j);
nlohmann::json interval_to_json(const QInterval& interval);

nlohmann::json point_to_json(const Point& pt);
Point point_from_json(const nlohmann::json& j);

std::string space_name(SpaceId id);
SpaceId space_from_name(const std::string& name);

nlohmann::json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& j);

nlohmann::json answer_to_json(const Answer& answer, std::uint64_t prefix_len = 32);
Answer answer_from_json(const nlohmann::json& j);

nlohmann::json certificate_to_json(const FailureCertificate& cert);

CeRelation relation_from_json(const nlohmann::json& j);

nlohmann::json baire_set_to_json(const BaireCapSet& set);
BaireCapSet baire_set_from_json(const nlohmann::json& j);

nlohmann::json open_set_to_json(const OpenSet& o);

}  // namespace overt
