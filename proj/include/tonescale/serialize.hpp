#ifndef TONESCALE_SERIALIZE_HPP
#define TONESCALE_SERIALIZE_HPP

#include "tonescale/tone.hpp"

#include "json.hpp"

namespace tonescale {

void to_json(nlohmann::json& j, const ToneSpec& spec);
void from_json(const nlohmann::json& j, ToneSpec& spec);

nlohmann::json assignment_to_json(const ToneAssignment& assignment);
ToneAssignment assignment_from_json(const nlohmann::json& j);

}  // namespace tonescale

#endif  // TONESCALE_SERIALIZE_HPP
