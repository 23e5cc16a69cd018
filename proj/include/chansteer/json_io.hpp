#pragma once

#include "chansteer/steering.hpp"
#include "chansteer/tomography.hpp"

#include "json.hpp"

#include <string>

namespace chansteer {

inline constexpr const char* kToolVersion = "1.0.0";

using json = nlohmann::ordered_json;

// {"rows": r, "cols": c, "data": [[re, im], ...]} row-major
json operator_to_json(const Operator& m);
Operator operator_from_json(const json& j);

json channel_to_json(const Channel& c);
Channel channel_from_json(const json& j);

json kraus_to_json(const KrausSet& k);
KrausSet kraus_from_json(const json& j);

json stinespring_to_json(const StinespringIsometry& v);
StinespringIsometry stinespring_from_json(const json& j);

json subchannel_to_json(const Subchannel& s);
Subchannel subchannel_from_json(const json& j);

json instrument_to_json(const Instrument& inst);
Instrument instrument_from_json(const json& j);

json extension_to_json(const ChannelExtension& e);
ChannelExtension extension_from_json(const json& j);

json measurement_assemblage_to_json(const MeasurementAssemblage& ma);
MeasurementAssemblage measurement_assemblage_from_json(const json& j);

json state_assemblage_to_json(const StateAssemblage& sa);
StateAssemblage state_assemblage_from_json(const json& j);

json channel_assemblage_to_json(const ChannelAssemblage& ca);
ChannelAssemblage channel_assemblage_from_json(const json& j);

json verdict_to_json(const SteeringVerdict& v);

json load_json(const std::string& path);
void save_json(const std::string& path, const json& j);

} // namespace chansteer
