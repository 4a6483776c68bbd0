#pragma once

// JSON front end shared by the command line tool and the Python module.

#include <string>

#include <json.hpp>

#include "twistlab/curve.hpp"
#include "twistlab/descent.hpp"
#include "twistlab/localdata.hpp"

namespace twistlab {

using Json = nlohmann::json;

inline constexpr const char* kEngineVersion = "0.1.0";

struct CommandResult {
    Json output;
    bool unsupported = false;  // some value was Unsupported or OutOfDomain
};

/// analyze | twist | envelope | descend | search | density | classify | gmodule
CommandResult run_command(const std::string& command, const Json& inputs);

/// Integers up to 2^53 in magnitude as numbers, larger ones as decimal strings.
Json integer_json(const Integer& n);
Integer integer_from_json(const Json& j);

/// {"a":[...]} or {"e":[...]}
Curve curve_from_json(const Json& j);
Json curve_to_json(const Curve& E);
FullTorsionCurve full_torsion_from_json(const Json& j);

Json place_json(const Place& v);
Place place_from_json(const Json& j);

PlaceDescriptor descriptor_from_json(const Json& j);

}  // namespace twistlab
