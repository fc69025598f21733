#pragma once

#include <json.hpp>

#include "twistkit/poly.hpp"

namespace twistkit {

using Json = nlohmann::ordered_json;

Json mpoly_to_json(const MPoly& p);
MPoly mpoly_from_json(const Json& j);

}  // namespace twistkit
