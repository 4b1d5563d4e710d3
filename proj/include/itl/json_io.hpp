#pragma once

#include <json.hpp>

#include "itl/measurable.hpp"
#include "itl/omega_set.hpp"
#include "itl/partition.hpp"
#include "itl/profile.hpp"
#include "itl/relations.hpp"
#include "itl/stream.hpp"
#include "itl/verdict.hpp"

namespace itl {

using Json = nlohmann::ordered_json;

Json to_json(const UpStream& f);
Json to_json(const OmegaSet& x);
Json to_json(const Partition& p);
Json to_json(const MeasurableSet& y);
Json to_json(const Verdict& v);
Json to_json(const CountProfile& p);
Json to_json(const MeasureProfile& p);
Json to_json(const EpsSequence& e);

// Decoders throw MalformedSpec on anything that does not match the canonical encodings.
UpStream stream_from_json(const Json& j);
OmegaSet set_from_json(const Json& j);
Partition partition_from_json(const Json& j);
MeasurableSet measurable_from_json(const Json& j);
EpsSequence eps_from_json(const Json& j);

/// Canonical text of a program descriptor.
std::string canonical(const Json& j);

}  // namespace itl
