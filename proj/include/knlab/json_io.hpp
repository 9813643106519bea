#pragma once

// JSON encodings. Key names here are the stable interface for scripts; text
// output is for humans and may change.

#include "json.hpp"

#include "knlab/flow.hpp"
#include "knlab/incidence.hpp"
#include "knlab/kncore.hpp"
#include "knlab/orientlab.hpp"
#include "knlab/search.hpp"
#include "knlab/sharpness.hpp"

namespace knlab {

using Json = nlohmann::ordered_json;

Json to_json(const IncidenceSums& s);
Json to_json(const LemmaDiagnostics& d);
Json to_json(const IncidenceReport& r);
Json to_json(const StructuralReport& r);
Json to_json(const SharpnessReport& r);

Json to_json(const DegreeProfile& p);
DegreeProfile profile_from_json(const Json& j);

Json to_json(const SearchConfig& c);  // effective config, without workers
Json to_json(const SearchCounters& c);
SearchCounters counters_from_json(const Json& j);
// Report body: counters, witnesses, progress. No config, no timings.
Json to_json(const SearchReport& r);

Json to_json(const ConnectivityCertificate& c);
Json to_json(const ExpansionReport& r);
Json to_json(const BridgeReport& r);

}  // namespace knlab
