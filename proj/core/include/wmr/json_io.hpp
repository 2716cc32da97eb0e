#pragma once

// Canonical JSON renderings. Keys are sorted (nlohmann::json objects are
// ordered maps) and rationals are "p/q" strings.

#include <nlohmann/json.hpp>

#include "wmr/bounds.hpp"
#include "wmr/converse.hpp"
#include "wmr/core_model.hpp"
#include "wmr/ia_engine.hpp"
#include "wmr/scheme.hpp"

namespace wmr {

using Json = nlohmann::json;

Json to_json(const Rational& value);
Json to_json(const NodeSet& set);
Json to_json(const MessageId& message);
Json to_json(const DimensionAudit& audit);
Json to_json(const RankCertificate& cert);
Json to_json(const ContainmentReport& report);
Json to_json(const RoundTripReport& report);
Json to_json(const BoundCheck& check);
Json to_json(const CorollaryReport& report);
Json to_json(const PlateauDiagnostic& diag);
Json to_json(const CutBound& cut);
Json to_json(const MassSolution& solution);
Json to_json(const ConvexityReport& report);

/// Full symbolic description of the scheme for (K, r): codewords by
/// destination, precoder lists with their H_R sets, and the dimension audit
/// at `eta` together with the closed-form Sum-DoF.
Json scheme_json(const SystemParams& params, int eta = 1);

}  // namespace wmr
