#pragma once

#include <string>

#include "json.hpp"
#include "polyvert/modules.hpp"
#include "polyvert/verify.hpp"

namespace polyvert {

using OrderedJson = nlohmann::ordered_json;

// Stable encodings used by the CLI and on-disk artifacts.  Field order is
// part of the format: series {"ram","lo","hi","coeffs"}, matrix series
// {"n","ram","lo","hi","coeffs"}, modules {"spec","gamma","T"}.

OrderedJson coeff_to_json(const Coeff& v);
Coeff coeff_from_json(const nlohmann::json& j);

OrderedJson series_to_json(const PuiseuxSeries& s);
PuiseuxSeries series_from_json(const nlohmann::json& j);

OrderedJson matseries_to_json(const MatSeries& s);
MatSeries matseries_from_json(const nlohmann::json& j);

OrderedJson poly_to_json(const Poly& p);
Poly poly_from_json(const nlohmann::json& j);

OrderedJson module_to_json(const TwistedModule& m);
TwistedModule module_from_json(const nlohmann::json& j);

OrderedJson report_to_json(const VerificationReport& r);
OrderedJson classification_to_json(const ClassificationResult& r);

}  // namespace polyvert
