#ifndef NUBS_REPORT_HPP
#define NUBS_REPORT_HPP

#include <string>

#include <json.hpp>

#include "nubs/estimation.hpp"
#include "nubs/gof.hpp"

// Machine-readable run reports. Field order is fixed (insertion order of an
// ordered JSON document), so reports serialize byte-identically for a given
// content and round-trip parse -> dump without change.

namespace nubs::report {

using Json = nlohmann::ordered_json;

Json params_json(const NuBsParams& p);
Json params_json(const BivNuBsParams& p);
Json fit_json(const FitResult& fit);
Json gof_json(const GofReport& rep);
Json comparison_json(const ModelComparison& cmp);

/// Canonical serialization: 2-space indent plus trailing newline.
std::string dump(const Json& j);

/// Decimal form with 17 significant digits; parses back to the same double.
std::string format_value(double v);

}  // namespace nubs::report

#endif
