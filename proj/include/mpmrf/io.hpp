#pragma once

#include <string>

#include <json.hpp>

#include "mpmrf/distribution.hpp"
#include "mpmrf/model.hpp"
#include "mpmrf/orders.hpp"
#include "mpmrf/poset.hpp"
#include "mpmrf/spectral.hpp"
#include "mpmrf/tree.hpp"

namespace mpmrf {

/// {"d": 3, "edges": [[1, 2], [2, 3]]}. InputError on malformed input.
Tree tree_from_json(const nlohmann::json& j);
nlohmann::json tree_to_json(const Tree& tree);

/// Tree fields plus "lambda" and "alpha", where alpha is a number or an
/// object keyed "u-v" (either orientation) covering every edge.
MpmrfModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const MpmrfModel& model);

/// Parses a whole file; InputError if unreadable or not JSON.
nlohmann::json read_json_file(const std::string& path);

nlohmann::json verdict_to_json(const OrderVerdict& verdict);
nlohmann::json spectrum_to_json(const SpectrumReport& report);
nlohmann::json poset_to_json(const ShapePoset& poset);

/// Shortest round-trip decimal form, locale independent.
std::string format_double(double x);

/// "k,p" rows followed by "# tail_mass,<value>".
std::string pmf_csv(const DiscreteDist& dist);

}  // namespace mpmrf
