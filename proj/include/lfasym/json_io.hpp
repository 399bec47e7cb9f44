#pragma once

#include <json.hpp>

#include "lfasym/multidim.hpp"
#include "lfasym/series1d.hpp"

namespace lfasym::series1d {

// {"alpha":..., "beta":..., "a":[...], "f_crit":..., "domain":{"kind":...}}
// domain carries "b" for one_sided and "b1"/"b2" for two_sided.
void to_json(nlohmann::json& j, const ExpansionSpec1D& spec);
void from_json(const nlohmann::json& j, ExpansionSpec1D& spec);

}  // namespace lfasym::series1d

namespace lfasym::multidim {

// {"d":..., "f0":..., "A":[row-major]}; symmetry validated on load.
void to_json(nlohmann::json& j, const HessianModel& model);
void from_json(const nlohmann::json& j, HessianModel& model);

}  // namespace lfasym::multidim
