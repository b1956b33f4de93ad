#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fracparts/bounds.hpp"
#include "fracparts/lattice.hpp"
#include "fracparts/phi.hpp"
#include "fracparts/sums.hpp"

namespace fracparts {

using ojson = nlohmann::ordered_json;

// 15 significant digits, '.' decimal separator, locale-independent.
std::string format_double(double x);
// Directed double endpoints of an exact rational, for reporting enclosures.
double to_double_down(const mpq_class& q);
double to_double_up(const mpq_class& q);

ojson count_json(const CountRecord& rec);
ojson count_json(const std::vector<CountRecord>& recs);
ojson phi_json(const PhiTable& table);
ojson sum_json(const SumResult& sum);
ojson profile_json(const DyadicProfile& profile);
ojson sandwich_json(const DyadicProfile& profile, const SumResult& sum,
                    const SandwichResult& sw);
ojson gap_json(const GapReport& rep);
ojson bounds_json(const std::vector<BoundCatalogEntry>& entries);
ojson sharpness_json(const std::vector<SharpnessEntry>& entries);
ojson fit_json(const FitReport& rep);
ojson shells_json(const ShellDiffReport& rep);
ojson prop_json(const PropBoundReport& rep);
ojson widmer_json(const WidmerReport& rep);
ojson admissibility_json(const AdmissibilityReport& rep);
ojson pairs_json(const std::vector<PQPair>& pairs);

std::string count_csv(const std::vector<CountRecord>& recs);
std::string phi_csv(const PhiTable& table);
std::string sum_csv(const SumResult& sum);
std::string profile_csv(const DyadicProfile& profile);
std::string bounds_csv(const std::vector<BoundCatalogEntry>& entries);
std::string sharpness_csv(const std::vector<SharpnessEntry>& entries);
std::string fit_csv(const FitReport& rep);
std::string shells_csv(const ShellDiffReport& rep);
std::string prop_csv(const PropBoundReport& rep);
std::string widmer_csv(const WidmerReport& rep);
std::string gap_csv(const GapReport& rep);
std::string pairs_csv(const std::vector<PQPair>& pairs);

}  // namespace fracparts
