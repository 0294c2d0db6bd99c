#pragma once

#include <string>

#include <json.hpp>

#include "hmlab/contfrac.hpp"
#include "hmlab/floorseq.hpp"
#include "hmlab/relation.hpp"
#include "hmlab/series.hpp"
#include "hmlab/witness.hpp"

namespace hmlab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaTag = "hm-lab/1";

// Scalar formatting shared by every emitter.
std::string str_of(const mpz_class& z);
std::string str_of(const mpq_class& q);
std::string str_of(const Quadratic& x);
Json json_of(const Enclosure& e);

Json json_of(const ContinuedFraction& cf);
Json json_of(const ConvergentTable& table);
Json json_of(const ApproxBoundsReport& r);
Json json_of(const BestApproxReport& r);
Json json_of(const IndexSelection& sel);
Json json_of(const SparsitySlice& slice);
Json json_of(const GapReport& r);
Json json_of(const VariationReport& r);
Json json_of(const ConsistencyReport& r);
Json json_of(const BoundaryFitReport& r);
Json json_of(const DioReport& r);
Json json_of(const PlaceSet& S);
Json json_of(const RhoValue& rho);
Json json_of(const WitnessParams& params);
Json json_of(const WitnessVector& v);
Json json_of(const LinFormReport& r);
Json json_of(const SubspaceReport& r);
Json json_of(const RatioDecayReport& r);
Json json_of(const GapSplitReport& r);
Json json_of(const SeriesValue& v);
Json json_of(const RelationReport& r);

// Wraps a command result with the schema tag and echoed parameters.
Json envelope(const std::string& command, Json params, Json result);

std::string table_csv(const ConvergentTable& table);
std::string slice_csv(const SparsitySlice& slice);
std::string useq_csv(const std::vector<std::pair<long, mpz_class>>& values);
std::string subspace_csv(const SubspaceReport& r);

}  // namespace hmlab
