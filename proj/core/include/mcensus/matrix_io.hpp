#pragma once

#include <nlohmann/json.hpp>

#include "mcensus/census.hpp"
#include "mcensus/field_mat.hpp"
#include "mcensus/mat.hpp"

namespace mcensus {

using json = nlohmann::ordered_json;

// Matrix wire format: [[int,...],...] row-major; rationals as "a/b" strings.
// Integer entries may also arrive as decimal strings (for values past the
// JSON number range).
Mat mat_from_json(const json& j);
json mat_to_json(const Mat& a);

FieldMat<Rat> rat_mat_from_json(const json& j);
FieldMat<Fp> fp_mat_from_json(const json& j, const PrimeField& f);

json field_mat_to_json(const FieldMat<Rat>& a);
json field_mat_to_json(const FieldMat<Fp>& a);

json trace_to_json(const ConstructionTrace<Rat>& t);
json trace_to_json(const ConstructionTrace<Fp>& t);

json census_result_to_json(const CensusResult& r);

}  // namespace mcensus
