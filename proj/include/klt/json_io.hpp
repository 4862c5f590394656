#pragma once

#include "klt/klsum.hpp"
#include "klt/lfunc.hpp"
#include "klt/matkl.hpp"
#include "klt/randtest.hpp"
#include "klt/stats.hpp"

#include <json.hpp>

#include <string>

namespace klt {

using json = nlohmann::json;

json field_to_json(const FieldCtx& ctx);
FieldCtx field_from_json(const json& j);

json elem_to_json(const FieldCtx& ctx, const FFElem& x);
FFElem elem_from_json(const FieldCtx& ctx, const json& j);

json poly_to_json(const FieldCtx& ctx, const FqPoly& f);
FqPoly poly_from_json(const FieldCtx& ctx, const json& j);

MatrixFq matrix_from_json(const FieldCtx& ctx, const json& j);
json matrix_to_json(const MatrixFq& m);

json klvalue_to_json(const KlValue& v);
json matkl_to_json(const MatKlResult& r);
json gof_to_json(const GofReport& g);
json histogram_to_json(const Histogram& h);
json report_to_json(const TestReport& r);
json detection_to_json(const DetectionRates& d);
json lpoly_to_json(const LPoly& l);

/// Minimal structural validator for the shipped schema files. Supports the
/// subset used there: type, properties, required, items, enum.
bool json_matches_schema(const json& doc, const json& schema, std::string* why = nullptr);

} // namespace klt
