#pragma once

// JSON encodings of every library value. Scalars are "p/q" strings when
// rational and {"order": N, "coeffs": [...]} otherwise. Parsers take the
// target field and throw Error(Errc::parse) on malformed input, or
// Error(Errc::field_mismatch) when an encoded order disagrees with it.

#include <json.hpp>

#include <span>
#include <vector>

#include "m2sg/bfg.hpp"
#include "m2sg/monoid.hpp"
#include "m2sg/multiplicity.hpp"
#include "m2sg/pm2.hpp"
#include "m2sg/report.hpp"
#include "m2sg/subgroups.hpp"

namespace m2sg {

using Json = nlohmann::json;

Json to_json(const CycloScalar& x);
Json to_json(const ProjPoint& p);
Json to_json(const PointSet& s);
Json to_json(const Mat2& m);
Json to_json(const Rank1& c);
Json to_json(const PM2Elem& x);
Json to_json(const Rank1Set& s);
Json to_json(const SingularShape& s);
Json to_json(const Multiplicity& z);
Json to_json(const ClassData& d);
Json to_json(const SingularPart& s);
Json to_json(const GroupSpec& g);
Json to_json(const InfiniteSignal& s);
Json to_json(const OrbitDecomposition& d);
Json to_json(const Check& c);
Json to_json(const std::vector<Check>& checks);
Json to_json(const MonoidSpec& m);
Json to_json(const MonoidClosure& c);
Json to_json(const StructureReport& r);

CycloScalar scalar_from_json(const Json& j, const FieldPtr& field);
ProjPoint point_from_json(const Json& j, const FieldPtr& field);
std::vector<ProjPoint> points_from_json(const Json& j, const FieldPtr& field);
PointSet point_set_from_json(const Json& j, const FieldPtr& field);
Mat2 mat2_from_json(const Json& j, const FieldPtr& field);
std::vector<Mat2> mat2_list_from_json(const Json& j, const FieldPtr& field);
Rank1 rank1_from_json(const Json& j, const FieldPtr& field);
PM2Elem pm2_from_json(const Json& j, const FieldPtr& field);
Rank1Set rank1_set_from_json(const Json& j, const FieldPtr& field);
SingularShape shape_from_json(const Json& j, const FieldPtr& field);
Multiplicity multiplicity_from_json(const Json& j, const FieldPtr& field);
ClassData class_data_from_json(const Json& j, const FieldPtr& field);
SingularPart singular_part_from_json(const Json& j, const FieldPtr& field);
GroupSpec group_spec_from_json(const Json& j, const FieldPtr& field);
MonoidSpec monoid_spec_from_json(const Json& j, const FieldPtr& field);

/// Parses text, mapping syntax errors onto Error(Errc::parse).
Json parse_json(std::string_view text);

}  // namespace m2sg
