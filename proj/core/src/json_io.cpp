#include "m2sg/json_io.hpp"

#include <string>

#include "m2sg/error.hpp"

namespace m2sg {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(Errc::parse, "json: " + what); }

const Json& field_of(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object with \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing \"") + key + "\"");
  return *it;
}

const Json* optional_field(const Json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  const auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

const Json& array_of(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  return j;
}

bool bool_of(const Json& j, const char* what) {
  if (!j.is_boolean()) bad(std::string(what) + " must be a boolean");
  return j.get<bool>();
}

std::uint32_t uint_of(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0 || j.get<long long>() > 0xffffffffLL) {
    bad(std::string(what) + " must be a non-negative integer");
  }
  return static_cast<std::uint32_t>(j.get<long long>());
}

const std::string& string_of(const Json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get_ref<const std::string&>();
}

template <typename T>
Json list(std::span<const T> xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    bad(e.what());
  }
}

Json to_json(const CycloScalar& x) {
  if (x.is_rational()) return to_string(x.rational_value());
  Json coeffs = Json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back(to_string(c));
  return Json{{"order", x.field()->order()}, {"coeffs", std::move(coeffs)}};
}

CycloScalar scalar_from_json(const Json& j, const FieldPtr& field) {
  if (j.is_number_integer()) return {field, Rational(j.get<long>())};
  if (j.is_string()) return {field, parse_rational(j.get_ref<const std::string&>())};
  if (!j.is_object()) bad("a scalar is a \"p/q\" string or {order, coeffs}");
  const auto order = uint_of(field_of(j, "order"), "order");
  if (order != field->order()) {
    fail(Errc::field_mismatch, "scalar of Q(zeta_" + std::to_string(order) + ") in Q(zeta_" +
                                   std::to_string(field->order()) + ")");
  }
  std::vector<Rational> coeffs;
  for (const auto& c : array_of(field_of(j, "coeffs"), "coeffs")) {
    coeffs.push_back(parse_rational(string_of(c, "coefficient")));
  }
  return {field, std::move(coeffs)};
}

Json to_json(const ProjPoint& p) { return Json{{"a", to_json(p.a())}, {"b", to_json(p.b())}}; }

ProjPoint point_from_json(const Json& j, const FieldPtr& field) {
  return ProjPoint::normalize(scalar_from_json(field_of(j, "a"), field),
                              scalar_from_json(field_of(j, "b"), field));
}

std::vector<ProjPoint> points_from_json(const Json& j, const FieldPtr& field) {
  std::vector<ProjPoint> out;
  for (const auto& p : array_of(j, "points")) out.push_back(point_from_json(p, field));
  return out;
}

Json to_json(const PointSet& s) {
  return Json{{"mode", s.is_finite() ? "finite" : "cofinite"},
              {"points", list<ProjPoint>(s.points())}};
}

PointSet point_set_from_json(const Json& j, const FieldPtr& field) {
  const auto& mode = string_of(field_of(j, "mode"), "mode");
  auto pts = points_from_json(field_of(j, "points"), field);
  if (mode == "finite") return PointSet::finite(std::move(pts));
  if (mode == "cofinite") return PointSet::cofinite(std::move(pts));
  bad("mode must be \"finite\" or \"cofinite\"");
}

Json to_json(const Mat2& m) {
  return Json::array({Json::array({to_json(m.at(0, 0)), to_json(m.at(0, 1))}),
                      Json::array({to_json(m.at(1, 0)), to_json(m.at(1, 1))})});
}

Mat2 mat2_from_json(const Json& j, const FieldPtr& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() ||
      j[0].size() != 2 || j[1].size() != 2) {
    bad("a matrix is [[a, b], [c, d]]");
  }
  return {scalar_from_json(j[0][0], field), scalar_from_json(j[0][1], field),
          scalar_from_json(j[1][0], field), scalar_from_json(j[1][1], field)};
}

std::vector<Mat2> mat2_list_from_json(const Json& j, const FieldPtr& field) {
  std::vector<Mat2> out;
  for (const auto& m : array_of(j, "matrices")) out.push_back(mat2_from_json(m, field));
  return out;
}

Json to_json(const Rank1& c) {
  return Json{{"image", to_json(c.image)}, {"kernel", to_json(c.kernel)}};
}

Rank1 rank1_from_json(const Json& j, const FieldPtr& field) {
  return {point_from_json(field_of(j, "image"), field),
          point_from_json(field_of(j, "kernel"), field)};
}

Json to_json(const PM2Elem& x) {
  if (x.is_zero()) return Json{{"kind", "zero"}};
  if (x.is_rank_one()) {
    auto j = to_json(x.rank_one());
    j["kind"] = "rank1";
    return j;
  }
  return Json{{"kind", "invertible"}, {"rep", to_json(x.invertible_rep())}};
}

PM2Elem pm2_from_json(const Json& j, const FieldPtr& field) {
  const auto& kind = string_of(field_of(j, "kind"), "kind");
  if (kind == "zero") return PM2Elem::zero(field);
  if (kind == "rank1") return PM2Elem::rank_one(rank1_from_json(j, field));
  if (kind == "invertible") return PM2Elem::invertible(mat2_from_json(field_of(j, "rep"), field));
  bad("unknown PM2 kind \"" + kind + "\"");
}

Json to_json(const Rank1Set& s) {
  return Json{{"pairs", list<Rank1>(s.pairs)}, {"has_zero", s.has_zero}};
}

Rank1Set rank1_set_from_json(const Json& j, const FieldPtr& field) {
  std::vector<Rank1> pairs;
  for (const auto& p : array_of(field_of(j, "pairs"), "pairs")) {
    pairs.push_back(rank1_from_json(p, field));
  }
  return Rank1Set::make(std::move(pairs), bool_of(field_of(j, "has_zero"), "has_zero"));
}

Json to_json(const SingularShape& s) {
  Json j{{"images", to_json(s.images())}, {"kernels", to_json(s.kernels())}};
  if (s.is_type_a()) {
    j["type"] = "A";
    j["has_zero"] = s.a().has_zero;
  } else {
    j["type"] = "B";
    j["center"] = to_json(s.b().center);
  }
  return j;
}

SingularShape shape_from_json(const Json& j, const FieldPtr& field) {
  const auto& type = string_of(field_of(j, "type"), "type");
  auto f = point_set_from_json(field_of(j, "images"), field);
  auto g = point_set_from_json(field_of(j, "kernels"), field);
  if (type == "A") {
    return SingularShape::type_a(std::move(f), std::move(g),
                                 bool_of(field_of(j, "has_zero"), "has_zero"));
  }
  if (type == "B") {
    return SingularShape::type_b(std::move(f), std::move(g),
                                 point_from_json(field_of(j, "center"), field));
  }
  bad("shape type must be \"A\" or \"B\"");
}

Json to_json(const Multiplicity& z) {
  switch (z.kind()) {
    case Multiplicity::Kind::full_torus: return Json{{"kind", "full_torus"}};
    case Multiplicity::Kind::roots_of_unity:
      return Json{{"kind", "roots_of_unity"}, {"n", z.n()}};
    case Multiplicity::Kind::explicit_set:
      return Json{{"kind", "explicit"}, {"elements", list<CycloScalar>(z.elements())}};
  }
  return {};
}

Multiplicity multiplicity_from_json(const Json& j, const FieldPtr& field) {
  const auto& kind = string_of(field_of(j, "kind"), "kind");
  if (kind == "full_torus") return Multiplicity::full_torus(field);
  if (kind == "roots_of_unity") {
    return Multiplicity::roots_of_unity(field, uint_of(field_of(j, "n"), "n"));
  }
  if (kind == "explicit") {
    std::vector<CycloScalar> xs;
    for (const auto& x : array_of(field_of(j, "elements"), "elements")) {
      xs.push_back(scalar_from_json(x, field));
    }
    return Multiplicity::explicit_set(field, std::move(xs));
  }
  bad("unknown multiplicity kind \"" + kind + "\"");
}

Json to_json(const ClassData& d) {
  return Json{{"class", to_json(d.cls)}, {"base", to_json(d.base)}, {"z", to_json(d.z)}};
}

ClassData class_data_from_json(const Json& j, const FieldPtr& field) {
  const auto cls = rank1_from_json(field_of(j, "class"), field);
  const auto* base = optional_field(j, "base");
  return {cls, base ? mat2_from_json(*base, field) : representative(cls),
          multiplicity_from_json(field_of(j, "z"), field)};
}

namespace {

void put_singular(Json& j, const SingularPart& s) {
  j["shape"] = to_json(s.shape());
  Json defaults = Json::object();
  if (s.z_default()) defaults["default"] = to_json(*s.z_default());
  if (s.z_default_right()) defaults["default_right"] = to_json(*s.z_default_right());
  if (s.z_default_nilpotent()) defaults["default_nilpotent"] = to_json(*s.z_default_nilpotent());
  j["multiplicities"] = std::move(defaults);
  j["scalar_sets"] = list<ClassData>(s.classes());
}

}  // namespace

Json to_json(const SingularPart& s) {
  Json j = Json::object();
  put_singular(j, s);
  return j;
}

SingularPart singular_part_from_json(const Json& j, const FieldPtr& field) {
  auto shape = shape_from_json(field_of(j, "shape"), field);
  std::vector<ClassData> classes;
  if (const auto* sets = optional_field(j, "scalar_sets")) {
    for (const auto& d : array_of(*sets, "scalar_sets")) {
      classes.push_back(class_data_from_json(d, field));
    }
  }
  std::optional<Multiplicity> def;
  std::optional<Multiplicity> right;
  std::optional<Multiplicity> nil;
  if (const auto* ms = optional_field(j, "multiplicities")) {
    if (const auto* x = optional_field(*ms, "default")) def = multiplicity_from_json(*x, field);
    if (const auto* x = optional_field(*ms, "default_right")) {
      right = multiplicity_from_json(*x, field);
    }
    if (const auto* x = optional_field(*ms, "default_nilpotent")) {
      nil = multiplicity_from_json(*x, field);
    }
  }
  return SingularPart(std::move(shape), std::move(classes), std::move(def), std::move(right),
                      std::move(nil));
}

Json to_json(const GroupSpec& g) {
  Json j{{"kind", std::string(group_kind_name(g.kind))}};
  if (g.kind == GroupKind::dihedral) j["n"] = g.n;
  if (g.kind == GroupKind::finite_generated) j["gens"] = list<Mat2>(g.gens);
  if (g.conjugator) j["conjugator"] = to_json(*g.conjugator);
  return j;
}

GroupSpec group_spec_from_json(const Json& j, const FieldPtr& field) {
  const auto& name = string_of(field_of(j, "kind"), "kind");
  const auto kind = parse_group_kind(name);
  if (!kind) bad("unknown group kind \"" + name + "\"");
  GroupSpec g;
  if (*kind == GroupKind::finite_generated) {
    const auto* gens = optional_field(j, "gens");
    g = GroupSpec::generated(gens ? mat2_list_from_json(*gens, field) : std::vector<Mat2>{});
  } else {
    const auto* n = optional_field(j, "n");
    g = GroupSpec::catalog(*kind, n ? uint_of(*n, "n") : 0);
  }
  if (const auto* c = optional_field(j, "conjugator")) {
    g = g.conjugated_by(mat2_from_json(*c, field));
  }
  return g;
}

Json to_json(const InfiniteSignal& s) {
  return Json{{"cap", s.cap}, {"reason", s.reason}};
}

Json to_json(const OrbitDecomposition& d) {
  Json orbits = Json::array();
  for (const auto& o : d.finite_orbits) orbits.push_back(list<ProjPoint>(o));
  Json j{{"finite_orbits", std::move(orbits)}, {"group_order", d.group_order}};
  if (d.cofinite_orbit) j["cofinite_complement"] = list<ProjPoint>(d.cofinite_orbit->points());
  return j;
}

Json to_json(const Check& c) {
  return Json{{"law", c.name}, {"status", std::string(status_name(c.status))},
              {"witness", c.detail}};
}

Json to_json(const std::vector<Check>& checks) {
  return list<Check>(checks);
}

Json to_json(const MonoidSpec& m) {
  Json j{{"order", m.field->order()}, {"group", to_json(m.group)},
         {"ambient", list<ProjPoint>(m.ambient)}};
  put_singular(j, m.singular);
  return j;
}

MonoidSpec monoid_spec_from_json(const Json& j, const FieldPtr& field) {
  if (const auto* order = optional_field(j, "order")) {
    if (uint_of(*order, "order") != field->order()) {
      fail(Errc::field_mismatch, "monoid spec over Q(zeta_" + std::to_string(uint_of(*order, "order")) +
                                     ") read in Q(zeta_" + std::to_string(field->order()) + ")");
    }
  }
  const auto* group = optional_field(j, "group");
  const auto* amb = optional_field(j, "ambient");
  const Json& singular = optional_field(j, "singular") ? field_of(j, "singular") : j;
  return MonoidSpec{field, group ? group_spec_from_json(*group, field) : GroupSpec::trivial(),
                    singular_part_from_json(singular, field),
                    amb ? points_from_json(*amb, field) : std::vector<ProjPoint>{}};
}

Json to_json(const MonoidClosure& c) {
  Json j{{"h_saturated", c.h_saturated}, {"singular", to_json(c.singular)},
         {"invertible_generators", list<Mat2>(c.invertible_generators)}};
  if (const auto* elems = std::get_if<std::vector<Mat2>>(&c.group)) {
    j["group"] = Json{{"order", elems->size()}, {"elements", list<Mat2>(*elems)}};
  } else {
    j["group"] = Json{{"infinite", to_json(std::get<InfiniteSignal>(c.group))}};
  }
  return j;
}

Json to_json(const StructureReport& r) {
  Json z = Json::object();
  for (const auto& [name, value] : r.z_values) z[name] = to_json(value);
  return Json{{"case", std::string(case_name(r.case_tag))},
              {"case_label", std::string(case_label(r.case_tag))},
              {"equal_multiplicity", r.equal_multiplicity},
              {"z_values", std::move(z)},
              {"checks", to_json(r.checks)},
              {"witness_family", list<MonoidSpec>(r.witness_family)},
              {"ok", r.ok()}};
}

}  // namespace m2sg
