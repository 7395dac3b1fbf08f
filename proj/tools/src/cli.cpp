#include "m2sg_cli/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "m2sg/json_io.hpp"
#include "m2sg/monoid.hpp"

namespace m2sg::cli {

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::parse:
    case Errc::division_by_zero: return kParse;
    case Errc::cap_exceeded: return kCap;
    case Errc::precondition:
    case Errc::field_mismatch:
    case Errc::unsupported: return kPrecondition;
    case Errc::internal: return kInternal;
  }
  return kInternal;
}

namespace {

struct JobConfig {
  std::uint32_t order = 12;
  std::size_t cap = kDefaultCap;
  std::string ambient_file;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string input = "-";
};

struct Outcome {
  Json body;
  int code = kOk;
};

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) fail(Errc::parse, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Job {
 public:
  explicit Job(JobConfig cfg) : cfg_(std::move(cfg)) {
    require(cfg_.order >= 1, Errc::precondition, "--order must be at least 1");
    require(cfg_.cap >= 1, Errc::precondition, "--cap must be at least 1");
    field_ = CyclotomicField::get(cfg_.order);
    input_ = parse_json(read_all(cfg_.input));
    if (const auto it = input_.find("order"); input_.is_object() && it != input_.end()) {
      if (!it->is_number_integer() || it->get<long long>() != cfg_.order) {
        fail(Errc::field_mismatch, "input is written over a different cyclotomic order than --order");
      }
    }
    if (!cfg_.ambient_file.empty()) {
      const auto j = parse_json(read_all(cfg_.ambient_file));
      extra_ambient_ = points_from_json(j.is_object() ? j.at("ambient") : j, field_);
    }
  }

  Outcome closure() const {
    const auto gens = mat2_list_from_json(need("generators"), field_);
    const auto mc = closure_monoid(gens, cfg_.cap);
    Outcome o;
    o.body["closure"] = to_json(mc);
    o.body["classification"] = to_json(mc.singular.shape());
    std::optional<GroupSpec> group = declared_group();
    if (std::holds_alternative<InfiniteSignal>(mc.group) && !group) {
      o.body["guidance"] =
          "the invertible part exceeded the cap and is treated as infinite; declare its group "
          "with \"group\": {\"kind\": ...} from the catalog and rerun";
      o.code = kCap;
      return o;
    }
    const MonoidSpec m{field_, group ? *group : GroupSpec::generated(mc.invertible_generators),
                       mc.singular, ambient({})};
    o.body["monoid"] = to_json(m);
    report(o, m);
    return o;
  }

  Outcome classify_cmd() const {
    const Json& src = input_.contains("rank1_set") ? input_.at("rank1_set") : input_;
    const auto s = rank1_set_from_json(src, field_);
    Outcome o;
    o.body["input"] = to_json(s);
    if (const auto v = find_closure_violation(s)) {
      o.body["closed"] = false;
      o.body["violation"] = {{"left", to_json(v->left)}, {"right", to_json(v->right)},
                             {"product", v->product ? to_json(*v->product) : Json("zero")}};
      o.code = kPrecondition;
      return o;
    }
    const auto shape = classify(s);
    const auto amb = ambient(s.points());
    o.body["closed"] = true;
    o.body["shape"] = to_json(shape);
    o.body["reconstructs"] = shape_elements(shape, amb) == s;
    std::vector<SingularShape> family = definable_witness_family(s, amb);
    Json fam = Json::array();
    for (const auto& w : family) fam.push_back(to_json(w));
    o.body["witness_family"] = std::move(fam);
    const auto verdict = verify_witness_family(s, family, amb);
    o.body["witness_verified"] = verdict.ok;
    if (!verdict.ok) o.body["witness_failure"] = verdict.failure;
    o.code = (o.body["reconstructs"].get<bool>() && verdict.ok) ? kOk : kChecksFailed;
    return o;
  }

  Outcome orbits() const {
    const auto g = group_spec_from_json(need("group"), field_);
    std::vector<ProjPoint> probes;
    if (input_.contains("probes")) probes = points_from_json(input_.at("probes"), field_);
    const auto dec = orbit_decomposition(g, field_, probes, cfg_.cap);
    Outcome o;
    o.body["group"] = to_json(g);
    o.body["orbits"] = to_json(dec);
    std::vector<Check> checks;
    if (g.is_catalog_infinite()) {
      Rng rng(cfg_.seed);
      checks = spot_check_orbits(g, field_, probes, 20, rng);
    } else {
      std::string bad;
      for (const auto& orbit : dec.finite_orbits) {
        if (dec.group_order % orbit.size() != 0 && bad.empty()) {
          bad = "orbit of size " + std::to_string(orbit.size()) + " in a group of order " +
                std::to_string(dec.group_order);
        }
      }
      checks.push_back(Check::verdict("orbit_sizes_divide_order", bad.empty(), bad));
    }
    o.body["checks"] = to_json(checks);
    o.code = all_passed(checks) ? kOk : kChecksFailed;
    return o;
  }

  Outcome verify() const {
    Outcome o;
    const auto m = monoid_from_input(o);
    if (!m) return o;
    o.body["monoid"] = to_json(*m);
    report(o, *m);
    return o;
  }

  Outcome witness() const {
    Outcome o;
    const auto m = monoid_from_input(o);
    if (!m) return o;
    const auto family = intersection_witness_monoid(*m, cfg_.seed, cfg_.cap);
    const auto checks = verify_witness_monoid(*m, family, cfg_.seed, cfg_.cap);
    o.body["monoid"] = to_json(*m);
    Json fam = Json::array();
    for (const auto& w : family) fam.push_back(to_json(w));
    o.body["family"] = std::move(fam);
    o.body["checks"] = to_json(checks);
    o.code = all_passed(checks) ? kOk : kChecksFailed;
    return o;
  }

  Outcome enumerate() const {
    const auto ground = points_from_json(need("ground"), field_);
    const auto sets = enumerate_closed_subsets(ground);
    Outcome o;
    std::size_t type_a = 0;
    std::size_t type_b = 0;
    bool all_reconstruct = true;
    Json list = Json::array();
    for (const auto& s : sets) {
      const auto shape = classify(s);
      (shape.is_type_a() ? type_a : type_b) += 1;
      const bool ok = shape_elements(shape, ground) == s;
      all_reconstruct = all_reconstruct && ok;
      list.push_back({{"set", to_json(s)}, {"shape", to_json(shape)}, {"reconstructs", ok}});
    }
    o.body["closed_subsets"] = sets.size();
    o.body["type_a"] = type_a;
    o.body["type_b"] = type_b;
    o.body["all_reconstruct"] = all_reconstruct;
    o.body["sets"] = std::move(list);
    o.code = all_reconstruct ? kOk : kChecksFailed;
    return o;
  }

 private:
  const Json& need(const char* key) const {
    if (!input_.is_object() || !input_.contains(key)) {
      fail(Errc::parse, std::string("input needs \"") + key + "\"");
    }
    return input_.at(key);
  }

  std::optional<GroupSpec> declared_group() const {
    if (!input_.is_object() || !input_.contains("group")) return std::nullopt;
    return group_spec_from_json(input_.at("group"), field_);
  }

  /// Input ambient, --ambient points and `own`; a small default when all are empty.
  std::vector<ProjPoint> ambient(const std::vector<ProjPoint>& own) const {
    std::vector<ProjPoint> pts = extra_ambient_;
    if (input_.is_object() && input_.contains("ambient")) {
      const auto in = points_from_json(input_.at("ambient"), field_);
      pts.insert(pts.end(), in.begin(), in.end());
    }
    if (pts.empty()) {
      for (long t : {0L, 1L, -1L, 2L}) pts.push_back(ProjPoint::affine(CycloScalar(field_, t)));
      pts.push_back(ProjPoint::infinity(field_));
    }
    pts.insert(pts.end(), own.begin(), own.end());
    return canonical_points(std::move(pts));
  }

  /// A declared monoid ("singular", or the flat layout with "shape") or the
  /// closure of "generators".
  std::optional<MonoidSpec> monoid_from_input(Outcome& o) const {
    if (input_.is_object() && (input_.contains("singular") || input_.contains("shape"))) {
      auto m = monoid_spec_from_json(input_, field_);
      m.ambient = ambient(m.ambient);
      return m;
    }
    const auto gens = mat2_list_from_json(need("generators"), field_);
    const auto mc = closure_monoid(gens, cfg_.cap);
    const auto group = declared_group();
    if (std::holds_alternative<InfiniteSignal>(mc.group) && !group) {
      o.body["guidance"] =
          "the invertible part exceeded the cap; declare a catalog group to analyse it";
      o.code = kCap;
      return std::nullopt;
    }
    return MonoidSpec{field_, group ? *group : GroupSpec::generated(mc.invertible_generators),
                      mc.singular, ambient({})};
  }

  void report(Outcome& o, const MonoidSpec& m) const {
    const auto r = structure_report(m, cfg_.seed, cfg_.cap);
    auto checks = r.checks;
    if (m.group.is_catalog_infinite()) {
      Rng rng(cfg_.seed);
      const auto amb = effective_ambient(m, cfg_.cap);
      const auto spot = spot_check_orbits(m.group, field_, amb, 20, rng);
      checks.insert(checks.end(), spot.begin(), spot.end());
    }
    auto body = to_json(r);
    body["checks"] = to_json(checks);
    body["ok"] = all_passed(checks);
    o.body["structure"] = std::move(body);
    o.code = all_passed(checks) ? kOk : kChecksFailed;
  }

  JobConfig cfg_;
  FieldPtr field_;
  Json input_;
  std::vector<ProjPoint> extra_ambient_;
};

void render_text(const Json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_primitive()) {
        out << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
      } else {
        out << pad << k << ":\n";
        render_text(v, out, indent + 1);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_primitive()) {
        out << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
      } else {
        out << pad << "-\n";
        render_text(v, out, indent + 1);
      }
    }
  } else {
    out << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

void emit(const Json& body, const std::string& format, std::ostream& out) {
  if (format == "text") {
    render_text(body, out, 0);
  } else {
    out << body.dump(2) << '\n';
  }
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact analysis of semigroups and monoids of 2x2 matrices", "m2sg"};
  app.require_subcommand(1);
  JobConfig cfg;
  app.add_option("--order", cfg.order, "cyclotomic order N of the scalar field Q(zeta_N)")
      ->capture_default_str();
  app.add_option("--cap", cfg.cap, "closure and enumeration cap")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for sampled checks")->capture_default_str();
  app.add_option("--ambient", cfg.ambient_file, "JSON file with extra ambient points");
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  const std::vector<std::pair<const char*, const char*>> commands{
      {"closure", "close a generator set and report its structure"},
      {"classify", "classify a closed set of rank-1 classes"},
      {"orbits", "orbit decomposition of a catalog or generated group"},
      {"verify", "run every structural check on a monoid"},
      {"witness", "emit a verified family of definable monoids"},
      {"enumerate", "every closed subset over a ground set of at most four points"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("input", cfg.input, "input JSON file, - for stdin")->capture_default_str();
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParse;
  }

  try {
    const Job job(cfg);
    const std::string which = app.get_subcommands().front()->get_name();
    Outcome o;
    if (which == "closure") o = job.closure();
    else if (which == "classify") o = job.classify_cmd();
    else if (which == "orbits") o = job.orbits();
    else if (which == "verify") o = job.verify();
    else if (which == "witness") o = job.witness();
    else o = job.enumerate();
    o.body["command"] = which;
    o.body["exit_code"] = o.code;
    emit(o.body, cfg.format, out);
    return o.code;
  } catch (const Error& e) {
    const int code = exit_code_for(e.code());
    emit(Json{{"error", std::string(errc_name(e.code()))}, {"message", e.what()},
              {"exit_code", code}},
         cfg.format, out);
    err << "m2sg: " << e.what() << '\n';
    return code;
  } catch (const Json::exception& e) {
    emit(Json{{"error", "parse"}, {"message", e.what()}, {"exit_code", int{kParse}}}, cfg.format,
         out);
    err << "m2sg: " << e.what() << '\n';
    return kParse;
  } catch (const std::exception& e) {
    err << "m2sg: " << e.what() << '\n';
    return kInternal;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> copy = args;
  std::vector<char*> argv;
  for (auto& a : copy) argv.push_back(a.data());
  argv.push_back(nullptr);
  return run(static_cast<int>(copy.size()), argv.data(), out, err);
}

}  // namespace m2sg::cli
