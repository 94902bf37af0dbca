#include "coxkernel/cli.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace coxkernel::cli {

namespace {

const std::vector<std::pair<Command, std::string>>& command_table() {
  static const std::vector<std::pair<Command, std::string>> table{
      {Command::clgroup, "clgroup"},     {Command::coxring, "coxring"},         {Command::kspec, "kspec"},
      {Command::orbits, "orbits"},       {Command::charspace, "charspace"},     {Command::verify, "verify"},
      {Command::reconstruct, "reconstruct"}, {Command::sections, "sections"}, {Command::divisor, "divisor"}};
  return table;
}

std::string child(const std::string& pointer, const std::string& key) { return pointer + "/" + key; }
std::string child(const std::string& pointer, std::size_t i) { return pointer + "/" + std::to_string(i); }

[[noreturn]] void schema_error(const std::string& pointer, const std::string& message) {
  throw InputError("schema", message, pointer.empty() ? "/" : pointer);
}

void expect_keys(const json& j, const std::string& pointer, const std::vector<std::string>& required,
                 const std::vector<std::string>& optional = {}) {
  if (!j.is_object()) schema_error(pointer, "expected an object");
  for (const auto& [key, value] : j.items()) {
    const bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                       std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) schema_error(child(pointer, key), "unknown field \"" + key + "\"");
  }
  for (const auto& key : required)
    if (!j.contains(key)) schema_error(child(pointer, key), "missing field \"" + key + "\"");
}

void expect_schema(const json& j) {
  if (!j.is_object()) schema_error("", "expected an object");
  if (!j.contains("schema")) schema_error("/schema", "missing field \"schema\"");
  if (j["schema"] != kSchema) schema_error("/schema", std::string("schema must be \"") + kSchema + "\"");
}

Integer read_int(const json& j, const std::string& pointer) {
  if (!j.is_number_integer()) schema_error(pointer, "expected an integer");
  if (j.is_number_unsigned()) return Integer(j.get<unsigned long long>());
  return Integer(j.get<long long>());
}

std::size_t read_size(const json& j, const std::string& pointer) {
  if (!j.is_number_integer() || j.get<long long>() < 0) schema_error(pointer, "expected a non-negative integer");
  return j.get<std::size_t>();
}

IntVector read_vector(const json& j, const std::string& pointer, std::optional<std::size_t> length = {}) {
  if (!j.is_array()) schema_error(pointer, "expected an array of integers");
  if (length && j.size() != *length)
    schema_error(pointer, "expected " + std::to_string(*length) + " entries, got " + std::to_string(j.size()));
  IntVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = read_int(j[i], child(pointer, i));
  return v;
}

std::vector<IntVector> read_vectors(const json& j, const std::string& pointer, std::optional<std::size_t> length) {
  if (!j.is_array()) schema_error(pointer, "expected an array of integer arrays");
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_vector(j[i], child(pointer, i), length));
  return out;
}

IndexSet read_indices(const json& j, const std::string& pointer, std::size_t bound) {
  if (!j.is_array()) schema_error(pointer, "expected an array of indices");
  IndexSet out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::size_t v = read_size(j[i], child(pointer, i));
    if (v >= bound) schema_error(child(pointer, i), "index " + std::to_string(v) + " out of range");
    out.push_back(v);
  }
  return out;
}

json vec_json(const IntVector& v) { return to_int64(v); }

json vecs_json(const std::vector<IntVector>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(vec_json(v));
  return out;
}

json matrix_json(const IntMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vec_json(IntVector(m.row(i).transpose())));
  return out;
}

std::string vector_label(const IntVector& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) out += (i ? "," : "") + to_string(v(i));
  return out + ")";
}

std::string ideal_label(const std::vector<IntVector>& gens) {
  std::string out = "<";
  for (std::size_t i = 0; i < gens.size(); ++i) out += (i ? "," : "") + vector_label(gens[i]);
  return out + ">";
}

std::string index_label(const IndexSet& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "]";
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

json with_schema(json doc) {
  doc["schema"] = kSchema;
  return doc;
}

std::string dump(const json& doc) { return doc.dump() + "\n"; }

// ---- commands --------------------------------------------------------------

enum class DocKind { fan, algebra, spec };

DocKind kind_of(const json& doc) {
  expect_schema(doc);
  if (doc.contains("rays")) return DocKind::fan;
  if (doc.contains("monoid_generators")) return DocKind::algebra;
  if (doc.contains("cone_rays")) return DocKind::spec;
  schema_error("", "document is neither a fan, an algebra nor a divisorial spec");
}

[[noreturn]] void wrong_input(Command c, const std::string& wanted) {
  throw InputError("input", command_name(c) + " needs " + wanted + " input", "/");
}

Fan require_fan(const json& doc, Command c) {
  if (kind_of(doc) != DocKind::fan) wrong_input(c, "a fan");
  return fan_from_json(doc);
}

IntVector require_divisor(const json& doc, const Fan& f, Command c) {
  auto d = fan_divisor_from_json(doc, f.rays.size());
  if (!d) throw InputError("schema", command_name(c) + " needs a \"divisor\" field", "/divisor");
  return *d;
}

void no_dot(const JobConfig& config) {
  if (config.format == Format::dot)
    throw InputError("input", "format dot is not available for " + command_name(config.command));
}

std::string render(const JobConfig& config, const json& doc) {
  return config.format == Format::text ? doc.dump(2) + "\n" : dump(doc);
}

struct Emitted {
  int status = 0;
  std::string out;
};

Emitted cmd_clgroup(const JobConfig& config, const json& input) {
  no_dot(config);
  const Fan f = require_fan(input, config.command);
  const ClassGroup cl = class_group(f);
  std::vector<IntVector> degrees;
  for (std::size_t i = 0; i < f.rays.size(); ++i) degrees.push_back(cl.degree.image_of_generator(i));
  const json doc = with_schema({{"cl", group_to_json(cl.group)}, {"degrees", vecs_json(degrees)}});
  if (config.format != Format::text) return {0, dump(doc)};
  std::string out = "Cl = " + cl.group.describe() + "\n";
  for (std::size_t i = 0; i < degrees.size(); ++i) out += "deg x" + std::to_string(i) + " = " + vector_label(degrees[i]) + "\n";
  return {0, out};
}

Emitted cmd_coxring(const JobConfig& config, const json& input) {
  no_dot(config);
  const CoxPresentation p = cox_presentation(require_fan(input, config.command));
  return {0, render(config, algebra_to_json(p.ring))};
}

Emitted cmd_kspec(const JobConfig& config, const json& input) {
  GradedMonoidAlgebra r;
  switch (kind_of(input)) {
    case DocKind::algebra: r = algebra_from_json(input); break;
    case DocKind::fan: r = cox_presentation(fan_from_json(input)).ring; break;
    default: wrong_input(config.command, "an algebra or a fan");
  }
  const Spectrum s = k_spectrum(r);
  if (config.format == Format::dot) return {0, emit_dot(spectrum_poset(s), "kspec")};
  json points = json::array();
  for (const auto& p : s.points)
    points.push_back({{"face", p.face.generators}, {"dimension", p.face.dimension}, {"ideal", vecs_json(p.ideal_generators)}});
  json covers = json::array();
  for (const auto& [a, b] : s.covers) covers.push_back({a, b});
  return {0, render(config, with_schema({{"points", points}, {"covers", covers}}))};
}

Emitted cmd_orbits(const JobConfig& config, const json& input) {
  const Fan f = require_fan(input, config.command);
  const F1Scheme scheme = toric_f1_points(f);
  if (config.format == Format::dot) return {0, emit_dot(f1_poset(scheme), "orbits")};
  json cones = json::array();
  for (const auto& sigma : f.max_cones) {
    const OrbitLattice o = orbit_face_lattice(f.cone(sigma));
    json nodes = json::array();
    for (const auto& n : o.nodes)
      nodes.push_back({{"monoid_face", n.monoid_face},
                       {"cone_face", n.cone_face},
                       {"ideal", vecs_json(n.ideal_generators)},
                       {"degree_variables", n.degree_variables},
                       {"degrees", vecs_json(n.degrees)}});
    json covers = json::array();
    for (const auto& [a, b] : o.covers) covers.push_back({a, b});
    cones.push_back({{"cone", sigma},
                     {"cl", group_to_json(o.cl)},
                     {"monoid_generators", vecs_json(o.monoid_generators)},
                     {"nodes", nodes},
                     {"covers", covers},
                     {"ideals_prime", o.ideals_prime},
                     {"order_reversing", o.order_reversing},
                     {"bijective", o.bijective}});
  }
  json points = json::array();
  for (const auto& p : scheme.points) points.push_back({{"cone", p.cone}, {"chart", p.chart}, {"prime", vecs_json(p.prime_generators)}});
  json spec = json::array();
  for (const auto& [a, b] : scheme.specializations) spec.push_back({a, b});
  const json doc = with_schema({{"orbit_lattices", cones},
                                {"f1_points", points},
                                {"specializations", spec},
                                {"order_reversed", scheme.order_reversed},
                                {"effective", scheme.effective},
                                {"inverse_verified", scheme.inverse_verified}});
  return {0, render(config, doc)};
}

Emitted cmd_charspace(const JobConfig& config, const json& input) {
  no_dot(config);
  const CoxPresentation p = cox_presentation(require_fan(input, config.command));
  json charts = json::array();
  bool ok = true;
  for (const auto& c : characteristic_space(p)) {
    ok = ok && c.isomorphism && c.hilbert_bijection;
    charts.push_back({{"cone", c.cone},
                      {"inverted", c.inverted},
                      {"base_generators", vecs_json(c.base.generators())},
                      {"degree_zero_generators", vecs_json(c.degree_zero)},
                      {"isomorphism", c.isomorphism},
                      {"hilbert_bijection", c.hilbert_bijection}});
  }
  return {ok ? 0 : 1, render(config, with_schema({{"cl", group_to_json(p.cl)}, {"charts", charts}}))};
}

Emitted cmd_verify(const JobConfig& config, const json& input) {
  no_dot(config);
  const std::string& t = config.theorem;
  if (t != "A" && t != "B" && t != "C" && t != "D")
    throw InputError("input", "verify needs --theorem A, B, C or D");
  VerificationReport report;
  const DocKind kind = kind_of(input);
  if (t == "D") {
    if (kind == DocKind::fan) report = verify_theoremD(cox_presentation(fan_from_json(input)).ring);
    else if (kind == DocKind::algebra) report = verify_theoremD(algebra_from_json(input));
    else {
      const DivisorialAlgebraSpec spec = spec_from_json(input);
      report = verify_theoremD(divisorial_algebra_presentation(spec).algebra, spec);
    }
  } else {
    if (kind != DocKind::fan) wrong_input(config.command, "a fan");
    const CoxPresentation p = cox_presentation(fan_from_json(input));
    report = t == "A" ? verify_theoremA(p) : t == "B" ? verify_theoremB(p) : verify_theoremC(p);
  }
  const int status = report.all_pass() ? 0 : 1;
  if (config.format != Format::text) return {status, dump(report_document(report, config.witnesses))};
  std::string out;
  for (const auto& c : report.conditions) {
    out += std::string(c.pass ? "PASS " : "FAIL ") + c.id + "  " + c.statement + "\n";
    if (config.witnesses) out += "     " + c.witness.dump() + "\n";
  }
  out += std::string("theorem ") + t + ": " + (report.all_pass() ? "all conditions hold" : "some conditions fail") + "\n";
  return {status, out};
}

Emitted cmd_reconstruct(const JobConfig& config, const json& input) {
  no_dot(config);
  const DocKind kind = kind_of(input);
  if (kind == DocKind::fan) {
    const Fan f = fan_from_json(input);
    const Reconstruction rec = reconstruct_base(cox_presentation(f));
    const bool match = same_fan_up_to_ray_permutation(rec.fan, f);
    return {match ? 0 : 1, render(config, with_schema({{"fan", fan_to_json(rec.fan)}, {"matches_input", match}}))};
  }
  if (kind != DocKind::algebra) wrong_input(config.command, "a fan or an algebra");
  const GradedMonoidAlgebra r = algebra_from_json(input);
  const IndexSet system = find_prime_system(r);
  const Reconstruction rec = reconstruct_from_prime_system(r, system);
  return {0, render(config, with_schema({{"fan", fan_to_json(rec.fan)},
                                         {"prime_system", system},
                                         {"lattice_basis", matrix_json(rec.lattice_basis)}}))};
}

Emitted cmd_sections(const JobConfig& config, const json& input) {
  no_dot(config);
  const Fan f = require_fan(input, config.command);
  const IntVector d = require_divisor(input, f, config.command);
  std::optional<Box> box;
  if (!config.box.empty()) box = parse_box(config.box, f.lattice_rank);
  const auto points = global_sections(f, d, box);
  if (config.format == Format::text) {
    std::string out = std::to_string(points.size()) + " sections\n";
    for (const auto& m : points) out += vector_label(m) + "\n";
    return {0, out};
  }
  return {0, dump(with_schema({{"divisor", divisor_to_json(d)}, {"count", points.size()}, {"points", vecs_json(points)}}))};
}

Emitted cmd_divisor(const JobConfig& config, const json& input) {
  no_dot(config);
  const Fan f = require_fan(input, config.command);
  const IntVector d = require_divisor(input, f, config.command);
  const ClassGroup cl = class_group(f);
  const IntVector cls = cl.degree.apply(d);
  const bool principal = cl.group.is_zero_element(cls);
  if (config.format == Format::text)
    return {0, "class " + vector_label(cls) + " in " + cl.group.describe() + (principal ? ", principal" : "") +
                   (is_nonnegative(d) ? ", effective" : "") + "\n"};
  return {0, dump(with_schema({{"divisor", divisor_to_json(d)},
                               {"class", vec_json(cls)},
                               {"cl", group_to_json(cl.group)},
                               {"principal", principal},
                               {"effective", is_nonnegative(d)},
                               {"support", support(d)}}))};
}

std::string error_text(const json& e) { return json{{"error", e}}.dump() + "\n"; }

}  // namespace

// ---- names -----------------------------------------------------------------

std::optional<Command> parse_command(const std::string& name) {
  for (const auto& [c, n] : command_table())
    if (n == name) return c;
  return std::nullopt;
}

std::string command_name(Command c) {
  for (const auto& [cmd, n] : command_table())
    if (cmd == c) return n;
  return "?";
}

std::vector<std::string> command_names() {
  std::vector<std::string> out;
  for (const auto& entry : command_table()) out.push_back(entry.second);
  return out;
}

std::optional<Format> parse_format(const std::string& name) {
  if (name == "json") return Format::json;
  if (name == "dot") return Format::dot;
  if (name == "text") return Format::text;
  return std::nullopt;
}

// ---- documents -------------------------------------------------------------

json InputError::to_json() const {
  json e{{"kind", kind_}, {"message", what()}};
  if (!pointer_.empty()) e["pointer"] = pointer_;
  if (line_ > 0) {
    e["line"] = line_;
    e["column"] = column_;
  }
  return e;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset -> 1-based line and column of the offending character
    const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError("parse", e.what(), {}, line, column);
  }
}

json group_to_json(const FgAbelianGroup& g) {
  json torsion = json::array();
  for (const auto& d : g.torsion()) torsion.push_back(d.convert_to<long long>());
  return {{"free_rank", g.free_rank()}, {"torsion", torsion}};
}

FgAbelianGroup group_from_json(const json& j, const std::string& pointer) {
  expect_keys(j, pointer, {"free_rank", "torsion"});
  const std::size_t r = read_size(j["free_rank"], child(pointer, "free_rank"));
  const IntVector t = read_vector(j["torsion"], child(pointer, "torsion"));
  std::vector<Integer> torsion(t.begin(), t.end());
  try {
    return FgAbelianGroup(r, torsion);
  } catch (const std::invalid_argument& e) {
    schema_error(child(pointer, "torsion"), e.what());
  }
}

json fan_to_json(const Fan& f) {
  json cones = json::array();
  for (const auto& c : f.max_cones) cones.push_back(c);
  return with_schema({{"lattice_rank", f.lattice_rank}, {"rays", vecs_json(f.rays)}, {"max_cones", cones}});
}

Fan fan_from_json(const json& j) {
  expect_schema(j);
  expect_keys(j, "", {"schema", "lattice_rank", "rays", "max_cones"}, {"divisor"});
  Fan f;
  f.lattice_rank = read_size(j["lattice_rank"], "/lattice_rank");
  f.rays = read_vectors(j["rays"], "/rays", f.lattice_rank);
  if (!j["max_cones"].is_array()) schema_error("/max_cones", "expected an array of index arrays");
  for (std::size_t i = 0; i < j["max_cones"].size(); ++i)
    f.max_cones.push_back(read_indices(j["max_cones"][i], child("/max_cones", i), f.rays.size()));
  return f;
}

std::optional<IntVector> fan_divisor_from_json(const json& j, std::size_t rays) {
  if (!j.contains("divisor")) return std::nullopt;
  const json& d = j["divisor"];
  expect_keys(d, "/divisor", {"rays", "coeffs"});
  if (read_size(d["rays"], "/divisor/rays") != rays)
    schema_error("/divisor/rays", "divisor must have one coefficient per ray (" + std::to_string(rays) + ")");
  return read_vector(d["coeffs"], "/divisor/coeffs", rays);
}

json divisor_to_json(const IntVector& d) { return {{"rays", d.size()}, {"coeffs", vec_json(d)}}; }

json algebra_to_json(const GradedMonoidAlgebra& r) {
  json grading = group_to_json(r.degree_group());
  grading["matrix"] = matrix_json(r.grading().matrix());
  return with_schema({{"monoid_generators", vecs_json(r.monoid().generators())},
                      {"grading", grading},
                      {"inverted", r.inverted()}});
}

GradedMonoidAlgebra algebra_from_json(const json& j) {
  expect_schema(j);
  expect_keys(j, "", {"schema", "monoid_generators", "grading"}, {"inverted", "ambient_rank"});
  const json& gens = j["monoid_generators"];
  if (!gens.is_array()) schema_error("/monoid_generators", "expected an array of integer arrays");
  std::optional<std::size_t> rank;
  if (j.contains("ambient_rank")) rank = read_size(j["ambient_rank"], "/ambient_rank");
  if (!rank && !gens.empty() && gens[0].is_array()) rank = gens[0].size();
  if (!rank) schema_error("/ambient_rank", "ambient_rank is required when there are no generators");
  const auto generators = read_vectors(gens, "/monoid_generators", *rank);

  const json& g = j["grading"];
  expect_keys(g, "/grading", {"free_rank", "torsion", "matrix"});
  json group_part{{"free_rank", g["free_rank"]}, {"torsion", g["torsion"]}};
  const FgAbelianGroup k = group_from_json(group_part, "/grading");
  const auto rows = read_vectors(g["matrix"], "/grading/matrix", *rank);
  if (rows.size() != k.dimension())
    schema_error("/grading/matrix", "matrix needs one row per coordinate of K (" + std::to_string(k.dimension()) + ")");
  IntMatrix m = IntMatrix::Zero(static_cast<Eigen::Index>(k.dimension()), static_cast<Eigen::Index>(*rank));
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();

  IndexSet inverted;
  if (j.contains("inverted")) inverted = read_indices(j["inverted"], "/inverted", generators.size());
  try {
    return GradedMonoidAlgebra(AffineMonoid(*rank, generators), GroupHom(FgAbelianGroup::free(*rank), k, m), inverted);
  } catch (const std::invalid_argument& e) {
    throw InputError("schema", std::string("invalid algebra: ") + e.what(), "/");
  }
}

json spec_to_json(const DivisorialAlgebraSpec& s) {
  return with_schema({{"lattice_rank", s.lattice_rank},
                      {"cone_rays", vecs_json(s.cone_rays)},
                      {"K", group_to_json(s.grading_group())},
                      {"phi", matrix_json(s.phi.matrix())}});
}

DivisorialAlgebraSpec spec_from_json(const json& j) {
  expect_schema(j);
  expect_keys(j, "", {"schema", "lattice_rank", "cone_rays", "K", "phi"});
  DivisorialAlgebraSpec s;
  s.lattice_rank = read_size(j["lattice_rank"], "/lattice_rank");
  s.cone_rays = read_vectors(j["cone_rays"], "/cone_rays", s.lattice_rank);
  const FgAbelianGroup k = group_from_json(j["K"], "/K");
  const auto rows = read_vectors(j["phi"], "/phi", k.dimension());
  if (rows.size() != s.cone_rays.size()) schema_error("/phi", "phi needs one row per cone ray");
  IntMatrix m = IntMatrix::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(k.dimension()));
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  try {
    s.phi = GroupHom(k, FgAbelianGroup::free(rows.size()), m);
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError("schema", std::string("invalid divisorial spec: ") + e.what(), "/");
  }
  return s;
}

json report_document(const VerificationReport& r, bool witnesses) {
  return with_schema({{"theorem", r.theorem}, {"pass", r.all_pass()}, {"report", to_json(r, witnesses)}});
}

VerificationReport report_from_json(const json& j) {
  expect_schema(j);
  expect_keys(j, "", {"schema", "theorem", "pass", "report"});
  if (!j["theorem"].is_string()) schema_error("/theorem", "expected a string");
  if (!j["pass"].is_boolean()) schema_error("/pass", "expected a boolean");
  if (!j["report"].is_array()) schema_error("/report", "expected an array");
  VerificationReport r{j["theorem"].get<std::string>(), {}};
  for (std::size_t i = 0; i < j["report"].size(); ++i) {
    const json& c = j["report"][i];
    const std::string p = child("/report", i);
    expect_keys(c, p, {"id", "pass", "statement"}, {"witness"});
    if (!c["id"].is_string()) schema_error(child(p, "id"), "expected a string");
    if (!c["pass"].is_boolean()) schema_error(child(p, "pass"), "expected a boolean");
    if (!c["statement"].is_string()) schema_error(child(p, "statement"), "expected a string");
    r.conditions.push_back(Condition{c["id"], c["statement"], c["pass"], c.value("witness", json::object())});
  }
  if (r.all_pass() != j["pass"].get<bool>()) schema_error("/pass", "pass flag disagrees with the entries");
  return r;
}

Box parse_box(const std::string& text, std::size_t dimension) {
  auto corner = [&](const std::string& part) {
    std::vector<long> values;
    std::stringstream ss(part);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      long v = 0;
      try {
        v = std::stol(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != item.size()) throw InputError("input", "--box: \"" + item + "\" is not an integer");
      values.push_back(v);
    }
    if (values.size() != dimension)
      throw InputError("input", "--box corners need " + std::to_string(dimension) + " coordinates");
    return to_vector(values);
  };
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("input", "--box expects lo:hi, e.g. -2,-2:2,2");
  Box b{corner(text.substr(0, colon)), corner(text.substr(colon + 1))};
  for (Eigen::Index i = 0; i < b.lo.size(); ++i)
    if (b.lo(i) > b.hi(i)) throw InputError("input", "--box: lower corner exceeds upper corner");
  return b;
}

// ---- DOT -------------------------------------------------------------------

std::string emit_dot(const Poset& p, const std::string& name) {
  std::vector<std::size_t> order(p.labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p.labels[a] < p.labels[b]; });
  std::vector<std::size_t> id(p.labels.size());
  for (std::size_t i = 0; i < order.size(); ++i) id[order[i]] = i;

  std::string out = "digraph " + name + " {\n";
  for (std::size_t i = 0; i < order.size(); ++i)
    out += "  n" + std::to_string(i) + " [label=\"" + escape(p.labels[order[i]]) + "\"];\n";
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& [lo, hi] : p.covers) edges.emplace_back(id.at(lo), id.at(hi));
  std::sort(edges.begin(), edges.end());
  for (const auto& [a, b] : edges) out += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
  return out + "}\n";
}

Poset spectrum_poset(const Spectrum& s) {
  Poset p;
  for (const auto& pt : s.points) p.labels.push_back(ideal_label(pt.ideal_generators));
  p.covers = s.covers;
  return p;
}

Poset f1_poset(const F1Scheme& s) {
  Poset p;
  for (const auto& pt : s.points) p.labels.push_back("cone " + index_label(pt.cone));
  const std::set<std::pair<std::size_t, std::size_t>> rel(s.specializations.begin(), s.specializations.end());
  for (const auto& [a, b] : s.specializations) {
    if (a == b) continue;
    bool covered = true;
    for (std::size_t c = 0; c < s.points.size() && covered; ++c)
      if (c != a && c != b && rel.count({a, c}) && rel.count({c, b})) covered = false;
    if (covered) p.covers.emplace_back(a, b);
  }
  return p;
}

// ---- run -------------------------------------------------------------------

RunResult run_on_text(const JobConfig& config, const std::string& text) {
  RunResult result;
  try {
    const json input = parse_json_text(text);
    Emitted e;
    switch (config.command) {
      case Command::clgroup: e = cmd_clgroup(config, input); break;
      case Command::coxring: e = cmd_coxring(config, input); break;
      case Command::kspec: e = cmd_kspec(config, input); break;
      case Command::orbits: e = cmd_orbits(config, input); break;
      case Command::charspace: e = cmd_charspace(config, input); break;
      case Command::verify: e = cmd_verify(config, input); break;
      case Command::reconstruct: e = cmd_reconstruct(config, input); break;
      case Command::sections: e = cmd_sections(config, input); break;
      case Command::divisor: e = cmd_divisor(config, input); break;
    }
    result.status = e.status;
    result.out = std::move(e.out);
  } catch (const InputError& e) {
    result.status = 2;
    result.err = error_text(e.to_json());
  } catch (const std::invalid_argument& e) {
    result.status = 2;
    result.err = error_text({{"kind", "input"}, {"message", e.what()}});
  } catch (const std::runtime_error& e) {
    result.status = 1;
    result.err = error_text({{"kind", "math"}, {"message", e.what()}});
  } catch (const std::exception& e) {
    result.status = 2;
    result.err = error_text({{"kind", "internal"}, {"message", e.what()}});
  }
  return result;
}

RunResult run(const JobConfig& config) {
  std::ifstream in(config.input, std::ios::binary);
  if (!in) {
    RunResult r;
    r.status = 2;
    r.err = error_text({{"kind", "input"}, {"message", "cannot read input file " + config.input}});
    return r;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return run_on_text(config, buffer.str());
}

}  // namespace coxkernel::cli
