#include "betahull/document.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "betahull/errors.hpp"
#include "json.hpp"

namespace betahull {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InputError((path.empty() ? std::string("document") : path) + ": " + what);
}

std::string child(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string child(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      fail(child(path, key), "unknown key");
  }
}

const json& require(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(child(path, key), "required");
  return *it;
}

Rational to_rational(const json& v, const std::string& path) {
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? parse_rational(std::to_string(v.get<std::uint64_t>()))
                                  : parse_rational(std::to_string(v.get<std::int64_t>()));
  }
  if (v.is_number_float()) fail(path, "floats are not allowed; use an integer or a \"p/q\" string");
  if (!v.is_string()) fail(path, "expected an integer or a \"p/q\" string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const InputError& e) {
    fail(path, e.what());
  }
}

long to_long(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<long>::max()))
    fail(path, "integer out of range");
  return v.get<long>();
}

std::uint64_t to_count(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected a nonnegative integer");
  if (!v.is_number_unsigned() && v.get<std::int64_t>() < 0) fail(path, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

bool to_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected true or false");
  return v.get<bool>();
}

Vector<Rational> to_vector(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array");
  Vector<Rational> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(to_rational(v[i], child(path, i)));
  return out;
}

DenseMatrix<Rational> parse_gram(const json& space, const std::string& path) {
  check_keys(space, path, {"gram"});
  const std::string gpath = child(path, "gram");
  const json& g = require(space, path, "gram");
  if (!g.is_array() || g.empty()) fail(gpath, "expected a non-empty array of rows");
  std::vector<Vector<Rational>> rows;
  for (std::size_t i = 0; i < g.size(); ++i) {
    rows.push_back(to_vector(g[i], child(gpath, i)));
    if (rows.back().size() != g.size()) fail(child(gpath, i), "gram matrix must be square");
  }
  DenseMatrix<Rational> m = DenseMatrix<Rational>::from_rows(rows);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (m(i, j) != m(j, i)) fail(gpath, "gram matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  return m;
}

std::vector<Vector<Rational>> parse_vectors(const json& v, const std::string& path, const std::size_t* dim) {
  if (!v.is_array()) fail(path, "expected an array of vectors");
  std::vector<Vector<Rational>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(to_vector(v[i], child(path, i)));
    if (dim && out.back().size() != *dim)
      fail(child(path, i), "length " + std::to_string(out.back().size()) + " does not match dim " + std::to_string(*dim));
  }
  return out;
}

void check_symmetric(const std::vector<Vector<Rational>>& classes, const std::string& path) {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    Vector<Rational> neg = classes[i];
    for (auto& c : neg) c = -c;
    if (std::find(classes.begin(), classes.end(), neg) == classes.end())
      fail(path, "configuration not centrally symmetric: class " + std::to_string(i) + " has no negative in the list");
  }
}

BuildingBlock parse_block(const json& b, const std::string& path) {
  if (!b.is_object()) fail(path, "expected an object");
  const json& kind = require(b, path, "kind");
  if (!kind.is_string()) fail(child(path, "kind"), "expected a string");
  const std::string k = kind.get<std::string>();
  auto count = [&]() -> std::size_t {
    auto it = b.find("count");
    if (it == b.end()) return 1;
    const std::uint64_t c = to_count(*it, child(path, "count"));
    if (c == 0) fail(child(path, "count"), "must be positive");
    return c;
  };
  BuildingBlock out;
  if (k == "general_type") {
    check_keys(b, path, {"kind", "c1sq", "chi", "tau", "b_plus", "h20_odd", "simply_connected", "count"});
    out = BuildingBlock::general_type(
        to_long(require(b, path, "c1sq"), child(path, "c1sq")), to_long(require(b, path, "chi"), child(path, "chi")),
        to_long(require(b, path, "tau"), child(path, "tau")), to_long(require(b, path, "b_plus"), child(path, "b_plus")),
        b.contains("h20_odd") ? to_bool(b["h20_odd"], child(path, "h20_odd")) : true,
        b.contains("simply_connected") ? to_bool(b["simply_connected"], child(path, "simply_connected")) : true, count());
  } else if (k == "cp2bar" || k == "k3" || k == "t4") {
    check_keys(b, path, {"kind", "count"});
    out = k == "cp2bar" ? BuildingBlock::cp2bar(count()) : k == "k3" ? BuildingBlock::k3(count()) : BuildingBlock::t4(count());
  } else if (k == "n_times_s1") {
    check_keys(b, path, {"kind", "b1", "count"});
    out = BuildingBlock::three_manifold_times_circle(to_long(require(b, path, "b1"), child(path, "b1")), count());
  } else {
    fail(child(path, "kind"), "unknown block kind '" + k + "'");
  }
  try {
    out.validate();
  } catch (const InputError& e) {
    fail(path, e.what());
  }
  return out;
}

ManifoldInput parse_manifold(const json& m, const std::string& path) {
  check_keys(m, path, {"sum", "ambient_extension"});
  ManifoldInput out;
  const json& sum = require(m, path, "sum");
  const std::string spath = child(path, "sum");
  if (!sum.is_array() || sum.empty()) fail(spath, "expected a non-empty array of blocks");
  for (std::size_t i = 0; i < sum.size(); ++i) out.sum.push_back(parse_block(sum[i], child(spath, i)));
  if (auto it = m.find("ambient_extension"); it != m.end()) {
    const std::string epath = child(path, "ambient_extension");
    check_keys(*it, epath, {"extra_plus", "extra_minus"});
    AmbientExtension ext;
    if (it->contains("extra_plus")) ext.extra_plus = to_count((*it)["extra_plus"], child(epath, "extra_plus"));
    if (it->contains("extra_minus")) ext.extra_minus = to_count((*it)["extra_minus"], child(epath, "extra_minus"));
    out.ambient_extension = ext;
  }
  return out;
}

DocumentOptions parse_options(const json& o, const std::string& path) {
  check_keys(o, path, {"mode", "samples", "seed", "starts", "cap", "tol"});
  DocumentOptions out;
  if (auto it = o.find("mode"); it != o.end()) {
    if (!it->is_string()) fail(child(path, "mode"), "expected a string");
    const std::string m = it->get<std::string>();
    if (m != "beta" && m != "alpha" && m != "both") fail(child(path, "mode"), "expected beta, alpha or both");
    out.mode = m;
  }
  if (auto it = o.find("samples"); it != o.end()) out.samples = to_count(*it, child(path, "samples"));
  if (auto it = o.find("seed"); it != o.end()) out.seed = to_count(*it, child(path, "seed"));
  if (auto it = o.find("starts"); it != o.end()) out.starts = to_count(*it, child(path, "starts"));
  if (auto it = o.find("cap"); it != o.end()) out.cap = to_count(*it, child(path, "cap"));
  if (auto it = o.find("tol"); it != o.end()) {
    out.tol = to_rational(*it, child(path, "tol"));
    if (sgn(*out.tol) <= 0) fail(child(path, "tol"), "must be positive");
  }
  return out;
}

// Rejects duplicate keys, which the parser would otherwise silently merge.
struct DuplicateKeyGuard {
  std::vector<std::set<std::string>> seen;
  std::string duplicate;

  bool operator()(int depth, json::parse_event_t event, json& parsed) {
    (void)depth;
    switch (event) {
      case json::parse_event_t::object_start: seen.emplace_back(); break;
      case json::parse_event_t::object_end: seen.pop_back(); break;
      case json::parse_event_t::key:
        if (!seen.back().insert(parsed.get<std::string>()).second && duplicate.empty())
          duplicate = parsed.get<std::string>();
        break;
      default: break;
    }
    return true;
  }
};

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json rational_json(const Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) return r.get_num().get_si();
  return to_string(r);
}

json vector_json(const Vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rational_json(x));
  return a;
}

json gram_json(const DenseMatrix<Rational>& g) {
  json rows = json::array();
  for (std::size_t i = 0; i < g.rows(); ++i) rows.push_back(vector_json(g.row(i)));
  return json{{"gram", rows}};
}

}  // namespace

InputDocument parse_input_text(const std::string& text, const ParseOptions& options) {
  json root;
  DuplicateKeyGuard guard;
  try {
    root = json::parse(text, std::ref(guard));
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw InputError(line_column(text, e.byte) + ": " + what);
  }
  if (!guard.duplicate.empty()) fail(guard.duplicate, "duplicate key");
  if (!root.is_object()) fail("", "top level must be an object");
  check_keys(root, "", {"space", "classes", "zonotope", "manifold", "options"});

  const bool has_classes = root.contains("classes");
  const bool has_zonotope = root.contains("zonotope");
  const bool has_manifold = root.contains("manifold");
  if (has_classes + has_zonotope + has_manifold != 1)
    fail("", "exactly one of 'classes', 'zonotope' or 'manifold' is required");

  InputDocument doc;
  if (has_manifold) {
    if (root.contains("space")) fail("space", "not allowed with 'manifold'");
    doc.body = parse_manifold(root["manifold"], "manifold");
  } else if (has_classes) {
    auto classes = parse_vectors(root["classes"], "classes", nullptr);
    if (!options.allow_asymmetric) check_symmetric(classes, "classes");
    if (!root.contains("space")) fail("space", "required");
    ExplicitInput in;
    in.gram = parse_gram(root["space"], "space");
    for (std::size_t i = 0; i < classes.size(); ++i)
      if (classes[i].size() != in.gram.rows())
        fail(child(std::string("classes"), i), "length " + std::to_string(classes[i].size()) + " does not match dim " +
                                                   std::to_string(in.gram.rows()));
    in.classes = std::move(classes);
    doc.body = std::move(in);
  } else {
    if (!root.contains("space")) fail("space", "required");
    ZonotopeInput in;
    in.gram = parse_gram(root["space"], "space");
    const json& z = root["zonotope"];
    check_keys(z, "zonotope", {"base"});
    const std::size_t dim = in.gram.rows();
    in.base = parse_vectors(require(z, "zonotope", "base"), "zonotope.base", &dim);
    doc.body = std::move(in);
  }
  if (root.contains("options")) doc.options = parse_options(root["options"], "options");
  return doc;
}

InputDocument parse_input_file(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_input_text(ss.str(), options);
}

std::string serialize_input(const InputDocument& doc) {
  json root = json::object();
  if (const auto* e = std::get_if<ExplicitInput>(&doc.body)) {
    root["space"] = gram_json(e->gram);
    root["classes"] = json::array();
    for (const auto& c : e->classes) root["classes"].push_back(vector_json(c));
  } else if (const auto* z = std::get_if<ZonotopeInput>(&doc.body)) {
    root["space"] = gram_json(z->gram);
    json base = json::array();
    for (const auto& c : z->base) base.push_back(vector_json(c));
    root["zonotope"] = json{{"base", base}};
  } else {
    const auto& m = std::get<ManifoldInput>(doc.body);
    json sum = json::array();
    for (const auto& b : m.sum) {
      json j{{"kind", to_string(b.kind)}, {"count", b.multiplicity}};
      if (b.kind == BlockKind::GeneralType) {
        j["c1sq"] = b.c1sq;
        j["chi"] = b.chi;
        j["tau"] = b.tau;
        j["b_plus"] = b.b_plus;
        j["h20_odd"] = b.h20_odd;
        j["simply_connected"] = b.simply_connected;
      } else if (b.kind == BlockKind::ThreeManifoldTimesCircle) {
        j["b1"] = b.b1;
      }
      sum.push_back(j);
    }
    json manifold{{"sum", sum}};
    if (m.ambient_extension)
      manifold["ambient_extension"] = json{{"extra_plus", m.ambient_extension->extra_plus},
                                           {"extra_minus", m.ambient_extension->extra_minus}};
    root["manifold"] = manifold;
  }
  const auto& o = doc.options;
  json opts = json::object();
  if (o.mode) opts["mode"] = *o.mode;
  if (o.samples) opts["samples"] = *o.samples;
  if (o.seed) opts["seed"] = *o.seed;
  if (o.starts) opts["starts"] = *o.starts;
  if (o.cap) opts["cap"] = *o.cap;
  if (o.tol) opts["tol"] = rational_json(*o.tol);
  if (!opts.empty()) root["options"] = opts;
  return root.dump();
}

std::string input_digest(const InputDocument& doc) {
  const std::string text = serialize_input(doc);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

}  // namespace betahull
