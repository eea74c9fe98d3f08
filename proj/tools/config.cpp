#include "config.hpp"

#include "coendo/error.hpp"

#include <cstdio>
#include <fstream>
#include <set>

namespace coendo::cli {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ConfigError(where + ": unknown field '" + k + "'");
}

Int get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return j.get<Int>();
}

std::string get_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw ConfigError(where + ": expected a string");
  return j.get<std::string>();
}

IntVector get_vector(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of integers");
  IntVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = get_int(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

BigRational get_rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return BigRational(j.get<Int>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const auto slash = s.find('/');
    try {
      std::size_t used = 0;
      if (slash == std::string::npos) {
        Int a = std::stoll(s, &used);
        if (used == s.size()) return BigRational(a);
      } else {
        Int a = std::stoll(s.substr(0, slash), &used);
        if (used == slash) {
          const auto rest = s.substr(slash + 1);
          Int b = std::stoll(rest, &used);
          if (used == rest.size() && b != 0) return BigRational(a, b);
        }
      }
    } catch (const std::exception&) {
    }
  }
  throw ConfigError(where + ": expected an integer or a fraction string such as \"16/5\"");
}

json vector_json(const IntVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Config parse_config(const json& j) {
  Config c;
  if (j.is_null()) return c;
  check_keys(j, "config", {"format_version", "group", "q", "curve", "characters", "convention", "route", "caps"});
  if (j.contains("format_version") && get_int(j["format_version"], "format_version") != kFormatVersion)
    throw ConfigError("format_version: only version " + std::to_string(kFormatVersion) + " is supported");
  if (j.contains("group")) {
    const auto& g = j["group"];
    check_keys(g, "group", {"type", "lattice"});
    if (g.contains("type")) c.type = get_string(g["type"], "group.type");
    if (g.contains("lattice")) {
      const auto& l = g["lattice"];
      if (l.is_string()) {
        c.lattice = l.get<std::string>();
      } else if (l.is_object()) {
        check_keys(l, "group.lattice", {"basis"});
        if (!l.contains("basis") || !l["basis"].is_array() || l["basis"].empty())
          throw ConfigError("group.lattice.basis: expected a non-empty array of columns");
        const auto& cols = l["basis"];
        IntMatrix b(static_cast<Eigen::Index>(cols[0].size()), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t k = 0; k < cols.size(); ++k) {
          auto v = get_vector(cols[k], "group.lattice.basis[" + std::to_string(k) + "]");
          if (v.size() != b.rows()) throw ConfigError("group.lattice.basis: columns of unequal length");
          b.col(static_cast<Eigen::Index>(k)) = v;
        }
        c.basis = b;
        c.lattice = "custom";
      } else {
        throw ConfigError("group.lattice: expected \"sc\", \"ad\" or {\"basis\": [...]}");
      }
    }
  }
  if (j.contains("q")) c.q = get_int(j["q"], "q");
  if (j.contains("curve")) {
    const auto& cv = j["curve"];
    check_keys(cv, "curve", {"genus", "place_degrees"});
    if (cv.contains("genus")) c.curve.genus = static_cast<int>(get_int(cv["genus"], "curve.genus"));
    if (cv.contains("place_degrees")) {
      auto d = get_vector(cv["place_degrees"], "curve.place_degrees");
      c.curve.place_degrees.assign(d.data(), d.data() + d.size());
    }
  }
  if (j.contains("characters")) {
    const auto& ch = j["characters"];
    check_keys(ch, "characters", {"places"});
    if (!ch.contains("places") || !ch["places"].is_array()) throw ConfigError("characters.places: expected an array");
    for (std::size_t i = 0; i < ch["places"].size(); ++i) {
      const auto& p = ch["places"][i];
      const std::string where = "characters.places[" + std::to_string(i) + "]";
      check_keys(p, where, {"tag", "lambda"});
      if (!p.contains("tag") || !p.contains("lambda")) throw ConfigError(where + ": needs 'tag' and 'lambda'");
      c.spec.places.push_back({get_string(p["tag"], where + ".tag"), get_vector(p["lambda"], where + ".lambda")});
    }
    c.has_spec = true;
  }
  if (j.contains("convention")) c.convention = parse_convention(get_string(j["convention"], "convention"));
  if (j.contains("route")) {
    auto r = get_string(j["route"], "route");
    if (r != "enumerate" && r != "classify") throw ConfigError("route: expected enumerate or classify");
    c.route = r == "enumerate" ? Route::Enumerate : Route::Classify;
  }
  if (j.contains("caps")) {
    const auto& cp = j["caps"];
    check_keys(cp, "caps", {"weyl", "points", "tuples", "threads"});
    if (cp.contains("weyl")) c.caps.weyl = static_cast<std::size_t>(get_int(cp["weyl"], "caps.weyl"));
    if (cp.contains("points")) c.caps.points = static_cast<std::size_t>(get_int(cp["points"], "caps.points"));
    if (cp.contains("tuples")) c.caps.tuples = static_cast<std::size_t>(get_int(cp["tuples"], "caps.tuples"));
    if (cp.contains("threads")) c.caps.threads = static_cast<int>(get_int(cp["threads"], "caps.threads"));
  }
  return c;
}

Config load_config(const std::string& path) { return parse_config(read_json_file(path)); }

GroupDatum Config::datum() const {
  if (type.empty()) throw ConfigError("group.type is required (e.g. --type B2)");
  if (q < 2) throw ConfigError("q is required and must be a prime power (e.g. --q 5)");
  auto pp = prime_power(q);
  if (!pp) throw ConfigError("q = " + std::to_string(q) + " is not a prime power");
  if (basis) {
    auto rs = build_root_system(parse_factors(type));
    if (basis->rows() != rs.rank() || basis->cols() != rs.rank())
      throw ConfigError("group.lattice.basis: expected " + std::to_string(rs.rank()) + " columns of length " +
                        std::to_string(rs.rank()));
    Lattice l{*basis, "custom"};
    try {
      return GroupDatum(rs, l, pp->first);
    } catch (const Error& e) {
      throw ConfigError(std::string("group.lattice.basis: ") + e.what());
    }
  }
  return make_group(type, lattice, pp->first);
}

json Config::canonical() const {
  json j;
  j["format_version"] = kFormatVersion;
  j["group"]["type"] = type;
  if (basis) {
    json cols = json::array();
    for (Eigen::Index k = 0; k < basis->cols(); ++k) cols.push_back(vector_json(basis->col(k)));
    j["group"]["lattice"]["basis"] = cols;
  } else {
    j["group"]["lattice"] = lattice;
  }
  j["q"] = q;
  j["curve"]["genus"] = curve.genus;
  j["curve"]["place_degrees"] = curve.place_degrees;
  json places = json::array();
  for (auto& p : spec.places) places.push_back({{"tag", p.tag}, {"lambda", vector_json(p.lambda)}});
  j["characters"]["places"] = places;
  j["convention"] = convention_name(convention);
  j["route"] = route_name(route);
  j["caps"] = {{"weyl", caps.weyl}, {"points", caps.points}, {"tuples", caps.tuples}};
  return j;
}

std::string Config::hash() const { return fnv_hex(canonical().dump()); }

std::string fnv_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<ManifestEntry> parse_manifest(const json& j) {
  check_keys(j, "manifest", {"format_version", "entries"});
  if (j.contains("format_version") && get_int(j["format_version"], "manifest.format_version") != kFormatVersion)
    throw ConfigError("manifest.format_version: only version " + std::to_string(kFormatVersion) + " is supported");
  if (!j.contains("entries") || !j["entries"].is_array()) throw ConfigError("manifest.entries: expected an array");
  std::vector<ManifestEntry> out;
  for (std::size_t i = 0; i < j["entries"].size(); ++i) {
    const auto& e = j["entries"][i];
    const std::string where = "manifest.entries[" + std::to_string(i) + "]";
    check_keys(e, where, {"check", "group", "lattice", "q", "n", "samples"});
    ManifestEntry m;
    if (!e.contains("check") || !e.contains("group")) throw ConfigError(where + ": needs 'check' and 'group'");
    m.check = get_string(e["check"], where + ".check");
    if (m.check != "strata" && m.check != "bds" && m.check != "coefficients" && m.check != "field-extension")
      throw ConfigError(where + ".check: expected strata, bds, coefficients or field-extension");
    m.group = get_string(e["group"], where + ".group");
    if (e.contains("lattice")) m.lattice = get_string(e["lattice"], where + ".lattice");
    if (e.contains("q")) m.q = get_int(e["q"], where + ".q");
    if (e.contains("n")) m.n = static_cast<int>(get_int(e["n"], where + ".n"));
    if (e.contains("samples")) m.samples = static_cast<int>(get_int(e["samples"], where + ".samples"));
    if (m.check != "bds" && m.q < 2) throw ConfigError(where + ".q: required");
    out.push_back(m);
  }
  return out;
}

json manifest_json(const std::vector<ManifestEntry>& entries) {
  json a = json::array();
  for (auto& e : entries)
    a.push_back({{"check", e.check}, {"group", e.group}, {"lattice", e.lattice}, {"q", e.q}, {"n", e.n}, {"samples", e.samples}});
  return {{"format_version", kFormatVersion}, {"entries", a}};
}

CountMap parse_counts(const json& j) {
  check_keys(j, "counts", {"format_version", "rows"});
  if (!j.contains("rows") || !j["rows"].is_array()) throw ConfigError("counts.rows: expected an array");
  CountMap out;
  for (std::size_t i = 0; i < j["rows"].size(); ++i) {
    const auto& r = j["rows"][i];
    const std::string where = "counts.rows[" + std::to_string(i) + "]";
    check_keys(r, where, {"stratum", "orbit_rep", "count"});
    if (!r.contains("stratum") || !r.contains("count")) throw ConfigError(where + ": needs 'stratum' and 'count'");
    CountKey k{get_string(r["stratum"], where + ".stratum"),
               r.contains("orbit_rep") ? get_string(r["orbit_rep"], where + ".orbit_rep") : ""};
    out[k] = get_rational(r["count"], where + ".count");
  }
  return out;
}

}  // namespace coendo::cli
