#include "config.hpp"

#include "coendo/error.hpp"
#include "coendo/torus.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace coendo;
using namespace coendo::cli;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kComputation = 1, kConfig = 2, kOracle = 3 };

struct Options {
  std::string config_path;
  std::string type, lattice, route, convention, format = "text";
  Int q = 0;
  int threads = 0;
  int genus = -1;
  std::vector<int> place_degrees;
  std::size_t cap_weyl = 0, cap_points = 0, cap_tuples = 0;
  bool approx = false;
  std::string counts_path;
  std::string manifest = "default";
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config_path, "JSON config file");
  cmd->add_option("--type", o.type, "root system, e.g. B2 or A1xA2");
  cmd->add_option("--lattice", o.lattice, "sc or ad");
  cmd->add_option("--q", o.q, "field size");
  cmd->add_option("--route", o.route, "strata route: classify or enumerate");
  cmd->add_option("--convention", o.convention, "uniform-inverse, literal-537 or resultat");
  cmd->add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--threads", o.threads, "worker threads");
  cmd->add_option("--cap-weyl", o.cap_weyl, "largest Weyl group to enumerate");
  cmd->add_option("--cap-points", o.cap_points, "largest torus to enumerate");
  cmd->add_option("--cap-tuples", o.cap_tuples, "largest coset tuple space per stratum");
}

void add_curve(CLI::App* cmd, Options& o) {
  cmd->add_option("--genus", o.genus, "genus of the curve");
  cmd->add_option("--place-degrees", o.place_degrees, "degrees of the places in S, infinity first");
}

Config resolve(const Options& o) {
  Config c = o.config_path.empty() ? Config{} : load_config(o.config_path);
  if (!o.type.empty()) c.type = o.type;
  if (!o.lattice.empty()) {
    c.lattice = o.lattice;
    c.basis.reset();
  }
  if (o.q != 0) c.q = o.q;
  if (!o.route.empty()) {
    if (o.route != "enumerate" && o.route != "classify") throw ConfigError("--route: expected enumerate or classify");
    c.route = o.route == "enumerate" ? Route::Enumerate : Route::Classify;
  }
  if (!o.convention.empty()) c.convention = parse_convention(o.convention);
  if (o.threads > 0) c.caps.threads = o.threads;
  if (o.cap_weyl) c.caps.weyl = o.cap_weyl;
  if (o.cap_points) c.caps.points = o.cap_points;
  if (o.cap_tuples) c.caps.tuples = o.cap_tuples;
  if (o.genus >= 0) c.curve.genus = o.genus;
  if (!o.place_degrees.empty()) c.curve.place_degrees = o.place_degrees;
  c.spec.q = c.q;
  return c;
}

/// The character spec, or the trivial one with `places` places when none was given.
void default_spec(Config& c, const GroupDatum& g, int places) {
  if (!c.has_spec) {
    c.spec.places.clear();
    for (int i = 0; i < places; ++i)
      c.spec.places.push_back({i == 0 ? "inf" : "v" + std::to_string(i), IntVector::Zero(g.rank())});
  }
  c.spec.q = c.q;
  c.spec.validate(g);
}

std::string vec_str(const IntVector& v, const char* sep = " ") {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v(i));
  return s;
}

template <class T>
std::string join(const std::vector<T>& xs, const char* sep) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? sep : "") << xs[i];
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string s;
  for (std::size_t i = 0; i < fields.size(); ++i) s += (i ? "," : "") + csv_field(fields[i]);
  return s + "\n";
}

json surd_json(const SurdValue& v) { return {{"a", v.a.str()}, {"b", v.b.str()}, {"q", v.q}, {"value", v.str()}}; }

/// Header shared by every report.
struct Report {
  std::string command;
  std::string hash;
  std::string convention;
  json body;            ///< json format
  std::string csv;      ///< rows after the header line
  std::string text;

  void print(const std::string& format, std::ostream& os) const {
    if (format == "json") {
      json j = body;
      j["command"] = command;
      j["config_hash"] = hash;
      j["convention"] = convention;
      j["format_version"] = kFormatVersion;
      os << j.dump(2) << "\n";
    } else if (format == "csv") {
      os << "# format_version=" << kFormatVersion << " command=" << command << " config_hash=" << hash
         << " convention=" << convention << "\n"
         << csv;
    } else {
      os << command << " (format_version " << kFormatVersion << ", config " << hash << ", convention " << convention
         << ")\n"
         << text;
    }
  }
};

Report begin(const std::string& command, const Config& c) {
  Report r;
  r.command = command;
  r.hash = c.hash();
  r.convention = convention_name(c.convention);
  r.body["config"] = c.canonical();
  return r;
}

int cmd_classify(const Options& o) {
  Config c = resolve(o);
  auto g = c.datum();
  auto classes = classify(g, c.q);
  Report r = begin("classify", c);
  std::ostringstream text;
  r.csv = csv_row({"index", "type", "deleted", "labels", "whole_group", "rational", "maximal", "t"});
  json rows = json::array();
  int rational_proper = 0;
  text << g.describe() << " over F_" << c.q << "\n";
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& k = classes[i];
    std::vector<int> deleted;
    for (int d : k.cls.deleted)
      if (d >= 0) deleted.push_back(d + 1);
    const std::string t = "(" + vec_str(k.cls.rep_numerator, ",") + ")/" + std::to_string(k.cls.rep_denominator);
    const bool whole = k.cls.whole_group();
    if (!whole && k.rational) ++rational_proper;
    rows.push_back({{"index", i},
                    {"type", k.cls.type},
                    {"deleted", deleted},
                    {"labels", k.cls.labels},
                    {"whole_group", whole},
                    {"rational", k.rational},
                    {"maximal", k.maximal},
                    {"t", t}});
    r.csv += csv_row({std::to_string(i), k.cls.type, join(deleted, " "), join(k.cls.labels, " "), whole ? "1" : "0",
                      k.rational ? "1" : "0", k.maximal ? "1" : "0", t});
    text << "  " << (whole ? std::string("G") : "nodes " + join(deleted, " ")) << "  " << k.cls.type
         << "  labels " << join(k.cls.labels, " ") << "  t = " << t << (k.rational ? "  rational" : "  not rational")
         << (k.maximal ? "  maximal" : "") << "\n";
  }
  r.body["classes"] = rows;
  r.body["rational_proper_classes"] = rational_proper;
  if (rational_proper == 0)
    text << "rational proper classes: none\n";
  else
    text << "rational proper classes: " << rational_proper << "\n";
  r.text = text.str();
  r.print(o.format, std::cout);
  return kOk;
}

int cmd_strata(const Options& o) {
  Config c = resolve(o);
  auto g = c.datum();
  auto w = WeylGroup::generate(g.roots(), c.caps.weyl);
  auto poset = strata_poset(g, w, c.q, c.route, c.caps);
  Report r = begin("strata", c);
  std::ostringstream text;
  r.csv = csv_row({"index", "type", "phi", "w_iota_order", "z_order", "z_invariants", "s_count", "orbit",
                   "orbit_representative"});
  json rows = json::array();
  text << g.describe() << " over F_" << c.q << ", route " << route_name(c.route) << ", " << poset.size()
       << " strata in " << poset.orbits.size() << " W-orbits\n";
  for (std::size_t i = 0; i < poset.size(); ++i) {
    const auto& s = poset.strata[i];
    const bool rep = poset.orbits[s.orbit].representative == static_cast<int>(i);
    std::vector<int> above;
    for (std::size_t b = 0; b < poset.size(); ++b)
      if (b != i && poset.leq(static_cast<int>(i), static_cast<int>(b))) above.push_back(static_cast<int>(b));
    rows.push_back({{"index", i},
                    {"type", s.type},
                    {"phi", s.phi.hex()},
                    {"w_iota_order", s.w_iota_order},
                    {"z_order", s.z_points.order()},
                    {"z_invariants", s.z_points.invariants()},
                    {"s_count", s.s_count},
                    {"orbit", s.orbit},
                    {"orbit_representative", rep},
                    {"above", above}});
    r.csv += csv_row({std::to_string(i), s.type, s.phi.hex(), std::to_string(s.w_iota_order),
                      std::to_string(s.z_points.order()), join(s.z_points.invariants(), " "),
                      std::to_string(s.s_count), std::to_string(s.orbit), rep ? "1" : "0"});
    text << "  [" << i << "] " << s.type << "  phi " << s.phi.hex() << "  |Z(F_q)| " << s.z_points.order()
         << "  |S| " << s.s_count << "  orbit " << s.orbit << (rep ? " (rep)" : "") << "\n";
  }
  r.body["strata"] = rows;
  r.body["route"] = route_name(c.route);
  r.body["warnings"] = poset.warnings;
  for (auto& wmsg : poset.warnings) text << "warning: " << wmsg << "\n";
  r.text = text.str();
  r.print(o.format, std::cout);
  return kOk;
}

int cmd_coeffs(const Options& o) {
  Config c = resolve(o);
  auto g = c.datum();
  default_spec(c, g, 1);
  auto w = WeylGroup::generate(g.roots(), c.caps.weyl);
  auto poset = strata_poset(g, w, c.q, c.route, c.caps);
  auto table = n_table(g, w, poset, c.spec, c.convention, c.caps);
  const bool central = central_product_test(c.spec, g, c.q);
  const auto bound = bound_constant(g, static_cast<int>(c.spec.places.size()));
  Report r = begin("coeffs", c);
  std::ostringstream text;
  r.csv = csv_row({"key", "stratum_type", "stratum", "gamma", "orbit_size", "n"});
  json rows = json::array();
  text << g.describe() << " over F_" << c.q << ", " << "places " << c.spec.places.size() << ", central product test "
       << (central ? "passes" : "fails") << "\n";
  for (const auto& row : table.rows) {
    const auto gamma = join(row.gamma_words, " ");
    rows.push_back({{"key", row.key()},
                    {"stratum_type", row.stratum_type},
                    {"stratum", row.stratum_key},
                    {"gamma", row.gamma_words},
                    {"orbit_size", row.orbit_size},
                    {"n", row.n}});
    r.csv += csv_row({row.key(), row.stratum_type, row.stratum_key, gamma, std::to_string(row.orbit_size),
                      std::to_string(row.n)});
    text << "  " << row.stratum_type << "  " << row.stratum_key << "  gamma [" << gamma << "]  x" << row.orbit_size
         << "  n = " << row.n << "\n";
  }
  json strata = json::array();
  for (const auto& s : table.strata)
    strata.push_back({{"index", s.stratum},
                      {"type", s.type},
                      {"w_iota_order", s.w_iota_order},
                      {"c_w_order", s.c_w_order},
                      {"num_cosets", s.num_cosets},
                      {"num_orbits", s.num_orbits},
                      {"s_count", s.s_count}});
  r.body["rows"] = rows;
  r.body["strata"] = strata;
  r.body["central_product_test"] = central;
  r.body["abs_sum"] = table.abs_sum().str();
  r.body["bound_constant"] = bound.str();
  text << "sum |n| = " << table.abs_sum() << " <= " << bound << "\n";
  r.text = text.str();
  r.print(o.format, std::cout);
  return kOk;
}

int cmd_predict(const Options& o) {
  Config c = resolve(o);
  if (!o.approx && o.counts_path.empty()) throw ConfigError("predict needs --counts FILE or --approx");
  c.curve.validate();
  auto g = c.datum();
  const int places = static_cast<int>(c.curve.place_degrees.size());
  default_spec(c, g, places);
  if (static_cast<int>(c.spec.places.size()) != places)
    throw ConfigError("characters.places: " + std::to_string(c.spec.places.size()) + " places but curve.place_degrees has " +
                      std::to_string(places));
  std::optional<CountMap> counts;
  if (!o.approx) counts = parse_counts(read_json_file(o.counts_path));
  auto w = WeylGroup::generate(g.roots(), c.caps.weyl);
  auto poset = strata_poset(g, w, c.q, c.route, c.caps);
  auto table = n_table(g, w, poset, c.spec, c.convention, c.caps);
  auto rep = assemble_prediction(g, poset, table, c.curve, counts);

  Report r = begin("predict", c);
  std::ostringstream text;
  r.csv = csv_row({"key", "stratum_type", "orbit_rep", "n", "exponent", "pi1", "count", "contribution"});
  json rows = json::array();
  for (const auto& row : rep.rows) {
    rows.push_back({{"key", row.key},
                    {"stratum_type", row.stratum_type},
                    {"orbit_rep", row.orbit_rep},
                    {"n", row.n},
                    {"exponent", row.exponent.str()},
                    {"pi1", row.pi1},
                    {"count", row.count_value.str()},
                    {"contribution", surd_json(row.contribution)}});
    r.csv += csv_row({row.key, row.stratum_type, row.orbit_rep, std::to_string(row.n), row.exponent.str(),
                      std::to_string(row.pi1), row.count_value.str(), row.contribution.str()});
    text << "  " << row.stratum_type << "  [" << row.orbit_rep << "]  n = " << row.n << "  N_H = " << row.exponent
         << "  count " << row.count_value.str() << "  -> " << row.contribution.str() << "\n";
  }
  const auto& lt = rep.leading;
  r.body["rows"] = rows;
  r.body["total"] = surd_json(rep.total);
  r.body["approximate"] = rep.approximate;
  r.body["error_order"] = rep.error_order;
  r.body["hypothesis_ok"] = rep.hypothesis_ok;
  r.body["caveats"] = rep.caveats;
  r.body["dims"] = {{"dim_m", rep.dims.dim_m}, {"dim_r", rep.dims.dim_r}, {"dim_a", rep.dims.dim_a.str()}};
  r.body["exponent"] = rep.exponent.str();
  r.body["leading_term"] = {{"center_order", lt.center_order},
                            {"pi1", lt.pi1},
                            {"exponent", lt.exponent.str()},
                            {"value", surd_json(lt.value)},
                            {"integral", lt.integral}};
  text << "dim M = " << rep.dims.dim_m << ", dim R = " << rep.dims.dim_r << ", dim A = " << rep.dims.dim_a
       << ", N = " << rep.exponent << "\n"
       << "leading term |Z(F_q)| |pi_1| q^N = " << lt.center_order << " * " << lt.pi1 << " * " << c.q << "^"
       << lt.exponent << " = " << lt.value.str() << "\n"
       << "sum of row contributions = " << rep.total.str() << (rep.approximate ? " (approximation)" : "") << "\n";
  if (!rep.error_order.empty()) text << "error term " << rep.error_order << "\n";
  for (auto& cv : rep.caveats) text << "caveat: " << cv << "\n";
  r.text = text.str();
  r.print(o.format, std::cout);
  return kOk;
}

int cmd_verify(const Options& o) {
  std::vector<ManifestEntry> entries =
      o.manifest == "default" ? default_manifest() : parse_manifest(read_json_file(o.manifest));
  Caps caps;
  if (o.threads > 0) caps.threads = o.threads;
  if (o.cap_weyl) caps.weyl = o.cap_weyl;
  if (o.cap_points) caps.points = o.cap_points;
  if (o.cap_tuples) caps.tuples = o.cap_tuples;
  json manifest = manifest_json(entries);
  manifest["caps"] = {{"weyl", caps.weyl}, {"points", caps.points}, {"tuples", caps.tuples}};
  auto verdicts = run_manifest(entries, caps);

  Report r;
  r.command = "verify";
  r.hash = fnv_hex(manifest.dump());
  r.convention = convention_name(Convention::UniformInverse);
  r.body["manifest"] = manifest;
  r.csv = csv_row({"check", "instance", "status", "witness", "notes"});
  std::ostringstream text;
  json records = json::array();
  int pass = 0, fail = 0, skip = 0;
  for (const auto& v : verdicts) {
    const auto status = v.status();
    (status == "PASS" ? pass : status == "FAIL" ? fail : skip)++;
    records.push_back(
        {{"check", v.check}, {"instance", v.instance}, {"status", status}, {"witness", v.witness}, {"notes", v.notes}});
    r.csv += csv_row({v.check, v.instance, status, v.witness, join(v.notes, "; ")});
    text << status << "  " << v.instance;
    if (!v.witness.empty()) text << "  -- " << v.witness;
    text << "\n";
  }
  r.body["verdicts"] = records;
  r.body["summary"] = {{"pass", pass}, {"fail", fail}, {"skip", skip}};
  text << pass << " passed, " << fail << " failed, " << skip << " skipped\n";
  r.text = text.str();
  r.print(o.format, std::cout);
  return fail ? kOracle : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coendoscopic strata, coefficients and predictions for split semisimple groups over F_q"};
  app.require_subcommand(1);
  Options o;
  auto* classify_cmd = app.add_subcommand("classify", "elliptic classes and their rationality");
  auto* strata_cmd = app.add_subcommand("strata", "strata poset of T(F_q)");
  auto* coeffs_cmd = app.add_subcommand("coeffs", "coefficient table n");
  auto* predict_cmd = app.add_subcommand("predict", "assembled prediction");
  auto* verify_cmd = app.add_subcommand("verify", "run the oracle manifest");
  for (auto* cmd : {classify_cmd, strata_cmd, coeffs_cmd, predict_cmd}) add_common(cmd, o);
  add_curve(predict_cmd, o);
  predict_cmd->add_flag("--approx", o.approx, "use |pi_1(H)| q^{N_H} for every count");
  predict_cmd->add_option("--counts", o.counts_path, "JSON file of point counts");
  verify_cmd->add_option("--manifest", o.manifest, "\"default\" or a manifest JSON file");
  verify_cmd->add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  verify_cmd->add_option("--threads", o.threads, "worker threads");
  verify_cmd->add_option("--cap-weyl", o.cap_weyl, "largest Weyl group to enumerate");
  verify_cmd->add_option("--cap-points", o.cap_points, "largest torus to enumerate");
  verify_cmd->add_option("--cap-tuples", o.cap_tuples, "largest coset tuple space per stratum");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*classify_cmd) return cmd_classify(o);
    if (*strata_cmd) return cmd_strata(o);
    if (*coeffs_cmd) return cmd_coeffs(o);
    if (*predict_cmd) return cmd_predict(o);
    return cmd_verify(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const IllegalType& e) {
    std::cerr << "config error: illegal type: " << e.what() << "\n";
    return kConfig;
  } catch (const InvalidDatum& e) {
    std::cerr << "config error: invalid datum: " << e.what() << "\n";
    return kConfig;
  } catch (const NotASublattice& e) {
    std::cerr << "config error: not a sublattice: " << e.what() << "\n";
    return kConfig;
  } catch (const NotFullRank& e) {
    std::cerr << "config error: not full rank: " << e.what() << "\n";
    return kConfig;
  } catch (const BadCharacteristic& e) {
    std::cerr << "config error: bad characteristic: " << e.what() << "\n";
    return kConfig;
  } catch (const MissingCount& e) {
    std::cerr << "config error: missing count: " << e.what() << "\n";
    return kConfig;
  } catch (const CapExceeded& e) {
    std::cerr << "error: cap exceeded: " << e.what() << "\n";
    return kComputation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kComputation;
  }
}
