#pragma once

// JSON instance documents and the command dispatcher behind the `kelley`
// executable. Kept in the library so tests can drive it in-process.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kelley/kelley.hpp"

namespace kelley::cli {

using Json = nlohmann::ordered_json;

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{
      "intersection",   "intersection-pi", "intersection-ideal", "intersection-order", "game",
      "threshold",      "decompose-verify", "synthesize",        "normalize",          "modulus",
      "ideal-repr",     "dominate",        "mstar",              "hs-subset",          "norming",
      "ranking-compare", "ranking-axioms", "ranking-represent",  "verify"};
  return names;
}

struct IdealSection {
  std::optional<Ideal> principal;               ///< from "generators"
  std::optional<std::vector<Subset>> members;   ///< from "members", unvalidated
};

struct OrderSection {
  std::string backing;  ///< "measure" or "ideal"
  std::optional<SimpleFunction> f, g;
};

struct Instance {
  std::optional<GroundSet> ground;
  std::optional<SetSystem> sets;
  /// For each family member after duplicate removal, its first index in "sets".
  std::vector<std::size_t> set_input_index;
  std::optional<Measure> measure;
  std::optional<std::vector<Measure>> measures;
  std::optional<IdealSection> ideal;
  std::optional<VertexFunctional> functional;
  std::optional<std::vector<SetSystem>> families;
  std::optional<OrderSection> order;
  std::optional<SimpleFunction> function;
  std::optional<RationalMatrix> matrix;
};

namespace detail {

[[noreturn]] inline void schema(const std::string& what) { throw Error(ErrorKind::SchemaError, what); }

inline void allow_keys(const Json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  if (!obj.is_object()) schema(where + " must be an object");
  for (const auto& [k, v] : obj.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; })) {
      schema("unknown key \"" + k + "\" in " + where);
    }
  }
}

inline Rational rational(const Json& v, const std::string& where) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.dump());
  schema(where + ": bad rational " + v.dump() + " (use a \"p/q\" string)");
}

inline Subset subset(const GroundSet& ground, const Json& v, const std::string& where) {
  if (!v.is_array()) schema(where + " must be a list of labels");
  std::vector<std::string> labels;
  for (const auto& l : v) {
    if (!l.is_string()) schema(where + ": labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  return ground.subset(labels);
}

inline std::vector<Subset> subsets(const GroundSet& ground, const Json& v, const std::string& where) {
  if (!v.is_array()) schema(where + " must be a list of sets");
  std::vector<Subset> out;
  for (const auto& s : v) out.push_back(subset(ground, s, where));
  return out;
}

// Labels not mentioned get mass 0.
inline Measure measure(const GroundSet& ground, const Json& v, const std::string& where) {
  if (!v.is_object()) schema(where + " must map labels to rationals");
  std::vector<Rational> mass(ground.size(), 0);
  for (const auto& [label, value] : v.items()) {
    auto i = ground.index_of(label);
    if (!i) schema(where + ": unknown label \"" + label + "\"");
    mass[*i] = rational(value, where);
  }
  return Measure(ground, std::move(mass));
}

inline std::vector<Measure> measures(const GroundSet& ground, const Json& v, const std::string& where) {
  if (!v.is_array()) schema(where + " must be a list of measures");
  std::vector<Measure> out;
  for (const auto& m : v) out.push_back(measure(ground, m, where));
  return out;
}

// Every atom must be assigned.
inline SimpleFunction function(const GroundSet& ground, const Json& v, const std::string& where) {
  if (!v.is_object()) schema(where + " must map labels to rationals");
  std::vector<std::optional<Rational>> vals(ground.size());
  for (const auto& [label, value] : v.items()) {
    auto i = ground.index_of(label);
    if (!i) schema(where + ": unknown label \"" + label + "\"");
    vals[*i] = rational(value, where);
  }
  std::vector<Rational> out;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!vals[i]) schema(where + ": no value for atom \"" + ground.label(i) + "\"");
    out.push_back(*vals[i]);
  }
  return SimpleFunction(ground, std::move(out));
}

}  // namespace detail

/// Validates a JSON instance document. Throws ParseError on malformed JSON
/// and SchemaError on unknown keys, bad rationals or unknown labels.
inline Instance parse_instance(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  detail::allow_keys(doc, {"ground", "sets", "measure", "measures", "ideal", "functional", "families", "order", "function", "matrix"},
                     "instance");
  Instance inst;

  if (doc.contains("matrix")) {
    const Json& m = doc["matrix"];
    if (!m.is_array() || m.empty()) detail::schema("matrix must be a nonempty list of rows");
    RationalMatrix rows;
    for (const auto& row : m) {
      if (!row.is_array() || row.empty()) detail::schema("matrix rows must be nonempty lists");
      std::vector<Rational> r;
      for (const auto& e : row) r.push_back(detail::rational(e, "matrix"));
      if (!rows.empty() && r.size() != rows.front().size()) detail::schema("matrix is not rectangular");
      rows.push_back(std::move(r));
    }
    inst.matrix = std::move(rows);
  }

  if (!doc.contains("ground")) {
    for (const char* k : {"sets", "measure", "measures", "ideal", "functional", "families", "order", "function"}) {
      if (doc.contains(k)) detail::schema(std::string("\"") + k + "\" requires \"ground\"");
    }
    return inst;
  }
  const Json& g = doc["ground"];
  if (!g.is_array()) detail::schema("ground must be a list of labels");
  std::vector<std::string> labels;
  for (const auto& l : g) {
    if (!l.is_string()) detail::schema("ground labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  inst.ground = GroundSet(std::move(labels));
  const GroundSet& ground = *inst.ground;

  if (doc.contains("sets")) {
    std::vector<Subset> raw = detail::subsets(ground, doc["sets"], "sets");
    inst.sets = SetSystem(ground, raw);
    for (Subset s : inst.sets->family()) {
      inst.set_input_index.push_back(static_cast<std::size_t>(std::find(raw.begin(), raw.end(), s) - raw.begin()));
    }
  }
  if (doc.contains("measure")) inst.measure = detail::measure(ground, doc["measure"], "measure");
  if (doc.contains("measures")) inst.measures = detail::measures(ground, doc["measures"], "measures");
  if (doc.contains("ideal")) {
    const Json& i = doc["ideal"];
    detail::allow_keys(i, {"generators", "members"}, "ideal");
    if (i.contains("generators") == i.contains("members")) detail::schema("ideal needs exactly one of \"generators\" or \"members\"");
    IdealSection sec;
    if (i.contains("generators")) {
      Subset top;
      for (Subset s : detail::subsets(ground, i["generators"], "ideal.generators")) top = top | s;
      sec.principal = Ideal(ground, top);
    } else {
      sec.members = detail::subsets(ground, i["members"], "ideal.members");
    }
    inst.ideal = std::move(sec);
  }
  if (doc.contains("functional")) {
    detail::allow_keys(doc["functional"], {"vertices"}, "functional");
    if (!doc["functional"].contains("vertices")) detail::schema("functional needs \"vertices\"");
    inst.functional = VertexFunctional(ground, detail::measures(ground, doc["functional"]["vertices"], "functional.vertices"));
  }
  if (doc.contains("families")) {
    const Json& fs = doc["families"];
    if (!fs.is_array()) detail::schema("families must be a list of set lists");
    std::vector<SetSystem> fams;
    for (const auto& f : fs) fams.emplace_back(ground, detail::subsets(ground, f, "families"));
    inst.families = std::move(fams);
  }
  if (doc.contains("order")) {
    const Json& o = doc["order"];
    detail::allow_keys(o, {"backing", "f", "g"}, "order");
    OrderSection sec;
    sec.backing = o.value("backing", std::string("measure"));
    if (sec.backing != "measure" && sec.backing != "ideal") detail::schema("order.backing must be \"measure\" or \"ideal\"");
    if (o.contains("f")) sec.f = detail::function(ground, o["f"], "order.f");
    if (o.contains("g")) sec.g = detail::function(ground, o["g"], "order.g");
    inst.order = std::move(sec);
  }
  if (doc.contains("function")) inst.function = detail::function(ground, doc["function"], "function");
  return inst;
}

struct Flags {
  std::uint64_t max_len = 0;        ///< 0: no extra brute-force pass
  std::string epsilon;              ///< threshold, "p/q"
  std::size_t grid = 125;           ///< axiom grid size limit
  std::uint64_t search_len = 3;     ///< modulus search length
  std::uint64_t cap = kDefaultMultisetCap;
};

namespace detail {

inline Json rat(const Rational& r) { return to_string(r); }

inline Json rats(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& r : v) a.push_back(rat(r));
  return a;
}

inline Json measure_json(const Measure& m) {
  Json o = Json::object();
  for (std::size_t i = 0; i < m.ground().size(); ++i) o[m.ground().label(i)] = rat(m[i]);
  return o;
}

inline Json function_json(const SimpleFunction& f) {
  Json o = Json::object();
  for (std::size_t i = 0; i < f.ground().size(); ++i) o[f.ground().label(i)] = rat(f[i]);
  return o;
}

inline Json set_json(const GroundSet& g, Subset s) {
  Json a = Json::array();
  for (std::size_t i : s.indices()) a.push_back(g.label(i));
  return a;
}

inline Json sets_json(const GroundSet& g, const std::vector<Subset>& ss) {
  Json a = Json::array();
  for (Subset s : ss) a.push_back(set_json(g, s));
  return a;
}

// Set indices refer to positions in the input "sets" list.
inline Json witness_json(const Multiset& beta, const std::vector<std::size_t>& input_index) {
  Json o = Json::object();
  for (std::size_t k = 0; k < beta.size(); ++k) {
    if (beta[k] != 0) o[std::to_string(input_index.empty() ? k : input_index[k])] = beta[k];
  }
  return o;
}

inline Json weights_json(const std::vector<Rational>& w, const std::vector<std::size_t>& input_index) {
  Json o = Json::object();
  for (std::size_t k = 0; k < w.size(); ++k) o[std::to_string(input_index.empty() ? k : input_index[k])] = rat(w[k]);
  return o;
}

inline Json report_json(const IntersectionReport& r, const std::vector<std::size_t>& input_index) {
  Json o;
  o["value"] = rat(r.value);
  o["measure"] = measure_json(r.optimal_measure);
  o["weights"] = weights_json(r.optimal_weights, input_index);
  o["witness_sequence"] = witness_json(r.witness_sequence, input_index);
  return o;
}

template <class T>
const T& need(const std::optional<T>& v, const char* key) {
  if (!v) schema(std::string("command needs \"") + key + "\"");
  return *v;
}

inline Ideal need_ideal(const Instance& inst) {
  const IdealSection& sec = need(inst.ideal, "ideal");
  if (sec.principal) return *sec.principal;
  return ideal_validate(*inst.ground, *sec.members);
}

inline MeasureFamily need_family(const Instance& inst) {
  if (inst.measures) return MeasureFamily(*inst.ground, *inst.measures);
  if (inst.measure) return MeasureFamily(*inst.ground, {*inst.measure});
  schema("command needs \"measures\"");
}

inline DecompositionMode decomposition_mode(const Instance& inst, Decomposition& d) {
  if (inst.functional) return mode::Pi{*inst.functional};
  if (inst.ideal) {
    d.ideal_part = need_ideal(inst);
    return mode::Ideal{};
  }
  return mode::Plain{};
}

inline Json representation_json(const Representation& rep, bool order_values) {
  Json o;
  const GroundSet& g = rep.measure.ground();
  o["measure"] = measure_json(rep.measure);
  o["null_generator"] = set_json(g, rep.ideal.generator());
  o["null_sets_match"] = rep.null_sets_match;
  Json fams = Json::array();
  for (std::size_t k = 0; k < rep.decomposition.families.size(); ++k) {
    Json f;
    f["epsilon"] = rat(rep.thresholds[k]);
    f["sets"] = sets_json(g, rep.decomposition.families[k].family());
    if (order_values) {
      f["value"] = rat(rep.order_values[k]);
    } else {
      f["value"] = rat(intersection_number_ideal(rep.ideal, rep.decomposition.families[k]).value);
    }
    fams.push_back(std::move(f));
  }
  o["decomposition"] = std::move(fams);
  o["verdict"] = rep.null_sets_match && rep.decomposition_verified;
  return o;
}

inline OrderSpec order_spec(const Instance& inst) {
  std::string backing = inst.order ? inst.order->backing : (inst.measure ? "measure" : "ideal");
  if (backing == "measure") return OrderSpec::measure(need(inst.measure, "measure"));
  return OrderSpec::ideal(need_ideal(inst));
}

inline Json verdict_json(const AxiomVerdict& v) {
  Json o;
  o["holds"] = v.holds;
  o["instances"] = v.instances;
  o["exact"] = v.exact;
  if (v.counterexample) {
    o["counterexample"] = Json::array({function_json(v.counterexample->first), function_json(v.counterexample->second)});
  }
  if (!v.detail.empty()) o["detail"] = v.detail;
  return o;
}

}  // namespace detail

/// Runs one command on a parsed instance and returns its JSON result.
inline Json execute(const std::string& command, const Instance& inst, const Flags& flags) {
  using namespace detail;
  if (command == "game") {
    GameSolution sol = solve_matrix_game(need(inst.matrix, "matrix"));
    Json o;
    o["value"] = rat(sol.value);
    o["row_strategy"] = rats(sol.row_strategy);
    o["col_strategy"] = rats(sol.col_strategy);
    return o;
  }
  const GroundSet& ground = need(inst.ground, "ground");

  if (command == "intersection") return report_json(intersection_number(need(inst.sets, "sets")), inst.set_input_index);
  if (command == "intersection-pi") {
    return report_json(intersection_number_pi(need(inst.functional, "functional"), need(inst.sets, "sets")), inst.set_input_index);
  }
  if (command == "intersection-ideal") {
    return report_json(intersection_number_ideal(need_ideal(inst), need(inst.sets, "sets")), inst.set_input_index);
  }
  if (command == "intersection-order") {
    return report_json(intersection_number_order(need_ideal(inst), need(inst.sets, "sets")), inst.set_input_index);
  }
  if (command == "verify") {
    const SetSystem& s = need(inst.sets, "sets");
    MinimaxCertificate cert = verify_minimax(s, flags.cap);
    Json o;
    o["value"] = rat(cert.lp_value);
    o["witness_sequence"] = witness_json(cert.witness, inst.set_input_index);
    o["witness_sup"] = rat(cert.witness_sup);
    o["brute_value"] = rat(cert.brute_value);
    bool verdict = cert.verdict;
    if (flags.max_len > 0) {
      BruteForceResult b = bruteforce_intersection(s, flags.max_len, cert.lp_value, flags.cap);
      Json bj;
      bj["max_len"] = flags.max_len;
      bj["best_value"] = rat(b.best_value);
      bj["best_sequence"] = witness_json(b.best_sequence, inst.set_input_index);
      bj["certified"] = b.exactness == Exactness::Certified;
      o["bruteforce"] = std::move(bj);
      verdict = verdict && b.best_value >= cert.lp_value;
    }
    o["verdict"] = verdict;
    return o;
  }
  if (command == "threshold") {
    if (flags.epsilon.empty()) schema("threshold needs --epsilon");
    Rational eps = parse_rational(flags.epsilon);
    SetSystem fam = inst.functional ? threshold_family_pi(*inst.functional, eps) : threshold_family(need(inst.measure, "measure"), eps);
    Json o;
    o["epsilon"] = rat(eps);
    o["sets"] = sets_json(ground, fam.family());
    o["empty"] = fam.empty();
    return o;
  }
  if (command == "decompose-verify" || command == "synthesize") {
    Decomposition d(ground, need(inst.families, "families"));
    DecompositionMode how = decomposition_mode(inst, d);
    Json o;
    if (command == "synthesize") {
      Measure m = synthesize_strictly_positive(d, how);
      Ideal null_part = std::holds_alternative<mode::Pi>(how) ? std::get<mode::Pi>(how).pi.null_ideal() : d.ideal_part;
      bool positive = true;
      for_each_nonempty_subset(ground.full(), [&](Subset a) {
        if (!null_part.contains(a) && m.of(a) <= 0) positive = false;
      });
      o["measure"] = measure_json(m);
      o["total"] = rat(m.total());
      o["verdict"] = positive;
      return o;
    }
    DecompositionVerdict v = verify_decomposition(d, how);
    o["verdict"] = v.verdict;
    o["values"] = rats(v.values);
    if (v.uncovered) o["uncovered"] = set_json(ground, *v.uncovered);
    if (!v.reason.empty()) o["reason"] = v.reason;
    return o;
  }
  if (command == "normalize") {
    NormalizedFunctional hat = normalize_functional(need(inst.functional, "functional"));
    Json o;
    Json vs = Json::array();
    for (const auto& m : hat.probability_vertices()) vs.push_back(measure_json(m));
    o["vertices"] = std::move(vs);
    o["at_one"] = rat(hat(SimpleFunction::constant(ground, 1)));
    o["neg_at_minus_one"] = rat(-hat(SimpleFunction::constant(ground, -1)));
    if (inst.function) o["value"] = rat(hat(*inst.function));
    return o;
  }
  if (command == "modulus") {
    ModulusBounds b = nonlinearity_modulus_bounds(need(inst.functional, "functional"), flags.search_len, flags.cap);
    Json o;
    o["lower"] = rat(b.lower);
    o["upper"] = rat(b.upper);
    Json w = Json::array();
    for (const auto& [s, k] : b.witness) w.push_back(Json{{"set", set_json(ground, s)}, {"multiplicity", k}});
    o["witness"] = std::move(w);
    o["lower_is_heuristic"] = b.lower_is_heuristic;
    return o;
  }
  if (command == "ideal-repr" || command == "ranking-represent") {
    Ideal ideal = inst.ideal ? need_ideal(inst) : null_ideal(need(inst.measure, "measure"));
    return representation_json(representability(ideal), command == "ranking-represent");
  }
  if (command == "dominate") {
    MeasureFamily fam = need_family(inst);
    WeakDomination w = weakly_dominating_measure(fam);
    Json o;
    o["measure"] = measure_json(w.measure);
    o["null_generator"] = set_json(ground, w.null_ideal.generator());
    o["verdict"] = w.dominates;
    o["mstar_weights"] = rats(w.mstar_weights);
    return o;
  }
  if (command == "mstar") {
    Json vs = Json::array();
    for (const auto& m : mstar_vertices(need_family(inst))) vs.push_back(measure_json(m));
    Json o;
    o["vertices"] = std::move(vs);
    return o;
  }
  if (command == "hs-subset") {
    MeasureFamily fam = need_family(inst);
    auto picks = halmos_savage_subset(fam);
    Json o;
    o["indices"] = picks;
    o["null_generator"] = set_json(ground, common_null_ideal(fam).generator());
    return o;
  }
  if (command == "norming") {
    NormingCheck n = check_norming(need_ideal(inst), need(inst.function, "function"));
    Json o;
    o["verdict"] = n.verdict;
    o["measure_side"] = rat(n.measure_side);
    o["ideal_side"] = rat(n.ideal_side);
    o["maximizer"] = measure_json(n.maximizer);
    return o;
  }
  if (command == "ranking-compare") {
    const OrderSection& sec = need(inst.order, "order");
    OrderSpec spec = order_spec(inst);
    Json o;
    o["verdict"] = order_compare(spec, need(sec.f, "order.f"), need(sec.g, "order.g"));
    return o;
  }
  if (command == "ranking-axioms") {
    OrderSpec spec = order_spec(inst);
    AxiomReport r = axioms_check(spec, default_grid(ground, flags.grid), default_scalars());
    static const char* names[] = {"i", "ii", "iii", "iv", "v"};
    Json ax;
    for (std::size_t k = 0; k < 5; ++k) ax[names[k]] = verdict_json(r.axioms[k]);
    Json o;
    o["axioms"] = std::move(ax);
    o["verdict"] = r.all_hold();
    return o;
  }
  schema("unknown command \"" + command + "\"");
}

/// Exit codes: 0 success, 1 input errors, 2 semantic rejections.
inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact finitely additive measure toolkit on finite set systems"};
  std::string command, input = "-";
  Flags flags;
  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(command_names()));
  app.add_option("input", input, "Instance JSON file ('-' for standard input)");
  app.add_option("--max-len", flags.max_len, "Extra brute-force depth for `verify`");
  app.add_option("--epsilon", flags.epsilon, "Threshold for `threshold`, as p/q");
  app.add_option("--grid", flags.grid, "Axiom grid size limit")->check(CLI::PositiveNumber);
  app.add_option("--search-len", flags.search_len, "Indicator combination length for `modulus`")->check(CLI::PositiveNumber);
  app.add_option("--cap", flags.cap, "Enumeration budget for brute-force searches")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    std::string text;
    if (input == "-") {
      std::ostringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    } else {
      std::ifstream file(input);
      if (!file) {
        err << "error: cannot open " << input << "\n";
        return 1;
      }
      std::ostringstream ss;
      ss << file.rdbuf();
      text = ss.str();
    }
    Json result = execute(command, parse_instance(text), flags);
    out << result.dump() << "\n";
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_semantic(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace kelley::cli
