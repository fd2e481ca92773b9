#include "patternforge/io.hpp"

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "patternforge/errors.hpp"
#include "patternforge/quadratic.hpp"
#include "patternforge/spectra.hpp"

namespace patternforge {

using Json = nlohmann::ordered_json;

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Markdown: return "markdown";
    case OutputFormat::Csv: return "csv";
  }
  return "json";
}

OutputFormat parse_output_format(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "json") return OutputFormat::Json;
  if (s == "markdown" || s == "md") return OutputFormat::Markdown;
  if (s == "csv") return OutputFormat::Csv;
  throw std::invalid_argument("unknown output format: " + std::string(text));
}

namespace {

Json parse_doc(std::string_view text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

// Runs a JSON decoder, turning library and argument errors into ParseError.
template <typename F>
auto decode(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  } catch (const std::domain_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

Json pattern_json(const ZeroPattern& p) {
  Json support = Json::array();
  for (const auto& a : p.support()) support.push_back({a.row, a.col});
  return Json{{"n", p.order()}, {"support", support}};
}

ZeroPattern pattern_of(const Json& j) {
  const int n = j.at("n").get<int>();
  if (n < 1) throw ParseError("pattern order must be positive");
  std::vector<Arc> arcs;
  for (const auto& e : j.at("support")) {
    if (!e.is_array() || e.size() != 2) throw ParseError("support entries are [row, col] pairs");
    const int r = e[0].get<int>(), c = e[1].get<int>();
    if (r < 1 || r > n || c < 1 || c > n) throw ParseError("support entry out of range");
    arcs.push_back({r, c});
  }
  return ZeroPattern(n, arcs);
}

Json matrix_json(const RationalMatrix& a) {
  Json rows = Json::array();
  for (int i = 0; i < a.order(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < a.order(); ++j) row.push_back(to_string(a(i, j)));
    rows.push_back(row);
  }
  return rows;
}

RationalMatrix matrix_of(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
  const int n = static_cast<int>(j.size());
  RationalMatrix a(n);
  for (int i = 0; i < n; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) throw ParseError("matrix must be square");
    for (int c = 0; c < n; ++c) a(i, c) = parse_rational(row[static_cast<std::size_t>(c)].get<std::string>());
  }
  return a;
}

Json quad_matrix_json(const QuadMatrix& a) {
  Json rows = Json::array();
  for (int i = 0; i < a.order(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < a.order(); ++j) row.push_back(to_string(a(i, j)));
    rows.push_back(row);
  }
  return rows;
}

QuadMatrix quad_matrix_of(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
  const int n = static_cast<int>(j.size());
  QuadMatrix a(n);
  for (int i = 0; i < n; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) throw ParseError("matrix must be square");
    for (int c = 0; c < n; ++c) a(i, c) = parse_quadratic(row[static_cast<std::size_t>(c)].get<std::string>());
  }
  a.radicand();
  return a;
}

Json ri_json(const RefinedInertia& ri) { return Json::array({ri.plus, ri.minus, ri.zero, ri.imag}); }

RefinedInertia ri_of(const Json& j) {
  if (!j.is_array() || j.size() != 4) throw ParseError("refined inertia is [plus, minus, zero, imaginary]");
  RefinedInertia ri{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
  if (ri.plus < 0 || ri.minus < 0 || ri.zero < 0 || ri.imag < 0 || ri.imag % 2) throw ParseError("invalid refined inertia");
  return ri;
}

Json charpoly_json(const CharPoly& c) {
  Json e = Json::array();
  for (const auto& x : c.e) e.push_back(to_string(x));
  return e;
}

CharPoly charpoly_of(const Json& j) {
  CharPoly c;
  for (const auto& x : j) c.e.push_back(parse_rational(x.get<std::string>()));
  return c;
}

const char* kind_name(SpectralFactor::Kind k) {
  switch (k) {
    case SpectralFactor::Kind::Real: return "real";
    case SpectralFactor::Kind::Zero: return "zero";
    case SpectralFactor::Kind::Imaginary: return "imaginary";
    case SpectralFactor::Kind::Complex: return "complex";
  }
  return "zero";
}

SpectralFactor::Kind kind_of(const std::string& s) {
  if (s == "real") return SpectralFactor::Kind::Real;
  if (s == "zero") return SpectralFactor::Kind::Zero;
  if (s == "imaginary") return SpectralFactor::Kind::Imaginary;
  if (s == "complex") return SpectralFactor::Kind::Complex;
  throw ParseError("unknown factor kind: " + s);
}

Json witness_json(const RealizationWitness& w) {
  Json j;
  j["pattern"] = pattern_json(w.pattern);
  j["matrix"] = matrix_json(w.matrix);
  j["charpoly"] = charpoly_json(w.charpoly);
  j["refined_inertia"] = ri_json(w.refined_inertia);
  if (w.target) {
    Json factors = Json::array();
    for (const auto& f : w.target->factors)
      factors.push_back({{"kind", kind_name(f.kind)}, {"a", to_string(f.a)}, {"b", to_string(f.b)}});
    j["target"] = {{"factors", factors}, {"refined_inertia", ri_json(w.target->refined_inertia)}};
  } else {
    j["target"] = nullptr;
  }
  j["method"] = w.method;
  j["exact"] = w.exact;
  return j;
}

RealizationWitness witness_of(const Json& j) {
  RealizationWitness w;
  w.pattern = pattern_of(j.at("pattern"));
  w.matrix = matrix_of(j.at("matrix"));
  if (w.matrix.order() != w.pattern.order()) throw ParseError("witness matrix order differs from its pattern");
  w.charpoly = charpoly_of(j.at("charpoly"));
  w.refined_inertia = ri_of(j.at("refined_inertia"));
  if (j.contains("target") && !j["target"].is_null()) {
    TargetSpectrum t;
    for (const auto& f : j["target"].at("factors"))
      t.factors.push_back({kind_of(f.at("kind").get<std::string>()), parse_rational(f.at("a").get<std::string>()),
                           parse_rational(f.at("b").get<std::string>())});
    t.refined_inertia = ri_of(j["target"].at("refined_inertia"));
    w.target = t;
  }
  w.method = j.at("method").get<std::string>();
  w.exact = j.value("exact", true);
  return w;
}

std::string field_name(int d) { return d == 1 ? "Q" : "Q(sqrt(" + std::to_string(d) + "))"; }

Json certificate_json(const NcCertificate& c) {
  return Json{{"pattern", pattern_json(c.pattern)},
              {"nilpotent", quad_matrix_json(c.nilpotent)},
              {"field", field_name(c.field_radicand())},
              {"index", c.index},
              {"centralizer_rank_deficiency", c.centralizer_rank_deficiency},
              {"verdict", to_string(c.verdict)},
              {"source", c.source}};
}

NcCertificate certificate_of(const Json& j) {
  NcCertificate c;
  c.pattern = pattern_of(j.at("pattern"));
  c.nilpotent = quad_matrix_of(j.at("nilpotent"));
  c.index = j.at("index").get<int>();
  c.centralizer_rank_deficiency = j.at("centralizer_rank_deficiency").get<int>();
  c.verdict = parse_nc_verdict(j.at("verdict").get<std::string>());
  c.source = j.value("source", std::string("given"));
  return c;
}

Json arcs_json(const std::vector<Arc>& arcs) {
  Json out = Json::array();
  for (const auto& a : arcs) out.push_back({a.row, a.col});
  return out;
}

std::vector<Arc> arcs_of(const Json& j) {
  std::vector<Arc> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw ParseError("entries are [row, col] pairs");
    out.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  return out;
}

Json solution_json(const SolutionCertificate& c) {
  Json steps = Json::array();
  for (const auto& s : c.steps)
    steps.push_back({{"entry", {s.entry.row, s.entry.col}}, {"equation", s.equation}, {"degree", s.degree}, {"expression", s.expression}});
  return Json{{"pattern", pattern_json(c.pattern)},
              {"unit_entries", arcs_json(c.unit_entries)},
              {"zero_entries", arcs_json(c.zero_entries)},
              {"steps", steps}};
}

SolutionCertificate solution_of(const Json& j) {
  SolutionCertificate c;
  c.pattern = pattern_of(j.at("pattern"));
  c.unit_entries = arcs_of(j.at("unit_entries"));
  c.zero_entries = arcs_of(j.at("zero_entries"));
  for (const auto& s : j.at("steps")) {
    SolutionStep st;
    const auto e = arcs_of(Json::array({s.at("entry")}));
    st.entry = e.front();
    st.equation = s.at("equation").get<int>();
    st.degree = s.at("degree").get<int>();
    st.expression = s.value("expression", std::string());
    c.steps.push_back(std::move(st));
  }
  return c;
}

const char* obstruction_kind_name(ObstructionKind k) {
  switch (k) {
    case ObstructionKind::MissingCompositeKCycle: return "MissingCompositeKCycle";
    case ObstructionKind::NoProper2Cycle: return "NoProper2Cycle";
    case ObstructionKind::NoNonzeroTransversal: return "NoNonzeroTransversal";
    case ObstructionKind::LoopForcedDeterminant: return "LoopForcedDeterminant";
    case ObstructionKind::EntryCountBound: return "EntryCountBound";
  }
  return "?";
}

ObstructionKind obstruction_kind_of(const std::string& s) {
  for (auto k : {ObstructionKind::MissingCompositeKCycle, ObstructionKind::NoProper2Cycle, ObstructionKind::NoNonzeroTransversal,
                 ObstructionKind::LoopForcedDeterminant, ObstructionKind::EntryCountBound})
    if (s == obstruction_kind_name(k)) return k;
  throw ParseError("unknown obstruction kind: " + s);
}

Property property_of(const std::string& s) {
  if (s == "SAP") return Property::SAP;
  if (s == "RIAP") return Property::RIAP;
  if (s == "IAP") return Property::IAP;
  throw ParseError("unknown property: " + s);
}

Json obstruction_json(const Obstruction& o) {
  Json targets = Json::array();
  for (const auto& ri : o.refuted_targets) targets.push_back(ri_json(ri));
  return Json{{"kind", obstruction_kind_name(o.kind)}, {"name", o.name()},     {"k", o.k},
              {"refutes", to_string(o.refutes)},      {"refuted_targets", targets}, {"citation", o.citation}};
}

Obstruction obstruction_of(const Json& j) {
  Obstruction o;
  o.kind = obstruction_kind_of(j.at("kind").get<std::string>());
  o.k = j.value("k", 0);
  o.refutes = property_of(j.at("refutes").get<std::string>());
  for (const auto& t : j.at("refuted_targets")) o.refuted_targets.push_back(ri_of(t));
  o.citation = j.value("citation", std::string());
  return o;
}

std::string sign_text(int s) { return s > 0 ? "+" : (s < 0 ? "-" : "0"); }

int sign_of_text(const std::string& s) {
  if (s == "+") return 1;
  if (s == "-") return -1;
  if (s == "0") return 0;
  throw ParseError("nest sign must be +, - or 0");
}

Json nest_json(const NestReport& r) {
  Json signs = Json::array();
  for (int s : r.signs) signs.push_back(sign_text(s));
  return Json{{"pattern", pattern_json(r.pattern)},
              {"ordering", r.ordering.sequence},
              {"signs", signs},
              {"verdict", r.verdict},
              {"stable", r.stable ? witness_json(*r.stable) : Json(nullptr)},
              {"unstable", r.unstable ? witness_json(*r.unstable) : Json(nullptr)}};
}

NestReport nest_of(const Json& j) {
  NestReport r;
  r.pattern = pattern_of(j.at("pattern"));
  r.ordering.sequence = j.at("ordering").get<std::vector<int>>();
  for (const auto& s : j.at("signs")) r.signs.push_back(sign_of_text(s.get<std::string>()));
  r.verdict = j.at("verdict").get<bool>();
  if (j.contains("stable") && !j["stable"].is_null()) r.stable = witness_of(j["stable"]);
  if (j.contains("unstable") && !j["unstable"].is_null()) r.unstable = witness_of(j["unstable"]);
  return r;
}

Json verdict_json(const PropertyVerdict& v) { return Json{{"verdict", to_string(v.verdict)}, {"reason", v.reason}}; }

PropertyVerdict verdict_of(const Json& j) {
  return {parse_verdict(j.at("verdict").get<std::string>()), j.value("reason", std::string())};
}

Json record_json(const ClassificationRecord& r) {
  Json obs = Json::array();
  for (const auto& o : r.obstructions) obs.push_back(obstruction_json(o));
  Json wit = Json::array();
  for (const auto& [ri, w] : r.witnesses) wit.push_back(witness_json(w));
  Json unr = Json::array();
  for (const auto& ri : r.unrealized) unr.push_back(ri_json(ri));
  return Json{{"pattern", pattern_json(r.pattern)},
              {"nnz", r.nnz},
              {"irreducible", r.irreducible},
              {"sap", verdict_json(r.sap)},
              {"riap", verdict_json(r.riap)},
              {"iap", verdict_json(r.iap)},
              {"obstructions", obs},
              {"argument_tags", r.argument_tags},
              {"nc", r.nc ? certificate_json(*r.nc) : Json(nullptr)},
              {"explicit_solution", r.solution ? solution_json(*r.solution) : Json(nullptr)},
              {"witnesses", wit},
              {"unrealized", unr},
              {"contradictions", r.contradictions},
              {"casework", r.casework}};
}

ClassificationRecord record_of(const Json& j) {
  ClassificationRecord r;
  r.pattern = pattern_of(j.at("pattern"));
  r.nnz = j.at("nnz").get<int>();
  r.irreducible = j.at("irreducible").get<bool>();
  r.sap = verdict_of(j.at("sap"));
  r.riap = verdict_of(j.at("riap"));
  r.iap = verdict_of(j.at("iap"));
  for (const auto& o : j.at("obstructions")) r.obstructions.push_back(obstruction_of(o));
  r.argument_tags = j.at("argument_tags").get<std::vector<std::string>>();
  if (j.contains("nc") && !j["nc"].is_null()) r.nc = certificate_of(j["nc"]);
  if (j.contains("explicit_solution") && !j["explicit_solution"].is_null()) r.solution = solution_of(j["explicit_solution"]);
  for (const auto& w : j.at("witnesses")) {
    RealizationWitness x = witness_of(w);
    const RefinedInertia key = x.refined_inertia;
    r.witnesses.emplace(key, std::move(x));
  }
  for (const auto& u : j.at("unrealized")) r.unrealized.push_back(ri_of(u));
  r.contradictions = j.at("contradictions").get<std::vector<std::string>>();
  r.casework = j.value("casework", std::string());
  return r;
}

// Inline "[a b; c d]" form used in Markdown tables.
std::string inline_matrix(const RationalMatrix& a) {
  std::string s = "[";
  for (int i = 0; i < a.order(); ++i) {
    if (i) s += "; ";
    for (int j = 0; j < a.order(); ++j) s += (j ? " " : "") + to_string(a(i, j));
  }
  return s + "]";
}

std::string inline_matrix(const QuadMatrix& a) {
  std::string s = "[";
  for (int i = 0; i < a.order(); ++i) {
    if (i) s += "; ";
    for (int j = 0; j < a.order(); ++j) s += (j ? " " : "") + to_string(a(i, j));
  }
  return s + "]";
}

std::string support_text(const ZeroPattern& p) {
  std::string s;
  for (const auto& a : p.support()) s += (s.empty() ? "" : " ") + std::string("(") + std::to_string(a.row) + "," + std::to_string(a.col) + ")";
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string md_cell(std::string s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else if (c == '\n') out += "<br>";
    else out += c;
  }
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string inertia_text(const Inertia& in) { return in.to_string(); }

}  // namespace

// ---------------------------------------------------------------------------
// Documents

std::string pattern_to_json(const ZeroPattern& p) { return dump(pattern_json(p)); }
ZeroPattern pattern_from_json(std::string_view text) {
  return decode("pattern", [&] { return pattern_of(parse_doc(text, "pattern")); });
}

ZeroPattern read_pattern(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return pattern_from_json(text);
  return parse_pattern(text);
}

std::string matrix_to_json(const RationalMatrix& a) { return dump(matrix_json(a)); }
RationalMatrix matrix_from_json(std::string_view text) {
  return decode("matrix", [&] { return matrix_of(parse_doc(text, "matrix")); });
}

RationalMatrix read_matrix(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '[') return matrix_from_json(text);
  try {
    return parse_matrix(text);
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("matrix: ") + e.what());
  }
}

std::string witness_to_json(const RealizationWitness& w) { return dump(witness_json(w)); }
RealizationWitness witness_from_json(std::string_view text) {
  return decode("witness", [&] { return witness_of(parse_doc(text, "witness")); });
}

std::string certificate_to_json(const NcCertificate& c) { return dump(certificate_json(c)); }
NcCertificate certificate_from_json(std::string_view text) {
  return decode("certificate", [&] { return certificate_of(parse_doc(text, "certificate")); });
}

std::string solution_to_json(const SolutionCertificate& c) { return dump(solution_json(c)); }
SolutionCertificate solution_from_json(std::string_view text) {
  return decode("explicit solution", [&] { return solution_of(parse_doc(text, "explicit solution")); });
}

std::string obstruction_to_json(const Obstruction& o) { return dump(obstruction_json(o)); }
Obstruction obstruction_from_json(std::string_view text) {
  return decode("obstruction", [&] { return obstruction_of(parse_doc(text, "obstruction")); });
}

std::string nest_report_to_json(const NestReport& r) { return dump(nest_json(r)); }
NestReport nest_report_from_json(std::string_view text) {
  return decode("nest report", [&] { return nest_of(parse_doc(text, "nest report")); });
}

std::string record_to_json(const ClassificationRecord& r) { return dump(record_json(r)); }
ClassificationRecord record_from_json(std::string_view text) {
  return decode("record", [&] { return record_of(parse_doc(text, "record")); });
}

// ---------------------------------------------------------------------------
// Reports

std::string render_analysis(const ClassificationRecord& r, OutputFormat f) {
  const ZeroPattern& p = r.pattern;
  const int n = p.order();
  std::vector<int> simple(static_cast<std::size_t>(n + 1), 0);
  for (const auto& c : simple_cycles(p)) ++simple[static_cast<std::size_t>(c.length())];
  std::vector<std::size_t> composite(static_cast<std::size_t>(n + 1), 0);
  for (int k = 1; k <= n; ++k) composite[static_cast<std::size_t>(k)] = composite_cycles(p, k).size();

  if (f == OutputFormat::Json) {
    Json census = Json::array();
    for (int k = 1; k <= n; ++k)
      census.push_back({{"k", k}, {"simple", simple[static_cast<std::size_t>(k)]}, {"composite", composite[static_cast<std::size_t>(k)]}});
    Json doc{{"record", record_json(r)}, {"cycle_census", census}};
    return dump(doc);
  }
  if (f == OutputFormat::Csv) {
    std::ostringstream out;
    out << "section,key,value\n";
    out << "pattern,support," << csv_field(support_text(p)) << "\n";
    out << "pattern,irreducible," << (r.irreducible ? "true" : "false") << "\n";
    for (int k = 1; k <= n; ++k)
      out << "cycles," << k << "," << simple[static_cast<std::size_t>(k)] << "/" << composite[static_cast<std::size_t>(k)] << "\n";
    for (const auto& o : r.obstructions) out << "obstruction," << csv_field(o.name()) << "," << to_string(o.refutes) << "\n";
    for (const auto& t : r.argument_tags) out << "argument," << csv_field(t) << ",SAP\n";
    out << "verdict,sap," << to_string(r.sap.verdict) << "\n";
    out << "verdict,riap," << to_string(r.riap.verdict) << "\n";
    out << "verdict,iap," << to_string(r.iap.verdict) << "\n";
    if (r.nc) out << "nc," << to_string(r.nc->verdict) << "," << csv_field(inline_matrix(r.nc->nilpotent)) << "\n";
    if (r.solution)
      for (const auto& st : r.solution->steps) out << "explicit_solution,E" << st.equation << "," << csv_field(st.expression) << "\n";
    for (const auto& [ri, w] : r.witnesses) out << "witness," << csv_field(ri.to_string()) << "," << csv_field(inline_matrix(w.matrix)) << "\n";
    for (const auto& ri : r.unrealized) out << "unrealized," << csv_field(ri.to_string()) << ",\n";
    return out.str();
  }
  std::ostringstream out;
  out << "# Pattern analysis\n\n```\n" << format_pattern(p) << "```\n\n";
  out << "- order: " << n << ", free entries: " << r.nnz << ", irreducible: " << (r.irreducible ? "yes" : "no") << "\n";
  if (!r.casework.empty()) out << "- case branch: " << r.casework << "\n";
  out << "\n## Cycles\n\n| k | simple k-cycles | composite k-cycles |\n|---|---|---|\n";
  for (int k = 1; k <= n; ++k) out << "| " << k << " | " << simple[static_cast<std::size_t>(k)] << " | " << composite[static_cast<std::size_t>(k)] << " |\n";
  out << "\n## Obstructions\n\n";
  if (r.obstructions.empty() && r.argument_tags.empty()) out << "none\n";
  for (const auto& o : r.obstructions) out << "- " << o.name() << ": refutes " << to_string(o.refutes) << ". " << o.citation << "\n";
  for (const auto& t : r.argument_tags) out << "- " << t << ": refutes SAP\n";
  out << "\n## Verdicts\n\n| property | verdict | reason |\n|---|---|---|\n";
  out << "| sap | " << to_string(r.sap.verdict) << " | " << md_cell(r.sap.reason) << " |\n";
  out << "| riap | " << to_string(r.riap.verdict) << " | " << md_cell(r.riap.reason) << " |\n";
  out << "| iap | " << to_string(r.iap.verdict) << " | " << md_cell(r.iap.reason) << " |\n";
  if (r.nc) {
    out << "\n## Nilpotent-centralizer test\n\n- verdict: " << to_string(r.nc->verdict) << " (index " << r.nc->index
        << ", deficiency " << r.nc->centralizer_rank_deficiency << ", field " << field_name(r.nc->field_radicand()) << ")\n";
    out << "- nilpotent: `" << inline_matrix(r.nc->nilpotent) << "`\n";
  }
  if (r.solution) {
    out << "\n## Explicit solution\n\nEntries fixed to 1 by a diagonal similarity:";
    for (const auto& a : r.solution->unit_entries) out << " (" << a.row << "," << a.col << ")";
    if (!r.solution->zero_entries.empty()) {
      out << "; entries held at 0:";
      for (const auto& a : r.solution->zero_entries) out << " (" << a.row << "," << a.col << ")";
    }
    out << ". Solving E_k(A) = e_k in order:\n\n";
    for (const auto& st : r.solution->steps)
      out << "- from E" << st.equation << ": `" << st.expression << "`" << (st.degree > 1 ? " (odd degree, so a real root exists)" : "") << "\n";
  }
  out << "\n## Survey\n\n| refined inertia | method | matrix | characteristic polynomial |\n|---|---|---|---|\n";
  for (const auto& [ri, w] : r.witnesses)
    out << "| " << ri.to_string() << " | " << w.method << " | `" << inline_matrix(w.matrix) << "` | " << md_cell(w.charpoly.to_string()) << " |\n";
  for (const auto& ri : r.unrealized) out << "| " << ri.to_string() << " | no witness found | | |\n";
  for (const auto& c : r.contradictions) out << "\n**contradiction:** " << c << "\n";
  return out.str();
}

std::string render_census(const CensusReport& rep, OutputFormat f) {
  const Census& c = rep.census;
  if (f == OutputFormat::Json) {
    Json records = Json::array();
    for (const auto& r : c.records) records.push_back(record_json(r));
    Json checks = Json::array();
    for (const auto& x : rep.checks)
      checks.push_back({{"name", x.name}, {"pass", x.pass}, {"expected", x.expected}, {"observed", x.observed}, {"details", x.details}});
    Json doc{{"order", c.order}, {"nnz", c.nnz_values}, {"irreducible_only", c.irreducible_only},
             {"classes", c.records.size()}, {"checks", checks}, {"records", records}};
    return dump(doc);
  }
  if (f == OutputFormat::Csv) {
    std::ostringstream out;
    out << "index,support,nnz,irreducible,sap,sap_certified,riap,iap,obstructions,arguments,witnesses,casework\n";
    std::size_t i = 0;
    for (const auto& r : c.records) {
      std::string obs;
      for (const auto& o : r.obstructions) obs += (obs.empty() ? "" : ";") + o.name();
      std::string tags;
      for (const auto& t : r.argument_tags) tags += (tags.empty() ? "" : ";") + t;
      out << ++i << "," << csv_field(support_text(r.pattern)) << "," << r.nnz << "," << (r.irreducible ? "true" : "false") << ","
          << to_string(r.sap.verdict) << "," << (r.sap_certified() ? "true" : "false") << "," << to_string(r.riap.verdict) << ","
          << to_string(r.iap.verdict) << "," << csv_field(obs) << "," << csv_field(tags) << "," << r.witnesses.size() << ","
          << csv_field(r.casework) << "\n";
    }
    return out.str();
  }
  std::ostringstream out;
  out << "# Census: order " << c.order << ", free entries";
  for (int k : c.nnz_values) out << " " << k;
  out << "\n\n" << c.records.size() << " classes" << (c.irreducible_only ? " (irreducible)" : "") << "\n\n";
  out << "## Cross-checks\n\n| check | result | expected | observed |\n|---|---|---|---|\n";
  for (const auto& x : rep.checks)
    out << "| " << md_cell(x.name) << " | " << (x.pass ? "pass" : "MISMATCH") << " | " << md_cell(x.expected) << " | " << md_cell(x.observed) << " |\n";
  for (const auto& x : rep.checks) {
    if (x.details.empty()) continue;
    out << "\n### " << x.name << "\n\n";
    for (const auto& d : x.details) out << "- " << d << "\n";
  }
  out << "\n## Classes\n\n| # | support | sap | riap | iap | evidence |\n|---|---|---|---|---|---|\n";
  std::size_t i = 0;
  for (const auto& r : c.records) {
    std::string ev;
    for (const auto& o : r.obstructions) ev += (ev.empty() ? "" : ", ") + o.name();
    for (const auto& t : r.argument_tags) ev += (ev.empty() ? "" : ", ") + t;
    if (r.nc_certified()) ev += (ev.empty() ? "" : ", ") + std::string("NC certificate");
    if (r.solution) ev += (ev.empty() ? "" : ", ") + std::string("explicit solution");
    ev += (ev.empty() ? "" : ", ") + std::to_string(r.witnesses.size()) + " witnesses";
    if (!r.casework.empty()) ev += "; " + r.casework;
    out << "| " << ++i << " | " << support_text(r.pattern) << " | " << to_string(r.sap.verdict) << " | " << to_string(r.riap.verdict)
        << " | " << to_string(r.iap.verdict) << " | " << md_cell(ev) << " |\n";
  }
  return out.str();
}

std::string render_appendix(const std::vector<AppendixRowReport>& rows, OutputFormat f) {
  const auto passed = static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const AppendixRowReport& r) { return r.pass; }));
  if (f == OutputFormat::Json) {
    Json out = Json::array();
    for (const auto& r : rows)
      out.push_back({{"pattern", r.pattern},
                     {"row", r.row},
                     {"matrix", matrix_json(r.matrix)},
                     {"stated", {r.stated.plus, r.stated.minus, r.stated.zero}},
                     {"computed", {r.computed.plus, r.computed.minus, r.computed.zero}},
                     {"charpoly", charpoly_json(r.charpoly)},
                     {"conforms", r.conforms},
                     {"pass", r.pass}});
    return dump(Json{{"rows", out}, {"passed", passed}, {"total", rows.size()}});
  }
  if (f == OutputFormat::Csv) {
    std::ostringstream out;
    out << "pattern,row,matrix,stated,computed,charpoly,conforms,pass\n";
    for (const auto& r : rows)
      out << r.pattern << "," << r.row << "," << csv_field(inline_matrix(r.matrix)) << "," << csv_field(inertia_text(r.stated)) << ","
          << csv_field(inertia_text(r.computed)) << "," << csv_field(r.charpoly.to_string()) << "," << (r.conforms ? "true" : "false")
          << "," << (r.pass ? "true" : "false") << "\n";
    return out.str();
  }
  std::ostringstream out;
  out << "# Inertially arbitrary patterns with no proper 2-cycle\n\n" << passed << "/" << rows.size() << " rows reproduce their stated inertia\n\n";
  out << "| pattern | matrix | stated | computed | characteristic polynomial | result |\n|---|---|---|---|---|---|\n";
  for (const auto& r : rows)
    out << "| " << r.pattern << " | `" << inline_matrix(r.matrix) << "` | " << inertia_text(r.stated) << " | " << inertia_text(r.computed)
        << " | " << md_cell(r.charpoly.to_string()) << " | "
        << (r.pass ? "pass" : (r.conforms ? "MISMATCH" : "MISMATCH (matrix outside the pattern)")) << " |\n";
  return out.str();
}

std::string render_certificate(const NcCertificate& c, OutputFormat f) {
  if (f == OutputFormat::Json) return certificate_to_json(c);
  if (f == OutputFormat::Csv) {
    std::ostringstream out;
    out << "support,verdict,index,deficiency,field,source,nilpotent\n"
        << csv_field(support_text(c.pattern)) << "," << to_string(c.verdict) << "," << c.index << "," << c.centralizer_rank_deficiency << ","
        << csv_field(field_name(c.field_radicand())) << "," << c.source << "," << csv_field(inline_matrix(c.nilpotent)) << "\n";
    return out.str();
  }
  std::ostringstream out;
  out << "# Nilpotent-centralizer test\n\n```\n" << format_pattern(c.pattern) << "```\n\n";
  out << "- verdict: " << to_string(c.verdict) << "\n- nilpotent index: " << c.index << "\n- centralizer rank deficiency: "
      << c.centralizer_rank_deficiency << "\n- field: " << field_name(c.field_radicand()) << "\n- source: " << c.source << "\n";
  out << "- nilpotent: `" << inline_matrix(c.nilpotent) << "`\n";
  return out.str();
}

std::string render_nest(const NestReport& r, OutputFormat f) {
  if (f == OutputFormat::Json) return nest_report_to_json(r);
  std::string ord, signs;
  for (int v : r.ordering.sequence) ord += (ord.empty() ? "" : " ") + std::to_string(v);
  for (int s : r.signs) signs += (signs.empty() ? "" : " ") + sign_text(s);
  if (f == OutputFormat::Csv) {
    std::ostringstream out;
    out << "ordering,signs,verdict,stable,unstable\n"
        << csv_field(ord) << "," << csv_field(signs) << "," << (r.verdict ? "true" : "false") << ","
        << csv_field(r.stable ? inline_matrix(r.stable->matrix) : "") << "," << csv_field(r.unstable ? inline_matrix(r.unstable->matrix) : "")
        << "\n";
    return out.str();
  }
  std::ostringstream out;
  out << "# Properly signed nest\n\n- ordering: " << ord << "\n- signs: " << signs << "\n- verdict: " << (r.verdict ? "both extreme inertias realized" : "not confirmed") << "\n";
  if (r.stable) out << "- (0, n, 0, 0) witness: `" << inline_matrix(r.stable->matrix) << "`\n";
  if (r.unstable) out << "- (n, 0, 0, 0) witness: `" << inline_matrix(r.unstable->matrix) << "`\n";
  return out.str();
}

std::string render_witness(const std::optional<RealizationWitness>& w, const ZeroPattern& p, OutputFormat f) {
  if (f == OutputFormat::Json) return w ? witness_to_json(*w) : dump(Json{{"pattern", pattern_json(p)}, {"witness", nullptr}});
  if (f == OutputFormat::Csv) {
    std::ostringstream out;
    out << "found,refined_inertia,method,matrix,charpoly\n";
    if (w)
      out << "true," << csv_field(w->refined_inertia.to_string()) << "," << w->method << "," << csv_field(inline_matrix(w->matrix)) << ","
          << csv_field(w->charpoly.to_string()) << "\n";
    else
      out << "false,,,,\n";
    return out.str();
  }
  std::ostringstream out;
  out << "# Realization\n\n```\n" << format_pattern(p) << "```\n\n";
  if (!w) {
    out << "no witness found within budget\n";
    return out.str();
  }
  out << "- refined inertia: " << w->refined_inertia.to_string() << "\n- method: " << w->method << "\n- characteristic polynomial: "
      << w->charpoly.to_string() << "\n\n```\n" << format_matrix(w->matrix) << "```\n";
  return out.str();
}

std::string render_charpoly(const RationalMatrix& a, OutputFormat f, std::optional<long double> eps) {
  const CharPoly c = char_poly(a);
  const RefinedInertia ri = exact_refined_inertia(c);
  const NumericInertia numeric = refined_inertia_of(a, eps);
  const bool agrees = numeric.value == ri;
  auto num = [](long double v) {
    std::ostringstream s;
    s << std::setprecision(12) << static_cast<double>(v);
    return s.str();
  };
  if (f == OutputFormat::Json) {
    Json r = Json::array();
    for (const auto& x : numeric.roots) r.push_back({{"re", num(x.re)}, {"im", num(x.im)}, {"radius", num(x.radius)}});
    return dump(Json{{"matrix", matrix_json(a)},
                     {"charpoly", charpoly_json(c)},
                     {"polynomial", c.to_string()},
                     {"refined_inertia", ri_json(ri)},
                     {"numeric", {{"refined_inertia", ri_json(numeric.value)}, {"eps", num(numeric.eps)}, {"fragile", numeric.fragile}, {"agrees", agrees}}},
                     {"roots", r}});
  }
  if (f == OutputFormat::Csv) {
    std::ostringstream out;
    out << "k,E_k\n";
    for (std::size_t k = 0; k < c.e.size(); ++k) out << k + 1 << "," << to_string(c.e[k]) << "\n";
    return out.str();
  }
  std::ostringstream out;
  out << "# Characteristic polynomial\n\n- p(x) = " << c.to_string() << "\n- refined inertia: " << ri.to_string()
      << "\n- numeric refined inertia at eps " << num(numeric.eps) << ": " << numeric.value.to_string()
      << (numeric.fragile ? " (fragile)" : "") << (agrees ? "" : " MISMATCH") << "\n\n| root | inclusion radius |\n|---|---|\n";
  for (const auto& x : numeric.roots)
    out << "| " << num(x.re) << (x.im < 0 ? " - " : " + ") << num(x.im < 0 ? -x.im : x.im) << "i | " << num(x.radius) << " |\n";
  return out.str();
}

}  // namespace patternforge
