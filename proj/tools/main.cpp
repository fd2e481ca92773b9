#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "patternforge/classify.hpp"
#include "patternforge/errors.hpp"
#include "patternforge/families.hpp"
#include "patternforge/io.hpp"
#include "patternforge/nests.hpp"
#include "patternforge/nilpotent_nc.hpp"
#include "patternforge/realization.hpp"

namespace pf = patternforge;

namespace {

struct RunConfig {
  std::uint64_t seed = 0;
  int budget = 64;
  double eps = 0;  // 0 selects the scale-aware default
  std::string format = "markdown";
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string output;

  pf::OutputFormat output_format() const { return pf::parse_output_format(format); }
  std::optional<long double> tolerance() const {
    return eps > 0 ? std::optional<long double>(eps) : std::nullopt;
  }
  pf::RealizeOptions realize() const {
    pf::RealizeOptions r;
    r.starts = budget;
    r.seed = seed;
    return r;
  }
  pf::NilpotentOptions nilpotent() const {
    pf::NilpotentOptions o;
    o.seed = seed;
    return o;
  }
  pf::ClassifyOptions classify() const {
    pf::ClassifyOptions o;
    o.realize = realize();
    o.nilpotent = nilpotent();
    return o;
  }
};

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

// A pattern argument is a file path, "-" for stdin, or a built-in name such
// as W5 or P4,2.
pf::ZeroPattern load_pattern(const std::string& source) {
  if (source == "-" || std::filesystem::exists(source)) return pf::read_pattern(slurp(source));
  try {
    return pf::pattern_from_name(source);
  } catch (const std::invalid_argument&) {
    throw std::runtime_error("no such file or built-in pattern: " + source);
  }
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + cfg.output);
  out << text;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw pf::ParseError("expected a comma-separated integer list: " + text);
    }
  }
  return out;
}

int cmd_analyze(const RunConfig& cfg, const std::string& source) {
  const pf::ZeroPattern p = load_pattern(source);
  pf::ClassifyOptions opts = cfg.classify();
  opts.full_survey = true;
  const pf::ClassificationRecord r = pf::classify(p, opts);
  emit(cfg, pf::render_analysis(r, cfg.output_format()));
  for (const auto& c : r.contradictions) std::cerr << "contradiction: " << c << "\n";
  return r.contradictions.empty() ? 0 : 1;
}

int cmd_classify(const RunConfig& cfg, int order, int nnz) {
  pf::CensusOptions opts;
  opts.classify = cfg.classify();
  opts.jobs = cfg.jobs;
  const auto t0 = std::chrono::steady_clock::now();
  const pf::CensusReport rep = pf::census_report(order, nnz, opts);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(cfg, pf::render_census(rep, cfg.output_format()));
  std::cerr << rep.census.records.size() << " classes in " << secs << " s with " << opts.jobs << " workers\n";
  for (const auto& c : rep.checks) {
    if (c.pass) continue;
    std::cerr << "mismatch: " << c.name << ": expected " << c.expected << ", observed " << c.observed << "\n";
    for (const auto& d : c.details) std::cerr << "  " << d << "\n";
  }
  return rep.all_pass() ? 0 : 1;
}

int cmd_verify_appendix(const RunConfig& cfg, const std::string& table) {
  const auto rows = table.empty() ? pf::verify_appendix() : pf::verify_appendix(slurp(table));
  emit(cfg, pf::render_appendix(rows, cfg.output_format()));
  int bad = 0;
  for (const auto& r : rows) {
    if (r.pass) continue;
    ++bad;
    std::cerr << "mismatch: " << r.pattern << " row " << r.row << ": stated " << r.stated.to_string() << ", computed "
              << r.computed.to_string() << (r.conforms ? "" : ", matrix outside the pattern") << "\n";
  }
  return bad == 0 ? 0 : 1;
}

int cmd_nc_test(const RunConfig& cfg, const std::string& source, const std::string& matrix, const std::string& certificate) {
  if (!certificate.empty()) {
    const pf::NcCertificate c = pf::certificate_from_json(slurp(certificate));
    const bool ok = pf::verify_certificate(c);
    emit(cfg, pf::render_certificate(c, cfg.output_format()));
    if (!ok) std::cerr << "mismatch: certificate does not verify\n";
    return ok ? 0 : 1;
  }
  if (!matrix.empty()) {
    const pf::RationalMatrix a = pf::read_matrix(slurp(matrix));
    const pf::ZeroPattern p = source.empty() ? pf::ZeroPattern::of(a) : load_pattern(source);
    emit(cfg, pf::render_certificate(pf::nc_test(p, a), cfg.output_format()));
    return 0;
  }
  if (source.empty()) throw pf::ParseError("nc-test needs a pattern, a matrix or a certificate");
  const pf::ZeroPattern p = load_pattern(source);
  if (auto c = pf::certify_sap(p, cfg.nilpotent())) {
    emit(cfg, pf::render_certificate(*c, cfg.output_format()));
    return 0;
  }
  pf::NcCertificate none;
  none.pattern = p;
  none.nilpotent = pf::QuadMatrix(p.order());
  none.verdict = pf::NcVerdict::Indeterminate;
  none.source = "no nilpotent found";
  emit(cfg, pf::render_certificate(none, cfg.output_format()));
  return 0;
}

int cmd_nest(const RunConfig& cfg, const std::string& source, const std::string& matrix, const std::string& path,
             const std::string& ordering) {
  pf::RationalMatrix b;
  if (!path.empty()) {
    const auto na = parse_int_list(path);
    if (na.size() != 2) throw pf::ParseError("--path expects n,alpha");
    b = pf::canonical_path_matrix(na[0], na[1]);
  } else if (!matrix.empty()) {
    b = pf::read_matrix(slurp(matrix));
  } else if (!source.empty()) {
    const pf::ZeroPattern p = load_pattern(source);
    const pf::PatternNestSearch s = pf::pattern_allows_nest(p, cfg.budget * 8, cfg.seed);
    if (!s.matrix) {
      pf::NestReport none;
      none.pattern = p;
      emit(cfg, pf::render_nest(none, cfg.output_format()));
      std::cerr << "no properly signed nest found in " << s.samples_tried << " sampled realizations\n";
      return 0;
    }
    b = *s.matrix;
  } else {
    throw pf::ParseError("nest needs a pattern, --matrix or --path");
  }

  std::optional<pf::NestOrdering> ord;
  if (!ordering.empty()) {
    ord = pf::NestOrdering{parse_int_list(ordering)};
  } else {
    ord = pf::find_nest(b);
  }
  if (!ord) {
    pf::NestReport none;
    none.pattern = pf::ZeroPattern::of(b);
    emit(cfg, pf::render_nest(none, cfg.output_format()));
    std::cerr << "matrix has no properly signed nest\n";
    return 0;
  }
  if (!pf::is_properly_signed_nest(b, *ord)) {
    std::cerr << "error: the given ordering is not a properly signed nest of the matrix\n";
    pf::NestReport bad;
    bad.pattern = pf::ZeroPattern::of(b);
    bad.ordering = *ord;
    bad.signs = pf::nest_signs(b, *ord);
    emit(cfg, pf::render_nest(bad, cfg.output_format()));
    return 1;
  }
  const pf::NestReport r = pf::nest_implies_inertia_check(b, *ord, cfg.realize());
  emit(cfg, pf::render_nest(r, cfg.output_format()));
  if (!r.verdict) std::cerr << "mismatch: nest did not yield both extreme inertias\n";
  return r.verdict ? 0 : 1;
}

int cmd_realize(const RunConfig& cfg, const std::string& source, const std::string& target, const std::string& charpoly) {
  const pf::ZeroPattern p = load_pattern(source);
  std::optional<pf::RealizationWitness> w;
  if (!charpoly.empty()) {
    pf::CharPoly c;
    std::stringstream ss(charpoly);
    std::string item;
    while (std::getline(ss, item, ',')) c.e.push_back(pf::parse_rational(item));
    if (static_cast<int>(c.e.size()) != p.order()) throw pf::ParseError("--charpoly needs E_1..E_n");
    w = pf::realize_charpoly(p, c, cfg.realize());
  } else {
    const auto ri = pf::parse_refined_inertia(target);
    if (!ri || ri->plus + ri->minus + ri->zero + ri->imag != p.order())
      throw pf::ParseError("--target expects n+,n-,nz,ni summing to the order with even ni");
    const auto obs = pf::run_all_obstructions(p);
    for (const auto& o : obs) {
      for (const auto& t : o.refuted_targets)
        if (t == *ri) std::cerr << "refuted: " << o.name() << " (" << o.citation << ")\n";
    }
    if (!pf::any_refutes(obs, *ri)) w = pf::realize_refined_inertia(p, *ri, cfg.realize());
  }
  emit(cfg, pf::render_witness(w, p, cfg.output_format()));
  if (w && !pf::verify_witness(*w)) {
    std::cerr << "mismatch: witness failed exact re-verification\n";
    return 1;
  }
  return 0;
}

int cmd_charpoly(const RunConfig& cfg, const std::string& matrix) {
  const pf::RationalMatrix a = pf::read_matrix(slurp(matrix));
  emit(cfg, pf::render_charpoly(a, cfg.output_format(), cfg.tolerance()));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral, refined inertial and inertial arbitrariness of zero patterns"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "Seed for every stochastic search")->envname("PATTERNFORGE_SEED");
  app.add_option("--budget", cfg.budget, "Multi-start trials per target")->envname("PATTERNFORGE_BUDGET")->check(CLI::PositiveNumber);
  app.add_option("--eps", cfg.eps, "Tolerance for numeric root classification (0: scale-aware default)")
      ->envname("PATTERNFORGE_EPS")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--format", cfg.format, "Report format")
      ->envname("PATTERNFORGE_FORMAT")
      ->check(CLI::IsMember({"json", "markdown", "md", "csv"}));
  app.add_option("--jobs", cfg.jobs, "Worker threads for censuses")->envname("PATTERNFORGE_JOBS")->check(CLI::PositiveNumber);
  app.add_option("-o,--output", cfg.output, "Write the report to a file instead of stdout");
  app.fallthrough();

  std::string source, matrix, certificate, path, ordering, target, charpoly, table;
  int order = 0, nnz = 0;

  auto* analyze = app.add_subcommand("analyze", "Full single-pattern pipeline");
  analyze->add_option("pattern", source, "Pattern file, - for stdin, or a built-in name such as W5")->required();

  auto* classify = app.add_subcommand("classify", "Census of irreducible classes with cross-checks");
  classify->add_option("--order", order, "Matrix order (at most 5)")->required()->check(CLI::Range(1, 5));
  classify->add_option("--nnz", nnz, "Number of free entries (omit for every count)");

  auto* appendix = app.add_subcommand("verify-appendix", "Replay the bundled appendix matrices");
  appendix->add_option("--table", table, "Alternative appendix table JSON");

  auto* nc = app.add_subcommand("nc-test", "Nilpotent-centralizer test");
  nc->add_option("pattern", source, "Pattern file, - for stdin, or a built-in name");
  nc->add_option("--matrix", matrix, "Test this nilpotent matrix instead of searching");
  nc->add_option("--certificate", certificate, "Verify a certificate JSON file");

  auto* nest = app.add_subcommand("nest", "Properly signed nests and their extreme inertias");
  nest->add_option("pattern", source, "Pattern file, - for stdin, or a built-in name");
  nest->add_option("--matrix", matrix, "Matrix file");
  nest->add_option("--path", path, "Canonical path matrix n,alpha");
  nest->add_option("--ordering", ordering, "Comma-separated 1-based ordering to check");

  auto* realize = app.add_subcommand("realize", "Exact witness for a refined inertia or characteristic polynomial");
  realize->add_option("pattern", source, "Pattern file, - for stdin, or a built-in name")->required();
  auto* tgt = realize->add_option("--target", target, "Refined inertia n+,n-,nz,ni");
  auto* cp = realize->add_option("--charpoly", charpoly, "Coefficients E_1,..,E_n of x^n - E_1 x^(n-1) + ...");
  tgt->excludes(cp);
  realize->callback([&] {
    if (target.empty() && charpoly.empty()) throw CLI::RequiredError("--target or --charpoly");
  });

  auto* charpoly_cmd = app.add_subcommand("charpoly", "Exact characteristic polynomial and refined inertia");
  charpoly_cmd->add_option("matrix", matrix, "Matrix file or - for stdin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; usage errors share the input-error code.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return cmd_analyze(cfg, source);
    if (*classify) return cmd_classify(cfg, order, classify->count("--nnz") ? nnz : 0);
    if (*appendix) return cmd_verify_appendix(cfg, table);
    if (*nc) return cmd_nc_test(cfg, source, matrix, certificate);
    if (*nest) return cmd_nest(cfg, source, matrix, path, ordering);
    if (*realize) return cmd_realize(cfg, source, target, charpoly);
    if (*charpoly_cmd) return cmd_charpoly(cfg, matrix);
  } catch (const pf::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const pf::BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
