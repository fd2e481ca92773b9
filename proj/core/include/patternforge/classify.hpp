#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "patternforge/explicit_solution.hpp"
#include "patternforge/nilpotent_nc.hpp"
#include "patternforge/obstructions.hpp"
#include "patternforge/pattern.hpp"
#include "patternforge/realization.hpp"

namespace patternforge {

enum class Verdict { ProvenYes, ProvenNo, Unknown };

/// "proven-yes", "proven-no", "unknown".
std::string to_string(Verdict v);
Verdict parse_verdict(const std::string& text);

struct PropertyVerdict {
  Verdict verdict = Verdict::Unknown;
  std::string reason;
  bool operator==(const PropertyVerdict&) const = default;
};

/// E_k vanishes identically on trace-zero realizations, so x^n + x^(n-k) is
/// unattainable and the pattern is not spectrally arbitrary.
struct TraceZeroArgument {
  int k = 0;
  std::string name() const;  // "trace-zero-forces-E<k>"
};

/// Every k >= 2 for which E_k is identically zero after eliminating one loop
/// with the trace-zero relation. Empty for loopless patterns.
std::vector<TraceZeroArgument> trace_zero_arguments(const ZeroPattern& p);

struct ClassificationRecord {
  ZeroPattern pattern;  // canonical representative
  int nnz = 0;
  bool irreducible = false;
  PropertyVerdict sap, riap, iap;
  std::vector<Obstruction> obstructions;
  std::vector<std::string> argument_tags;
  std::optional<NcCertificate> nc;
  /// Alternative SAP proof for patterns with no usable nilpotent realization.
  std::optional<SolutionCertificate> solution;
  std::map<RefinedInertia, RealizationWitness> witnesses;
  std::vector<RefinedInertia> unrealized;  // attempted without success
  std::vector<std::string> contradictions;
  std::string casework;  // branch of the order-4, 7-entry case analysis, if any

  bool nc_certified() const { return nc && nc->verdict == NcVerdict::SapCertified; }
  bool sap_certified() const { return nc_certified() || solution.has_value(); }
};

struct ClassifyOptions {
  RealizeOptions realize;
  NilpotentOptions nilpotent;
  /// Attempt every refined inertia even after a miss, and survey SAP classes too.
  bool full_survey = false;
  bool attempt_nc = true;
};

/// Obstructions, nilpotent-centralizer test, staged realization survey (one
/// refinement per inertia first, then the remaining refined inertias),
/// verdict assembly with hierarchy enforcement, and a contradiction audit.
/// The record is keyed by the canonical form of p.
ClassificationRecord classify(const ZeroPattern& p, const ClassifyOptions& opts = {});

/// As classify, reusing witnesses and certificates from already classified
/// subpatterns (each embedded into p by a symmetry).
ClassificationRecord classify_with(const ZeroPattern& p, const ClassifyOptions& opts,
                                   const std::vector<const ClassificationRecord*>& contained);

/// Re-derives verdict consequences: yes propagates from SAP to RIAP to IAP and
/// no propagates the other way.
void enforce_hierarchy(ClassificationRecord& r);

/// Witnesses contradicting obstructions, certificates contradicting
/// obstructions, and invalid witnesses.
std::vector<std::string> audit(const ClassificationRecord& r);

/// Canonical representatives of every pattern of order n with nnz free
/// entries, in increasing canonical code. Throws BudgetError when n > 5 or
/// the subset count exceeds 5 million.
std::vector<ZeroPattern> enumerate_patterns(int n, int nnz, bool irreducible_only);

/// "Case 1(A)(I)(a)(ii): ..." for irreducible order-4 patterns with seven free
/// entries; empty otherwise.
std::string order4_casework(const ZeroPattern& p);

struct CensusOptions {
  ClassifyOptions classify;
  int jobs = 1;
  bool inherit = true;  // reuse results from smaller contained classes
};

struct Census {
  int order = 0;
  std::vector<int> nnz_values;
  bool irreducible_only = true;
  std::vector<ClassificationRecord> records;  // ascending (nnz, canonical code)
  double seconds = 0;

  const ClassificationRecord* find(const ZeroPattern& p) const;
};

Census run_census(int n, const std::vector<int>& nnz_values, bool irreducible_only, const CensusOptions& opts = {});

/// Records satisfying pred with no proper subpattern (up to equivalence) in
/// the census also satisfying pred.
std::vector<const ClassificationRecord*> minimal_records(
    const Census& c, const std::function<bool(const ClassificationRecord&)>& pred);

struct CrossCheck {
  std::string name;
  bool pass = false;
  std::string expected;
  std::string observed;
  std::vector<std::string> details;
};

struct CensusReport {
  Census census;
  std::vector<CrossCheck> checks;
  bool all_pass() const;
};

/// Every irreducible order-3 class (3..9 entries) with full surveys, checked
/// against the order-3 SAP, RIAP and IAP characterizations.
CensusReport reproduce_order3(const CensusOptions& opts = {});
/// Every irreducible order-4 class with seven entries, checked against the
/// three-part characterization.
CensusReport reproduce_order4_nnz7(const CensusOptions& opts = {});
/// Generic census over one entry count (nnz <= 0 means every count; order 3
/// then runs the full order-3 reproduction). Adds the entry-count check where
/// it applies.
CensusReport census_report(int n, int nnz, const CensusOptions& opts = {});

struct AppendixRowReport {
  std::string pattern;  // "J1".."J6"
  int row = 0;          // 1-based within the pattern
  RationalMatrix matrix;
  Inertia stated;
  Inertia computed;
  CharPoly charpoly;
  bool conforms = false;  // matrix lies in Q(pattern)
  bool pass = false;
};

/// Parses the appendix table JSON and replays every row exactly. Throws
/// ParseError on malformed data.
std::vector<AppendixRowReport> verify_appendix(std::string_view table_json);
/// Replays the bundled table.
std::vector<AppendixRowReport> verify_appendix();

}  // namespace patternforge
