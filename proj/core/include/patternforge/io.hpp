#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "patternforge/classify.hpp"
#include "patternforge/matrix.hpp"
#include "patternforge/nests.hpp"
#include "patternforge/nilpotent_nc.hpp"
#include "patternforge/obstructions.hpp"
#include "patternforge/pattern.hpp"
#include "patternforge/realization.hpp"

namespace patternforge {

enum class OutputFormat { Json, Markdown, Csv };

std::string to_string(OutputFormat f);
/// "json", "markdown" (or "md"), "csv". Throws std::invalid_argument.
OutputFormat parse_output_format(std::string_view text);

// JSON documents. Exact scalars are strings ("11/2", "1-1/2*sqrt(5)");
// supports are sorted 1-based [row, col] pairs. Every *_from_json throws
// ParseError on malformed input and inverts the matching *_to_json.

std::string pattern_to_json(const ZeroPattern& p);
ZeroPattern pattern_from_json(std::string_view text);
/// Accepts either the text grid or the JSON document.
ZeroPattern read_pattern(std::string_view text);

std::string matrix_to_json(const RationalMatrix& a);
RationalMatrix matrix_from_json(std::string_view text);
/// Accepts either whitespace-separated rationals or a JSON array of rows.
RationalMatrix read_matrix(std::string_view text);

std::string witness_to_json(const RealizationWitness& w);
RealizationWitness witness_from_json(std::string_view text);

std::string certificate_to_json(const NcCertificate& c);
NcCertificate certificate_from_json(std::string_view text);
std::string solution_to_json(const SolutionCertificate& c);
SolutionCertificate solution_from_json(std::string_view text);

std::string obstruction_to_json(const Obstruction& o);
Obstruction obstruction_from_json(std::string_view text);

std::string nest_report_to_json(const NestReport& r);
NestReport nest_report_from_json(std::string_view text);

std::string record_to_json(const ClassificationRecord& r);
ClassificationRecord record_from_json(std::string_view text);

// Rendered reports in any output format.

/// Single-pattern analysis: irreducibility, cycle census, obstructions,
/// certificate and survey.
std::string render_analysis(const ClassificationRecord& r, OutputFormat f);
std::string render_census(const CensusReport& r, OutputFormat f);
std::string render_appendix(const std::vector<AppendixRowReport>& rows, OutputFormat f);
std::string render_certificate(const NcCertificate& c, OutputFormat f);
std::string render_nest(const NestReport& r, OutputFormat f);
std::string render_witness(const std::optional<RealizationWitness>& w, const ZeroPattern& p, OutputFormat f);
/// Characteristic polynomial, exact refined inertia and root estimates, with
/// the tolerance-based classification at eps alongside for comparison.
std::string render_charpoly(const RationalMatrix& a, OutputFormat f, std::optional<long double> eps = {});

}  // namespace patternforge
