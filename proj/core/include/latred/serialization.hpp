#pragma once

#include <string>
#include <vector>

#include "latred/lattice.hpp"
#include "latred/lemma_checks.hpp"
#include "latred/npp_reduction.hpp"
#include "latred/reduction.hpp"
#include "latred/sbp_reduction.hpp"
#include "latred/solvers.hpp"

namespace latred {

// All functions below exchange JSON text. Matrices are row-major nested
// arrays, doubles are written with round-trip precision, and big integers
// are decimal strings. Parsers throw std::invalid_argument on malformed or
// inconsistent input.

/// {"n", "B": [[{"num", "den"}]], "S", "t", "r", "lambda_n", "gamma",
///  "profile", "seed"}
std::string instance_to_json(const PlantedIncGDDInstance& inst, int indent = 2);
PlantedIncGDDInstance instance_from_json(const std::string& text);

/// {"x": [int], "value", "solver", "budget_used"}
std::string solver_output_to_json(const SolverOutput& out, int indent = 2);
SolverOutput solver_output_from_json(const std::string& text);

/// {"pipeline": "sbp", "instance", "params", "embedding", "U", "V",
///  "V_coeffs", "A_tilde", "K", "A"}
std::string transcript_to_json(const SbpTranscript& tr, int indent = -1);
/// {"pipeline": "npp", "instance", "params", "crt": {"p", "q", "c"}, "U",
///  "V", "V_coeffs", "A", "A_floor", "grid", "f", "y", "K", "a"}
std::string transcript_to_json(const NppTranscript& tr, int indent = -1);

/// "sbp" or "npp".
std::string transcript_pipeline(const std::string& text);
SbpTranscript sbp_transcript_from_json(const std::string& text);
/// Rebuilds the CRT system from the stored primes and rejects a transcript
/// whose stored q or coefficients disagree.
NppTranscript npp_transcript_from_json(const std::string& text);

/// [{test, n, m, samples, statistic, threshold, pass}]
std::string stat_reports_to_json(const std::vector<StatReport>& reports, int indent = 2);

/// {s, attempts, dist, bound, verified, attempts_log: [...]}
std::string reduction_result_to_json(const ReductionResult& result, int indent = 2);

std::string read_text_file(const std::string& path);
/// Creates parent directories as needed; throws std::runtime_error on I/O
/// failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace latred
