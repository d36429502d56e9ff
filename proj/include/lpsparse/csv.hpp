#pragma once

#include <filesystem>
#include <string>

#include "lpsparse/datagen.hpp"
#include "lpsparse/types.hpp"

namespace lpsparse::csv {

/// %.17g, locale independent. Round-trips every finite double exactly.
std::string format_double(double value);

/// Plain numeric CSV, one matrix row per line, no header. Blank lines are
/// skipped; ragged rows are a ParseError carrying the line number.
Matrix read_matrix(const std::filesystem::path& file);
void write_matrix(const std::filesystem::path& file, const Matrix& m);

/// Single-column CSV.
Vector read_vector(const std::filesystem::path& file);
void write_vector(const std::filesystem::path& file, const Vector& v);

/**
 * Problem bundle directory:
 *   A.csv      design matrix
 *   y.csv      observations
 *   xtrue.csv  ground truth
 *   meta.csv   "seed,noise_var" header and one value line
 * The noise vector is not stored; it is recovered as y - A x_true.
 */
void write_problem_bundle(const std::filesystem::path& dir, const Problem& problem);
Problem read_problem_bundle(const std::filesystem::path& dir);

}  // namespace lpsparse::csv
