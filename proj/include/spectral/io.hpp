#pragma once

#include <string>
#include <vector>

#include "spectral/canonical.hpp"
#include "spectral/measure.hpp"
#include "spectral/string.hpp"
#include "spectral/sturm_liouville.hpp"

namespace spectral::io {

/// JSON serialization; deserializers throw std::invalid_argument with a
/// parse diagnostic on malformed input.
std::string to_json(const SLProblem& problem);
SLProblem sl_problem_from_json(const std::string& text);

std::string to_json(const SpectralMeasure& measure);
SpectralMeasure measure_from_json(const std::string& text);

std::string to_json(const Hamiltonian& h);
Hamiltonian hamiltonian_from_json(const std::string& text);

std::string to_json(const MassDistribution& s);
MassDistribution string_from_json(const std::string& text);

/// Shortest round-trip decimal representation (up to 17 significant digits).
std::string format_number(double v);

/// One header line, comma-separated full-precision columns; deterministic.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

std::string read_file(const std::string& path);

}  // namespace spectral::io
