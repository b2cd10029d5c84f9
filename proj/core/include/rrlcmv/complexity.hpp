#pragma once

// Per-snapshot arithmetic cost of the LCMV algorithms as closed-form counts
// of complex additions and multiplications.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rrlcmv {

enum class CostedAlgorithm { lcmv_sg, lcmv_rls, rjio_sg, rjio_rls, smi };

struct OpCounts {
  std::uint64_t additions = 0;
  std::uint64_t multiplications = 0;

  friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

struct ComplexityRow {
  std::string algorithm;
  OpCounts counts;
};

using ComplexityReport = std::vector<ComplexityRow>;

/// Canonical display names: LCMV-SG, LCMV-RLS, RJIO-SG, RJIO-RLS, SMI.
std::string_view algorithm_name(CostedAlgorithm algorithm);

/// Case-insensitive lookup by display name; throws ConfigError if unknown.
CostedAlgorithm parse_costed_algorithm(std::string_view name);

std::span<const CostedAlgorithm> all_costed_algorithms();

/// Evaluates the cost polynomials at (M, D). Needs M >= 2 and 1 <= D <= M.
/// SMI's 2/3 M^3 term is rounded to the nearest integer.
OpCounts complexity_counts(CostedAlgorithm algorithm, int m, int d);
OpCounts complexity_counts(std::string_view algorithm, int m, int d);

ComplexityReport complexity_report(int m, int d);

}  // namespace rrlcmv
