#include "rrlcmv/complexity.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>

#include "rrlcmv/errors.hpp"

namespace rrlcmv {

namespace {

constexpr std::array kAlgorithms = {CostedAlgorithm::lcmv_sg, CostedAlgorithm::lcmv_rls,
                                    CostedAlgorithm::rjio_sg, CostedAlgorithm::rjio_rls,
                                    CostedAlgorithm::smi};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

std::string_view algorithm_name(CostedAlgorithm algorithm) {
  switch (algorithm) {
    case CostedAlgorithm::lcmv_sg: return "LCMV-SG";
    case CostedAlgorithm::lcmv_rls: return "LCMV-RLS";
    case CostedAlgorithm::rjio_sg: return "RJIO-SG";
    case CostedAlgorithm::rjio_rls: return "RJIO-RLS";
    case CostedAlgorithm::smi: return "SMI";
  }
  return "?";
}

CostedAlgorithm parse_costed_algorithm(std::string_view name) {
  for (auto alg : kAlgorithms) {
    if (iequals(name, algorithm_name(alg))) {
      return alg;
    }
  }
  throw ConfigError("unknown algorithm for complexity counts: '" + std::string(name) + "'");
}

std::span<const CostedAlgorithm> all_costed_algorithms() { return kAlgorithms; }

OpCounts complexity_counts(CostedAlgorithm algorithm, int m, int d) {
  if (m < 2 || d < 1 || d > m) {
    throw ConfigError("complexity counts need M >= 2 and 1 <= D <= M (got M=" +
                      std::to_string(m) + ", D=" + std::to_string(d) + ")");
  }
  const auto mm = static_cast<std::int64_t>(m);
  const auto dd = static_cast<std::int64_t>(d);
  std::int64_t add = 0;
  std::int64_t mul = 0;
  switch (algorithm) {
    case CostedAlgorithm::lcmv_sg:
      add = 3 * mm + 1;
      mul = 3 * mm + 2;
      break;
    case CostedAlgorithm::lcmv_rls:
      add = 3 * mm * mm - 2 * mm + 3;
      mul = 6 * mm * mm + 2 * mm + 2;
      break;
    case CostedAlgorithm::rjio_sg:
      add = 3 * dd * mm + 4 * mm + 2 * dd - 2;
      mul = 5 * dd * mm + 2 * mm + 5 * dd + 2;
      break;
    case CostedAlgorithm::rjio_rls:
      add = 3 * mm * mm - mm + 3 + 3 * dd * dd - 7 * dd + 3;
      mul = 7 * mm * mm + 3 * mm + 7 * dd * dd + 10 * dd;
      break;
    case CostedAlgorithm::smi: {
      const std::int64_t two_thirds_cube = (2 * mm * mm * mm + 1) / 3;
      add = two_thirds_cube + 3 * mm * mm;
      mul = two_thirds_cube + 5 * mm * mm;
      break;
    }
  }
  return {static_cast<std::uint64_t>(add), static_cast<std::uint64_t>(mul)};
}

OpCounts complexity_counts(std::string_view algorithm, int m, int d) {
  return complexity_counts(parse_costed_algorithm(algorithm), m, d);
}

ComplexityReport complexity_report(int m, int d) {
  ComplexityReport report;
  for (auto alg : kAlgorithms) {
    report.push_back({std::string(algorithm_name(alg)), complexity_counts(alg, m, d)});
  }
  return report;
}

}  // namespace rrlcmv
