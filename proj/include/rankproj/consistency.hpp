#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankproj/projection.hpp"

namespace rankproj {

enum class Preference { first, second, none };

/// Item i is preferred to j iff f_i > f_j; equal scores express no preference.
Preference preference(double f_i, double f_j);

/// True iff i and j are closer to each other than either is to k:
/// min(g_ik, g_jk) > g_ij.
bool cluster_gate(double g_ik, double g_jk, double g_ij);

enum class Verdict { inconsistent, consistent, tie, gate_failed };

/// Which ordering condition decided the verdict.
enum class Witness {
  none,
  k_between_descending,  // f_i > f_k > f_j
  k_between_ascending,   // f_i < f_k < f_j
  k_below_both,          // min(f_i, f_j) > f_k
  k_above_both,          // max(f_i, f_j) < f_k
};

std::string_view to_string(Verdict v);
std::string_view to_string(Witness w);
/// Equation number of the condition as it appears in the triple definition (3..6), 0 for none.
int equation_number(Witness w);

struct TripleVerdict {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  bool gate_holds = false;
  Verdict verdict = Verdict::gate_failed;
  Witness witness = Witness::none;
  double severity = 0.0;  // |f_k - (f_i + f_j) / 2|

  friend bool operator==(const TripleVerdict&, const TripleVerdict&) = default;
};

/// Classifies (i, j, k) where i and j are the candidate co-clustered pair.
/// If f_k equals f_i or f_j the verdict is `tie`.
TripleVerdict classify_triple(double f_i, double f_j, double f_k, double g_ik, double g_jk,
                              double g_ij);

struct EnumerationOptions {
  std::size_t budget = 100;
  std::size_t exhaustive_limit = 60;       // scan every triple up to this N
  std::size_t sample_count = 100000;       // triples drawn above the limit
  std::uint64_t seed = 0;
  std::size_t workers = 0;                 // 0 = hardware concurrency
};

/// Inconsistent triples sorted by severity (descending), then by (i, j, k).
/// Triples are unordered in (i, j); indices refer to `scores` / projection order.
std::vector<TripleVerdict> enumerate_inconsistencies(std::span<const double> scores,
                                                     const Projection& projection,
                                                     const EnumerationOptions& options = {});

}  // namespace rankproj
