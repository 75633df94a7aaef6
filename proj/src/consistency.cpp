#include "rankproj/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "rankproj/error.hpp"

namespace rankproj {

Preference preference(double f_i, double f_j) {
  if (f_i > f_j) return Preference::first;
  if (f_j > f_i) return Preference::second;
  return Preference::none;
}

bool cluster_gate(double g_ik, double g_jk, double g_ij) { return std::min(g_ik, g_jk) > g_ij; }

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::inconsistent: return "inconsistent";
    case Verdict::consistent: return "consistent";
    case Verdict::tie: return "tie";
    case Verdict::gate_failed: return "gate_failed";
  }
  return "unknown";
}

std::string_view to_string(Witness w) {
  switch (w) {
    case Witness::none: return "none";
    case Witness::k_between_descending: return "k_between_descending";
    case Witness::k_between_ascending: return "k_between_ascending";
    case Witness::k_below_both: return "k_below_both";
    case Witness::k_above_both: return "k_above_both";
  }
  return "unknown";
}

int equation_number(Witness w) {
  switch (w) {
    case Witness::k_between_descending: return 3;
    case Witness::k_between_ascending: return 4;
    case Witness::k_below_both: return 5;
    case Witness::k_above_both: return 6;
    case Witness::none: break;
  }
  return 0;
}

TripleVerdict classify_triple(double f_i, double f_j, double f_k, double g_ik, double g_jk,
                              double g_ij) {
  TripleVerdict v;
  v.gate_holds = cluster_gate(g_ik, g_jk, g_ij);
  v.severity = std::abs(f_k - 0.5 * (f_i + f_j));
  if (!v.gate_holds) return v;
  if (f_k == f_i || f_k == f_j) {
    v.verdict = Verdict::tie;
  } else if (f_i > f_k && f_k > f_j) {
    v.verdict = Verdict::inconsistent;
    v.witness = Witness::k_between_descending;
  } else if (f_i < f_k && f_k < f_j) {
    v.verdict = Verdict::inconsistent;
    v.witness = Witness::k_between_ascending;
  } else if (std::min(f_i, f_j) > f_k) {
    v.verdict = Verdict::consistent;
    v.witness = Witness::k_below_both;
  } else {
    v.verdict = Verdict::consistent;
    v.witness = Witness::k_above_both;
  }
  return v;
}

namespace {

struct TripleScanner {
  std::span<const double> scores;
  const Projection& projection;

  double g(std::size_t a, std::size_t b) const {
    return distance(projection.coords[a], projection.coords[b]);
  }

  void visit(std::size_t i, std::size_t j, std::size_t k, std::vector<TripleVerdict>& out) const {
    auto v = classify_triple(scores[i], scores[j], scores[k], g(i, k), g(j, k), g(i, j));
    if (v.verdict != Verdict::inconsistent) return;
    v.i = i;
    v.j = j;
    v.k = k;
    out.push_back(v);
  }
};

bool by_severity(const TripleVerdict& a, const TripleVerdict& b) {
  if (a.severity != b.severity) return a.severity > b.severity;
  if (a.i != b.i) return a.i < b.i;
  if (a.j != b.j) return a.j < b.j;
  return a.k < b.k;
}

}  // namespace

std::vector<TripleVerdict> enumerate_inconsistencies(std::span<const double> scores,
                                                     const Projection& projection,
                                                     const EnumerationOptions& options) {
  const std::size_t n = scores.size();
  if (projection.coords.size() != n)
    throw Error(ErrorKind::invalid_input, "scores and projection cover different item counts");
  std::vector<TripleVerdict> found;
  if (n < 3) return found;
  const TripleScanner scan{scores, projection};

  if (n <= options.exhaustive_limit) {
    std::size_t workers = options.workers ? options.workers : std::thread::hardware_concurrency();
    workers = std::clamp<std::size_t>(workers, 1, n);
    // Contiguous chunks of the outer index; results merged in chunk order.
    std::vector<std::vector<TripleVerdict>> parts(workers);
    auto run = [&](std::size_t w) {
      const std::size_t begin = n * w / workers;
      const std::size_t end = n * (w + 1) / workers;
      for (std::size_t i = begin; i < end; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k)
            if (k != i && k != j) scan.visit(i, j, k, parts[w]);
    };
    if (workers == 1) {
      run(0);
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }
    for (auto& p : parts) found.insert(found.end(), p.begin(), p.end());
  } else {
    std::mt19937_64 rng(options.seed);
    struct Triple {
      std::size_t i, j, k;
      auto operator<=>(const Triple&) const = default;
    };
    std::vector<Triple> picks;
    picks.reserve(options.sample_count);
    while (picks.size() < options.sample_count) {
      std::size_t i = rng() % n;
      std::size_t j = rng() % n;
      std::size_t k = rng() % n;
      if (i == j || k == i || k == j) continue;
      if (j < i) std::swap(i, j);
      picks.push_back({i, j, k});
    }
    std::sort(picks.begin(), picks.end());
    picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
    for (const auto& t : picks) scan.visit(t.i, t.j, t.k, found);
  }

  std::sort(found.begin(), found.end(), by_severity);
  if (found.size() > options.budget) found.resize(options.budget);
  return found;
}

}  // namespace rankproj
