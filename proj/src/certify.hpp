#ifndef CMG_CERTIFY_HPP
#define CMG_CERTIFY_HPP

#include <optional>
#include <vector>

#include <json.hpp>

#include "charpoly.hpp"

namespace cmg {

enum class Verdict { Irreducible, Reducible, Unknown };

const char* verdict_name(Verdict v);

struct Certificate {
  Verdict verdict = Verdict::Unknown;
  nlohmann::json evidence;
  std::vector<TPoly> factors;  // nonempty exactly for Reducible, re-multiplied

  nlohmann::json to_json() const;
};

// deterministic specialization point k of the small-primes grid: x_i = p_i^k
std::vector<Int> grid_point(int k, int m);

// Irreducibility of a monic-in-t polynomial over Z[x_1..x_m].
// degree 1: trivially irreducible; degree 2: decided exactly through the
// discriminant square test; degree >= 3: specialization certificates over the
// grid, Unknown after the budget.
Certificate irreducible(const TPoly& p, int budget = 8);

// exact nonvanishing tests, evaluation witness first, symbolic fallback
bool resultant_nonzero(const TPoly& a, const TPoly& b, int* witness = nullptr);
bool discriminant_nonzero(const TPoly& p, int* witness = nullptr);
bool poly_square(const MPoly& p, std::optional<MPoly>* root = nullptr,
                 int* witness = nullptr);

struct SeparationReport {
  bool distinct = false;
  bool res_same_nonzero = false;
  bool res_opposite_nonzero = false;
  bool disc_a_nonzero = false;
  bool disc_b_nonzero = false;

  bool separated() const {
    return distinct && res_same_nonzero && res_opposite_nonzero;
  }
  nlohmann::json to_json() const;
};

// equality, common-eigenvalue and opposite-eigenvalue branches, plus the
// within-block distinct-roots discriminants
SeparationReport separated(const TPoly& chi_a, const TPoly& chi_b);

struct SuiteOptions {
  int budget = 8;
  long graph_cap = 200000;
  int jobs = 1;
  bool pairs = true;
};

struct SuiteGraphEntry {
  MarkedGraph graph;
  TPoly chi;
  Certificate cert;
  bool disc_nonzero = false;
};

struct SuitePairEntry {
  int i = 0;
  int j = 0;
  SeparationReport rep;
};

struct SuiteReport {
  int q = 0, m = 0, max_dimension = 0;
  SuiteOptions options;
  std::vector<SuiteGraphEntry> graphs;
  std::vector<SuitePairEntry> pairs;
  bool incomplete = false;

  int count(Verdict v) const;
  bool all_separated() const;
  bool all_discs_nonzero() const;
  bool mathematical_failure() const;  // any Reducible or non-separated pair
  nlohmann::json to_json() const;
};

// canonical connected complete marked graphs containing the identity with at
// most max_dimension + 1 vertices
std::vector<MarkedGraph> enumerate_canonical_graphs(int q, int m, int max_dimension,
                                                    long cap, bool* truncated);

SuiteReport run_suite(int q, int m, int max_dimension,
                      const SuiteOptions& options = {});

}  // namespace cmg

#endif
