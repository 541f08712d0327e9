#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffield/groebner.hpp"
#include "theta/theta.hpp"

namespace pib {

struct JordanType {
  unsigned p = 0;
  std::vector<unsigned> parts;     // decreasing block sizes
  std::vector<std::size_t> ranks;  // rank N^s, s = 0..p

  std::size_t dim() const { return ranks.empty() ? 0 : ranks[0]; }
  std::string to_string() const;  // e.g. [3^2,1]
  bool operator==(const JordanType& o) const { return parts == o.parts; }
  bool operator!=(const JordanType& o) const { return !(*this == o); }
};

JordanType jordan_type_from_ranks(std::vector<std::size_t> ranks, unsigned p);
JordanType jordan_type(const FMatrix& N, unsigned p);
JordanType local_jordan_type(const ModuleRep& M, const ElabLattice& L, const PiPoint& xi, bool require_flat = true);

enum class ChartVia { Full, SE };
JordanType generic_jordan_type(const ModuleRep& M, const ElabLattice& L, std::size_t member, ChartVia via);

// generic rank of a form matrix; unit pivots first, then fraction-free elimination
std::size_t generic_rank_fast(const PolyMatrix& A, const std::vector<int>* col_priority = nullptr);

enum class Status { Constant, NonConstant, Unknown };
enum class Method { Exact, Sampled };
const char* status_name(Status s);
const char* method_name(Method m);

struct DecisionOptions {
  Method method = Method::Exact;
  std::size_t samples = 200;
  unsigned max_ext = 3;  // sampled extension degrees 1..max_ext
  std::uint64_t seed = 1;
  std::size_t minor_cap = 20000;
  GroebnerLimits limits;
};

struct Witness {
  PiPoint point;
  std::size_t rank = 0;
  JordanType type;
};

struct ChartResult {
  std::size_t member = 0;
  std::size_t generic_rank = 0;
  Status status = Status::Unknown;
  Method method = Method::Exact;
  std::string detail;
  std::optional<Witness> witness;
};

struct Verdict {
  Status status = Status::Unknown;
  Method method = Method::Exact;
  unsigned j = 1;
  std::size_t rank = 0;  // common generic rank when constant, otherwise the largest
  std::optional<Witness> witness;
  std::string reason;
  std::vector<ChartResult> charts;
  std::size_t samples = 0;
  unsigned max_ext = 0;
};

// exact decision on one maximal chart
ChartResult decide_chart_exact(const ModuleRep& M, const ElabLattice& L, std::size_t maximal, unsigned j,
                               const DecisionOptions& opt);
ChartResult decide_chart_sampled(const ModuleRep& M, const ElabLattice& L, std::size_t maximal, unsigned j,
                                 const DecisionOptions& opt);

Verdict decide_constant_jrank(const ModuleRep& M, const ElabLattice& L, unsigned j, const DecisionOptions& opt = {});

struct JordanVerdict {
  Status status = Status::Unknown;
  Method method = Method::Exact;
  std::optional<JordanType> type;
  std::vector<Verdict> per_j;
  std::optional<Witness> witness;
};

JordanVerdict decide_constant_jordan_type(const ModuleRep& M, const ElabLattice& L, const DecisionOptions& opt = {});

// sampled: Jordan types seen at random points of J_E^s \ J_E^{s+1}, per maximal E and s
struct StratumResult {
  std::size_t member = 0;
  unsigned s = 0;
  std::vector<JordanType> types;  // distinct, in order of appearance
};
std::vector<StratumResult> stratum_check(const ModuleRep& M, const ElabLattice& L, std::size_t samples,
                                         std::uint64_t seed);

}  // namespace pib
