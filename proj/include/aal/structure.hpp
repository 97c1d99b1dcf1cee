#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aal/density.hpp"
#include "aal/group.hpp"
#include "aal/progressions.hpp"
#include "aal/rational.hpp"
#include "aal/setops.hpp"

namespace aal {

/// A certified set of almost-periods: every x in x_set satisfies
/// ||tau_x(f * mu_A) - f * mu_A||_p <= eps_certified * ||f||_p, re-verified
/// by direct evaluation (exact integer arithmetic when p is an even integer
/// and f is a counting map; floating point with 1e-9 certificate slack
/// otherwise). 0 is always a member and the set is negation-closed.
struct AlmostPeriodSet {
  GSet x_set;
  std::string f_id;
  double p = 2.0;
  double eps_requested = 0.0;
  double eps_certified = 0.0;
  GSet a_set;
  int sample_count = 0;  // k
  int trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t good_anchors = 0;
  double best_tuple_error = 0.0;  // best relative tuple error seen
};

/// ||tau_x(f * mu_A) - f * mu_A||_p / ||f||_p evaluated directly; the
/// recertification oracle for AlmostPeriodSet (independent of the sampler).
double almost_period_error(const DensityMap& f, const GSet& a, Index x, double p);

AlmostPeriodSet croot_sisask(const DensityMap& f, const GSet& a, double eps, double p, int k,
                             int trials, std::uint64_t seed, std::string f_id = "f");

struct PlunneckeReport {
  Rat k_ratio;  // |A+A| / |A|
  struct Row {
    std::uint64_t n;
    std::uint64_t size_na;   // |nA|
    double bound;            // K^n |A|
    double slack;            // bound / |nA|
    bool ok;
    bool exact;  // compared in integer arithmetic (vs long-double logs)
  };
  std::vector<Row> rows;
  bool all_ok = true;
};
PlunneckeReport plunnecke_check(const GSet& a, std::uint64_t n_max);

struct ChangReport {
  std::uint64_t k = 0;
  std::uint64_t hyp_lhs = 0;     // |(3k+1)X|
  std::uint64_t hyp_rhs = 0;     // 2^k |X|
  bool hypothesis_holds = false;
  struct Row {
    std::uint64_t n;
    std::uint64_t size_nx;
    std::uint64_t bound;  // n^k |X|
    bool ok;
  };
  std::vector<Row> rows;  // only filled when the hypothesis holds
  bool conclusion_ok = true;
};
ChangReport chang_growth_test(const GSet& x, std::uint64_t k, std::uint64_t n_max);

struct KkStep {
  GSet a_dd;       // A'' at the start of the step
  double m_bound;  // current M
  double l_bound;  // current L
  int branch;      // 1 or 2
  std::optional<Index> chosen_x;
  std::uint64_t s_size;
};

struct IterationTrace {
  std::vector<KkStep> steps;
  GSet final_a_dd;
  GSet final_sym_set;
  double final_eta_threshold = 0.0;  // R = K^-eta
  Rat k_ratio;
  double eta = 0.0;
  bool completed = false;  // false when the step limit was hit
};

IterationTrace katz_koester_iterate(const GSet& a, double eta, int max_steps);

/// <1_{A+A}, 1_A * 1_A> computed exactly; always |A|^2.
std::uint64_t lopez_ross_inner(const GSet& a);

struct BsgCertificate {
  GSet a_prime;
  std::uint64_t size = 0;
  Rat prime_doubling;
  double size_exponent = 0.0;      // log(|A|/|A'|) / log(1/delta)
  double doubling_exponent = 0.0;  // log(|A'+A'|/|A'|) / log(1/delta)
  std::vector<Index> shifts;       // the shifts whose intersection produced A'
  int trials = 0;
  std::uint64_t seed = 0;
};
BsgCertificate bsg_extract(const GSet& a, double delta, int trials, std::uint64_t seed);

enum class PipelineVariant { Basic, Schoen, Lp };
const char* pipeline_variant_name(PipelineVariant v);

struct PipelineParams {
  int k = 8;
  int trials = 64;
  std::uint64_t seed = 0;
  double eta = 0.5;        // schoen variant
  int kk_max_steps = 32;   // schoen variant
  std::uint64_t chang_k = 0;      // 0 = derived from K
  std::uint64_t chang_n_max = 6;
};

struct PipelineReport {
  PipelineVariant variant;
  GSet input;
  Rat k_ratio;  // exact doubling of the input
  PipelineParams params;
  double eps = 0.0;  // Croot-Sisask parameter actually used
  double p = 2.0;

  std::optional<AlmostPeriodSet> aps;
  std::optional<GSet> x_set;
  std::optional<GSet> y_set;  // translate of X - X
  Index y_translate = 0;
  std::uint64_t intersection = 0;  // |A cap Y|
  double ratio_of_a = 0.0;         // |A cap Y| / |A|
  double ratio_of_y = 0.0;         // |A cap Y| / |Y|
  std::optional<GrowthOrder> x_growth;
  std::optional<ChangReport> chang;

  // basic variant: kX inside 2A - 2A
  bool containment_checked = false;
  bool containment_holds = false;
  bool budget_satisfied = false;  // certified eps meets the triangle budget

  // lp variant: <tau_x(1_{A+A}), 1_A * 1_A> >= |A|^2 / 2 on kX
  bool lp_inner_checked = false;
  bool lp_inner_holds = false;
  std::uint64_t lp_inner_min = 0;

  // schoen variant
  std::optional<IterationTrace> kk_trace;

  bool partial = false;  // a sub-step failed; failed_stage names it
  std::string failed_stage;
  std::string failure_reason;

  std::string to_json() const;
};

PipelineReport run_pipeline(const GSet& a, PipelineVariant variant, const PipelineParams& params);

std::string almost_period_set_to_json(const AlmostPeriodSet& aps);
std::string plunnecke_to_json(const PlunneckeReport& r);
std::string chang_to_json(const ChangReport& r);
std::string trace_to_json(const IterationTrace& t);
std::string bsg_to_json(const BsgCertificate& c);

}  // namespace aal
