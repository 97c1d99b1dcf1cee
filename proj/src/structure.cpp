#include "aal/structure.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "aal/parallel.hpp"
#include "aal/rng.hpp"

namespace aal {

namespace {

constexpr double kFloatSlack = 1e-9;

std::optional<unsigned __int128> checked_pow(std::uint64_t base, std::uint64_t exp) {
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && acc > (~(unsigned __int128)0) / base) return std::nullopt;
    acc *= base;
  }
  return acc;
}

// f * mu_A computed straight from the averaging definition; the slow
// independent path used for recertification.
std::vector<double> convolve_with_mu_direct(const DensityMap& f, const GSet& a) {
  const GroupSpec& g = f.group();
  std::uint64_t n = g.size();
  std::vector<double> out(n, 0.0);
  auto elems = a.elements();
  for (Index t = 0; t < n; ++t) {
    double acc = 0.0;
    for (Index y : elems) acc += f.real_at(g.sub(t, y));
    out[t] = acc / (double)a.size();
  }
  return out;
}

}  // namespace

double almost_period_error(const DensityMap& f, const GSet& a, Index x, double p) {
  const GroupSpec& g = f.group();
  std::uint64_t n = g.size();
  auto t = convolve_with_mu_direct(f, a);
  double num = 0.0, den = 0.0;
  for (Index i = 0; i < n; ++i) {
    double d = std::abs(t[g.add(i, x)] - t[i]);
    double b = std::abs(f.real_at(i));
    num += std::pow(d, p);
    den += std::pow(b, p);
  }
  if (den == 0.0) return 0.0;
  return std::pow(num / den, 1.0 / p);
}

// --- Croot-Sisask -------------------------------------------------------------

namespace {

// The sampling engine. Tuples z in A^k propose almost-periods through their
// diagonal partners (g_{z + x diag} = tau_{-x}(g_z)); the certificate is what
// admits an x, never the proposal route. p = 2 with a counting f runs on
// exact integers; everything else runs in doubles with kFloatSlack recorded
// in the certificate.
class CsEngine {
public:
  CsEngine(const DensityMap& f, const GSet& a, double p)
      : f_(f), a_(a), g_(f.group()), p_(p), exact_(p == 2.0 && f.counting()) {
    n_ = g_.size();
    elems_ = a_.elements();
    if (exact_) {
      DensityMap conv = convolve(f_, DensityMap::indicator(a_));
      t_num_.assign(conv.counts().begin(), conv.counts().end());  // denominator |A|
      unsigned __int128 fs = 0;
      for (Index i = 0; i < n_; ++i) fs += (unsigned __int128)f_.count_at(i) * f_.count_at(i);
      f_sq_ = fs;
    } else {
      t_real_ = convolve_with_mu_direct(f_, a_);
      long double fp = 0.0;
      for (Index i = 0; i < n_; ++i) fp += std::pow(std::abs(f_.real_at(i)), (long double)p_);
      f_p_ = fp;
    }
  }

  bool exact() const { return exact_; }
  std::uint64_t universe() const { return n_; }
  const std::vector<Index>& a_elems() const { return elems_; }

  // scaled empirical approximant of a tuple: P(t) = |A| * sum_i f(t - z_i)
  // (exact path) or g_z(t) = (1/k) sum_i f(t - z_i) (float path)
  struct Anchor {
    std::vector<Index> z;
    std::vector<std::int64_t> p_int;
    std::vector<double> p_real;
    bool good = false;
    double rel_error = 0.0;
  };

  Anchor make_anchor(std::vector<Index> z, double eps_half) const {
    Anchor an;
    an.z = std::move(z);
    int k = (int)an.z.size();
    if (exact_) {
      an.p_int.assign(n_, 0);
      for (Index zi : an.z)
        for (Index t = 0; t < n_; ++t) an.p_int[t] += f_.count_at(g_.sub(t, zi));
      for (Index t = 0; t < n_; ++t) an.p_int[t] *= (std::int64_t)a_.size();
      an.rel_error = tuple_error_shifted_int(an, 0, k);
    } else {
      an.p_real.assign(n_, 0.0);
      for (Index zi : an.z)
        for (Index t = 0; t < n_; ++t) an.p_real[t] += f_.real_at(g_.sub(t, zi));
      for (Index t = 0; t < n_; ++t) an.p_real[t] /= (double)k;
      an.rel_error = tuple_error_shifted_real(an, 0);
    }
    an.good = an.rel_error <= eps_half;
    return an;
  }

  // relative tuple error of z + x*diag, reusing the anchor's approximant
  double tuple_error_shifted(const Anchor& an, Index x) const {
    return exact_ ? tuple_error_shifted_int(an, x, (int)an.z.size()) : tuple_error_shifted_real(an, x);
  }

  // exact certificate value ||tau_x T - T||_2 / ||f||_2 (p = 2, counting)
  double certificate_error_int(Index x) const {
    unsigned __int128 acc = 0;
    for (Index t = 0; t < n_; ++t) {
      std::int64_t d = t_num_[g_.add(t, x)] - t_num_[t];
      acc += (unsigned __int128)(d < 0 ? -d : d) * (unsigned __int128)(d < 0 ? -d : d);
    }
    if (acc == 0) return 0.0;
    long double asq = (long double)a_.size() * (long double)a_.size();
    return (double)std::sqrt((long double)acc / (asq * (long double)f_sq_));
  }

  double certificate_error_real(Index x) const {
    long double num = 0.0;
    for (Index t = 0; t < n_; ++t)
      num += std::pow(std::abs((long double)(t_real_[g_.add(t, x)] - t_real_[t])), (long double)p_);
    if (f_p_ == 0.0) return 0.0;
    return (double)std::pow(num / f_p_, (long double)(1.0 / p_));
  }

  double certificate_error(Index x) const {
    return exact_ ? certificate_error_int(x) : certificate_error_real(x);
  }

private:
  double tuple_error_shifted_int(const Anchor& an, Index x, int k) const {
    unsigned __int128 acc = 0;
    for (Index t = 0; t < n_; ++t) {
      std::int64_t d = an.p_int[g_.sub(t, x)] - (std::int64_t)k * t_num_[t];
      acc += (unsigned __int128)(d < 0 ? -d : d) * (unsigned __int128)(d < 0 ? -d : d);
    }
    if (acc == 0) return 0.0;
    long double dsq = (long double)k * (long double)a_.size();
    dsq *= dsq;
    return (double)std::sqrt((long double)acc / (dsq * (long double)f_sq_));
  }

  double tuple_error_shifted_real(const Anchor& an, Index x) const {
    long double num = 0.0;
    for (Index t = 0; t < n_; ++t)
      num += std::pow(std::abs((long double)(an.p_real[g_.sub(t, x)] - t_real_[t])), (long double)p_);
    if (f_p_ == 0.0) return 0.0;
    return (double)std::pow(num / f_p_, (long double)(1.0 / p_));
  }

  const DensityMap& f_;
  const GSet& a_;
  const GroupSpec& g_;
  double p_;
  bool exact_;
  std::uint64_t n_ = 0;
  std::vector<Index> elems_;
  std::vector<std::int64_t> t_num_;
  std::vector<double> t_real_;
  unsigned __int128 f_sq_ = 0;
  long double f_p_ = 0.0;
};

}  // namespace

AlmostPeriodSet croot_sisask(const DensityMap& f, const GSet& a, double eps, double p, int k,
                             int trials, std::uint64_t seed, std::string f_id) {
  f.group().require_same(a.group());
  if (a.empty()) fail(Errc::EmptySet, "croot_sisask needs a nonempty sampling set");
  if (!(eps > 0.0)) fail(Errc::BadEps, "eps must be positive");
  if (p < 2.0) fail(Errc::BadEps, "p must be >= 2");
  if (k < 1 || trials < 0) fail(Errc::BadEps, "need k >= 1 and trials >= 0");
  const GroupSpec& g = a.group();

  CsEngine engine(f, a, p);
  const auto& elems = engine.a_elems();
  double eps_half = eps / 2.0;

  // anchors: sampled tuples plus every constant tuple (a,...,a); the latter
  // keep the diagonal sweep able to reach any difference of A
  std::vector<std::vector<Index>> tuples;
  tuples.reserve((std::size_t)trials + elems.size());
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, (std::uint64_t)trial));
    std::vector<Index> z((std::size_t)k);
    for (auto& zi : z) zi = elems[rng.below(elems.size())];
    tuples.push_back(std::move(z));
  }
  for (Index e : elems) tuples.push_back(std::vector<Index>((std::size_t)k, e));

  std::vector<CsEngine::Anchor> anchors(tuples.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
#endif
  for (std::ptrdiff_t i = 0; i < (std::ptrdiff_t)tuples.size(); ++i)
    anchors[(std::size_t)i] = engine.make_anchor(tuples[(std::size_t)i], eps_half);

  std::uint64_t good = 0;
  double best = -1.0;
  for (const auto& an : anchors) {
    if (an.good) ++good;
    if (best < 0.0 || an.rel_error < best) best = an.rel_error;
  }
  if (good == 0)
    fail(Errc::NoGoodTuples,
         "no sampled tuple approximates f*mu_A within eps/2 (best relative error " +
             std::to_string(best) + ")");

  // diagonal sweep: propose x when some good anchor has a good partner at
  // z + x*diag (the partner's approximant is the anchor's, translated)
  GSet candidates = difference_set(a, a);
  GSet proposed(g);
  proposed.add(0);
  candidates.for_each([&](Index x) {
    if (proposed.contains(x)) return;
    for (const auto& an : anchors) {
      if (!an.good) continue;
      bool inside = true;
      for (Index zi : an.z)
        if (!a.contains(g.add(zi, x))) {
          inside = false;
          break;
        }
      if (!inside) continue;
      if (engine.tuple_error_shifted(an, x) <= eps_half) {
        proposed.add(x);
        return;
      }
    }
  });

  // certify each proposal directly; the sampler only ever proposes
  double accept_bound = engine.exact() ? eps : eps - kFloatSlack;
  auto prop = proposed.elements();
  std::vector<double> errs(prop.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
#endif
  for (std::ptrdiff_t i = 0; i < (std::ptrdiff_t)prop.size(); ++i)
    errs[(std::size_t)i] = engine.certificate_error(prop[(std::size_t)i]);

  GSet x_set(g);
  double worst = 0.0;
  for (std::size_t i = 0; i < prop.size(); ++i) {
    if (errs[i] <= accept_bound) {
      x_set.add(prop[i]);
      x_set.add(g.neg(prop[i]));  // ||tau_{-x} T - T||_p = ||tau_x T - T||_p
      worst = std::max(worst, errs[i]);
    }
  }
  x_set.add(0);

  AlmostPeriodSet out{std::move(x_set), std::move(f_id), p,     eps,  0.0, a, k,
                      trials,           seed,            good,  best};
  out.eps_certified = engine.exact() ? worst : std::min(eps, worst + kFloatSlack);
  return out;
}

// --- Plunnecke and Chang -------------------------------------------------------

PlunneckeReport plunnecke_check(const GSet& a, std::uint64_t n_max) {
  if (a.empty()) fail(Errc::EmptySet, "plunnecke_check needs a nonempty set");
  GSet aa = sumset(a, a);
  PlunneckeReport rep{Rat((std::int64_t)aa.size(), (std::int64_t)a.size()), {}, true};
  GSet cur = a;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    if (n > 1) cur = sumset(cur, a);
    PlunneckeReport::Row row;
    row.n = n;
    row.size_na = cur.size();
    row.bound = std::pow(rep.k_ratio.value(), (double)n) * (double)a.size();
    row.slack = row.bound / (double)row.size_na;
    auto lhs = checked_pow(a.size(), n - 1);
    auto rhs = checked_pow(aa.size(), n);
    if (lhs && rhs && *lhs <= (~(unsigned __int128)0) / std::max<std::uint64_t>(row.size_na, 1)) {
      row.exact = true;
      row.ok = (unsigned __int128)row.size_na * *lhs <= *rhs;
    } else {
      row.exact = false;
      double l = std::log((double)row.size_na) + (double)(n - 1) * std::log((double)a.size());
      double r = (double)n * std::log((double)aa.size());
      row.ok = l <= r + 1e-12;
    }
    rep.all_ok = rep.all_ok && row.ok;
    rep.rows.push_back(row);
  }
  return rep;
}

ChangReport chang_growth_test(const GSet& x, std::uint64_t k, std::uint64_t n_max) {
  if (negate_set(x) != x) fail(Errc::NotSymmetric, "chang_growth_test needs a symmetric set");
  if (k == 0 || k > 40) fail(Errc::BadThreshold, "k must lie in [1,40]");
  ChangReport rep;
  rep.k = k;
  if (x.empty()) {
    rep.hypothesis_holds = false;  // 0 < 2^k * 0 is false
    return rep;
  }
  GSet big = iterated_sumset(x, 3 * k + 1);
  rep.hyp_lhs = big.size();
  rep.hyp_rhs = (std::uint64_t{1} << k) * x.size();
  rep.hypothesis_holds = rep.hyp_lhs < rep.hyp_rhs;
  if (!rep.hypothesis_holds) return rep;
  GSet cur = x;
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    cur = sumset(cur, x);
    ChangReport::Row row;
    row.n = n;
    row.size_nx = cur.size();
    auto bound = checked_pow(n, k);
    if (bound && *bound <= (~(unsigned __int128)0) / x.size() &&
        (unsigned __int128)*bound * x.size() <= (unsigned __int128)UINT64_MAX) {
      row.bound = (std::uint64_t)(*bound * x.size());
      row.ok = row.size_nx <= row.bound;
    } else {
      row.bound = UINT64_MAX;  // astronomically large bound; |nX| <= |G| passes
      row.ok = true;
    }
    rep.conclusion_ok = rep.conclusion_ok && row.ok;
    rep.rows.push_back(row);
  }
  return rep;
}

// --- Katz-Koester iteration -----------------------------------------------------

IterationTrace katz_koester_iterate(const GSet& a, double eta, int max_steps) {
  if (a.empty()) fail(Errc::EmptySet, "katz_koester_iterate needs a nonempty set");
  if (!(eta > 0.0) || eta > 1.0) fail(Errc::BadThreshold, "eta must lie in (0,1]");
  if (max_steps < 1) fail(Errc::BadThreshold, "max_steps must be >= 1");
  const GroupSpec& g = a.group();
  Rat k_ratio = doubling(a);
  double r_thresh = std::pow(k_ratio.value(), -eta);

  IterationTrace trace{{}, a, GSet(g), r_thresh, k_ratio, eta, false};
  GSet a_dd = a;
  double m_bound = k_ratio.value();
  double l_bound = k_ratio.value();

  for (int step = 0; step < max_steps; ++step) {
    DensityMap r2 = convolve(DensityMap::indicator(a_dd), DensityMap::indicator(negate_set(a_dd)));
    GSet s(g);
    for (Index x = 0; x < g.size(); ++x)
      if ((double)r2.count_at(x) * 2.0 * l_bound >= (double)a_dd.size()) s.add(x);

    GSet b = sumset(a, a_dd);
    DensityMap rb = convolve(DensityMap::indicator(b), DensityMap::indicator(negate_set(b)));
    double case1_thresh = r_thresh * (double)b.size();
    std::optional<Index> violator;
    s.for_each([&](Index x) {
      if (!violator && (double)rb.count_at(x) < case1_thresh) violator = x;
    });

    if (!violator) {
      trace.steps.push_back(KkStep{a_dd, m_bound, l_bound, 1, std::nullopt, s.size()});
      trace.final_a_dd = a_dd;
      trace.final_sym_set = std::move(s);
      trace.completed = true;
      return trace;
    }
    trace.steps.push_back(KkStep{a_dd, m_bound, l_bound, 2, violator, s.size()});
    GSet a_ddd = a_dd & translate_set(a_dd, *violator);
    if (a_ddd.empty())
      fail(Errc::EmptyIntersection, "A'' cap (x + A'') empty for x in S; this indicates a bug");
    a_dd = std::move(a_ddd);
    // the violating x certifies |A + A'''| < R |A + A''|, so the bound
    // contracts by R each case-2 step
    m_bound *= r_thresh;
    l_bound = 2.0 * l_bound * l_bound;
    trace.final_a_dd = a_dd;
  }
  trace.completed = false;
  return trace;
}

// --- Lopez-Ross ------------------------------------------------------------------

std::uint64_t lopez_ross_inner(const GSet& a) {
  if (a.empty()) fail(Errc::EmptySet, "lopez_ross_inner needs a nonempty set");
  GSet aa = sumset(a, a);
  DensityMap r = convolve(DensityMap::indicator(a), DensityMap::indicator(a));
  unsigned __int128 acc = 0;
  aa.for_each([&](Index x) { acc += (unsigned __int128)r.count_at(x); });
  if (acc > UINT64_MAX) fail(Errc::Overflow, "inner product exceeds 64 bits");
  return (std::uint64_t)acc;
}

// --- BSG extraction ---------------------------------------------------------------

BsgCertificate bsg_extract(const GSet& a, double delta, int trials, std::uint64_t seed) {
  if (a.empty()) fail(Errc::EmptySet, "bsg_extract needs a nonempty set");
  if (!(delta > 0.0) || delta > 1.0) fail(Errc::BadDelta, "delta must lie in (0,1]");
  if (trials < 1) fail(Errc::BadDelta, "trials must be >= 1");
  const GroupSpec& g = a.group();
  std::uint64_t e = energy(a);
  long double cube = (long double)a.size() * a.size() * a.size();
  if ((long double)e < (long double)delta * cube)
    fail(Errc::EnergyTooSmall, "E(A) < delta |A|^3");

  // popularity sampling: x drawn proportional to (1_A * 1_{-A})(x)
  DensityMap r2 = convolve(DensityMap::indicator(a), DensityMap::indicator(negate_set(a)));
  std::vector<std::pair<std::uint64_t, Index>> cumulative;  // (prefix sum, index)
  std::uint64_t total = 0;
  for (Index x = 0; x < g.size(); ++x) {
    std::int64_t v = r2.count_at(x);
    if (v > 0) {
      total += (std::uint64_t)v;
      cumulative.emplace_back(total, x);
    }
  }
  Rng rng(seed);
  std::vector<Index> shifts;
  for (int t = 0; t < trials; ++t) {
    std::uint64_t w = rng.below(total);
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), w,
                               [](std::uint64_t lhs, const auto& p) { return lhs < p.first; });
    Index x = it->second;
    if (std::find(shifts.begin(), shifts.end(), x) == shifts.end()) shifts.push_back(x);
  }

  struct Candidate {
    GSet set;
    std::vector<Index> used;
  };
  std::vector<Candidate> cands;
  for (Index x : shifts) cands.push_back(Candidate{a & translate_set(a, x), {x}});
  std::size_t pair_cap = std::min<std::size_t>(shifts.size(), 24);
  for (std::size_t i = 0; i < pair_cap; ++i)
    for (std::size_t j = i + 1; j < pair_cap; ++j) {
      GSet inter = a & translate_set(a, shifts[i]) & translate_set(a, shifts[j]);
      if (!inter.empty()) cands.push_back(Candidate{std::move(inter), {shifts[i], shifts[j]}});
    }

  // score |A'|^2 / |A'+A'|, compared exactly; first maximum wins
  const Candidate* bestc = nullptr;
  unsigned __int128 best_num = 0;
  std::uint64_t best_den = 1;
  std::vector<std::uint64_t> sums(cands.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
#endif
  for (std::ptrdiff_t i = 0; i < (std::ptrdiff_t)cands.size(); ++i) {
    const auto& c = cands[(std::size_t)i];
    sums[(std::size_t)i] = c.set.empty() ? 1 : sumset(c.set, c.set).size();
  }
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (cands[i].set.empty()) continue;
    unsigned __int128 num = (unsigned __int128)cands[i].set.size() * cands[i].set.size();
    std::uint64_t den = sums[i];
    if (!bestc || num * best_den > best_num * den) {
      bestc = &cands[i];
      best_num = num;
      best_den = den;
    }
  }
  if (!bestc) fail(Errc::NoCandidate, "every sampled intersection was empty");

  BsgCertificate cert{bestc->set, bestc->set.size(), doubling(bestc->set), 0.0, 0.0,
                      bestc->used, trials,           seed};
  double log_inv_delta = std::log(1.0 / delta);
  if (log_inv_delta > 0.0) {
    cert.size_exponent = std::log((double)a.size() / (double)cert.size) / log_inv_delta;
    cert.doubling_exponent = std::log(cert.prime_doubling.value()) / log_inv_delta;
  }
  return cert;
}

// --- pipelines ---------------------------------------------------------------------

const char* pipeline_variant_name(PipelineVariant v) {
  switch (v) {
    case PipelineVariant::Basic: return "basic";
    case PipelineVariant::Schoen: return "schoen";
    case PipelineVariant::Lp: return "lp";
  }
  return "?";
}

namespace {

// translate of X-X with the largest overlap with A, by exact convolution
// argmax; ties break to the smallest index
void locate_y(PipelineReport& rep, const GSet& a, const GSet& x_set) {
  const GroupSpec& g = a.group();
  GSet diff = difference_set(x_set, x_set);
  DensityMap overlap = convolve(DensityMap::indicator(a), DensityMap::indicator(negate_set(diff)));
  Index best = 0;
  std::int64_t best_v = -1;
  for (Index t = 0; t < g.size(); ++t)
    if (overlap.count_at(t) > best_v) {
      best_v = overlap.count_at(t);
      best = t;
    }
  GSet y = translate_set(diff, best);
  rep.y_translate = best;
  rep.intersection = (a & y).size();
  rep.ratio_of_a = (double)rep.intersection / (double)a.size();
  rep.ratio_of_y = (double)rep.intersection / (double)y.size();
  rep.y_set = std::move(y);
}

std::uint64_t default_chang_k(double k_value) {
  double r = k_value * std::pow(std::max(1.0, std::log2(std::max(2.0, k_value))), 3.0);
  return (std::uint64_t)std::clamp(std::ceil(r), 1.0, 8.0);
}

}  // namespace

PipelineReport run_pipeline(const GSet& a, PipelineVariant variant, const PipelineParams& params) {
  if (a.empty()) fail(Errc::EmptySet, "pipeline needs a nonempty set");
  const GroupSpec& g = a.group();
  PipelineReport rep{.variant = variant, .input = a, .k_ratio = doubling(a), .params = params};
  double k_value = rep.k_ratio.value();
  int k = std::max(1, params.k);

  std::string stage = "setup";
  try {
    DensityMap f = DensityMap::indicator(a);
    std::string f_id = "1_A";
    GSet sample_set = a;
    rep.p = 2.0;
    switch (variant) {
      case PipelineVariant::Basic:
        rep.eps = 1.0 / (2.0 * k * std::sqrt(k_value));
        break;
      case PipelineVariant::Schoen: {
        stage = "katz_koester";
        rep.kk_trace = katz_koester_iterate(a, params.eta, params.kk_max_steps);
        if (!rep.kk_trace->completed)
          fail(Errc::BadThreshold, "katz_koester_iterate hit the step limit");
        f = DensityMap::indicator(sumset(a, rep.kk_trace->final_a_dd));
        f_id = "1_{A+A'}";
        sample_set = rep.kk_trace->final_sym_set;
        rep.eps = std::pow(k_value, params.eta) / (2.0 * k);
        break;
      }
      case PipelineVariant::Lp: {
        f = DensityMap::indicator(sumset(a, a));
        f_id = "1_{A+A}";
        rep.p = std::max(2.0, std::ceil(std::log2(std::max(1.0, k_value))) + 1.0);
        rep.eps = 0.25;
        break;
      }
    }

    stage = "croot_sisask";
    rep.aps = croot_sisask(f, sample_set, rep.eps, rep.p, k, params.trials, params.seed, f_id);
    rep.x_set = rep.aps->x_set;
    const GSet& x_set = *rep.x_set;

    if (variant == PipelineVariant::Basic) {
      stage = "containment";
      // budget from the triangle inequality: k-fold sums of certified
      // almost-periods must still move 1_A*1_A by less than sqrt(2)||1_A*1_A||
      DensityMap rplus = convolve(DensityMap::indicator(a), DensityMap::indicator(a));
      unsigned __int128 rsq = 0;
      for (std::int64_t v : rplus.counts()) rsq += (unsigned __int128)v * v;
      long double lhs = (long double)k * rep.aps->eps_certified;
      lhs *= lhs;
      lhs *= (long double)a.size() * a.size() * a.size();
      rep.budget_satisfied = lhs < 2.0L * (long double)rsq;
      GSet kx = iterated_sumset(x_set, (std::uint64_t)k);
      GSet two_a = iterated_sumset(a, 2);
      GSet hull = difference_set(two_a, two_a);
      rep.containment_checked = true;
      rep.containment_holds = kx.is_subset_of(hull);
    }

    if (variant == PipelineVariant::Lp) {
      stage = "lp_inner";
      GSet kx = iterated_sumset(x_set, (std::uint64_t)k);
      DensityMap rplus = convolve(DensityMap::indicator(a), DensityMap::indicator(a));
      GSet aa = sumset(a, a);
      std::uint64_t min_inner = UINT64_MAX;
      auto kxe = kx.elements();
      std::vector<std::uint64_t> inners(kxe.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_count())
#endif
      for (std::ptrdiff_t i = 0; i < (std::ptrdiff_t)kxe.size(); ++i) {
        Index s = kxe[(std::size_t)i];
        unsigned __int128 acc = 0;
        for (Index t = 0; t < g.size(); ++t)
          if (aa.contains(g.add(t, s))) acc += (unsigned __int128)rplus.count_at(t);
        inners[(std::size_t)i] = (std::uint64_t)acc;
      }
      for (std::uint64_t v : inners) min_inner = std::min(min_inner, v);
      rep.lp_inner_checked = true;
      rep.lp_inner_min = min_inner;
      rep.lp_inner_holds = 2 * min_inner >= a.size() * a.size();
    }

    stage = "locate_y";
    locate_y(rep, a, x_set);

    stage = "growth";
    rep.x_growth = growth_order(x_set, 6);

    stage = "chang";
    std::uint64_t ck = params.chang_k ? params.chang_k : default_chang_k(k_value);
    rep.chang = chang_growth_test(x_set, ck, params.chang_n_max);
  } catch (const Error& err) {
    rep.partial = true;
    rep.failed_stage = stage;
    rep.failure_reason = err.what();
  }
  return rep;
}

// --- JSON views ------------------------------------------------------------------

namespace {
nlohmann::json gset_json(const GSet& s) {
  return nlohmann::json{{"group", s.group().str()}, {"size", s.size()}, {"set", s.str()}};
}
}  // namespace

std::string almost_period_set_to_json(const AlmostPeriodSet& aps) {
  nlohmann::json j;
  j["x_set"] = gset_json(aps.x_set);
  j["f"] = aps.f_id;
  j["p"] = aps.p;
  j["eps_requested"] = aps.eps_requested;
  j["eps_certified"] = aps.eps_certified;
  j["a_set"] = gset_json(aps.a_set);
  j["k"] = aps.sample_count;
  j["trials"] = aps.trials;
  j["seed"] = aps.seed;
  j["good_anchors"] = aps.good_anchors;
  j["best_tuple_error"] = aps.best_tuple_error;
  return j.dump(2);
}

std::string plunnecke_to_json(const PlunneckeReport& r) {
  nlohmann::json j;
  j["doubling"] = r.k_ratio.str();
  j["all_ok"] = r.all_ok;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : r.rows)
    j["rows"].push_back({{"n", row.n},
                         {"size", row.size_na},
                         {"bound", row.bound},
                         {"slack", row.slack},
                         {"ok", row.ok},
                         {"exact", row.exact}});
  return j.dump(2);
}

std::string chang_to_json(const ChangReport& r) {
  nlohmann::json j;
  j["k"] = r.k;
  j["hypothesis"] = {{"lhs", r.hyp_lhs}, {"rhs", r.hyp_rhs}, {"holds", r.hypothesis_holds}};
  j["conclusion_ok"] = r.conclusion_ok;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : r.rows)
    j["rows"].push_back({{"n", row.n}, {"size", row.size_nx}, {"bound", row.bound}, {"ok", row.ok}});
  return j.dump(2);
}

std::string trace_to_json(const IterationTrace& t) {
  nlohmann::json j;
  j["doubling"] = t.k_ratio.str();
  j["eta"] = t.eta;
  j["final_threshold"] = t.final_eta_threshold;
  j["completed"] = t.completed;
  j["final_sym_set"] = gset_json(t.final_sym_set);
  j["final_a_dd"] = gset_json(t.final_a_dd);
  j["steps"] = nlohmann::json::array();
  for (const auto& s : t.steps) {
    nlohmann::json js{{"a_dd_size", s.a_dd.size()},
                      {"m", s.m_bound},
                      {"l", s.l_bound},
                      {"branch", s.branch},
                      {"s_size", s.s_size}};
    if (s.chosen_x) js["chosen_x"] = *s.chosen_x;
    j["steps"].push_back(js);
  }
  return j.dump(2);
}

std::string bsg_to_json(const BsgCertificate& c) {
  nlohmann::json j;
  j["a_prime"] = gset_json(c.a_prime);
  j["size"] = c.size;
  j["doubling"] = c.prime_doubling.str();
  j["size_exponent"] = c.size_exponent;
  j["doubling_exponent"] = c.doubling_exponent;
  j["shifts"] = c.shifts;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  return j.dump(2);
}

std::string PipelineReport::to_json() const {
  nlohmann::json j;
  j["variant"] = pipeline_variant_name(variant);
  j["input"] = gset_json(input);
  j["doubling"] = k_ratio.str();
  j["params"] = {{"k", params.k},           {"trials", params.trials},
                 {"seed", params.seed},     {"eta", params.eta},
                 {"kk_max_steps", params.kk_max_steps}, {"chang_k", params.chang_k},
                 {"chang_n_max", params.chang_n_max}};
  j["eps"] = eps;
  j["p"] = p;
  if (aps) j["croot_sisask"] = nlohmann::json::parse(almost_period_set_to_json(*aps));
  if (x_set) j["x_set"] = gset_json(*x_set);
  if (y_set) {
    j["y_set"] = gset_json(*y_set);
    j["y_translate"] = y_translate;
    j["intersection"] = intersection;
    j["ratio_of_a"] = ratio_of_a;
    j["ratio_of_y"] = ratio_of_y;
  }
  if (x_growth) {
    j["x_growth_order"] = x_growth->order;
    j["x_growth_profile"] = x_growth->profile.sizes;
  }
  if (chang) j["chang"] = nlohmann::json::parse(chang_to_json(*chang));
  if (containment_checked) {
    j["containment"] = {{"holds", containment_holds}, {"budget_satisfied", budget_satisfied}};
  }
  if (lp_inner_checked) {
    j["lp_inner"] = {{"holds", lp_inner_holds}, {"min", lp_inner_min}};
  }
  if (kk_trace) j["katz_koester"] = nlohmann::json::parse(trace_to_json(*kk_trace));
  j["partial"] = partial;
  if (partial) {
    j["failed_stage"] = failed_stage;
    j["failure_reason"] = failure_reason;
  }
  return j.dump(2);
}

}  // namespace aal
