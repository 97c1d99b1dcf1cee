#include "aal/progressions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <json.hpp>

#include "aal/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace aal {

namespace {
// floor division for positive divisor
std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}
}  // namespace

namespace {

// rank over Q of the slab normals (Gaussian elimination on exact rationals)
int rational_rank(const std::vector<ConvexBody::Slab>& slabs, int dim) {
  std::vector<std::vector<Rat>> m;
  m.reserve(slabs.size());
  for (const auto& s : slabs) m.push_back(s.normal);
  int rank = 0;
  for (int col = 0; col < dim && rank < (int)m.size(); ++col) {
    int pivot = -1;
    for (int r = rank; r < (int)m.size(); ++r)
      if (m[r][col].num != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    for (int r = rank + 1; r < (int)m.size(); ++r) {
      if (m[r][col].num == 0) continue;
      Rat f = m[r][col] / m[rank][col];
      for (int c = col; c < dim; ++c) m[r][c] = m[r][c] - f * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

// slabs with common-denominator integer data for the inner loop
struct ScaledSlab {
  std::vector<std::int64_t> normal;
  std::int64_t bound;
};

std::vector<ScaledSlab> scale_slabs(const ConvexBody& body) {
  std::vector<ScaledSlab> out;
  out.reserve(body.slabs.size());
  for (const auto& s : body.slabs) {
    std::int64_t l = s.bound.den;
    for (const auto& a : s.normal) l = std::lcm(l, a.den);
    ScaledSlab ss;
    ss.normal.reserve(s.normal.size());
    for (const auto& a : s.normal) ss.normal.push_back(a.num * (l / a.den));
    ss.bound = s.bound.num * (l / s.bound.den);
    out.push_back(std::move(ss));
  }
  return out;
}

}  // namespace

GSet enumerate_progression(const ConvexProgression& p) {
  const GroupSpec& g = p.group;
  const ConvexBody& body = p.body;
  if (body.dim < 1) fail(Errc::ParseError, "body dimension must be >= 1");
  if ((int)p.phi.size() != body.dim) fail(Errc::ParseError, "phi arity must match the body dimension");
  for (const auto& s : body.slabs)
    if ((int)s.normal.size() != body.dim) fail(Errc::ParseError, "slab arity must match the body dimension");
  if (rational_rank(body.slabs, body.dim) < body.dim)
    fail(Errc::UnboundedBody, "slab normals do not span; the body is unbounded");
  std::int64_t r = body.radius;
  if (r < 0) fail(Errc::ParseError, "negative enumeration radius");
  double box = std::pow(2.0 * (double)r + 1.0, (double)body.dim);
  if (box > (double)(1ull << 26)) fail(Errc::CapExceeded, "enumeration box too large");

  auto slabs = scale_slabs(body);
  int d = body.dim;
  std::int64_t side = 2 * r + 1;
  std::uint64_t total = 1;
  for (int i = 0; i < d; ++i) total *= (std::uint64_t)side;

  int nthreads = thread_count();
  std::vector<GSet> partial(nthreads, GSet(g));
  bool shell_hit = false;

#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nthreads)
#endif
  for (std::ptrdiff_t slice = 0; slice < (std::ptrdiff_t)side; ++slice) {
#ifdef _OPENMP
    int tid = omp_get_thread_num();
#else
    int tid = 0;
#endif
    GSet& local = partial[tid];
    std::vector<std::int64_t> v((std::size_t)d, -r);
    v[0] = -r + slice;
    std::uint64_t inner = total / (std::uint64_t)side;
    for (std::uint64_t it = 0; it < inner; ++it) {
      // decode it into coordinates 1..d-1
      std::uint64_t rem = it;
      for (int j = d - 1; j >= 1; --j) {
        v[(std::size_t)j] = -r + (std::int64_t)(rem % (std::uint64_t)side);
        rem /= (std::uint64_t)side;
      }
      bool inside = true;
      for (const auto& s : slabs) {
        __int128 dot = 0;
        for (int j = 0; j < d; ++j) dot += (__int128)s.normal[(std::size_t)j] * v[(std::size_t)j];
        if (dot < 0) dot = -dot;
        if (dot > s.bound) {
          inside = false;
          break;
        }
      }
      if (!inside) continue;
      for (int j = 0; j < d; ++j) {
        if (v[(std::size_t)j] == r || v[(std::size_t)j] == -r) {
          if (r > 0) {
#ifdef _OPENMP
#pragma omp atomic write
#endif
            shell_hit = true;
          }
        }
      }
      Index img = 0;
      for (int j = 0; j < d; ++j) img = g.add(img, g.mul(p.phi[(std::size_t)j], v[(std::size_t)j]));
      local.add(img);
    }
  }
  if (shell_hit)
    fail(Errc::TruncationSuspected, "a body point touches the enumeration shell; increase the radius");
  GSet out(g);
  for (auto& part : partial) out |= part;
  return out;
}

GSet materialize(const ConvexCosetProgression& m) {
  GSet p = enumerate_progression(m.progression);
  GSet hp = sumset(m.subgroup, p);
  return m.translate ? translate_set(hp, m.translate) : hp;
}

GrowthOrder growth_order(const GSet& x, std::uint64_t n_max) {
  if (x.empty()) fail(Errc::EmptySet, "growth order of the empty set");
  if (n_max < 2) fail(Errc::BadThreshold, "growth order needs n_max >= 2");
  GrowthOrder res;
  res.profile = growth_profile(x, n_max);
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    double dn = std::log((double)res.profile.sizes[n - 1] / (double)res.profile.base_size) /
                std::log((double)n);
    res.order = std::max(res.order, dn);
  }
  return res;
}

Rat doubling_of_progression(const ConvexCosetProgression& m) {
  GSet set = materialize(m);
  return doubling(set);
}

std::vector<Rat> ruzsa_embed(const CharSet& gamma_set, Index x) {
  const GroupSpec& g = gamma_set.group();
  std::int64_t l = (std::int64_t)g.exponent();
  std::vector<Rat> out;
  out.reserve(gamma_set.size());
  gamma_set.for_each([&](Index t) {
    auto a = (std::int64_t)g.char_phase(t, x);
    // phase a/L in [0,1) mapped to (-1/2, 1/2]
    out.push_back(2 * a <= l ? Rat(a, l) : Rat(a - l, l));
  });
  return out;
}

namespace {

// echelon basis of the integer lattice spanned by inserted vectors, each row
// carrying a companion group element whose Ruzsa phases are congruent to the
// row mod L (coordinatewise)
struct LatticeRow {
  std::vector<std::int64_t> w;
  Index g;
  int pivot = -1;
};

class CompanionLattice {
public:
  CompanionLattice(const GroupSpec& g, int m) : group_(g), m_(m) {}

  void insert(std::vector<std::int64_t> v, Index gv) {
    for (int col = 0; col < m_; ++col) {
      if (v[(std::size_t)col] == 0) continue;
      LatticeRow* row = row_at(col);
      if (!row) {
        if (v[(std::size_t)col] < 0) negate(v, gv);
        rows_.push_back(LatticeRow{std::move(v), gv, col});
        std::sort(rows_.begin(), rows_.end(),
                  [](const LatticeRow& a, const LatticeRow& b) { return a.pivot < b.pivot; });
        return;
      }
      while (v[(std::size_t)col] != 0) {
        std::int64_t q = v[(std::size_t)col] / row->w[(std::size_t)col];
        if (q != 0) combine(v, gv, *row, q);
        if (v[(std::size_t)col] != 0) {
          std::swap(v, row->w);
          std::swap(gv, row->g);
        }
      }
    }
  }

  /// reduce entries above each pivot so the basis numbers stay small
  void normalize() {
    for (auto& r : rows_)
      if (r.w[(std::size_t)r.pivot] < 0) negate(r.w, r.g);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        std::int64_t p = rows_[i].w[(std::size_t)rows_[i].pivot];
        std::int64_t e = rows_[j].w[(std::size_t)rows_[i].pivot];
        std::int64_t q = floor_div(e, p);
        if (q != 0) combine(rows_[j].w, rows_[j].g, rows_[i], q);
      }
    }
  }

  const std::vector<LatticeRow>& rows() const { return rows_; }

  /// coefficients v with sum v_j * row_j = w; exact or throws
  std::vector<std::int64_t> solve(std::vector<std::int64_t> w) const {
    std::vector<std::int64_t> v(rows_.size(), 0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      std::int64_t p = rows_[i].w[(std::size_t)rows_[i].pivot];
      std::int64_t e = w[(std::size_t)rows_[i].pivot];
      if (e % p != 0) fail(Errc::EqualityCertificateFails, "lattice solve: pivot does not divide");
      std::int64_t q = e / p;
      v[i] = q;
      if (q)
        for (int c = 0; c < m_; ++c) w[(std::size_t)c] -= q * rows_[i].w[(std::size_t)c];
    }
    for (std::int64_t e : w)
      if (e != 0) fail(Errc::EqualityCertificateFails, "lattice solve: residue outside the lattice");
    return v;
  }

private:
  LatticeRow* row_at(int col) {
    for (auto& r : rows_)
      if (r.pivot == col) return &r;
    return nullptr;
  }
  void negate(std::vector<std::int64_t>& v, Index& gv) {
    for (auto& e : v) e = -e;
    gv = group_.neg(gv);
  }
  void combine(std::vector<std::int64_t>& v, Index& gv, const LatticeRow& row, std::int64_t q) {
    for (int c = 0; c < m_; ++c) v[(std::size_t)c] -= q * row.w[(std::size_t)c];
    gv = group_.sub(gv, group_.mul(row.g, q));
  }
  const GroupSpec& group_;
  int m_;
  std::vector<LatticeRow> rows_;
};

}  // namespace

BohrConversion bohr_to_progression(const CharSet& gamma_set, double delta, int d_claim) {
  const GroupSpec& g = gamma_set.group();
  if (d_claim < 1 || d_claim > 32) fail(Errc::HypothesisFails, "d_claim must lie in [1,32]");
  if (!(delta > 0.0) || !(delta < 1.0 / (4.0 * (3.0 * d_claim + 1.0))))
    fail(Errc::HypothesisFails, "need 0 < delta < 1/(4(3d+1))");

  GSet bohr = bohr_set(BohrSpec{gamma_set, delta});
  GSet wide = bohr_set(BohrSpec{gamma_set, (3.0 * d_claim + 1.0) * delta});
  std::uint64_t hyp_lhs = wide.size();
  std::uint64_t hyp_rhs = (std::uint64_t{1} << d_claim) * bohr.size();
  if (!(hyp_lhs < hyp_rhs))
    fail(Errc::HypothesisFails, "|Bohr(Gamma,(3d+1)delta)| >= 2^d |Bohr(Gamma,delta)|");

  // exact annihilator of Gamma: the subgroup part of the progression
  GSet kernel(g);
  auto gammas = gamma_set.elements();
  for (Index x = 0; x < g.size(); ++x) {
    bool in = true;
    for (Index t : gammas)
      if (g.char_phase(t, x) != 0) {
        in = false;
        break;
      }
    if (in) kernel.add(x);
  }

  // characters that actually constrain (nontrivial on G)
  std::vector<Index> active;
  for (Index t : gammas)
    if (t != 0) active.push_back(t);
  int m = (int)active.size();
  std::int64_t l = (std::int64_t)g.exponent();

  // largest |w| with 2 sin(pi w / L) within the Bohr acceptance at delta; the
  // box [-W, W]^m is then the exact phase image of the Bohr set
  std::int64_t w_lo = 0, w_hi = l / 2;
  while (w_lo < w_hi) {
    std::int64_t mid = (w_lo + w_hi + 1) / 2;
    double dist = 2.0 * std::sin(std::numbers::pi * (double)mid / (double)l);
    if (dist <= delta + 1e-12)
      w_lo = mid;
    else
      w_hi = mid - 1;
  }
  std::int64_t w_max = w_lo;

  // signed phase vector of each Bohr element, with its companion, spans the
  // lattice; the Ruzsa embedding is exactly this map divided by L
  CompanionLattice lattice(g, m);
  bohr.for_each([&](Index b) {
    std::vector<std::int64_t> w((std::size_t)m);
    for (int c = 0; c < m; ++c) {
      auto a = (std::int64_t)g.char_phase(active[(std::size_t)c], b);
      w[(std::size_t)c] = 2 * a <= l ? a : a - l;
    }
    lattice.insert(std::move(w), b);
  });
  lattice.normalize();
  const auto& rows = lattice.rows();
  int r = (int)rows.size();

  ConvexProgression prog{g, ConvexBody{}, {}};
  if (r == 0) {
    // Bohr set collapses onto the annihilator; a trivial one-dimensional body
    prog.body.dim = 1;
    prog.body.slabs.push_back(ConvexBody::Slab{{Rat(1)}, Rat(0)});
    prog.body.radius = 1;
    prog.phi.push_back(0);
  } else {
    prog.body.dim = r;
    for (int c = 0; c < m; ++c) {
      ConvexBody::Slab slab;
      slab.normal.reserve((std::size_t)r);
      for (int j = 0; j < r; ++j) slab.normal.push_back(Rat(rows[(std::size_t)j].w[(std::size_t)c]));
      slab.bound = Rat(w_max);
      prog.body.slabs.push_back(std::move(slab));
    }
    for (int j = 0; j < r; ++j) prog.phi.push_back(rows[(std::size_t)j].g);
    std::int64_t radius = 1;
    bohr.for_each([&](Index b) {
      std::vector<std::int64_t> w((std::size_t)m);
      for (int c = 0; c < m; ++c) {
        auto a = (std::int64_t)g.char_phase(active[(std::size_t)c], b);
        w[(std::size_t)c] = 2 * a <= l ? a : a - l;
      }
      auto v = lattice.solve(std::move(w));
      for (std::int64_t e : v) radius = std::max(radius, (e < 0 ? -e : e) + 1);
    });
    prog.body.radius = radius;
  }

  ConvexCosetProgression ccp{std::move(kernel), 0, std::move(prog)};
  GSet produced = materialize(ccp);
  bool certified = produced == bohr;
  BohrConversion res{std::move(ccp), std::move(bohr),     std::move(produced), d_claim,
                     r,              hyp_lhs,             hyp_rhs,             certified};
  if (!res.certified)
    fail(Errc::EqualityCertificateFails, "progression does not reproduce the Bohr set");
  return res;
}

// --- JSON literal -------------------------------------------------------------

namespace {

Rat rat_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (j.is_number_float()) return Rat::parse(std::to_string(j.get<double>()));
  if (j.is_string()) return Rat::parse(j.get<std::string>());
  fail(Errc::ParseError, "expected rational (integer or \"p/q\")");
}

}  // namespace

ConvexCosetProgression parse_progression(const GroupSpec& g, const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text, nullptr, true, true);
  ConvexCosetProgression m{GSet(g), 0, ConvexProgression{g, ConvexBody{}, {}}};
  m.progression.body.dim = j.at("dim").get<int>();
  for (const auto& js : j.at("slabs")) {
    ConvexBody::Slab slab;
    for (const auto& ja : js.at("a")) slab.normal.push_back(rat_from_json(ja));
    slab.bound = rat_from_json(js.at("c"));
    if (slab.bound < Rat(0)) fail(Errc::ParseError, "slab bound must be nonnegative");
    m.progression.body.slabs.push_back(std::move(slab));
  }
  m.progression.body.radius = j.at("radius").get<std::int64_t>();
  for (const auto& jp : j.at("phi")) {
    std::vector<std::int64_t> coords = jp.get<std::vector<std::int64_t>>();
    m.progression.phi.push_back(g.index_of_signed(coords));
  }
  if (j.contains("H"))
    m.subgroup = GSet::parse(g, j.at("H").get<std::string>());
  else
    m.subgroup.add(0);
  if (m.subgroup.empty()) m.subgroup.add(0);
  if (j.contains("translate")) {
    std::vector<std::int64_t> coords = j.at("translate").get<std::vector<std::int64_t>>();
    m.translate = g.index_of_signed(coords);
  }
  auto check = is_coset(m.subgroup);
  if (!check.is_coset || !m.subgroup.contains(0))
    fail(Errc::ParseError, "H must be a subgroup (contain 0 and be closed)");
  return m;
}

std::string progression_to_json(const ConvexCosetProgression& m) {
  nlohmann::json j;
  j["dim"] = m.progression.body.dim;
  j["slabs"] = nlohmann::json::array();
  for (const auto& s : m.progression.body.slabs) {
    nlohmann::json js;
    js["a"] = nlohmann::json::array();
    for (const auto& a : s.normal) js["a"].push_back(a.str());
    js["c"] = s.bound.str();
    j["slabs"].push_back(js);
  }
  j["radius"] = m.progression.body.radius;
  j["phi"] = nlohmann::json::array();
  const GroupSpec& g = m.progression.group;
  for (Index p : m.progression.phi) j["phi"].push_back(g.coords(p));
  j["H"] = m.subgroup.str();
  j["translate"] = g.coords(m.translate);
  return j.dump();
}

}  // namespace aal
