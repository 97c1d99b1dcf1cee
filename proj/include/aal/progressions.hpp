#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aal/group.hpp"
#include "aal/rational.hpp"
#include "aal/setops.hpp"
#include "aal/spectral.hpp"

namespace aal {

/// Symmetric convex polytope Q = { v in R^d : |<a_i, v>| <= c_i }, rational
/// data, together with the enumeration radius R for its lattice points. The
/// slab normals must span R^d or the body is unbounded.
struct ConvexBody {
  struct Slab {
    std::vector<Rat> normal;
    Rat bound;
  };
  int dim = 0;
  std::vector<Slab> slabs;
  std::int64_t radius = 0;
};

/// phi(Q cap Z^d) for the homomorphism phi: Z^d -> G determined by the images
/// of the standard basis vectors.
struct ConvexProgression {
  GroupSpec group;
  ConvexBody body;
  std::vector<Index> phi;  // phi[j] = image of e_j
};

/// H + t + P for a subgroup H, translate t and convex progression P.
struct ConvexCosetProgression {
  GSet subgroup;
  Index translate = 0;
  ConvexProgression progression;
};

/// Lattice points of the body mapped through phi. Errors: UnboundedBody when
/// the normals do not span, TruncationSuspected when a kept point touches the
/// shell ||v||_inf = R (the radius was too small to trust), CapExceeded when
/// the box is too large to sweep.
GSet enumerate_progression(const ConvexProgression& p);

/// H + t + enumerate_progression(P).
GSet materialize(const ConvexCosetProgression& m);

struct GrowthOrder {
  double order = 0.0;  // max over 2<=n<=n_max of log(|nX|/|X|)/log n
  GrowthProfile profile;
};
GrowthOrder growth_order(const GSet& x, std::uint64_t n_max);

/// |M+M|/|M| for the materialized progression, exact.
Rat doubling_of_progression(const ConvexCosetProgression& m);

/// Ruzsa embedding coordinate: (1/2pi) arg(gamma(x)) as an exact rational in
/// (-1/2, 1/2], one entry per character of gamma_set in increasing dual index.
std::vector<Rat> ruzsa_embed(const CharSet& gamma_set, Index x);

struct BohrConversion {
  ConvexCosetProgression progression;
  GSet bohr;      // Bohr(Gamma, delta), the target
  GSet produced;  // H + phi(Q cap Z^d), certified equal to bohr
  int dim_claimed = 0;
  int dim_actual = 0;
  std::uint64_t hypothesis_lhs = 0;  // |Bohr(Gamma, (3d+1) delta)|
  std::uint64_t hypothesis_rhs = 0;  // 2^d |Bohr(Gamma, delta)|
  bool certified = false;
};

/// Constructive conversion of a Bohr set into a convex coset progression via
/// the Ruzsa embedding. Requires the growth hypothesis
/// |Bohr(Gamma,(3d+1)delta)| < 2^d |Bohr(Gamma,delta)| with
/// delta < 1/(4(3d+1)) for d = d_claim (HypothesisFails otherwise) and throws
/// EqualityCertificateFails if the produced set does not equal the Bohr set
/// elementwise.
BohrConversion bohr_to_progression(const CharSet& gamma_set, double delta, int d_claim);

/// JSON literal for progressions, e.g.:
/// {"dim":1,"slabs":[{"a":[1],"c":"2"}],"radius":8,"phi":[[3]],"H":"{0}","translate":[0]}
ConvexCosetProgression parse_progression(const GroupSpec& g, const std::string& json_text);
std::string progression_to_json(const ConvexCosetProgression& m);

}  // namespace aal
