#pragma once

// Certificate-producing constructions of semi-regular Seifert bundles:
// rank-one total spaces over CP1xCP1 and CP2#1, rank raising by blowing up,
// rational homology spheres over CP2, and regular circle bundles.
//
// Every constructor re-verifies its output with the seifert verifier and
// throws ConstructionFailed if the verifier disagrees with the request.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sbs/abelian.hpp"
#include "sbs/seifert.hpp"

namespace sbs {

/// A requested block Z_m^{2g}.
struct TorsionPart {
  int64_t m = 0;
  int64_t g = 0;

  bool operator==(const TorsionPart&) const = default;
};

struct RankOneRequest {
  std::vector<TorsionPart> parts;  ///< m_i >= 2 pairwise coprime, g_i >= 1
  bool spin = true;
};

struct SpherePart {
  int64_t m = 0;
  int64_t g = 0;
  int64_t d = 0;  ///< g = (d-1)(d-2)/2

  bool operator==(const SpherePart&) const = default;
};

struct SphereRequest {
  std::vector<SpherePart> parts;
};

/// A request violates the hypotheses of the construction it was sent to.
class PreconditionViolated : public InputError {
 public:
  using InputError::InputError;
};

/// A constructed certificate failed re-verification. Signals a defect.
class ConstructionFailed : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Rank raising cannot reach a spin total space from a non-spin one.
class SpinTargetUnreachable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Checks m_i >= 2, g_i >= 1 and pairwise coprimality.
void check_rank_one_request(const RankOneRequest& req);

/// Over CP1xCP1 with D_i = 2H1 + (g_i+1)H2. Needs g_i even whenever m_i is
/// even; a non-spin target needs an even m_i.
SeifertCertificate construct_sums1(const RankOneRequest& req);

/// Over CP2#1 with D_i = d_i H - g_i E, d_i = g_i + 2. Needs g_i odd
/// whenever m_i is even; a spin target needs an even m_i.
SeifertCertificate construct_sums2(const RankOneRequest& req);

/// Dispatches by parity: all m_i odd sends spin to sums1 and non-spin to
/// sums2; an even m_i with even g goes to sums1, with odd g to sums2.
SeifertCertificate construct_rank_one(const RankOneRequest& req);

/// Blows up a point off the isotropy locus and rescales the Kahler class,
/// raising rank H_2 by one with unchanged torsion. Throws
/// SpinTargetUnreachable for a non-spin certificate with a spin target.
SeifertCertificate blowup_raise_rank(const SeifertCertificate& cert, bool spin_target);

/// Builds a sphere request from (m_i, g_i), reading off d_i. Throws
/// PreconditionViolated when g_i is not triangular, gcd(m_i, d_i) != 1 or
/// the m_i are not pairwise coprime.
SphereRequest make_sphere_request(const std::vector<TorsionPart>& parts);

/// Over CP2 with D_i = d_i H and c_1(M/m) = H. Always spin, rank 0.
SeifertCertificate construct_sphere(const SphereRequest& req);

/// Circle bundle over CP2#k with e = (2k+1)H - sum E_i (spin) or
/// e = 2kH - sum E_i (non-spin); e = H over CP2 for k = 0.
SeifertCertificate construct_regular(int k, bool spin_target);

/// Barden name of a regular total space: #(b2-1) S^2xS^3 when spin,
/// X_inf # (b2-2) M_inf otherwise.
BardenName regular_diffeo_name(const SeifertCertificate& cert);

}  // namespace sbs
