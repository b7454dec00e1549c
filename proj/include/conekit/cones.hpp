#pragma once

// Membership oracles for the concrete mapping cones, the duality registry,
// seeded cone samplers and the sampled dual / K-sharp tests.
//
// Dual cones are taken with respect to the trace pairing of Choi matrices,
//     K° = { phi : Tr(C_phi C_alpha) >= 0 for all alpha in K }.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "conekit/config.hpp"
#include "conekit/maps.hpp"

namespace conekit {

enum class ConeTag { CP, CoCP, PPTCONE, POS, SP, DEC, Sampled };

/// A cone: one of the concrete cones, or a caller-defined cone given by a
/// finite list of generators (all of the same dimension).
struct ConeId {
  ConeTag tag = ConeTag::CP;
  std::shared_ptr<const std::vector<QuantumMap>> generators;

  ConeId() = default;
  ConeId(ConeTag t) : tag(t) {}  // NOLINT: concrete cones convert implicitly
  static ConeId sampled(std::vector<QuantumMap> gens);

  bool concrete() const { return tag != ConeTag::Sampled; }
  friend bool operator==(const ConeId& a, const ConeId& b);
};

class UnsupportedConeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// CLI names: "cp", "cocp", "ppt-cone", "pos", "sp", "dec" ("sampled").
std::string cone_name(const ConeId& k);
ConeId parse_cone(const std::string& name);

struct DualityEntry {
  ConeId cone;
  ConeId dual;
  bool symmetric;
};

/// POS <-> SP, CP <-> CP, CoCP <-> CoCP, PPTCONE <-> DEC.
const std::vector<DualityEntry>& duality_registry();

/// Registry dual; throws UnsupportedConeError for sampled cones.
ConeId dual_cone(const ConeId& k);

/// Tri-state membership. CP, CoCP and PPTCONE are decided spectrally; POS
/// by block positivity; SP by separability of C_phi / Tr(C_phi); DEC by
/// a PSD splitting C = A + B^Γ (In or Unknown); sampled cones are In only on a
/// generator match.
Verdict membership(const QuantumMap& phi, const ConeId& k,
                   const OracleConfig& cfg = {},
                   std::uint64_t seed = 1);

/// Tr(C_phi C_alpha).
double pairing(const QuantumMap& phi, const QuantumMap& alpha);

/// One seeded draw from the generator distribution of K:
///  CP      sum of k ~ U{1..n^2} maps AdV, V Ginibre.
///  CoCP    t o (CP draw).
///  PPTCONE CP draws kept when the Choi partial transpose is PSD; after 200
///          rejections the last draw is shifted by lambda_min(C^Γ) 1.
///  POS     one of AdV, t o AdV, AdV o R o AdW (R the reduction witness) and,
///          at n = 3, AdV o Choi o AdW.
///  SP      convex sum of m ~ U{1..n^2} maps x -> <psi|x|psi> a, psi a
///          random unit vector, a a random density matrix.
///  DEC     AdV + t o AdW summed over 1..n terms each.
///  Sampled nonnegative combination of 1..3 generators.
/// Every draw is scaled to Tr(C) = n.
QuantumMap sample_member(const ConeId& k, int n, std::uint64_t seed);

/// Tests phi in K° by sampling alpha in K: Out with the Choi matrix of the
/// most violating alpha when some pairing is below -abs_eps, Unknown with
/// the minimum pairing otherwise. Never In.
Verdict dual_membership_sampled(const QuantumMap& phi, const ConeId& k,
                                int trials, std::uint64_t seed,
                                const OracleConfig& cfg = {});

/// beta in K# iff beta o alpha^* is CP for all alpha in K. Sampled alphas give
/// a certified Out (certificate: C_alpha); otherwise In when the registry
/// dual of K decides In, else Unknown.
Verdict k_sharp_membership(const QuantumMap& beta, const ConeId& k, int trials,
                           std::uint64_t seed, const OracleConfig& cfg = {});

/// Elements of P(B(H), K) = { x : (iota (x) alpha)(x) >= 0 for all alpha in K },
/// generated as (iota (x) alpha^*)(y) with y PSD and alpha drawn from the
/// registry dual of K.
std::vector<Matrix> sample_PBK(const ConeId& k, int n, int count,
                               std::uint64_t seed);

}  // namespace conekit
