#pragma once

// State-level criteria on B(H (x) H): PPT, separability, the cone C of
// block-positive operators, and the condition checkers for the two
// equivalence theorems on functionals.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "conekit/cones.hpp"
#include "conekit/separable.hpp"

namespace conekit {

class NotAStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Werner family h_p = p |psi-><psi-| + (1 - p) 1/4 on C^2 (x) C^2,
/// psi- = (e1 (x) e2 - e2 (x) e1) / sqrt(2).
StateFunctional werner_state(double p);

/// In iff h^Γ is PSD; Out carries the negative eigenvector of h^Γ.
Verdict is_ppt_state(const StateFunctional& rho, const Tolerance& tol = {});

SeparabilityResult is_separable(const StateFunctional& rho,
                                const OracleConfig& cfg = {},
                                std::uint64_t seed = 1);

/// x in C  <=>  (iota (x) omega)(x) >= 0 for every state omega
///         <=>  x is block positive. Out certificate: a product vector.
Verdict in_cone_C(const Matrix& x, const OracleConfig& cfg = {},
                  std::uint64_t seed = 1);

struct ConditionBudget {
  /// Sampled alphas / PSD test operators per condition.
  int samples = 64;
};

/// Conditions (i)..(v) for a symmetric mapping cone K:
///  (i)   membership(map_of_functional(rho), K°)
///  (ii)  rho(C_alpha) >= 0, alpha in K
///  (iii) (iota (x) alpha)(h) >= 0, alpha in K
///  (iv)  rho((iota (x) alpha)(y)) >= 0, alpha in K, y >= 0
///  (v)   rho(x) >= 0 on P(B(H), K°)
struct Theorem10Report {
  ConeId cone;
  std::array<Verdict, 5> conditions;
  bool consistent = true;
};

/// Conditions (i)..(iii):
///  (i)   rho is a PPT state
///  (ii)  rho >= 0 on E = { x >= 0 } u { (iota (x) t)(x) >= 0 }, both arms
///  (iii) rho >= 0 on P(B(H), PPTCONE)
struct Theorem11Report {
  std::array<Verdict, 3> conditions;
  bool consistent = true;
};

/// Pairwise non-contradiction of decided verdicts.
template <std::size_t N>
bool consistent_verdicts(const std::array<Verdict, N>& v) {
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j)
      if (contradicts(v[i], v[j])) return false;
  return true;
}

/// Sampled conditions (ii)-(v) are Out when a sampled or targeted test
/// operator is certified negative. They are In only for K in {CP, CoCP},
/// where the targeted candidate (projector onto a min eigenvector) attains
/// the infimum; otherwise Unknown.
Theorem10Report theorem10_check(const StateFunctional& rho, const ConeId& k,
                                const OracleConfig& cfg = {},
                                std::uint64_t seed = 1,
                                ConditionBudget budget = {});

Theorem11Report theorem11_check(const StateFunctional& rho,
                                const OracleConfig& cfg = {},
                                std::uint64_t seed = 1,
                                ConditionBudget budget = {});

/// Random objects:
///   state      induced-measure density, rank ~ U{1..n^2}
///   ppt_state  state draws kept when PPT; after 200 rejections the last
///              draw is mixed with 1/n^2 just enough to become PPT
///   cp_map     CP cone sampler
///   pos_map    POS cone sampler
///   sp_map     SP cone sampler
///   werner     werner_state(p), n = 2 only
enum class RandomKind { State, PptState, CpMap, PosMap, SpMap, Werner };

RandomKind parse_kind(const std::string& name);
std::string kind_name(RandomKind k);

using RandomObject = std::variant<StateFunctional, QuantumMap>;

RandomObject gen_random(RandomKind kind, int n, std::uint64_t seed,
                        double werner_p = 0.0);

}  // namespace conekit
