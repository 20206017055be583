#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gtree/fingerprint.hpp"
#include "gtree/group.hpp"
#include "gtree/morphism.hpp"
#include "json.hpp"

namespace gtree {

// Degrees of the type-0 and type-1 vertices of a semiregular tree.
struct TreeParams {
  std::size_t d0 = 3, d1 = 3;
  TreeParams() = default;
  TreeParams(std::size_t d0, std::size_t d1);
  std::size_t degree(int t) const { return t % 2 == 0 ? d0 : d1; }
};

// F acting on Omega x B, built from psi: F(omega) -> B and a transversal
// a_w (a_w omega = w, a_omega = 1). For f in F and any point w,
//   psi_w(f) = psi(a_{fw}^-1 f a_w),   alpha(f)(w, b) = (fw, psi_w(f) b).
class StandardExtension {
 public:
  StandardExtension() = default;
  // psi must be surjective with domain stabilizer(F, {omega}).
  StandardExtension(PermGroup F, Point omega, GroupMorphism psi);

  const PermGroup &group() const { return F_; }
  Point base() const { return omega_; }
  const GroupMorphism &psi() const { return psi_; }
  const PermGroup &edge_group() const { return psi_.codomain(); }
  std::size_t points() const { return F_.degree(); }

  const Perm &transversal(Point w) const { return a_[w]; }
  Perm psi_at(Point w, const Perm &f) const;
  const PermGroup &stabilizer_at(Point w) const { return stab_[w]; }
  // psi_w(H) for H <= F(w).
  PermGroup image_at(Point w, const PermGroup &H) const;
  // psi_w^-1(M) inside F(w), for M <= B.
  PermGroup preimage_at(Point w, const PermGroup &M) const;
  // R_w.
  PermGroup kernel_at(Point w) const;
  // psi_w as a morphism F(w) -> B.
  GroupMorphism block_restriction(Point w, bool validate = false) const;

  // Point (w, b) has index w * |B| + (position of b in edge_elements()).
  const std::vector<Perm> &edge_elements() const { return b_elems_; }
  std::size_t alpha_degree() const { return F_.degree() * b_elems_.size(); }
  Perm alpha(const Perm &f) const;
  PermGroup alpha_group() const;

 private:
  PermGroup F_;
  Point omega_ = 0;
  GroupMorphism psi_;
  std::vector<Perm> a_;
  std::vector<PermGroup> stab_;
  std::vector<Perm> b_elems_;
  std::unordered_map<Perm, std::size_t, PermHash> b_index_;
};

// Two standard extensions with a common edge group.
// base[t] is omega_t; alt[t] is the least point of Omega_t other than it.
struct EdgeSystem {
  std::string name;
  std::array<StandardExtension, 2> ext;
  TreeParams params;
  PermGroup B;
  std::array<Point, 2> base{0, 0}, alt{1, 1};

  const StandardExtension &at(int t) const { return ext[t & 1]; }
  std::size_t degree(int t) const { return ext[t & 1].points(); }
};

EdgeSystem edge_system(const PermGroup &F0, Point w0, const GroupMorphism &psi0,
                       const PermGroup &F1, Point w1, const GroupMorphism &psi1,
                       std::string name = "");

// Per type t, with omega = base, omega' = alt:
//   K_t  = psi_omega(F_t(omega, omega'))
//   K'_t = psi_omega(F_t(omega) cap R_omega')
//   L_t  = psi^-1(K_{1-t}),  L'_t = psi^-1(K'_{1-t})   inside F_t(omega).
struct EdgeInvariants {
  std::array<PermGroup, 2> R, K, Kp, L, Lp;
};

EdgeInvariants edge_invariants(const EdgeSystem &sys);
// L_0 and L_1 transitive on their punctured domains.
bool necessary_check(const EdgeSystem &sys, const EdgeInvariants &inv);
// L'_0 and L'_1 transitive on their punctured domains.
bool sufficient_check(const EdgeSystem &sys, const EdgeInvariants &inv);
bool transitive_off(const PermGroup &G, Point omega);

// Path v_0 .. v_k with v_0 of type t. labels[j] is the arc colour of every
// arc into v_j; it lies in Omega of the neighbours' type, and
// labels[j-1] != labels[j+1]. The root acts on S(v_0, 1) inside F_t(labels[1]).
struct PathValues {
  PermGroup lambda, delta;
};
PathValues path_local_actions(const EdgeSystem &sys, int t, const std::vector<Point> &labels);

// base, base, alt, alt, base, base, ... (taken in the right alphabet).
std::vector<Point> canonical_path_labels(const EdgeSystem &sys, int t, std::size_t k);

struct LocalActionSeries {
  int type = 0;
  std::vector<PermGroup> lambda, delta;  // entry k-1 holds the length-k value
  std::vector<std::size_t> delta_orbits;
  std::vector<std::uint64_t> quotient_orders;
  // Lambda^k (resp. Delta^k) is constant for k >= stable_k (resp. stable_k_delta).
  std::size_t stable_k = 1, stable_k_delta = 1;
  // Message rounds until all four residues of the step sequence were fixed.
  std::size_t fixpoint_rounds = 0, fixpoint_rounds_delta = 0;
  std::size_t round_cap = 0;
  std::optional<std::size_t> first_intransitive;

  const PermGroup &limit() const { return lambda[stable_k - 1]; }
  std::size_t size() const { return lambda.size(); }
};

// Series up to at least kmax, and far enough to certify the fixpoint.
LocalActionSeries lambda_series(const EdgeSystem &sys, int t, std::size_t kmax = 0);

struct GoursatReport {
  int type = 0;
  std::size_t k = 0;
  std::uint64_t near_quotient = 0;  // |Lambda^k_t : Delta^k_t|
  std::uint64_t far_quotient = 0;   // same at v_k, on the same path
  std::uint64_t index = 0;          // |Lambda^k_t : Lambda^{k+1}_t|
  std::size_t far_delta_orbits = 0;
  bool far_transitive = false;
  bool divides = false;  // index | d_{t+k} - 1
  bool line_identity = false;
};

// Throws InvariantError if the quotient orders differ, or if the line index
// identity fails while Lambda^k at v_k is transitive.
GoursatReport goursat_report(const EdgeSystem &sys, const LocalActionSeries &series,
                             std::size_t k);

struct Membership {
  bool in_HT = true;
  std::optional<std::pair<std::size_t, int>> witness;  // (k, t)
  std::array<std::size_t, 2> checked_to{0, 0};
};
Membership membership_HT(const EdgeSystem &sys, const std::array<LocalActionSeries, 2> &series);
Membership membership_HT(const EdgeSystem &sys);

struct ThetaStats {
  std::uint64_t nodes = 0;      // distinct subtree messages plus path vertices
  std::uint64_t hull_size = 0;  // saturating
};
// Local action at x on S_v(x,1) of the stabilizer of x and of the vertices at
// distance r + i from v off x's branch, d(x, v) = r. Throws BudgetError when
// more than `budget` nodes would be explored.
PermGroup theta(const EdgeSystem &sys, int t, std::size_t r, std::size_t i,
                std::uint64_t budget = 10000, ThetaStats *stats = nullptr);

struct ThetaCell {
  std::size_t r = 0, i = 0;
  PermGroup group;
  ThetaStats stats;
};
struct ThetaGrid {
  int type = 0;
  std::vector<ThetaCell> cells;  // r-major
  std::size_t rmax = 0, imax = 0;
  PermGroup limit;
  bool monotone = false;
  bool stable = false;  // last cell equals its two predecessors
  bool subnormal = false;
  bool equals_kernel = false;
  const PermGroup &at(std::size_t r, std::size_t i) const;
};
ThetaGrid theta_limit(const EdgeSystem &sys, int t, std::uint64_t budget = 10000,
                      std::size_t rmax = 3, std::size_t imax = 2);

enum class Dichotomy { case_i, case_ii };
std::string to_string(Dichotomy c);

struct Classification {
  Dichotomy verdict = Dichotomy::case_i;
  struct PerType {
    std::uint64_t theta_order = 0, residual_order = 0, radical_order = 0;
    bool contains_residual = false, within_radical = false;
    Fingerprint lambda;
    std::string lambda_match;  // catalogue name, "" when no entry applies
    Verdict lambda_verdict = Verdict::mismatch;
  };
  std::array<PerType, 2> types;
};

// Requires membership in H_T. Throws InvariantError on a mixed outcome.
Classification classify_dichotomy(const EdgeSystem &sys,
                                  const std::array<LocalActionSeries, 2> &series,
                                  const std::array<ThetaGrid, 2> &theta);
Classification classify_dichotomy(const EdgeSystem &sys);

struct NamedGroup {
  std::string name;
  PermGroup group;
};
// Soluble end-stabilizer shapes for local actions PGammaL(3, q), q in {4, 5},
// as subgroups of the point stabilizer of `F` at `omega`.
std::vector<NamedGroup> exceptional_lambda_candidates(const PermGroup &F, Point omega);

// Ball around a root of type root_type, with arcs coloured legally.
struct BallGroup {
  PermGroup group;  // on the sphere of radius `radius`
  std::uint64_t assignments = 0;
  std::vector<Perm> elements;
  // Colour word from the root to each sphere vertex, in sphere order.
  std::vector<std::vector<Point>> paths;
};
BallGroup ball_group_bruteforce(const EdgeSystem &sys, int root_type, std::size_t radius,
                                std::uint64_t budget = 1000000);

// Lambda^2_t and Delta^2_t read off a radius-2 ball with root type 1-t.
PathValues ball_path_groups(const EdgeSystem &sys, int t, const BallGroup &ball);

// Exhaustive path portraits for a canonical path of length k: returns the
// element sets at the root as groups. psi is read from the alpha action.
PathValues path_portrait_bruteforce(const EdgeSystem &sys, int t, std::size_t k,
                                    std::uint64_t budget = 2000000);

// Colour-independence: true if the path values for `labels` are conjugate in
// F_t to the canonical ones.
bool conjugate_in_local_action(const EdgeSystem &sys, int t, const PermGroup &canonical,
                               const PermGroup &other, Point other_base);

// Vertex of the (d0,d1)-tree. The root has type 0 and label 0 in Omega_1; a
// word lists arc colours from the root, so word[j] lies in Omega of the type
// of the vertex it leaves, and word[j] != word[j-2] (word[-1] = 0).
struct TreeAddress {
  std::vector<Point> word;
  int type() const { return static_cast<int>(word.size() % 2); }
  bool operator==(const TreeAddress &) const = default;
};

bool valid_address(const TreeParams &tp, const TreeAddress &a);
std::size_t tree_distance(const TreeAddress &a, const TreeAddress &b);
std::vector<TreeAddress> neighbours(const TreeParams &tp, const TreeAddress &a);
std::vector<TreeAddress> sphere(const TreeParams &tp, const TreeAddress &v, std::size_t n);
// Vertices at distance k from y whose path to x passes through y.
std::vector<TreeAddress> relative_sphere(const TreeParams &tp, const TreeAddress &x,
                                         const TreeAddress &y, std::size_t k);

struct Arc {
  TreeAddress tail, head;
};
enum class ArcPair { elliptic, hyperbolic };
std::string to_string(ArcPair p);
// Throws ArgumentError for non-adjacent endpoints or invalid addresses.
ArcPair classify_arc_pair(const TreeParams &tp, const Arc &a, const Arc &b);

nlohmann::json to_json(const EdgeInvariants &inv);
nlohmann::json to_json(const LocalActionSeries &s);
nlohmann::json to_json(const GoursatReport &g);
nlohmann::json to_json(const Membership &m);
nlohmann::json to_json(const ThetaGrid &g);
nlohmann::json to_json(const Classification &c);

}  // namespace gtree
