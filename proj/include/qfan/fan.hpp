#pragma once

#include "qfan/error.hpp"
#include "qfan/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qfan {

/* Rays and maximal cones of a smooth complete fan; the single source of truth
 * for everything downstream.  Ray indices in cones are 0-based internally
 * (input files are 1-based). */
struct FanData {
    int n = 0;                              // lattice rank
    std::vector<std::vector<Int>> rays;     // m rows of length n
    std::vector<std::vector<int>> max_cones;  // n-element ray index sets, sorted

    int m() const { return static_cast<int>(rays.size()); }
};

struct FanReport {
    bool smooth = false;
    bool complete = false;
    bool projective = false;
    std::vector<std::string> diagnostics;   // one entry per failed check
    bool ok() const { return smooth && complete && projective; }
};

enum class FanoType { Fano, WeakFano, Neither };

struct Wall {
    std::vector<int> ridge;  // the n-1 common ray indices
    int cone_a, cone_b;      // adjacent maximal cones
    int opposite_a, opposite_b;  // the rays of cone_a/cone_b not in the ridge
};

FanReport validate_fan(const FanData& fan);
void ensure_valid(const FanData& fan);  // throws Error on the first failure

FanoType classify_fano(const FanData& fan);
std::string fano_name(FanoType t);

/* |Sigma(n)|; equals n! vol of the union of unit simplices over maximal cones
 * (each has normalized volume 1 by smoothness) and is the GKZ rank mu. */
int normalized_volume(const FanData& fan);

std::vector<Wall> enumerate_walls(const FanData& fan);

/* Curve class of a wall: the relation u + u' - sum beta_i v_i = 0 normalized
 * with coefficient 1 on the two opposite rays.  Entries indexed by rays. */
IVec wall_relation(const FanData& fan, const Wall& w);

/* Minimal index sets spanning no cone while every proper subset does. */
std::vector<std::vector<int>> primitive_collections(const FanData& fan);

// --- exact sequence 0 -> L -> Z^m -> N -> 0 with chosen nef basis ----------

struct ExactSequenceData {
    FanData fan;
    IMat A;   // n x m, columns are rays
    IMat M;   // m x r, columns a Z-basis of L = ker A; dual basis = p_1..p_r
    IMat G;   // m x r non-negative section, G^T M = id
    int r = 0;
    IVec rho;            // anticanonical class in p-coordinates (column sums of M)
    IVec euler_weights;  // k_a = rho(p_a^vee) = rho_a
    IMat divisor_classes;  // rows of M: [D_i] = sum_a m_{ia} p_a

    std::vector<IVec> mori_generators_l;  // wall curve classes as m-vectors
    std::vector<IVec> mori_generators;    // the same in p^vee-coordinates (length r)
    std::vector<IVec> nef_generators;     // extremal rays of the nef cone (length r)
    bool basis_generates_nef = false;

    /* p-coordinates of l in L, solving M c = l. */
    IVec curve_coords(const IVec& l) const;
    bool is_effective(const IVec& coords) const;  // pairs >= 0 with all nef generators
};

ExactSequenceData exact_sequence(const FanData& fan,
                                 const std::optional<IMat>& nef_basis_divisor_coeffs = std::nullopt);

struct PrimitiveRelation {
    std::vector<int> collection;  // index subset P
    IVec relation;                // l in Z^m: 1 on P, -c_i on the minimal cone of sum
    IVec nef_degrees;             // p_a(l), all >= 0
    Int anticanonical_degree;     // rho(l) = sum_i l_i
};

std::vector<PrimitiveRelation> primitive_relations(const FanData& fan, const ExactSequenceData& esd);

struct MoriNefReport {
    std::vector<IVec> mori_generators;  // l-vectors (length m)
    std::vector<IVec> nef_generators;   // p-coordinate vectors (length r)
    bool basis_generates_nef = false;
    bool duality_ok = false;            // double dualization reproduces the Mori cone
};

MoriNefReport mori_nef_cones(const FanData& fan, const ExactSequenceData& esd);

/* Extremal rays of {y : <w, y> >= 0 for all w in gens}; primitive integer
 * representatives, deduplicated.  gens live in Z^dim. */
std::vector<IVec> dual_cone_rays(const std::vector<IVec>& gens, int dim);

// --- bounded semigroup checks (Prop on normality/Gorenstein) ---------------

struct SemigroupReport {
    bool positive = false;
    bool normal_up_to_K = false;
    bool gorenstein_up_to_K = false;
    int bound = 0;
    std::vector<IVec> counterexamples;  // offending lattice points, if any
};

SemigroupReport semigroup_report(const FanData& fan, int bound);

}  // namespace qfan
