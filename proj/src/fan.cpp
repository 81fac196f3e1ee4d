#include "qfan/fan.hpp"

#include "qfan/linprog.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace qfan {

namespace {

std::string cone_str(const std::vector<int>& cone)
{
    std::string s = "{";
    for (std::size_t i = 0; i < cone.size(); ++i)
        s += (i ? "," : "") + std::to_string(cone[i] + 1);
    return s + "}";
}

/* n x n matrix whose columns are the rays of the cone. */
IMat cone_matrix(const FanData& fan, const std::vector<int>& cone)
{
    IMat m = imat(fan.n, cone.size());
    for (std::size_t j = 0; j < cone.size(); ++j)
        for (int i = 0; i < fan.n; ++i) m[i][j] = fan.rays[cone[j]][i];
    return m;
}

/* Coordinates of y in the (unimodular) basis given by the cone's rays. */
std::optional<IVec> cone_coords(const FanData& fan, const std::vector<int>& cone, const IVec& y)
{
    RMat a = to_rmat(cone_matrix(fan, cone));
    RVec b(fan.n);
    for (int i = 0; i < fan.n; ++i) b[i] = Rat(y[i]);
    auto x = rsolve(a, b);
    if (!x) return std::nullopt;
    IVec out(cone.size());
    for (std::size_t j = 0; j < cone.size(); ++j) {
        if (den((*x)[j]) != 1) return std::nullopt;
        out[j] = num((*x)[j]);
    }
    return out;
}

/* cone(sigma) and cone(sigma') must meet exactly in the cone over their common
 * rays.  Checked by maximizing the weight carried by non-common rays over the
 * normalized intersection; the optimum is 0 iff the intersection is a face. */
bool cones_meet_in_face(const FanData& fan, const std::vector<int>& ca, const std::vector<int>& cb)
{
    std::set<int> common(ca.begin(), ca.end());
    std::vector<int> shared;
    for (int j : cb)
        if (common.count(j)) shared.push_back(j);
    std::set<int> shared_set(shared.begin(), shared.end());

    std::size_t na = ca.size(), nb = cb.size();
    RMat a = rmat(fan.n + 1, na + nb);
    RVec b(fan.n + 1, Rat(0)), c(na + nb, Rat(0));
    for (std::size_t j = 0; j < na; ++j)
        for (int i = 0; i < fan.n; ++i) a[i][j] = Rat(fan.rays[ca[j]][i]);
    for (std::size_t j = 0; j < nb; ++j)
        for (int i = 0; i < fan.n; ++i) a[i][na + j] = -Rat(fan.rays[cb[j]][i]);
    for (std::size_t j = 0; j < na + nb; ++j) a[fan.n][j] = 1;
    b[fan.n] = 1;
    for (std::size_t j = 0; j < na; ++j)
        if (!shared_set.count(ca[j])) c[j] = -1;
    for (std::size_t j = 0; j < nb; ++j)
        if (!shared_set.count(cb[j])) c[na + j] = -1;

    auto res = lp_solve(a, b, c);
    if (res.status == LPStatus::Infeasible) return true;  // cones meet only at 0
    return res.status == LPStatus::Optimal && res.value == 0;
}

bool is_projective(const FanData& fan, const std::vector<Wall>& walls)
{
    /* Strictly convex piecewise linear support function: one linear functional
     * m_sigma per maximal cone, agreeing on each wall, with
     * m_{sigma'}(u') - m_sigma(u') >= 1 across every wall (u' the opposite ray
     * of sigma').  Homogeneous, so strictness normalizes to >= 1. */
    std::size_t nc = fan.max_cones.size();
    std::size_t nvars = nc * fan.n;
    RMat ge_rows;
    RMat eq_rows;
    auto eval_row = [&](std::size_t cone, int ray, Rat sign, RVec& row) {
        for (int i = 0; i < fan.n; ++i) row[cone * fan.n + i] += sign * Rat(fan.rays[ray][i]);
    };
    for (const auto& w : walls) {
        for (int v : w.ridge) {
            RVec row(nvars, Rat(0));
            eval_row(w.cone_a, v, 1, row);
            eval_row(w.cone_b, v, -1, row);
            eq_rows.push_back(row);
        }
        RVec row(nvars, Rat(0));
        eval_row(w.cone_b, w.opposite_b, 1, row);
        eval_row(w.cone_a, w.opposite_b, -1, row);
        ge_rows.push_back(row);
        RVec row2(nvars, Rat(0));
        eval_row(w.cone_a, w.opposite_a, 1, row2);
        eval_row(w.cone_b, w.opposite_a, -1, row2);
        ge_rows.push_back(row2);
    }
    /* Feasibility of { eq = 0, ge >= 1 } with free variables: encode as
     * x = u - v >= split plus slack/artificial handling in lp_solve. */
    std::size_t me = eq_rows.size(), mg = ge_rows.size();
    RMat a = rmat(me + mg, 2 * nvars + mg);
    RVec b(me + mg, Rat(0)), c(2 * nvars + mg, Rat(0));
    for (std::size_t i = 0; i < me; ++i)
        for (std::size_t j = 0; j < nvars; ++j) {
            a[i][j] = eq_rows[i][j];
            a[i][nvars + j] = -eq_rows[i][j];
        }
    for (std::size_t i = 0; i < mg; ++i) {
        for (std::size_t j = 0; j < nvars; ++j) {
            a[me + i][j] = ge_rows[i][j];
            a[me + i][nvars + j] = -ge_rows[i][j];
        }
        a[me + i][2 * nvars + i] = -1;
        b[me + i] = 1;
    }
    return lp_solve(a, b, c).status == LPStatus::Optimal;
}

}  // namespace

std::vector<Wall> enumerate_walls(const FanData& fan)
{
    std::map<std::vector<int>, std::vector<std::pair<int, int>>> ridges;  // ridge -> (cone, opposite)
    for (std::size_t ci = 0; ci < fan.max_cones.size(); ++ci) {
        const auto& cone = fan.max_cones[ci];
        for (std::size_t drop = 0; drop < cone.size(); ++drop) {
            std::vector<int> ridge;
            for (std::size_t j = 0; j < cone.size(); ++j)
                if (j != drop) ridge.push_back(cone[j]);
            ridges[ridge].push_back({static_cast<int>(ci), cone[drop]});
        }
    }
    std::vector<Wall> walls;
    for (const auto& [ridge, inc] : ridges) {
        if (inc.size() != 2) continue;  // validate_fan reports these
        walls.push_back({ridge, inc[0].first, inc[1].first, inc[0].second, inc[1].second});
    }
    return walls;
}

FanReport validate_fan(const FanData& fan)
{
    FanReport rep;
    if (fan.n < 1) throw Error("SchemaError", "rank must be positive");
    if (fan.rays.empty()) throw Error("SchemaError", "rays must be nonempty");
    for (const auto& ray : fan.rays)
        if (static_cast<int>(ray.size()) != fan.n)
            throw Error("SchemaError", "ray length does not match rank");
    for (const auto& cone : fan.max_cones) {
        if (static_cast<int>(cone.size()) != fan.n)
            throw Error("SchemaError", "maximal cone " + cone_str(cone) + " must have n rays");
        for (int j : cone)
            if (j < 0 || j >= fan.m())
                throw Error("SchemaError", "cone index out of range");
    }
    if (fan.max_cones.empty()) throw Error("SchemaError", "max_cones must be nonempty");

    rep.smooth = true;
    for (int i = 0; i < fan.m(); ++i) {
        Int g = 0;
        for (const auto& v : fan.rays[i]) g = gcd(g, v);
        if (g != 1) {
            rep.smooth = false;
            rep.diagnostics.push_back("NonPrimitiveRay: ray " + std::to_string(i + 1));
        }
        for (int k = 0; k < i; ++k)
            if (fan.rays[k] == fan.rays[i]) {
                rep.smooth = false;
                rep.diagnostics.push_back("DuplicateRay: rays " + std::to_string(k + 1) + "," +
                                          std::to_string(i + 1));
            }
    }
    for (const auto& cone : fan.max_cones) {
        Rat d = rdet(to_rmat(cone_matrix(fan, cone)));
        if (d != 1 && d != -1) {
            rep.smooth = false;
            rep.diagnostics.push_back("NonSmoothCone: " + cone_str(cone) + " has determinant " +
                                      rat_str(d));
        }
    }

    // completeness witness: every ridge lies in exactly two maximal cones
    rep.complete = true;
    {
        std::map<std::vector<int>, int> count;
        for (const auto& cone : fan.max_cones)
            for (std::size_t drop = 0; drop < cone.size(); ++drop) {
                std::vector<int> ridge;
                for (std::size_t j = 0; j < cone.size(); ++j)
                    if (j != drop) ridge.push_back(cone[j]);
                count[ridge] += 1;
            }
        for (const auto& [ridge, k] : count)
            if (k != 2) {
                rep.complete = false;
                rep.diagnostics.push_back("NotComplete: ridge " + cone_str(ridge) + " lies in " +
                                          std::to_string(k) + " maximal cones");
            }
    }

    // pairwise intersections must be common faces
    if (rep.smooth) {
        for (std::size_t i = 0; i < fan.max_cones.size(); ++i)
            for (std::size_t j = i + 1; j < fan.max_cones.size(); ++j)
                if (!cones_meet_in_face(fan, fan.max_cones[i], fan.max_cones[j])) {
                    rep.complete = false;
                    rep.diagnostics.push_back("BadIntersection: cones " +
                                              cone_str(fan.max_cones[i]) + " and " +
                                              cone_str(fan.max_cones[j]));
                }
    }

    if (rep.smooth && rep.complete) {
        rep.projective = is_projective(fan, enumerate_walls(fan));
        if (!rep.projective) rep.diagnostics.push_back("NotProjective");
    }
    return rep;
}

void ensure_valid(const FanData& fan)
{
    FanReport rep = validate_fan(fan);
    if (!rep.ok()) {
        std::string code = "InvalidFan";
        std::string first = rep.diagnostics.empty() ? "unknown" : rep.diagnostics.front();
        auto colon = first.find(':');
        if (colon != std::string::npos) code = first.substr(0, colon);
        throw Error(code, first);
    }
}

FanoType classify_fano(const FanData& fan)
{
    /* For each maximal cone solve m_sigma(a_i) = 1 on its generators; weak
     * Fano iff m_sigma <= 1 everywhere, Fano iff strict off sigma. */
    bool weak = true, strict = true;
    for (const auto& cone : fan.max_cones) {
        RMat a = to_rmat(cone_matrix(fan, cone));
        RVec ones(fan.n, Rat(1));
        auto msigma = rsolve(rtranspose(a), ones);
        if (!msigma) throw Error("NonSmoothCone", "cone " + cone_str(cone) + " is degenerate");
        std::set<int> inside(cone.begin(), cone.end());
        for (int j = 0; j < fan.m(); ++j) {
            Rat v = 0;
            for (int i = 0; i < fan.n; ++i) v += (*msigma)[i] * Rat(fan.rays[j][i]);
            if (v > 1) weak = false;
            if (!inside.count(j) && v >= 1) strict = false;
        }
    }
    if (weak && strict) return FanoType::Fano;
    if (weak) return FanoType::WeakFano;
    return FanoType::Neither;
}

std::string fano_name(FanoType t)
{
    switch (t) {
        case FanoType::Fano: return "Fano";
        case FanoType::WeakFano: return "WeakFano";
        default: return "Neither";
    }
}

int normalized_volume(const FanData& fan)
{
    // each smooth maximal cone contributes one unit simplex of normalized volume 1
    return static_cast<int>(fan.max_cones.size());
}

IVec wall_relation(const FanData& fan, const Wall& w)
{
    /* u' expressed in the basis (ridge rays, u) of cone_a gives
     * u' = -u + sum beta_i v_i by smoothness; rearranged into the class l. */
    std::vector<int> basis = w.ridge;
    basis.push_back(w.opposite_a);
    IVec y(fan.n);
    for (int i = 0; i < fan.n; ++i) y[i] = fan.rays[w.opposite_b][i];
    auto coords = cone_coords(fan, basis, y);
    if (!coords) throw Error("InternalError", "wall relation solve failed");
    if ((*coords)[w.ridge.size()] != -1)
        throw Error("InternalError", "wall opposite coefficient is not -1");
    IVec l(fan.m(), Int(0));
    l[w.opposite_a] = 1;
    l[w.opposite_b] = 1;
    for (std::size_t i = 0; i < w.ridge.size(); ++i) l[w.ridge[i]] = -(*coords)[i];
    return l;
}

std::vector<std::vector<int>> primitive_collections(const FanData& fan)
{
    int m = fan.m();
    if (m > 24) throw Error("TooLarge", "primitive collection enumeration limited to 24 rays");
    std::vector<std::set<int>> cones;
    for (const auto& c : fan.max_cones) cones.emplace_back(c.begin(), c.end());
    auto spans_cone = [&](unsigned mask) {
        for (const auto& c : cones) {
            bool inside = true;
            for (int i = 0; i < m && inside; ++i)
                if ((mask >> i) & 1u) inside = c.count(i) > 0;
            if (inside) return true;
        }
        return false;
    };
    std::vector<std::vector<int>> out;
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        if (spans_cone(mask)) continue;
        bool minimal = true;
        for (int i = 0; i < m && minimal; ++i)
            if ((mask >> i) & 1u)
                if (!spans_cone(mask & ~(1u << i))) minimal = false;
        if (!minimal) continue;
        std::vector<int> p;
        for (int i = 0; i < m; ++i)
            if ((mask >> i) & 1u) p.push_back(i);
        out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PrimitiveRelation> primitive_relations(const FanData& fan, const ExactSequenceData& esd)
{
    std::vector<PrimitiveRelation> out;
    for (const auto& p : primitive_collections(fan)) {
        IVec s(fan.n, Int(0));
        for (int i : p)
            for (int k = 0; k < fan.n; ++k) s[k] += fan.rays[i][k];
        // locate the (unique, by smoothness) maximal cone whose coordinates are >= 0
        std::optional<IVec> coords;
        const std::vector<int>* cone = nullptr;
        for (const auto& c : fan.max_cones) {
            auto cc = cone_coords(fan, c, s);
            if (!cc) continue;
            bool nonneg = true;
            for (const auto& v : *cc) nonneg = nonneg && v >= 0;
            if (nonneg) {
                coords = cc;
                cone = &c;
                break;
            }
        }
        if (!cone) throw Error("InternalError", "primitive sum lies in no maximal cone");
        IVec l(fan.m(), Int(0));
        for (int i : p) l[i] += 1;
        for (std::size_t j = 0; j < cone->size(); ++j) l[(*cone)[j]] -= (*coords)[j];
        for (int i : p)
            if (l[i] != 1)
                throw Error("InternalError", "primitive relation overlaps its collection");
        PrimitiveRelation pr;
        pr.collection = p;
        pr.relation = l;
        IVec c = esd.curve_coords(l);
        pr.nef_degrees = c;
        pr.anticanonical_degree = 0;
        for (const auto& v : l) pr.anticanonical_degree += v;
        out.push_back(pr);
    }
    return out;
}

std::vector<IVec> dual_cone_rays(const std::vector<IVec>& gens, int dim)
{
    auto primitive = [](RVec v) -> std::optional<IVec> {
        Int lcm = 1;
        for (const auto& x : v) lcm = lcm / gcd(lcm, den(x)) * den(x);
        IVec w(v.size());
        Int g = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            w[i] = num(v[i]) * (lcm / den(v[i]));
            g = gcd(g, w[i]);
        }
        if (g == 0) return std::nullopt;
        for (auto& x : w) x /= g;
        return w;
    };
    std::vector<IVec> rays;
    auto push_candidate = [&](const IVec& y) {
        int sign = 0;
        for (const auto& w : gens) {
            Int dot = 0;
            for (int i = 0; i < dim; ++i) dot += w[i] * y[i];
            if (dot > 0) {
                if (sign < 0) return;
                sign = 1;
            } else if (dot < 0) {
                if (sign > 0) return;
                sign = -1;
            }
        }
        IVec cand = y;
        if (sign < 0)
            for (auto& v : cand) v = -v;
        if (std::find(rays.begin(), rays.end(), cand) == rays.end()) rays.push_back(cand);
    };
    if (dim == 1) {
        push_candidate({Int(1)});
    } else {
        // candidates: kernels of (dim-1)-subsets of generators of rank dim-1
        std::vector<int> idx(gens.size());
        std::vector<int> pick;
        std::function<void(std::size_t)> rec = [&](std::size_t start) {
            if (static_cast<int>(pick.size()) == dim - 1) {
                RMat a = rmat(dim - 1, dim);
                for (int i = 0; i < dim - 1; ++i)
                    for (int j = 0; j < dim; ++j) a[i][j] = Rat(gens[pick[i]][j]);
                RMat ker = rkernel(a);
                if (!ker.empty() && ker[0].size() == 1) {
                    RVec v(dim);
                    for (int i = 0; i < dim; ++i) v[i] = ker[i][0];
                    if (auto y = primitive(v)) push_candidate(*y);
                }
                return;
            }
            for (std::size_t k = start; k < gens.size(); ++k) {
                pick.push_back(static_cast<int>(k));
                rec(k + 1);
                pick.pop_back();
            }
        };
        rec(0);
    }
    std::sort(rays.begin(), rays.end());
    return rays;
}

MoriNefReport mori_nef_cones(const FanData& fan, const ExactSequenceData& esd)
{
    MoriNefReport rep;
    std::vector<IVec> wall_coords;
    std::vector<IVec> wall_classes;
    for (const auto& w : enumerate_walls(fan)) {
        IVec l = wall_relation(fan, w);
        if (std::find(wall_classes.begin(), wall_classes.end(), l) == wall_classes.end()) {
            wall_classes.push_back(l);
            wall_coords.push_back(esd.curve_coords(l));
        }
    }
    rep.nef_generators = dual_cone_rays(wall_coords, esd.r);

    // the wall classes reduce to the extremal rays of the cone they generate
    auto mori_rays = dual_cone_rays(rep.nef_generators, esd.r);
    for (const auto& c : mori_rays) {
        IVec l(fan.m(), Int(0));
        for (int i = 0; i < fan.m(); ++i)
            for (int a = 0; a < esd.r; ++a) l[i] += esd.M[i][a] * c[a];
        rep.mori_generators.push_back(l);
    }

    // every p_a must pair >= 0 with every wall class
    bool basis_nef = true;
    for (const auto& c : wall_coords)
        for (const auto& v : c)
            if (v < 0) basis_nef = false;
    // and the nef cone is exactly the basis cone iff its rays have nonnegative coordinates
    bool rays_in_basis_cone = true;
    for (const auto& y : rep.nef_generators)
        for (const auto& v : y)
            if (v < 0) rays_in_basis_cone = false;
    rep.basis_generates_nef = basis_nef && rays_in_basis_cone;

    // double dualization consistency
    rep.duality_ok = true;
    for (const auto& ray : mori_rays) {
        // each extremal ray is a positive multiple of some wall class
        bool found = false;
        for (const auto& c : wall_coords) {
            IVec p = c;
            Int g = 0;
            for (const auto& v : p) g = gcd(g, v);
            if (g != 0) {
                for (auto& v : p) v /= g;
                if (p == ray) found = true;
            }
        }
        rep.duality_ok = rep.duality_ok && found;
    }
    for (const auto& c : wall_coords) {
        // and every wall class pairs >= 0 with all nef rays (it lies in the dual-dual)
        for (const auto& y : rep.nef_generators) {
            Int dot = 0;
            for (int i = 0; i < esd.r; ++i) dot += c[i] * y[i];
            if (dot < 0) rep.duality_ok = false;
        }
    }
    // the dual of the extremal Mori rays must reproduce the nef rays
    auto nef_again = dual_cone_rays(mori_rays, esd.r);
    rep.duality_ok = rep.duality_ok && nef_again == rep.nef_generators;
    return rep;
}

}  // namespace qfan
