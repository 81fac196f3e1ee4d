#include "qfan/fan.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace qfan {

IVec ExactSequenceData::curve_coords(const IVec& l) const
{
    RMat a = to_rmat(M);
    RVec b(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) b[i] = Rat(l[i]);
    auto x = rsolve(a, b);
    if (!x) throw Error("NotARelation", "vector does not lie in the relation lattice");
    // consistency: M has full column rank, so check the residual explicitly
    for (std::size_t i = 0; i < l.size(); ++i) {
        Rat acc = 0;
        for (int a2 = 0; a2 < r; ++a2) acc += Rat(M[i][a2]) * (*x)[a2];
        if (acc != Rat(l[i])) throw Error("NotARelation", "vector does not lie in the relation lattice");
    }
    IVec out(r);
    for (int a2 = 0; a2 < r; ++a2) {
        if (den((*x)[a2]) != 1) throw Error("NotARelation", "non-integral curve coordinates");
        out[a2] = num((*x)[a2]);
    }
    return out;
}

bool ExactSequenceData::is_effective(const IVec& coords) const
{
    for (const auto& y : nef_generators) {
        Int dot = 0;
        for (int a = 0; a < r; ++a) dot += coords[a] * y[a];
        if (dot < 0) return false;
    }
    return true;
}

namespace {

IMat rays_matrix(const FanData& fan)
{
    IMat a = imat(fan.n, fan.m());
    for (int j = 0; j < fan.m(); ++j)
        for (int i = 0; i < fan.n; ++i) a[i][j] = fan.rays[j][i];
    return a;
}

/* Change the kernel basis so that its dual basis is the given set of
 * functionals (rows of Y in current coordinates); Y must be unimodular. */
IMat rebase_kernel(const IMat& m0, const RMat& y_rows)
{
    auto yinv = rinverse(y_rows);
    if (!yinv) throw Error("NefBasisInvalid", "selected classes do not form a basis");
    RMat res = rmul(to_rmat(m0), *yinv);
    IMat out = imat(res.size(), res[0].size());
    for (std::size_t i = 0; i < res.size(); ++i)
        for (std::size_t j = 0; j < res[0].size(); ++j) {
            if (den(res[i][j]) != 1)
                throw Error("NefBasisInvalid", "selected classes do not form a Z-basis");
            out[i][j] = num(res[i][j]);
        }
    return out;
}

}  // namespace

ExactSequenceData exact_sequence(const FanData& fan, const std::optional<IMat>& nef_basis)
{
    ExactSequenceData esd;
    esd.fan = fan;
    esd.A = rays_matrix(fan);
    esd.r = fan.m() - fan.n;
    if (esd.r <= 0) throw Error("SchemaError", "fan needs more rays than the rank");

    SmithForm snf = smith_form(esd.A);
    if (static_cast<int>(snf.divisors.size()) != fan.n)
        throw Error("RaysDoNotGenerateLattice", "ray matrix has rank < n");
    for (const auto& d : snf.divisors)
        if (d != 1) {
            std::string s;
            for (const auto& e : snf.divisors) s += (s.empty() ? "" : ",") + e.str();
            throw Error("RaysDoNotGenerateLattice", "elementary divisors " + s);
        }

    IMat m0 = ikernel(esd.A);

    // wall curve classes in the provisional coordinates
    std::vector<IVec> wall_classes;
    for (const auto& w : enumerate_walls(fan)) {
        IVec l = wall_relation(fan, w);
        if (std::find(wall_classes.begin(), wall_classes.end(), l) == wall_classes.end())
            wall_classes.push_back(l);
    }
    auto coords_in = [&](const IMat& m, const IVec& l) {
        RMat a = to_rmat(m);
        RVec b(l.size());
        for (std::size_t i = 0; i < l.size(); ++i) b[i] = Rat(l[i]);
        auto x = rsolve(a, b);
        if (!x) throw Error("InternalError", "wall class outside kernel");
        IVec out(esd.r);
        for (int j = 0; j < esd.r; ++j) {
            if (den((*x)[j]) != 1) throw Error("InternalError", "non-integral wall class");
            out[j] = num((*x)[j]);
        }
        return out;
    };

    if (nef_basis) {
        // rows are divisor-coefficient vectors; as functionals on L: p_a(l) = sum coeff_i l_i
        if (nef_basis->size() != static_cast<std::size_t>(esd.r) ||
            (*nef_basis)[0].size() != static_cast<std::size_t>(fan.m()))
            throw Error("NefBasisInvalid", "nef_basis must be r x m");
        RMat y = rmat(esd.r, esd.r);
        for (int a = 0; a < esd.r; ++a)
            for (int b = 0; b < esd.r; ++b) {
                Rat acc = 0;
                for (int i = 0; i < fan.m(); ++i) acc += Rat((*nef_basis)[a][i]) * Rat(m0[i][b]);
                y[a][b] = acc;
            }
        Rat d = rdet(y);
        if (d != 1 && d != -1)
            throw Error("NefBasisInvalid", "classes are not a Z-basis of the Picard lattice");
        // nef check: each class must pair >= 0 with every wall class
        for (int a = 0; a < esd.r; ++a)
            for (const auto& l : wall_classes) {
                Int dot = 0;
                for (int i = 0; i < fan.m(); ++i) dot += (*nef_basis)[a][i] * l[i];
                if (dot < 0) throw Error("NefBasisInvalid", "class " + std::to_string(a + 1) +
                                                                " is not nef");
            }
        esd.M = rebase_kernel(m0, y);
    } else {
        // auto-selection: nef cone extremal rays, when they form a Z-basis
        std::vector<IVec> cw;
        for (const auto& l : wall_classes) cw.push_back(coords_in(m0, l));
        auto nef_rays = dual_cone_rays(cw, esd.r);
        if (static_cast<int>(nef_rays.size()) != esd.r)
            throw Error("NefBasisRequired",
                        "nef cone is not simplicial; pass an explicit nef basis");
        RMat y = rmat(esd.r, esd.r);
        for (int a = 0; a < esd.r; ++a)
            for (int b = 0; b < esd.r; ++b) y[a][b] = Rat(nef_rays[a][b]);
        Rat d = rdet(y);
        if (d != 1 && d != -1)
            throw Error("NefBasisRequired",
                        "nef extremal rays are not a Z-basis; pass an explicit nef basis");
        esd.M = rebase_kernel(m0, y);
    }

    // invariants of the chosen basis
    esd.rho.assign(esd.r, Int(0));
    for (int a = 0; a < esd.r; ++a)
        for (int i = 0; i < fan.m(); ++i) esd.rho[a] += esd.M[i][a];
    esd.euler_weights = esd.rho;
    esd.divisor_classes = esd.M;

    std::vector<IVec> wall_coords;
    for (const auto& l : wall_classes) wall_coords.push_back(coords_in(esd.M, l));
    esd.nef_generators = dual_cone_rays(wall_coords, esd.r);
    for (const auto& c : dual_cone_rays(esd.nef_generators, esd.r)) {
        IVec l(fan.m(), Int(0));
        for (int i = 0; i < fan.m(); ++i)
            for (int a = 0; a < esd.r; ++a) l[i] += esd.M[i][a] * c[a];
        esd.mori_generators.push_back(c);
        esd.mori_generators_l.push_back(l);
    }

    // rho must lie in the cone spanned by the basis, i.e., have nonnegative coordinates
    for (const auto& v : esd.rho)
        if (v < 0)
            throw Error("NefBasisInvalid", "anticanonical class outside the basis cone");
    // and each p_a must be nef
    for (const auto& c : esd.mori_generators)
        for (const auto& v : c)
            if (v < 0) throw Error("NefBasisInvalid", "basis class is not nef");

    bool rays_in_basis_cone = true;
    for (const auto& y : esd.nef_generators)
        for (const auto& v : y)
            if (v < 0) rays_in_basis_cone = false;
    esd.basis_generates_nef = rays_in_basis_cone;

    // non-negative section G: express each p_a in the divisor basis off some cone
    esd.G = imat(fan.m(), esd.r);
    for (int a = 0; a < esd.r; ++a) {
        bool found = false;
        for (const auto& cone : fan.max_cones) {
            std::vector<int> off;
            std::set<int> inside(cone.begin(), cone.end());
            for (int i = 0; i < fan.m(); ++i)
                if (!inside.count(i)) off.push_back(i);
            RMat rows = rmat(esd.r, esd.r);  // columns: [D_i] for i off sigma
            for (int b = 0; b < esd.r; ++b)
                for (int k = 0; k < esd.r; ++k) rows[b][k] = Rat(esd.M[off[k]][b]);
            RVec e(esd.r, Rat(0));
            e[a] = 1;
            auto g = rsolve(rows, e);
            if (!g) continue;
            bool ok = true;
            for (const auto& v : *g) ok = ok && den(v) == 1 && num(v) >= 0;
            // verify the solve (rows may be singular for bad cones)
            for (int b = 0; b < esd.r && ok; ++b) {
                Rat acc = 0;
                for (int k = 0; k < esd.r; ++k) acc += rows[b][k] * (*g)[k];
                ok = acc == e[b];
            }
            if (!ok) continue;
            for (int k = 0; k < esd.r; ++k) esd.G[off[k]][a] = num((*g)[k]);
            found = true;
            break;
        }
        if (!found)
            throw Error("NoNonnegativeSection",
                        "no maximal cone yields nonnegative coefficients for p_" +
                            std::to_string(a + 1));
    }
    // G^T M = id
    for (int a = 0; a < esd.r; ++a)
        for (int b = 0; b < esd.r; ++b) {
            Int acc = 0;
            for (int i = 0; i < fan.m(); ++i) acc += esd.G[i][a] * esd.M[i][b];
            if (acc != (a == b ? 1 : 0))
                throw Error("InternalError", "section does not split the sequence");
        }
    return esd;
}

}  // namespace qfan
